/*
 * gatagger C API.
 *
 * Every function returning gt_status reports failures through the status
 * code; gt_last_error() then returns a message for the calling thread.
 * Objects are opaque handles released with the matching *_free function.
 * Strings returned through char** out-parameters are NUL-terminated UTF-8
 * owned by the caller and released with gt_string_free.
 */
#ifndef GATAGGER_H
#define GATAGGER_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(GATAGGER_BUILDING)
#    define GT_API __declspec(dllexport)
#  else
#    define GT_API __declspec(dllimport)
#  endif
#else
#  define GT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gt_status {
    GT_OK = 0,
    GT_E_INVALID_ARGUMENT = 1,
    GT_E_PARSE = 2,
    GT_E_CAPACITY = 3,
    GT_E_INTERNAL = 4
} gt_status;

typedef enum gt_crossover_kind {
    GT_CROSSOVER_UNIFORM = 0,
    GT_CROSSOVER_ONE_POINT = 1
} gt_crossover_kind;

typedef enum gt_sweep_axis {
    GT_AXIS_CORPUS_FRACTION = 0,
    GT_AXIS_CONTEXT_SIZE = 1,
    GT_AXIS_POPULATION_SIZE = 2,
    GT_AXIS_MUTATION_RATE = 3,
    GT_AXIS_CROSSOVER_KIND = 4,
    GT_AXIS_CROSSOVER_RATE = 5
} gt_sweep_axis;

typedef struct gt_tagset gt_tagset;
typedef struct gt_corpus gt_corpus;
typedef struct gt_model gt_model;

typedef struct gt_ga_config {
    uint32_t population_size;
    uint32_t generations;
    double crossover_rate;
    double mutation_rate;
    gt_crossover_kind crossover_kind;
    uint64_t seed;
} gt_ga_config;

typedef struct gt_eval_report {
    double tar_token;
    double tar_sentence;
    double baseline_tar_token;
    uint64_t sentences;
    uint64_t tokens;
    uint64_t correct_tokens;
    /* mean individual fitness evaluations per sentence */
    double fitness_evals;
} gt_eval_report;

typedef struct gt_sweep_spec {
    gt_sweep_axis axis;
    /* NULL with value_count 0 selects the default grid for the axis */
    const char* const* values;
    size_t value_count;
    gt_ga_config base_config;
    uint32_t base_l_lc;
    uint32_t base_l_rc;
    uint32_t repetitions;
    uint32_t jobs;
    int record_timing;
} gt_sweep_spec;

GT_API const char* gt_version(void);
GT_API const char* gt_last_error(void);
GT_API void gt_string_free(char* s);

/* Defaults: population 60, 30 generations, crossover 0.5 uniform,
 * mutation 0.04, seed 0. */
GT_API void gt_ga_config_default(gt_ga_config* config);

/* Experiment settings for one sweep axis, with the default grid. */
GT_API gt_status gt_sweep_spec_default(gt_sweep_axis axis, gt_sweep_spec* spec);
GT_API gt_status gt_sweep_axis_parse(const char* name, gt_sweep_axis* axis);

/* Tagset */
GT_API gt_status gt_tagset_load(const char* text, size_t len, gt_tagset** out);
GT_API void gt_tagset_free(gt_tagset* tagset);
GT_API size_t gt_tagset_size(const gt_tagset* tagset);

/* Corpus */
GT_API gt_status gt_corpus_parse(const gt_tagset* tagset, const char* text, size_t len,
                                 gt_corpus** out);
GT_API void gt_corpus_free(gt_corpus* corpus);
GT_API size_t gt_corpus_sentence_count(const gt_corpus* corpus);
GT_API size_t gt_corpus_token_count(const gt_corpus* corpus);
GT_API gt_status gt_corpus_write(const gt_corpus* corpus, char** out_text);
GT_API gt_status gt_corpus_split(const gt_corpus* corpus, double train_fraction,
                                 uint64_t seed, gt_corpus** out_train,
                                 gt_corpus** out_test);
GT_API gt_status gt_corpus_take_prefix(const gt_corpus* corpus, double fraction,
                                       gt_corpus** out);

/* Model: training table + lexicon + fitness. */
GT_API gt_status gt_model_build(const gt_corpus* corpus, uint32_t l_lc, uint32_t l_rc,
                                gt_model** out);
GT_API gt_status gt_model_load(const char* table_text, size_t table_len,
                               const char* lexicon_text, size_t lexicon_len,
                               gt_model** out);
GT_API void gt_model_free(gt_model* model);
GT_API gt_status gt_model_save(const gt_model* model, char** out_table_text,
                               char** out_lexicon_text);
GT_API size_t gt_model_distinct_windows(const gt_model* model);
GT_API uint64_t gt_model_total_tokens(const gt_model* model);
GT_API size_t gt_model_lexicon_size(const gt_model* model);
/* Copy of the model's tagset, for parsing corpora against it. */
GT_API gt_status gt_model_tagset(const gt_model* model, gt_tagset** out);
GT_API gt_status gt_model_context(const gt_model* model, uint32_t* l_lc, uint32_t* l_rc);

/* Tags raw text (one sentence per line, whitespace-separated words; blank
 * lines are skipped) and returns it in corpus format. */
GT_API gt_status gt_tag_text(const gt_model* model, const gt_ga_config* config,
                             const char* raw_text, size_t len, uint32_t jobs,
                             char** out_tagged);

/* Strips the gold corpus tags, re-tags with the GA, and reports accuracy. */
GT_API gt_status gt_evaluate(const gt_model* model, const gt_ga_config* config,
                             const gt_corpus* gold, uint32_t jobs,
                             gt_eval_report* out_report);

/* Scores an already tagged corpus against the gold corpus (same words,
 * sentence by sentence); fitness_evals is 0. */
GT_API gt_status gt_compare(const gt_model* model, const gt_corpus* gold,
                            const gt_corpus* hypothesis, gt_eval_report* out_report);

/* Formats a report as a one-row results CSV (axis_value "eval"). */
GT_API gt_status gt_eval_report_csv(const gt_eval_report* report, uint64_t seed,
                                    char** out_csv);

/* Runs a parameter sweep and returns the results as CSV. */
GT_API gt_status gt_sweep_run(const gt_sweep_spec* spec, const gt_corpus* train,
                              const gt_corpus* test, char** out_csv);

#ifdef __cplusplus
}
#endif

#endif /* GATAGGER_H */
