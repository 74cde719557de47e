#include "gatagger/gatagger.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <string>
#include <string_view>

#include "gatagger/corpus.hpp"
#include "gatagger/error.hpp"
#include "gatagger/eval.hpp"
#include "gatagger/fitness.hpp"
#include "gatagger/ga.hpp"
#include "gatagger/oracle.hpp"
#include "gatagger/tables.hpp"

using namespace gatagger;

struct gt_tagset {
    Tagset tagset;
};

struct gt_corpus {
    TaggedCorpus corpus;
};

struct gt_model {
    gt_model(TrainingTable t, Lexicon l)
        : table(std::move(t)), lexicon(std::move(l)), fitness(table) {}
    gt_model(const gt_model&) = delete;
    gt_model& operator=(const gt_model&) = delete;

    TrainingTable table;
    Lexicon lexicon;
    FitnessModel fitness;  // refers to `table`
};

namespace {

thread_local std::string last_error;

template <typename Fn>
gt_status guarded(Fn&& fn) {
    try {
        fn();
        last_error.clear();
        return GT_OK;
    } catch (const ParseError& e) {
        last_error = e.what();
        return GT_E_PARSE;
    } catch (const Error& e) {
        last_error = e.what();
        switch (e.code()) {
        case ErrorCode::invalid_argument: return GT_E_INVALID_ARGUMENT;
        case ErrorCode::parse: return GT_E_PARSE;
        case ErrorCode::capacity: return GT_E_CAPACITY;
        }
        return GT_E_INTERNAL;
    } catch (const std::bad_alloc&) {
        last_error = "out of memory";
        return GT_E_INTERNAL;
    } catch (const std::exception& e) {
        last_error = e.what();
        return GT_E_INTERNAL;
    } catch (...) {
        last_error = "unknown error";
        return GT_E_INTERNAL;
    }
}

void require(const void* p, const char* what) {
    if (!p) throw_invalid(std::string(what) + " must not be NULL");
}

char* dup_string(std::string_view s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.data(), s.size());
    out[s.size()] = '\0';
    return out;
}

std::string_view view(const char* text, size_t len) {
    if (!text && len != 0) throw_invalid("text must not be NULL");
    return text ? std::string_view(text, len) : std::string_view();
}

GaConfig to_config(const gt_ga_config* c) {
    require(c, "config");
    GaConfig config;
    config.population_size = c->population_size;
    config.generations = c->generations;
    config.crossover_rate = c->crossover_rate;
    config.mutation_rate = c->mutation_rate;
    switch (c->crossover_kind) {
    case GT_CROSSOVER_UNIFORM: config.crossover_kind = CrossoverKind::uniform; break;
    case GT_CROSSOVER_ONE_POINT: config.crossover_kind = CrossoverKind::one_point; break;
    default: throw_invalid("unknown crossover kind");
    }
    config.seed = c->seed;
    config.validate();
    return config;
}

gt_ga_config from_config(const GaConfig& config) {
    gt_ga_config c;
    c.population_size = static_cast<uint32_t>(config.population_size);
    c.generations = static_cast<uint32_t>(config.generations);
    c.crossover_rate = config.crossover_rate;
    c.mutation_rate = config.mutation_rate;
    c.crossover_kind = config.crossover_kind == CrossoverKind::uniform ? GT_CROSSOVER_UNIFORM
                                                                       : GT_CROSSOVER_ONE_POINT;
    c.seed = config.seed;
    return c;
}

SweepAxis to_axis(gt_sweep_axis axis) {
    switch (axis) {
    case GT_AXIS_CORPUS_FRACTION: return SweepAxis::corpus_fraction;
    case GT_AXIS_CONTEXT_SIZE: return SweepAxis::context_size;
    case GT_AXIS_POPULATION_SIZE: return SweepAxis::population_size;
    case GT_AXIS_MUTATION_RATE: return SweepAxis::mutation_rate;
    case GT_AXIS_CROSSOVER_KIND: return SweepAxis::crossover_kind;
    case GT_AXIS_CROSSOVER_RATE: return SweepAxis::crossover_rate;
    }
    throw_invalid("unknown sweep axis");
}

std::size_t jobs_or_one(uint32_t jobs) { return jobs == 0 ? 1 : jobs; }

} // namespace

extern "C" {

const char* gt_version(void) { return "1.0.0"; }

const char* gt_last_error(void) { return last_error.c_str(); }

void gt_string_free(char* s) { std::free(s); }

void gt_ga_config_default(gt_ga_config* config) {
    if (config) *config = from_config(GaConfig{});
}

gt_status gt_sweep_spec_default(gt_sweep_axis axis, gt_sweep_spec* spec) {
    return guarded([&] {
        require(spec, "spec");
        const SweepAxis a = to_axis(axis);
        spec->axis = axis;
        spec->values = nullptr;
        spec->value_count = 0;
        spec->base_config = from_config(experiment_base_config(a));
        spec->base_l_lc = 1;
        spec->base_l_rc = 1;
        spec->repetitions = 1;
        spec->jobs = 1;
        spec->record_timing = 1;
    });
}

gt_status gt_sweep_axis_parse(const char* name, gt_sweep_axis* axis) {
    return guarded([&] {
        require(name, "name");
        require(axis, "axis");
        *axis = static_cast<gt_sweep_axis>(parse_sweep_axis(name));
    });
}

gt_status gt_tagset_load(const char* text, size_t len, gt_tagset** out) {
    return guarded([&] {
        require(out, "out");
        *out = nullptr;
        *out = new gt_tagset{load_tagset(view(text, len))};
    });
}

void gt_tagset_free(gt_tagset* tagset) { delete tagset; }

size_t gt_tagset_size(const gt_tagset* tagset) { return tagset ? tagset->tagset.size() : 0; }

gt_status gt_corpus_parse(const gt_tagset* tagset, const char* text, size_t len,
                          gt_corpus** out) {
    return guarded([&] {
        require(tagset, "tagset");
        require(out, "out");
        *out = nullptr;
        *out = new gt_corpus{parse_tagged_corpus(view(text, len), tagset->tagset)};
    });
}

void gt_corpus_free(gt_corpus* corpus) { delete corpus; }

size_t gt_corpus_sentence_count(const gt_corpus* corpus) {
    return corpus ? corpus->corpus.sentences.size() : 0;
}

size_t gt_corpus_token_count(const gt_corpus* corpus) {
    return corpus ? corpus->corpus.token_count() : 0;
}

gt_status gt_corpus_write(const gt_corpus* corpus, char** out_text) {
    return guarded([&] {
        require(corpus, "corpus");
        require(out_text, "out_text");
        *out_text = dup_string(write_tagged_corpus(corpus->corpus));
    });
}

gt_status gt_corpus_split(const gt_corpus* corpus, double train_fraction, uint64_t seed,
                          gt_corpus** out_train, gt_corpus** out_test) {
    return guarded([&] {
        require(corpus, "corpus");
        require(out_train, "out_train");
        require(out_test, "out_test");
        auto [train, test] = split_corpus(corpus->corpus, train_fraction, seed);
        auto train_handle = std::make_unique<gt_corpus>(gt_corpus{std::move(train)});
        auto test_handle = std::make_unique<gt_corpus>(gt_corpus{std::move(test)});
        *out_train = train_handle.release();
        *out_test = test_handle.release();
    });
}

gt_status gt_corpus_take_prefix(const gt_corpus* corpus, double fraction, gt_corpus** out) {
    return guarded([&] {
        require(corpus, "corpus");
        require(out, "out");
        *out = new gt_corpus{take_prefix(corpus->corpus, fraction)};
    });
}

gt_status gt_model_build(const gt_corpus* corpus, uint32_t l_lc, uint32_t l_rc,
                         gt_model** out) {
    return guarded([&] {
        require(corpus, "corpus");
        require(out, "out");
        *out = nullptr;
        *out = new gt_model(TrainingTable::build(corpus->corpus, l_lc, l_rc),
                            Lexicon::build(corpus->corpus));
    });
}

gt_status gt_model_load(const char* table_text, size_t table_len, const char* lexicon_text,
                        size_t lexicon_len, gt_model** out) {
    return guarded([&] {
        require(out, "out");
        *out = nullptr;
        TrainingTable table = load_table(view(table_text, table_len));
        Lexicon lexicon = load_lexicon(view(lexicon_text, lexicon_len), table.tagset());
        *out = new gt_model(std::move(table), std::move(lexicon));
    });
}

void gt_model_free(gt_model* model) { delete model; }

gt_status gt_model_save(const gt_model* model, char** out_table_text, char** out_lexicon_text) {
    return guarded([&] {
        require(model, "model");
        require(out_table_text, "out_table_text");
        require(out_lexicon_text, "out_lexicon_text");
        std::unique_ptr<char, decltype(&std::free)> table(dup_string(save_table(model->table)),
                                                          &std::free);
        *out_lexicon_text = dup_string(save_lexicon(model->lexicon));
        *out_table_text = table.release();
    });
}

size_t gt_model_distinct_windows(const gt_model* model) {
    return model ? model->table.distinct_windows() : 0;
}

uint64_t gt_model_total_tokens(const gt_model* model) {
    return model ? model->table.total_tokens() : 0;
}

size_t gt_model_lexicon_size(const gt_model* model) {
    return model ? model->lexicon.size() : 0;
}

gt_status gt_model_tagset(const gt_model* model, gt_tagset** out) {
    return guarded([&] {
        require(model, "model");
        require(out, "out");
        *out = new gt_tagset{model->table.tagset()};
    });
}

gt_status gt_model_context(const gt_model* model, uint32_t* l_lc, uint32_t* l_rc) {
    return guarded([&] {
        require(model, "model");
        if (l_lc) *l_lc = static_cast<uint32_t>(model->table.l_lc());
        if (l_rc) *l_rc = static_cast<uint32_t>(model->table.l_rc());
    });
}

gt_status gt_tag_text(const gt_model* model, const gt_ga_config* config, const char* raw_text,
                      size_t len, uint32_t jobs, char** out_tagged) {
    return guarded([&] {
        require(model, "model");
        require(out_tagged, "out_tagged");
        const GaConfig ga = to_config(config);
        const auto sentences = parse_raw_sentences(view(raw_text, len));
        const auto tagged =
            tag_text(sentences, model->lexicon, model->fitness, ga, {jobs_or_one(jobs), 0});
        TaggedCorpus out{model->table.tagset(), {}};
        for (std::size_t s = 0; s < sentences.size(); ++s) {
            TaggedSentence sentence;
            for (std::size_t i = 0; i < sentences[s].size(); ++i)
                sentence.tokens.push_back(Token{sentences[s][i], tagged.tags[s][i]});
            out.sentences.push_back(std::move(sentence));
        }
        *out_tagged = dup_string(write_tagged_corpus(out));
    });
}

gt_status gt_evaluate(const gt_model* model, const gt_ga_config* config, const gt_corpus* gold,
                      uint32_t jobs, gt_eval_report* out_report) {
    return guarded([&] {
        require(model, "model");
        require(gold, "gold");
        require(out_report, "out_report");
        if (!(gold->corpus.tagset == model->table.tagset()))
            throw_invalid("gold corpus tagset differs from the model's tagset");
        const GaConfig ga = to_config(config);
        std::vector<RawSentence> raw;
        for (const auto& s : gold->corpus.sentences) raw.push_back(s.words());
        const auto tagged =
            tag_text(raw, model->lexicon, model->fitness, ga, {jobs_or_one(jobs), 0});
        const Accuracy acc = accuracy(gold->corpus, tagged.tags);

        std::vector<Genes> baseline;
        for (const auto& s : raw) baseline.push_back(baseline_tag(s, model->lexicon));

        out_report->tar_token = acc.token();
        out_report->tar_sentence = acc.sentence();
        out_report->baseline_tar_token = tar(gold->corpus, baseline);
        out_report->sentences = acc.total_sentences;
        out_report->tokens = acc.total_tokens;
        out_report->correct_tokens = acc.correct_tokens;
        out_report->fitness_evals = static_cast<double>(tagged.counters.individual_evals) /
                                    static_cast<double>(raw.size());
    });
}

gt_status gt_compare(const gt_model* model, const gt_corpus* gold, const gt_corpus* hypothesis,
                     gt_eval_report* out_report) {
    return guarded([&] {
        require(model, "model");
        require(gold, "gold");
        require(hypothesis, "hypothesis");
        require(out_report, "out_report");
        if (!(gold->corpus.tagset == model->table.tagset()) ||
            !(hypothesis->corpus.tagset == model->table.tagset()))
            throw_invalid("corpus tagset differs from the model's tagset");
        const auto& gold_sentences = gold->corpus.sentences;
        const auto& hyp_sentences = hypothesis->corpus.sentences;
        if (gold_sentences.size() != hyp_sentences.size())
            throw_invalid("gold has " + std::to_string(gold_sentences.size()) +
                          " sentences but the hypothesis has " +
                          std::to_string(hyp_sentences.size()));
        std::vector<Genes> tags;
        std::vector<Genes> baseline;
        for (std::size_t s = 0; s < gold_sentences.size(); ++s) {
            const RawSentence words = gold_sentences[s].words();
            if (words != hyp_sentences[s].words())
                throw_invalid("sentence " + std::to_string(s + 1) +
                              ": hypothesis words differ from the gold words");
            tags.push_back(hyp_sentences[s].tags());
            baseline.push_back(baseline_tag(words, model->lexicon));
        }
        const Accuracy acc = accuracy(gold->corpus, tags);
        out_report->tar_token = acc.token();
        out_report->tar_sentence = acc.sentence();
        out_report->baseline_tar_token = tar(gold->corpus, baseline);
        out_report->sentences = acc.total_sentences;
        out_report->tokens = acc.total_tokens;
        out_report->correct_tokens = acc.correct_tokens;
        out_report->fitness_evals = 0.0;
    });
}

gt_status gt_eval_report_csv(const gt_eval_report* report, uint64_t seed, char** out_csv) {
    return guarded([&] {
        require(report, "report");
        require(out_csv, "out_csv");
        SweepResult result;
        SweepRow row;
        row.axis_value = "eval";
        row.seed = seed;
        row.tar_token = report->tar_token;
        row.tar_sentence = report->tar_sentence;
        row.fitness_evals = report->fitness_evals;
        result.rows.push_back(row);
        *out_csv = dup_string(write_results(result));
    });
}

gt_status gt_sweep_run(const gt_sweep_spec* spec, const gt_corpus* train, const gt_corpus* test,
                       char** out_csv) {
    return guarded([&] {
        require(spec, "spec");
        require(train, "train");
        require(test, "test");
        require(out_csv, "out_csv");
        SweepSpec s;
        s.axis = to_axis(spec->axis);
        if (spec->value_count == 0) {
            for (const auto& v : default_sweep_values(s.axis))
                s.values.push_back(parse_sweep_value(s.axis, v));
        } else {
            require(spec->values, "values");
            for (size_t i = 0; i < spec->value_count; ++i) {
                require(spec->values[i], "value");
                s.values.push_back(parse_sweep_value(s.axis, spec->values[i]));
            }
        }
        s.base_config = to_config(&spec->base_config);
        s.base_context = {spec->base_l_lc, spec->base_l_rc};
        s.repetitions = spec->repetitions;
        s.jobs = jobs_or_one(spec->jobs);
        s.record_timing = spec->record_timing != 0;
        *out_csv = dup_string(write_results(run_sweep(s, train->corpus, test->corpus)));
    });
}

} // extern "C"
