// Command-line front end over the gatagger C API.
//
//   gatagger build --corpus train.txt --tagset tags.txt --context 1,1 --out model/
//   gatagger tag   --model model/ --input raw.txt [--output tagged.txt]
//   gatagger eval  --model model/ --gold gold.txt [--hypothesis tagged.txt] [--csv report.csv]
//   gatagger sweep --axis context_size --values 1-1 2-2 3-2 --tagset tags.txt
//                  --train train.txt --test test.txt --out results.csv
//
// Exit codes: 0 success, 1 runtime failure, 2 usage or input error.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gatagger/gatagger.h"

namespace fs = std::filesystem;

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

constexpr const char* kTableFile = "table.txt";
constexpr const char* kLexiconFile = "lexicon.txt";

/// Failure carrying the process exit code.
struct CliError : std::runtime_error {
    CliError(int code, const std::string& message) : std::runtime_error(message), code(code) {}
    int code;
};

void check(gt_status status) {
    if (status == GT_OK) return;
    const int code = (status == GT_E_PARSE || status == GT_E_INVALID_ARGUMENT) ? kExitUsage
                                                                               : kExitRuntime;
    throw CliError(code, gt_last_error());
}

struct TagsetDeleter { void operator()(gt_tagset* p) const { gt_tagset_free(p); } };
struct CorpusDeleter { void operator()(gt_corpus* p) const { gt_corpus_free(p); } };
struct ModelDeleter { void operator()(gt_model* p) const { gt_model_free(p); } };
struct StringDeleter { void operator()(char* p) const { gt_string_free(p); } };

using TagsetPtr = std::unique_ptr<gt_tagset, TagsetDeleter>;
using CorpusPtr = std::unique_ptr<gt_corpus, CorpusDeleter>;
using ModelPtr = std::unique_ptr<gt_model, ModelDeleter>;
using StringPtr = std::unique_ptr<char, StringDeleter>;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CliError(kExitUsage, "cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw CliError(kExitRuntime, "cannot write '" + path.string() + "'");
    out << content;
    if (!out.flush()) throw CliError(kExitRuntime, "write to '" + path.string() + "' failed");
}

TagsetPtr load_tagset(const std::string& path) {
    const std::string text = read_file(path);
    gt_tagset* raw = nullptr;
    check(gt_tagset_load(text.data(), text.size(), &raw));
    return TagsetPtr(raw);
}

CorpusPtr load_corpus(const gt_tagset* tagset, const std::string& path) {
    const std::string text = read_file(path);
    gt_corpus* raw = nullptr;
    check(gt_corpus_parse(tagset, text.data(), text.size(), &raw));
    return CorpusPtr(raw);
}

ModelPtr load_model(const std::string& dir) {
    const std::string table = read_file((fs::path(dir) / kTableFile).string());
    const std::string lexicon = read_file((fs::path(dir) / kLexiconFile).string());
    gt_model* raw = nullptr;
    check(gt_model_load(table.data(), table.size(), lexicon.data(), lexicon.size(), &raw));
    return ModelPtr(raw);
}

/// Parses "L,R" (or "L-R") into a context window size.
void parse_context(const std::string& text, uint32_t& left, uint32_t& right) {
    const auto sep = text.find_first_of(",-");
    try {
        if (sep == std::string::npos) throw std::invalid_argument(text);
        std::size_t used = 0;
        const unsigned long l = std::stoul(text.substr(0, sep), &used);
        if (used != sep) throw std::invalid_argument(text);
        const std::string rest = text.substr(sep + 1);
        const unsigned long r = std::stoul(rest, &used);
        if (used != rest.size()) throw std::invalid_argument(text);
        left = static_cast<uint32_t>(l);
        right = static_cast<uint32_t>(r);
    } catch (const std::logic_error&) {
        throw CliError(kExitUsage, "--context expects L,R (got '" + text + "')");
    }
}

struct GaFlags {
    CLI::Option* population = nullptr;
    CLI::Option* generations = nullptr;
    CLI::Option* crossover_rate = nullptr;
    CLI::Option* mutation_rate = nullptr;
    CLI::Option* crossover = nullptr;
    uint32_t population_size = 60;
    uint32_t generation_count = 30;
    double crossover_rate_value = 0.5;
    double mutation_rate_value = 0.04;
    std::string crossover_kind = "uniform";
    uint64_t seed = 0;
    uint32_t jobs = 1;

    void add(CLI::App& app) {
        population = app.add_option("--population", population_size, "Population size")
                         ->capture_default_str();
        generations = app.add_option("--generations", generation_count, "Number of generations")
                          ->capture_default_str();
        crossover_rate = app.add_option("--crossover-rate", crossover_rate_value,
                                        "Probability that a selected pair is recombined")
                             ->capture_default_str();
        mutation_rate = app.add_option("--mutation-rate", mutation_rate_value,
                                       "Per-gene mutation probability")
                            ->capture_default_str();
        crossover = app.add_option("--crossover", crossover_kind, "Crossover operator")
                        ->check(CLI::IsMember({"uniform", "one_point"}))
                        ->capture_default_str();
        app.add_option("--seed", seed, "Master random seed")
            ->envname("GA_TAGGER_SEED")
            ->capture_default_str();
        app.add_option("--jobs", jobs, "Worker threads (output does not depend on it)")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
    }

    /// Applies the flags given on the command line on top of `config`.
    void apply(gt_ga_config& config, bool only_explicit) const {
        if (!only_explicit || population->count()) config.population_size = population_size;
        if (!only_explicit || generations->count()) config.generations = generation_count;
        if (!only_explicit || crossover_rate->count()) config.crossover_rate = crossover_rate_value;
        if (!only_explicit || mutation_rate->count()) config.mutation_rate = mutation_rate_value;
        if (!only_explicit || crossover->count())
            config.crossover_kind =
                crossover_kind == "uniform" ? GT_CROSSOVER_UNIFORM : GT_CROSSOVER_ONE_POINT;
        config.seed = seed;
    }

    gt_ga_config config() const {
        gt_ga_config c;
        gt_ga_config_default(&c);
        apply(c, false);
        return c;
    }
};

int run_build(const std::string& corpus_path, const std::string& tagset_path,
              const std::string& context, const std::string& out_dir) {
    uint32_t l_lc = 1;
    uint32_t l_rc = 1;
    parse_context(context, l_lc, l_rc);
    const TagsetPtr tagset = load_tagset(tagset_path);
    const CorpusPtr corpus = load_corpus(tagset.get(), corpus_path);

    gt_model* raw = nullptr;
    check(gt_model_build(corpus.get(), l_lc, l_rc, &raw));
    const ModelPtr model(raw);

    char* table_text = nullptr;
    char* lexicon_text = nullptr;
    check(gt_model_save(model.get(), &table_text, &lexicon_text));
    const StringPtr table(table_text);
    const StringPtr lexicon(lexicon_text);

    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw CliError(kExitRuntime, "cannot create '" + out_dir + "': " + ec.message());
    write_file(fs::path(out_dir) / kTableFile, table.get());
    write_file(fs::path(out_dir) / kLexiconFile, lexicon.get());

    std::cout << "sentences: " << gt_corpus_sentence_count(corpus.get()) << "\n"
              << "tokens: " << gt_corpus_token_count(corpus.get()) << "\n"
              << "context: " << l_lc << "-" << l_rc << "\n"
              << "distinct windows: " << gt_model_distinct_windows(model.get()) << "\n"
              << "lexicon words: " << gt_model_lexicon_size(model.get()) << "\n";
    return 0;
}

int run_tag(const std::string& model_dir, const std::string& input, const std::string& output,
            const GaFlags& flags) {
    const ModelPtr model = load_model(model_dir);
    const std::string raw_text = read_file(input);
    const gt_ga_config config = flags.config();
    char* tagged = nullptr;
    check(gt_tag_text(model.get(), &config, raw_text.data(), raw_text.size(), flags.jobs, &tagged));
    const StringPtr result(tagged);
    if (output.empty() || output == "-")
        std::cout << result.get();
    else
        write_file(output, result.get());
    return 0;
}

int run_eval(const std::string& model_dir, const std::string& gold_path,
             const std::string& hypothesis_path, const std::string& csv_path,
             const GaFlags& flags) {
    const ModelPtr model = load_model(model_dir);
    gt_tagset* tagset_raw = nullptr;
    check(gt_model_tagset(model.get(), &tagset_raw));
    const TagsetPtr tagset(tagset_raw);
    const CorpusPtr gold = load_corpus(tagset.get(), gold_path);
    const gt_ga_config config = flags.config();

    gt_eval_report report{};
    if (hypothesis_path.empty()) {
        check(gt_evaluate(model.get(), &config, gold.get(), flags.jobs, &report));
    } else {
        const CorpusPtr hypothesis = load_corpus(tagset.get(), hypothesis_path);
        check(gt_compare(model.get(), gold.get(), hypothesis.get(), &report));
    }

    char line[256];
    std::snprintf(line, sizeof line, "sentences: %llu\ntokens: %llu\ncorrect tokens: %llu\n",
                  static_cast<unsigned long long>(report.sentences),
                  static_cast<unsigned long long>(report.tokens),
                  static_cast<unsigned long long>(report.correct_tokens));
    std::cout << line;
    std::snprintf(line, sizeof line,
                  "TAR (token): %.6f\nTAR (sentence): %.6f\nbaseline TAR (token): %.6f\n"
                  "fitness evaluations per sentence: %.6f\n",
                  report.tar_token, report.tar_sentence, report.baseline_tar_token,
                  report.fitness_evals);
    std::cout << line;

    if (!csv_path.empty()) {
        char* csv = nullptr;
        check(gt_eval_report_csv(&report, config.seed, &csv));
        const StringPtr text(csv);
        write_file(csv_path, text.get());
    }
    return 0;
}

int run_sweep(const std::string& axis_name, const std::vector<std::string>& values,
              const std::string& tagset_path, const std::string& train_path,
              const std::string& test_path, const std::string& out_path,
              const std::string& context, uint32_t repetitions, bool no_timing,
              const GaFlags& flags) {
    gt_sweep_axis axis{};
    check(gt_sweep_axis_parse(axis_name.c_str(), &axis));
    gt_sweep_spec spec{};
    check(gt_sweep_spec_default(axis, &spec));
    flags.apply(spec.base_config, true);
    parse_context(context, spec.base_l_lc, spec.base_l_rc);
    std::vector<const char*> value_ptrs;
    for (const auto& v : values) value_ptrs.push_back(v.c_str());
    spec.values = value_ptrs.empty() ? nullptr : value_ptrs.data();
    spec.value_count = value_ptrs.size();
    spec.repetitions = repetitions;
    spec.jobs = flags.jobs;
    spec.record_timing = no_timing ? 0 : 1;

    const TagsetPtr tagset = load_tagset(tagset_path);
    const CorpusPtr train = load_corpus(tagset.get(), train_path);
    const CorpusPtr test = load_corpus(tagset.get(), test_path);

    char* csv = nullptr;
    check(gt_sweep_run(&spec, train.get(), test.get(), &csv));
    const StringPtr text(csv);
    if (out_path == "-")
        std::cout << text.get();
    else
        write_file(out_path, text.get());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Genetic-algorithm part-of-speech tagger"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(gt_version()));

    std::string corpus_path, tagset_path, out_dir, context = "1,1";
    auto* build = app.add_subcommand("build", "Build the training table and lexicon");
    build->add_option("--corpus", corpus_path, "Tagged training corpus")->required();
    build->add_option("--tagset", tagset_path, "Tagset file")->required();
    build->add_option("--context", context, "Context window L,R")->capture_default_str();
    build->add_option("--out", out_dir, "Output directory")->required();

    std::string model_dir, input, output;
    GaFlags tag_flags;
    auto* tag = app.add_subcommand("tag", "Tag raw sentences, one per line");
    tag->add_option("--model", model_dir, "Directory written by 'build'")->required();
    tag->add_option("--input", input, "Raw input file")->required();
    tag->add_option("--output", output, "Output file (default stdout)");
    tag_flags.add(*tag);

    std::string gold_path, hypothesis_path, csv_path;
    GaFlags eval_flags;
    auto* eval = app.add_subcommand("eval", "Tag a gold corpus and report accuracy");
    eval->add_option("--model", model_dir, "Directory written by 'build'")->required();
    eval->add_option("--gold", gold_path, "Gold tagged corpus")->required();
    eval->add_option("--hypothesis", hypothesis_path,
                     "Score this tagged file instead of running the tagger");
    eval->add_option("--csv", csv_path, "Also write a results CSV");
    eval_flags.add(*eval);

    std::string axis, train_path, test_path, sweep_out, sweep_context = "1,1";
    std::vector<std::string> values;
    uint32_t repetitions = 1;
    bool no_timing = false;
    GaFlags sweep_flags;
    auto* sweep = app.add_subcommand("sweep", "Run a parameter sweep and write CSV results");
    sweep->add_option("--axis", axis, "Swept parameter")
        ->required()
        ->check(CLI::IsMember({"corpus_fraction", "context_size", "population_size",
                               "mutation_rate", "crossover_kind", "crossover_rate"}));
    sweep->add_option("--values", values, "Axis values (default grid if omitted)");
    sweep->add_option("--tagset", tagset_path, "Tagset file")->required();
    sweep->add_option("--train", train_path, "Tagged training corpus")->required();
    sweep->add_option("--test", test_path, "Tagged test corpus")->required();
    sweep->add_option("--out", sweep_out, "CSV output file ('-' for stdout)")->required();
    sweep->add_option("--context", sweep_context, "Context window L,R when not swept")
        ->capture_default_str();
    sweep->add_option("--repetitions", repetitions, "Seed replicates per value")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sweep->add_flag("--no-timing", no_timing, "Write 0 in the wall_ms column");
    sweep_flags.add(*sweep);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (*build) return run_build(corpus_path, tagset_path, context, out_dir);
        if (*tag) return run_tag(model_dir, input, output, tag_flags);
        if (*eval) return run_eval(model_dir, gold_path, hypothesis_path, csv_path, eval_flags);
        if (*sweep)
            return run_sweep(axis, values, tagset_path, train_path, test_path, sweep_out,
                             sweep_context, repetitions, no_timing, sweep_flags);
    } catch (const CliError& e) {
        std::cerr << "gatagger: " << e.what() << "\n";
        return e.code;
    } catch (const std::exception& e) {
        std::cerr << "gatagger: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitUsage;
}
