#include "gatagger/eval.hpp"

#include <charconv>
#include <chrono>
#include <optional>

#include "gatagger/error.hpp"
#include "gatagger/fitness.hpp"
#include "gatagger/tables.hpp"
#include "text.hpp"

namespace gatagger {

namespace {

double parse_double(std::string_view text, std::string_view what) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size())
        throw_invalid("bad " + std::string(what) + " '" + std::string(text) + "'");
    return value;
}

std::string shortest(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, ptr);
}

} // namespace

double Accuracy::token() const {
    if (total_tokens == 0) throw_invalid("accuracy over zero tokens is undefined");
    return static_cast<double>(correct_tokens) / static_cast<double>(total_tokens);
}

double Accuracy::sentence() const {
    if (total_sentences == 0) throw_invalid("accuracy over zero sentences is undefined");
    return static_cast<double>(correct_sentences) / static_cast<double>(total_sentences);
}

Accuracy accuracy(const TaggedCorpus& reference, std::span<const Genes> hypothesis) {
    if (reference.sentences.size() != hypothesis.size())
        throw_invalid("reference has " + std::to_string(reference.sentences.size()) +
                      " sentences but the hypothesis has " + std::to_string(hypothesis.size()));
    Accuracy acc;
    for (std::size_t s = 0; s < hypothesis.size(); ++s) {
        const auto& tokens = reference.sentences[s].tokens;
        if (tokens.size() != hypothesis[s].size())
            throw_invalid("sentence " + std::to_string(s) + " length mismatch");
        std::size_t correct = 0;
        for (std::size_t i = 0; i < tokens.size(); ++i)
            if (tokens[i].tag == hypothesis[s][i]) ++correct;
        acc.correct_tokens += correct;
        acc.total_tokens += tokens.size();
        if (correct == tokens.size()) ++acc.correct_sentences;
        ++acc.total_sentences;
    }
    if (acc.total_tokens == 0) throw_invalid("reference corpus has no tokens");
    return acc;
}

std::string_view to_string(SweepAxis axis) {
    switch (axis) {
    case SweepAxis::corpus_fraction: return "corpus_fraction";
    case SweepAxis::context_size: return "context_size";
    case SweepAxis::population_size: return "population_size";
    case SweepAxis::mutation_rate: return "mutation_rate";
    case SweepAxis::crossover_kind: return "crossover_kind";
    case SweepAxis::crossover_rate: return "crossover_rate";
    }
    return "unknown";
}

SweepAxis parse_sweep_axis(std::string_view text) {
    for (auto axis : {SweepAxis::corpus_fraction, SweepAxis::context_size,
                      SweepAxis::population_size, SweepAxis::mutation_rate,
                      SweepAxis::crossover_kind, SweepAxis::crossover_rate})
        if (to_string(axis) == text) return axis;
    throw_invalid("unknown sweep axis '" + std::string(text) + "'");
}

ContextSize parse_context_size(std::string_view text) {
    const auto sep = text.find_first_of("-,");
    if (sep == std::string_view::npos) throw_invalid("context size must look like L-R");
    const auto left = text::parse_u64(text.substr(0, sep));
    const auto right = text::parse_u64(text.substr(sep + 1));
    if (!left || !right) throw_invalid("bad context size '" + std::string(text) + "'");
    if (*left > kMaxContext || *right > kMaxContext)
        throw_invalid("context size exceeds " + std::to_string(kMaxContext) + " per side");
    if (*left + *right == 0) throw_invalid("context must contain at least one tag");
    return {static_cast<std::size_t>(*left), static_cast<std::size_t>(*right)};
}

SweepValue parse_sweep_value(SweepAxis axis, std::string_view text) {
    SweepValue v;
    switch (axis) {
    case SweepAxis::corpus_fraction:
        v.number = parse_double(text, "corpus fraction");
        if (!(v.number > 0.0 && v.number <= 1.0))
            throw_invalid("corpus fraction must lie in (0, 1]");
        v.label = shortest(v.number);
        break;
    case SweepAxis::mutation_rate:
    case SweepAxis::crossover_rate:
        v.number = parse_double(text, "rate");
        if (!(v.number >= 0.0 && v.number <= 1.0)) throw_invalid("rates must lie in [0, 1]");
        v.label = shortest(v.number);
        break;
    case SweepAxis::population_size: {
        const auto n = text::parse_u64(text);
        if (!n || *n < 2) throw_invalid("population size must be an integer >= 2");
        v.number = static_cast<double>(*n);
        v.label = std::to_string(*n);
        break;
    }
    case SweepAxis::context_size:
        v.context = parse_context_size(text);
        v.label = std::to_string(v.context.left) + "-" + std::to_string(v.context.right);
        break;
    case SweepAxis::crossover_kind:
        v.kind = parse_crossover_kind(text);
        v.label = std::string(to_string(v.kind));
        break;
    }
    return v;
}

std::vector<std::string> default_sweep_values(SweepAxis axis) {
    switch (axis) {
    case SweepAxis::corpus_fraction: return {"0.1", "0.25", "0.5", "0.75", "1"};
    case SweepAxis::context_size: return {"1-1", "2-2", "3-2"};
    case SweepAxis::population_size: return {"10", "20", "45", "60", "100"};
    case SweepAxis::mutation_rate: return {"0.01", "0.02", "0.04", "0.05", "0.1"};
    case SweepAxis::crossover_kind: return {"uniform", "one_point"};
    case SweepAxis::crossover_rate: return {"0.2", "0.5", "0.8"};
    }
    return {};
}

GaConfig experiment_base_config(SweepAxis axis) {
    GaConfig config;
    if (axis == SweepAxis::crossover_kind || axis == SweepAxis::crossover_rate) {
        config.population_size = 45;
        config.mutation_rate = 0.05;
    }
    return config;
}

void SweepSpec::validate() const {
    if (values.empty()) throw_invalid("sweep needs at least one value");
    if (repetitions < 1) throw_invalid("sweep needs at least one repetition");
    base_config.validate();
}

std::uint64_t replicate_seed(std::uint64_t base_seed, std::size_t replicate) {
    return RandomSource::derive(base_seed, replicate);
}

SweepResult run_sweep(const SweepSpec& spec, const TaggedCorpus& train,
                      const TaggedCorpus& test) {
    spec.validate();
    if (!(train.tagset == test.tagset)) throw_invalid("train and test corpora use different tagsets");
    std::vector<RawSentence> raw;
    raw.reserve(test.sentences.size());
    for (const auto& s : test.sentences) raw.push_back(s.words());

    const bool rebuilds_tables =
        spec.axis == SweepAxis::corpus_fraction || spec.axis == SweepAxis::context_size;
    std::optional<TrainingTable> shared_table;
    std::optional<Lexicon> shared_lexicon;
    if (!rebuilds_tables) {
        shared_table.emplace(TrainingTable::build(train, spec.base_context.left,
                                                  spec.base_context.right));
        shared_lexicon.emplace(Lexicon::build(train));
    }

    SweepResult result;
    result.axis = spec.axis;
    for (const auto& value : spec.values) {
        GaConfig config = spec.base_config;
        switch (spec.axis) {
        case SweepAxis::population_size:
            config.population_size = static_cast<std::size_t>(value.number);
            break;
        case SweepAxis::mutation_rate: config.mutation_rate = value.number; break;
        case SweepAxis::crossover_rate: config.crossover_rate = value.number; break;
        case SweepAxis::crossover_kind: config.crossover_kind = value.kind; break;
        case SweepAxis::corpus_fraction:
        case SweepAxis::context_size: break;
        }
        config.validate();

        std::optional<TrainingTable> local_table;
        std::optional<Lexicon> local_lexicon;
        if (rebuilds_tables) {
            const TaggedCorpus portion = spec.axis == SweepAxis::corpus_fraction
                                             ? take_prefix(train, value.number)
                                             : train;
            const ContextSize ctx =
                spec.axis == SweepAxis::context_size ? value.context : spec.base_context;
            local_table.emplace(TrainingTable::build(portion, ctx.left, ctx.right));
            local_lexicon.emplace(Lexicon::build(portion));
        }
        const TrainingTable& table = rebuilds_tables ? *local_table : *shared_table;
        const Lexicon& lexicon = rebuilds_tables ? *local_lexicon : *shared_lexicon;
        const FitnessModel model(table);

        for (std::size_t r = 0; r < spec.repetitions; ++r) {
            config.seed = replicate_seed(spec.base_config.seed, r);
            const auto start = std::chrono::steady_clock::now();
            const TaggingResult tagged = tag_text(raw, lexicon, model, config, {spec.jobs, 0});
            const auto stop = std::chrono::steady_clock::now();
            const Accuracy acc = accuracy(test, tagged.tags);

            SweepRow row;
            row.axis_value = value.label;
            row.seed = config.seed;
            row.tar_token = acc.token();
            row.tar_sentence = acc.sentence();
            row.wall_ms = spec.record_timing
                              ? std::chrono::duration<double, std::milli>(stop - start).count()
                              : 0.0;
            row.fitness_evals = static_cast<double>(tagged.counters.individual_evals) /
                                static_cast<double>(raw.size());
            row.table_windows = table.distinct_windows();
            row.backoff_steps_per_gene =
                tagged.counters.gene_evals == 0
                    ? 0.0
                    : static_cast<double>(tagged.counters.backoff_steps) /
                          static_cast<double>(tagged.counters.gene_evals);
            result.rows.push_back(std::move(row));
        }
    }
    return result;
}

std::string format_fixed6(double value) {
    char buf[64];
    const auto [ptr, ec] =
        std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed, 6);
    return std::string(buf, ptr);
}

std::string write_results(const SweepResult& result) {
    std::string out(kResultsHeader);
    out += '\n';
    for (const auto& row : result.rows) {
        out += row.axis_value;
        out += ',';
        out += std::to_string(row.seed);
        out += ',';
        out += format_fixed6(row.tar_token);
        out += ',';
        out += format_fixed6(row.tar_sentence);
        out += ',';
        out += format_fixed6(row.wall_ms);
        out += ',';
        out += format_fixed6(row.fitness_evals);
        out += '\n';
    }
    return out;
}

std::vector<SweepRow> parse_results(std::string_view csv) {
    std::vector<SweepRow> rows;
    bool header = true;
    text::for_each_line(csv, [&](std::size_t line_no, std::string_view line) {
        if (header) {
            if (line != kResultsHeader) throw ParseError(line_no, 0, "unexpected CSV header");
            header = false;
            return;
        }
        if (line.empty()) return;
        const auto fields = text::split(line, ',');
        if (fields.size() != 6) throw ParseError(line_no, 0, "expected 6 fields");
        try {
            SweepRow row;
            row.axis_value = std::string(fields[0]);
            const auto seed = text::parse_u64(fields[1]);
            if (!seed) throw_invalid("bad seed");
            row.seed = *seed;
            row.tar_token = parse_double(fields[2], "tar_token");
            row.tar_sentence = parse_double(fields[3], "tar_sentence");
            row.wall_ms = parse_double(fields[4], "wall_ms");
            row.fitness_evals = parse_double(fields[5], "fitness_evals");
            rows.push_back(std::move(row));
        } catch (const ParseError&) {
            throw;
        } catch (const Error& e) {
            throw ParseError(line_no, 0, e.what());
        }
    });
    if (header) throw ParseError(1, 0, "missing CSV header");
    return rows;
}

} // namespace gatagger
