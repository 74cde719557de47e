#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gatagger/corpus.hpp"
#include "gatagger/ga.hpp"

namespace gatagger {

struct Accuracy {
    std::size_t correct_tokens = 0;
    std::size_t total_tokens = 0;
    std::size_t correct_sentences = 0;
    std::size_t total_sentences = 0;

    /// Tagging accuracy rate: correctly tagged tokens over reference tokens.
    double token() const;
    /// Fraction of sentences tagged entirely correctly.
    double sentence() const;
};

/// Compares hypothesis tag sequences with the reference corpus sentence by
/// sentence. Throws Error(invalid_argument) on shape mismatch or when the
/// reference has no tokens.
Accuracy accuracy(const TaggedCorpus& reference, std::span<const Genes> hypothesis);

inline double tar(const TaggedCorpus& reference, std::span<const Genes> hypothesis) {
    return accuracy(reference, hypothesis).token();
}

enum class SweepAxis {
    corpus_fraction,
    context_size,
    population_size,
    mutation_rate,
    crossover_kind,
    crossover_rate,
};

std::string_view to_string(SweepAxis axis);
SweepAxis parse_sweep_axis(std::string_view text);

struct ContextSize {
    std::size_t left = 1;
    std::size_t right = 1;

    friend bool operator==(const ContextSize&, const ContextSize&) = default;
};

/// Parses "L-R" or "L,R".
ContextSize parse_context_size(std::string_view text);

/// One point on a sweep axis. `label` is the canonical text written to CSV;
/// the field matching the axis holds the parsed value.
struct SweepValue {
    std::string label;
    double number = 0.0;
    ContextSize context{};
    CrossoverKind kind = CrossoverKind::uniform;
};

SweepValue parse_sweep_value(SweepAxis axis, std::string_view text);

/// Grid used when no values are given for an axis.
std::vector<std::string> default_sweep_values(SweepAxis axis);

/// Base GA settings for each sweep axis: population 60,
/// mutation 4% for the corpus/context/population/mutation studies, population
/// 45, mutation 5% for the two crossover studies; 30 generations, 50% uniform
/// crossover and a 1-1 context otherwise.
GaConfig experiment_base_config(SweepAxis axis);

struct SweepSpec {
    SweepAxis axis = SweepAxis::corpus_fraction;
    std::vector<SweepValue> values;
    GaConfig base_config{};
    ContextSize base_context{};
    std::size_t repetitions = 1;
    std::size_t jobs = 1;
    /// When false the wall_ms column is written as 0 so reruns are
    /// byte-identical.
    bool record_timing = true;

    void validate() const;
};

struct SweepRow {
    std::string axis_value;
    std::uint64_t seed = 0;
    double tar_token = 0.0;
    double tar_sentence = 0.0;
    double wall_ms = 0.0;
    /// Mean individual fitness evaluations per test sentence.
    double fitness_evals = 0.0;

    // Not part of the CSV schema.
    std::size_t table_windows = 0;
    double backoff_steps_per_gene = 0.0;
};

struct SweepResult {
    SweepAxis axis = SweepAxis::corpus_fraction;
    /// Ordered by (value index, replicate).
    std::vector<SweepRow> rows;
};

/// Seed of replicate `r`; independent of the axis value.
std::uint64_t replicate_seed(std::uint64_t base_seed, std::size_t replicate);

SweepResult run_sweep(const SweepSpec& spec, const TaggedCorpus& train,
                      const TaggedCorpus& test);

inline constexpr std::string_view kResultsHeader =
    "axis_value,seed,tar_token,tar_sentence,wall_ms,fitness_evals";

/// CSV: header row, then one row per (value, replicate); reals with six
/// decimals, LF line endings.
std::string write_results(const SweepResult& result);
std::vector<SweepRow> parse_results(std::string_view csv);

/// Fixed-point text with six decimals.
std::string format_fixed6(double value);

} // namespace gatagger
