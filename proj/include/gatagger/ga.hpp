#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "gatagger/corpus.hpp"
#include "gatagger/fitness.hpp"
#include "gatagger/random.hpp"
#include "gatagger/tables.hpp"

namespace gatagger {

enum class CrossoverKind {
    uniform,
    one_point,
};

std::string_view to_string(CrossoverKind kind);
CrossoverKind parse_crossover_kind(std::string_view text);

/// Defaults follow the corpus-size experiment: 60 individuals, 30
/// generations, crossover 50% uniform, mutation 4%.
struct GaConfig {
    std::size_t population_size = 60;
    std::size_t generations = 30;
    double crossover_rate = 0.5;
    double mutation_rate = 0.04;
    CrossoverKind crossover_kind = CrossoverKind::uniform;
    std::uint64_t seed = 0;

    void validate() const;
};

/// One tag per word.
using Genes = std::vector<TagId>;

struct Individual {
    Genes genes;
    double fitness = 0.0;
};

using Population = std::vector<Individual>;

/// Candidate tags for every word of one sentence, with the lexicon counts
/// used as sampling weights (1 for each tag of an unknown word).
class SearchSpace {
public:
    SearchSpace(const RawSentence& sentence, const Lexicon& lexicon);

    std::size_t size() const noexcept { return candidates_.size(); }
    std::span<const TagId> candidates(std::size_t position) const { return candidates_[position]; }
    std::span<const double> weights(std::size_t position) const { return weights_[position]; }
    bool contains(std::size_t position, TagId tag) const;
    bool known(std::size_t position) const { return known_[position]; }

    /// Context-free choice: the word's most frequent tag, or the corpus-wide
    /// most frequent tag for unknown words.
    TagId preferred(std::size_t position) const { return preferred_[position]; }

    /// Number of complete assignments, saturating at `cap + 1`.
    std::uint64_t assignment_count(std::uint64_t cap) const;

private:
    std::vector<std::vector<TagId>> candidates_;
    std::vector<std::vector<double>> weights_;
    std::vector<TagId> preferred_;
    std::vector<bool> known_;
};

Individual evaluate(Genes genes, const FitnessModel& model, EvalCounters* counters = nullptr);

/// Greedy left-to-right seed individual: starting from the context-free
/// preferred tags, each position in turn takes the candidate with the best
/// gene fitness given its current neighbours (ties keep the earlier
/// candidate).
Genes greedy_seed(const SearchSpace& space, const FitnessModel& model,
                  EvalCounters* counters = nullptr);

/// Seed individual first, then P-1 individuals whose genes are redrawn from
/// each word's candidates in proportion to lexicon counts.
Population initialize_population(const SearchSpace& space, const FitnessModel& model,
                                 const GaConfig& config, RandomSource& rng,
                                 EvalCounters* counters = nullptr);

/// Roulette weights for (negative) log fitness: f_i - min + eps with
/// eps = (max - min) / P + 1e-12. All-equal fitness gives equal weights.
std::vector<double> roulette_weights(std::span<const Individual> population);

/// Index of the selected individual.
std::size_t roulette_select(std::span<const Individual> population, RandomSource& rng);

/// mask[i] == 0 gives child1 parent1's gene, 1 gives parent2's; child2 is
/// the mirror image.
std::pair<Genes, Genes> uniform_crossover(const Genes& parent1, const Genes& parent2,
                                          std::span<const std::uint8_t> mask);
std::pair<Genes, Genes> uniform_crossover(const Genes& parent1, const Genes& parent2,
                                          RandomSource& rng);

/// child1 = parent1[0, cut) + parent2[cut, n); child2 the mirror image.
std::pair<Genes, Genes> one_point_crossover_at(const Genes& parent1, const Genes& parent2,
                                               std::size_t cut);
/// Cut uniform in [1, n-1]; parents are cloned when n < 2.
std::pair<Genes, Genes> one_point_crossover(const Genes& parent1, const Genes& parent2,
                                            RandomSource& rng);

/// Each gene mutates with probability `rate` to a different candidate of its
/// word, drawn uniformly. Returns true if any gene changed.
bool mutate(Genes& genes, const SearchSpace& space, double rate, RandomSource& rng);

/// As above; recomputes the cached fitness iff a gene changed.
bool mutate(Individual& individual, const SearchSpace& space, double rate,
            RandomSource& rng, const FitnessModel& model, EvalCounters* counters = nullptr);

struct GenerationStats {
    double best_ever;
    double population_best;
    double mean;
};

struct GaResult {
    Individual best;
    /// The greedy seed individual of the initial population.
    Individual seed;
    /// Entry 0 is the initial population, then one entry per generation.
    std::vector<GenerationStats> history;
    EvalCounters counters;
};

/// Generational GA for one sentence. The breeding population is replaced
/// wholesale each generation; the best individual ever seen is reported.
GaResult run_ga(const RawSentence& sentence, const Lexicon& lexicon,
                const FitnessModel& model, const GaConfig& config);

struct TagOptions {
    /// Worker threads; output does not depend on it.
    std::size_t jobs = 1;
    /// Index of the first sentence, for sub-seed derivation.
    std::size_t index_offset = 0;
};

struct TaggingResult {
    std::vector<Genes> tags;
    std::vector<double> fitness;
    EvalCounters counters;
};

/// Tags sentences independently; sentence i uses the sub-seed
/// RandomSource::derive(config.seed, options.index_offset + i).
TaggingResult tag_text(std::span<const RawSentence> sentences, const Lexicon& lexicon,
                       const FitnessModel& model, const GaConfig& config,
                       const TagOptions& options = {});

} // namespace gatagger
