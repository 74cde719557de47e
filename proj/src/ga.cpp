#include "gatagger/ga.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "gatagger/error.hpp"
#include "parallel.hpp"

namespace gatagger {

namespace {

std::size_t weighted_index(std::span<const double> weights, RandomSource& rng) {
    const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
    const double target = rng.uniform_real() * total;
    double running = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        running += weights[i];
        if (target < running) return i;
    }
    return weights.size() - 1;
}

void check_lengths(const Genes& a, const Genes& b) {
    if (a.size() != b.size())
        throw_invalid("crossover parents have different lengths (" + std::to_string(a.size()) +
                      " vs " + std::to_string(b.size()) + ")");
}

} // namespace

std::string_view to_string(CrossoverKind kind) {
    return kind == CrossoverKind::uniform ? "uniform" : "one_point";
}

CrossoverKind parse_crossover_kind(std::string_view text) {
    if (text == "uniform") return CrossoverKind::uniform;
    if (text == "one_point" || text == "one-point" || text == "1point")
        return CrossoverKind::one_point;
    throw_invalid("unknown crossover kind '" + std::string(text) + "'");
}

void GaConfig::validate() const {
    if (population_size < 2) throw_invalid("population size must be at least 2");
    if (generations < 1) throw_invalid("generations must be at least 1");
    if (!(crossover_rate >= 0.0 && crossover_rate <= 1.0))
        throw_invalid("crossover rate must lie in [0, 1]");
    if (!(mutation_rate >= 0.0 && mutation_rate <= 1.0))
        throw_invalid("mutation rate must lie in [0, 1]");
}

// ---------------------------------------------------------------------------
// SearchSpace

SearchSpace::SearchSpace(const RawSentence& sentence, const Lexicon& lexicon) {
    if (sentence.empty()) throw_invalid("cannot tag an empty sentence");
    for (const auto& word : sentence) {
        validate_word(word);
        std::vector<TagId> tags;
        std::vector<double> weights;
        if (const auto* entry = lexicon.find(word)) {
            for (const auto& [tag, count] : entry->tags) {
                tags.push_back(tag);
                weights.push_back(static_cast<double>(count));
            }
            preferred_.push_back(entry->argmax());
            known_.push_back(true);
        } else {
            const auto all = lexicon.tagset().assignable();
            tags.assign(all.begin(), all.end());
            weights.assign(tags.size(), 1.0);
            preferred_.push_back(lexicon.most_frequent_tag());
            known_.push_back(false);
        }
        candidates_.push_back(std::move(tags));
        weights_.push_back(std::move(weights));
    }
}

bool SearchSpace::contains(std::size_t position, TagId tag) const {
    const auto& c = candidates_.at(position);
    return std::find(c.begin(), c.end(), tag) != c.end();
}

std::uint64_t SearchSpace::assignment_count(std::uint64_t cap) const {
    std::uint64_t product = 1;
    for (const auto& c : candidates_) {
        if (product > cap / c.size()) return cap + 1;
        product *= c.size();
        if (product > cap) return cap + 1;
    }
    return product;
}

// ---------------------------------------------------------------------------
// Initialization

Individual evaluate(Genes genes, const FitnessModel& model, EvalCounters* counters) {
    const double fitness = model.individual_fitness(genes, counters);
    return Individual{std::move(genes), fitness};
}

Genes greedy_seed(const SearchSpace& space, const FitnessModel& model, EvalCounters* counters) {
    Genes genes(space.size());
    for (std::size_t i = 0; i < space.size(); ++i) genes[i] = space.preferred(i);
    for (std::size_t i = 0; i < space.size(); ++i) {
        const auto candidates = space.candidates(i);
        if (candidates.size() == 1) {
            genes[i] = candidates.front();
            continue;
        }
        TagId best = candidates.front();
        double best_score = -std::numeric_limits<double>::infinity();
        for (TagId tag : candidates) {
            genes[i] = tag;
            const double score = model.gene_fitness_at(genes, i, counters);
            if (score > best_score) {
                best_score = score;
                best = tag;
            }
        }
        genes[i] = best;
    }
    return genes;
}

Population initialize_population(const SearchSpace& space, const FitnessModel& model,
                                 const GaConfig& config, RandomSource& rng,
                                 EvalCounters* counters) {
    config.validate();
    Population population;
    population.reserve(config.population_size);
    const Genes seed = greedy_seed(space, model, counters);
    population.push_back(evaluate(seed, model, counters));
    while (population.size() < config.population_size) {
        Genes genes = seed;
        for (std::size_t i = 0; i < space.size(); ++i)
            if (space.candidates(i).size() > 1)
                genes[i] = space.candidates(i)[weighted_index(space.weights(i), rng)];
        population.push_back(evaluate(std::move(genes), model, counters));
    }
    return population;
}

// ---------------------------------------------------------------------------
// Operators

std::vector<double> roulette_weights(std::span<const Individual> population) {
    std::vector<double> weights(population.size(), 1.0);
    if (population.empty()) return weights;
    const auto [lo, hi] = std::minmax_element(
        population.begin(), population.end(),
        [](const Individual& a, const Individual& b) { return a.fitness < b.fitness; });
    const double min = lo->fitness;
    const double max = hi->fitness;
    if (max == min) return weights;
    const double eps = (max - min) / static_cast<double>(population.size()) + 1e-12;
    for (std::size_t i = 0; i < population.size(); ++i)
        weights[i] = population[i].fitness - min + eps;
    return weights;
}

std::size_t roulette_select(std::span<const Individual> population, RandomSource& rng) {
    if (population.empty()) throw_invalid("cannot select from an empty population");
    if (population.size() == 1) return 0;
    const auto weights = roulette_weights(population);
    return weighted_index(weights, rng);
}

std::pair<Genes, Genes> uniform_crossover(const Genes& parent1, const Genes& parent2,
                                          std::span<const std::uint8_t> mask) {
    check_lengths(parent1, parent2);
    if (mask.size() != parent1.size()) throw_invalid("crossover mask length mismatch");
    Genes child1(parent1.size());
    Genes child2(parent1.size());
    for (std::size_t i = 0; i < parent1.size(); ++i) {
        child1[i] = mask[i] == 0 ? parent1[i] : parent2[i];
        child2[i] = mask[i] == 0 ? parent2[i] : parent1[i];
    }
    return {std::move(child1), std::move(child2)};
}

std::pair<Genes, Genes> uniform_crossover(const Genes& parent1, const Genes& parent2,
                                          RandomSource& rng) {
    check_lengths(parent1, parent2);
    std::vector<std::uint8_t> mask(parent1.size());
    for (auto& bit : mask) bit = rng.bernoulli(0.5) ? 1 : 0;
    return uniform_crossover(parent1, parent2, mask);
}

std::pair<Genes, Genes> one_point_crossover_at(const Genes& parent1, const Genes& parent2,
                                               std::size_t cut) {
    check_lengths(parent1, parent2);
    if (cut > parent1.size()) throw_invalid("crossover cut beyond the chromosome");
    Genes child1(parent1.begin(), parent1.begin() + static_cast<std::ptrdiff_t>(cut));
    Genes child2(parent2.begin(), parent2.begin() + static_cast<std::ptrdiff_t>(cut));
    child1.insert(child1.end(), parent2.begin() + static_cast<std::ptrdiff_t>(cut), parent2.end());
    child2.insert(child2.end(), parent1.begin() + static_cast<std::ptrdiff_t>(cut), parent1.end());
    return {std::move(child1), std::move(child2)};
}

std::pair<Genes, Genes> one_point_crossover(const Genes& parent1, const Genes& parent2,
                                            RandomSource& rng) {
    check_lengths(parent1, parent2);
    if (parent1.size() < 2) return {parent1, parent2};
    const std::size_t cut = 1 + rng.uniform_index(parent1.size() - 1);
    return one_point_crossover_at(parent1, parent2, cut);
}

bool mutate(Genes& genes, const SearchSpace& space, double rate, RandomSource& rng) {
    if (genes.size() != space.size()) throw_invalid("individual does not match the sentence");
    if (rate <= 0.0) return false;
    bool changed = false;
    for (std::size_t i = 0; i < genes.size(); ++i) {
        if (!rng.bernoulli(rate)) continue;
        const auto candidates = space.candidates(i);
        if (candidates.size() < 2) continue;
        const auto current = std::find(candidates.begin(), candidates.end(), genes[i]);
        const auto skip = static_cast<std::size_t>(current - candidates.begin());
        std::size_t pick = rng.uniform_index(candidates.size() - 1);
        if (pick >= skip) ++pick;
        genes[i] = candidates[pick];
        changed = true;
    }
    return changed;
}

bool mutate(Individual& individual, const SearchSpace& space, double rate, RandomSource& rng,
            const FitnessModel& model, EvalCounters* counters) {
    if (!mutate(individual.genes, space, rate, rng)) return false;
    individual.fitness = model.individual_fitness(individual.genes, counters);
    return true;
}

// ---------------------------------------------------------------------------
// Generational loop

namespace {

struct Child {
    Genes genes;
    double fitness;
    bool stale;
};

/// Fitness of `genes` if it equals one of the parents, so an unchanged
/// child costs no evaluation.
Child make_child(Genes genes, const Individual& a, const Individual& b) {
    if (genes == a.genes) return {std::move(genes), a.fitness, false};
    if (genes == b.genes) return {std::move(genes), b.fitness, false};
    return {std::move(genes), 0.0, true};
}

GenerationStats summarize(const Population& population, const Individual& best) {
    double sum = 0.0;
    double pop_best = population.front().fitness;
    for (const auto& ind : population) {
        sum += ind.fitness;
        pop_best = std::max(pop_best, ind.fitness);
    }
    return {best.fitness, pop_best, sum / static_cast<double>(population.size())};
}

} // namespace

GaResult run_ga(const RawSentence& sentence, const Lexicon& lexicon, const FitnessModel& model,
                const GaConfig& config) {
    config.validate();
    const SearchSpace space(sentence, lexicon);
    RandomSource rng(config.seed);
    GaResult result;
    EvalCounters& counters = result.counters;

    Population population = initialize_population(space, model, config, rng, &counters);
    result.seed = population.front();
    result.best = population.front();
    for (const auto& ind : population)
        if (ind.fitness > result.best.fitness) result.best = ind;
    result.history.push_back(summarize(population, result.best));

    const std::size_t p = config.population_size;
    Population next;
    next.reserve(p);
    for (std::size_t generation = 1; generation <= config.generations; ++generation) {
        next.clear();
        while (next.size() < p) {
            const Individual& a = population[roulette_select(population, rng)];
            const Individual& b = population[roulette_select(population, rng)];
            Child c1{a.genes, a.fitness, false};
            Child c2{b.genes, b.fitness, false};
            if (rng.bernoulli(config.crossover_rate)) {
                auto [g1, g2] = config.crossover_kind == CrossoverKind::uniform
                                    ? uniform_crossover(a.genes, b.genes, rng)
                                    : one_point_crossover(a.genes, b.genes, rng);
                c1 = make_child(std::move(g1), a, b);
                c2 = make_child(std::move(g2), a, b);
            }
            const bool keep_second = next.size() + 2 <= p;
            c1.stale |= mutate(c1.genes, space, config.mutation_rate, rng);
            if (keep_second) c2.stale |= mutate(c2.genes, space, config.mutation_rate, rng);
            auto insert = [&](Child& c) {
                if (c.stale) c.fitness = model.individual_fitness(c.genes, &counters);
                next.push_back(Individual{std::move(c.genes), c.fitness});
            };
            insert(c1);
            if (keep_second) insert(c2);
        }
        population.swap(next);
        for (const auto& ind : population)
            if (ind.fitness > result.best.fitness) result.best = ind;
        result.history.push_back(summarize(population, result.best));
    }
    return result;
}

TaggingResult tag_text(std::span<const RawSentence> sentences, const Lexicon& lexicon,
                       const FitnessModel& model, const GaConfig& config,
                       const TagOptions& options) {
    config.validate();
    TaggingResult out;
    out.tags.resize(sentences.size());
    out.fitness.resize(sentences.size());
    std::vector<EvalCounters> counters(sentences.size());
    detail::parallel_for(sentences.size(), options.jobs, [&](std::size_t i) {
        GaConfig local = config;
        local.seed = RandomSource::derive(config.seed, options.index_offset + i);
        GaResult r = run_ga(sentences[i], lexicon, model, local);
        out.tags[i] = std::move(r.best.genes);
        out.fitness[i] = r.best.fitness;
        counters[i] = r.counters;
    });
    for (const auto& c : counters) out.counters += c;
    return out;
}

} // namespace gatagger
