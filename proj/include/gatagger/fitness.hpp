#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "gatagger/corpus.hpp"
#include "gatagger/tables.hpp"

namespace gatagger {

/// Which outer context tag the backoff drops first.
enum class BackoffOrder {
    right_first,
    left_first,
};

/// One step of the context-reduction schedule: how many left / right tags are
/// still kept (nearest to T).
struct ContextShape {
    std::size_t left;
    std::size_t right;

    friend bool operator==(const ContextShape&, const ContextShape&) = default;
};

/// Reduction schedule from (l_lc, l_rc) down to (0, 0): alternately drop the
/// outer right and outer left tag, skipping a side once it is empty.
std::vector<ContextShape> backoff_schedule(std::size_t l_lc, std::size_t l_rc,
                                           BackoffOrder order = BackoffOrder::right_first);

/// Result of resolving P(T | LC, RC).
struct ContextProbability {
    double probability;
    double log_probability;
    /// Index into the backoff schedule that resolved the query; l_lc + l_rc
    /// is the bare-tag level, l_lc + l_rc + 1 means the floor was used.
    std::size_t level;
};

/// Work counters accumulated by fitness evaluation.
struct EvalCounters {
    std::uint64_t individual_evals = 0;
    std::uint64_t gene_evals = 0;
    /// Backoff steps taken beyond the full window, summed over genes.
    std::uint64_t backoff_steps = 0;

    EvalCounters& operator+=(const EvalCounters& other) {
        individual_evals += other.individual_evals;
        gene_evals += other.gene_evals;
        backoff_steps += other.backoff_steps;
        return *this;
    }
};

/// Context-conditional log-probability fitness over a training table.
///
/// A gene's fitness is ln P(T | LC, RC) = ln(occ(LC,T,RC) / sum_T' occ(LC,T',RC)).
/// Unseen windows back off along `backoff_schedule` until both the
/// numerator and the denominator are positive; at the bare tag the unigram
/// frequency is used, and a tag never seen in training scores `floor_log_prob`.
/// An individual's fitness is the sum of its genes' fitness, with contexts
/// taken from the individual's own neighbouring tags and NULL beyond the
/// sentence ends.
///
/// The model holds a reference to the table, which must outlive it.
class FitnessModel {
public:
    explicit FitnessModel(const TrainingTable& table,
                          std::optional<double> floor_log_prob = std::nullopt,
                          BackoffOrder order = BackoffOrder::right_first);

    const TrainingTable& table() const noexcept { return *table_; }
    const Tagset& tagset() const noexcept { return table_->tagset(); }
    double floor_log_prob() const noexcept { return floor_log_prob_; }
    BackoffOrder order() const noexcept { return order_; }
    std::span<const ContextShape> schedule() const noexcept { return schedule_; }
    std::size_t floor_level() const noexcept { return schedule_.size(); }

    /// `lc` is the full padded left context (farthest first, |lc| = l_lc),
    /// `rc` the full padded right context (nearest first, |rc| = l_rc).
    ContextProbability context_probability(std::span<const TagId> lc, TagId tag,
                                           std::span<const TagId> rc) const;

    double gene_fitness(std::span<const TagId> lc, TagId tag,
                        std::span<const TagId> rc) const {
        return context_probability(lc, tag, rc).log_probability;
    }

    /// Fitness of gene `position` of `tags`, reading the context from the
    /// neighbouring tags.
    double gene_fitness_at(std::span<const TagId> tags, std::size_t position,
                           EvalCounters* counters = nullptr) const;

    double individual_fitness(std::span<const TagId> tags,
                              EvalCounters* counters = nullptr) const;

    /// Same as above, after checking |tags| == |sentence|.
    double individual_fitness(const RawSentence& sentence, std::span<const TagId> tags,
                              EvalCounters* counters = nullptr) const;

private:
    ContextProbability resolve(std::span<const TagId> lc, TagId tag,
                               std::span<const TagId> rc) const;

    const TrainingTable* table_;
    double floor_log_prob_;
    BackoffOrder order_;
    std::vector<ContextShape> schedule_;
};

} // namespace gatagger
