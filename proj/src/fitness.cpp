#include "gatagger/fitness.hpp"

#include <array>
#include <cmath>

#include "gatagger/error.hpp"

namespace gatagger {

std::vector<ContextShape> backoff_schedule(std::size_t l_lc, std::size_t l_rc,
                                           BackoffOrder order) {
    std::vector<ContextShape> out;
    ContextShape shape{l_lc, l_rc};
    out.push_back(shape);
    bool drop_right = order == BackoffOrder::right_first;
    while (shape.left + shape.right > 0) {
        if ((drop_right && shape.right > 0) || shape.left == 0)
            --shape.right;
        else
            --shape.left;
        drop_right = !drop_right;
        out.push_back(shape);
    }
    return out;
}

FitnessModel::FitnessModel(const TrainingTable& table, std::optional<double> floor_log_prob,
                           BackoffOrder order)
    : table_(&table),
      floor_log_prob_(floor_log_prob.value_or(
          -std::log(static_cast<double>(table.total_tokens() +
                                        table.tagset().size())))),
      order_(order),
      schedule_(backoff_schedule(table.l_lc(), table.l_rc(), order)) {
    if (!std::isfinite(floor_log_prob_) || floor_log_prob_ > 0.0)
        throw_invalid("floor log-probability must be finite and non-positive");
}

ContextProbability FitnessModel::context_probability(std::span<const TagId> lc, TagId tag,
                                                     std::span<const TagId> rc) const {
    if (lc.size() != table_->l_lc() || rc.size() != table_->l_rc())
        throw_invalid("context window does not match the table's context size");
    if (!tagset().is_assignable(tag)) throw_invalid("the scored tag must be an assignable tag");
    return resolve(lc, tag, rc);
}

ContextProbability FitnessModel::resolve(std::span<const TagId> lc, TagId tag,
                                         std::span<const TagId> rc) const {
    for (std::size_t level = 0; level < schedule_.size(); ++level) {
        const auto [left, right] = schedule_[level];
        const auto kept_lc = lc.last(left);
        const auto kept_rc = rc.first(right);
        const std::uint64_t numerator = table_->count(kept_lc, tag, kept_rc);
        if (numerator == 0) continue;
        // numerator > 0 implies a positive denominator
        const std::uint64_t denominator = table_->context_total(kept_lc, kept_rc);
        const double p = static_cast<double>(numerator) / static_cast<double>(denominator);
        return {p, std::log(p), level};
    }
    return {std::exp(floor_log_prob_), floor_log_prob_, schedule_.size()};
}

double FitnessModel::gene_fitness_at(std::span<const TagId> tags, std::size_t position,
                                     EvalCounters* counters) const {
    if (position >= tags.size()) throw_invalid("gene position out of range");
    const std::size_t l_lc = table_->l_lc();
    const std::size_t l_rc = table_->l_rc();
    const TagId null = tagset().null_tag();
    std::array<TagId, kMaxContext> lc{};
    std::array<TagId, kMaxContext> rc{};
    for (std::size_t k = 0; k < l_lc; ++k) {
        const std::size_t distance = l_lc - k;
        lc[k] = position >= distance ? tags[position - distance] : null;
    }
    for (std::size_t k = 0; k < l_rc; ++k) {
        const std::size_t pos = position + 1 + k;
        rc[k] = pos < tags.size() ? tags[pos] : null;
    }
    const TagId tag = tags[position];
    if (!tagset().is_assignable(tag)) throw_invalid("individual contains a non-assignable tag");
    const auto result = resolve(std::span(lc).first(l_lc), tag, std::span(rc).first(l_rc));
    if (counters) {
        ++counters->gene_evals;
        counters->backoff_steps += result.level;
    }
    return result.log_probability;
}

double FitnessModel::individual_fitness(std::span<const TagId> tags,
                                        EvalCounters* counters) const {
    double total = 0.0;
    for (std::size_t i = 0; i < tags.size(); ++i) total += gene_fitness_at(tags, i, counters);
    if (counters) ++counters->individual_evals;
    return total;
}

double FitnessModel::individual_fitness(const RawSentence& sentence,
                                        std::span<const TagId> tags,
                                        EvalCounters* counters) const {
    if (sentence.size() != tags.size())
        throw_invalid("tag sequence length " + std::to_string(tags.size()) +
                      " does not match sentence length " + std::to_string(sentence.size()));
    return individual_fitness(tags, counters);
}

} // namespace gatagger
