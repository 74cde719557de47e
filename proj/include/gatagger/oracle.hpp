#pragma once

#include <cstdint>

#include "gatagger/corpus.hpp"
#include "gatagger/fitness.hpp"
#include "gatagger/ga.hpp"
#include "gatagger/tables.hpp"

namespace gatagger {

inline constexpr std::uint64_t kDefaultExhaustiveCap = 1'000'000;

/// Global fitness maximum over every assignment of valid tags, found by
/// enumeration. Ties go to the lexicographically smallest tag-index
/// sequence. Throws Error(capacity) when the assignment space exceeds `cap`.
Individual exhaustive_tag(const RawSentence& sentence, const Lexicon& lexicon,
                          const FitnessModel& model,
                          std::uint64_t cap = kDefaultExhaustiveCap,
                          EvalCounters* counters = nullptr);

/// Context-free baseline: each word's most frequent tag, the corpus-wide most
/// frequent tag for unknown words.
Genes baseline_tag(const RawSentence& sentence, const Lexicon& lexicon);

} // namespace gatagger
