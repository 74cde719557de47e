#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gatagger/corpus.hpp"
#include "gatagger/random.hpp"

namespace testsupport {

struct SyntheticSpec {
    std::size_t tag_count = 6;
    std::size_t vocabulary = 120;
    /// Upper bound on distinct tags a word may carry.
    std::size_t max_tags_per_word = 4;
    std::size_t min_length = 3;
    std::size_t max_length = 8;
    /// Word frequencies fall off as 1 / rank^zipf.
    double zipf = 1.0;
    std::uint64_t seed = 1;
};

/// Tag-bigram sentence generator with an ambiguous vocabulary. The
/// transition matrix, the word inventory and each word's admissible tags are
/// fixed by `spec.seed`; sentences are drawn from the caller's stream.
class BigramSampler {
public:
    explicit BigramSampler(const SyntheticSpec& spec);

    const gatagger::Tagset& tagset() const { return tagset_; }
    /// Admissible tags of word `w` (tag indices, ascending).
    const std::vector<std::uint32_t>& word_tags(std::size_t w) const { return word_tags_[w]; }
    std::string word_name(std::size_t w) const { return "w" + std::to_string(w); }

    gatagger::TaggedSentence sentence(gatagger::RandomSource& rng) const;
    gatagger::TaggedCorpus corpus(std::size_t sentences, std::uint64_t seed) const;

private:
    std::size_t pick(const std::vector<double>& weights, gatagger::RandomSource& rng) const;

    SyntheticSpec spec_;
    gatagger::Tagset tagset_;
    std::vector<double> start_;
    std::vector<std::vector<double>> transition_;
    std::vector<std::vector<std::uint32_t>> word_tags_;
    /// Per tag: candidate words and their weights.
    std::vector<std::vector<std::size_t>> emitters_;
    std::vector<std::vector<double>> emit_weights_;
};

/// Tagset {T0 .. T(n-1), NULL}.
gatagger::Tagset numbered_tagset(std::size_t n);

} // namespace testsupport
