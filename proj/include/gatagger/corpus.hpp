#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace gatagger {

/// Index of a tag inside a Tagset.
enum class TagId : std::uint32_t {};

constexpr std::uint32_t to_index(TagId id) noexcept {
    return static_cast<std::uint32_t>(id);
}

constexpr TagId tag_id(std::size_t index) noexcept {
    return static_cast<TagId>(static_cast<std::uint32_t>(index));
}

inline constexpr std::string_view kNullTagName = "NULL";

/// Ordered inventory of tag names. Always contains the reserved boundary tag
/// NULL, which pads context windows and is never assigned to a word.
class Tagset {
public:
    /// Builds a tagset from names in order; appends NULL if absent.
    /// Throws Error(invalid_argument) on empty, duplicate or malformed names.
    static Tagset from_names(std::vector<std::string> names);

    std::size_t size() const noexcept { return names_.size(); }
    std::size_t assignable_count() const noexcept { return names_.size() - 1; }

    TagId null_tag() const noexcept { return null_; }
    bool is_assignable(TagId id) const noexcept {
        return to_index(id) < names_.size() && id != null_;
    }

    const std::string& name(TagId id) const;
    std::optional<TagId> find(std::string_view name) const;

    /// All tags except NULL, in ascending index order.
    std::span<const TagId> assignable() const noexcept { return assignable_; }
    const std::vector<std::string>& names() const noexcept { return names_; }

    friend bool operator==(const Tagset& a, const Tagset& b) {
        return a.names_ == b.names_;
    }

private:
    Tagset() = default;

    std::vector<std::string> names_;
    std::unordered_map<std::string, TagId> index_;
    std::vector<TagId> assignable_;
    TagId null_{};
};

/// Parses a tagset file: one tag per line, `#` comment lines, blank lines
/// ignored.
Tagset load_tagset(std::string_view source);

/// Throws Error(invalid_argument) unless `word` is a legal corpus token word
/// (non-empty, no whitespace).
void validate_word(std::string_view word);

struct Token {
    std::string word;
    TagId tag;

    friend bool operator==(const Token&, const Token&) = default;
};

struct TaggedSentence {
    std::vector<Token> tokens;

    std::size_t size() const noexcept { return tokens.size(); }
    std::vector<std::string> words() const;
    std::vector<TagId> tags() const;

    friend bool operator==(const TaggedSentence&, const TaggedSentence&) = default;
};

/// Untagged tagging input.
using RawSentence = std::vector<std::string>;

struct TaggedCorpus {
    Tagset tagset;
    std::vector<TaggedSentence> sentences;

    std::size_t token_count() const noexcept;

    friend bool operator==(const TaggedCorpus&, const TaggedCorpus&) = default;
};

/// Checks every sentence against the corpus invariants (non-empty sentences,
/// legal words, assignable tags).
void validate(const TaggedCorpus& corpus);

TaggedCorpus parse_tagged_corpus(std::string_view text, const Tagset& tagset);
std::string write_tagged_corpus(const TaggedCorpus& corpus);

/// Splits untagged input into sentences, one per non-blank line, words on
/// runs of spaces or tabs.
std::vector<RawSentence> parse_raw_sentences(std::string_view text);

/// Random sentence-level partition into (train, test). Both parts keep the
/// original sentence order.
std::pair<TaggedCorpus, TaggedCorpus> split_corpus(const TaggedCorpus& corpus,
                                                   double train_fraction,
                                                   std::uint64_t seed);

/// First round_half_up(fraction * N) sentences.
TaggedCorpus take_prefix(const TaggedCorpus& corpus, double fraction);

std::size_t round_half_up(double value);

} // namespace gatagger
