#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gatagger/corpus.hpp"

namespace gatagger {

/// Largest supported context on either side of the tagged position.
inline constexpr std::size_t kMaxContext = 4;

/// Hash key for a (possibly reduced) window: `left` tags, an optional centre
/// tag, then `right` tags.
struct WindowKey {
    static constexpr std::uint32_t kNoCentre = 0xffffffffu;

    std::array<std::uint32_t, 2 * kMaxContext + 1> tags{};
    std::uint8_t left = 0;
    std::uint8_t right = 0;

    static WindowKey make(std::span<const TagId> lc, std::uint32_t centre,
                          std::span<const TagId> rc);

    friend bool operator==(const WindowKey&, const WindowKey&) = default;
};

struct WindowKeyHash {
    std::size_t operator()(const WindowKey& key) const noexcept;
};

/// Occurrence counts of LC..T..RC windows over a tagged corpus, with NULL
/// padding at sentence boundaries.
///
/// Besides the full-width windows, every reduced window (keeping the i tags
/// nearest to T on the left and the j nearest on the right, for all
/// i <= l_lc, j <= l_rc) is counted, along with the matching context totals
/// sum_T' occ(lc', T', rc'). Backoff queries are therefore plain lookups.
class TrainingTable {
public:
    struct FullWindow {
        std::vector<TagId> lc;  // farthest first
        TagId tag;
        std::vector<TagId> rc;  // nearest first
        std::uint64_t count;
    };

    static TrainingTable build(const TaggedCorpus& corpus, std::size_t l_lc,
                               std::size_t l_rc);

    const Tagset& tagset() const noexcept { return tagset_; }
    std::size_t l_lc() const noexcept { return l_lc_; }
    std::size_t l_rc() const noexcept { return l_rc_; }
    std::uint64_t total_tokens() const noexcept { return total_tokens_; }
    std::uint64_t tag_total(TagId tag) const;

    /// occ(lc, t, rc). `lc` holds the kept left tags farthest first, `rc` the
    /// kept right tags nearest first; |lc| <= l_lc and |rc| <= l_rc.
    std::uint64_t count(std::span<const TagId> lc, TagId tag,
                        std::span<const TagId> rc) const;

    /// sum over all tags T' of occ(lc, T', rc).
    std::uint64_t context_total(std::span<const TagId> lc,
                                std::span<const TagId> rc) const;

    /// Full-width windows in unspecified order.
    std::vector<FullWindow> full_windows() const;
    std::size_t distinct_windows() const noexcept { return full_window_count_; }
    std::size_t stored_entries() const noexcept { return counts_.size(); }

    friend bool operator==(const TrainingTable& a, const TrainingTable& b) {
        return a.tagset_ == b.tagset_ && a.l_lc_ == b.l_lc_ && a.l_rc_ == b.l_rc_ &&
               a.total_tokens_ == b.total_tokens_ && a.counts_ == b.counts_;
    }

private:
    friend TrainingTable load_table(std::string_view text);

    TrainingTable(Tagset tagset, std::size_t l_lc, std::size_t l_rc);
    void add_full_window(std::span<const TagId> lc, TagId tag,
                         std::span<const TagId> rc, std::uint64_t count);
    void check_window(std::span<const TagId> lc, std::span<const TagId> rc) const;

    Tagset tagset_;
    std::size_t l_lc_;
    std::size_t l_rc_;
    std::uint64_t total_tokens_ = 0;
    std::size_t full_window_count_ = 0;
    std::unordered_map<WindowKey, std::uint64_t, WindowKeyHash> counts_;
    std::unordered_map<WindowKey, std::uint64_t, WindowKeyHash> context_totals_;
};

/// Sorted text serialization. The header records the format version, the
/// window sizes, the token total and the tagset order; only full-width windows
/// are written, reduced windows are recomputed on load.
std::string save_table(const TrainingTable& table);
TrainingTable load_table(std::string_view text);

/// Observed tags per word and global tag frequencies.
class Lexicon {
public:
    struct Entry {
        /// Sorted by descending count, ties by ascending tag index.
        std::vector<std::pair<TagId, std::uint64_t>> tags;

        TagId argmax() const { return tags.front().first; }
        friend bool operator==(const Entry&, const Entry&) = default;
    };

    static Lexicon build(const TaggedCorpus& corpus);

    const Tagset& tagset() const noexcept { return tagset_; }
    const Entry* find(const std::string& word) const;
    std::uint64_t count(const std::string& word, TagId tag) const;

    /// Observed tags for a known word, most frequent first; every assignable
    /// tag for an unknown word.
    std::vector<TagId> valid_tags(const std::string& word) const;

    std::uint64_t tag_frequency(TagId tag) const;
    /// Corpus-wide most frequent tag (lowest index on ties).
    TagId most_frequent_tag() const noexcept { return most_frequent_; }
    std::size_t size() const noexcept { return entries_.size(); }
    const std::unordered_map<std::string, Entry>& entries() const noexcept { return entries_; }

    friend bool operator==(const Lexicon& a, const Lexicon& b) {
        return a.tagset_ == b.tagset_ && a.entries_ == b.entries_;
    }

private:
    friend Lexicon load_lexicon(std::string_view text, const Tagset& tagset);

    explicit Lexicon(Tagset tagset) : tagset_(std::move(tagset)) {}
    void finalize();

    Tagset tagset_;
    std::unordered_map<std::string, Entry> entries_;
    std::vector<std::uint64_t> tag_frequency_;
    TagId most_frequent_{};
};

std::string save_lexicon(const Lexicon& lexicon);
Lexicon load_lexicon(std::string_view text, const Tagset& tagset);

} // namespace gatagger
