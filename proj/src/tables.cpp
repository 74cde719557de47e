#include "gatagger/tables.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "gatagger/error.hpp"
#include "text.hpp"

namespace gatagger {

namespace {

constexpr int kTableFormatVersion = 1;
constexpr int kLexiconFormatVersion = 1;
constexpr std::string_view kTableMagic = "gatagger-table";
constexpr std::string_view kLexiconMagic = "gatagger-lexicon";

/// Parses `key=value` with an unsigned integer value.
std::uint64_t header_field(std::string_view field, std::string_view key,
                           std::size_t line_no) {
    const std::string prefix = std::string(key) + "=";
    if (field.substr(0, prefix.size()) != prefix)
        throw ParseError(line_no, 0, "expected header field '" + std::string(key) + "'");
    const auto value = text::parse_u64(field.substr(prefix.size()));
    if (!value)
        throw ParseError(line_no, 0, "bad value for header field '" + std::string(key) + "'");
    return *value;
}

TagId resolve_tag(const Tagset& tagset, std::string_view name, std::size_t line_no) {
    const auto id = tagset.find(name);
    if (!id) throw ParseError(line_no, 0, "unknown tag \"" + std::string(name) + "\"");
    return *id;
}

} // namespace

WindowKey WindowKey::make(std::span<const TagId> lc, std::uint32_t centre,
                          std::span<const TagId> rc) {
    WindowKey key;
    key.left = static_cast<std::uint8_t>(lc.size());
    key.right = static_cast<std::uint8_t>(rc.size());
    std::size_t k = 0;
    for (TagId t : lc) key.tags[k++] = to_index(t);
    key.tags[k++] = centre;
    for (TagId t : rc) key.tags[k++] = to_index(t);
    return key;
}

std::size_t WindowKeyHash::operator()(const WindowKey& key) const noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL ^ (std::uint64_t{key.left} << 8 | key.right);
    const std::size_t n = std::size_t{key.left} + key.right + 1;
    for (std::size_t i = 0; i < n; ++i) {
        h ^= key.tags[i];
        h *= 0x100000001b3ULL;
        h ^= h >> 29;
    }
    return static_cast<std::size_t>(h);
}

// ---------------------------------------------------------------------------
// TrainingTable

TrainingTable::TrainingTable(Tagset tagset, std::size_t l_lc, std::size_t l_rc)
    : tagset_(std::move(tagset)), l_lc_(l_lc), l_rc_(l_rc) {
    if (l_lc > kMaxContext || l_rc > kMaxContext)
        throw_invalid("context size exceeds the supported maximum of " +
                      std::to_string(kMaxContext) + " per side");
    if (l_lc + l_rc < 1) throw_invalid("context window must contain at least one tag");
}

TrainingTable TrainingTable::build(const TaggedCorpus& corpus, std::size_t l_lc,
                                   std::size_t l_rc) {
    if (corpus.sentences.empty()) throw_invalid("cannot build a training table from an empty corpus");
    validate(corpus);
    TrainingTable table(corpus.tagset, l_lc, l_rc);
    const TagId null = corpus.tagset.null_tag();

    std::vector<TagId> lc(l_lc);
    std::vector<TagId> rc(l_rc);
    for (const auto& sentence : corpus.sentences) {
        const auto tags = sentence.tags();
        const auto n = static_cast<std::ptrdiff_t>(tags.size());
        for (std::ptrdiff_t i = 0; i < n; ++i) {
            for (std::size_t k = 0; k < l_lc; ++k) {
                // lc[k] sits at distance l_lc - k from position i.
                const std::ptrdiff_t pos = i - static_cast<std::ptrdiff_t>(l_lc - k);
                lc[k] = pos >= 0 ? tags[static_cast<std::size_t>(pos)] : null;
            }
            for (std::size_t k = 0; k < l_rc; ++k) {
                const std::ptrdiff_t pos = i + 1 + static_cast<std::ptrdiff_t>(k);
                rc[k] = pos < n ? tags[static_cast<std::size_t>(pos)] : null;
            }
            table.add_full_window(lc, tags[static_cast<std::size_t>(i)], rc, 1);
        }
    }
    return table;
}

void TrainingTable::add_full_window(std::span<const TagId> lc, TagId tag,
                                    std::span<const TagId> rc, std::uint64_t count) {
    const WindowKey full = WindowKey::make(lc, to_index(tag), rc);
    if (counts_.find(full) == counts_.end()) ++full_window_count_;
    for (std::size_t i = 0; i <= lc.size(); ++i) {
        const auto kept_lc = lc.last(i);
        for (std::size_t j = 0; j <= rc.size(); ++j) {
            const auto kept_rc = rc.first(j);
            counts_[WindowKey::make(kept_lc, to_index(tag), kept_rc)] += count;
            context_totals_[WindowKey::make(kept_lc, WindowKey::kNoCentre, kept_rc)] += count;
        }
    }
    total_tokens_ += count;
}

void TrainingTable::check_window(std::span<const TagId> lc, std::span<const TagId> rc) const {
    if (lc.size() > l_lc_ || rc.size() > l_rc_)
        throw_invalid("window wider than the table's context size");
}

std::uint64_t TrainingTable::tag_total(TagId tag) const {
    return count({}, tag, {});
}

std::uint64_t TrainingTable::count(std::span<const TagId> lc, TagId tag,
                                   std::span<const TagId> rc) const {
    check_window(lc, rc);
    const auto it = counts_.find(WindowKey::make(lc, to_index(tag), rc));
    return it == counts_.end() ? 0 : it->second;
}

std::uint64_t TrainingTable::context_total(std::span<const TagId> lc,
                                           std::span<const TagId> rc) const {
    check_window(lc, rc);
    const auto it = context_totals_.find(WindowKey::make(lc, WindowKey::kNoCentre, rc));
    return it == context_totals_.end() ? 0 : it->second;
}

std::vector<TrainingTable::FullWindow> TrainingTable::full_windows() const {
    std::vector<FullWindow> out;
    out.reserve(full_window_count_);
    for (const auto& [key, count] : counts_) {
        if (key.left != l_lc_ || key.right != l_rc_) continue;
        FullWindow w;
        std::size_t k = 0;
        for (std::size_t i = 0; i < l_lc_; ++i) w.lc.push_back(tag_id(key.tags[k++]));
        w.tag = tag_id(key.tags[k++]);
        for (std::size_t i = 0; i < l_rc_; ++i) w.rc.push_back(tag_id(key.tags[k++]));
        w.count = count;
        out.push_back(std::move(w));
    }
    return out;
}

std::string save_table(const TrainingTable& table) {
    const Tagset& tagset = table.tagset();
    struct Row {
        std::vector<std::string_view> context;
        std::string_view tag;
        std::string line;
    };
    std::vector<Row> rows;
    for (const auto& w : table.full_windows()) {
        Row row;
        std::string line;
        for (TagId t : w.lc) {
            row.context.push_back(tagset.name(t));
            line += tagset.name(t);
            line += ' ';
        }
        row.tag = tagset.name(w.tag);
        line += row.tag;
        for (TagId t : w.rc) {
            row.context.push_back(tagset.name(t));
            line += ' ';
            line += tagset.name(t);
        }
        line += ' ';
        line += std::to_string(w.count);
        row.line = std::move(line);
        rows.push_back(std::move(row));
    }
    std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
        return std::tie(a.context, a.tag) < std::tie(b.context, b.tag);
    });

    std::string out;
    out += kTableMagic;
    out += " version=" + std::to_string(kTableFormatVersion);
    out += " l_lc=" + std::to_string(table.l_lc());
    out += " l_rc=" + std::to_string(table.l_rc());
    out += " total_tokens=" + std::to_string(table.total_tokens());
    out += "\ntags";
    for (const auto& name : tagset.names()) {
        out += ' ';
        out += name;
    }
    out += '\n';
    for (const auto& row : rows) {
        out += row.line;
        out += '\n';
    }
    return out;
}

TrainingTable load_table(std::string_view source) {
    std::optional<TrainingTable> table;
    std::size_t l_lc = 0;
    std::size_t l_rc = 0;
    std::uint64_t declared_total = 0;
    bool have_header = false;
    std::size_t last_line = 0;

    text::for_each_line(source, [&](std::size_t line_no, std::string_view line) {
        last_line = line_no;
        if (text::skippable(line)) return;
        const auto fields = text::split(line, ' ');
        if (!have_header) {
            if (fields.size() != 5 || fields[0] != kTableMagic)
                throw ParseError(line_no, 0, "missing training table header");
            const auto version = header_field(fields[1], "version", line_no);
            if (version != kTableFormatVersion)
                throw ParseError(line_no, 0, "unsupported table format version " +
                                                 std::to_string(version));
            l_lc = header_field(fields[2], "l_lc", line_no);
            l_rc = header_field(fields[3], "l_rc", line_no);
            declared_total = header_field(fields[4], "total_tokens", line_no);
            have_header = true;
            return;
        }
        if (!table) {
            if (fields.empty() || fields[0] != "tags")
                throw ParseError(line_no, 0, "missing 'tags' line");
            std::vector<std::string> names(fields.begin() + 1, fields.end());
            try {
                Tagset tagset = Tagset::from_names(std::move(names));
                table.emplace(TrainingTable(std::move(tagset), l_lc, l_rc));
            } catch (const Error& e) {
                throw ParseError(line_no, 0, e.what());
            }
            return;
        }
        if (fields.size() != l_lc + l_rc + 2)
            throw ParseError(line_no, 0, "expected " + std::to_string(l_lc + l_rc + 2) +
                                             " fields, found " + std::to_string(fields.size()));
        const Tagset& tagset = table->tagset();
        const TagId null = tagset.null_tag();
        std::vector<TagId> lc;
        std::vector<TagId> rc;
        for (std::size_t k = 0; k < l_lc; ++k) lc.push_back(resolve_tag(tagset, fields[k], line_no));
        const TagId tag = resolve_tag(tagset, fields[l_lc], line_no);
        for (std::size_t k = 0; k < l_rc; ++k)
            rc.push_back(resolve_tag(tagset, fields[l_lc + 1 + k], line_no));
        if (tag == null) throw ParseError(line_no, 0, "centre tag cannot be NULL");
        // NULL may only pad outward from the sentence boundary.
        for (std::size_t k = 1; k < lc.size(); ++k)
            if (lc[k - 1] != null && lc[k] == null)
                throw ParseError(line_no, 0, "NULL inside the left context");
        for (std::size_t k = 1; k < rc.size(); ++k)
            if (rc[k - 1] == null && rc[k] != null)
                throw ParseError(line_no, 0, "NULL inside the right context");
        const auto count = text::parse_u64(fields.back());
        if (!count || *count == 0)
            throw ParseError(line_no, 0, "bad count \"" + std::string(fields.back()) + "\"");
        if (table->counts_.count(WindowKey::make(lc, to_index(tag), rc)))
            throw ParseError(line_no, 0, "duplicate window");
        table->add_full_window(lc, tag, rc, *count);
    });

    if (!have_header) throw ParseError(1, 0, "missing training table header");
    if (!table) throw ParseError(last_line, 0, "missing 'tags' line");
    if (table->total_tokens() != declared_total)
        throw ParseError(last_line, 0, "window counts sum to " +
                                           std::to_string(table->total_tokens()) +
                                           " but the header declares " +
                                           std::to_string(declared_total));
    return std::move(*table);
}

// ---------------------------------------------------------------------------
// Lexicon

Lexicon Lexicon::build(const TaggedCorpus& corpus) {
    if (corpus.sentences.empty()) throw_invalid("cannot build a lexicon from an empty corpus");
    validate(corpus);
    Lexicon lex(corpus.tagset);
    std::unordered_map<std::string, std::map<std::uint32_t, std::uint64_t>> raw;
    for (const auto& sentence : corpus.sentences)
        for (const auto& token : sentence.tokens) ++raw[token.word][to_index(token.tag)];
    for (auto& [word, counts] : raw) {
        Entry entry;
        for (const auto& [tag, count] : counts) entry.tags.emplace_back(tag_id(tag), count);
        lex.entries_.emplace(word, std::move(entry));
    }
    lex.finalize();
    return lex;
}

void Lexicon::finalize() {
    tag_frequency_.assign(tagset_.size(), 0);
    for (auto& [word, entry] : entries_) {
        std::sort(entry.tags.begin(), entry.tags.end(), [](const auto& a, const auto& b) {
            if (a.second != b.second) return a.second > b.second;
            return to_index(a.first) < to_index(b.first);
        });
        for (const auto& [tag, count] : entry.tags) tag_frequency_[to_index(tag)] += count;
    }
    most_frequent_ = tagset_.assignable().front();
    for (TagId tag : tagset_.assignable())
        if (tag_frequency_[to_index(tag)] > tag_frequency_[to_index(most_frequent_)])
            most_frequent_ = tag;
}

const Lexicon::Entry* Lexicon::find(const std::string& word) const {
    const auto it = entries_.find(word);
    return it == entries_.end() ? nullptr : &it->second;
}

std::uint64_t Lexicon::count(const std::string& word, TagId tag) const {
    const Entry* entry = find(word);
    if (!entry) return 0;
    for (const auto& [t, c] : entry->tags)
        if (t == tag) return c;
    return 0;
}

std::vector<TagId> Lexicon::valid_tags(const std::string& word) const {
    const Entry* entry = find(word);
    if (!entry) return {tagset_.assignable().begin(), tagset_.assignable().end()};
    std::vector<TagId> out;
    out.reserve(entry->tags.size());
    for (const auto& [tag, count] : entry->tags) out.push_back(tag);
    return out;
}

std::uint64_t Lexicon::tag_frequency(TagId tag) const {
    return to_index(tag) < tag_frequency_.size() ? tag_frequency_[to_index(tag)] : 0;
}

std::string save_lexicon(const Lexicon& lexicon) {
    const Tagset& tagset = lexicon.tagset();
    std::vector<std::tuple<std::string_view, std::string_view, std::uint64_t>> rows;
    for (const auto& [word, entry] : lexicon.entries())
        for (const auto& [tag, count] : entry.tags) rows.emplace_back(word, tagset.name(tag), count);
    std::sort(rows.begin(), rows.end());

    std::string out;
    out += kLexiconMagic;
    out += " version=" + std::to_string(kLexiconFormatVersion) + "\n";
    for (const auto& [word, tag, count] : rows) {
        out += word;
        out += ' ';
        out += tag;
        out += ' ';
        out += std::to_string(count);
        out += '\n';
    }
    return out;
}

Lexicon load_lexicon(std::string_view source, const Tagset& tagset) {
    Lexicon lex(tagset);
    bool have_header = false;
    text::for_each_line(source, [&](std::size_t line_no, std::string_view line) {
        if (text::skippable(line)) return;
        const auto fields = text::split(line, ' ');
        if (!have_header) {
            if (fields.size() != 2 || fields[0] != kLexiconMagic)
                throw ParseError(line_no, 0, "missing lexicon header");
            const auto version = header_field(fields[1], "version", line_no);
            if (version != kLexiconFormatVersion)
                throw ParseError(line_no, 0, "unsupported lexicon format version " +
                                                 std::to_string(version));
            have_header = true;
            return;
        }
        if (fields.size() != 3) throw ParseError(line_no, 0, "expected 'word TAG count'");
        if (fields[0].empty()) throw ParseError(line_no, 1, "empty word");
        const TagId tag = resolve_tag(tagset, fields[1], line_no);
        if (tag == tagset.null_tag()) throw ParseError(line_no, 0, "NULL cannot be a word tag");
        const auto count = text::parse_u64(fields[2]);
        if (!count || *count == 0)
            throw ParseError(line_no, 0, "bad count \"" + std::string(fields[2]) + "\"");
        auto& entry = lex.entries_[std::string(fields[0])];
        for (const auto& [t, c] : entry.tags)
            if (t == tag) throw ParseError(line_no, 0, "duplicate lexicon entry");
        entry.tags.emplace_back(tag, *count);
    });
    if (!have_header) throw ParseError(1, 0, "missing lexicon header");
    lex.finalize();
    return lex;
}

} // namespace gatagger
