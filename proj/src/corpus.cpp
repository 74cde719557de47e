#include "gatagger/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gatagger/error.hpp"
#include "gatagger/random.hpp"
#include "text.hpp"

namespace gatagger {

namespace {

using text::for_each_line;

bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
}

bool has_space(std::string_view s) {
    return std::any_of(s.begin(), s.end(), is_space);
}

void validate_tag_name(std::string_view name) {
    if (name.empty()) throw_invalid("empty tag name");
    if (has_space(name))
        throw_invalid("tag name '" + std::string(name) + "' contains whitespace");
    if (name.find('/') != std::string_view::npos)
        throw_invalid("tag name '" + std::string(name) + "' contains '/'");
}

} // namespace

Tagset Tagset::from_names(std::vector<std::string> names) {
    Tagset ts;
    for (auto& name : names) {
        validate_tag_name(name);
        const TagId id = tag_id(ts.names_.size());
        if (!ts.index_.emplace(name, id).second)
            throw_invalid("duplicate tag name '" + name + "'");
        ts.names_.push_back(std::move(name));
    }
    if (auto it = ts.index_.find(std::string(kNullTagName)); it != ts.index_.end()) {
        ts.null_ = it->second;
    } else {
        ts.null_ = tag_id(ts.names_.size());
        ts.index_.emplace(std::string(kNullTagName), ts.null_);
        ts.names_.emplace_back(kNullTagName);
    }
    if (ts.names_.size() < 2) throw_invalid("tagset has no assignable tags");
    for (std::size_t i = 0; i < ts.names_.size(); ++i)
        if (tag_id(i) != ts.null_) ts.assignable_.push_back(tag_id(i));
    return ts;
}

const std::string& Tagset::name(TagId id) const {
    if (to_index(id) >= names_.size())
        throw_invalid("tag index " + std::to_string(to_index(id)) + " out of range");
    return names_[to_index(id)];
}

std::optional<TagId> Tagset::find(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

Tagset load_tagset(std::string_view source) {
    std::vector<std::string> names;
    for_each_line(source, [&](std::size_t line_no, std::string_view line) {
        if (line.empty() || line.front() == '#') return;
        try {
            validate_tag_name(line);
        } catch (const Error& e) {
            throw ParseError(line_no, 0, e.what());
        }
        if (std::find(names.begin(), names.end(), line) != names.end())
            throw ParseError(line_no, 0, "duplicate tag name '" + std::string(line) + "'");
        names.emplace_back(line);
    });
    if (names.empty()) throw ParseError(1, 0, "tagset file contains no tags");
    if (names.size() == 1 && names.front() == kNullTagName)
        throw ParseError(1, 0, "tagset file has no assignable tags");
    return Tagset::from_names(std::move(names));
}

void validate_word(std::string_view word) {
    if (word.empty()) throw_invalid("empty word");
    if (has_space(word)) throw_invalid("word '" + std::string(word) + "' contains whitespace");
}

std::vector<std::string> TaggedSentence::words() const {
    std::vector<std::string> out;
    out.reserve(tokens.size());
    for (const auto& t : tokens) out.push_back(t.word);
    return out;
}

std::vector<TagId> TaggedSentence::tags() const {
    std::vector<TagId> out;
    out.reserve(tokens.size());
    for (const auto& t : tokens) out.push_back(t.tag);
    return out;
}

std::size_t TaggedCorpus::token_count() const noexcept {
    std::size_t n = 0;
    for (const auto& s : sentences) n += s.size();
    return n;
}

void validate(const TaggedCorpus& corpus) {
    for (std::size_t i = 0; i < corpus.sentences.size(); ++i) {
        const auto& sentence = corpus.sentences[i];
        if (sentence.tokens.empty())
            throw_invalid("sentence " + std::to_string(i) + " is empty");
        for (const auto& token : sentence.tokens) {
            validate_word(token.word);
            if (!corpus.tagset.is_assignable(token.tag))
                throw_invalid("sentence " + std::to_string(i) +
                              " has a non-assignable tag index " +
                              std::to_string(to_index(token.tag)));
        }
    }
}

TaggedCorpus parse_tagged_corpus(std::string_view text, const Tagset& tagset) {
    TaggedCorpus corpus{tagset, {}};
    for_each_line(text, [&](std::size_t line_no, std::string_view line) {
        if (line.empty()) return;
        TaggedSentence sentence;
        std::size_t pos = 0;
        while (pos <= line.size()) {
            std::size_t end = line.find(' ', pos);
            if (end == std::string_view::npos) end = line.size();
            const std::string_view token = line.substr(pos, end - pos);
            const std::size_t column = pos + 1;
            if (token.empty()) throw ParseError(line_no, column, "empty token");
            const std::size_t slash = token.rfind('/');
            if (slash == std::string_view::npos)
                throw ParseError(line_no, column,
                                 "malformed token '" + std::string(token) + "' (expected word/TAG)");
            const std::string_view word = token.substr(0, slash);
            const std::string_view tag = token.substr(slash + 1);
            if (word.empty()) throw ParseError(line_no, column, "empty word in token");
            if (has_space(word))
                throw ParseError(line_no, column, "word contains whitespace");
            const auto id = tagset.find(tag);
            if (!id)
                throw ParseError(line_no, column + slash + 1,
                                 "unknown tag \"" + std::string(tag) + "\"");
            if (*id == tagset.null_tag())
                throw ParseError(line_no, column + slash + 1,
                                 "the boundary tag NULL cannot be assigned to a word");
            sentence.tokens.push_back(Token{std::string(word), *id});
            pos = end + 1;
        }
        corpus.sentences.push_back(std::move(sentence));
    });
    return corpus;
}

std::string write_tagged_corpus(const TaggedCorpus& corpus) {
    std::string out;
    for (const auto& sentence : corpus.sentences) {
        for (std::size_t i = 0; i < sentence.tokens.size(); ++i) {
            if (i != 0) out += ' ';
            out += sentence.tokens[i].word;
            out += '/';
            out += corpus.tagset.name(sentence.tokens[i].tag);
        }
        out += '\n';
    }
    return out;
}

std::vector<RawSentence> parse_raw_sentences(std::string_view text) {
    std::vector<RawSentence> out;
    for_each_line(text, [&](std::size_t, std::string_view line) {
        RawSentence words;
        std::size_t pos = 0;
        while (pos < line.size()) {
            while (pos < line.size() && is_space(line[pos])) ++pos;
            std::size_t end = pos;
            while (end < line.size() && !is_space(line[end])) ++end;
            if (end > pos) words.emplace_back(line.substr(pos, end - pos));
            pos = end;
        }
        if (!words.empty()) out.push_back(std::move(words));
    });
    return out;
}

std::size_t round_half_up(double value) {
    return static_cast<std::size_t>(std::floor(value + 0.5));
}

std::pair<TaggedCorpus, TaggedCorpus> split_corpus(const TaggedCorpus& corpus,
                                                   double train_fraction,
                                                   std::uint64_t seed) {
    if (!(train_fraction > 0.0 && train_fraction < 1.0))
        throw_invalid("train fraction must lie in (0, 1)");
    const std::size_t n = corpus.sentences.size();
    if (n < 2) throw_invalid("corpus needs at least 2 sentences to split");
    const std::size_t n_train =
        std::clamp<std::size_t>(round_half_up(train_fraction * static_cast<double>(n)), 1, n - 1);

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    RandomSource rng(seed);
    for (std::size_t i = n - 1; i > 0; --i)
        std::swap(order[i], order[rng.uniform_index(i + 1)]);

    std::vector<bool> in_train(n, false);
    for (std::size_t i = 0; i < n_train; ++i) in_train[order[i]] = true;

    TaggedCorpus train{corpus.tagset, {}};
    TaggedCorpus test{corpus.tagset, {}};
    for (std::size_t i = 0; i < n; ++i)
        (in_train[i] ? train : test).sentences.push_back(corpus.sentences[i]);
    return {std::move(train), std::move(test)};
}

TaggedCorpus take_prefix(const TaggedCorpus& corpus, double fraction) {
    if (!(fraction > 0.0 && fraction <= 1.0))
        throw_invalid("prefix fraction must lie in (0, 1]");
    const std::size_t n = corpus.sentences.size();
    const std::size_t keep = std::min(n, round_half_up(fraction * static_cast<double>(n)));
    TaggedCorpus out{corpus.tagset, {}};
    out.sentences.assign(corpus.sentences.begin(),
                         corpus.sentences.begin() + static_cast<std::ptrdiff_t>(keep));
    return out;
}

} // namespace gatagger
