#include "gatagger/oracle.hpp"

#include <algorithm>

#include "gatagger/error.hpp"

namespace gatagger {

Individual exhaustive_tag(const RawSentence& sentence, const Lexicon& lexicon,
                          const FitnessModel& model, std::uint64_t cap,
                          EvalCounters* counters) {
    const SearchSpace space(sentence, lexicon);
    const std::uint64_t total = space.assignment_count(cap);
    if (total > cap)
        throw Error(ErrorCode::capacity,
                    "exhaustive search space exceeds the cap of " + std::to_string(cap) +
                        " assignments");

    // Odometer over candidates sorted by tag index, last position fastest:
    // assignments are visited in lexicographic order, so keeping the first
    // strict maximum gives the smallest sequence among ties.
    const std::size_t n = space.size();
    std::vector<std::vector<TagId>> options(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto c = space.candidates(i);
        options[i].assign(c.begin(), c.end());
        std::sort(options[i].begin(), options[i].end(),
                  [](TagId a, TagId b) { return to_index(a) < to_index(b); });
    }
    std::vector<std::size_t> digit(n, 0);
    Genes genes(n);
    for (std::size_t i = 0; i < n; ++i) genes[i] = options[i][0];

    Individual best{genes, model.individual_fitness(genes, counters)};
    while (true) {
        std::size_t pos = n;
        while (pos > 0) {
            --pos;
            if (++digit[pos] < options[pos].size()) break;
            digit[pos] = 0;
            genes[pos] = options[pos][0];
            if (pos == 0) return best;
        }
        genes[pos] = options[pos][digit[pos]];
        const double fitness = model.individual_fitness(genes, counters);
        if (fitness > best.fitness) best = Individual{genes, fitness};
    }
}

Genes baseline_tag(const RawSentence& sentence, const Lexicon& lexicon) {
    Genes out;
    out.reserve(sentence.size());
    for (const auto& word : sentence) {
        const auto* entry = lexicon.find(word);
        out.push_back(entry ? entry->argmax() : lexicon.most_frequent_tag());
    }
    return out;
}

} // namespace gatagger
