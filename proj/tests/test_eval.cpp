#include <gtest/gtest.h>

#include "gatagger/error.hpp"
#include "gatagger/eval.hpp"
#include "reference.hpp"
#include "synthetic.hpp"

using namespace gatagger;

namespace {

const char* kSchoolSentence = "ذهب/Verb محمد/ProperNoun إلى/Preposition المدرسة/Noun\n";

Tagset school_tags() {
    return Tagset::from_names({"Noun", "Verb", "ProperNoun", "Preposition"});
}

std::vector<Genes> gold_tags(const TaggedCorpus& c) {
    std::vector<Genes> out;
    for (const auto& s : c.sentences) out.push_back(s.tags());
    return out;
}

testsupport::SyntheticSpec small_spec(std::uint64_t seed) {
    testsupport::SyntheticSpec spec;
    spec.seed = seed;
    spec.tag_count = 5;
    spec.vocabulary = 50;
    return spec;
}

SweepSpec quick_spec(SweepAxis axis, std::initializer_list<const char*> values) {
    SweepSpec spec;
    spec.axis = axis;
    for (const char* v : values) spec.values.push_back(parse_sweep_value(axis, v));
    spec.base_config = experiment_base_config(axis);
    spec.base_config.population_size = 12;
    spec.base_config.generations = 6;
    spec.base_config.seed = 5;
    spec.record_timing = false;
    return spec;
}

} // namespace

TEST(Accuracy, IdentityAndOneWrongToken) {
    const TaggedCorpus gold = parse_tagged_corpus(kSchoolSentence, school_tags());
    auto hyp = gold_tags(gold);
    EXPECT_DOUBLE_EQ(tar(gold, hyp), 1.0);
    hyp[0][1] = *gold.tagset.find("Noun");
    const Accuracy acc = accuracy(gold, hyp);
    EXPECT_DOUBLE_EQ(acc.token(), 0.75);
    EXPECT_EQ(acc.correct_tokens, 3u);
    EXPECT_EQ(acc.total_tokens, 4u);
    EXPECT_DOUBLE_EQ(acc.sentence(), 0.0);
}

TEST(Accuracy, Errors) {
    const TaggedCorpus gold = parse_tagged_corpus(kSchoolSentence, school_tags());
    const TaggedCorpus empty{school_tags(), {}};
    EXPECT_THROW(tar(empty, {}), Error);
    EXPECT_THROW(tar(gold, {}), Error);
    const std::vector<Genes> short_hyp{Genes{tag_id(0)}};
    EXPECT_THROW(tar(gold, short_hyp), Error);
    EXPECT_THROW(Accuracy{}.token(), Error);
    EXPECT_THROW(Accuracy{}.sentence(), Error);
}

TEST(Accuracy, MatchesRecountAndIsPermutationEquivariant) {
    RandomSource rng(31);
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        const testsupport::BigramSampler sampler(small_spec(seed));
        const TaggedCorpus gold = sampler.corpus(1 + seed * 2, seed);
        auto hyp = gold_tags(gold);
        for (auto& s : hyp)
            for (auto& t : s)
                if (rng.bernoulli(0.3)) t = tag_id(rng.uniform_index(5));
        const Accuracy acc = accuracy(gold, hyp);
        const auto [correct, total] = testsupport::recount(gold, hyp);
        EXPECT_EQ(acc.correct_tokens, correct);
        EXPECT_EQ(acc.total_tokens, total);
        EXPECT_GE(acc.token(), 0.0);
        EXPECT_LE(acc.token(), 1.0);

        TaggedCorpus reversed = gold;
        std::reverse(reversed.sentences.begin(), reversed.sentences.end());
        auto reversed_hyp = hyp;
        std::reverse(reversed_hyp.begin(), reversed_hyp.end());
        EXPECT_EQ(tar(reversed, reversed_hyp), acc.token());
        EXPECT_EQ(accuracy(reversed, reversed_hyp).correct_sentences, acc.correct_sentences);
    }
}

TEST(SweepAxis, Names) {
    for (auto axis : {SweepAxis::corpus_fraction, SweepAxis::context_size,
                      SweepAxis::population_size, SweepAxis::mutation_rate,
                      SweepAxis::crossover_kind, SweepAxis::crossover_rate})
        EXPECT_EQ(parse_sweep_axis(to_string(axis)), axis);
    EXPECT_THROW(parse_sweep_axis("temperature"), Error);
}

TEST(SweepValue, CanonicalLabels) {
    EXPECT_EQ(parse_sweep_value(SweepAxis::corpus_fraction, "0.50").label, "0.5");
    EXPECT_EQ(parse_sweep_value(SweepAxis::mutation_rate, "0.040").label, "0.04");
    EXPECT_EQ(parse_sweep_value(SweepAxis::population_size, "45").label, "45");
    EXPECT_EQ(parse_sweep_value(SweepAxis::context_size, "3,2").label, "3-2");
    EXPECT_EQ(parse_sweep_value(SweepAxis::context_size, "3-2").context, (ContextSize{3, 2}));
    EXPECT_EQ(parse_sweep_value(SweepAxis::crossover_kind, "one_point").kind,
              CrossoverKind::one_point);
}

TEST(SweepValue, Rejections) {
    EXPECT_THROW(parse_sweep_value(SweepAxis::corpus_fraction, "0"), Error);
    EXPECT_THROW(parse_sweep_value(SweepAxis::corpus_fraction, "1.2"), Error);
    EXPECT_THROW(parse_sweep_value(SweepAxis::corpus_fraction, "abc"), Error);
    EXPECT_THROW(parse_sweep_value(SweepAxis::mutation_rate, "-0.1"), Error);
    EXPECT_THROW(parse_sweep_value(SweepAxis::population_size, "1"), Error);
    EXPECT_THROW(parse_sweep_value(SweepAxis::population_size, "4.5"), Error);
    EXPECT_THROW(parse_sweep_value(SweepAxis::context_size, "0-0"), Error);
    EXPECT_THROW(parse_sweep_value(SweepAxis::context_size, "5-1"), Error);
    EXPECT_THROW(parse_sweep_value(SweepAxis::context_size, "2"), Error);
    EXPECT_THROW(parse_sweep_value(SweepAxis::crossover_kind, "both"), Error);
}

TEST(SweepDefaults, GridsAndBaseConfigs) {
    EXPECT_EQ(default_sweep_values(SweepAxis::context_size),
              (std::vector<std::string>{"1-1", "2-2", "3-2"}));
    EXPECT_EQ(default_sweep_values(SweepAxis::population_size),
              (std::vector<std::string>{"10", "20", "45", "60", "100"}));
    EXPECT_EQ(default_sweep_values(SweepAxis::crossover_kind),
              (std::vector<std::string>{"uniform", "one_point"}));
    const auto mutation = default_sweep_values(SweepAxis::mutation_rate);
    EXPECT_NE(std::find(mutation.begin(), mutation.end(), "0.05"), mutation.end());
    for (auto axis : {SweepAxis::corpus_fraction, SweepAxis::context_size,
                      SweepAxis::population_size, SweepAxis::mutation_rate,
                      SweepAxis::crossover_kind, SweepAxis::crossover_rate})
        for (const auto& v : default_sweep_values(axis)) EXPECT_NO_THROW(parse_sweep_value(axis, v));

    const GaConfig fig = experiment_base_config(SweepAxis::corpus_fraction);
    EXPECT_EQ(fig.population_size, 60u);
    EXPECT_EQ(fig.generations, 30u);
    EXPECT_DOUBLE_EQ(fig.crossover_rate, 0.5);
    EXPECT_DOUBLE_EQ(fig.mutation_rate, 0.04);
    EXPECT_EQ(fig.crossover_kind, CrossoverKind::uniform);
    const GaConfig cross = experiment_base_config(SweepAxis::crossover_kind);
    EXPECT_EQ(cross.population_size, 45u);
    EXPECT_DOUBLE_EQ(cross.mutation_rate, 0.05);
}

TEST(RunSweep, OneGroupPerValueAndDeterministic) {
    const testsupport::BigramSampler sampler(small_spec(2));
    const TaggedCorpus train = sampler.corpus(150, 1);
    const TaggedCorpus test = sampler.corpus(20, 2);
    SweepSpec spec = quick_spec(SweepAxis::crossover_kind, {"uniform", "one_point"});
    spec.repetitions = 2;
    const SweepResult a = run_sweep(spec, train, test);
    ASSERT_EQ(a.rows.size(), 4u);
    EXPECT_EQ(a.rows[0].axis_value, "uniform");
    EXPECT_EQ(a.rows[1].axis_value, "uniform");
    EXPECT_EQ(a.rows[2].axis_value, "one_point");
    EXPECT_EQ(a.rows[0].seed, replicate_seed(5, 0));
    EXPECT_EQ(a.rows[1].seed, replicate_seed(5, 1));
    EXPECT_EQ(a.rows[2].seed, a.rows[0].seed);
    for (const auto& row : a.rows) {
        EXPECT_GE(row.tar_token, 0.0);
        EXPECT_LE(row.tar_token, 1.0);
        EXPECT_EQ(row.wall_ms, 0.0);
        EXPECT_GT(row.fitness_evals, 0.0);
        EXPECT_LE(row.fitness_evals, 12.0 * 7.0);
    }
    EXPECT_EQ(write_results(run_sweep(spec, train, test)), write_results(a));

    spec.jobs = 3;
    EXPECT_EQ(write_results(run_sweep(spec, train, test)), write_results(a));

    // more replicates only append rows per value
    spec.repetitions = 3;
    const SweepResult more = run_sweep(spec, train, test);
    ASSERT_EQ(more.rows.size(), 6u);
    EXPECT_EQ(write_results({a.axis, {a.rows[0], a.rows[1]}}),
              write_results({more.axis, {more.rows[0], more.rows[1]}}));
}

TEST(RunSweep, ContextSizeRebuildsTables) {
    const testsupport::BigramSampler sampler(small_spec(3));
    const TaggedCorpus train = sampler.corpus(200, 1);
    const TaggedCorpus test = sampler.corpus(25, 2);
    const SweepSpec spec = quick_spec(SweepAxis::context_size, {"1-1", "2-2", "3-2"});
    const SweepResult r = run_sweep(spec, train, test);
    ASSERT_EQ(r.rows.size(), 3u);
    EXPECT_EQ(r.rows[0].axis_value, "1-1");
    EXPECT_EQ(r.rows[2].axis_value, "3-2");
    EXPECT_LT(r.rows[0].table_windows, r.rows[1].table_windows);
    EXPECT_LT(r.rows[1].table_windows, r.rows[2].table_windows);
    EXPECT_LT(r.rows[0].backoff_steps_per_gene, r.rows[1].backoff_steps_per_gene);
    EXPECT_LT(r.rows[1].backoff_steps_per_gene, r.rows[2].backoff_steps_per_gene);
}

TEST(RunSweep, CorpusFractionUsesPrefixes) {
    const testsupport::BigramSampler sampler(small_spec(4));
    const TaggedCorpus train = sampler.corpus(100, 1);
    const TaggedCorpus test = sampler.corpus(10, 2);
    const SweepSpec spec = quick_spec(SweepAxis::corpus_fraction, {"0.1", "1"});
    const SweepResult r = run_sweep(spec, train, test);
    ASSERT_EQ(r.rows.size(), 2u);
    EXPECT_LT(r.rows[0].table_windows, r.rows[1].table_windows);
    EXPECT_EQ(r.rows[1].table_windows, TrainingTable::build(train, 1, 1).distinct_windows());
    EXPECT_EQ(r.rows[0].table_windows,
              TrainingTable::build(take_prefix(train, 0.1), 1, 1).distinct_windows());
}

TEST(RunSweep, Errors) {
    const testsupport::BigramSampler sampler(small_spec(5));
    const TaggedCorpus train = sampler.corpus(30, 1);
    const TaggedCorpus test = sampler.corpus(5, 2);
    SweepSpec spec = quick_spec(SweepAxis::population_size, {});
    EXPECT_THROW(run_sweep(spec, train, test), Error);
    spec = quick_spec(SweepAxis::population_size, {"10"});
    spec.repetitions = 0;
    EXPECT_THROW(run_sweep(spec, train, test), Error);
    spec.repetitions = 1;
    TaggedCorpus other = test;
    other.tagset = Tagset::from_names({"X", "Y"});
    EXPECT_THROW(run_sweep(spec, train, other), Error);
}

TEST(Results, CsvFormatAndRoundTrip) {
    SweepResult r;
    EXPECT_EQ(write_results(r), std::string(kResultsHeader) + "\n");
    r.rows.push_back({"0.5", 42, 0.875, 0.25, 12.3456789, 1860.0, 0, 0.0});
    r.rows.push_back({"uniform", 7, 1.0, 1.0, 0.0, 3.0 / 7.0, 0, 0.0});
    const std::string csv = write_results(r);
    EXPECT_EQ(csv,
              "axis_value,seed,tar_token,tar_sentence,wall_ms,fitness_evals\n"
              "0.5,42,0.875000,0.250000,12.345679,1860.000000\n"
              "uniform,7,1.000000,1.000000,0.000000,0.428571\n");
    const auto rows = parse_results(csv);
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[0].axis_value, "0.5");
    EXPECT_EQ(rows[0].seed, 42u);
    EXPECT_DOUBLE_EQ(rows[0].tar_token, 0.875);
    EXPECT_DOUBLE_EQ(rows[1].fitness_evals, 0.428571);
    SweepResult reread{r.axis, rows};
    EXPECT_EQ(write_results(reread), csv);
}

TEST(Results, ParseErrors) {
    EXPECT_THROW(parse_results(""), ParseError);
    EXPECT_THROW(parse_results("a,b\n"), ParseError);
    const std::string h = std::string(kResultsHeader) + "\n";
    EXPECT_THROW(parse_results(h + "x,1,0.5,0.5,0\n"), ParseError);
    EXPECT_THROW(parse_results(h + "x,seed,0.5,0.5,0,1\n"), ParseError);
    EXPECT_THROW(parse_results(h + "x,1,half,0.5,0,1\n"), ParseError);
    try {
        parse_results(h + "x,1,0.5,0.5,0,1\nx,1,0.5,0.5,0\n");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 3u);
    }
}

TEST(FormatFixed6, Rounding) {
    EXPECT_EQ(format_fixed6(0.0), "0.000000");
    EXPECT_EQ(format_fixed6(1.0 / 3.0), "0.333333");
    EXPECT_EQ(format_fixed6(2.0 / 3.0), "0.666667");
    EXPECT_EQ(format_fixed6(1234.5), "1234.500000");
}
