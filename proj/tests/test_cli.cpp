#include <gtest/gtest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

const fs::path kData = GATAGGER_DATA_DIR;

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    out << text;
}

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        std::random_device rd;
        dir_ = fs::temp_directory_path() / ("gatagger-cli-" + std::to_string(rd()));
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    fs::path path(const std::string& name) const { return dir_ / name; }

    // Runs the CLI with stdout captured in `out` and stderr in `err`.
    int run(const std::string& args, const std::string& env = "") {
        const std::string cmd = env + (env.empty() ? "" : " ") + "'" GATAGGER_CLI "' " + args +
                                " > '" + path("stdout").string() + "' 2> '" +
                                path("stderr").string() + "'";
        const int status = std::system(cmd.c_str());
        out = slurp(path("stdout"));
        err = slurp(path("stderr"));
        return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    }

    std::string build_model(const std::string& name = "model", const std::string& ctx = "1,1") {
        const std::string dir = path(name).string();
        EXPECT_EQ(run("build --corpus '" + (kData / "example_corpus.txt").string() +
                      "' --tagset '" + (kData / "example_tagset.txt").string() +
                      "' --context " + ctx + " --out '" + dir + "'"),
                  0)
            << err;
        return dir;
    }

    fs::path dir_;
    std::string out;
    std::string err;
};

} // namespace

TEST_F(Cli, BuildWritesModelFiles) {
    const std::string model = build_model("m", "2,1");
    EXPECT_TRUE(fs::exists(fs::path(model) / "table.txt"));
    EXPECT_TRUE(fs::exists(fs::path(model) / "lexicon.txt"));
    EXPECT_NE(out.find("sentences: 12"), std::string::npos) << out;
    EXPECT_NE(out.find("context: 2-1"), std::string::npos) << out;
    EXPECT_EQ(slurp(fs::path(model) / "table.txt").rfind("gatagger-table version=1 l_lc=2 l_rc=1", 0),
              0u);
}

TEST_F(Cli, TagIsDeterministic) {
    const std::string model = build_model();
    const std::string input = (kData / "example_input.txt").string();
    ASSERT_EQ(run("tag --model '" + model + "' --input '" + input + "' --seed 3"), 0) << err;
    const std::string first = out;
    EXPECT_EQ(std::count(first.begin(), first.end(), '\n'), 3);
    EXPECT_NE(first.find("ذهب/"), std::string::npos);
    ASSERT_EQ(run("tag --model '" + model + "' --input '" + input + "' --seed 3 --jobs 2"), 0);
    EXPECT_EQ(out, first);
    ASSERT_EQ(run("tag --model '" + model + "' --input '" + input + "' --output '" +
                  path("tagged.txt").string() + "' --seed 3"),
              0);
    EXPECT_EQ(slurp(path("tagged.txt")), first);
}

TEST_F(Cli, SeedFallsBackToEnvironment) {
    const std::string model = build_model();
    const std::string input = (kData / "example_input.txt").string();
    ASSERT_EQ(run("tag --model '" + model + "' --input '" + input + "' --seed 77"), 0);
    const std::string explicit_seed = out;
    ASSERT_EQ(run("tag --model '" + model + "' --input '" + input + "'", "GA_TAGGER_SEED=77"), 0)
        << err;
    EXPECT_EQ(out, explicit_seed);
}

TEST_F(Cli, EvalReportsAccuracy) {
    const std::string model = build_model();
    const std::string gold = (kData / "example_corpus.txt").string();
    ASSERT_EQ(run("eval --model '" + model + "' --gold '" + gold + "' --hypothesis '" + gold + "'"),
              0)
        << err;
    EXPECT_NE(out.find("TAR (token): 1.000000"), std::string::npos) << out;
    EXPECT_NE(out.find("tokens: 51"), std::string::npos) << out;

    ASSERT_EQ(run("eval --model '" + model + "' --gold '" + gold + "' --seed 5 --population 20 "
                  "--generations 10 --csv '" + path("eval.csv").string() + "'"),
              0)
        << err;
    EXPECT_NE(out.find("TAR (token): "), std::string::npos);
    const std::string csv = slurp(path("eval.csv"));
    EXPECT_EQ(csv.rfind("axis_value,seed,tar_token,tar_sentence,wall_ms,fitness_evals\neval,5,", 0),
              0u)
        << csv;
}

TEST_F(Cli, SweepWritesCsv) {
    const std::string corpus = (kData / "example_corpus.txt").string();
    const std::string tagset = (kData / "example_tagset.txt").string();
    const std::string args = "sweep --axis population_size --values 4 8 --tagset '" + tagset +
                             "' --train '" + corpus + "' --test '" + corpus +
                             "' --generations 4 --repetitions 2 --no-timing --seed 1 --out ";
    ASSERT_EQ(run(args + "'" + path("a.csv").string() + "'"), 0) << err;
    ASSERT_EQ(run(args + "-"), 0) << err;
    const std::string csv = slurp(path("a.csv"));
    EXPECT_EQ(out, csv);
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 5);
    EXPECT_NE(csv.find("\n4,"), std::string::npos);
    EXPECT_NE(csv.find("\n8,"), std::string::npos);
    EXPECT_NE(csv.find(",0.000000,"), std::string::npos);
}

TEST_F(Cli, ExitCodes) {
    EXPECT_EQ(run(""), 2);
    EXPECT_EQ(run("frobnicate"), 2);
    EXPECT_EQ(run("build --corpus x"), 2);
    EXPECT_EQ(run("build --corpus '" + path("missing.txt").string() + "' --tagset '" +
                  (kData / "example_tagset.txt").string() + "' --out '" + path("m").string() +
                  "'"),
              2);
    EXPECT_NE(err, "");
    const std::string model = build_model();
    EXPECT_EQ(run("tag --model '" + model + "' --input '" +
                  (kData / "example_input.txt").string() + "' --population 1"),
              2);
    EXPECT_EQ(run("tag --model '" + model + "' --input '" +
                  (kData / "example_input.txt").string() + "' --crossover two_point"),
              2);
    EXPECT_EQ(run("sweep --axis speed --tagset a --train b --test c --out -"), 2);

    spit(path("bad.txt"), "ذهب/Verb محمد/Unknown\n");
    EXPECT_EQ(run("eval --model '" + model + "' --gold '" + path("bad.txt").string() + "'"), 2);
    EXPECT_NE(err.find("1"), std::string::npos);
    EXPECT_EQ(run("--version"), 0);
    EXPECT_EQ(run("--help"), 0);
}
