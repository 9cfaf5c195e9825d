#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"
#include "jacq/corpus.hpp"

namespace jacq {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// One trained model shared by the end-to-end cases.
class CliFlow : public testing::Test {
 protected:
  static void SetUpTestSuite() {
    root_ = fs::path(testing::TempDir()) / "jacq_cli";
    fs::remove_all(root_);
    fs::create_directories(root_);
    ASSERT_EQ(run({"generate", "--n", "400", "--defect-fraction", "0.5", "--seed", "1", "--out",
                   (root_ / "train").string()})
                  .code,
              0);
    ASSERT_EQ(run({"generate", "--n", "24", "--seed", "2", "--out", (root_ / "test").string()}).code,
              0);
    const Result t = run({"train", "--corpus", (root_ / "train").string(), "--out", model()});
    ASSERT_EQ(t.code, 0) << t.err;
  }

  static std::string model() { return (root_ / "model.json").string(); }
  static std::string test_dir() { return (root_ / "test").string(); }
  static std::string frame(int index, char view) {
    return frame_path(root_ / "test", index, view).string();
  }
  static int first_with_label(int label) {
    for (const auto& e : read_corpus_index(root_ / "test"))
      if (e.label == label) return e.index;
    return -1;
  }

  static fs::path root_;
};

fs::path CliFlow::root_;

TEST(Cli, NoArgumentsPrintsUsage) {
  const Result r = run({});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("Usage"), std::string::npos);
  EXPECT_TRUE(r.out.empty());
}

TEST(Cli, UnknownFlagNamed) {
  const Result r = run({"bench", "--corpus", ".", "--reps", "1", "--frobnicate"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("--frobnicate"), std::string::npos) << r.err;
}

TEST(Cli, MissingFileNamed) {
  const Result r = run({"detect", "--a", "no_such_a.pgm", "--b", "no_such_b.pgm", "--model", "m.json"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("no_such_a.pgm"), std::string::npos) << r.err;
}

TEST(Cli, HelpExitsZero) {
  const Result r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("generate"), std::string::npos);
}

TEST(Cli, GenerateIsDeterministic) {
  const fs::path a = fs::path(testing::TempDir()) / "jacq_gen_a";
  const fs::path b = fs::path(testing::TempDir()) / "jacq_gen_b";
  fs::remove_all(a);
  fs::remove_all(b);
  ASSERT_EQ(run({"generate", "--n", "4", "--seed", "5", "--out", a.string()}).code, 0);
  ASSERT_EQ(run({"generate", "--n", "4", "--seed", "5", "--out", b.string()}).code, 0);
  for (const char* f : {"0000_a.pgm", "0003_b.pgm", "labels.csv", "corpus.json"})
    EXPECT_EQ(slurp(a / f), slurp(b / f)) << f;
}

TEST(Cli, GenerateFromSpecFile) {
  const fs::path dir = fs::path(testing::TempDir()) / "jacq_gen_spec";
  fs::remove_all(dir);
  fs::create_directories(dir);
  std::ofstream(dir / "spec.json") << R"({"width": 40, "height": 30, "seed": 3})";
  const Result r = run({"generate", "--spec", (dir / "spec.json").string(), "--n", "2", "--out",
                        (dir / "out").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto manifest = manifest_from_json(slurp(dir / "out" / "corpus.json"));
  EXPECT_EQ(manifest.base.width, 40);
  EXPECT_EQ(manifest.seed, 3u);
}

TEST(Cli, BadSpecReported) {
  const fs::path dir = fs::path(testing::TempDir()) / "jacq_bad_spec";
  fs::create_directories(dir);
  std::ofstream(dir / "spec.json") << R"({"warp_period": 1})";
  const Result r = run({"generate", "--spec", (dir / "spec.json").string(), "--n", "2", "--out",
                        (dir / "out").string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("error:"), std::string::npos);
}

TEST_F(CliFlow, DetectCleanPairExitsZero) {
  const int i = first_with_label(0);
  const Result r = run({"detect", "--a", frame(i, 'a'), "--b", frame(i, 'b'), "--model", model()});
  EXPECT_EQ(r.code, 0) << r.err;
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 1u);
  const auto d = nlohmann::json::parse(ls[0]);
  EXPECT_EQ(d.at("defect"), false);
  EXPECT_LT(d.at("p").get<double>(), 0.5);
}

TEST_F(CliFlow, DetectDefectivePairExitsTwo) {
  const int i = first_with_label(1);
  const Result r = run({"detect", "--a", frame(i, 'a'), "--b", frame(i, 'b'), "--model", model()});
  EXPECT_EQ(r.code, 2) << r.err;
  EXPECT_EQ(nlohmann::json::parse(lines(r.out).at(0)).at("defect"), true);
}

TEST_F(CliFlow, DumpDensityWritesBothViews) {
  const fs::path dump = root_ / "density.csv";
  const Result r = run({"detect", "--a", frame(0, 'a'), "--b", frame(0, 'b'), "--model", model(),
                        "--dump-density", dump.string()});
  ASSERT_NE(r.code, 1) << r.err;
  for (const char* name : {"density_a.csv", "density_b.csv"}) {
    const auto ls = lines(slurp(root_ / name));
    ASSERT_EQ(ls.size(), 181u) << name;
    EXPECT_EQ(ls[0], "theta_degrees,value");
    EXPECT_EQ(ls[1].rfind("0,", 0), 0u);
    EXPECT_EQ(ls[91].rfind("90,", 0), 0u);
  }
}

TEST_F(CliFlow, StreamStopsAtFirstDefect) {
  const Result r = run({"stream", "--corpus", test_dir(), "--model", model()});
  EXPECT_EQ(r.code, 2);
  const auto ls = lines(r.out);
  ASSERT_GE(ls.size(), 2u);
  const auto stop = nlohmann::json::parse(ls.back());
  const auto last = nlohmann::json::parse(ls[ls.size() - 2]);
  EXPECT_EQ(stop.at("stop_at"), last.at("seq"));
  EXPECT_EQ(last.at("defect"), true);
  for (std::size_t i = 0; i + 2 < ls.size(); ++i)
    EXPECT_EQ(nlohmann::json::parse(ls[i]).at("defect"), false);
}

TEST_F(CliFlow, StreamNoStopCoversCorpus) {
  const Result r = run({"stream", "--corpus", test_dir(), "--model", model(), "--no-stop"});
  EXPECT_EQ(r.code, 2);
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 24u);
  for (std::size_t i = 0; i < ls.size(); ++i)
    EXPECT_EQ(nlohmann::json::parse(ls[i]).at("seq"), i);
}

TEST_F(CliFlow, StreamMatchesDetect) {
  const Result s = run({"stream", "--corpus", test_dir(), "--model", model(), "--no-stop"});
  const auto ls = lines(s.out);
  for (int i : {0, 5, 17}) {
    const Result d = run({"detect", "--a", frame(i, 'a'), "--b", frame(i, 'b'), "--model", model()});
    EXPECT_EQ(nlohmann::json::parse(ls[i]).at("p"), nlohmann::json::parse(d.out).at("p"));
  }
}

TEST_F(CliFlow, EvalReportAndFeatureDump) {
  const fs::path dump = root_ / "features.csv";
  const Result r = run({"eval", "--corpus", test_dir(), "--model", model(), "--dump-features",
                        dump.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto report = nlohmann::json::parse(r.out);
  EXPECT_EQ(report.at("true_positives").get<int>() + report.at("false_negatives").get<int>(), 12);
  EXPECT_EQ(report.at("false_positives").get<int>() + report.at("true_negatives").get<int>(), 12);
  EXPECT_TRUE(report.contains("latency"));
  const auto rows = lines(slurp(dump));
  ASSERT_EQ(rows.size(), 25u);
  EXPECT_EQ(rows[0].rfind("a.mean,", 0), 0u);
  EXPECT_EQ(rows[0].substr(rows[0].size() - 6), ",label");
  EXPECT_EQ(std::count(rows[1].begin(), rows[1].end(), ','), 12);
}

TEST_F(CliFlow, ConfigFileAndFlagOverride) {
  const fs::path cfg = root_ / "strict.json";
  std::ofstream(cfg) << R"({"decision_threshold": 0.999999999, "model_path": ")" << model() << "\"}";
  const int i = first_with_label(1);
  // The model path comes from the config file; the strict threshold clears the flag.
  const Result strict = run({"detect", "--a", frame(i, 'a'), "--b", frame(i, 'b'), "--config",
                             cfg.string()});
  ASSERT_NE(strict.code, 1) << strict.err;
  const Result relaxed = run({"detect", "--a", frame(i, 'a'), "--b", frame(i, 'b'), "--config",
                              cfg.string(), "--decision_threshold", "0.5"});
  EXPECT_EQ(relaxed.code, 2) << relaxed.err;
  const double p = nlohmann::json::parse(strict.out).at("p");
  EXPECT_EQ(strict.code, p >= 0.999999999 ? 2 : 0);

  std::ofstream(root_ / "typo.json") << R"({"decision_treshold": 0.4})";
  const Result typo = run({"detect", "--a", frame(i, 'a'), "--b", frame(i, 'b'), "--config",
                           (root_ / "typo.json").string(), "--model", model()});
  EXPECT_EQ(typo.code, 1);
  EXPECT_NE(typo.err.find("decision_treshold"), std::string::npos) << typo.err;
}

TEST_F(CliFlow, BenchReportsLatency) {
  const Result r = run({"bench", "--corpus", test_dir(), "--model", model(), "--reps", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto stats = nlohmann::json::parse(r.out);
  EXPECT_EQ(stats.at("count"), 48);
  EXPECT_LE(stats.at("p95_us").get<double>(), stats.at("max_us").get<double>());
  EXPECT_EQ(run({"bench", "--corpus", test_dir(), "--model", model(), "--reps", "0"}).code, 1);
}

TEST_F(CliFlow, MissingModelReported) {
  const Result r = run({"eval", "--corpus", test_dir()});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("model"), std::string::npos);
}

}  // namespace
}  // namespace jacq
