#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "rtrack/cli.hpp"

using namespace rtrack;
namespace fs = std::filesystem;

namespace {

const fs::path kSource = RTRACK_SOURCE_DIR;

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult run(std::vector<std::string> args) {
  args.insert(args.begin(), "reactive_tracker");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

fs::path fresh_dir(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / ("rtrack_cli_" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

// One short training run shared by the tests below.
const fs::path& trained_run() {
  static const fs::path dir = [] {
    const fs::path d = fresh_dir("train");
    const auto r = run({"train", "--config", (kSource / "configs/figure8.json").string(), "--seed", "5",
                        "--total-timesteps", "2048", "--checkpoint-every", "1", "--quiet", "--out", d.string()});
    EXPECT_EQ(r.code, 0) << r.err;
    return d;
  }();
  return dir;
}

nlohmann::json read_json(const fs::path& p) { return nlohmann::json::parse(slurp(p)); }

}  // namespace

TEST(Hash, GitBlobSha1) {
  EXPECT_EQ(git_blob_sha1(""), "e69de29bb2d1d6434b8b29ae775ad8c2e48c5391");
  EXPECT_EQ(git_blob_sha1("hello world\n"), "3b18e512dba79e4c8300dd08aeb37f8e728b8dad");
}

TEST(Cli, NoSubcommandOrUnknownOption) {
  EXPECT_EQ(run({}).code, kExitConfig);
  EXPECT_EQ(run({"train", "--bogus", "--out", "x"}).code, kExitConfig);
  EXPECT_EQ(run({"--help"}).code, kExitOk);
}

TEST(Cli, MissingConfigFile) {
  const auto r = run({"train", "--config", "/nonexistent.json", "--out", fresh_dir("missing").string()});
  EXPECT_EQ(r.code, kExitConfig);
  EXPECT_NE(r.err.find("/nonexistent.json"), std::string::npos);
}

TEST(Cli, ConfigMissingFieldIsNamed) {
  const fs::path d = fresh_dir("badcfg");
  auto j = read_json(kSource / "configs/figure8.json");
  j["env_params"].erase("delta");
  j["path_csv"] = (kSource / "data/figure8_path.csv").string();
  j["obstacles_csv"] = (kSource / "data/no_obstacles.csv").string();
  std::ofstream(d / "c.json") << j.dump();
  const auto r = run({"train", "--config", (d / "c.json").string(), "--out", (d / "run").string()});
  EXPECT_EQ(r.code, kExitConfig);
  EXPECT_NE(r.err.find("env_params.delta"), std::string::npos) << r.err;
}

TEST(Cli, ConfigUnknownFieldRejected) {
  const fs::path d = fresh_dir("unknown");
  auto j = read_json(kSource / "configs/figure8.json");
  j["env_params"]["deltaa"] = 1.0;
  j["path_csv"] = (kSource / "data/figure8_path.csv").string();
  j["obstacles_csv"] = (kSource / "data/no_obstacles.csv").string();
  std::ofstream(d / "c.json") << j.dump();
  const auto r = run({"train", "--config", (d / "c.json").string(), "--out", (d / "run").string()});
  EXPECT_EQ(r.code, kExitConfig);
  EXPECT_NE(r.err.find("deltaa"), std::string::npos) << r.err;
}

TEST(Cli, TimestepsNotMultipleOfBatch) {
  const auto r = run({"train", "--total-timesteps", "1000", "--out", fresh_dir("tt").string()});
  EXPECT_EQ(r.code, kExitConfig);
}

TEST(Cli, TrainWritesRunDirectory) {
  const fs::path& d = trained_run();
  for (const char* f : {"policy.json", "value.json", "train_log.csv", "eval_log.csv", "run_metadata.json",
                        "scenario.json", "path.csv", "obstacles.csv", "checkpoints/policy_u00001.json",
                        "checkpoints/value_u00002.json"}) {
    EXPECT_TRUE(fs::exists(d / f)) << f;
  }
  std::istringstream log(slurp(d / "train_log.csv"));
  std::string line;
  int rows = -1;
  while (std::getline(log, line)) ++rows;
  EXPECT_EQ(rows, 2);
  const auto meta = read_json(d / "run_metadata.json");
  EXPECT_EQ(meta["seed"].get<int>(), 5);
  EXPECT_EQ(meta["updates"].get<int>(), 2);
  EXPECT_EQ(meta["scenario_hashes"]["config"].get<std::string>(),
            git_blob_sha1_file((kSource / "configs/figure8.json").string()));
  EXPECT_EQ(meta["scenario_hashes"]["path_csv"].get<std::string>(), git_blob_sha1_file((d / "path.csv").string()));
  EXPECT_EQ(slurp(d / "path.csv"), slurp(kSource / "data/figure8_path.csv"));
}

TEST(Cli, TrainingIsReproducible) {
  const fs::path d = fresh_dir("train2");
  const auto r = run({"train", "--config", (kSource / "configs/figure8.json").string(), "--seed", "5",
                      "--total-timesteps", "2048", "--checkpoint-every", "1", "--quiet", "--out", d.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(slurp(d / "train_log.csv"), slurp(trained_run() / "train_log.csv"));
  EXPECT_EQ(slurp(d / "policy.json"), slurp(trained_run() / "policy.json"));
}

TEST(Cli, ThreadsEnvironmentVariable) {
  ::setenv("REACTIVE_TRACKER_THREADS", "3", 1);
  EXPECT_EQ(effective_threads(1), 3);
  const fs::path d = fresh_dir("threads");
  const auto r = run({"train", "--config", (kSource / "configs/figure8.json").string(), "--seed", "5",
                      "--total-timesteps", "2048", "--checkpoint-every", "1", "--quiet", "--out", d.string()});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(read_json(d / "run_metadata.json")["threads"].get<int>(), 3);
  EXPECT_EQ(slurp(d / "policy.json"), slurp(trained_run() / "policy.json"));
  ::setenv("REACTIVE_TRACKER_THREADS", "zero", 1);
  EXPECT_THROW(effective_threads(1), ConfigError);
  EXPECT_EQ(run({"train", "--total-timesteps", "1024", "--out", d.string()}).code, kExitConfig);
  ::unsetenv("REACTIVE_TRACKER_THREADS");
  EXPECT_EQ(effective_threads(2), 2);
}

TEST(Cli, EvalReportAndTraces) {
  const fs::path d = fresh_dir("eval");
  const auto r = run({"eval", "--weights", (trained_run() / "policy.json").string(), "--config",
                      (kSource / "configs/figure8_one_obstacle.json").string(), "--episodes", "2", "--deterministic",
                      "--out", d.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rep = read_json(d / "kpi_report.json");
  for (const char* k : {"kappa2", "kappa_reach", "kappa_dist", "kappa_danger", "checkpoints", "tolerance", "seed",
                        "checkpoint_seed", "reach_rule", "episodes"}) {
    EXPECT_TRUE(rep.contains(k)) << k;
  }
  EXPECT_EQ(rep["checkpoints"].size(), 50u);
  EXPECT_EQ(rep["seed"].get<int>(), 1000);
  ASSERT_EQ(rep["episodes"].size(), 2u);
  EXPECT_EQ(rep["episodes"][1]["seed"].get<int>(), 1001);
  EXPECT_TRUE(fs::exists(d / "trace_000.csv"));
  EXPECT_TRUE(fs::exists(d / "trace_001.csv"));
  const auto trace = read_trace_csv((d / "trace_000.csv").string());
  EXPECT_EQ(trace.steps(), rep["episodes"][0]["steps"].get<std::size_t>());
}

TEST(Cli, DeterministicEvalIsRepeatable) {
  const fs::path a = fresh_dir("eval_a"), b = fresh_dir("eval_b");
  const std::string w = (trained_run() / "policy.json").string();
  ASSERT_EQ(run({"eval", "--weights", w, "--deterministic", "--out", a.string()}).code, 0);
  ASSERT_EQ(run({"eval", "--weights", w, "--deterministic", "--out", b.string()}).code, 0);
  EXPECT_EQ(slurp(a / "trace_000.csv"), slurp(b / "trace_000.csv"));
  EXPECT_EQ(slurp(a / "kpi_report.json"), slurp(b / "kpi_report.json"));
}

TEST(Cli, EvalFromRunMetadataReproducesCheckpointLog) {
  const fs::path& run_dir = trained_run();
  const auto meta = read_json(run_dir / "run_metadata.json");
  const fs::path d = fresh_dir("eval_meta");
  const auto r = run({"eval", "--weights", (run_dir / meta["eval"]["policy"].get<std::string>()).string(), "--config",
                      (run_dir / meta["eval"]["scenario"].get<std::string>()).string(), "--seed",
                      std::to_string(meta["eval"]["episode_seed"].get<int>()), "--deterministic", "--out",
                      d.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rep = read_json(d / "kpi_report.json");
  std::istringstream log(slurp(run_dir / "eval_log.csv"));
  std::string line, last;
  while (std::getline(log, line)) last = line;
  std::vector<std::string> f;
  std::stringstream ss(last);
  while (std::getline(ss, line, ',')) f.push_back(line);
  ASSERT_EQ(f.size(), 8u);
  EXPECT_EQ(csv::format_double(rep["kappa2"].get<double>()), f[2]);
  EXPECT_EQ(csv::format_double(rep["kappa_reach"].get<double>()), f[3]);
  EXPECT_EQ(std::to_string(rep["episodes"][0]["steps"].get<int>()), f[6]);
}

TEST(Cli, EvalRejectsValueWeights) {
  const auto r = run({"eval", "--weights", (trained_run() / "value.json").string(), "--out",
                      fresh_dir("eval_v").string()});
  EXPECT_EQ(r.code, kExitConfig);
  EXPECT_NE(r.err.find("softmax"), std::string::npos);
}

TEST(Cli, EvalMissingWeights) {
  EXPECT_EQ(run({"eval", "--weights", "/nonexistent/p.json", "--out", fresh_dir("eval_m").string()}).code,
            kExitConfig);
}

TEST(Cli, PlotWritesSvg) {
  const fs::path d = fresh_dir("plot");
  ASSERT_EQ(run({"eval", "--weights", (trained_run() / "policy.json").string(), "--config",
                 (kSource / "configs/figure8_one_obstacle.json").string(), "--out", d.string()})
                .code,
            0);
  std::ofstream(d / "obs.csv") << "shape,cx,cy,r_or_w,h\ncircle,30,20,1,\n";
  const auto r = run({"plot", "--trace", (d / "trace_000.csv").string(), "--path",
                      (kSource / "data/figure8_path.csv").string(), "--obstacles", (d / "obs.csv").string(), "--out",
                      (d / "ep.svg").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string svg = slurp(d / "ep.svg");
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
  EXPECT_NE(svg.find("<circle"), std::string::npos);
  const auto r2 = run({"plot", "--trace", (d / "trace_000.csv").string(), "--path",
                       (kSource / "data/figure8_path.csv").string(), "--out", (d / "ep2.svg").string()});
  EXPECT_EQ(r2.code, 0);
}

TEST(Cli, PlotEmptyTrace) {
  const fs::path d = fresh_dir("plot_empty");
  std::ofstream(d / "t.csv") << "t,x,y,theta,v,u1,u2,x1,x2,x3,x4,x5,x6,x7\n";
  const auto r = run({"plot", "--trace", (d / "t.csv").string(), "--path",
                      (kSource / "data/figure8_path.csv").string(), "--out", (d / "e.svg").string()});
  EXPECT_EQ(r.code, kExitConfig);
}

TEST(Cli, InspectWeights) {
  const auto r = run({"inspect-weights", "--weights", (trained_run() / "policy.json").string()});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("softmax"), std::string::npos);
  EXPECT_NE(r.out.find("121"), std::string::npos);
}

TEST(ScenarioIo, RoundTripThroughSnapshot) {
  const RunConfig rc = load_run_config(kSource / "configs/figure8_one_obstacle.json");
  EXPECT_EQ(rc.scenario.env.seed, 1000u);
  EXPECT_EQ(rc.scenario.random_obstacles.count, 1);
  EXPECT_EQ(rc.scenario.path.size(), 100u);
  const fs::path d = fresh_dir("snap");
  const RunConfig snap = snapshot_scenario(rc, d);
  const RunConfig back = load_run_config(d / "scenario.json");
  EXPECT_EQ(run_config_to_json(back).dump(), run_config_to_json(snap).dump());
}
