#ifndef RTRACK_CLI_HPP_
#define RTRACK_CLI_HPP_

// Command-line front end: train | eval | plot | inspect-weights.
//
// Exit codes: 0 success, 1 unexpected failure, 2 configuration or input
// errors, 3 training aborted on numerical breakdown.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "rtrack/csv.hpp"
#include "rtrack/errors.hpp"
#include "rtrack/hash.hpp"
#include "rtrack/kpi.hpp"
#include "rtrack/net.hpp"
#include "rtrack/path.hpp"
#include "rtrack/ppo.hpp"
#include "rtrack/rollout.hpp"
#include "rtrack/scenario_io.hpp"

namespace rtrack {

namespace fs = std::filesystem;

enum ExitCode : int { kExitOk = 0, kExitFailure = 1, kExitConfig = 2, kExitAborted = 3 };

/// Figure-8 benchmark without obstacles, all parameters at their defaults.
inline RunConfig default_run_config() {
  RunConfig rc;
  rc.scenario.path = generate_figure8(100);
  return rc;
}

// --- training ---------------------------------------------------------------

inline const char* train_log_header() {
  return "update,timesteps,mean_episode_return,mean_episode_length,policy_loss,value_loss,entropy,clip_fraction,"
         "approx_kl";
}

inline std::string format_train_log_row(const UpdateLog& l) {
  using csv::format_double;
  std::ostringstream s;
  s << l.update << ',' << l.timesteps << ',' << format_double(l.mean_episode_return) << ','
    << format_double(l.mean_episode_length) << ',' << format_double(l.stats.policy_loss) << ','
    << format_double(l.stats.value_loss) << ',' << format_double(l.stats.entropy) << ','
    << format_double(l.stats.clip_fraction) << ',' << format_double(l.stats.approx_kl);
  return s.str();
}

/// Thread count after applying REACTIVE_TRACKER_THREADS, if set.
inline int effective_threads(int configured) {
  const char* env = std::getenv("REACTIVE_TRACKER_THREADS");
  if (!env || !*env) return configured;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 1 || v > 1024) {
    throw ConfigError(std::string("REACTIVE_TRACKER_THREADS must be a positive integer, got '") + env + "'");
  }
  return static_cast<int>(v);
}

struct TrainOptions {
  std::uint64_t seed = 0;
  fs::path out = "runs/latest";
  int checkpoint_every = 100;  // updates
  std::ostream* progress = nullptr;
};

namespace detail {

inline void write_text(const fs::path& file, const std::string& text) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw ConfigError(file.string() + ": cannot open for writing");
  out << text;
}

}  // namespace detail

/// Writes path/obstacle copies plus a loadable scenario.json into `dir`, so
/// the run directory does not depend on the original files.
inline RunConfig snapshot_scenario(const RunConfig& rc, const fs::path& dir) {
  RunConfig snap = rc;
  snap.path_csv = dir / "path.csv";
  snap.obstacles_csv = dir / "obstacles.csv";
  write_path_csv(rc.scenario.path, snap.path_csv.string());
  write_obstacles_csv(rc.scenario.obstacles, snap.obstacles_csv.string());
  nlohmann::ordered_json j = run_config_to_json(snap);
  j["path_csv"] = "path.csv";
  j["obstacles_csv"] = "obstacles.csv";
  detail::write_text(dir / "scenario.json", j.dump(2) + "\n");
  snap.source = dir / "scenario.json";
  return snap;
}

/// Trains from `rc`, writing into opts.out:
///   train_log.csv, eval_log.csv, checkpoints/{policy,value}_uNNNNN.json,
///   policy.json, value.json, scenario.json, path.csv, obstacles.csv,
///   run_metadata.json
inline void run_training(const RunConfig& rc, const TrainOptions& opts) {
  fs::create_directories(opts.out / "checkpoints");
  const RunConfig snap = snapshot_scenario(rc, opts.out);

  nlohmann::ordered_json meta;
  meta["seed"] = opts.seed;
  meta["config"] = run_config_to_json(rc);
  meta["config_source"] = rc.source.empty() ? std::string("<built-in figure-8 default>") : rc.source.string();
  nlohmann::ordered_json hashes;
  if (!rc.source.empty()) hashes["config"] = git_blob_sha1_file(rc.source.string());
  hashes["path_csv"] = git_blob_sha1_file(snap.path_csv.string());
  hashes["obstacles_csv"] = git_blob_sha1_file(snap.obstacles_csv.string());
  hashes["scenario_json"] = git_blob_sha1_file(snap.source.string());
  meta["scenario_hashes"] = hashes;
  meta["threads"] = rc.ppo.threads;
  meta["updates"] = rc.ppo.update_count();
  meta["eval"] = {{"scenario", "scenario.json"}, {"policy", "policy.json"}, {"episode_seed", rc.scenario.env.seed}};
  detail::write_text(opts.out / "run_metadata.json", meta.dump(2) + "\n");

  std::ofstream log(opts.out / "train_log.csv", std::ios::binary);
  std::ofstream eval_log(opts.out / "eval_log.csv", std::ios::binary);
  if (!log || !eval_log) throw ConfigError(opts.out.string() + ": cannot create log files");
  log << train_log_header() << '\n';
  eval_log << "update,timesteps,kappa2,kappa_reach,kappa_dist,kappa_danger,steps,termination\n";

  Trainer trainer(rc.scenario, rc.ppo, opts.seed);
  const auto checkpoints = sample_checkpoints(rc.scenario.path, 50, rc.scenario.env.seed);
  const auto& rays = rc.scenario.env.rays;
  const std::int64_t total = rc.ppo.update_count();
  auto checkpoint = [&](std::int64_t update, std::int64_t timesteps) {
    char name[32];
    std::snprintf(name, sizeof name, "_u%05lld.json", static_cast<long long>(update));
    save_weights(trainer.policy(), (opts.out / "checkpoints" / ("policy" + std::string(name))).string());
    save_weights(trainer.value_net(), (opts.out / "checkpoints" / ("value" + std::string(name))).string());
    Environment env(rc.scenario);
    const EpisodeTrace trace = run_episode(env, trainer.policy(), rc.scenario.env.seed, true);
    const KpiValues k = compute_kpis(trace, checkpoints, 1.0, rays.inner_radius, rays.outer_radius);
    eval_log << update << ',' << timesteps << ',' << csv::format_double(k.kappa2) << ','
             << csv::format_double(k.kappa_reach) << ',' << csv::format_double(k.kappa_dist) << ','
             << csv::format_double(k.kappa_danger) << ',' << trace.steps() << ',' << to_string(trace.cause) << '\n';
    eval_log.flush();
    if (opts.progress) {
      *opts.progress << "update " << update << "/" << total << "  timesteps " << timesteps << "  kappa2 "
                     << k.kappa2 << "  reach " << k.kappa_reach << "  (" << to_string(trace.cause) << ")\n";
    }
  };

  trainer.train([&](const UpdateLog& l) {
    log << format_train_log_row(l) << '\n';
    if (opts.checkpoint_every > 0 && l.update % opts.checkpoint_every == 0 && l.update != total) {
      log.flush();
      checkpoint(l.update, l.timesteps);
    }
  });
  log.flush();
  checkpoint(trainer.updates(), trainer.timesteps());
  save_weights(trainer.policy(), (opts.out / "policy.json").string());
  save_weights(trainer.value_net(), (opts.out / "value.json").string());
}

// --- evaluation -------------------------------------------------------------

struct EvalOptions {
  std::uint64_t seed = 0;  // episode i uses seed + i
  int episodes = 1;
  bool deterministic = false;
  int checkpoint_count = 50;
  std::uint64_t checkpoint_seed = 0;
  double tolerance = 1.0;
  fs::path out;  // traces and report; nothing written if empty
};

struct EpisodeReport {
  std::uint64_t seed = 0;
  KpiValues kpis;
  std::size_t steps = 0;
  Termination cause = Termination::kNone;
};

struct EvalReport {
  std::vector<Vec2> checkpoints;
  std::vector<EpisodeReport> episodes;
  KpiValues mean;
};

inline void check_policy_matches(const DenseNet& policy) {
  const std::vector<int> expected_io{static_cast<int>(Observation::kSize), ControlGrid::kSize};
  const auto& s = policy.layer_sizes();
  if (policy.head() != Head::kSoftmax || s.front() != expected_io[0] || s.back() != expected_io[1]) {
    throw ConfigError("weights do not describe a policy for this scenario: need a softmax head with " +
                      std::to_string(expected_io[0]) + " inputs and " + std::to_string(expected_io[1]) + " outputs");
  }
}

inline nlohmann::ordered_json kpis_to_json(const KpiValues& k) {
  return {{"kappa2", k.kappa2},
          {"kappa_reach", k.kappa_reach},
          {"kappa_dist", k.kappa_dist},
          {"kappa_danger", k.kappa_danger}};
}

inline EvalReport evaluate_policy(const Scenario& scenario, const DenseNet& policy, const EvalOptions& opts) {
  check_policy_matches(policy);
  if (opts.episodes < 1) throw ConfigError("--episodes must be >= 1");
  EvalReport rep;
  rep.checkpoints = sample_checkpoints(scenario.path, opts.checkpoint_count, opts.checkpoint_seed);
  const auto& rays = scenario.env.rays;
  Environment env(scenario);
  for (int i = 0; i < opts.episodes; ++i) {
    EpisodeReport e;
    e.seed = opts.seed + static_cast<std::uint64_t>(i);
    const EpisodeTrace trace = run_episode(env, policy, e.seed, opts.deterministic);
    e.kpis = compute_kpis(trace, rep.checkpoints, opts.tolerance, rays.inner_radius, rays.outer_radius);
    e.steps = trace.steps();
    e.cause = trace.cause;
    if (!opts.out.empty()) {
      char name[32];
      std::snprintf(name, sizeof name, "trace_%03d.csv", i);
      write_trace_csv(trace, (opts.out / name).string());
    }
    rep.mean.kappa2 += e.kpis.kappa2 / opts.episodes;
    rep.mean.kappa_reach += e.kpis.kappa_reach / opts.episodes;
    rep.mean.kappa_dist += e.kpis.kappa_dist / opts.episodes;
    rep.mean.kappa_danger += e.kpis.kappa_danger / opts.episodes;
    rep.episodes.push_back(e);
  }
  return rep;
}

inline nlohmann::ordered_json eval_report_to_json(const EvalReport& rep, const EvalOptions& opts) {
  nlohmann::ordered_json j = kpis_to_json(rep.mean);
  nlohmann::ordered_json cps = nlohmann::ordered_json::array();
  for (const auto& c : rep.checkpoints) cps.push_back({c.x, c.y});
  j["checkpoints"] = cps;
  j["tolerance"] = opts.tolerance;
  j["seed"] = opts.seed;
  j["checkpoint_seed"] = opts.checkpoint_seed;
  j["deterministic"] = opts.deterministic;
  j["reach_rule"] = "checkpoints must be reached in order; an unreached checkpoint blocks later ones";
  j["mean"] = kpis_to_json(rep.mean);
  nlohmann::ordered_json eps = nlohmann::ordered_json::array();
  for (const auto& e : rep.episodes) {
    nlohmann::ordered_json ej = {{"seed", e.seed}};
    ej.update(kpis_to_json(e.kpis));
    ej["steps"] = e.steps;
    ej["termination"] = to_string(e.cause);
    eps.push_back(ej);
  }
  j["episodes"] = eps;
  return j;
}

// --- plotting ---------------------------------------------------------------

namespace detail {

struct Series {
  std::vector<double> x, y;
};

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void add(double v) {
    if (std::isfinite(v)) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  void pad() {
    if (!(hi > lo)) {
      lo -= 1.0;
      hi += 1.0;
    }
    const double m = 0.05 * (hi - lo);
    lo -= m;
    hi += m;
  }
};

inline std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

class Panel {
 public:
  Panel(double x0, double y0, double w, double h, Range xr, Range yr, bool equal_aspect = false)
      : x0_(x0), y0_(y0), w_(w), h_(h), xr_(xr), yr_(yr) {
    xr_.pad();
    yr_.pad();
    if (equal_aspect) {
      const double sx = w_ / (xr_.hi - xr_.lo), sy = h_ / (yr_.hi - yr_.lo);
      const double s = std::min(sx, sy);
      const double cx = 0.5 * (xr_.lo + xr_.hi), cy = 0.5 * (yr_.lo + yr_.hi);
      xr_ = {cx - 0.5 * w_ / s, cx + 0.5 * w_ / s};
      yr_ = {cy - 0.5 * h_ / s, cy + 0.5 * h_ / s};
    }
  }
  double px(double x) const { return x0_ + (x - xr_.lo) / (xr_.hi - xr_.lo) * w_; }
  double py(double y) const { return y0_ + h_ - (y - yr_.lo) / (yr_.hi - yr_.lo) * h_; }
  double scale() const { return w_ / (xr_.hi - xr_.lo); }

  void frame(std::ostream& o, const std::string& title, const std::string& xlabel, const std::string& ylabel) const {
    o << "<rect x=\"" << fmt(x0_) << "\" y=\"" << fmt(y0_) << "\" width=\"" << fmt(w_) << "\" height=\"" << fmt(h_)
      << "\" fill=\"none\" stroke=\"#444\"/>\n";
    o << "<text x=\"" << fmt(x0_ + w_ / 2) << "\" y=\"" << fmt(y0_ - 8) << "\" text-anchor=\"middle\">" << title
      << "</text>\n";
    o << "<text x=\"" << fmt(x0_ + w_ / 2) << "\" y=\"" << fmt(y0_ + h_ + 32) << "\" text-anchor=\"middle\">"
      << xlabel << "</text>\n";
    o << "<text x=\"" << fmt(x0_ - 40) << "\" y=\"" << fmt(y0_ + h_ / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 "
      << fmt(x0_ - 40) << ' ' << fmt(y0_ + h_ / 2) << ")\">" << ylabel << "</text>\n";
    o << "<text x=\"" << fmt(x0_) << "\" y=\"" << fmt(y0_ + h_ + 16) << "\" font-size=\"10\">" << fmt(xr_.lo)
      << "</text>\n";
    o << "<text x=\"" << fmt(x0_ + w_) << "\" y=\"" << fmt(y0_ + h_ + 16) << "\" font-size=\"10\" text-anchor=\"end\">"
      << fmt(xr_.hi) << "</text>\n";
    o << "<text x=\"" << fmt(x0_ - 4) << "\" y=\"" << fmt(y0_ + h_) << "\" font-size=\"10\" text-anchor=\"end\">"
      << fmt(yr_.lo) << "</text>\n";
    o << "<text x=\"" << fmt(x0_ - 4) << "\" y=\"" << fmt(y0_ + 10) << "\" font-size=\"10\" text-anchor=\"end\">"
      << fmt(yr_.hi) << "</text>\n";
  }

  void line(std::ostream& o, const Series& s, const std::string& color, bool dashed = false) const {
    if (s.x.empty()) return;
    o << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.2\"" << (dashed ? " stroke-dasharray=\"4 3\"" : "")
      << " points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i) o << (i ? " " : "") << fmt(px(s.x[i])) << ',' << fmt(py(s.y[i]));
    o << "\"/>\n";
  }

 private:
  double x0_, y0_, w_, h_;
  Range xr_, yr_;
};

}  // namespace detail

/// Four panels: trajectory vs path (with obstacles), controls, clipped
/// cross-track error, speed vs target speed (v + x2).
inline std::string render_episode_svg(const EpisodeTrace& trace, const Path& path,
                                      const std::vector<Obstacle>& obstacles) {
  using detail::Panel;
  using detail::Range;
  using detail::Series;
  if (trace.rows.empty()) throw InvalidArgument("trace has no rows");
  Series drive, target, u1, u2, ex, v, vt;
  Range xr, yr, tr, ur, er, vr;
  for (const auto& r : trace.rows) {
    drive.x.push_back(r.state.position.x);
    drive.y.push_back(r.state.position.y);
    u1.x.push_back(r.t);
    u1.y.push_back(r.state.prev_control.accel);
    u2.x.push_back(r.t);
    u2.y.push_back(r.state.prev_control.steer);
    ex.x.push_back(r.t);
    ex.y.push_back(r.obs.cross_track);
    v.x.push_back(r.t);
    v.y.push_back(r.state.speed);
    vt.x.push_back(r.t);
    vt.y.push_back(r.state.speed + r.obs.speed_error);
    xr.add(r.state.position.x);
    yr.add(r.state.position.y);
    tr.add(r.t);
    er.add(r.obs.cross_track);
    vr.add(r.state.speed);
    vr.add(r.state.speed + r.obs.speed_error);
  }
  for (std::size_t i = 0; i < path.size(); ++i) {
    target.x.push_back(path[i].position.x);
    target.y.push_back(path[i].position.y);
    xr.add(path[i].position.x);
    yr.add(path[i].position.y);
  }
  ur.add(-1.0);
  ur.add(1.0);

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"1000\" height=\"760\" font-family=\"sans-serif\" "
       "font-size=\"12\">\n<rect width=\"1000\" height=\"760\" fill=\"white\"/>\n";
  const Panel traj(70, 40, 400, 300, xr, yr, true);
  traj.frame(o, "trajectory", "x [m]", "y [m]");
  for (const auto& ob : obstacles) {
    if (const auto* c = std::get_if<Circle>(&ob)) {
      o << "<circle cx=\"" << detail::fmt(traj.px(c->center.x)) << "\" cy=\"" << detail::fmt(traj.py(c->center.y))
        << "\" r=\"" << detail::fmt(c->radius * traj.scale()) << "\" fill=\"#d55\" fill-opacity=\"0.5\"/>\n";
    } else if (const auto* b = std::get_if<Rect>(&ob)) {
      o << "<rect x=\"" << detail::fmt(traj.px(b->center.x - b->width / 2)) << "\" y=\""
        << detail::fmt(traj.py(b->center.y + b->height / 2)) << "\" width=\"" << detail::fmt(b->width * traj.scale())
        << "\" height=\"" << detail::fmt(b->height * traj.scale()) << "\" fill=\"#d55\" fill-opacity=\"0.5\"/>\n";
    }
  }
  traj.line(o, target, "#888", true);
  traj.line(o, drive, "#1f5fbf");

  const Panel ctrl(560, 40, 400, 300, tr, ur);
  ctrl.frame(o, "controls (u1 blue, u2 orange)", "t [s]", "u");
  ctrl.line(o, u1, "#1f5fbf");
  ctrl.line(o, u2, "#e08020");

  const Panel err(70, 420, 400, 280, tr, er);
  err.frame(o, "clipped cross-track error x1", "t [s]", "x1 [m]");
  err.line(o, ex, "#1f5fbf");

  const Panel spd(560, 420, 400, 280, tr, vr);
  spd.frame(o, "speed (blue) vs target (grey)", "t [s]", "v [m/s]");
  spd.line(o, vt, "#888", true);
  spd.line(o, v, "#1f5fbf");
  o << "</svg>\n";
  return o.str();
}

// --- weights ----------------------------------------------------------------

inline std::string describe_weights(const DenseNet& net) {
  std::ostringstream o;
  o << "head: " << to_string(net.head()) << "\nactivation: tanh\nlayer_sizes:";
  for (int s : net.layer_sizes()) o << ' ' << s;
  o << "\nparameters: " << net.parameter_count() << '\n';
  for (std::size_t l = 0; l + 1 < net.layer_sizes().size(); ++l) {
    const auto w = net.weights(l);
    const auto b = net.biases(l);
    o << "layer " << l << ": " << w.rows() << "x" << w.cols() << "  |W|_F " << w.norm() << "  W in [" << w.minCoeff()
      << ", " << w.maxCoeff() << "]  |b| " << b.norm() << '\n';
  }
  return o.str();
}

// --- entry point ------------------------------------------------------------

/// Parses argv and runs one subcommand; returns the process exit code.
inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Reactive path tracking with a PPO-trained discrete controller"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Expand all help");

  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> total_timesteps;
  std::string out_dir;
  int checkpoint_every = 100;
  bool quiet = false;
  auto* train = app.add_subcommand("train", "Train policy and value networks");
  train->add_option("--config", config, "Scenario/run JSON (default: built-in figure-8)");
  train->add_option("--seed", seed, "Training seed (default: env_params.seed)");
  train->add_option("--total-timesteps", total_timesteps, "Override ppo.total_timesteps")->check(CLI::PositiveNumber);
  train->add_option("--out", out_dir, "Run directory")->required();
  train->add_option("--checkpoint-every", checkpoint_every, "Checkpoint interval in updates (0: final only)")
      ->check(CLI::NonNegativeNumber);
  train->add_flag("--quiet", quiet, "No progress output");

  std::string weights;
  int episodes = 1;
  bool deterministic = false;
  int n_checkpoints = 50;
  std::optional<std::uint64_t> checkpoint_seed;
  double tolerance = 1.0;
  auto* eval = app.add_subcommand("eval", "Roll out a policy and report KPIs");
  eval->add_option("--weights", weights, "Policy weight file")->required();
  eval->add_option("--config", config, "Scenario JSON (default: built-in figure-8)");
  eval->add_option("--seed", seed, "Seed of the first episode (default: env_params.seed)");
  eval->add_option("--episodes", episodes, "Number of episodes")->check(CLI::PositiveNumber);
  eval->add_flag("--deterministic", deterministic, "Take the most probable action");
  eval->add_option("--out", out_dir, "Directory for traces and kpi_report.json")->required();
  eval->add_option("--checkpoints", n_checkpoints, "Reach checkpoints")->check(CLI::PositiveNumber);
  eval->add_option("--checkpoint-seed", checkpoint_seed, "Checkpoint sampling seed (default: env_params.seed)");
  eval->add_option("--tolerance", tolerance, "Reach tolerance [m]")->check(CLI::PositiveNumber);

  std::string trace_file, path_file, obstacles_file, svg_file;
  auto* plot = app.add_subcommand("plot", "Render an episode trace as SVG");
  plot->add_option("--trace", trace_file, "Trace CSV")->required();
  plot->add_option("--path", path_file, "Path CSV")->required();
  plot->add_option("--obstacles", obstacles_file, "Obstacle CSV");
  plot->add_option("--out", svg_file, "SVG output file")->required();

  auto* inspect = app.add_subcommand("inspect-weights", "Summarise a weight file");
  inspect->add_option("--weights", weights, "Weight file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }

  auto load_config = [&]() { return config.empty() ? default_run_config() : load_run_config(config); };

  try {
    if (*train) {
      RunConfig rc = load_config();
      if (total_timesteps) {
        rc.ppo.total_timesteps = *total_timesteps;
        try {
          rc.ppo.validate();
        } catch (const InvalidArgument& e) {
          throw ConfigError(std::string("--total-timesteps: ") + e.what());
        }
      }
      rc.ppo.threads = std::min(effective_threads(rc.ppo.threads), rc.ppo.n_envs);
      TrainOptions opts;
      opts.seed = seed.value_or(rc.scenario.env.seed);
      opts.out = out_dir;
      opts.checkpoint_every = checkpoint_every;
      opts.progress = quiet ? nullptr : &out;
      run_training(rc, opts);
      out << "wrote " << (fs::path(out_dir) / "policy.json").string() << '\n';
      return kExitOk;
    }
    if (*eval) {
      const RunConfig rc = load_config();
      const DenseNet policy = load_weights(weights);
      EvalOptions opts;
      opts.seed = seed.value_or(rc.scenario.env.seed);
      opts.episodes = episodes;
      opts.deterministic = deterministic;
      opts.checkpoint_count = n_checkpoints;
      opts.checkpoint_seed = checkpoint_seed.value_or(rc.scenario.env.seed);
      opts.tolerance = tolerance;
      opts.out = out_dir;
      fs::create_directories(opts.out);
      const EvalReport rep = evaluate_policy(rc.scenario, policy, opts);
      detail::write_text(opts.out / "kpi_report.json", eval_report_to_json(rep, opts).dump(2) + "\n");
      out << "kappa2 " << rep.mean.kappa2 << "  kappa_reach " << rep.mean.kappa_reach << "  kappa_dist "
          << rep.mean.kappa_dist << "  kappa_danger " << rep.mean.kappa_danger << '\n';
      return kExitOk;
    }
    if (*plot) {
      const EpisodeTrace trace = read_trace_csv(trace_file);
      if (trace.rows.empty()) throw ConfigError(trace_file + ": trace has no rows");
      const Path path = read_path_csv(path_file);
      const std::vector<Obstacle> obstacles =
          obstacles_file.empty() ? std::vector<Obstacle>{} : read_obstacles_csv(obstacles_file);
      detail::write_text(svg_file, render_episode_svg(trace, path, obstacles));
      return kExitOk;
    }
    if (*inspect) {
      out << describe_weights(load_weights(weights));
      return kExitOk;
    }
  } catch (const TrainingAborted& e) {
    err << "training aborted: " << e.what() << '\n';
    return kExitAborted;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const LoadError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitFailure;
}

}  // namespace rtrack

#endif  // RTRACK_CLI_HPP_
