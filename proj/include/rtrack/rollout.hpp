#ifndef RTRACK_ROLLOUT_HPP_
#define RTRACK_ROLLOUT_HPP_

#include <cstdint>

#include "rtrack/env.hpp"
#include "rtrack/kpi.hpp"
#include "rtrack/net.hpp"
#include "rtrack/random.hpp"

namespace rtrack {

/// Drives one episode with the policy and records every step. In
/// deterministic mode the most probable action is taken; otherwise actions are
/// sampled from a stream seeded with `seed`.
inline EpisodeTrace run_episode(Environment& env, const DenseNet& policy, std::uint64_t seed, bool deterministic) {
  Rng rng(derive_seed(seed, 0xAC7));
  EpisodeTrace trace;
  Observation obs = env.reset(seed);
  const double dt = env.scenario().vehicle.dt;
  trace.rows.push_back({0.0, env.state(), obs});
  while (true) {
    const auto x = obs.values();
    const Eigen::VectorXd p = policy.forward(x);
    const std::span<const double> dist(p.data(), static_cast<std::size_t>(p.size()));
    const int action = deterministic ? argmax_action(dist) : sample_action(dist, rng);
    const StepResult r = env.step(action);
    obs = r.observation;
    trace.rows.push_back({env.steps() * dt, env.state(), obs});
    if (r.terminated) {
      trace.cause = r.cause;
      break;
    }
  }
  return trace;
}

}  // namespace rtrack

#endif  // RTRACK_ROLLOUT_HPP_
