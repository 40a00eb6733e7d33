#ifndef RTRACK_PPO_HPP_
#define RTRACK_PPO_HPP_

// Proximal policy optimisation with separate policy and value networks,
// generalised advantage estimation and Adam.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <functional>
#include <numeric>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "rtrack/env.hpp"
#include "rtrack/errors.hpp"
#include "rtrack/net.hpp"
#include "rtrack/random.hpp"

namespace rtrack {

struct PpoConfig {
  int steps_per_rollout = 128;  // T
  int n_envs = 8;               // E
  int epochs = 10;
  int minibatches = 4;
  double clip_ratio = 0.2;
  double gamma = 0.99;
  double gae_lambda = 0.95;
  double learning_rate = 2.5e-4;
  double ent_coef = 0.0;
  double vf_coef = 0.5;
  double max_grad_norm = 0.5;
  double adam_eps = 1e-5;
  std::int64_t total_timesteps = 1'000'000;
  int threads = 1;  // environment-pool parallelism; results do not depend on it

  // Training scenario curriculum: each episode is obstacle-free or carries one
  // random circular obstacle on the path.
  double obstacle_episode_fraction = 0.5;
  double curriculum_radius_min = 0.5;
  double curriculum_radius_max = 1.0;
  double curriculum_margin = 8.0;
  // Training episodes end early once |e_x| exceeds this many metres (0 = off).
  double offtrack_limit = 4.0;
  // Training episodes also end once the vehicle has been slower than
  // stall_speed for stall_steps consecutive steps (stall_steps = 0: off).
  double stall_speed = 1.0;
  int stall_steps = 30;
  // Share of training episodes starting at a uniformly drawn waypoint, moving
  // at that waypoint's target speed, instead of from rest at the first one.
  double random_start_fraction = 0.5;
  // Goal and timeout endings bootstrap from the value of the final state, so
  // that finishing is not mistaken for losing all future reward.
  bool bootstrap_on_truncation = true;

  std::int64_t batch_size() const { return static_cast<std::int64_t>(steps_per_rollout) * n_envs; }
  std::int64_t update_count() const { return total_timesteps / batch_size(); }

  void validate() const {
    if (steps_per_rollout < 1 || n_envs < 1) throw InvalidArgument("ppo: T and E must be >= 1");
    if (epochs < 1 || minibatches < 1) throw InvalidArgument("ppo: epochs and minibatches must be >= 1");
    if (batch_size() % minibatches != 0) throw InvalidArgument("ppo: minibatch count must divide T*E");
    if (!(clip_ratio > 0.0 && clip_ratio < 1.0)) throw InvalidArgument("ppo: clip ratio must lie in (0, 1)");
    if (!(gamma > 0.0 && gamma <= 1.0)) throw InvalidArgument("ppo: gamma must lie in (0, 1]");
    if (!(gae_lambda > 0.0 && gae_lambda <= 1.0)) throw InvalidArgument("ppo: gae_lambda must lie in (0, 1]");
    if (!(learning_rate >= 0.0)) throw InvalidArgument("ppo: learning rate must be >= 0");
    if (!(ent_coef >= 0.0) || !(vf_coef >= 0.0)) throw InvalidArgument("ppo: loss coefficients must be >= 0");
    if (!(max_grad_norm > 0.0)) throw InvalidArgument("ppo: max_grad_norm must be > 0");
    if (!(adam_eps > 0.0)) throw InvalidArgument("ppo: adam_eps must be > 0");
    if (total_timesteps < batch_size()) throw InvalidArgument("ppo: total_timesteps must be >= T*E");
    if (!(offtrack_limit >= 0.0)) throw InvalidArgument("ppo: offtrack_limit must be >= 0");
    if (!(random_start_fraction >= 0.0 && random_start_fraction <= 1.0)) {
      throw InvalidArgument("ppo: random_start_fraction must lie in [0, 1]");
    }
    if (!(stall_speed >= 0.0) || stall_steps < 0) throw InvalidArgument("ppo: stall limits must be >= 0");
    if (threads < 1) throw InvalidArgument("ppo: threads must be >= 1");
    if (!(obstacle_episode_fraction >= 0.0 && obstacle_episode_fraction <= 1.0)) {
      throw InvalidArgument("ppo: obstacle_episode_fraction must lie in [0, 1]");
    }
    if (!(curriculum_radius_min > 0.0) || curriculum_radius_max < curriculum_radius_min) {
      throw InvalidArgument("ppo: curriculum radii must satisfy 0 < min <= max");
    }
  }
};

struct GaeResult {
  std::vector<double> advantages;
  std::vector<double> returns;
};

/// Backward GAE recursion over one environment's time-ordered sequence.
/// `dones[t]` marks that the episode ended after step t (no bootstrapping
/// across it); `bootstrap_value` is the value of the state after the last step.
inline GaeResult compute_gae(std::span<const double> rewards, std::span<const double> values,
                             std::span<const std::uint8_t> dones, double bootstrap_value, double gamma,
                             double lambda) {
  if (rewards.size() != values.size() || rewards.size() != dones.size()) {
    throw InvalidArgument("compute_gae: rewards, values and dones must have equal length");
  }
  const std::size_t n = rewards.size();
  GaeResult r;
  r.advantages.assign(n, 0.0);
  r.returns.assign(n, 0.0);
  double next_value = bootstrap_value;
  double next_adv = 0.0;
  for (std::size_t t = n; t-- > 0;) {
    const double live = dones[t] ? 0.0 : 1.0;
    const double delta = rewards[t] + gamma * next_value * live - values[t];
    next_adv = delta + gamma * lambda * live * next_adv;
    r.advantages[t] = next_adv;
    r.returns[t] = next_adv + values[t];
    next_value = values[t];
  }
  return r;
}

class Adam {
 public:
  Adam() = default;
  Adam(Eigen::Index n, double eps, double beta1 = 0.9, double beta2 = 0.999)
      : m_(Eigen::VectorXd::Zero(n)), v_(Eigen::VectorXd::Zero(n)), beta1_(beta1), beta2_(beta2), eps_(eps) {}

  void step(Eigen::VectorXd& params, const Eigen::VectorXd& grad, double lr) {
    ++t_;
    m_ = beta1_ * m_ + (1.0 - beta1_) * grad;
    v_ = beta2_ * v_ + (1.0 - beta2_) * grad.cwiseProduct(grad);
    const double c1 = 1.0 - std::pow(beta1_, static_cast<double>(t_));
    const double c2 = 1.0 - std::pow(beta2_, static_cast<double>(t_));
    params.array() -= lr * (m_.array() / c1) / ((v_.array() / c2).sqrt() + eps_);
  }

  std::int64_t steps() const { return t_; }

 private:
  Eigen::VectorXd m_;
  Eigen::VectorXd v_;
  double beta1_ = 0.9;
  double beta2_ = 0.999;
  double eps_ = 1e-8;
  std::int64_t t_ = 0;
};

/// Fixed-capacity T x E transition storage; flat index = t * E + e.
struct RolloutBuffer {
  int steps = 0;
  int envs = 0;
  Eigen::MatrixXd observations;  // 7 x (T*E)
  std::vector<int> actions;
  std::vector<double> log_probs;
  std::vector<double> values;
  std::vector<double> rewards;
  std::vector<std::uint8_t> dones;
  std::vector<double> bootstrap_values;  // per env
  std::vector<double> advantages;
  std::vector<double> returns;
  bool finalized = false;

  RolloutBuffer() = default;
  RolloutBuffer(int t, int e) : steps(t), envs(e) {
    const auto n = static_cast<std::size_t>(t) * static_cast<std::size_t>(e);
    observations = Eigen::MatrixXd::Zero(Observation::kSize, static_cast<Eigen::Index>(n));
    actions.assign(n, 0);
    log_probs.assign(n, 0.0);
    values.assign(n, 0.0);
    rewards.assign(n, 0.0);
    dones.assign(n, 0);
    bootstrap_values.assign(static_cast<std::size_t>(e), 0.0);
  }

  std::size_t size() const { return actions.size(); }
  std::size_t index(int t, int e) const { return static_cast<std::size_t>(t) * envs + static_cast<std::size_t>(e); }

  /// Computes per-environment advantages and returns once all T steps are in.
  void finalize(double gamma, double lambda) {
    advantages.assign(size(), 0.0);
    returns.assign(size(), 0.0);
    std::vector<double> r(static_cast<std::size_t>(steps)), v(r.size());
    std::vector<std::uint8_t> d(r.size());
    for (int e = 0; e < envs; ++e) {
      for (int t = 0; t < steps; ++t) {
        const auto i = index(t, e);
        r[static_cast<std::size_t>(t)] = rewards[i];
        v[static_cast<std::size_t>(t)] = values[i];
        d[static_cast<std::size_t>(t)] = dones[i];
      }
      const auto g = compute_gae(r, v, d, bootstrap_values[static_cast<std::size_t>(e)], gamma, lambda);
      for (int t = 0; t < steps; ++t) {
        advantages[index(t, e)] = g.advantages[static_cast<std::size_t>(t)];
        returns[index(t, e)] = g.returns[static_cast<std::size_t>(t)];
      }
    }
    finalized = true;
  }
};

/// Shifts and scales to zero mean, unit (population) standard deviation; the
/// standard deviation is floored at 1e-8.
inline void normalize_advantages(std::vector<double>& adv) {
  if (adv.empty()) return;
  const double n = static_cast<double>(adv.size());
  const double mean = std::accumulate(adv.begin(), adv.end(), 0.0) / n;
  double var = 0.0;
  for (double a : adv) var += (a - mean) * (a - mean);
  const double sd = std::max(std::sqrt(var / n), 1e-8);
  for (double& a : adv) a = (a - mean) / sd;
}

/// Rescales `g` to norm at most `max_norm`; returns the norm before clipping.
inline double clip_grad_norm(Eigen::VectorXd& g, double max_norm) {
  const double norm = g.norm();
  if (!std::isfinite(norm)) throw TrainingAborted("non-finite gradient norm");
  if (norm > max_norm) g *= max_norm / (norm + 1e-6);
  return norm;
}

struct PpoStats {
  double policy_loss = 0.0;
  double value_loss = 0.0;
  double entropy = 0.0;
  double clip_fraction = 0.0;
  double approx_kl = 0.0;
  double grad_norm = 0.0;  // policy gradient norm before clipping, averaged over minibatches
};

/// Loss and logit/value gradients for one minibatch; exposed for tests.
struct MinibatchLoss {
  double policy_loss = 0.0;  // -mean(min(rho A, clip(rho) A))
  double value_loss = 0.0;   // mean((V - R)^2)
  double entropy = 0.0;      // mean entropy of the new policy
  double clip_fraction = 0.0;
  double approx_kl = 0.0;    // mean((rho - 1) - log rho)
  double total = 0.0;
  Eigen::MatrixXd logit_grad;  // d total / d logits, 121 x B
  Eigen::MatrixXd value_grad;  // d total / d V, 1 x B
};

inline MinibatchLoss minibatch_loss(const Eigen::MatrixXd& logits, const Eigen::RowVectorXd& values,
                                    std::span<const int> actions, std::span<const double> old_log_probs,
                                    std::span<const double> advantages, std::span<const double> returns,
                                    double clip_ratio, double ent_coef, double vf_coef) {
  const Eigen::Index b = logits.cols();
  const double inv_b = 1.0 / static_cast<double>(b);
  MinibatchLoss out;
  const Eigen::MatrixXd logp = log_softmax_columns(logits);
  const Eigen::MatrixXd prob = logp.array().exp();
  out.logit_grad = Eigen::MatrixXd::Zero(logits.rows(), b);
  out.value_grad = Eigen::MatrixXd::Zero(1, b);
  for (Eigen::Index i = 0; i < b; ++i) {
    const auto u = static_cast<std::size_t>(i);
    const int a = actions[u];
    const double log_ratio = logp(a, i) - old_log_probs[u];
    const double ratio = std::exp(log_ratio);
    const double adv = advantages[u];
    const double clipped_ratio = std::clamp(ratio, 1.0 - clip_ratio, 1.0 + clip_ratio);
    const double unclipped = ratio * adv;
    const double clipped = clipped_ratio * adv;
    out.policy_loss -= std::min(unclipped, clipped) * inv_b;
    // d min(.)/d log pi(a): the unclipped branch carries gradient, the clipped
    // one only while the ratio is inside the trust region.
    const bool inside = ratio >= 1.0 - clip_ratio && ratio <= 1.0 + clip_ratio;
    const double dlogpi = (unclipped <= clipped || inside) ? -adv * ratio * inv_b : 0.0;
    if (std::abs(ratio - 1.0) > clip_ratio) out.clip_fraction += inv_b;
    out.approx_kl += ((ratio - 1.0) - log_ratio) * inv_b;

    double h = 0.0;
    for (Eigen::Index j = 0; j < logits.rows(); ++j) h -= prob(j, i) * logp(j, i);
    out.entropy += h * inv_b;

    // d log pi(a) / dz = onehot(a) - p;  d(-c_e H / B) / dz_j = c_e / B * p_j (log p_j + H)
    auto g = out.logit_grad.col(i);
    g = -dlogpi * prob.col(i);
    g(a) += dlogpi;
    g.array() += ent_coef * inv_b * prob.col(i).array() * (logp.col(i).array() + h);

    const double err = values(i) - returns[u];
    out.value_loss += err * err * inv_b;
    out.value_grad(0, i) = 2.0 * vf_coef * err * inv_b;
  }
  out.total = out.policy_loss + vf_coef * out.value_loss - ent_coef * out.entropy;
  return out;
}

/// Epochs x shuffled minibatches of clipped-surrogate updates over a finalized
/// buffer. Advantages are normalised once over the whole batch.
inline PpoStats ppo_update(const RolloutBuffer& buffer, DenseNet& policy, DenseNet& value_net, Adam& policy_opt,
                           Adam& value_opt, const PpoConfig& cfg, Rng& rng) {
  if (!buffer.finalized) throw InvalidState("ppo_update: rollout buffer has not been finalized");
  const std::size_t n = buffer.size();
  if (n % static_cast<std::size_t>(cfg.minibatches) != 0) {
    throw InvalidArgument("ppo_update: minibatch count must divide the batch size");
  }
  std::vector<double> adv = buffer.advantages;
  normalize_advantages(adv);

  const std::size_t mb = n / static_cast<std::size_t>(cfg.minibatches);
  std::vector<std::size_t> order(n);
  PpoStats stats;
  int batches = 0;
  Eigen::MatrixXd x(Observation::kSize, static_cast<Eigen::Index>(mb));
  std::vector<int> act(mb);
  std::vector<double> old_lp(mb), a(mb), ret(mb);

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[uniform_index(rng, i)]);
    for (int m = 0; m < cfg.minibatches; ++m) {
      for (std::size_t j = 0; j < mb; ++j) {
        const std::size_t src = order[static_cast<std::size_t>(m) * mb + j];
        x.col(static_cast<Eigen::Index>(j)) = buffer.observations.col(static_cast<Eigen::Index>(src));
        act[j] = buffer.actions[src];
        old_lp[j] = buffer.log_probs[src];
        a[j] = adv[src];
        ret[j] = buffer.returns[src];
      }
      const ForwardCache pc = policy.forward_batch(x);
      const ForwardCache vc = value_net.forward_batch(x);
      const MinibatchLoss loss = minibatch_loss(pc.output, vc.output.row(0), act, old_lp, a, ret, cfg.clip_ratio,
                                                cfg.ent_coef, cfg.vf_coef);
      if (!std::isfinite(loss.total)) {
        throw TrainingAborted("non-finite PPO loss (policy " + std::to_string(loss.policy_loss) + ", value " +
                              std::to_string(loss.value_loss) + ", entropy " + std::to_string(loss.entropy) +
                              ") at epoch " + std::to_string(epoch) + ", minibatch " + std::to_string(m));
      }
      Gradient gp = policy.backward_batch(pc, loss.logit_grad);
      Gradient gv = value_net.backward_batch(vc, loss.value_grad);
      // Each network is clipped on its own: the value loss is on the scale of
      // the returns and would otherwise shrink the policy step below Adam's eps.
      const double norm = clip_grad_norm(gp.values, cfg.max_grad_norm);
      clip_grad_norm(gv.values, cfg.max_grad_norm);
      policy_opt.step(policy.parameters(), gp.values, cfg.learning_rate);
      value_opt.step(value_net.parameters(), gv.values, cfg.learning_rate);

      stats.policy_loss += loss.policy_loss;
      stats.value_loss += loss.value_loss;
      stats.entropy += loss.entropy;
      stats.clip_fraction += loss.clip_fraction;
      stats.approx_kl += loss.approx_kl;
      stats.grad_norm += norm;
      ++batches;
    }
  }
  const double inv = 1.0 / batches;
  stats.policy_loss *= inv;
  stats.value_loss *= inv;
  stats.entropy *= inv;
  stats.clip_fraction *= inv;
  stats.approx_kl *= inv;
  stats.grad_norm *= inv;
  return stats;
}

struct UpdateLog {
  std::int64_t update = 0;  // 1-based
  std::int64_t timesteps = 0;
  double mean_episode_return = std::nan("");  // over the last 100 finished episodes
  double mean_episode_length = std::nan("");
  PpoStats stats;
};

/// Collects rollouts from E environments and runs PPO updates.
class Trainer {
 public:
  Trainer(const Scenario& scenario, const PpoConfig& cfg, std::uint64_t seed)
      : cfg_(cfg), seed_(seed), policy_(make_policy_net()), value_(make_value_net()) {
    cfg_.validate();
    Rng init_rng(derive_seed(seed, 0x1417));
    orthogonal_init(policy_, 0.01, init_rng);
    orthogonal_init(value_, 1.0, init_rng);
    policy_opt_ = Adam(policy_.parameter_count(), cfg_.adam_eps);
    value_opt_ = Adam(value_.parameter_count(), cfg_.adam_eps);
    update_rng_ = Rng(derive_seed(seed, 0x0BDA7E));
    for (int e = 0; e < cfg_.n_envs; ++e) {
      workers_.push_back(Worker{Environment(scenario), Rng(derive_seed(seed, 100 + static_cast<std::uint64_t>(e))),
                                Observation{}, 0.0, 0, 0, {}});
      reset_worker(workers_.back());
    }
  }

  const DenseNet& policy() const { return policy_; }
  const DenseNet& value_net() const { return value_; }
  DenseNet& policy() { return policy_; }
  DenseNet& value_net() { return value_; }
  const PpoConfig& config() const { return cfg_; }
  std::int64_t timesteps() const { return timesteps_; }
  std::int64_t updates() const { return updates_; }

  /// Fills a fresh buffer with T steps from every environment.
  RolloutBuffer collect_rollout() {
    RolloutBuffer buf(cfg_.steps_per_rollout, cfg_.n_envs);
    const int n_threads = std::max(1, std::min(cfg_.threads, cfg_.n_envs));
    if (n_threads == 1) {
      for (int e = 0; e < cfg_.n_envs; ++e) run_worker(e, buf);
    } else {
      std::vector<std::thread> pool;
      for (int w = 0; w < n_threads; ++w) {
        pool.emplace_back([this, w, n_threads, &buf] {
          for (int e = w; e < cfg_.n_envs; e += n_threads) run_worker(e, buf);
        });
      }
      for (auto& t : pool) t.join();
    }
    // Merge finished episodes in (time, env) order so the statistics window
    // does not depend on the thread count.
    std::vector<FinishedEpisode> finished;
    for (auto& w : workers_) {
      finished.insert(finished.end(), w.finished.begin(), w.finished.end());
      w.finished.clear();
    }
    std::stable_sort(finished.begin(), finished.end(),
                     [](const FinishedEpisode& a, const FinishedEpisode& b) { return a.t < b.t; });
    for (const auto& f : finished) {
      recent_.push_back(f);
      if (recent_.size() > 100) recent_.pop_front();
    }
    buf.finalize(cfg_.gamma, cfg_.gae_lambda);
    timesteps_ += buf.size();
    return buf;
  }

  /// One rollout plus one PPO update.
  UpdateLog iterate() {
    const RolloutBuffer buf = collect_rollout();
    UpdateLog log;
    log.stats = ppo_update(buf, policy_, value_, policy_opt_, value_opt_, cfg_, update_rng_);
    ++updates_;
    log.update = updates_;
    log.timesteps = timesteps_;
    if (!recent_.empty()) {
      double r = 0.0, l = 0.0;
      for (const auto& f : recent_) {
        r += f.episode_return;
        l += f.length;
      }
      log.mean_episode_return = r / static_cast<double>(recent_.size());
      log.mean_episode_length = l / static_cast<double>(recent_.size());
    }
    return log;
  }

  /// Runs update_count() iterations; `on_update` sees each log row.
  void train(const std::function<void(const UpdateLog&)>& on_update = {}) {
    const std::int64_t n = cfg_.update_count();
    while (updates_ < n) {
      const UpdateLog log = iterate();
      if (on_update) on_update(log);
    }
  }

 private:
  struct FinishedEpisode {
    int t = 0;
    double episode_return = 0.0;
    int length = 0;
  };

  struct Worker {
    Environment env;
    Rng rng;
    Observation obs;
    double episode_return = 0.0;
    int episode_length = 0;
    int slow_steps = 0;
    std::vector<FinishedEpisode> finished;
  };

  void reset_worker(Worker& w) {
    RandomObstacles extra;
    extra.count = 0;
    if (uniform01(w.rng) < cfg_.obstacle_episode_fraction) {
      extra.count = 1;
      extra.radius_min = cfg_.curriculum_radius_min;
      extra.radius_max = cfg_.curriculum_radius_max;
      extra.margin = cfg_.curriculum_margin;
    }
    Environment::ResetOptions opts;
    opts.obstacles = extra;
    if (uniform01(w.rng) < cfg_.random_start_fraction) {
      const Path& path = w.env.scenario().path;
      opts.start_waypoint = static_cast<std::size_t>(uniform_index(w.rng, path.segment_count()));
      opts.start_speed = path[opts.start_waypoint].target_speed;
    }
    w.obs = w.env.reset(w.rng(), opts);
    w.episode_return = 0.0;
    w.episode_length = 0;
    w.slow_steps = 0;
  }

  void run_worker(int e, RolloutBuffer& buf) {
    Worker& w = workers_[static_cast<std::size_t>(e)];
    for (int t = 0; t < cfg_.steps_per_rollout; ++t) {
      const auto i = buf.index(t, e);
      const auto x = w.obs.values();
      const Eigen::VectorXd logits = policy_.forward_raw(x);
      const Eigen::VectorXd p = softmax(logits);
      const int action = sample_action(std::span<const double>(p.data(), static_cast<std::size_t>(p.size())), w.rng);
      const double lse = logits.maxCoeff() + std::log((logits.array() - logits.maxCoeff()).exp().sum());
      buf.observations.col(static_cast<Eigen::Index>(i)) = Eigen::Map<const Eigen::VectorXd>(x.data(), 7);
      buf.actions[i] = action;
      buf.log_probs[i] = logits(action) - lse;
      buf.values[i] = value_.forward_raw(x)(0);
      const StepResult r = w.env.step(action);
      buf.rewards[i] = r.reward;
      if (cfg_.bootstrap_on_truncation &&
          (r.cause == Termination::kGoal || r.cause == Termination::kTimeout)) {
        const auto xn = r.observation.values();
        buf.rewards[i] += cfg_.gamma * value_.forward_raw(xn)(0);
      }
      const bool offtrack =
          cfg_.offtrack_limit > 0.0 && std::abs(r.info.cross_track_error) > cfg_.offtrack_limit;
      w.slow_steps = w.env.state().speed < cfg_.stall_speed ? w.slow_steps + 1 : 0;
      const bool stalled = cfg_.stall_steps > 0 && w.slow_steps >= cfg_.stall_steps;
      buf.dones[i] = (r.terminated || offtrack || stalled) ? 1 : 0;
      w.episode_return += r.reward;
      ++w.episode_length;
      if (buf.dones[i]) {
        w.finished.push_back({t, w.episode_return, w.episode_length});
        reset_worker(w);
      } else {
        w.obs = r.observation;
      }
    }
    const auto x = w.obs.values();
    buf.bootstrap_values[static_cast<std::size_t>(e)] = value_.forward_raw(x)(0);
  }

  PpoConfig cfg_;
  std::uint64_t seed_;
  DenseNet policy_;
  DenseNet value_;
  Adam policy_opt_;
  Adam value_opt_;
  Rng update_rng_;
  std::vector<Worker> workers_;
  std::deque<FinishedEpisode> recent_;
  std::int64_t timesteps_ = 0;
  std::int64_t updates_ = 0;
};

}  // namespace rtrack

#endif  // RTRACK_PPO_HPP_
