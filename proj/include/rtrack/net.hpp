#ifndef RTRACK_NET_HPP_
#define RTRACK_NET_HPP_

// Dense tanh networks with a softmax (policy) or identity (value) head.
//
// Parameters live in one flat vector so that optimisers, gradient clipping and
// serialisation can treat them uniformly. Layer l occupies
//   [ W_l (out x in, column-major) | b_l (out) ]
// in that vector.

#include <Eigen/Dense>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "rtrack/errors.hpp"
#include "rtrack/random.hpp"

namespace rtrack {

enum class Head { kSoftmax, kIdentity };

inline const char* to_string(Head h) { return h == Head::kSoftmax ? "softmax" : "identity"; }

/// Same layout as the parameters of the network it belongs to.
struct Gradient {
  std::vector<int> layer_sizes;
  Eigen::VectorXd values;

  Gradient& operator+=(const Gradient& o) {
    if (o.layer_sizes != layer_sizes) throw InvalidArgument("gradient shape mismatch");
    values += o.values;
    return *this;
  }
};

/// Intermediate activations of a batched forward pass, kept for backprop.
struct ForwardCache {
  Eigen::MatrixXd input;                    // in x B
  std::vector<Eigen::MatrixXd> activations; // tanh outputs of each hidden layer
  Eigen::MatrixXd output;                   // pre-head values (logits for softmax), out x B
};

/// Numerically stable softmax (shifted by the maximum).
inline Eigen::VectorXd softmax(const Eigen::VectorXd& z) {
  const Eigen::VectorXd e = (z.array() - z.maxCoeff()).exp();
  return e / e.sum();
}

/// Column-wise log-softmax of a logits matrix.
inline Eigen::MatrixXd log_softmax_columns(const Eigen::MatrixXd& logits) {
  Eigen::MatrixXd out(logits.rows(), logits.cols());
  for (Eigen::Index c = 0; c < logits.cols(); ++c) {
    const double m = logits.col(c).maxCoeff();
    const double lse = m + std::log((logits.col(c).array() - m).exp().sum());
    out.col(c) = logits.col(c).array() - lse;
  }
  return out;
}

class DenseNet {
 public:
  DenseNet() = default;

  DenseNet(std::vector<int> layer_sizes, Head head) : sizes_(std::move(layer_sizes)), head_(head) {
    if (sizes_.size() < 2) throw InvalidArgument("network needs at least input and output layer");
    for (int s : sizes_) {
      if (s <= 0) throw InvalidArgument("layer sizes must be positive");
    }
    offsets_.push_back(0);
    for (std::size_t l = 0; l + 1 < sizes_.size(); ++l) {
      offsets_.push_back(offsets_.back() + static_cast<Eigen::Index>(sizes_[l + 1]) * (sizes_[l] + 1));
    }
    params_ = Eigen::VectorXd::Zero(offsets_.back());
  }

  const std::vector<int>& layer_sizes() const { return sizes_; }
  Head head() const { return head_; }
  std::size_t layer_count() const { return sizes_.size() - 1; }
  int input_size() const { return sizes_.front(); }
  int output_size() const { return sizes_.back(); }
  Eigen::Index parameter_count() const { return params_.size(); }

  Eigen::VectorXd& parameters() { return params_; }
  const Eigen::VectorXd& parameters() const { return params_; }

  Eigen::Map<Eigen::MatrixXd> weights(std::size_t l) {
    return {params_.data() + offsets_[l], sizes_[l + 1], sizes_[l]};
  }
  Eigen::Map<const Eigen::MatrixXd> weights(std::size_t l) const {
    return {params_.data() + offsets_[l], sizes_[l + 1], sizes_[l]};
  }
  Eigen::Map<Eigen::VectorXd> biases(std::size_t l) {
    return {params_.data() + offsets_[l] + static_cast<Eigen::Index>(sizes_[l + 1]) * sizes_[l], sizes_[l + 1]};
  }
  Eigen::Map<const Eigen::VectorXd> biases(std::size_t l) const {
    return {params_.data() + offsets_[l] + static_cast<Eigen::Index>(sizes_[l + 1]) * sizes_[l], sizes_[l + 1]};
  }

  Gradient zero_gradient() const { return {sizes_, Eigen::VectorXd::Zero(params_.size())}; }

  /// Pre-head output (logits for the policy head).
  Eigen::VectorXd forward_raw(std::span<const double> input) const {
    check_input(input);
    Eigen::VectorXd h = Eigen::Map<const Eigen::VectorXd>(input.data(), static_cast<Eigen::Index>(input.size()));
    for (std::size_t l = 0; l < layer_count(); ++l) {
      Eigen::VectorXd z = weights(l) * h + biases(l);
      h = l + 1 < layer_count() ? Eigen::VectorXd(z.array().tanh()) : z;
    }
    return h;
  }

  /// Network output: a probability vector for the softmax head.
  Eigen::VectorXd forward(std::span<const double> input) const {
    Eigen::VectorXd z = forward_raw(input);
    return head_ == Head::kSoftmax ? softmax(z) : z;
  }

  /// Batched pre-head forward pass over the columns of `inputs`.
  ForwardCache forward_batch(const Eigen::MatrixXd& inputs) const {
    if (inputs.rows() != input_size()) throw InvalidArgument("batch input has wrong row count");
    ForwardCache cache;
    cache.input = inputs;
    const Eigen::MatrixXd* h = &cache.input;
    for (std::size_t l = 0; l < layer_count(); ++l) {
      Eigen::MatrixXd z = weights(l) * (*h);
      z.colwise() += biases(l);
      if (l + 1 < layer_count()) {
        cache.activations.emplace_back(z.array().tanh());
        h = &cache.activations.back();
      } else {
        cache.output = std::move(z);
      }
    }
    return cache;
  }

  /// Gradient of sum over columns of <output_grad_col, pre-head output_col>.
  Gradient backward_batch(const ForwardCache& cache, const Eigen::MatrixXd& raw_output_grad) const {
    if (raw_output_grad.rows() != output_size() || raw_output_grad.cols() != cache.input.cols()) {
      throw InvalidArgument("output gradient shape mismatch");
    }
    Gradient g = zero_gradient();
    Eigen::MatrixXd delta = raw_output_grad;
    for (std::size_t l = layer_count(); l-- > 0;) {
      const Eigen::MatrixXd& below = l == 0 ? cache.input : cache.activations[l - 1];
      const Eigen::Index rows = sizes_[l + 1];
      const Eigen::Index cols = sizes_[l];
      Eigen::Map<Eigen::MatrixXd>(g.values.data() + offsets_[l], rows, cols).noalias() = delta * below.transpose();
      Eigen::Map<Eigen::VectorXd>(g.values.data() + offsets_[l] + rows * cols, rows) = delta.rowwise().sum();
      if (l > 0) {
        Eigen::MatrixXd up = weights(l).transpose() * delta;
        delta = up.array() * (1.0 - below.array().square());
      }
    }
    return g;
  }

  /// Reverse-mode gradient of the scalar loss L with dL/d(output) = output_grad,
  /// where output is the post-head value returned by forward().
  Gradient backward(std::span<const double> input, std::span<const double> output_grad) const {
    check_input(input);
    if (static_cast<int>(output_grad.size()) != output_size()) {
      throw InvalidArgument("output gradient has size " + std::to_string(output_grad.size()) + ", expected " +
                            std::to_string(output_size()));
    }
    const Eigen::Map<const Eigen::VectorXd> x(input.data(), static_cast<Eigen::Index>(input.size()));
    const ForwardCache cache = forward_batch(Eigen::MatrixXd(x));
    Eigen::VectorXd g = Eigen::Map<const Eigen::VectorXd>(output_grad.data(), output_size());
    if (head_ == Head::kSoftmax) {
      const Eigen::VectorXd p = softmax(cache.output.col(0));
      g = (p.array() * (g.array() - p.dot(g))).matrix();  // softmax Jacobian-vector product
    }
    return backward_batch(cache, Eigen::MatrixXd(g));
  }

 private:
  void check_input(std::span<const double> input) const {
    if (static_cast<int>(input.size()) != input_size()) {
      throw InvalidArgument("input has size " + std::to_string(input.size()) + ", expected " +
                            std::to_string(input_size()));
    }
    for (double v : input) {
      if (!std::isfinite(v)) throw InvalidArgument("non-finite network input");
    }
  }

  std::vector<int> sizes_;
  Head head_ = Head::kIdentity;
  std::vector<Eigen::Index> offsets_;
  Eigen::VectorXd params_;
};

inline DenseNet make_policy_net(int hidden = 64) { return DenseNet({7, hidden, hidden, 121}, Head::kSoftmax); }
inline DenseNet make_value_net(int hidden = 64) { return DenseNet({7, hidden, hidden, 1}, Head::kIdentity); }

/// Orthogonal matrix of the given shape (orthonormal rows or columns,
/// whichever is fewer) scaled by `gain`.
inline Eigen::MatrixXd orthogonal_matrix(Eigen::Index rows, Eigen::Index cols, double gain, Rng& rng) {
  const Eigen::Index big = std::max(rows, cols);
  const Eigen::Index small = std::min(rows, cols);
  Eigen::MatrixXd a(big, small);
  for (Eigen::Index c = 0; c < small; ++c) {
    for (Eigen::Index r = 0; r < big; ++r) a(r, c) = standard_normal(rng);
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(big, small);
  // Sign fix makes the distribution uniform (Haar).
  const Eigen::MatrixXd r = qr.matrixQR().topRows(small).triangularView<Eigen::Upper>();
  for (Eigen::Index c = 0; c < small; ++c) {
    if (r(c, c) < 0.0) q.col(c) *= -1.0;
  }
  Eigen::MatrixXd w = rows >= cols ? q : Eigen::MatrixXd(q.transpose());
  return w * gain;
}

/// Orthogonal init: gain sqrt(2) on hidden layers, `head_gain` on the output
/// layer, zero biases.
inline void orthogonal_init(DenseNet& net, double head_gain, Rng& rng) {
  for (std::size_t l = 0; l < net.layer_count(); ++l) {
    const double gain = l + 1 < net.layer_count() ? std::sqrt(2.0) : head_gain;
    net.weights(l) = orthogonal_matrix(net.layer_sizes()[l + 1], net.layer_sizes()[l], gain, rng);
    net.biases(l).setZero();
  }
}

inline void validate_distribution(std::span<const double> dist) {
  if (dist.empty()) throw InvalidArgument("empty probability distribution");
  double sum = 0.0;
  for (double p : dist) {
    if (!std::isfinite(p) || p < 0.0) throw InvalidArgument("probability distribution has invalid entry");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-6) throw InvalidArgument("probability distribution does not sum to 1");
}

/// Inverse-CDF sampling with one uniform draw from `rng`.
inline int sample_action(std::span<const double> dist, Rng& rng) {
  validate_distribution(dist);
  const double u = uniform01(rng);
  double acc = 0.0;
  int last_positive = 0;
  for (std::size_t i = 0; i < dist.size(); ++i) {
    if (dist[i] > 0.0) last_positive = static_cast<int>(i);
    acc += dist[i];
    if (u < acc && dist[i] > 0.0) return static_cast<int>(i);
  }
  return last_positive;
}

/// Most probable action; ties go to the lowest index.
inline int argmax_action(std::span<const double> dist) {
  validate_distribution(dist);
  std::size_t best = 0;
  for (std::size_t i = 1; i < dist.size(); ++i) {
    if (dist[i] > dist[best]) best = i;
  }
  return static_cast<int>(best);
}

// ---------------------------------------------------------------------------
// Weight files
//
// JSON envelope:
//   { "format_version": 1, "layer_sizes": [...], "activation": "tanh",
//     "head": "softmax" | "identity",
//     "layers": [ { "weights": [[row 0], [row 1], ...], "biases": [...] }, ... ] }
// Weight rows are indexed by output neuron. Numbers use 17 significant digits
// and always carry a decimal point or exponent.

inline constexpr int kWeightFormatVersion = 1;

namespace detail {

inline std::string format_weight(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  std::string s(buf);
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

}  // namespace detail

inline std::string weights_to_string(const DenseNet& net) {
  for (Eigen::Index i = 0; i < net.parameter_count(); ++i) {
    if (!std::isfinite(net.parameters()[i])) throw InvalidArgument("cannot save non-finite parameters");
  }
  std::ostringstream out;
  out << "{\n  \"format_version\": " << kWeightFormatVersion << ",\n  \"layer_sizes\": [";
  for (std::size_t i = 0; i < net.layer_sizes().size(); ++i) out << (i ? ", " : "") << net.layer_sizes()[i];
  out << "],\n  \"activation\": \"tanh\",\n  \"head\": \"" << to_string(net.head()) << "\",\n  \"layers\": [\n";
  for (std::size_t l = 0; l < net.layer_count(); ++l) {
    const auto w = net.weights(l);
    const auto b = net.biases(l);
    out << "    {\n      \"weights\": [\n";
    for (Eigen::Index r = 0; r < w.rows(); ++r) {
      out << "        [";
      for (Eigen::Index c = 0; c < w.cols(); ++c) out << (c ? ", " : "") << detail::format_weight(w(r, c));
      out << (r + 1 < w.rows() ? "],\n" : "]\n");
    }
    out << "      ],\n      \"biases\": [";
    for (Eigen::Index r = 0; r < b.size(); ++r) out << (r ? ", " : "") << detail::format_weight(b[r]);
    out << "]\n    }" << (l + 1 < net.layer_count() ? ",\n" : "\n");
  }
  out << "  ]\n}\n";
  return out.str();
}

inline void save_weights(const DenseNet& net, const std::string& file) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw LoadError(file + ": cannot open for writing");
  out << weights_to_string(net);
  if (!out) throw LoadError(file + ": write failed");
}

inline DenseNet weights_from_string(const std::string& text, const std::string& source = "<weights>") {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw LoadError(source + ": malformed weight file: " + e.what());
  }
  try {
    if (!j.is_object()) throw LoadError(source + ": weight file is not a JSON object");
    if (!j.contains("format_version")) throw LoadError(source + ": missing format_version");
    const int version = j.at("format_version").get<int>();
    if (version != kWeightFormatVersion) {
      throw UnsupportedVersion(source + ": unsupported weight format version " + std::to_string(version) +
                               " (supported: " + std::to_string(kWeightFormatVersion) + ")");
    }
    const auto sizes = j.at("layer_sizes").get<std::vector<int>>();
    if (j.at("activation").get<std::string>() != "tanh") throw LoadError(source + ": unsupported activation");
    const auto head_name = j.at("head").get<std::string>();
    Head head;
    if (head_name == "softmax") {
      head = Head::kSoftmax;
    } else if (head_name == "identity") {
      head = Head::kIdentity;
    } else {
      throw LoadError(source + ": unknown head '" + head_name + "'");
    }
    DenseNet net(sizes, head);
    const auto& layers = j.at("layers");
    if (!layers.is_array() || layers.size() != net.layer_count()) {
      throw LoadError(source + ": expected " + std::to_string(net.layer_count()) + " layers");
    }
    for (std::size_t l = 0; l < net.layer_count(); ++l) {
      const std::string where = source + ": layer " + std::to_string(l);
      const auto& rows = layers[l].at("weights");
      const auto& biases = layers[l].at("biases");
      auto w = net.weights(l);
      auto b = net.biases(l);
      if (!rows.is_array() || static_cast<Eigen::Index>(rows.size()) != w.rows()) {
        throw LoadError(where + ": weights has " + std::to_string(rows.size()) + " rows, expected " +
                        std::to_string(w.rows()));
      }
      for (Eigen::Index r = 0; r < w.rows(); ++r) {
        const auto& row = rows[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != w.cols()) {
          throw LoadError(where + ": weights row " + std::to_string(r) + " has wrong length, expected " +
                          std::to_string(w.cols()));
        }
        for (Eigen::Index c = 0; c < w.cols(); ++c) w(r, c) = row[static_cast<std::size_t>(c)].get<double>();
      }
      if (!biases.is_array() || static_cast<Eigen::Index>(biases.size()) != b.size()) {
        throw LoadError(where + ": biases has " + std::to_string(biases.size()) + " entries, expected " +
                        std::to_string(b.size()));
      }
      for (Eigen::Index r = 0; r < b.size(); ++r) b[r] = biases[static_cast<std::size_t>(r)].get<double>();
    }
    return net;
  } catch (const nlohmann::json::exception& e) {
    throw LoadError(source + ": invalid weight file: " + e.what());
  } catch (const InvalidArgument& e) {
    throw LoadError(source + ": " + e.what());
  }
}

inline DenseNet load_weights(const std::string& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw LoadError(file + ": cannot open weight file");
  std::stringstream ss;
  ss << in.rdbuf();
  return weights_from_string(ss.str(), file);
}

}  // namespace rtrack

#endif  // RTRACK_NET_HPP_
