#include "kickoff/nn/mlp.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>

namespace kickoff::nn {
namespace {

void check_spec(const MlpSpec& spec) {
  if (spec.layer_sizes.size() < 2) throw std::invalid_argument("mlp: need >= 2 layer sizes");
  for (std::size_t s : spec.layer_sizes)
    if (s == 0) throw std::invalid_argument("mlp: zero-width layer");
}

// Householder QR of a (m x n, m >= n) gaussian matrix; writes the Q factor
// (orthonormal columns, sign-fixed so the distribution is uniform) into q.
void householder_q(std::vector<double>& a, std::size_t m, std::size_t n,
                   std::vector<double>& q) {
  std::vector<std::vector<double>> vs(n);
  std::vector<double> diag_sign(n, 1.0);
  for (std::size_t k = 0; k < n; ++k) {
    double norm2 = 0.0;
    for (std::size_t i = k; i < m; ++i) norm2 += a[i * n + k] * a[i * n + k];
    double norm = std::sqrt(norm2);
    double akk = a[k * n + k];
    double alpha = akk >= 0.0 ? -norm : norm;
    std::vector<double> v(m - k, 0.0);
    for (std::size_t i = k; i < m; ++i) v[i - k] = a[i * n + k];
    v[0] -= alpha;
    double vnorm2 = 0.0;
    for (double x : v) vnorm2 += x * x;
    if (vnorm2 > 0.0) {
      for (std::size_t j = k; j < n; ++j) {
        double dot = 0.0;
        for (std::size_t i = k; i < m; ++i) dot += v[i - k] * a[i * n + j];
        double scale = 2.0 * dot / vnorm2;
        for (std::size_t i = k; i < m; ++i) a[i * n + j] -= scale * v[i - k];
      }
    }
    vs[k] = std::move(v);
    diag_sign[k] = a[k * n + k] >= 0.0 ? 1.0 : -1.0;
  }
  // q = H_0 ... H_{n-1} · I(m x n)
  q.assign(m * n, 0.0);
  for (std::size_t j = 0; j < n; ++j) q[j * n + j] = 1.0;
  for (std::size_t k = n; k-- > 0;) {
    const auto& v = vs[k];
    double vnorm2 = 0.0;
    for (double x : v) vnorm2 += x * x;
    if (vnorm2 == 0.0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      double dot = 0.0;
      for (std::size_t i = k; i < m; ++i) dot += v[i - k] * q[i * n + j];
      double scale = 2.0 * dot / vnorm2;
      for (std::size_t i = k; i < m; ++i) q[i * n + j] -= scale * v[i - k];
    }
  }
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < m; ++i) q[i * n + j] *= diag_sign[j];
}

}  // namespace

void orthogonal_init(std::span<double> w, std::size_t rows, std::size_t cols,
                     double gain, Rng& rng) {
  assert(w.size() == rows * cols);
  const bool flip = rows < cols;
  const std::size_t m = flip ? cols : rows;
  const std::size_t n = flip ? rows : cols;
  std::vector<double> a(m * n);
  for (double& x : a) x = rng.gaussian();
  std::vector<double> q;
  householder_q(a, m, n, q);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      w[r * cols + c] = gain * (flip ? q[c * n + r] : q[r * n + c]);
}

Mlp::Mlp(MlpSpec spec) : spec_(std::move(spec)) {
  check_spec(spec_);
  std::size_t total = 0;
  for (std::size_t l = 0; l < spec_.layer_count(); ++l) {
    const std::size_t in = spec_.layer_sizes[l], out = spec_.layer_sizes[l + 1];
    w_off_.push_back(total);
    total += in * out;
    b_off_.push_back(total);
    total += out;
  }
  params_.assign(total, 0.0);
}

Mlp::Mlp(MlpSpec spec, Rng& rng) : Mlp(std::move(spec)) {
  const double hidden_gain = std::sqrt(2.0);
  for (std::size_t l = 0; l < spec_.layer_count(); ++l) {
    const std::size_t in = spec_.layer_sizes[l], out = spec_.layer_sizes[l + 1];
    const bool last = l + 1 == spec_.layer_count();
    const double gain = last ? spec_.output_gain : hidden_gain;
    orthogonal_init(std::span<double>(params_.data() + w_off_[l], in * out), out, in,
                    gain, rng);
    // biases stay zero
  }
}

std::vector<double> Mlp::forward(std::span<const double> x) const {
  ForwardCache cache;
  return forward(x, cache);
}

std::vector<double> Mlp::forward(std::span<const double> x, ForwardCache& cache) const {
  if (x.size() != spec_.input_dim()) throw std::invalid_argument("mlp: input size mismatch");
  const std::size_t layers = spec_.layer_count();
  cache.inputs.assign(layers, {});
  cache.preacts.assign(layers, {});
  std::vector<double> act(x.begin(), x.end());
  for (std::size_t l = 0; l < layers; ++l) {
    const std::size_t in = spec_.layer_sizes[l], out = spec_.layer_sizes[l + 1];
    cache.inputs[l] = act;
    const double* w = params_.data() + w_off_[l];
    const double* b = params_.data() + b_off_[l];
    std::vector<double> z(out);
    for (std::size_t o = 0; o < out; ++o) {
      double s = b[o];
      const double* row = w + o * in;
      for (std::size_t i = 0; i < in; ++i) s += row[i] * act[i];
      z[o] = s;
    }
    cache.preacts[l] = z;
    const bool last = l + 1 == layers;
    if (!last) {
      for (double& v : z) v = v > 0.0 ? v : 0.0;
    } else if (spec_.output == Activation::kTanh) {
      for (double& v : z) v = std::tanh(v);
    }
    act = std::move(z);
  }
  return act;
}

std::vector<double> Mlp::backward(const ForwardCache& cache, std::span<const double> dy,
                                  std::span<double> grad) const {
  const std::size_t layers = spec_.layer_count();
  if (cache.inputs.size() != layers || cache.preacts.size() != layers)
    throw std::invalid_argument("mlp: cache does not match network");
  if (dy.size() != spec_.output_dim() || grad.size() != params_.size())
    throw std::invalid_argument("mlp: gradient size mismatch");

  std::vector<double> delta(dy.begin(), dy.end());
  if (spec_.output == Activation::kTanh) {
    const auto& z = cache.preacts[layers - 1];
    for (std::size_t o = 0; o < delta.size(); ++o) {
      const double t = std::tanh(z[o]);
      delta[o] *= 1.0 - t * t;
    }
  }
  for (std::size_t l = layers; l-- > 0;) {
    const std::size_t in = spec_.layer_sizes[l], out = spec_.layer_sizes[l + 1];
    const auto& input = cache.inputs[l];
    const double* w = params_.data() + w_off_[l];
    double* gw = grad.data() + w_off_[l];
    double* gb = grad.data() + b_off_[l];
    for (std::size_t o = 0; o < out; ++o) {
      const double d = delta[o];
      gb[o] += d;
      double* grow = gw + o * in;
      for (std::size_t i = 0; i < in; ++i) grow[i] += d * input[i];
    }
    if (l == 0) {
      std::vector<double> dx(in, 0.0);
      for (std::size_t o = 0; o < out; ++o) {
        const double d = delta[o];
        const double* row = w + o * in;
        for (std::size_t i = 0; i < in; ++i) dx[i] += d * row[i];
      }
      return dx;
    }
    // propagate through the previous layer's ReLU (subgradient 0 at 0)
    const auto& zprev = cache.preacts[l - 1];
    std::vector<double> next(in, 0.0);
    for (std::size_t o = 0; o < out; ++o) {
      const double d = delta[o];
      const double* row = w + o * in;
      for (std::size_t i = 0; i < in; ++i) next[i] += d * row[i];
    }
    for (std::size_t i = 0; i < in; ++i)
      if (zprev[i] <= 0.0) next[i] = 0.0;
    delta = std::move(next);
  }
  return {};
}

double global_norm(std::span<const double> xs) {
  double s = 0.0;
  for (double x : xs) s += x * x;
  return std::sqrt(s);
}

void clip_global_norm(std::span<double> xs, double max_norm) {
  const double n = global_norm(xs);
  if (n > max_norm && n > 0.0) {
    const double scale = max_norm / n;
    for (double& x : xs) x *= scale;
  }
}

}  // namespace kickoff::nn
