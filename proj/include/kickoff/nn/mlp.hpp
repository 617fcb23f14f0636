#ifndef KICKOFF_NN_MLP_HPP_
#define KICKOFF_NN_MLP_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "kickoff/common/rng.hpp"

namespace kickoff::nn {

enum class Activation : std::uint8_t { kIdentity = 0, kTanh = 1 };

// Hidden layers are always ReLU (subgradient 0 at exactly 0); only the
// output nonlinearity varies between heads.
struct MlpSpec {
  std::vector<std::size_t> layer_sizes;  // [input, hidden..., output], >= 2 entries
  Activation output = Activation::kIdentity;
  double output_gain = 1.0;  // orthogonal-init gain of the last layer

  std::size_t input_dim() const { return layer_sizes.front(); }
  std::size_t output_dim() const { return layer_sizes.back(); }
  std::size_t layer_count() const { return layer_sizes.size() - 1; }
  bool operator==(const MlpSpec&) const = default;
};

struct ForwardCache {
  // inputs[l] is the activation entering layer l (inputs[0] = network input);
  // preacts[l] is W·inputs[l] + b before the nonlinearity.
  std::vector<std::vector<double>> inputs;
  std::vector<std::vector<double>> preacts;
};

// Flat-parameter MLP with exact analytic gradients, f64 throughout.
// Layout per layer: weight matrix row-major (out x in), then bias (out).
class Mlp {
 public:
  explicit Mlp(MlpSpec spec);       // zero parameters (for deserialization)
  Mlp(MlpSpec spec, Rng& rng);      // orthogonal init, gain sqrt(2) hidden

  const MlpSpec& spec() const { return spec_; }
  std::size_t input_dim() const { return spec_.input_dim(); }
  std::size_t output_dim() const { return spec_.output_dim(); }
  std::size_t parameter_count() const { return params_.size(); }

  std::span<const double> parameters() const { return params_; }
  std::span<double> mutable_parameters() {
    ++version_;
    return params_;
  }
  std::uint64_t version() const { return version_; }
  void set_version(std::uint64_t v) { version_ = v; }

  std::size_t weight_offset(std::size_t layer) const { return w_off_[layer]; }
  std::size_t bias_offset(std::size_t layer) const { return b_off_[layer]; }

  std::vector<double> forward(std::span<const double> x) const;
  std::vector<double> forward(std::span<const double> x, ForwardCache& cache) const;

  // Given d(loss)/d(output), accumulates parameter gradients into `grad`
  // (same layout/size as parameters; caller owns zeroing) and returns
  // d(loss)/d(input).
  std::vector<double> backward(const ForwardCache& cache, std::span<const double> dy,
                               std::span<double> grad) const;

 private:
  MlpSpec spec_;
  std::vector<double> params_;
  std::vector<std::size_t> w_off_, b_off_;
  std::uint64_t version_ = 0;
};

// Fills `w` (rows x cols, row-major) with a gain-scaled orthogonal matrix
// (orthonormal rows or columns, whichever fit). Exposed for init tests.
void orthogonal_init(std::span<double> w, std::size_t rows, std::size_t cols,
                     double gain, Rng& rng);

double global_norm(std::span<const double> xs);

// Scales `xs` down so its global L2 norm is at most `max_norm`.
void clip_global_norm(std::span<double> xs, double max_norm);

}  // namespace kickoff::nn

#endif  // KICKOFF_NN_MLP_HPP_
