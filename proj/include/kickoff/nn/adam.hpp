#ifndef KICKOFF_NN_ADAM_HPP_
#define KICKOFF_NN_ADAM_HPP_

#include <cstdint>
#include <span>
#include <vector>

namespace kickoff::nn {

struct AdamConfig {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

// Bias-corrected Adam. A step with any non-finite gradient entry is rejected
// wholesale (parameters and moments untouched) and counted.
class Adam {
 public:
  Adam(std::size_t n, AdamConfig cfg = {});

  // Returns false iff the step was rejected for non-finite gradients.
  bool step(std::span<double> params, std::span<const double> grads, double lr);

  std::uint64_t steps() const { return t_; }
  std::uint64_t rejected() const { return rejected_; }
  const AdamConfig& config() const { return cfg_; }
  std::span<const double> m() const { return m_; }
  std::span<const double> v() const { return v_; }

  void restore(std::uint64_t t, std::uint64_t rejected, std::span<const double> m,
               std::span<const double> v);

 private:
  AdamConfig cfg_;
  std::vector<double> m_, v_;
  std::uint64_t t_ = 0;
  std::uint64_t rejected_ = 0;
};

}  // namespace kickoff::nn

#endif  // KICKOFF_NN_ADAM_HPP_
