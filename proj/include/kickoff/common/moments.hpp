#ifndef KICKOFF_COMMON_MOMENTS_HPP_
#define KICKOFF_COMMON_MOMENTS_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

namespace kickoff {

// Streaming mean/variance over scalars (Welford, batch merges via Chan's
// update). Population variance. Used for value-target and bonus scaling.
class RunningMoments {
 public:
  void observe(double x) {
    count_ += 1.0;
    const double delta = x - mean_;
    mean_ += delta / count_;
    m2_ += delta * (x - mean_);
  }

  void observe_batch(std::span<const double> xs) {
    for (double x : xs) observe(x);
  }

  double count() const { return count_; }
  double mean() const { return count_ > 0.0 ? mean_ : 0.0; }

  double variance() const {
    if (count_ <= 0.0) return 1.0;
    return std::max(m2_ / count_, 0.0);
  }

  // Std with a floor so normalize/denormalize stay exact inverses.
  double stddev() const { return std::max(std::sqrt(variance()), 1e-8); }

  double normalize(double x) const { return (x - mean()) / stddev(); }
  double denormalize(double z) const { return z * stddev() + mean(); }

  double raw_mean() const { return mean_; }
  double raw_m2() const { return m2_; }
  void restore(double count, double mean, double m2) {
    count_ = count;
    mean_ = mean;
    m2_ = m2;
  }

 private:
  double count_ = 0.0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

// Per-dimension running moments for vector inputs.
class VectorMoments {
 public:
  VectorMoments() = default;
  explicit VectorMoments(std::size_t dim) : dims_(dim) {}

  std::size_t dim() const { return dims_.size(); }

  void observe(std::span<const double> x) {
    if (dims_.empty()) dims_.resize(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) dims_[i].observe(x[i]);
  }

  void normalize(std::span<const double> x, std::span<double> out) const {
    for (std::size_t i = 0; i < x.size(); ++i) {
      out[i] = i < dims_.size() ? dims_[i].normalize(x[i]) : x[i];
    }
  }

  double count() const { return dims_.empty() ? 0.0 : dims_[0].count(); }

  const std::vector<RunningMoments>& dims() const { return dims_; }
  std::vector<RunningMoments>& dims() { return dims_; }

 private:
  std::vector<RunningMoments> dims_;
};

}  // namespace kickoff

#endif  // KICKOFF_COMMON_MOMENTS_HPP_
