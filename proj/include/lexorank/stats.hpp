#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace lexorank {

/// Finite real sample, sorted ascending on construction.
class EmpiricalSample {
 public:
  /// Throws InvalidParameter when empty or when a value is not finite.
  explicit EmpiricalSample(std::vector<double> values);

  std::size_t size() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }

 private:
  std::vector<double> values_;
};

/// W_2 between the empirical measure (mass 1/m on each value) and U[0,1].
/// Under the monotone coupling the i-th order statistic is matched with the
/// quantiles in [(i-1)/m, i/m), and each interval integrates in closed form.
double w2_to_uniform(const EmpiricalSample& sample);

/// W_2 between the uniform law on the grid {1/n, 2/n, ..., 1} and U[0,1]:
/// the law of the (right-endpoint) image of a fixed interval under a uniform
/// random cyclic permutation of n intervals. Equals 1/(sqrt(3) n).
double w2_grid(std::size_t n);

/// sup_x |F_m(x) - clamp(x, 0, 1)|.
double ks_to_uniform(const EmpiricalSample& sample);

/// Raw moments 1..k.
std::vector<double> moments(const EmpiricalSample& sample, std::size_t k);

double mean(const EmpiricalSample& sample);

/// Population variance (divides by m).
double variance(const EmpiricalSample& sample);

/// Least-squares slope of log(y) against log(x).
double log_log_slope(std::span<const double> x, std::span<const double> y);

}  // namespace lexorank
