#include "lexorank/stats.hpp"

#include <algorithm>
#include <cmath>

#include "lexorank/error.hpp"

namespace lexorank {

EmpiricalSample::EmpiricalSample(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) {
    throw Error(ErrorKind::InvalidParameter, "empirical sample is empty");
  }
  if (!std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); })) {
    throw Error(ErrorKind::InvalidParameter, "empirical sample holds a non-finite value");
  }
  std::sort(values_.begin(), values_.end());
}

namespace {

// integral over [lo, hi] of (x - t)^2 dt, factored to avoid cancellation when
// hi - lo is small: (hi-lo)/3 * ((hi-x)^2 + (hi-x)(lo-x) + (lo-x)^2).
double squared_distance_integral(double x, double lo, double hi) {
  const double a = lo - x;
  const double b = hi - x;
  return (hi - lo) * (a * a + a * b + b * b) / 3.0;
}

}  // namespace

double w2_to_uniform(const EmpiricalSample& sample) {
  const auto values = sample.values();
  const auto m = static_cast<double>(values.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double lo = static_cast<double>(i) / m;
    const double hi = static_cast<double>(i + 1) / m;
    sum += squared_distance_integral(values[i], lo, hi);
  }
  return std::sqrt(sum);
}

double w2_grid(std::size_t n) {
  if (n < 1) {
    throw Error(ErrorKind::InvalidParameter, "grid size must be >= 1");
  }
  const auto size = static_cast<double>(n);
  double sum = 0.0;
  for (std::size_t k = 1; k <= n; ++k) {
    const double point = static_cast<double>(k) / size;
    sum += squared_distance_integral(point, static_cast<double>(k - 1) / size, point);
  }
  return std::sqrt(sum);
}

double ks_to_uniform(const EmpiricalSample& sample) {
  const auto values = sample.values();
  const auto m = static_cast<double>(values.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double g = std::clamp(values[i], 0.0, 1.0);
    const double above = static_cast<double>(i + 1) / m - g;
    const double below = g - static_cast<double>(i) / m;
    worst = std::max({worst, above, below});
  }
  return worst;
}

std::vector<double> moments(const EmpiricalSample& sample, std::size_t k) {
  if (k < 1) {
    throw Error(ErrorKind::InvalidParameter, "moment order must be >= 1");
  }
  std::vector<double> out(k, 0.0);
  for (double v : sample.values()) {
    double power = 1.0;
    for (std::size_t j = 0; j < k; ++j) {
      power *= v;
      out[j] += power;
    }
  }
  for (double& value : out) value /= static_cast<double>(sample.size());
  return out;
}

double mean(const EmpiricalSample& sample) { return moments(sample, 1).front(); }

double variance(const EmpiricalSample& sample) {
  const double mu = mean(sample);
  double sum = 0.0;
  for (double v : sample.values()) sum += (v - mu) * (v - mu);
  return sum / static_cast<double>(sample.size());
}

double log_log_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw Error(ErrorKind::InvalidParameter, "slope needs at least two paired points");
  }
  const auto count = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) {
      throw Error(ErrorKind::InvalidParameter, "log-log slope needs positive values");
    }
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= count;
  my /= count;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

}  // namespace lexorank
