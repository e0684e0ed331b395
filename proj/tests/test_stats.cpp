#include <doctest.h>

#include <cmath>

#include "lexorank/error.hpp"
#include "lexorank/sim.hpp"
#include "lexorank/stats.hpp"
#include "oracles.hpp"

using namespace lexorank;

namespace {

std::vector<double> grid(std::size_t n) {
  std::vector<double> out;
  for (std::size_t k = 1; k <= n; ++k) out.push_back(static_cast<double>(k) / static_cast<double>(n));
  return out;
}

}  // namespace

TEST_CASE("w2_to_uniform closed forms") {
  CHECK(w2_to_uniform(EmpiricalSample({0.5})) == doctest::Approx(std::sqrt(1.0 / 12)).epsilon(1e-12));
  for (std::size_t n : {1u, 2u, 7u, 100u}) {
    CHECK(w2_to_uniform(EmpiricalSample(grid(n))) ==
          doctest::Approx(1.0 / (std::sqrt(3.0) * static_cast<double>(n))).epsilon(1e-12));
  }
  CHECK(w2_to_uniform(EmpiricalSample(std::vector<double>(17, 0.0))) ==
        doctest::Approx(std::sqrt(1.0 / 3)).epsilon(1e-12));
  CHECK_THROWS_AS(EmpiricalSample({}), Error);
  CHECK_THROWS_AS(EmpiricalSample({0.1, NAN}), Error);
}

TEST_CASE("w2_to_uniform matches quadrature") {
  Rng rng = stream_rng(99, 0, 0);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<double> values(1 + rng() % 40);
    for (auto& v : values) v = 1.5 * uniform01(rng);
    const double expected = oracle::w2_quadrature(values);
    CHECK(w2_to_uniform(EmpiricalSample(values)) == doctest::Approx(expected).epsilon(1e-5));
  }
}

TEST_CASE("w2_grid") {
  CHECK(w2_grid(1) == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-12));
  CHECK(w2_grid(2) == doctest::Approx(0.28867513459481287).epsilon(1e-12));
  CHECK(w2_grid(100) == doctest::Approx(0.005773502691896258).epsilon(1e-12));
  for (std::size_t n : {1u, 2u, 100u}) CHECK(w2_grid(n) <= std::sqrt(1.0 / static_cast<double>(n)));
  CHECK_THROWS_AS(w2_grid(0), Error);
}

TEST_CASE("midpoint grid is the closest m-point sample to U[0,1]") {
  // Each order statistic is optimally placed at the midpoint of its quantile
  // cell, giving 1/(2 sqrt(3) m); the right-endpoint grid sits at twice that.
  auto floor_of = [](std::size_t m) { return 1.0 / (2.0 * std::sqrt(3.0) * static_cast<double>(m)); };
  for (std::size_t m : {1u, 5u, 64u}) {
    std::vector<double> mid;
    for (std::size_t k = 1; k <= m; ++k) mid.push_back((k - 0.5) / static_cast<double>(m));
    CHECK(w2_to_uniform(EmpiricalSample(mid)) == doctest::Approx(floor_of(m)).epsilon(1e-12));
    CHECK(w2_grid(m) == doctest::Approx(2 * floor_of(m)).epsilon(1e-12));
  }
  Rng rng = stream_rng(100, 0, 0);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t m = 1 + rng() % 50;
    std::vector<double> values(m);
    for (auto& v : values) v = uniform01(rng);
    const EmpiricalSample s(values);
    const double d = w2_to_uniform(s);
    CHECK(d >= floor_of(m) - 1e-15);
    // mean deviation is bounded by the coupling distance
    CHECK(std::abs(mean(s) - 0.5) <= d + 1e-15);
  }
}

TEST_CASE("ks_to_uniform") {
  CHECK(ks_to_uniform(EmpiricalSample({0.5})) == doctest::Approx(0.5));
  CHECK(ks_to_uniform(EmpiricalSample(grid(8))) == doctest::Approx(1.0 / 8));
  CHECK(ks_to_uniform(EmpiricalSample({0.0, 0.0, 0.0})) == doctest::Approx(1.0));

  Rng rng = stream_rng(101, 0, 0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> values(1 + rng() % 30);
    for (auto& v : values) v = 1.2 * uniform01(rng) - 0.1;
    CHECK(ks_to_uniform(EmpiricalSample(values)) ==
          doctest::Approx(oracle::ks_probe(values)).epsilon(1e-12));
  }
}

TEST_CASE("moments") {
  CHECK(moments(EmpiricalSample({0.0, 1.0}), 2) == std::vector<double>{0.5, 0.5});
  CHECK(moments(EmpiricalSample({0.5}), 3) == std::vector<double>{0.5, 0.25, 0.125});
  const auto big = moments(EmpiricalSample(grid(100000)), 2);
  CHECK(big[0] == doctest::Approx(0.5).epsilon(1e-4));
  CHECK(big[1] == doctest::Approx(1.0 / 3).epsilon(1e-4));
  CHECK_THROWS_AS(moments(EmpiricalSample({0.5}), 0), Error);
  CHECK(variance(EmpiricalSample({0.0, 1.0})) == 0.25);
}

TEST_CASE("log_log_slope") {
  const std::vector<double> x{1, 10, 100};
  const std::vector<double> y{1, 0.1, 0.01};
  CHECK(log_log_slope(x, y) == doctest::Approx(-1.0));
  const std::vector<double> y2{3, 3 / std::sqrt(10.0), 0.3};
  CHECK(log_log_slope(x, y2) == doctest::Approx(-0.5));
  CHECK_THROWS_AS(log_log_slope(std::vector<double>{1}, std::vector<double>{1}), Error);
}
