#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lexorank {

/// Letters are dense 1-based indices; letter 1 is the smallest.
using Letter = std::uint32_t;

/// Per-stream generator used throughout the library.
using Rng = std::mt19937_64;

/// Uniform double in [0, 1) from the top 53 bits of one draw. Spelled out
/// instead of std::uniform_real_distribution so that streams are identical
/// across standard libraries.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// A totally ordered alphabet a_1 < a_2 < ... with strictly positive
/// letter probabilities. Either finite, or geometric with p_i = (1-q) q^(i-1).
/// Immutable after construction.
class WeightedAlphabet {
 public:
  enum class Kind { Finite, Geometric };

  static constexpr double kSumTolerance = 1e-12;

  /// Throws InvalidParameter unless every probability is in (0,1], the sum is
  /// 1 within kSumTolerance, and p_1 < 1.
  static WeightedAlphabet finite(std::vector<double> probabilities);

  /// Degenerate alphabets (p_1 = 1) are only useful for exercising the sampler.
  static WeightedAlphabet finite_unchecked_degenerate(std::vector<double> probabilities);

  static WeightedAlphabet geometric(double q);

  /// "0.5,0.3,0.2" or "geom:0.5". Throws Parse naming the bad token.
  static WeightedAlphabet parse(std::string_view text);

  Kind kind() const noexcept { return kind_; }
  bool is_finite() const noexcept { return kind_ == Kind::Finite; }

  /// Number of letters; throws Unsupported for geometric alphabets.
  std::size_t size() const;

  /// p_i for letter i >= 1. Throws InvalidLetter when out of range.
  double probability(Letter letter) const;

  double p1() const noexcept;

  /// (sum_i p_i^alpha)^(1/alpha). Geometric alphabets use the closed form
  /// (1-q)/(1-q^alpha)^(1/alpha).
  double norm(double alpha) const;

  /// Product of letter probabilities.
  double word_weight(std::span<const Letter> word) const;

  /// Inverse-CDF draw.
  Letter sample(Rng& rng) const;

  /// Round-trips through parse().
  std::string to_string() const;

 private:
  WeightedAlphabet() = default;

  Kind kind_ = Kind::Finite;
  std::vector<double> probs_;
  std::vector<double> cumulative_;
  double q_ = 0.0;
  double log_q_ = 0.0;
};

}  // namespace lexorank
