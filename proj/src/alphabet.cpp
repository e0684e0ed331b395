#include "lexorank/alphabet.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numeric>

#include "lexorank/error.hpp"

namespace lexorank {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidParameter: return "invalid-parameter";
    case ErrorKind::InvalidLetter: return "invalid-letter";
    case ErrorKind::NotBlockable: return "not-blockable";
    case ErrorKind::NotRankable: return "not-rankable";
    case ErrorKind::NotInDomain: return "not-in-domain";
    case ErrorKind::TooLarge: return "too-large";
    case ErrorKind::Unsupported: return "unsupported";
    case ErrorKind::SamplingFailed: return "sampling-failed";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Internal: return "internal";
  }
  return "unknown";
}

namespace {

double parse_double(std::string_view token) {
  // std::from_chars for double is available in libstdc++ 11.
  double value = 0.0;
  auto first = token.data();
  auto last = token.data() + token.size();
  while (first != last && *first == ' ') ++first;
  while (last != first && *(last - 1) == ' ') --last;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || first == last) {
    throw Error(ErrorKind::Parse, "cannot parse probability '" + std::string(token) + "'");
  }
  return value;
}

std::string shortest_repr(double value) {
  char buf[32];
  for (int precision = 1; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof buf, "%.*g", precision, value);
    if (std::strtod(buf, nullptr) == value) break;
  }
  return buf;
}

std::vector<double> cumulative_of(const std::vector<double>& probs) {
  std::vector<double> cumulative(probs.size());
  std::partial_sum(probs.begin(), probs.end(), cumulative.begin());
  // Draws land in [0,1); pinning the last edge keeps rounding from leaving a
  // gap above it.
  cumulative.back() = 1.0;
  return cumulative;
}

}  // namespace

WeightedAlphabet WeightedAlphabet::finite(std::vector<double> probabilities) {
  if (probabilities.empty()) {
    throw Error(ErrorKind::InvalidParameter, "alphabet needs at least one letter");
  }
  double sum = 0.0;
  for (double p : probabilities) {
    if (!(p > 0.0) || p > 1.0 || !std::isfinite(p)) {
      throw Error(ErrorKind::InvalidParameter, "letter probabilities must lie in (0,1]");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > kSumTolerance) {
    throw Error(ErrorKind::InvalidParameter, "letter probabilities must sum to 1");
  }
  if (!(probabilities.front() < 1.0)) {
    throw Error(ErrorKind::InvalidParameter, "p_1 must be < 1");
  }
  return finite_unchecked_degenerate(std::move(probabilities));
}

WeightedAlphabet WeightedAlphabet::finite_unchecked_degenerate(std::vector<double> probabilities) {
  if (probabilities.empty()) {
    throw Error(ErrorKind::InvalidParameter, "alphabet needs at least one letter");
  }
  WeightedAlphabet a;
  a.kind_ = Kind::Finite;
  a.cumulative_ = cumulative_of(probabilities);
  a.probs_ = std::move(probabilities);
  return a;
}

WeightedAlphabet WeightedAlphabet::geometric(double q) {
  if (!(q > 0.0 && q < 1.0)) {
    throw Error(ErrorKind::InvalidParameter, "geometric ratio must lie in (0,1)");
  }
  WeightedAlphabet a;
  a.kind_ = Kind::Geometric;
  a.q_ = q;
  a.log_q_ = std::log(q);
  return a;
}

WeightedAlphabet WeightedAlphabet::parse(std::string_view text) {
  constexpr std::string_view geom_prefix = "geom:";
  if (text.starts_with(geom_prefix)) {
    return geometric(parse_double(text.substr(geom_prefix.size())));
  }
  std::vector<double> probs;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto comma = text.find(',', start);
    auto token = text.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                                    : comma - start);
    probs.push_back(parse_double(token));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return finite(std::move(probs));
}

std::size_t WeightedAlphabet::size() const {
  if (!is_finite()) {
    throw Error(ErrorKind::Unsupported, "geometric alphabet has infinitely many letters");
  }
  return probs_.size();
}

double WeightedAlphabet::probability(Letter letter) const {
  if (letter == 0) {
    throw Error(ErrorKind::InvalidLetter, "letters are 1-based");
  }
  if (is_finite()) {
    if (letter > probs_.size()) {
      throw Error(ErrorKind::InvalidLetter,
                  "letter " + std::to_string(letter) + " outside alphabet of size " +
                      std::to_string(probs_.size()));
    }
    return probs_[letter - 1];
  }
  return (1.0 - q_) * std::pow(q_, static_cast<double>(letter - 1));
}

double WeightedAlphabet::p1() const noexcept {
  return is_finite() ? probs_.front() : 1.0 - q_;
}

double WeightedAlphabet::norm(double alpha) const {
  if (!(alpha >= 1.0) || !std::isfinite(alpha)) {
    throw Error(ErrorKind::InvalidParameter, "norm exponent must be >= 1");
  }
  if (!is_finite()) {
    return (1.0 - q_) / std::pow(1.0 - std::pow(q_, alpha), 1.0 / alpha);
  }
  double sum = 0.0;
  for (double p : probs_) sum += std::pow(p, alpha);
  return std::pow(sum, 1.0 / alpha);
}

double WeightedAlphabet::word_weight(std::span<const Letter> word) const {
  // Multiply in sorted letter order so the result is exactly invariant under
  // any rearrangement of the word.
  std::vector<Letter> sorted(word.begin(), word.end());
  std::sort(sorted.begin(), sorted.end());
  double weight = 1.0;
  for (Letter letter : sorted) weight *= probability(letter);
  return weight;
}

Letter WeightedAlphabet::sample(Rng& rng) const {
  const double u = uniform01(rng);
  if (is_finite()) {
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    return static_cast<Letter>(it - cumulative_.begin()) + 1;
  }
  // P(letter > i) = q^i; with v = 1-u in (0,1], letter = 1 + floor(log v / log q).
  const double v = 1.0 - u;
  const double k = std::floor(std::log(v) / log_q_);
  if (!(k < 4.0e9)) return static_cast<Letter>(4000000000u);
  return static_cast<Letter>(k) + 1;
}

std::string WeightedAlphabet::to_string() const {
  if (!is_finite()) return "geom:" + shortest_repr(q_);
  std::string out;
  for (std::size_t i = 0; i < probs_.size(); ++i) {
    if (i) out += ',';
    out += shortest_repr(probs_[i]);
  }
  return out;
}

}  // namespace lexorank
