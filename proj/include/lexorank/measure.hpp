#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>

#include "lexorank/alphabet.hpp"
#include "lexorank/enumerate.hpp"
#include "lexorank/word.hpp"

namespace lexorank {

/// Finite law over integer values. Masses are accumulated unnormalized;
/// normalized() rescales to total 1.
class ExactDistribution {
 public:
  void add(std::int64_t value, double mass) { mass_[value] += mass; }
  void merge(const ExactDistribution& other);

  const std::map<std::int64_t, double>& atoms() const noexcept { return mass_; }
  bool empty() const noexcept { return mass_.empty(); }
  double total() const;
  double mass(std::int64_t value) const;
  ExactDistribution normalized() const;

  /// max_k |P(k) - 1/N| over k = 1..N, after normalization. Atoms outside
  /// 1..N count in full.
  double max_deviation_from_uniform(std::int64_t count) const;

 private:
  std::map<std::int64_t, double> mass_;
};

/// Everything one exhaustive pass over A_n yields. Masses are P_n-masses;
/// the accessors condition on W_n.
struct MeasureSummary {
  std::size_t n = 0;
  double total_mass = 0.0;
  double prob_W = 0.0;
  double prob_nonprimitive = 0.0;
  /// P_n-mass of primitive v with phi(v) in W_n.
  double prob_phi_preimage_W = 0.0;
  /// Block counts N_n (runs of each word's own smallest letter) over W_n.
  ExactDistribution blocks;
  /// Runs of the literal letter a_1 over W_n.
  ExactDistribution runs_a1;
  /// p_1 (1 - p_1) n / 2.
  double tail_threshold = 0.0;
  /// P_n-mass of W_n words with fewer a_1-runs than tail_threshold.
  double tail_mass = 0.0;
  /// position_law[i][N]: P_n-mass of each block position of rank i among
  /// W_n words with N blocks.
  std::map<std::size_t, std::map<std::size_t, ExactDistribution>> position_law;

  void visit(WordView w, double weight);
  void merge(MeasureSummary&& other);

  /// |W_n(W_n) - P_n(phi^{-1}(W_n))|.
  double gap_W() const;
  ExactDistribution dist_N() const { return blocks.normalized(); }
  ExactDistribution dist_runs_a1() const { return runs_a1.normalized(); }
  /// W_n(N_n^{a_1} < p_1 (1 - p_1) n / 2).
  double tail() const { return prob_W > 0.0 ? tail_mass / prob_W : 0.0; }
  /// Conditional law of the position of rank i given N, for every N >= i.
  std::map<std::size_t, ExactDistribution> rank_position_law(std::size_t i) const;
  /// Largest atom deviation from uniform over every (i, N) pair.
  double uniformity_maxdev() const;
};

/// One pass over A_n. Requires a finite alphabet and k^n within budget.
MeasureSummary summarize_measure(const WeightedAlphabet& alphabet, std::size_t n,
                                 const EnumerationOptions& options = {});

double prob_W(const WeightedAlphabet& alphabet, std::size_t n,
              const EnumerationOptions& options = {});

/// Predicate over words of W_n.
using WordEvent = std::function<bool(WordView)>;

/// |W_n(A) - P_n(phi^{-1}(A))| by direct enumeration: phi is applied to every
/// primitive word. Requires n >= 2.
double pushforward_gap(const WeightedAlphabet& alphabet, std::size_t n, const WordEvent& event,
                       const EnumerationOptions& options = {});

ExactDistribution dist_N(const WeightedAlphabet& alphabet, std::size_t n,
                         const EnumerationOptions& options = {});

std::map<std::size_t, ExactDistribution> exact_rank_position_law(
    const WeightedAlphabet& alphabet, std::size_t n, std::size_t i,
    const EnumerationOptions& options = {});

/// Law of the position of rank i under the uniform measure on C(w).
ExactDistribution class_rank_position_law(WordView w, std::size_t i);

/// Violation counters for the exhaustive structural checks on W_n. Every
/// counter is zero when the block/rank propositions hold at this n.
struct StructureReport {
  std::size_t n = 0;
  std::size_t words_in_W = 0;
  std::size_t primitive_words = 0;
  std::size_t classes = 0;
  std::size_t orbits = 0;
  std::size_t lyndon_words = 0;
  /// Class groups that class_members does not regenerate exactly.
  std::size_t partition_violations = 0;
  /// Classes that do not split into disjoint block orbits of size N.
  std::size_t orbit_violations = 0;
  /// Orbits whose rank/position incidence is not a permutation pattern.
  std::size_t incidence_violations = 0;
  /// Block shifts that are not in W_n.
  std::size_t shift_violations = 0;
  /// W_n words whose phi preimage size differs from the first block length,
  /// plus phi images outside W_n.
  std::size_t phi_violations = 0;
  /// Lyndon words of length >= 2 outside W_n.
  std::size_t lyndon_violations = 0;
  /// |sum_C Card(C) p(C) - P_n(W_n)|.
  double disintegration_gap = 0.0;

  bool ok(double tolerance = 1e-9) const;
};

StructureReport check_structure(const WeightedAlphabet& alphabet, std::size_t n,
                                const EnumerationOptions& options = {});

}  // namespace lexorank
