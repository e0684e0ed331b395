#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "lexorank/alphabet.hpp"
#include "lexorank/word.hpp"

namespace lexorank {

/// Which rank's position a record follows: a fixed rank index, or one index
/// drawn uniformly from 1..N per sample.
struct RankSelector {
  enum class Kind { Fixed, UniformRandom };

  Kind kind = Kind::Fixed;
  std::size_t index = 1;

  static RankSelector fixed(std::size_t i);
  static RankSelector uniform_random() { return {Kind::UniformRandom, 0}; }
  /// "3" or "random".
  static RankSelector parse(std::string_view token);
  std::string label() const;

  friend bool operator==(const RankSelector&, const RankSelector&) = default;
};

enum class SamplerKind {
  /// Exact: i.i.d. letters, accept iff the word is in W_n.
  Rejection,
  /// Draw a primitive word and return phi of it. Not exactly W_n-distributed.
  Phi,
};

struct ExperimentConfig {
  WeightedAlphabet alphabet = WeightedAlphabet::finite({0.5, 0.5});
  std::vector<std::size_t> n_values;
  std::size_t samples_per_n = 0;
  std::vector<RankSelector> rank_indices = {RankSelector::fixed(1), RankSelector::fixed(2),
                                            RankSelector::uniform_random()};
  std::uint64_t seed = 0;
  std::uint64_t max_rejection_attempts = 1'000'000;
  /// OpenMP threads; 0 keeps the runtime default.
  int workers = 0;
  SamplerKind sampler = SamplerKind::Rejection;
  /// Every verify_every-th sample has its ranks recomputed by the naive method.
  std::size_t verify_every = 100;
  /// Keep each sampled word in its SampleInfo.
  bool keep_words = false;

  /// Throws InvalidParameter.
  void validate() const;
};

struct SampleInfo {
  std::size_t n = 0;
  std::size_t sample_id = 0;
  /// Block count N_n.
  std::size_t blocks = 0;
  /// Runs of the literal letter a_1.
  std::size_t runs_a1 = 0;
  std::uint64_t attempts = 0;
  Word word;
};

struct ExperimentRecord {
  std::size_t n = 0;
  std::size_t sample_id = 0;
  std::size_t blocks = 0;
  /// Position of this selector in ExperimentConfig::rank_indices.
  std::size_t selector = 0;
  std::size_t rank = 0;
  /// 1-based block position of the rank; 0 when skipped.
  std::size_t position = 0;
  /// position / N.
  double frac = 0.0;
  /// 2 position / (p_1 (1 - p_1) n).
  double norm_half = 0.0;
  /// position / (p_1 (1 - p_1) n).
  double norm_full = 0.0;
  /// The fixed rank index exceeded N.
  bool skipped = false;

  friend bool operator==(const ExperimentRecord&, const ExperimentRecord&) = default;
};

struct ExperimentResult {
  ExperimentConfig config;
  /// Ordered by (n in config order, sample_id).
  std::vector<SampleInfo> samples;
  /// Ordered by (n, sample_id, selector).
  std::vector<ExperimentRecord> records;
};

/// Independent generator for one (seed, n, sample) triple.
Rng stream_rng(std::uint64_t seed, std::uint64_t n, std::uint64_t sample_id);

/// Exact W_n draw by rejection. Throws SamplingFailed past max_attempts.
Word sample_W(const WeightedAlphabet& alphabet, std::size_t n, Rng& rng,
              std::uint64_t max_attempts = 1'000'000, std::uint64_t* attempts = nullptr);

/// phi of a P_n-distributed primitive word.
Word sample_W_phi(const WeightedAlphabet& alphabet, std::size_t n, Rng& rng,
                  std::uint64_t max_attempts = 1'000'000, std::uint64_t* attempts = nullptr);

/// OpenMP over samples. Output is identical for every worker count.
ExperimentResult run_experiment(const ExperimentConfig& config);

/// Single-threaded reference.
ExperimentResult run_experiment_serial(const ExperimentConfig& config);

struct RankReport {
  RankSelector selector;
  std::size_t count = 0;
  std::size_t skipped = 0;
  double frac_w2 = 0.0;
  double frac_ks = 0.0;
  double frac_mean = 0.0;
  double frac_var = 0.0;
  std::vector<double> frac_moments;
  double norm_half_w2 = 0.0;
  double norm_half_mean = 0.0;
  double norm_full_w2 = 0.0;
  double norm_full_mean = 0.0;
  /// Largest |observed - expected| / sd over the cells (N, position) of the
  /// conditional law of position given N, among N with at least
  /// kMinConditionalCount samples.
  double conditional_max_z = 0.0;
  std::size_t conditional_cells = 0;

  static constexpr std::size_t kMinConditionalCount = 50;
};

struct NReport {
  std::size_t n = 0;
  std::size_t samples = 0;
  std::uint64_t attempts = 0;
  double acceptance_rate = 0.0;
  double mean_blocks_over_n = 0.0;
  double lemma_threshold = 0.0;
  /// Samples with fewer a_1-runs than lemma_threshold.
  std::size_t lemma_tail_count = 0;
  std::vector<RankReport> ranks;
};

struct ExperimentReport {
  std::vector<NReport> per_n;
  /// Log-log slope of frac W_2 against n, one per selector; empty with fewer
  /// than two n values.
  std::vector<double> frac_w2_slope;
  std::vector<std::string> warnings;
};

ExperimentReport summarize(const ExperimentResult& result);

}  // namespace lexorank
