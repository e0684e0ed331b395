#include "lexorank/sim.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <exception>
#include <limits>
#include <map>

#include <omp.h>

#include "lexorank/blocks.hpp"
#include "lexorank/error.hpp"
#include "lexorank/stats.hpp"

namespace lexorank {

RankSelector RankSelector::fixed(std::size_t i) {
  if (i < 1) {
    throw Error(ErrorKind::InvalidParameter, "rank index must be >= 1");
  }
  return {Kind::Fixed, i};
}

RankSelector RankSelector::parse(std::string_view token) {
  if (token == "random" || token == "uniform-random") return uniform_random();
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size() || value == 0) {
    throw Error(ErrorKind::Parse, "invalid rank index '" + std::string(token) + "'");
  }
  return fixed(value);
}

std::string RankSelector::label() const {
  return kind == Kind::UniformRandom ? "random" : std::to_string(index);
}

void ExperimentConfig::validate() const {
  if (n_values.empty()) {
    throw Error(ErrorKind::InvalidParameter, "no word lengths configured");
  }
  if (std::any_of(n_values.begin(), n_values.end(), [](std::size_t n) { return n < 2; })) {
    throw Error(ErrorKind::InvalidParameter, "word lengths must be >= 2");
  }
  if (samples_per_n < 1) {
    throw Error(ErrorKind::InvalidParameter, "samples per n must be >= 1");
  }
  if (rank_indices.empty()) {
    throw Error(ErrorKind::InvalidParameter, "no rank indices configured");
  }
  if (max_rejection_attempts < 1) {
    throw Error(ErrorKind::InvalidParameter, "max rejection attempts must be >= 1");
  }
  if (workers < 0) {
    throw Error(ErrorKind::InvalidParameter, "worker count must be >= 0");
  }
  if (verify_every < 1) {
    throw Error(ErrorKind::InvalidParameter, "verify_every must be >= 1");
  }
  if (!(alphabet.p1() < 1.0)) {
    throw Error(ErrorKind::InvalidParameter, "p_1 must be < 1");
  }
}

namespace {

// splitmix64 finalizer.
std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

void fill_word(const WeightedAlphabet& alphabet, std::vector<Letter>& letters, Rng& rng) {
  for (auto& letter : letters) letter = alphabet.sample(rng);
}

[[noreturn]] void sampling_failed(std::size_t n, std::uint64_t tried, const char* what) {
  throw Error(ErrorKind::SamplingFailed,
              std::string(what) + " at n=" + std::to_string(n) + ": no acceptance in " +
                  std::to_string(tried) + " attempts (empirical acceptance rate 0/" +
                  std::to_string(tried) + ")");
}

}  // namespace

Rng stream_rng(std::uint64_t seed, std::uint64_t n, std::uint64_t sample_id) {
  return Rng(mix(mix(mix(seed) ^ n) ^ sample_id));
}

Word sample_W(const WeightedAlphabet& alphabet, std::size_t n, Rng& rng,
              std::uint64_t max_attempts, std::uint64_t* attempts) {
  if (n < 2) {
    throw Error(ErrorKind::InvalidParameter, "W_n is empty for n < 2");
  }
  std::vector<Letter> letters(n);
  for (std::uint64_t tried = 1; tried <= max_attempts; ++tried) {
    fill_word(alphabet, letters, rng);
    if (in_W(letters)) {
      if (attempts) *attempts = tried;
      return Word(std::move(letters));
    }
  }
  sampling_failed(n, max_attempts, "rejection sampler");
}

Word sample_W_phi(const WeightedAlphabet& alphabet, std::size_t n, Rng& rng,
                  std::uint64_t max_attempts, std::uint64_t* attempts) {
  if (n < 2) {
    throw Error(ErrorKind::InvalidParameter, "W_n is empty for n < 2");
  }
  std::vector<Letter> letters(n);
  for (std::uint64_t tried = 1; tried <= max_attempts; ++tried) {
    fill_word(alphabet, letters, rng);
    if (is_primitive(letters)) {
      if (attempts) *attempts = tried;
      return phi(letters);
    }
  }
  sampling_failed(n, max_attempts, "phi sampler");
}

namespace {

struct Layout {
  std::size_t selectors = 0;
  std::size_t per_n = 0;
  std::size_t total_samples = 0;
};

void run_sample(const ExperimentConfig& config, std::size_t n_slot, std::size_t sample_id,
                SampleInfo& info, std::span<ExperimentRecord> out) {
  const std::size_t n = config.n_values[n_slot];
  Rng rng = stream_rng(config.seed, n, sample_id);
  std::uint64_t attempts = 0;
  Word w = config.sampler == SamplerKind::Rejection
               ? sample_W(config.alphabet, n, rng, config.max_rejection_attempts, &attempts)
               : sample_W_phi(config.alphabet, n, rng, config.max_rejection_attempts, &attempts);

  const auto starts = block_starts(w, w[0]);
  const auto r = ranks_from_starts(w, starts, RankMethod::Sorted);
  if (sample_id % config.verify_every == 0 &&
      ranks_from_starts(w, starts, RankMethod::Naive) != r) {
    throw Error(ErrorKind::Internal, "naive and sorted ranks disagree on " + w.str());
  }
  const std::size_t blocks = starts.size();
  if (blocks > n / 2) {
    throw Error(ErrorKind::Internal, "more than n/2 blocks in " + w.str());
  }

  info.n = n;
  info.sample_id = sample_id;
  info.blocks = blocks;
  info.runs_a1 = count_runs(w, 1);
  info.attempts = attempts;
  if (config.keep_words) info.word = std::move(w);

  const double p1 = config.alphabet.p1();
  const double scale = p1 * (1.0 - p1) * static_cast<double>(n);
  for (std::size_t s = 0; s < config.rank_indices.size(); ++s) {
    const auto& selector = config.rank_indices[s];
    ExperimentRecord& rec = out[s];
    rec.n = n;
    rec.sample_id = sample_id;
    rec.blocks = blocks;
    rec.selector = s;
    if (selector.kind == RankSelector::Kind::UniformRandom) {
      rec.rank = 1 + std::min(blocks - 1, static_cast<std::size_t>(uniform01(rng) *
                                                                     static_cast<double>(blocks)));
    } else {
      rec.rank = selector.index;
    }
    if (rec.rank > blocks) {
      rec.skipped = true;
      continue;
    }
    rec.position = rank_position(r, rec.rank);
    const auto pos = static_cast<double>(rec.position);
    rec.frac = pos / static_cast<double>(blocks);
    rec.norm_half = 2.0 * pos / scale;
    rec.norm_full = pos / scale;
  }
}

ExperimentResult run(const ExperimentConfig& config, bool parallel) {
  config.validate();
  Layout layout;
  layout.selectors = config.rank_indices.size();
  layout.per_n = config.samples_per_n;
  layout.total_samples = layout.per_n * config.n_values.size();

  ExperimentResult result;
  result.config = config;
  result.samples.resize(layout.total_samples);
  result.records.resize(layout.total_samples * layout.selectors);

  auto body = [&](std::size_t slot) {
    const std::size_t n_slot = slot / layout.per_n;
    const std::size_t sample_id = slot % layout.per_n;
    run_sample(config, n_slot, sample_id, result.samples[slot],
               std::span(result.records).subspan(slot * layout.selectors, layout.selectors));
  };

  if (!parallel) {
    for (std::size_t slot = 0; slot < layout.total_samples; ++slot) body(slot);
    return result;
  }

  // Exceptions cannot cross the parallel region; keep the one from the lowest
  // slot so the reported failure does not depend on scheduling.
  std::exception_ptr first_error;
  std::size_t first_slot = std::numeric_limits<std::size_t>::max();
  const int threads = config.workers > 0 ? config.workers : omp_get_max_threads();
  const auto total = static_cast<std::int64_t>(layout.total_samples);
#pragma omp parallel for schedule(dynamic, 64) num_threads(threads)
  for (std::int64_t slot = 0; slot < total; ++slot) {
    try {
      body(static_cast<std::size_t>(slot));
    } catch (...) {
#pragma omp critical(lexorank_sim_error)
      {
        if (static_cast<std::size_t>(slot) < first_slot) {
          first_slot = static_cast<std::size_t>(slot);
          first_error = std::current_exception();
        }
      }
    }
  }
  if (first_error) std::rethrow_exception(first_error);
  return result;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config) { return run(config, true); }

ExperimentResult run_experiment_serial(const ExperimentConfig& config) {
  return run(config, false);
}

ExperimentReport summarize(const ExperimentResult& result) {
  const auto& config = result.config;
  const std::size_t selectors = config.rank_indices.size();
  const double p1 = config.alphabet.p1();
  ExperimentReport report;

  std::vector<std::vector<double>> w2_by_selector(selectors);
  std::vector<double> n_axis;

  for (std::size_t n_slot = 0; n_slot < config.n_values.size(); ++n_slot) {
    NReport nr;
    nr.n = config.n_values[n_slot];
    nr.lemma_threshold = p1 * (1.0 - p1) * static_cast<double>(nr.n) / 2.0;
    double blocks_sum = 0.0;
    for (const auto& info : result.samples) {
      if (info.n != nr.n) continue;
      ++nr.samples;
      nr.attempts += info.attempts;
      blocks_sum += static_cast<double>(info.blocks);
      if (static_cast<double>(info.runs_a1) < nr.lemma_threshold) ++nr.lemma_tail_count;
    }
    if (nr.samples == 0) {
      report.warnings.push_back("no samples for n=" + std::to_string(nr.n) + "; skipped");
      continue;
    }
    nr.acceptance_rate = static_cast<double>(nr.samples) / static_cast<double>(nr.attempts);
    nr.mean_blocks_over_n =
        blocks_sum / static_cast<double>(nr.samples) / static_cast<double>(nr.n);

    bool all_selectors = true;
    for (std::size_t s = 0; s < selectors; ++s) {
      RankReport rr;
      rr.selector = config.rank_indices[s];
      std::vector<double> frac;
      std::vector<double> half;
      std::vector<double> full;
      // (N, position) -> count
      std::map<std::size_t, std::map<std::size_t, std::size_t>> conditional;
      for (const auto& rec : result.records) {
        if (rec.n != nr.n || rec.selector != s) continue;
        if (rec.skipped) {
          ++rr.skipped;
          continue;
        }
        frac.push_back(rec.frac);
        half.push_back(rec.norm_half);
        full.push_back(rec.norm_full);
        ++conditional[rec.blocks][rec.position];
      }
      rr.count = frac.size();
      if (frac.empty()) {
        report.warnings.push_back("no records for n=" + std::to_string(nr.n) + ", rank " +
                                  rr.selector.label() + "; skipped");
        all_selectors = false;
        nr.ranks.push_back(std::move(rr));
        continue;
      }
      const EmpiricalSample fs(std::move(frac));
      const EmpiricalSample hs(std::move(half));
      const EmpiricalSample us(std::move(full));
      rr.frac_w2 = w2_to_uniform(fs);
      rr.frac_ks = ks_to_uniform(fs);
      rr.frac_moments = moments(fs, 4);
      rr.frac_mean = rr.frac_moments[0];
      rr.frac_var = variance(fs);
      rr.norm_half_w2 = w2_to_uniform(hs);
      rr.norm_half_mean = mean(hs);
      rr.norm_full_w2 = w2_to_uniform(us);
      rr.norm_full_mean = mean(us);

      for (const auto& [blocks, by_position] : conditional) {
        std::size_t c = 0;
        for (const auto& [pos, k] : by_position) c += k;
        if (c < RankReport::kMinConditionalCount) continue;
        const double q = 1.0 / static_cast<double>(blocks);
        const double expected = static_cast<double>(c) * q;
        const double sd = std::sqrt(static_cast<double>(c) * q * (1.0 - q));
        for (std::size_t pos = 1; pos <= blocks; ++pos) {
          auto it = by_position.find(pos);
          const double observed = it == by_position.end() ? 0.0 : static_cast<double>(it->second);
          const double z = sd > 0.0 ? std::abs(observed - expected) / sd : 0.0;
          rr.conditional_max_z = std::max(rr.conditional_max_z, z);
          ++rr.conditional_cells;
        }
      }
      nr.ranks.push_back(std::move(rr));
    }
    if (all_selectors) {
      n_axis.push_back(static_cast<double>(nr.n));
      for (std::size_t s = 0; s < selectors; ++s) w2_by_selector[s].push_back(nr.ranks[s].frac_w2);
    }
    report.per_n.push_back(std::move(nr));
  }

  if (n_axis.size() >= 2) {
    for (std::size_t s = 0; s < selectors; ++s) {
      report.frac_w2_slope.push_back(log_log_slope(n_axis, w2_by_selector[s]));
    }
  }
  return report;
}

}  // namespace lexorank
