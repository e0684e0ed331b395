#include <doctest.h>

#include <cmath>
#include <set>

#include "lexorank/blocks.hpp"
#include "lexorank/error.hpp"
#include "lexorank/sim.hpp"

using namespace lexorank;

namespace {

const auto kFair = WeightedAlphabet::finite({0.5, 0.5});

ExperimentConfig small_config() {
  ExperimentConfig config;
  config.n_values = {16, 40};
  config.samples_per_n = 500;
  config.seed = 2024;
  return config;
}

}  // namespace

TEST_CASE("sample_W at tiny n") {
  Rng rng = stream_rng(1, 2, 0);
  for (int i = 0; i < 100; ++i) CHECK(sample_W(kFair, 2, rng) == Word::parse("ab"));

  Rng rng3 = stream_rng(1, 3, 0);
  int aab = 0;
  std::uint64_t attempts = 0;
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) {
    std::uint64_t tried = 0;
    const Word w = sample_W(kFair, 3, rng3, 1'000'000, &tried);
    attempts += tried;
    REQUIRE((w == Word::parse("aab") || w == Word::parse("abb")));
    aab += w == Word::parse("aab");
  }
  CHECK(std::abs(aab / static_cast<double>(draws) - 0.5) < 0.01);
  CHECK(std::abs(draws / static_cast<double>(attempts) - 0.25) < 0.01);

  CHECK_THROWS_AS(sample_W(kFair, 1, rng), Error);
}

TEST_CASE("sampling failure is reported") {
  const auto rare = WeightedAlphabet::finite({0.999, 0.001});
  Rng rng = stream_rng(3, 2, 0);
  try {
    (void)sample_W(rare, 2, rng, 5);
    FAIL("expected sampling-failed");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SamplingFailed);
    CHECK(std::string(e.what()).find("0/5") != std::string::npos);
  }
}

TEST_CASE("phi sampler lands in W_n") {
  Rng rng = stream_rng(4, 9, 0);
  for (int i = 0; i < 1000; ++i) CHECK(in_W(sample_W_phi(kFair, 9, rng)));
}

TEST_CASE("config validation") {
  auto config = small_config();
  config.samples_per_n = 0;
  CHECK_THROWS_AS(config.validate(), Error);
  config = small_config();
  config.n_values.clear();
  CHECK_THROWS_AS(config.validate(), Error);
  config = small_config();
  config.n_values = {1};
  CHECK_THROWS_AS(config.validate(), Error);
  config = small_config();
  config.rank_indices.clear();
  CHECK_THROWS_AS(run_experiment(config), Error);
  CHECK_THROWS_AS(RankSelector::parse("0"), Error);
  CHECK(RankSelector::parse("random").kind == RankSelector::Kind::UniformRandom);
  CHECK(RankSelector::parse("7").index == 7);
}

TEST_CASE("records satisfy their invariants") {
  auto config = small_config();
  config.keep_words = true;
  const auto result = run_experiment(config);
  CHECK(result.records.size() == 2 * 500 * 3);
  for (const auto& info : result.samples) {
    CHECK(in_W(info.word));
    CHECK(info.blocks == count_runs(info.word, 1));
    CHECK(info.attempts >= 1);
  }
  for (const auto& rec : result.records) {
    if (rec.skipped) {
      CHECK(rec.rank > rec.blocks);
      continue;
    }
    CHECK(rec.position >= 1);
    CHECK(rec.position <= rec.blocks);
    CHECK(rec.blocks <= rec.n / 2);
    CHECK(rec.frac > 0.0);
    CHECK(rec.frac <= 1.0);
    const auto& word = result.samples[(rec.n == 16 ? 0 : 500) + rec.sample_id].word;
    CHECK(rank_position(word, rec.rank) == rec.position);
  }
}

TEST_CASE("results are identical across worker counts and the serial path") {
  auto config = small_config();
  config.workers = 1;
  const auto one = run_experiment(config);
  config.workers = 4;
  const auto four = run_experiment(config);
  const auto serial = run_experiment_serial(config);
  CHECK(one.records == four.records);
  CHECK(one.records == serial.records);

  config.seed = 2025;
  CHECK(run_experiment(config).records != one.records);
}

TEST_CASE("skipped rank indices") {
  auto config = small_config();
  config.n_values = {6};
  config.rank_indices = {RankSelector::fixed(5), RankSelector::fixed(1)};
  const auto result = run_experiment(config);
  for (const auto& rec : result.records) {
    if (rec.selector == 0) CHECK(rec.skipped);
  }
  const auto report = summarize(result);
  CHECK(report.warnings.size() == 1);
  CHECK(report.per_n.front().ranks.front().skipped == 500);
  CHECK(report.per_n.front().ranks.back().count == 500);
}

TEST_CASE("frac is uniform on the class of aabaababab") {
  ExperimentConfig config;
  config.n_values = {10};
  config.samples_per_n = 10000;
  config.seed = 77;
  config.rank_indices = {RankSelector::fixed(1)};
  config.keep_words = true;
  const auto result = run_experiment(config);

  const auto members = class_members(Word::parse("aabaababab"));
  const std::set<Word> cls(members.begin(), members.end());
  std::vector<double> counts(4, 0.0);
  double total = 0.0;
  for (const auto& rec : result.records) {
    if (!cls.contains(result.samples[rec.sample_id].word)) continue;
    counts[static_cast<std::size_t>(std::lround(rec.frac * 4)) - 1] += 1;
    total += 1;
  }
  REQUIRE(total > 50);
  const double expected = total / 4;
  const double sd = std::sqrt(total * 0.25 * 0.75);
  for (double c : counts) CHECK(std::abs(c - expected) <= 3 * sd);
}

TEST_CASE("conditional law of position given N is uniform") {
  ExperimentConfig config;
  config.n_values = {16};
  config.samples_per_n = 20000;
  config.seed = 5;
  const auto report = summarize(run_experiment(config));
  for (const auto& rr : report.per_n.front().ranks) {
    CHECK(rr.conditional_cells > 0);
    CHECK(rr.conditional_max_z < 4.0);
  }
}

TEST_CASE("summaries") {
  auto config = small_config();
  config.samples_per_n = 2000;
  const auto report = summarize(run_experiment(config));
  REQUIRE(report.per_n.size() == 2);
  REQUIRE(report.frac_w2_slope.size() == 3);
  for (const auto& nr : report.per_n) {
    CHECK(nr.samples == 2000);
    CHECK(nr.acceptance_rate > 0.2);
    CHECK(nr.acceptance_rate < 0.3);
    CHECK(nr.lemma_threshold == doctest::Approx(nr.n / 8.0));
    for (const auto& rr : nr.ranks) {
      CHECK(rr.frac_moments.size() == 4);
      CHECK(rr.frac_mean == doctest::Approx(rr.frac_moments[0]));
      CHECK(rr.norm_half_mean == doctest::Approx(2 * rr.norm_full_mean));
    }
  }
}

TEST_CASE("geometric alphabets simulate") {
  ExperimentConfig config;
  config.alphabet = WeightedAlphabet::geometric(0.5);
  config.n_values = {64};
  config.samples_per_n = 200;
  config.sampler = SamplerKind::Phi;
  const auto result = run_experiment(config);
  CHECK(result.samples.size() == 200);
}
