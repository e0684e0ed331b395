// Acceptance suite: one pass/fail line per criterion, each at its pinned
// tolerance. Exit status is non-zero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "lexorank/blocks.hpp"
#include "lexorank/error.hpp"
#include "lexorank/measure.hpp"
#include "lexorank/sim.hpp"
#include "lexorank/stats.hpp"

using namespace lexorank;

namespace {

using Clock = std::chrono::steady_clock;

const auto kFair = WeightedAlphabet::finite({0.5, 0.5});
const auto kSkew = WeightedAlphabet::finite({0.6, 0.4});
const auto kTernary = WeightedAlphabet::finite({0.5, 0.3, 0.2});

// Pinned thresholds.
constexpr double kExactTol = 1e-9;
constexpr double kGridTol = 1e-12;
constexpr double kGapRatioBound = 2.0;
constexpr double kFracW2Max = 0.02;
constexpr double kFracMeanTol = 0.01;
constexpr double kFracVarTol = 0.005;
constexpr double kSlopeLo = -0.7;
constexpr double kSlopeHi = -0.3;
constexpr double kBlocksOverNTol = 0.01;
constexpr std::uint64_t kSeed = 42;
constexpr std::size_t kMonteCarloSamples = 20000;

/// Collects sub-check outcomes for one criterion.
class Criterion {
 public:
  explicit Criterion(std::string name) : name_(std::move(name)), start_(Clock::now()) {}

  void check(bool ok, const std::string& what) {
    std::printf("    %s %s\n", ok ? "ok  " : "FAIL", what.c_str());
    ok_ = ok_ && ok;
  }
  void note(const std::string& what) { std::printf("    info %s\n", what.c_str()); }

  double seconds() const { return std::chrono::duration<double>(Clock::now() - start_).count(); }

  bool finish(double time_limit) {
    const double t = seconds();
    if (time_limit > 0) check(t < time_limit, "runtime " + fmt(t) + " s < " + fmt(time_limit) + " s");
    std::printf("[%s] %s (%.2f s)\n\n", ok_ ? "PASS" : "FAIL", name_.c_str(), t);
    std::fflush(stdout);
    return ok_;
  }

  static std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
  }

 private:
  std::string name_;
  Clock::time_point start_;
  bool ok_ = true;
};

std::string join(const std::vector<Word>& words) {
  std::string out;
  for (const auto& w : words) out += (out.empty() ? "" : " ") + w.str();
  return out;
}

bool criterion1() {
  Criterion c("1 worked examples: blocks, ranks, phi and its preimages");
  const Word paper = Word::parse("acaabacdbaabaaaddb");
  const auto d = decompose_ranked(paper);
  const std::vector<Word> expected_blocks{Word::parse("ac"), Word::parse("aab"), Word::parse("acdb"),
                                          Word::parse("aab"), Word::parse("aaaddb")};
  c.check(d.blocks() == expected_blocks, "blocks of acaabacdbaabaaaddb = " + join(d.blocks()));
  c.check(d.ranks == std::vector<std::size_t>{4, 3, 5, 2, 1}, "ranks = 4 3 5 2 1");
  c.check(ranks(Word::parse("aabaababab")) == std::vector<std::size_t>{1, 2, 4, 3},
          "ranks of aab.aab.ab.ab = 1 2 4 3");
  c.check(phi(Word::parse("abaacbbaa")) == Word::parse("aaabaacbb"), "phi(abaacbbaa) = aaabaacbb");

  std::set<Word> preimage;
  for (const char* text : {"abaac", "acbab"}) {
    for (auto& v : phi_preimage(Word::parse(text))) preimage.insert(v);
  }
  const std::set<Word> expected{Word::parse("abaac"), Word::parse("baaca"), Word::parse("acbab"),
                                Word::parse("cbaba"), Word::parse("babac")};
  c.check(preimage == expected, "phi^-1({abaac, acbab}) = {abaac, baaca, acbab, cbaba, babac}");
  return c.finish(1.0);
}

bool criterion2() {
  Criterion c("2 exhaustive structure: partition, block orbits, incidence, shifts, phi, Lyndon");
  struct Case {
    const WeightedAlphabet* alphabet;
    const char* name;
    std::size_t max_n;
  };
  for (const Case& k : {Case{&kFair, "binary(0.5,0.5)", 12}, Case{&kSkew, "binary(0.6,0.4)", 12},
                        Case{&kTernary, "ternary(0.5,0.3,0.2)", 8}}) {
    StructureReport total;
    bool ok = true;
    for (std::size_t n = 1; n <= k.max_n; ++n) {
      const auto r = check_structure(*k.alphabet, n);
      ok = ok && r.ok(kExactTol);
      total.words_in_W += r.words_in_W;
      total.classes += r.classes;
      total.orbits += r.orbits;
      total.lyndon_words += r.lyndon_words;
      total.partition_violations += r.partition_violations;
      total.orbit_violations += r.orbit_violations;
      total.incidence_violations += r.incidence_violations;
      total.shift_violations += r.shift_violations;
      total.phi_violations += r.phi_violations;
      total.lyndon_violations += r.lyndon_violations;
      total.disintegration_gap = std::max(total.disintegration_gap, r.disintegration_gap);
    }
    const std::string tag = std::string(k.name) + ", n <= " + std::to_string(k.max_n) + ": ";
    c.note(tag + std::to_string(total.words_in_W) + " words, " + std::to_string(total.classes) +
           " classes, " + std::to_string(total.orbits) + " orbits, " +
           std::to_string(total.lyndon_words) + " Lyndon words");
    c.check(total.partition_violations == 0, tag + "(a) class groups partition W_n");
    c.check(total.orbit_violations == 0, tag + "(b) classes split into block orbits of size N");
    c.check(total.incidence_violations == 0, tag + "(c) orbit rank/position incidence is a permutation");
    c.check(total.shift_violations == 0, tag + "(d) every block shift is primitive");
    c.check(total.phi_violations == 0, tag + "(e) phi onto W_n with |phi^-1(w)| = first block length");
    c.check(total.lyndon_violations == 0, tag + "(f) Lyndon words of length >= 2 lie in W_n");
    c.check(total.disintegration_gap <= kExactTol,
            tag + "sum_C Card(C) p(C) = P_n(W_n), max gap " + Criterion::fmt(total.disintegration_gap));
    c.check(ok, tag + "all lengths clean");
  }
  return c.finish(60.0);
}

bool criterion3() {
  Criterion c("3 exact conditional uniformity of rank positions given N");
  double worst = 0.0;
  std::size_t laws = 0;
  for (std::size_t n = 2; n <= 12; ++n) {
    const auto s = summarize_measure(kFair, n);
    for (const auto& [i, by_count] : s.position_law) {
      for (const auto& [count, law] : by_count) {
        worst = std::max(worst, law.max_deviation_from_uniform(static_cast<std::int64_t>(count)));
        ++laws;
      }
    }
  }
  c.note(std::to_string(laws) + " (n, i, N) laws, binary uniform, n <= 12");
  c.check(worst < kExactTol, "max atom deviation " + Criterion::fmt(worst) + " < 1e-9");
  return c.finish(0);
}

bool criterion4() {
  Criterion c("4 exact small-n values and the pushforward gap");
  const double p2 = prob_W(kFair, 2);
  const double p3 = prob_W(kFair, 3);
  c.check(std::abs(p2 - 0.25) <= kExactTol, "prob_W(n=2) = " + Criterion::fmt(p2));
  c.check(std::abs(p3 - 0.25) <= kExactTol, "prob_W(n=3) = " + Criterion::fmt(p3));
  const auto all = [](WordView) { return true; };
  const double gap4 = pushforward_gap(kFair, 4, all);
  const double norm4 = std::pow(kFair.norm(2.0), 4);
  c.check(std::abs(gap4 - 0.25) <= kExactTol && std::abs(norm4 - 0.25) <= kExactTol,
          "gap(n=4, W_4) = " + Criterion::fmt(gap4) + " = ||p||_2^4 = " + Criterion::fmt(norm4));
  double worst = 0.0;
  for (std::size_t n = 4; n <= 16; ++n) {
    const double ratio = pushforward_gap(kFair, n, all) / std::pow(kFair.norm(2.0), n);
    worst = std::max(worst, ratio);
  }
  c.check(worst <= kGapRatioBound + kExactTol,
          "max gap/||p||_2^n over n = 4..16 is " + Criterion::fmt(worst) + " <= 2");
  return c.finish(0);
}

bool criterion5() {
  Criterion c("5 grid lemma closed form");
  double worst = 0.0;
  bool bounded = true;
  for (std::size_t n = 1; n <= 10000; ++n) {
    const double value = w2_grid(n);
    worst = std::max(worst, std::abs(value - 1.0 / (std::sqrt(3.0) * static_cast<double>(n))));
    bounded = bounded && value <= std::sqrt(1.0 / static_cast<double>(n));
  }
  c.check(worst <= kGridTol, "max |w2_grid(n) - 1/(sqrt3 n)| = " + Criterion::fmt(worst));
  c.check(bounded, "w2_grid(n) <= sqrt(1/n) for n = 1..10^4");
  return c.finish(0);
}

bool criterion6() {
  Criterion c("6 uniform limit of rank positions (Monte Carlo)");
  ExperimentConfig config;
  config.alphabet = kFair;
  config.n_values = {128, 512, 1024};
  config.samples_per_n = kMonteCarloSamples;
  config.seed = kSeed;
  const auto report = summarize(run_experiment(config));
  const auto& last = report.per_n.back();
  for (std::size_t s = 0; s < config.rank_indices.size(); ++s) {
    const std::string tag = "i=" + config.rank_indices[s].label() + ": ";
    for (const auto& nr : report.per_n) {
      const auto& rr = nr.ranks[s];
      c.note(tag + "n=" + std::to_string(nr.n) + " W2(frac)=" + Criterion::fmt(rr.frac_w2) +
             " KS=" + Criterion::fmt(rr.frac_ks) + " W2(norm_half)=" + Criterion::fmt(rr.norm_half_w2) +
             " W2(norm_full)=" + Criterion::fmt(rr.norm_full_w2));
    }
    const auto& rr = last.ranks[s];
    c.check(rr.frac_w2 <= kFracW2Max, tag + "W2(frac) at n=1024 = " + Criterion::fmt(rr.frac_w2) + " <= 0.02");
    c.check(std::abs(rr.frac_mean - 0.5) <= kFracMeanTol,
            tag + "mean(frac) = " + Criterion::fmt(rr.frac_mean) + " in 0.5 +- 0.01");
    c.check(std::abs(rr.frac_var - 1.0 / 12) <= kFracVarTol,
            tag + "var(frac) = " + Criterion::fmt(rr.frac_var) + " in 1/12 +- 0.005");
    const double slope = report.frac_w2_slope[s];
    c.check(slope >= kSlopeLo && slope <= kSlopeHi,
            tag + "log-log slope of W2(frac) vs n = " + Criterion::fmt(slope) + " in [-0.7, -0.3]");
  }
  c.check(std::abs(last.mean_blocks_over_n - 0.25) <= kBlocksOverNTol,
          "mean(N/n) at n=1024 = " + Criterion::fmt(last.mean_blocks_over_n) + " in 0.25 +- 0.01");
  return c.finish(120.0);
}

bool criterion7() {
  Criterion c("7 run-count lemma");
  ExperimentConfig config;
  config.alphabet = kFair;
  config.n_values = {64};
  config.samples_per_n = kMonteCarloSamples;
  config.seed = kSeed;
  config.rank_indices = {RankSelector::fixed(1)};
  const auto report = summarize(run_experiment(config));
  const auto& nr = report.per_n.front();
  c.check(nr.lemma_tail_count == 0,
          "n=64: " + std::to_string(nr.lemma_tail_count) + " of " + std::to_string(nr.samples) +
              " samples with N < " + Criterion::fmt(nr.lemma_threshold));

  std::string sequence;
  double previous = 2.0;
  bool nonincreasing = true;
  for (std::size_t n = 8; n <= 14; ++n) {
    const double tail = summarize_measure(kFair, n).tail();
    sequence += " n=" + std::to_string(n) + ":" + Criterion::fmt(tail);
    nonincreasing = nonincreasing && tail <= previous;
    previous = tail;
  }
  c.note("exact tail W_n(N < p1(1-p1)n/2), binary uniform:" + sequence);
  c.check(nonincreasing, "exact tail nonincreasing over n = 8..14");
  return c.finish(0);
}

bool criterion8() {
  Criterion c("8 naive and sorted rank computation agree");
  const std::vector<const WeightedAlphabet*> alphabets{&kFair, &kSkew, &kTernary};
  const auto geometric = WeightedAlphabet::geometric(0.5);
  std::size_t mismatches = 0;
  std::size_t largest = 0;
  constexpr std::size_t kWords = 10000;
  for (std::size_t k = 0; k < kWords; ++k) {
    Rng rng = stream_rng(kSeed, 2000, k);
    const std::size_t n = 2 + static_cast<std::size_t>(uniform01(rng) * 1999.0);
    const auto& alphabet = k % 4 == 3 ? geometric : *alphabets[k % 3];
    const Word w = sample_W(alphabet, n, rng);
    largest = std::max(largest, n);
    if (ranks(w, RankMethod::Naive) != ranks(w, RankMethod::Sorted)) ++mismatches;
  }
  c.note(std::to_string(kWords) + " words, lengths up to " + std::to_string(largest));
  c.check(mismatches == 0, std::to_string(mismatches) + " disagreements");
  return c.finish(0);
}

}  // namespace

int main() {
  const std::vector<std::function<bool()>> criteria{criterion1, criterion2, criterion3, criterion4,
                                                    criterion5, criterion6, criterion7, criterion8};
  std::size_t passed = 0;
  for (const auto& criterion : criteria) {
    try {
      passed += criterion() ? 1 : 0;
    } catch (const std::exception& e) {
      std::printf("[FAIL] criterion threw: %s\n\n", e.what());
    }
  }
  std::printf("%zu/%zu criteria passed\n", passed, criteria.size());
  return passed == criteria.size() ? 0 : 1;
}
