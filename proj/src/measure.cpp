#include "lexorank/measure.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <set>
#include <string>

#include "lexorank/blocks.hpp"
#include "lexorank/error.hpp"

namespace lexorank {

EnumerationOptions EnumerationOptions::from_env() {
  EnumerationOptions options;
  if (const char* env = std::getenv("LEXORANK_BUDGET"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const auto value = std::strtoull(env, &end, 10);
    if (end == nullptr || *end != '\0' || value == 0) {
      throw Error(ErrorKind::Parse, std::string("invalid LEXORANK_BUDGET '") + env + "'");
    }
    options.budget = value;
  }
  return options;
}

std::uint64_t checked_word_count(const WeightedAlphabet& alphabet, std::size_t n,
                                 std::uint64_t budget) {
  if (!alphabet.is_finite()) {
    throw Error(ErrorKind::Unsupported, "exhaustive enumeration needs a finite alphabet");
  }
  const std::uint64_t k = alphabet.size();
  std::uint64_t count = 1;
  for (std::size_t j = 0; j < n; ++j) {
    if (count > budget / k) {
      throw Error(ErrorKind::TooLarge, std::to_string(k) + "^" + std::to_string(n) +
                                           " words exceed the enumeration budget of " +
                                           std::to_string(budget));
    }
    count *= k;
  }
  if (count > budget) {
    throw Error(ErrorKind::TooLarge, "word count exceeds the enumeration budget");
  }
  return count;
}

// ---------------------------------------------------------------------------
// ExactDistribution

void ExactDistribution::merge(const ExactDistribution& other) {
  for (const auto& [value, m] : other.mass_) mass_[value] += m;
}

double ExactDistribution::total() const {
  double sum = 0.0;
  for (const auto& [value, m] : mass_) sum += m;
  return sum;
}

double ExactDistribution::mass(std::int64_t value) const {
  auto it = mass_.find(value);
  return it == mass_.end() ? 0.0 : it->second;
}

ExactDistribution ExactDistribution::normalized() const {
  ExactDistribution out;
  const double sum = total();
  if (sum <= 0.0) return out;
  for (const auto& [value, m] : mass_) out.mass_[value] = m / sum;
  return out;
}

double ExactDistribution::max_deviation_from_uniform(std::int64_t count) const {
  const auto law = normalized();
  const double target = 1.0 / static_cast<double>(count);
  double worst = 0.0;
  for (std::int64_t k = 1; k <= count; ++k) {
    worst = std::max(worst, std::abs(law.mass(k) - target));
  }
  for (const auto& [value, m] : law.mass_) {
    if (value < 1 || value > count) worst = std::max(worst, m);
  }
  return worst;
}

// ---------------------------------------------------------------------------
// One-pass summary

void MeasureSummary::visit(WordView w, double weight) {
  total_mass += weight;
  if (!is_primitive(w)) {
    prob_nonprimitive += weight;
    return;
  }
  if (n >= 2 && in_W(phi(w))) prob_phi_preimage_W += weight;
  if (!in_W(w)) return;

  prob_W += weight;
  const auto starts = block_starts(w, w.front());
  const auto count = starts.size();
  blocks.add(static_cast<std::int64_t>(count), weight);
  const auto runs = count_runs(w, 1);
  runs_a1.add(static_cast<std::int64_t>(runs), weight);
  if (static_cast<double>(runs) < tail_threshold) tail_mass += weight;

  const auto r = ranks_from_starts(w, starts, RankMethod::Naive);
  for (std::size_t k = 0; k < count; ++k) {
    position_law[r[k]][count].add(static_cast<std::int64_t>(k + 1), weight);
  }
}

void MeasureSummary::merge(MeasureSummary&& other) {
  total_mass += other.total_mass;
  prob_W += other.prob_W;
  prob_nonprimitive += other.prob_nonprimitive;
  prob_phi_preimage_W += other.prob_phi_preimage_W;
  blocks.merge(other.blocks);
  runs_a1.merge(other.runs_a1);
  tail_mass += other.tail_mass;
  for (auto& [i, by_count] : other.position_law) {
    for (auto& [count, law] : by_count) position_law[i][count].merge(law);
  }
}

double MeasureSummary::gap_W() const {
  if (prob_W <= 0.0) return std::numeric_limits<double>::quiet_NaN();
  return std::abs(1.0 - prob_phi_preimage_W);
}

std::map<std::size_t, ExactDistribution> MeasureSummary::rank_position_law(std::size_t i) const {
  std::map<std::size_t, ExactDistribution> out;
  auto it = position_law.find(i);
  if (it == position_law.end()) return out;
  for (const auto& [count, law] : it->second) out[count] = law.normalized();
  return out;
}

double MeasureSummary::uniformity_maxdev() const {
  double worst = 0.0;
  for (const auto& [i, by_count] : position_law) {
    for (const auto& [count, law] : by_count) {
      worst = std::max(worst, law.max_deviation_from_uniform(static_cast<std::int64_t>(count)));
    }
  }
  return worst;
}

MeasureSummary summarize_measure(const WeightedAlphabet& alphabet, std::size_t n,
                                 const EnumerationOptions& options) {
  if (n == 0) {
    throw Error(ErrorKind::InvalidParameter, "word length must be >= 1");
  }
  const double p1 = alphabet.p1();
  auto make = [&] {
    MeasureSummary s;
    s.n = n;
    s.tail_threshold = p1 * (1.0 - p1) * static_cast<double>(n) / 2.0;
    return s;
  };
  return enumerate<MeasureSummary>(alphabet, n, options, make);
}

double prob_W(const WeightedAlphabet& alphabet, std::size_t n, const EnumerationOptions& options) {
  struct Acc {
    double mass = 0.0;
    void visit(WordView w, double weight) {
      if (in_W(w)) mass += weight;
    }
    void merge(Acc&& other) { mass += other.mass; }
  };
  if (n == 0) {
    throw Error(ErrorKind::InvalidParameter, "word length must be >= 1");
  }
  return enumerate<Acc>(alphabet, n, options, [] { return Acc{}; }).mass;
}

double pushforward_gap(const WeightedAlphabet& alphabet, std::size_t n, const WordEvent& event,
                       const EnumerationOptions& options) {
  struct Acc {
    const WordEvent* event = nullptr;
    double prob_W = 0.0;
    double in_A = 0.0;
    double preimage = 0.0;
    void visit(WordView w, double weight) {
      if (!is_primitive(w)) return;
      const Word image = phi(w);
      if ((*event)(image)) preimage += weight;
      if (in_W(w)) {
        prob_W += weight;
        if ((*event)(w)) in_A += weight;
      }
    }
    void merge(Acc&& other) {
      prob_W += other.prob_W;
      in_A += other.in_A;
      preimage += other.preimage;
    }
  };
  if (n < 2) {
    throw Error(ErrorKind::InvalidParameter, "W_n is empty for n < 2");
  }
  const auto acc = enumerate<Acc>(alphabet, n, options, [&] { return Acc{&event}; });
  return std::abs(acc.in_A / acc.prob_W - acc.preimage);
}

ExactDistribution dist_N(const WeightedAlphabet& alphabet, std::size_t n,
                         const EnumerationOptions& options) {
  return summarize_measure(alphabet, n, options).dist_N();
}

std::map<std::size_t, ExactDistribution> exact_rank_position_law(
    const WeightedAlphabet& alphabet, std::size_t n, std::size_t i,
    const EnumerationOptions& options) {
  if (i < 1) {
    throw Error(ErrorKind::InvalidParameter, "rank index must be >= 1");
  }
  return summarize_measure(alphabet, n, options).rank_position_law(i);
}

ExactDistribution class_rank_position_law(WordView w, std::size_t i) {
  const auto members = class_members(w, w.size());
  ExactDistribution law;
  for (const auto& member : members) {
    const auto r = ranks(member);
    if (i <= r.size()) law.add(static_cast<std::int64_t>(rank_position(r, i)), 1.0);
  }
  return law.normalized();
}

// ---------------------------------------------------------------------------
// Structural checks

bool StructureReport::ok(double tolerance) const {
  return partition_violations == 0 && orbit_violations == 0 && incidence_violations == 0 &&
         shift_violations == 0 && phi_violations == 0 && lyndon_violations == 0 &&
         disintegration_gap <= tolerance;
}

namespace {

struct ClassStats {
  std::size_t count = 0;
  double weight = 0.0;
  Word representative;
  bool weight_mismatch = false;
};

struct StructureAccumulator {
  std::size_t n = 0;
  StructureReport report;
  double prob_W = 0.0;
  std::map<ClassKey, ClassStats> classes;
  std::map<Word, std::size_t> phi_counts;

  void visit(WordView w, double weight) {
    if (!is_primitive(w)) return;
    ++report.primitive_words;
    if (n >= 2) {
      Word image = phi(w);
      if (in_W(image)) {
        ++phi_counts[std::move(image)];
      } else {
        ++report.phi_violations;
      }
    }
    if (is_lyndon(w)) {
      ++report.lyndon_words;
      if (n >= 2 && !in_W(w)) ++report.lyndon_violations;
    }
    if (!in_W(w)) return;

    ++report.words_in_W;
    prob_W += weight;
    const Word word(w);
    const auto d = decompose_ranked(word);
    check_orbit(d);

    auto key = d.blocks();
    std::sort(key.begin(), key.end());
    auto& stats = classes[std::move(key)];
    add_member(stats, 1, weight, word);
  }

  static void add_member(ClassStats& stats, std::size_t count, double weight, const Word& member) {
    if (stats.count == 0) {
      stats.weight = weight;
      stats.representative = member;
    } else {
      if (std::abs(stats.weight - weight) > 1e-12 * stats.weight) stats.weight_mismatch = true;
      if (member < stats.representative) stats.representative = member;
    }
    stats.count += count;
  }

  // Every block shift of w must be in W_n, its ranks must be the matching
  // cyclic shift of w's ranks, and across the orbit each rank must sit at
  // each position exactly once.
  void check_orbit(const BlockDecomposition& d) {
    const std::size_t count = d.count();
    std::vector<std::size_t> incidence(count * count, 0);
    for (std::size_t j = 0; j < count; ++j) {
      const Word shifted = rotate(d.word, d.starts[j]);
      if (!in_W(shifted)) {
        ++report.shift_violations;
        return;
      }
      const auto r = ranks(shifted);
      bool shifted_ranks = r.size() == count;
      for (std::size_t k = 0; shifted_ranks && k < count; ++k) {
        shifted_ranks = r[k] == d.ranks[(k + j) % count];
      }
      if (!shifted_ranks) {
        ++report.incidence_violations;
        return;
      }
      for (std::size_t k = 0; k < count; ++k) ++incidence[(r[k] - 1) * count + k];
    }
    if (std::any_of(incidence.begin(), incidence.end(), [](std::size_t c) { return c != 1; })) {
      ++report.incidence_violations;
    }
  }

  void merge(StructureAccumulator&& other) {
    report.words_in_W += other.report.words_in_W;
    report.primitive_words += other.report.primitive_words;
    report.lyndon_words += other.report.lyndon_words;
    report.incidence_violations += other.report.incidence_violations;
    report.shift_violations += other.report.shift_violations;
    report.phi_violations += other.report.phi_violations;
    report.lyndon_violations += other.report.lyndon_violations;
    prob_W += other.prob_W;
    for (auto& [key, stats] : other.classes) {
      auto& mine = classes[key];
      add_member(mine, stats.count, stats.weight, stats.representative);
      mine.weight_mismatch = mine.weight_mismatch || stats.weight_mismatch;
    }
    for (auto& [word, c] : other.phi_counts) phi_counts[word] += c;
  }

  StructureReport finish(const WeightedAlphabet& alphabet) {
    report.n = n;
    report.classes = classes.size();
    double class_mass = 0.0;
    std::size_t phi_total = 0;
    for (const auto& [word, c] : phi_counts) phi_total += c;
    if (n >= 2 && phi_total != report.primitive_words) ++report.phi_violations;
    if (phi_counts.size() != report.words_in_W) ++report.phi_violations;

    for (const auto& [key, stats] : classes) {
      class_mass += static_cast<double>(stats.count) * stats.weight;
      const auto members = class_members(stats.representative, n);
      bool partition_ok = !stats.weight_mismatch && members.size() == stats.count;
      for (const auto& m : members) {
        if (!in_W(m) || class_key(m) != key ||
            std::abs(alphabet.word_weight(m) - stats.weight) > 1e-12 * stats.weight) {
          partition_ok = false;
        }
        const std::size_t expected = decompose(m).block_length(0);
        auto it = phi_counts.find(m);
        const std::size_t found = it == phi_counts.end() ? 0 : it->second;
        if (found != expected || phi_preimage(m).size() != expected) ++report.phi_violations;
      }
      if (!partition_ok) ++report.partition_violations;

      std::set<Word> remaining(members.begin(), members.end());
      bool orbits_ok = remaining.size() == members.size();
      while (orbits_ok && !remaining.empty()) {
        const auto orbit = block_orbit(*remaining.begin());
        const std::set<Word> distinct(orbit.begin(), orbit.end());
        orbits_ok = orbit.size() == key.size() && distinct.size() == orbit.size();
        for (const auto& v : orbit) orbits_ok = orbits_ok && remaining.erase(v) == 1;
        ++report.orbits;
      }
      if (!orbits_ok) ++report.orbit_violations;
    }
    report.disintegration_gap = std::abs(class_mass - prob_W);
    return report;
  }
};

}  // namespace

StructureReport check_structure(const WeightedAlphabet& alphabet, std::size_t n,
                                const EnumerationOptions& options) {
  if (n == 0) {
    throw Error(ErrorKind::InvalidParameter, "word length must be >= 1");
  }
  auto acc = enumerate<StructureAccumulator>(alphabet, n, options, [&] {
    StructureAccumulator a;
    a.n = n;
    return a;
  });
  return acc.finish(alphabet);
}

}  // namespace lexorank
