#pragma once

// Exhaustive enumeration of A_n for finite alphabets. Two drivers share one
// accumulator protocol:
//
//   struct Acc {
//     void visit(WordView w, double weight);
//     void merge(Acc&& other);   // associative; called in shard order
//   };
//
// enumerate_serial walks the whole odometer with a single accumulator and is
// the reference. enumerate_parallel shards the space by a fixed-length prefix,
// runs shards under OpenMP, and merges shard results in prefix order, so its
// output does not depend on the thread count.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <omp.h>

#include "lexorank/alphabet.hpp"
#include "lexorank/word.hpp"

namespace lexorank {

struct EnumerationOptions {
  static constexpr std::uint64_t kDefaultBudget = 100'000'000;

  std::uint64_t budget = kDefaultBudget;
  bool parallel = true;

  /// Default options, with the budget overridden by LEXORANK_BUDGET when set.
  static EnumerationOptions from_env();
};

/// k^n, checked against the budget. Throws Unsupported for geometric
/// alphabets and TooLarge past the budget.
std::uint64_t checked_word_count(const WeightedAlphabet& alphabet, std::size_t n,
                                 std::uint64_t budget);

/// Visits every word of length n extending `prefix`, in odometer order, with
/// its weight. Weights are kept as prefix products so each step re-multiplies
/// only the positions that changed.
template <class Visit>
void for_each_word(const WeightedAlphabet& alphabet, std::size_t n,
                   std::span<const Letter> prefix, Visit&& visit) {
  const auto k = static_cast<Letter>(alphabet.size());
  if (n == 0 || prefix.size() > n) return;
  std::vector<Letter> letters(n, 1);
  std::copy(prefix.begin(), prefix.end(), letters.begin());
  std::vector<double> prob(k);
  for (Letter l = 1; l <= k; ++l) prob[l - 1] = alphabet.probability(l);

  // partial[j] = weight of letters[0..j].
  std::vector<double> partial(n);
  auto refresh = [&](std::size_t from) {
    for (std::size_t j = from; j < n; ++j) {
      partial[j] = (j == 0 ? 1.0 : partial[j - 1]) * prob[letters[j] - 1];
    }
  };
  refresh(0);

  const std::size_t fixed = prefix.size();
  const WordView view(letters);
  while (true) {
    visit(view, partial[n - 1]);
    std::size_t j = n;
    while (j > fixed && letters[j - 1] == k) --j;
    if (j == fixed) return;
    ++letters[j - 1];
    std::fill(letters.begin() + static_cast<std::ptrdiff_t>(j), letters.end(), Letter{1});
    refresh(j - 1);
  }
}

template <class Acc, class Make>
Acc enumerate_serial(const WeightedAlphabet& alphabet, std::size_t n, std::uint64_t budget,
                     Make&& make) {
  checked_word_count(alphabet, n, budget);
  Acc acc = make();
  for_each_word(alphabet, n, {}, [&](WordView w, double weight) { acc.visit(w, weight); });
  return acc;
}

template <class Acc, class Make>
Acc enumerate_parallel(const WeightedAlphabet& alphabet, std::size_t n, std::uint64_t budget,
                       Make&& make) {
  checked_word_count(alphabet, n, budget);
  const std::uint64_t k = alphabet.size();

  // Enough shards to balance a few dozen threads; never longer than the word.
  std::size_t prefix_len = 0;
  std::uint64_t shards = 1;
  while (prefix_len < n && shards < 256) {
    ++prefix_len;
    shards *= k;
  }

  std::vector<std::optional<Acc>> partial(shards);
  const auto shard_count = static_cast<std::int64_t>(shards);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t s = 0; s < shard_count; ++s) {
    std::vector<Letter> prefix(prefix_len);
    auto code = static_cast<std::uint64_t>(s);
    for (std::size_t j = prefix_len; j-- > 0;) {
      prefix[j] = static_cast<Letter>(code % k) + 1;
      code /= k;
    }
    Acc acc = make();
    for_each_word(alphabet, n, prefix, [&](WordView w, double weight) { acc.visit(w, weight); });
    partial[static_cast<std::size_t>(s)].emplace(std::move(acc));
  }

  Acc result = std::move(*partial.front());
  for (std::size_t s = 1; s < partial.size(); ++s) result.merge(std::move(*partial[s]));
  return result;
}

template <class Acc, class Make>
Acc enumerate(const WeightedAlphabet& alphabet, std::size_t n, const EnumerationOptions& options,
              Make&& make) {
  return options.parallel ? enumerate_parallel<Acc>(alphabet, n, options.budget, make)
                          : enumerate_serial<Acc>(alphabet, n, options.budget, make);
}

}  // namespace lexorank
