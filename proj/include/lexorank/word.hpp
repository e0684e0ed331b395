#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lexorank/alphabet.hpp"

namespace lexorank {

using WordView = std::span<const Letter>;

/// A finite word over the 1-based letter indices. Comparison operators give
/// the lexicographic order (a proper prefix is smaller).
class Word {
 public:
  Word() = default;
  /// Throws InvalidParameter when empty or when some letter is 0.
  explicit Word(std::vector<Letter> letters);
  Word(std::initializer_list<Letter> letters) : Word(std::vector<Letter>(letters)) {}
  explicit Word(WordView letters) : Word(std::vector<Letter>(letters.begin(), letters.end())) {}

  /// Lowercase a-z ("aabab") or whitespace/comma separated integers ("1 1 2").
  static Word parse(std::string_view text);

  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }
  auto begin() const noexcept { return letters_.begin(); }
  auto end() const noexcept { return letters_.end(); }
  const std::vector<Letter>& letters() const noexcept { return letters_; }
  WordView view() const noexcept { return letters_; }
  operator WordView() const noexcept { return letters_; }  // NOLINT(google-explicit-constructor)

  /// Letters when every index fits in a-z, integers otherwise.
  std::string str() const;

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word&, const Word&) = default;

 private:
  std::vector<Letter> letters_;
};

std::string to_string(WordView w);

Word concat(std::span<const Word> parts);

std::strong_ordering lex_compare(WordView u, WordView v);

/// Compares the rotations of w starting at offsets i and j without building
/// either rotation.
std::strong_ordering compare_rotations(WordView w, std::size_t i, std::size_t j);

/// tau^j(w) = w_{j+1} ... w_n w_1 ... w_j; requires 0 <= j < n.
Word rotate(WordView w, std::size_t j);

/// Least d dividing n with w = u^(n/d), u the length-d prefix. Linear time via
/// the longest proper border.
std::size_t smallest_period(WordView w);

inline bool is_primitive(WordView w) { return !w.empty() && smallest_period(w) == w.size(); }

/// The distinct rotations, ordered by offset from 0.
std::vector<Word> necklace(WordView w);

/// Strictly smaller than every proper suffix.
bool is_lyndon(WordView w);

Letter min_letter(WordView w);

/// Maximal runs equal to `letter`.
std::size_t count_runs(WordView w, Letter letter);

/// Why a word does or does not belong to W_n: primitive, starting with a run of
/// its own smallest letter and ending with a different letter.
enum class Membership {
  Member,
  Empty,
  DoesNotStartWithSmallest,
  EndsWithSmallest,
  NotPrimitive,
};

Membership classify(WordView w);

inline bool in_W(WordView w) { return classify(w) == Membership::Member; }

const char* describe(Membership m) noexcept;

}  // namespace lexorank
