#include "lexorank/word.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

#include "lexorank/error.hpp"

namespace lexorank {

Word::Word(std::vector<Letter> letters) : letters_(std::move(letters)) {
  if (letters_.empty()) {
    throw Error(ErrorKind::InvalidParameter, "words are non-empty");
  }
  if (std::find(letters_.begin(), letters_.end(), Letter{0}) != letters_.end()) {
    throw Error(ErrorKind::InvalidParameter, "letters are 1-based");
  }
}

Word Word::parse(std::string_view text) {
  auto is_space = [](char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; };
  while (!text.empty() && is_space(text.front())) text.remove_prefix(1);
  while (!text.empty() && is_space(text.back())) text.remove_suffix(1);
  if (text.empty()) {
    throw Error(ErrorKind::Parse, "empty word");
  }

  std::vector<Letter> letters;
  const bool numeric = std::any_of(text.begin(), text.end(),
                                   [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
  if (!numeric) {
    for (char c : text) {
      if (c < 'a' || c > 'z') {
        throw Error(ErrorKind::Parse, std::string("invalid letter '") + c + "' in word '" +
                                          std::string(text) + "'");
      }
      letters.push_back(static_cast<Letter>(c - 'a' + 1));
    }
    return Word(std::move(letters));
  }

  std::size_t pos = 0;
  while (pos < text.size()) {
    if (is_space(text[pos]) || text[pos] == ',') {
      ++pos;
      continue;
    }
    std::size_t end = pos;
    while (end < text.size() && !is_space(text[end]) && text[end] != ',') ++end;
    auto token = text.substr(pos, end - pos);
    Letter value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size() || value == 0) {
      throw Error(ErrorKind::Parse, "invalid letter '" + std::string(token) + "'");
    }
    letters.push_back(value);
    pos = end;
  }
  return Word(std::move(letters));
}

std::string to_string(WordView w) {
  std::string out;
  const bool alpha = std::all_of(w.begin(), w.end(), [](Letter l) { return l >= 1 && l <= 26; });
  if (alpha) {
    out.reserve(w.size());
    for (Letter l : w) out.push_back(static_cast<char>('a' + l - 1));
    return out;
  }
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out.push_back(' ');
    out += std::to_string(w[i]);
  }
  return out;
}

std::string Word::str() const { return to_string(letters_); }

Word concat(std::span<const Word> parts) {
  std::vector<Letter> letters;
  for (const auto& part : parts) letters.insert(letters.end(), part.begin(), part.end());
  return Word(std::move(letters));
}

std::strong_ordering lex_compare(WordView u, WordView v) {
  return std::lexicographical_compare_three_way(u.begin(), u.end(), v.begin(), v.end());
}

std::strong_ordering compare_rotations(WordView w, std::size_t i, std::size_t j) {
  const std::size_t n = w.size();
  if (i == j) return std::strong_ordering::equal;
  for (std::size_t k = 0; k < n; ++k) {
    if (i == n) i = 0;
    if (j == n) j = 0;
    if (w[i] != w[j]) return w[i] <=> w[j];
    ++i;
    ++j;
  }
  return std::strong_ordering::equal;
}

Word rotate(WordView w, std::size_t j) {
  if (j >= w.size()) {
    throw Error(ErrorKind::InvalidParameter, "rotation offset out of range");
  }
  std::vector<Letter> out;
  out.reserve(w.size());
  out.insert(out.end(), w.begin() + static_cast<std::ptrdiff_t>(j), w.end());
  out.insert(out.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(j));
  return Word(std::move(out));
}

std::size_t smallest_period(WordView w) {
  const std::size_t n = w.size();
  if (n == 0) return 0;
  // border[k] = length of the longest proper border of w[0..k].
  std::vector<std::size_t> border(n, 0);
  for (std::size_t k = 1; k < n; ++k) {
    std::size_t b = border[k - 1];
    while (b > 0 && w[k] != w[b]) b = border[b - 1];
    if (w[k] == w[b]) ++b;
    border[k] = b;
  }
  const std::size_t p = n - border[n - 1];
  return n % p == 0 ? p : n;
}

std::vector<Word> necklace(WordView w) {
  const std::size_t period = smallest_period(w);
  std::vector<Word> out;
  out.reserve(period);
  for (std::size_t j = 0; j < period; ++j) out.push_back(rotate(w, j));
  return out;
}

bool is_lyndon(WordView w) {
  // One step of Duval's factorization: w is Lyndon iff its first Lyndon
  // factor spans the whole word.
  const std::size_t n = w.size();
  if (n == 0) return false;
  std::size_t k = 0;
  std::size_t j = 1;
  while (j < n && w[k] <= w[j]) {
    k = w[k] < w[j] ? 0 : k + 1;
    ++j;
  }
  return j == n && k == 0;
}

Letter min_letter(WordView w) {
  if (w.empty()) {
    throw Error(ErrorKind::InvalidParameter, "empty word has no smallest letter");
  }
  return *std::min_element(w.begin(), w.end());
}

std::size_t count_runs(WordView w, Letter letter) {
  std::size_t runs = 0;
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (w[k] == letter && (k == 0 || w[k - 1] != letter)) ++runs;
  }
  return runs;
}

Membership classify(WordView w) {
  if (w.empty()) return Membership::Empty;
  const Letter smallest = min_letter(w);
  if (w.front() != smallest) return Membership::DoesNotStartWithSmallest;
  if (w.back() == smallest) return Membership::EndsWithSmallest;
  if (!is_primitive(w)) return Membership::NotPrimitive;
  return Membership::Member;
}

const char* describe(Membership m) noexcept {
  switch (m) {
    case Membership::Member: return "in W_n";
    case Membership::Empty: return "not in W_n: empty word";
    case Membership::DoesNotStartWithSmallest:
      return "not in W_n: does not begin with its smallest letter";
    case Membership::EndsWithSmallest: return "not in W_n: ends with its smallest letter";
    case Membership::NotPrimitive: return "not in W_n: not primitive";
  }
  return "";
}

}  // namespace lexorank
