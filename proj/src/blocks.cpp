#include "lexorank/blocks.hpp"

#include <algorithm>
#include <numeric>

#include "lexorank/error.hpp"

namespace lexorank {

std::size_t BlockDecomposition::block_length(std::size_t k) const {
  const std::size_t end = k + 1 < starts.size() ? starts[k + 1] : word.size();
  return end - starts.at(k);
}

WordView BlockDecomposition::block(std::size_t k) const {
  return word.view().subspan(starts.at(k), block_length(k));
}

std::vector<Word> BlockDecomposition::blocks() const {
  std::vector<Word> out;
  out.reserve(count());
  for (std::size_t k = 0; k < count(); ++k) out.emplace_back(block(k));
  return out;
}

std::vector<std::size_t> block_starts(WordView w, Letter smallest) {
  std::vector<std::size_t> starts;
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (w[k] == smallest && (k == 0 || w[k - 1] != smallest)) starts.push_back(k);
  }
  return starts;
}

BlockDecomposition decompose(WordView w) {
  if (w.empty()) {
    throw Error(ErrorKind::NotBlockable, "empty word has no blocks");
  }
  const Letter smallest = min_letter(w);
  if (w.front() != smallest || w.back() == smallest) {
    throw Error(ErrorKind::NotBlockable,
                "word must begin with its smallest letter and end with another: " + to_string(w));
  }
  BlockDecomposition d;
  d.word = Word(w);
  d.smallest = smallest;
  d.starts = block_starts(w, smallest);
  return d;
}

namespace {

[[noreturn]] void equal_rotations(WordView w) {
  throw Error(ErrorKind::Internal, "two block-start rotations coincide in " + to_string(w));
}

std::vector<std::size_t> ranks_naive(WordView w, std::span<const std::size_t> starts) {
  const std::size_t count = starts.size();
  std::vector<std::size_t> out(count, 1);
  for (std::size_t a = 0; a < count; ++a) {
    for (std::size_t b = a + 1; b < count; ++b) {
      const auto order = compare_rotations(w, starts[a], starts[b]);
      if (order == 0) equal_rotations(w);
      ++out[order < 0 ? b : a];
    }
  }
  return out;
}

std::vector<std::size_t> ranks_sorted(WordView w, std::span<const std::size_t> starts) {
  const std::size_t count = starts.size();
  std::vector<std::size_t> order(count);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return compare_rotations(w, starts[a], starts[b]) < 0;
  });
  std::vector<std::size_t> out(count);
  for (std::size_t r = 0; r < count; ++r) {
    if (r > 0 && compare_rotations(w, starts[order[r - 1]], starts[order[r]]) == 0) {
      equal_rotations(w);
    }
    out[order[r]] = r + 1;
  }
  return out;
}

}  // namespace

std::vector<std::size_t> ranks_from_starts(WordView w, std::span<const std::size_t> starts,
                                           RankMethod method) {
  return method == RankMethod::Naive ? ranks_naive(w, starts) : ranks_sorted(w, starts);
}

std::vector<std::size_t> ranks(WordView w, RankMethod method) {
  const auto membership = classify(w);
  if (membership != Membership::Member) {
    throw Error(ErrorKind::NotRankable, std::string(describe(membership)) + ": " + to_string(w));
  }
  return ranks_from_starts(w, block_starts(w, w.front()), method);
}

BlockDecomposition decompose_ranked(WordView w, RankMethod method) {
  auto d = decompose(w);
  if (!is_primitive(w)) {
    throw Error(ErrorKind::NotRankable, "not in W_n: not primitive: " + to_string(w));
  }
  d.ranks = ranks_from_starts(w, d.starts, method);
  return d;
}

std::size_t rank_position(std::span<const std::size_t> ranks, std::size_t rank) {
  if (rank < 1 || rank > ranks.size()) {
    throw Error(ErrorKind::InvalidParameter, "rank index " + std::to_string(rank) +
                                                 " outside 1.." + std::to_string(ranks.size()));
  }
  auto it = std::find(ranks.begin(), ranks.end(), rank);
  if (it == ranks.end()) {
    throw Error(ErrorKind::Internal, "ranks are not a permutation");
  }
  return static_cast<std::size_t>(it - ranks.begin()) + 1;
}

std::size_t rank_position(WordView w, std::size_t rank) {
  const auto r = ranks(w);
  return rank_position(r, rank);
}

Word beta_shift(WordView w, std::size_t j) {
  const auto d = decompose(w);
  if (j >= d.count()) {
    throw Error(ErrorKind::InvalidParameter, "block shift out of range");
  }
  return rotate(w, d.starts[j]);
}

std::vector<Word> block_orbit(WordView w) {
  const auto membership = classify(w);
  if (membership != Membership::Member) {
    throw Error(ErrorKind::NotRankable, std::string(describe(membership)) + ": " + to_string(w));
  }
  const auto starts = block_starts(w, w.front());
  std::vector<Word> out;
  out.reserve(starts.size());
  for (std::size_t s : starts) out.push_back(rotate(w, s));
  return out;
}

Word phi(WordView w) {
  if (!is_primitive(w)) {
    throw Error(ErrorKind::NotInDomain, "phi is defined on primitive words only: " + to_string(w));
  }
  if (w.size() < 2) {
    throw Error(ErrorKind::NotInDomain, "W_1 is empty, so phi is undefined on single letters");
  }
  if (in_W(w)) return Word(w);
  const Letter smallest = min_letter(w);
  std::size_t last_run = 0;
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (w[k] == smallest && (k == 0 || w[k - 1] != smallest)) last_run = k;
  }
  return rotate(w, last_run);
}

std::vector<Word> phi_preimage(WordView w) {
  const auto membership = classify(w);
  if (membership != Membership::Member) {
    throw Error(ErrorKind::NotInDomain, std::string(describe(membership)) + ": " + to_string(w));
  }
  std::vector<Word> out;
  for (std::size_t j = 0; j < w.size(); ++j) {
    Word v = rotate(w, j);
    if (std::ranges::equal(phi(v), w)) out.push_back(std::move(v));
  }
  return out;
}

ClassKey class_key(WordView w) {
  auto key = decompose(w).blocks();
  std::sort(key.begin(), key.end());
  return key;
}

std::vector<Word> class_members(WordView w, std::size_t max_blocks) {
  const auto membership = classify(w);
  if (membership != Membership::Member) {
    throw Error(ErrorKind::NotInDomain, std::string(describe(membership)) + ": " + to_string(w));
  }
  auto blocks = class_key(w);
  if (blocks.size() > max_blocks) {
    throw Error(ErrorKind::TooLarge, std::to_string(blocks.size()) + " blocks exceed the limit of " +
                                         std::to_string(max_blocks));
  }
  // next_permutation over a sorted multiset visits each distinct arrangement once.
  std::vector<Word> out;
  do {
    Word candidate = concat(blocks);
    if (is_primitive(candidate)) out.push_back(std::move(candidate));
  } while (std::next_permutation(blocks.begin(), blocks.end()));
  return out;
}

}  // namespace lexorank
