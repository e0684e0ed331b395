#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "lexorank/word.hpp"

namespace lexorank {

/// Blocks of a word that begins with a run of its smallest letter a_w and ends
/// with a different letter: each block is a maximal run of a_w followed by the
/// letters up to (not including) the next run of a_w.
struct BlockDecomposition {
  Word word;
  Letter smallest = 0;
  /// 0-based offsets of the block starts; starts.front() == 0.
  std::vector<std::size_t> starts;
  /// ranks[k] is the 1-based rank of the rotation beginning at block k among
  /// the rotations beginning at blocks. Empty until ranked.
  std::vector<std::size_t> ranks;

  std::size_t count() const noexcept { return starts.size(); }
  std::size_t block_length(std::size_t k) const;
  WordView block(std::size_t k) const;
  std::vector<Word> blocks() const;
};

enum class RankMethod {
  /// Pairwise comparison of all block-start rotations, O(N^2 n) worst case.
  /// The reference.
  Naive,
  /// Comparison sort of the block-start rotations, O(N log N n) worst case.
  Sorted,
};

/// 0-based block start offsets; no membership check.
std::vector<std::size_t> block_starts(WordView w, Letter smallest);

/// Requires the word to start with its smallest letter and end with another
/// one (primitivity is not required). Throws NotBlockable.
BlockDecomposition decompose(WordView w);

/// Requires in_W(w); throws NotRankable otherwise. Two block-start rotations
/// comparing equal is an Internal error.
std::vector<std::size_t> ranks(WordView w, RankMethod method = RankMethod::Naive);

/// Ranks from already-computed block starts of a word known to be in W_n.
std::vector<std::size_t> ranks_from_starts(WordView w, std::span<const std::size_t> starts,
                                           RankMethod method);

BlockDecomposition decompose_ranked(WordView w, RankMethod method = RankMethod::Naive);

/// 1-based block position k with ranks[k-1] == rank.
std::size_t rank_position(std::span<const std::size_t> ranks, std::size_t rank);
std::size_t rank_position(WordView w, std::size_t rank);

/// B_{j+1} ... B_N B_1 ... B_j for 0 <= j < N.
Word beta_shift(WordView w, std::size_t j);

/// All N beta-shifts in shift order. Requires in_W(w).
std::vector<Word> block_orbit(WordView w);

/// Identity on W_n; otherwise the rotation that begins at the last run of the
/// word's smallest letter. Throws NotInDomain for non-primitive words.
Word phi(WordView w);

/// Every primitive v with phi(v) == w, in rotation-offset order.
std::vector<Word> phi_preimage(WordView w);

/// Lexicographically sorted multiset of blocks; identifies the class C(w).
using ClassKey = std::vector<Word>;

ClassKey class_key(WordView w);

inline constexpr std::size_t kDefaultMaxBlocks = 8;

/// Distinct arrangements of the block multiset of w that are primitive, in
/// lexicographic order of the block sequence. Throws TooLarge when w has more
/// than max_blocks blocks.
std::vector<Word> class_members(WordView w, std::size_t max_blocks = kDefaultMaxBlocks);

}  // namespace lexorank
