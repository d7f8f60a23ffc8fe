#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "sct/rational.hpp"

namespace sct {

/// Fixed-width bitset over {0..width-1}.  Widths up to 64 live in a single
/// inline word; wider sets spill into a heap vector.
class IndexSet {
 public:
  IndexSet() = default;
  explicit IndexSet(unsigned width) : width_(width), ext_((words() > 1) ? words() - 1 : 0, 0) {}

  static IndexSet single(unsigned width, unsigned i);
  static IndexSet full(unsigned width);
  static IndexSet of(unsigned width, std::initializer_list<unsigned> bits);
  static IndexSet from_indices(unsigned width, std::span<const unsigned> bits);

  unsigned width() const { return width_; }
  bool test(unsigned i) const { return (word(i >> 6) >> (i & 63)) & 1u; }
  void set(unsigned i) { word_ref(i >> 6) |= std::uint64_t(1) << (i & 63); }
  void reset(unsigned i) { word_ref(i >> 6) &= ~(std::uint64_t(1) << (i & 63)); }

  bool empty() const;
  unsigned count() const;
  unsigned lowest() const;  // width() when empty

  IndexSet operator&(const IndexSet& rhs) const;
  IndexSet operator|(const IndexSet& rhs) const;
  IndexSet complement() const;  // within {0..width-1}

  bool subset_of(const IndexSet& rhs) const;
  bool intersects(const IndexSet& rhs) const;

  bool operator==(const IndexSet& rhs) const;
  bool operator!=(const IndexSet& rhs) const { return !(*this == rhs); }
  bool operator<(const IndexSet& rhs) const;  // numeric value of the bit string

  std::size_t hash() const;
  std::vector<unsigned> indices() const;

  template <typename Fn>
  void for_each(Fn fn) const {
    for (unsigned w = 0; w < words(); ++w) {
      std::uint64_t bits = word(w);
      while (bits) {
        fn(static_cast<unsigned>((w << 6) + std::countr_zero(bits)));
        bits &= bits - 1;
      }
    }
  }

  std::string str() const;  // "[0,2,5]"

  unsigned words() const { return width_ == 0 ? 1 : (width_ + 63) >> 6; }
  std::uint64_t word(unsigned w) const { return w == 0 ? word0_ : ext_[w - 1]; }

 private:
  std::uint64_t& word_ref(unsigned w) { return w == 0 ? word0_ : ext_[w - 1]; }
  void clamp();  // zero bits at positions >= width

  unsigned width_ = 0;
  std::uint64_t word0_ = 0;
  std::vector<std::uint64_t> ext_;
};

struct IndexSetHash {
  std::size_t operator()(const IndexSet& s) const { return s.hash(); }
};

/// A partition of {0..width-1} into nonempty disjoint blocks covering the
/// ground set.  Blocks are kept sorted by their minimum element, which makes
/// equality (and hashing) structural.
class Partition {
 public:
  Partition() = default;

  /// Validates that the blocks are nonempty, pairwise disjoint and cover
  /// the ground set; throws std::invalid_argument otherwise.
  static Partition from_blocks(std::vector<IndexSet> blocks);

  static Partition singletons(unsigned width);
  static Partition single_block(unsigned width);

  /// Groups indices by key equality: i and j share a block iff
  /// keys[i] == keys[j].
  template <typename Key, typename Hash = std::hash<Key>, typename Eq = std::equal_to<Key>>
  static Partition from_keys(const std::vector<Key>& keys) {
    const unsigned k = static_cast<unsigned>(keys.size());
    std::unordered_map<Key, unsigned, Hash, Eq> ids;
    std::vector<IndexSet> blocks;
    for (unsigned i = 0; i < k; ++i) {
      auto [it, fresh] = ids.emplace(keys[i], static_cast<unsigned>(blocks.size()));
      if (fresh) blocks.emplace_back(k);
      blocks[it->second].set(i);
    }
    return Partition(std::move(blocks), k);
  }

  unsigned width() const { return width_; }
  std::size_t block_count() const { return blocks_.size(); }
  const std::vector<IndexSet>& blocks() const { return blocks_; }
  const IndexSet& block(std::size_t b) const { return blocks_[b]; }
  unsigned block_index_of(unsigned i) const { return membership_[i]; }

  /// True iff every block of *this is contained in a block of `coarser`.
  bool refines(const Partition& coarser) const;

  /// Common refinement: blocks are the nonempty pairwise intersections.
  Partition meet(const Partition& rhs) const;

  bool contains_block(const IndexSet& b) const;

  /// Blockwise image under a permutation of the ground set.
  Partition permuted(std::span<const unsigned> perm) const;

  bool operator==(const Partition& rhs) const {
    return width_ == rhs.width_ && blocks_ == rhs.blocks_;
  }
  bool operator!=(const Partition& rhs) const { return !(*this == rhs); }
  bool operator<(const Partition& rhs) const;  // arbitrary total order for std::map

  std::size_t hash() const;

  /// Canonical word encoding (block count, then the words of each block in
  /// canonical order); usable as a deduplication key.
  std::vector<std::uint64_t> encoding() const;

  std::string str() const;  // "[[0,2],[1,4],[3]]"
  static Partition parse(std::string_view text, unsigned width);

 private:
  Partition(std::vector<IndexSet> blocks, unsigned width);

  std::vector<IndexSet> blocks_;
  std::vector<unsigned> membership_;
  unsigned width_ = 0;
};

struct PartitionHash {
  std::size_t operator()(const Partition& p) const { return p.hash(); }
};

}  // namespace sct
