#include "sct/partition.hpp"

#include <algorithm>
#include <stdexcept>

#include <json.hpp>

namespace sct {

IndexSet IndexSet::single(unsigned width, unsigned i) {
  IndexSet s(width);
  s.set(i);
  return s;
}

IndexSet IndexSet::full(unsigned width) {
  IndexSet s(width);
  for (unsigned w = 0; w < s.words(); ++w) s.word_ref(w) = ~std::uint64_t(0);
  s.clamp();
  return s;
}

IndexSet IndexSet::of(unsigned width, std::initializer_list<unsigned> bits) {
  IndexSet s(width);
  for (unsigned b : bits) s.set(b);
  return s;
}

IndexSet IndexSet::from_indices(unsigned width, std::span<const unsigned> bits) {
  IndexSet s(width);
  for (unsigned b : bits) s.set(b);
  return s;
}

void IndexSet::clamp() {
  if (width_ == 0) {
    word0_ = 0;
    return;
  }
  const unsigned rem = width_ & 63;
  if (rem != 0) word_ref(words() - 1) &= (~std::uint64_t(0)) >> (64 - rem);
}

bool IndexSet::empty() const {
  for (unsigned w = 0; w < words(); ++w) {
    if (word(w) != 0) return false;
  }
  return true;
}

unsigned IndexSet::count() const {
  unsigned c = 0;
  for (unsigned w = 0; w < words(); ++w) c += static_cast<unsigned>(std::popcount(word(w)));
  return c;
}

unsigned IndexSet::lowest() const {
  for (unsigned w = 0; w < words(); ++w) {
    if (word(w) != 0) return (w << 6) + static_cast<unsigned>(std::countr_zero(word(w)));
  }
  return width_;
}

IndexSet IndexSet::operator&(const IndexSet& rhs) const {
  IndexSet out(width_);
  for (unsigned w = 0; w < words(); ++w) out.word_ref(w) = word(w) & rhs.word(w);
  return out;
}

IndexSet IndexSet::operator|(const IndexSet& rhs) const {
  IndexSet out(width_);
  for (unsigned w = 0; w < words(); ++w) out.word_ref(w) = word(w) | rhs.word(w);
  return out;
}

IndexSet IndexSet::complement() const {
  IndexSet out(width_);
  for (unsigned w = 0; w < words(); ++w) out.word_ref(w) = ~word(w);
  out.clamp();
  return out;
}

bool IndexSet::subset_of(const IndexSet& rhs) const {
  for (unsigned w = 0; w < words(); ++w) {
    if (word(w) & ~rhs.word(w)) return false;
  }
  return true;
}

bool IndexSet::intersects(const IndexSet& rhs) const {
  for (unsigned w = 0; w < words(); ++w) {
    if (word(w) & rhs.word(w)) return true;
  }
  return false;
}

bool IndexSet::operator==(const IndexSet& rhs) const {
  if (width_ != rhs.width_) return false;
  for (unsigned w = 0; w < words(); ++w) {
    if (word(w) != rhs.word(w)) return false;
  }
  return true;
}

bool IndexSet::operator<(const IndexSet& rhs) const {
  if (width_ != rhs.width_) return width_ < rhs.width_;
  for (unsigned w = words(); w-- > 0;) {
    if (word(w) != rhs.word(w)) return word(w) < rhs.word(w);
  }
  return false;
}

std::size_t IndexSet::hash() const {
  std::size_t h = std::hash<unsigned>()(width_);
  for (unsigned w = 0; w < words(); ++w) hash_combine(h, word(w));
  return h;
}

std::vector<unsigned> IndexSet::indices() const {
  std::vector<unsigned> out;
  out.reserve(count());
  for_each([&](unsigned i) { out.push_back(i); });
  return out;
}

std::string IndexSet::str() const {
  std::string out = "[";
  bool first = true;
  for_each([&](unsigned i) {
    if (!first) out += ",";
    out += std::to_string(i);
    first = false;
  });
  out += "]";
  return out;
}

Partition::Partition(std::vector<IndexSet> blocks, unsigned width)
    : blocks_(std::move(blocks)), width_(width) {
  std::sort(blocks_.begin(), blocks_.end(),
            [](const IndexSet& a, const IndexSet& b) { return a.lowest() < b.lowest(); });
  membership_.assign(width_, 0);
  for (unsigned b = 0; b < blocks_.size(); ++b) {
    blocks_[b].for_each([&](unsigned i) { membership_[i] = b; });
  }
}

Partition Partition::from_blocks(std::vector<IndexSet> blocks) {
  if (blocks.empty()) throw std::invalid_argument("a partition needs at least one block");
  const unsigned width = blocks.front().width();
  IndexSet seen(width);
  for (const IndexSet& b : blocks) {
    if (b.width() != width) throw std::invalid_argument("partition blocks differ in width");
    if (b.empty()) throw std::invalid_argument("partition blocks must be nonempty");
    if (seen.intersects(b)) throw std::invalid_argument("partition blocks overlap");
    seen = seen | b;
  }
  if (seen != IndexSet::full(width)) {
    throw std::invalid_argument("partition blocks do not cover the ground set");
  }
  return Partition(std::move(blocks), width);
}

Partition Partition::singletons(unsigned width) {
  std::vector<IndexSet> blocks;
  blocks.reserve(width);
  for (unsigned i = 0; i < width; ++i) blocks.push_back(IndexSet::single(width, i));
  return Partition(std::move(blocks), width);
}

Partition Partition::single_block(unsigned width) {
  std::vector<IndexSet> blocks{IndexSet::full(width)};
  return Partition(std::move(blocks), width);
}

bool Partition::refines(const Partition& coarser) const {
  if (width_ != coarser.width_) return false;
  for (const IndexSet& b : blocks_) {
    if (!b.subset_of(coarser.blocks_[coarser.membership_[b.lowest()]])) return false;
  }
  return true;
}

Partition Partition::meet(const Partition& rhs) const {
  if (width_ != rhs.width_) throw std::invalid_argument("meet of partitions over different sets");
  std::vector<std::uint64_t> keys(width_);
  for (unsigned i = 0; i < width_; ++i) {
    keys[i] = (static_cast<std::uint64_t>(membership_[i]) << 32) | rhs.membership_[i];
  }
  return from_keys(keys);
}

bool Partition::contains_block(const IndexSet& b) const {
  if (b.width() != width_ || b.empty()) return false;
  return blocks_[membership_[b.lowest()]] == b;
}

Partition Partition::permuted(std::span<const unsigned> perm) const {
  std::vector<IndexSet> blocks;
  blocks.reserve(blocks_.size());
  for (const IndexSet& b : blocks_) {
    IndexSet image(width_);
    b.for_each([&](unsigned i) { image.set(perm[i]); });
    blocks.push_back(std::move(image));
  }
  return Partition(std::move(blocks), width_);
}

bool Partition::operator<(const Partition& rhs) const {
  if (width_ != rhs.width_) return width_ < rhs.width_;
  return std::lexicographical_compare(blocks_.begin(), blocks_.end(), rhs.blocks_.begin(),
                                      rhs.blocks_.end());
}

std::size_t Partition::hash() const {
  std::size_t h = std::hash<unsigned>()(width_);
  for (const IndexSet& b : blocks_) hash_combine(h, b.hash());
  return h;
}

std::vector<std::uint64_t> Partition::encoding() const {
  std::vector<std::uint64_t> out;
  out.reserve(1 + blocks_.size() * (width_ == 0 ? 1 : (width_ + 63) / 64));
  out.push_back(blocks_.size());
  for (const IndexSet& b : blocks_) {
    for (unsigned w = 0; w < b.words(); ++w) out.push_back(b.word(w));
  }
  return out;
}

std::string Partition::str() const {
  std::string out = "[";
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    if (b) out += ",";
    out += blocks_[b].str();
  }
  out += "]";
  return out;
}

Partition Partition::parse(std::string_view text, unsigned width) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("malformed partition: ") + e.what());
  }
  if (!doc.is_array() || doc.empty()) {
    throw std::invalid_argument("a partition must be a nonempty array of index arrays");
  }
  std::vector<IndexSet> blocks;
  for (const auto& arr : doc) {
    if (!arr.is_array()) throw std::invalid_argument("partition blocks must be arrays");
    IndexSet b(width);
    for (const auto& v : arr) {
      if (!v.is_number_unsigned() || v.get<std::uint64_t>() >= width) {
        throw std::invalid_argument("partition index out of range");
      }
      b.set(v.get<unsigned>());
    }
    blocks.push_back(std::move(b));
  }
  return from_blocks(std::move(blocks));
}

}  // namespace sct
