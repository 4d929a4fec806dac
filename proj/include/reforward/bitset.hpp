#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace reforward {

/// Fixed-capacity bitset sized at runtime. Holds vertex subsets (V^R,
/// closed-set members, segment members). Indices are vertex ids.
class VertexSet {
public:
  VertexSet() = default;
  explicit VertexSet(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}

  std::size_t capacity() const { return n_; }

  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i) { words_[i >> 6] |= (std::uint64_t{1} << (i & 63)); }
  void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  void clear() { for (auto& w : words_) w = 0; }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool any() const {
    for (auto w : words_) if (w) return true;
    return false;
  }
  bool empty() const { return !any(); }

  VertexSet& operator|=(const VertexSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  VertexSet& operator&=(const VertexSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }

  bool operator==(const VertexSet& o) const { return words_ == o.words_; }
  bool operator!=(const VertexSet& o) const { return words_ != o.words_; }

  bool is_subset_of(const VertexSet& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~o.words_[i]) return false;
    return true;
  }

  bool intersects(const VertexSet& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & o.words_[i]) return true;
    return false;
  }

  /// Ascending list of set indices.
  std::vector<std::uint32_t> to_indices() const {
    std::vector<std::uint32_t> out;
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t x = words_[w];
      while (x) {
        out.push_back(static_cast<std::uint32_t>(w * 64 + std::countr_zero(x)));
        x &= x - 1;
      }
    }
    return out;
  }

  /// Orders sets by their ascending index sequences, so {1,3} < {2,3} and a
  /// proper prefix sorts first. Used for deterministic tie-breaking.
  static int compare_lex(const VertexSet& a, const VertexSet& b) {
    for (std::size_t i = 0; i < a.words_.size(); ++i) {
      std::uint64_t diff = a.words_[i] ^ b.words_[i];
      if (!diff) continue;
      std::uint64_t low = diff & (~diff + 1);
      // Whichever set contains the lowest differing index sorts first,
      // unless the other set is a strict prefix that ends before it.
      bool in_a = a.words_[i] & low;
      // Prefix case: if b has no further bits at or beyond this position, b
      // is a prefix of a and sorts first (and vice versa).
      if (in_a) {
        if (!tail_any(b, i, low)) return 1;
        return -1;
      }
      if (!tail_any(a, i, low)) return -1;
      return 1;
    }
    return 0;
  }

private:
  static bool tail_any(const VertexSet& s, std::size_t word, std::uint64_t low_mask) {
    if (s.words_[word] & ~(low_mask - 1)) return true;
    for (std::size_t i = word + 1; i < s.words_.size(); ++i)
      if (s.words_[i]) return true;
    return false;
  }

  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace reforward
