#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "kcbpo/kernels.hpp"

namespace kcbpo {

// Fixed-size bitset whose bulk operations go through the dispatched kernels.
class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(std::size_t bits) : bits_(bits), words_((bits + 63) / 64, 0) {}

  std::size_t size() const { return bits_; }
  std::size_t word_count() const { return words_.size(); }

  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
  void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  void clear() { std::fill(words_.begin(), words_.end(), 0); }

  Bitset& operator|=(const Bitset& other) {
    kernels::or_into(words_, other.words_);
    return *this;
  }
  Bitset& operator&=(const Bitset& other) {
    kernels::and_into(words_, other.words_);
    return *this;
  }

  bool intersects(const Bitset& other) const { return kernels::intersects(words_, other.words_); }
  bool is_subset_of(const Bitset& other) const { return kernels::is_subset(words_, other.words_); }
  std::size_t count() const { return kernels::popcount(words_); }
  std::size_t and_count(const Bitset& other) const { return kernels::and_count(words_, other.words_); }
  bool any() const {
    for (std::uint64_t w : words_) {
      if (w) return true;
    }
    return false;
  }

  bool operator==(const Bitset& other) const = default;

  // Calls f(i) for every set bit in increasing order.
  template <class F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits) {
        f(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
        bits &= bits - 1;
      }
    }
  }

  // Calls f(i) for every bit set in both a and b.
  template <class F>
  static void for_each_common(const Bitset& a, const Bitset& b, F&& f) {
    for (std::size_t w = 0; w < a.words_.size(); ++w) {
      std::uint64_t bits = a.words_[w] & b.words_[w];
      while (bits) {
        f(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
        bits &= bits - 1;
      }
    }
  }

  const std::vector<std::uint64_t>& words() const { return words_; }

 private:
  std::size_t bits_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace kcbpo
