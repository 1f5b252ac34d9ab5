#include "kcbpo/kernels.hpp"

#include <bit>

namespace kcbpo::kernels {
namespace {

void or_into_scalar(std::uint64_t* dst, const std::uint64_t* src, std::size_t words) {
  for (std::size_t i = 0; i < words; ++i) dst[i] |= src[i];
}

void and_into_scalar(std::uint64_t* dst, const std::uint64_t* src, std::size_t words) {
  for (std::size_t i = 0; i < words; ++i) dst[i] &= src[i];
}

bool intersects_scalar(const std::uint64_t* a, const std::uint64_t* b, std::size_t words) {
  for (std::size_t i = 0; i < words; ++i) {
    if (a[i] & b[i]) return true;
  }
  return false;
}

bool is_subset_scalar(const std::uint64_t* a, const std::uint64_t* b, std::size_t words) {
  for (std::size_t i = 0; i < words; ++i) {
    if (a[i] & ~b[i]) return false;
  }
  return true;
}

std::size_t popcount_scalar(const std::uint64_t* a, std::size_t words) {
  std::size_t total = 0;
  for (std::size_t i = 0; i < words; ++i) total += static_cast<std::size_t>(std::popcount(a[i]));
  return total;
}

std::size_t and_count_scalar(const std::uint64_t* a, const std::uint64_t* b, std::size_t words) {
  std::size_t total = 0;
  for (std::size_t i = 0; i < words; ++i) total += static_cast<std::size_t>(std::popcount(a[i] & b[i]));
  return total;
}

void subset_sum_scalar(std::int64_t* table, unsigned bits) {
  const std::size_t size = std::size_t{1} << bits;
  for (unsigned b = 0; b < bits; ++b) {
    const std::size_t stride = std::size_t{1} << b;
    for (std::size_t block = 0; block < size; block += 2 * stride) {
      std::int64_t* lo = table + block;
      std::int64_t* hi = lo + stride;
      for (std::size_t i = 0; i < stride; ++i) hi[i] += lo[i];
    }
  }
}

const KernelTable kScalar{
    or_into_scalar,   and_into_scalar,   intersects_scalar, is_subset_scalar,
    popcount_scalar,  and_count_scalar,  subset_sum_scalar,
};

}  // namespace

const KernelTable& scalar_table() { return kScalar; }

}  // namespace kcbpo::kernels
