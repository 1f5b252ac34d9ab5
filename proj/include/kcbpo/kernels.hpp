#pragma once

// Data-parallel kernels with a scalar reference and an AVX2 variant.
// The dispatcher picks the AVX2 table once at startup when the CPU supports
// it; KCBPO_ISA=scalar in the environment forces the reference path.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace kcbpo::kernels {

enum class Isa { scalar, avx2 };

struct KernelTable {
  // dst |= src
  void (*or_into)(std::uint64_t* dst, const std::uint64_t* src, std::size_t words);
  // dst &= src
  void (*and_into)(std::uint64_t* dst, const std::uint64_t* src, std::size_t words);
  // (a & b) != 0
  bool (*intersects)(const std::uint64_t* a, const std::uint64_t* b, std::size_t words);
  // (a & ~b) == 0
  bool (*is_subset)(const std::uint64_t* a, const std::uint64_t* b, std::size_t words);
  std::size_t (*popcount)(const std::uint64_t* a, std::size_t words);
  // popcount(a & b)
  std::size_t (*and_count)(const std::uint64_t* a, const std::uint64_t* b, std::size_t words);
  // In-place subset-sum (zeta) transform over a table of 2^bits entries:
  // afterwards table[m] = sum of the original table[s] over all s subset of m.
  // Overflow is the caller's responsibility.
  void (*subset_sum)(std::int64_t* table, unsigned bits);
};

const KernelTable& scalar_table();
// Null when the AVX2 variant was not compiled in.
const KernelTable* avx2_table();

bool cpu_has_avx2();
Isa active_isa();
const KernelTable& active();
std::string_view isa_name(Isa isa);

inline void or_into(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src) {
  active().or_into(dst.data(), src.data(), dst.size());
}
inline void and_into(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src) {
  active().and_into(dst.data(), src.data(), dst.size());
}
inline bool intersects(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
  return active().intersects(a.data(), b.data(), a.size());
}
inline bool is_subset(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
  return active().is_subset(a.data(), b.data(), a.size());
}
inline std::size_t popcount(std::span<const std::uint64_t> a) {
  return active().popcount(a.data(), a.size());
}
inline std::size_t and_count(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
  return active().and_count(a.data(), b.data(), a.size());
}
inline void subset_sum(std::span<std::int64_t> table, unsigned bits) {
  active().subset_sum(table.data(), bits);
}

}  // namespace kcbpo::kernels
