#include <doctest.h>

#include <random>

#include "kcbpo/bitset.hpp"
#include "kcbpo/kernels.hpp"

using namespace kcbpo;

TEST_CASE("vector kernels agree with the scalar kernels") {
  const kernels::KernelTable* scalar = &kernels::scalar_table();
  const kernels::KernelTable* fast = kernels::avx2_table();
  if (fast == nullptr || !kernels::cpu_has_avx2()) {
    MESSAGE("AVX2 kernels unavailable; comparing scalar with itself");
    fast = scalar;
  }
  std::mt19937_64 rng(89);
  for (std::size_t words : {0u, 1u, 3u, 4u, 5u, 8u, 13u, 64u}) {
    for (int iter = 0; iter < 20; ++iter) {
      std::vector<std::uint64_t> a(words), b(words);
      for (auto& v : a) v = rng() & rng();
      for (auto& v : b) v = rng() & rng();
      if (iter % 4 == 0) b = a;
      if (iter % 4 == 1) {
        for (std::size_t i = 0; i < words; ++i) b[i] |= a[i];
      }
      CHECK(scalar->intersects(a.data(), b.data(), words) == fast->intersects(a.data(), b.data(), words));
      CHECK(scalar->is_subset(a.data(), b.data(), words) == fast->is_subset(a.data(), b.data(), words));
      CHECK(scalar->popcount(a.data(), words) == fast->popcount(a.data(), words));
      CHECK(scalar->and_count(a.data(), b.data(), words) == fast->and_count(a.data(), b.data(), words));
      auto x = a, y = a;
      scalar->or_into(x.data(), b.data(), words);
      fast->or_into(y.data(), b.data(), words);
      CHECK(x == y);
      x = a;
      y = a;
      scalar->and_into(x.data(), b.data(), words);
      fast->and_into(y.data(), b.data(), words);
      CHECK(x == y);
    }
  }
  for (unsigned bits : {0u, 1u, 2u, 5u, 10u}) {
    std::vector<std::int64_t> t(std::size_t{1} << bits);
    for (auto& v : t) v = static_cast<std::int64_t>(rng() % 1000) - 500;
    auto u = t;
    // Reference: direct subset sums.
    std::vector<std::int64_t> ref(t.size(), 0);
    for (std::size_t s = 0; s < t.size(); ++s) {
      for (std::size_t sub = s;; sub = (sub - 1) & s) {
        ref[s] += t[sub];
        if (sub == 0) break;
      }
    }
    scalar->subset_sum(t.data(), bits);
    fast->subset_sum(u.data(), bits);
    CHECK(t == ref);
    CHECK(u == ref);
  }
}

TEST_CASE("bitset operations") {
  Bitset a(130), b(130);
  a.set(0);
  a.set(129);
  b.set(129);
  CHECK(a.intersects(b));
  CHECK(b.is_subset_of(a));
  CHECK_FALSE(a.is_subset_of(b));
  CHECK(a.count() == 2);
  CHECK(a.and_count(b) == 1);
  std::vector<std::size_t> seen;
  a.for_each([&](std::size_t i) { seen.push_back(i); });
  CHECK(seen == std::vector<std::size_t>{0, 129});
  b |= a;
  CHECK(b == a);
}
