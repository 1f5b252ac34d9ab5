#include "kcbpo/labs.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "kcbpo/rational.hpp"

namespace kcbpo {

namespace {

using Monomial = std::vector<int>;  // sorted positions

// s_i^2 = 1, so a product of s variables keeps the positions of odd multiplicity.
Monomial odd_part(std::vector<int> positions) {
  std::sort(positions.begin(), positions.end());
  Monomial out;
  for (std::size_t i = 0; i < positions.size();) {
    std::size_t j = i;
    while (j < positions.size() && positions[j] == positions[i]) ++j;
    if ((j - i) % 2 == 1) out.push_back(positions[i]);
    i = j;
  }
  return out;
}

struct BySizeThenLex {
  bool operator()(const Monomial& a, const Monomial& b) const {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  }
};

}  // namespace

std::string gen_labs(int n, int w) {
  if (w < 1 || w >= n) throw std::invalid_argument("gen-labs requires 1 <= w < n");
  if (n > 1000) throw std::invalid_argument("gen-labs: n is too large");

  std::map<Monomial, BigInt> s_poly;
  for (int k = 1; k <= w; ++k) {
    for (int i = 1; i + k <= n; ++i) {
      for (int j = 1; j + k <= n; ++j) s_poly[odd_part({i, i + k, j, j + k})] += 1;
    }
  }

  // s_i = 2 x_i - 1: prod over S of s_i = sum over T in S of 2^|T| (-1)^|S\T| x^T.
  std::map<Monomial, BigInt, BySizeThenLex> x_poly;
  for (const auto& [s, coeff] : s_poly) {
    if (coeff == 0) continue;
    const std::size_t m = s.size();
    for (std::uint32_t sub = 0; sub < (1u << m); ++sub) {
      Monomial t;
      for (std::size_t i = 0; i < m; ++i) {
        if (sub >> i & 1u) t.push_back(s[i]);
      }
      BigInt term = coeff;
      term <<= static_cast<mp_bitcnt_t>(t.size());
      if ((m - t.size()) % 2 == 1) term = -term;
      x_poly[t] += term;
    }
  }

  std::ostringstream os;
  os << "#minimize\n";
  auto constant = x_poly.find(Monomial{});
  os << (constant == x_poly.end() ? BigInt(0) : constant->second).get_str() << '\n';
  for (const auto& [t, coeff] : x_poly) {
    if (t.empty() || coeff == 0) continue;
    os << coeff.get_str();
    for (int v : t) os << " v" << v;
    os << '\n';
  }
  return os.str();
}

}  // namespace kcbpo
