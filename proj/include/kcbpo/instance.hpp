#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kcbpo/hypergraph.hpp"
#include "kcbpo/rational.hpp"

namespace kcbpo {

enum class Sense { maximize, minimize };

// The instance is always stored as a maximization problem: for `minimize`
// the profits and the offset are negated.
struct ParsedInstance {
  LiteralInstance inst;
  Rational offset;
  Sense sense = Sense::maximize;
  std::optional<std::vector<std::uint32_t>> card_sums;
  std::vector<std::string> warnings;

  // User-facing objective value of a maximization value of inst.
  Rational objective(const Rational& inst_value) const {
    return sense == Sense::maximize ? Rational(inst_value + offset) : Rational(-(inst_value + offset));
  }
};

// Line format: `<coeff> <term>...` with terms `v<id>` or `~v<id>`;
// directives `#card a,b,...`, `#maximize`, `#minimize`; other lines starting
// with `#` and blank lines are ignored. Throws ParseError.
ParsedInstance parse_instance(std::string_view text);

std::string format_instance(const ParsedInstance& p);

}  // namespace kcbpo
