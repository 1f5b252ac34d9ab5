#include "kcbpo/instance.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <sstream>

#include "kcbpo/errors.hpp"

namespace kcbpo {

namespace {

struct RawTerm {
  std::int64_t id;
  bool positive;
};

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::optional<std::int64_t> parse_positive(std::string_view s) {
  std::int64_t v = 0;
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || end != s.data() + s.size() || v <= 0) return std::nullopt;
  return v;
}

std::vector<std::uint32_t> parse_sums(std::string_view list, std::size_t line_no) {
  std::vector<std::uint32_t> sums;
  std::size_t i = 0;
  while (i <= list.size()) {
    std::size_t j = list.find(',', i);
    if (j == std::string_view::npos) j = list.size();
    const std::string_view item = list.substr(i, j - i);
    std::uint32_t v = 0;
    auto [end, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || ec != std::errc() || end != item.data() + item.size()) {
      throw ParseError("line " + std::to_string(line_no) + ": bad cardinality list '" + std::string(list) + "'");
    }
    sums.push_back(v);
    i = j + 1;
  }
  std::sort(sums.begin(), sums.end());
  sums.erase(std::unique(sums.begin(), sums.end()), sums.end());
  return sums;
}

}  // namespace

ParsedInstance parse_instance(std::string_view text) {
  ParsedInstance out;
  out.offset = 0;
  std::vector<std::pair<Rational, std::vector<RawTerm>>> monomials;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  bool sense_seen = false;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    const std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    const auto tokens = split_ws(line);
    if (tokens.empty()) continue;
    auto fail = [&](const std::string& why) { throw ParseError("line " + std::to_string(line_no) + ": " + why); };

    if (tokens[0].front() == '#') {
      if (tokens[0] == "#maximize" || tokens[0] == "#minimize") {
        if (tokens.size() != 1) fail("unexpected text after " + std::string(tokens[0]));
        if (sense_seen) fail("objective sense given twice");
        sense_seen = true;
        out.sense = tokens[0] == "#maximize" ? Sense::maximize : Sense::minimize;
      } else if (tokens[0] == "#card") {
        if (tokens.size() != 2) fail("#card expects one comma-separated list");
        if (out.card_sums) fail("#card given twice");
        out.card_sums = parse_sums(tokens[1], line_no);
      }
      continue;
    }

    Rational coeff;
    try {
      coeff = parse_rational(tokens[0]);
    } catch (const std::invalid_argument&) {
      fail("bad coefficient '" + std::string(tokens[0]) + "'");
    }
    std::vector<RawTerm> terms;
    for (std::size_t i = 1; i < tokens.size(); ++i) {
      std::string_view t = tokens[i];
      bool positive = true;
      if (!t.empty() && t.front() == '~') {
        positive = false;
        t.remove_prefix(1);
      }
      if (t.size() < 2 || t.front() != 'v') fail("bad term '" + std::string(tokens[i]) + "'");
      const auto id = parse_positive(t.substr(1));
      if (!id) fail("bad vertex id in '" + std::string(tokens[i]) + "'");
      for (const RawTerm& r : terms) {
        if (r.id == *id) fail("vertex v" + std::to_string(*id) + " repeated within a monomial");
      }
      terms.push_back({*id, positive});
    }
    if (coeff == 0) out.warnings.push_back("line " + std::to_string(line_no) + ": zero coefficient");
    if (terms.empty()) {
      out.offset += coeff;
    } else {
      monomials.emplace_back(coeff, std::move(terms));
    }
  }

  std::vector<std::int64_t> labels;
  for (const auto& [c, terms] : monomials) {
    for (const RawTerm& r : terms) labels.push_back(r.id);
  }
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());

  std::vector<std::vector<std::uint32_t>> edges;
  std::vector<std::vector<bool>> sigma;
  std::vector<Rational> profit;
  for (auto& [c, terms] : monomials) {
    std::sort(terms.begin(), terms.end(), [](const RawTerm& a, const RawTerm& b) { return a.id < b.id; });
    std::vector<std::uint32_t> edge;
    std::vector<bool> pol;
    for (const RawTerm& r : terms) {
      edge.push_back(static_cast<std::uint32_t>(std::lower_bound(labels.begin(), labels.end(), r.id) - labels.begin()));
      pol.push_back(r.positive);
    }
    edges.push_back(std::move(edge));
    sigma.push_back(std::move(pol));
    profit.push_back(out.sense == Sense::maximize ? c : Rational(-c));
  }
  if (out.sense == Sense::minimize) out.offset = -out.offset;
  out.inst = LiteralInstance(Hypergraph(std::move(labels), std::move(edges)), std::move(sigma), std::move(profit));
  return out;
}

std::string format_instance(const ParsedInstance& p) {
  std::ostringstream os;
  const bool minimize = p.sense == Sense::minimize;
  auto user = [&](const Rational& v) { return minimize ? Rational(-v) : v; };
  os << (minimize ? "#minimize\n" : "#maximize\n");
  if (p.card_sums) {
    os << "#card ";
    for (std::size_t i = 0; i < p.card_sums->size(); ++i) os << (i ? "," : "") << (*p.card_sums)[i];
    os << '\n';
  }
  if (p.offset != 0) os << format_rational(user(p.offset)) << '\n';
  const auto& h = p.inst.hypergraph;
  for (std::size_t e = 0; e < p.inst.num_edges(); ++e) {
    os << format_rational(user(p.inst.profit[e]));
    for (std::size_t j = 0; j < h.edge(e).size(); ++j) {
      os << ' ' << (p.inst.sigma[e][j] ? "v" : "~v") << h.labels()[h.edge(e)[j]];
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace kcbpo
