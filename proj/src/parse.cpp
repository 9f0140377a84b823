#include "qhfpt/parse.hpp"

#include <cctype>
#include <limits>
#include <map>
#include <optional>

#include "qhfpt/errors.hpp"

namespace qhfpt {

namespace {

struct RawTerm {
  u32 coeff = 1;
  std::vector<u32> exps;
  u64 parameter_power = 0;
  std::string text;
};

class Parser {
public:
  Parser(std::string_view text, const RingPtr& ring, std::optional<std::string> parameter)
      : text_(text), ring_(ring), parameter_(std::move(parameter)) {}

  std::vector<RawTerm> parse() {
    skip_space();
    if (at_end()) throw ParseError("empty input", pos_);
    std::vector<RawTerm> terms;
    bool negative = false;
    if (peek() == '+' || peek() == '-') {
      negative = peek() == '-';
      ++pos_;
    }
    while (true) {
      terms.push_back(parse_term(negative));
      skip_space();
      if (at_end()) break;
      char c = peek();
      if (c != '+' && c != '-') throw ParseError(std::string("unexpected character '") + c + "'", pos_);
      negative = c == '-';
      ++pos_;
    }
    return terms;
  }

private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }

  RawTerm parse_term(bool negative) {
    const u32 p = ring_->prime();
    RawTerm term;
    term.exps.assign(ring_->num_vars(), 0);
    skip_space();
    const std::size_t start = pos_;
    while (true) {
      parse_factor(term);
      skip_space();
      if (at_end() || peek() != '*') break;
      ++pos_;
    }
    std::string_view raw = text_.substr(start, pos_ - start);
    while (!raw.empty() && std::isspace(static_cast<unsigned char>(raw.back()))) raw.remove_suffix(1);
    term.text = (negative ? "-" : "") + std::string(raw);
    if (negative) term.coeff = sub_mod(0, term.coeff, p);
    return term;
  }

  void parse_factor(RawTerm& term) {
    const u32 p = ring_->prime();
    skip_space();
    if (at_end()) throw ParseError("expected a factor", pos_);
    char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      term.coeff = mul_mod(term.coeff, parse_integer_mod(p), p);
      return;
    }
    if (!(std::isalpha(static_cast<unsigned char>(c)) || c == '_'))
      throw ParseError(std::string("expected a factor, found '") + c + "'", pos_);
    const std::size_t name_pos = pos_;
    std::string name;
    while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) name += text_[pos_++];
    u64 exponent = 1;
    skip_space();
    if (!at_end() && peek() == '^') {
      ++pos_;
      skip_space();
      if (at_end()) throw ParseError("missing exponent", pos_);
      if (peek() == '-') throw ParseError("negative exponent", pos_);
      if (!std::isdigit(static_cast<unsigned char>(peek()))) throw ParseError("malformed exponent", pos_);
      exponent = parse_exponent();
    }
    if (parameter_ && name == *parameter_) {
      term.parameter_power += exponent;
      return;
    }
    auto idx = ring_->index_of(name);
    if (!idx) throw ParseError("unknown variable '" + name + "'", name_pos);
    u64 total = u64{term.exps[*idx]} + exponent;
    if (total > std::numeric_limits<u32>::max()) throw ParseError("exponent too large", name_pos);
    term.exps[*idx] = static_cast<u32>(total);
  }

  u32 parse_integer_mod(u32 p) {
    u64 acc = 0;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek())))
      acc = (acc * 10 + static_cast<u64>(text_[pos_++] - '0')) % p;
    return static_cast<u32>(acc);
  }

  u64 parse_exponent() {
    const std::size_t start = pos_;
    u64 acc = 0;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
      acc = acc * 10 + static_cast<u64>(text_[pos_++] - '0');
      if (acc > std::numeric_limits<u32>::max()) throw ParseError("exponent too large", start);
    }
    return acc;
  }

  std::string_view text_;
  const RingPtr& ring_;
  std::optional<std::string> parameter_;
  std::size_t pos_ = 0;
};

std::string reduction_warning(const std::string& text, u32 p) {
  return "term " + text + " ≡ 0 mod " + std::to_string(p);
}

struct Collected {
  Poly poly;
  std::vector<std::string> warnings;
};

Collected collect(const std::vector<const RawTerm*>& terms, const RingPtr& ring) {
  const u32 p = ring->prime();
  std::vector<std::string> warnings;
  std::map<std::vector<u32>, std::pair<u32, std::string>> combined;
  for (const RawTerm* t : terms) {
    if (t->coeff == 0) {
      if (t->text.find_first_not_of("0") != std::string::npos) warnings.push_back(reduction_warning(t->text, p));
      continue;
    }
    auto [it, inserted] = combined.try_emplace(t->exps, 0u, std::string());
    it->second.first = add_mod(it->second.first, t->coeff, p);
    it->second.second += (it->second.second.empty() ? "" : " + ") + t->text;
  }
  PolyAssembler assembler(ring);
  for (const auto& [exps, entry] : combined) {
    if (entry.first == 0)
      warnings.push_back("terms " + entry.second + " cancel mod " + std::to_string(p));
    assembler.push(exps, entry.first);
  }
  return {std::move(assembler).finish(), std::move(warnings)};
}

} // namespace

ParseResult parse_poly_with_warnings(std::string_view text, const RingPtr& ring) {
  auto raw = Parser(text, ring, std::nullopt).parse();
  std::vector<const RawTerm*> ptrs;
  for (const auto& t : raw) ptrs.push_back(&t);
  auto c = collect(ptrs, ring);
  return {std::move(c.poly), std::move(c.warnings)};
}

Poly parse_poly(std::string_view text, const RingPtr& ring) { return parse_poly_with_warnings(text, ring).poly; }

FamilyExpr parse_family(std::string_view text, const RingPtr& ring, const std::string& parameter) {
  if (ring->index_of(parameter))
    throw HypothesisError("unsupported-family", "parameter '" + parameter + "' is also a ring variable");
  auto raw = Parser(text, ring, parameter).parse();
  std::vector<const RawTerm*> base, linear;
  for (const auto& t : raw) {
    if (t.parameter_power >= 2)
      throw HypothesisError("unsupported-family", "parameter " + parameter + " appears with power " +
                                                      std::to_string(t.parameter_power) + " in term " + t.text);
    (t.parameter_power == 1 ? linear : base).push_back(&t);
  }
  return {collect(base, ring).poly, collect(linear, ring).poly, parameter};
}

std::string format_monomial(const GradedRing& ring, const Monomial& m) {
  std::string out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!out.empty()) out += '*';
    out += ring.variables()[i];
    if (m[i] > 1) out += '^' + std::to_string(m[i]);
  }
  return out.empty() ? "1" : out;
}

std::string format_term(const Poly& f, std::size_t term) {
  const u32 c = f.coeff(term);
  auto e = f.exponents(term);
  bool constant = std::all_of(e.begin(), e.end(), [](u32 x) { return x == 0; });
  if (constant) return std::to_string(c);
  std::string mono = format_monomial(*f.ring(), f.term_monomial(term));
  return c == 1 ? mono : std::to_string(c) + "*" + mono;
}

std::string format_poly(const Poly& f) {
  if (f.is_zero()) return "0";
  std::string out;
  for (std::size_t t = 0; t < f.size(); ++t) {
    if (t) out += " + ";
    out += format_term(f, t);
  }
  return out;
}

} // namespace qhfpt
