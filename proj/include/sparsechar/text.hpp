#pragma once

#include <cctype>
#include <charconv>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "sparsechar/error.hpp"
#include "sparsechar/ext_field.hpp"
#include "sparsechar/polynomial.hpp"
#include "sparsechar/rational.hpp"

namespace sparsechar {

// Text forms:
//   field:      p=<int>,m=<int>,r=<int>[,ext_mod=<poly>][,base_mod=<poly>]
//   polynomial: terms joined by '+' (or '-'), each "c*x^e", "c*x", "x^e", "x"
//               or "c"; c is the canonical integer code of a coefficient.
//   rational:   "(<poly>)/(<poly>)", or a bare polynomial.
// The variable may be written x or X; base moduli may also use y.

namespace text_detail {

inline std::pair<std::size_t, std::size_t> line_col(std::string_view s, std::size_t pos) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < pos && i < s.size(); ++i) {
    if (s[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

class Cursor {
 public:
  Cursor(std::string_view src, std::size_t offset, std::string_view full)
      : s_(src), offset_(offset), full_(full) {}

  [[noreturn]] void fail(const std::string& what) const {
    const auto [line, col] = line_col(full_, offset_ + pos_);
    throw ParseError(what, line, col);
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool done() {
    skip_ws();
    return pos_ >= s_.size();
  }
  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  bool at_digit() { return std::isdigit(static_cast<unsigned char>(peek())) != 0; }

  std::uint64_t number() {
    skip_ws();
    std::uint64_t v = 0;
    const char* first = s_.data() + pos_;
    const char* last = s_.data() + s_.size();
    const auto res = std::from_chars(first, last, v);
    if (res.ec == std::errc::result_out_of_range) fail("integer out of range");
    if (res.ec != std::errc{}) fail("expected an integer");
    pos_ += static_cast<std::size_t>(res.ptr - first);
    return v;
  }

  std::size_t pos() const noexcept { return pos_; }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
  std::size_t offset_;
  std::string_view full_;
};

inline constexpr std::uint64_t kMaxDegree = std::uint64_t{1} << 20;

/// Parses a polynomial; stops at ')' '/' or end of input. Coefficient codes
/// must be below `order`. `vars` lists accepted variable letters.
template <FiniteField F>
Polynomial<typename F::Element> parse_poly(const F& f, Cursor& cur, std::string_view vars) {
  using E = typename F::Element;
  std::vector<E> coeffs;
  bool first = true;
  auto is_var = [&](char c) { return c != '\0' && vars.find(c) != std::string_view::npos; };
  while (true) {
    bool negative = false;
    if (!first) {
      if (cur.accept('+')) {
      } else if (cur.accept('-')) {
        negative = true;
      } else {
        break;
      }
    } else if (cur.accept('-')) {
      negative = true;
    }
    first = false;

    E c = f.one();
    std::uint64_t e = 0;
    bool have_coeff = false;
    if (cur.at_digit()) {
      const std::uint64_t code = cur.number();
      if (code >= f.order()) cur.fail("coefficient " + std::to_string(code) + " is not below the field order");
      c = E{static_cast<decltype(E{}.code)>(code)};
      have_coeff = true;
    }
    bool have_var = false;
    if (have_coeff) {
      if (cur.accept('*')) {
        if (!is_var(cur.peek())) cur.fail("expected a variable after '*'");
      }
    }
    if (is_var(cur.peek())) {
      cur.accept(cur.peek());
      have_var = true;
      e = 1;
      if (cur.accept('^')) {
        e = cur.number();
        if (e > kMaxDegree) cur.fail("exponent too large");
      }
    }
    if (!have_coeff && !have_var) cur.fail("expected a term");
    if (negative) c = f.neg(c);
    if (coeffs.size() <= e) coeffs.resize(e + 1, f.zero());
    coeffs[e] = f.add(coeffs[e], c);
  }
  return Polynomial<E>(std::move(coeffs));
}

}  // namespace text_detail

/// Polynomial over any field from its text form.
template <FiniteField F>
Polynomial<typename F::Element> parse_polynomial(const F& f, std::string_view s,
                                                 std::string_view vars = "xX") {
  text_detail::Cursor cur(s, 0, s);
  auto out = text_detail::parse_poly(f, cur, vars);
  if (!cur.done()) cur.fail("unexpected character");
  return out;
}

/// Canonical text of a polynomial: descending exponents, unit coefficients
/// omitted, zero as "0".
template <class E>
std::string format_polynomial(const Polynomial<E>& a, char var = 'x') {
  const auto& c = a.coeffs();
  if (c.empty()) return "0";
  std::string out;
  for (std::size_t i = c.size(); i-- > 0;) {
    if (c[i].code == 0) continue;
    if (!out.empty()) out += '+';
    const bool unit = c[i].code == 1;
    if (i == 0) {
      out += std::to_string(c[i].code);
      continue;
    }
    if (!unit) out += std::to_string(c[i].code) + "*";
    out += var;
    if (i > 1) out += "^" + std::to_string(i);
  }
  return out;
}

inline RatFn parse_rational(const ExtField& f, std::string_view s) {
  text_detail::Cursor cur(s, 0, s);
  auto group = [&]() {
    if (cur.accept('(')) {
      auto p = text_detail::parse_poly(f, cur, "xX");
      cur.expect(')');
      return p;
    }
    return text_detail::parse_poly(f, cur, "xX");
  };
  Poly num = group();
  Poly den = poly::one(f);
  if (cur.accept('/')) {
    const std::size_t at = cur.pos();
    den = group();
    if (den.is_zero()) {
      const auto [line, col] = text_detail::line_col(s, at);
      throw ParseError("denominator is zero", line, col);
    }
  }
  if (!cur.done()) cur.fail("unexpected character");
  return RatFn(f, num, den);
}

inline std::string format_rational(const RatFn& g) {
  if (g.is_polynomial()) return format_polynomial(g.num());
  return "(" + format_polynomial(g.num()) + ")/(" + format_polynomial(g.den()) + ")";
}

/// Parses a field spec into FieldParams (guards left at their defaults).
inline FieldParams parse_field_params(std::string_view s) {
  FieldParams params;
  std::map<std::string, std::pair<std::string, std::size_t>> kv;
  std::size_t start = 0;
  auto fail_at = [&](const std::string& what, std::size_t pos) {
    const auto [line, col] = text_detail::line_col(s, pos);
    throw ParseError(what, line, col);
  };
  while (start <= s.size()) {
    std::size_t end = s.find(',', start);
    if (end == std::string_view::npos) end = s.size();
    std::string_view item = s.substr(start, end - start);
    const std::size_t eq = item.find('=');
    if (eq == std::string_view::npos) fail_at("expected key=value", start);
    std::string key;
    for (char c : item.substr(0, eq)) {
      if (!std::isspace(static_cast<unsigned char>(c))) key += c;
    }
    if (key != "p" && key != "m" && key != "r" && key != "base_mod" && key != "ext_mod")
      fail_at("unknown key '" + key + "'", start);
    if (kv.count(key)) fail_at("duplicate key '" + key + "'", start);
    kv[key] = {std::string(item.substr(eq + 1)), start + eq + 1};
    start = end + 1;
  }
  auto integer = [&](const std::string& key, bool required) -> std::optional<std::uint64_t> {
    auto it = kv.find(key);
    if (it == kv.end()) {
      if (required) fail_at("missing key '" + key + "'", s.size());
      return std::nullopt;
    }
    text_detail::Cursor cur(it->second.first, it->second.second, s);
    const std::uint64_t v = cur.number();
    if (!cur.done()) cur.fail("unexpected character");
    if (v > UINT32_MAX) cur.fail("value out of range");
    return v;
  };
  params.p = static_cast<std::uint32_t>(*integer("p", true));
  params.m = static_cast<unsigned>(integer("m", false).value_or(1));
  params.r = static_cast<unsigned>(*integer("r", true));
  if (params.m == 0) fail_at("m must be at least 1", kv["m"].second);
  if (params.r == 0) fail_at("r must be at least 1", kv["r"].second);
  if (!is_prime(params.p)) fail_at("p is not prime", kv["p"].second);

  const BaseField prime = BaseField::prime(params.p);
  if (auto it = kv.find("base_mod"); it != kv.end()) {
    text_detail::Cursor cur(it->second.first, it->second.second, s);
    const auto h = text_detail::parse_poly(prime, cur, "xXy");
    if (!cur.done()) cur.fail("unexpected character");
    std::vector<std::uint32_t> v;
    for (auto c : h.coeffs()) v.push_back(c.code);
    params.base_modulus = v;
  }
  if (auto it = kv.find("ext_mod"); it != kv.end()) {
    const auto q = checked_pow(params.p, params.m, UINT32_MAX);
    if (!q) fail_at("base field too large", it->second.second);
    // Coefficients are F_q codes; only their range matters for parsing.
    struct CodeRange {
      using Element = FqElem;
      std::uint64_t n;
      FqElem zero() const { return {}; }
      FqElem one() const { return {1}; }
      FqElem add(FqElem a, FqElem b) const {
        if (a.code != 0 && b.code != 0) throw DomainError("repeated term in ext_mod");
        return {a.code + b.code};
      }
      FqElem sub(FqElem a, FqElem b) const { return add(a, b); }
      FqElem neg(FqElem) const { throw DomainError("negative terms are not allowed in ext_mod"); }
      FqElem mul(FqElem a, FqElem) const { return a; }
      FqElem inv(FqElem a) const { return a; }
      FqElem pth_root(FqElem a) const { return a; }
      FqElem from_integer(std::uint64_t) const { return {}; }
      bool is_zero(FqElem a) const { return a.code == 0; }
      std::uint64_t characteristic() const { return 2; }
      std::uint64_t order() const { return n; }
    } range{*q};
    text_detail::Cursor cur(it->second.first, it->second.second, s);
    Polynomial<FqElem> g;
    try {
      g = text_detail::parse_poly(range, cur, "xX");
    } catch (const DomainError& e) {
      cur.fail(e.what());
    }
    if (!cur.done()) cur.fail("unexpected character");
    std::vector<std::uint32_t> v;
    for (auto c : g.coeffs()) v.push_back(c.code);
    params.ext_modulus = v;
  }
  return params;
}

inline FieldPtr parse_field(std::string_view s, const Guards& guards = {}) {
  FieldParams params = parse_field_params(s);
  params.guards = guards;
  return make_field(params);
}

/// Canonical spec; moduli always spelled out so the field is reproducible.
inline std::string format_field(const ExtField& f) {
  std::string out = "p=" + std::to_string(f.characteristic()) + ",m=" + std::to_string(f.m()) +
                    ",r=" + std::to_string(f.r());
  out += ",ext_mod=" + format_polynomial(Polynomial<FqElem>(f.ext_modulus()));
  if (f.m() > 1) {
    std::vector<FqElem> h;
    for (auto c : f.base().modulus()) h.push_back(FqElem{c});
    out += ",base_mod=" + format_polynomial(Polynomial<FqElem>(h), 'y');
  }
  return out;
}

}  // namespace sparsechar
