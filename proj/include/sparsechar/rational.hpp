#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "sparsechar/error.hpp"
#include "sparsechar/ext_field.hpp"
#include "sparsechar/numtheory.hpp"
#include "sparsechar/polynomial.hpp"

namespace sparsechar {

/// Polynomial over F_{q^r}.
using Poly = Polynomial<ExtElem>;
using SquarefreeEntry = poly::SquarefreeFactor<ExtElem>;

/// Reduced rational function num/den over F_{q^r}: den monic and nonzero,
/// gcd(num, den) = 1. The zero function is 0/1.
class RatFn {
 public:
  RatFn() : den_(Poly::constant(ExtElem{1})) {}

  static RatFn polynomial(const ExtField& f, const Poly& p) { return RatFn(f, p, poly::one(f)); }

  RatFn(const ExtField& f, const Poly& num, const Poly& den) {
    if (den.is_zero()) throw DomainError("rational function with zero denominator");
    if (num.is_zero()) {
      num_ = Poly{};
      den_ = poly::one(f);
      return;
    }
    const Poly g = poly::gcd(f, num, den);
    Poly n = poly::exact_div(f, num, g);
    Poly d = poly::exact_div(f, den, g);
    const ExtElem lead_inv = f.inv(d.leading());
    num_ = poly::scale(f, n, lead_inv);
    den_ = poly::scale(f, d, lead_inv);
  }

  const Poly& num() const noexcept { return num_; }
  const Poly& den() const noexcept { return den_; }

  /// max(deg num, deg den); the zero function has degree 0.
  int degree() const noexcept { return std::max({num_.degree(), den_.degree(), 0}); }
  bool is_polynomial() const noexcept { return den_.degree() == 0; }
  bool is_zero() const noexcept { return num_.is_zero(); }

  friend bool operator==(const RatFn&, const RatFn&) = default;

 private:
  Poly num_;
  Poly den_;
};

// ---- polynomial operations over F_{q^r} -------------------------------------

inline Poly poly_gcd(const ExtField& f, const Poly& a, const Poly& b) { return poly::gcd(f, a, b); }

inline Poly derivative(const ExtField& f, const Poly& a) { return poly::derivative(f, a); }

inline std::vector<SquarefreeEntry> squarefree_decomposition(const ExtField& f, const Poly& a) {
  return poly::squarefree_decomposition(f, a);
}

/// True iff no nonconstant p-th power divides a.
inline bool is_pth_power_free(const ExtField& f, const Poly& a) {
  if (a.is_zero()) throw DomainError("is_pth_power_free of the zero polynomial");
  for (const auto& e : poly::squarefree_decomposition(f, a)) {
    if (e.multiplicity >= f.characteristic()) return false;
  }
  return true;
}

/// True iff a has a root of multiplicity exactly one in the closure.
inline bool has_simple_root(const ExtField& f, const Poly& a) {
  if (a.is_zero()) throw DomainError("has_simple_root of the zero polynomial");
  for (const auto& e : poly::squarefree_decomposition(f, a)) {
    if (e.multiplicity == 1) return true;
  }
  return false;
}

inline bool is_irreducible(const ExtField& f, const Poly& a) { return poly::is_irreducible(f, a); }

/// Number of distinct zeros and poles in the closure: the degree of the
/// squarefree part of num * den.
inline unsigned distinct_roots_poles_count(const ExtField& f, const RatFn& g) {
  if (g.is_zero()) throw DomainError("distinct_roots_poles_count of the zero function");
  const Poly prod = poly::mul(f, g.num(), g.den());
  unsigned t = 0;
  for (const auto& e : poly::squarefree_decomposition(f, prod)) t += static_cast<unsigned>(e.factor.degree());
  return t;
}

/// True iff g = h^e for some rational h over the closure: every zero and
/// pole multiplicity is divisible by e (constants are e-th powers there).
inline bool is_eth_power_in_closure(const ExtField& f, const RatFn& g, std::uint64_t e) {
  if (e == 0) throw DomainError("exponent e must be positive");
  if (g.is_zero()) return true;
  for (const Poly* part : {&g.num(), &g.den()}) {
    for (const auto& entry : poly::squarefree_decomposition(f, *part)) {
      if (entry.multiplicity % e != 0) return false;
    }
  }
  return true;
}

// ---- evaluation and composition ---------------------------------------------

/// g(x), or nullopt when x is a pole (den(x) = 0).
inline std::optional<ExtElem> eval(const ExtField& f, const RatFn& g, ExtElem x) {
  const ExtElem d = poly::eval(f, g.den(), x);
  if (f.is_zero(d)) return std::nullopt;
  const ExtElem n = poly::eval(f, g.num(), x);
  return g.is_polynomial() && d == f.one() ? n : f.div(n, d);
}

/// a(X + w) computed term by term: the coefficient of X^j collects
/// a_i C(i, j) w^{i-j}, and only binomials nonzero mod p are visited.
/// Cost is proportional to the number of nonzero terms times the degree.
inline Poly shift_sparse(const ExtField& f, const Poly& a, ExtElem w) {
  const auto& c = a.coeffs();
  if (c.empty()) return a;
  const std::uint64_t p = f.characteristic();
  const std::size_t n = c.size();
  std::vector<ExtElem> wpow(n);
  wpow[0] = f.one();
  for (std::size_t i = 1; i < n; ++i) wpow[i] = f.mul(wpow[i - 1], w);
  std::vector<ExtElem> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (f.is_zero(c[i])) continue;
    if (p == 2) {
      // C(i, j) is odd exactly when j is a submask of i.
      for (std::size_t j = i;; j = (j - 1) & i) {
        out[j] = f.add(out[j], f.mul(c[i], wpow[i - j]));
        if (j == 0) break;
      }
    } else {
      for (std::size_t j = 0; j <= i; ++j) {
        const std::uint64_t b = lucas_binomial_mod_p(i, j, p);
        if (b == 0) continue;
        out[j] = f.add(out[j], f.mul(f.mul(c[i], f.from_integer(b)), wpow[i - j]));
      }
    }
  }
  return Poly(std::move(out));
}

inline Poly shift(const ExtField& f, const Poly& a, ExtElem w) { return poly::taylor_shift(f, a, w); }

/// g(X + w), re-reduced. Degree is preserved.
inline RatFn shift(const ExtField& f, const RatFn& g, ExtElem w) {
  return RatFn(f, poly::taylor_shift(f, g.num(), w), poly::taylor_shift(f, g.den(), w));
}

/// g(X + w) - g(X).
inline RatFn difference(const ExtField& f, const RatFn& g, ExtElem w) {
  const RatFn s = shift(f, g, w);
  // n1/d1 - n0/d0
  const Poly num = poly::sub(f, poly::mul(f, s.num(), g.den()), poly::mul(f, g.num(), s.den()));
  return RatFn(f, num, poly::mul(f, s.den(), g.den()));
}

inline RatFn add(const ExtField& f, const RatFn& a, const RatFn& b) {
  const Poly num = poly::add(f, poly::mul(f, a.num(), b.den()), poly::mul(f, b.num(), a.den()));
  return RatFn(f, num, poly::mul(f, a.den(), b.den()));
}

inline RatFn scale(const ExtField& f, const RatFn& a, ExtElem c) {
  return RatFn(f, poly::scale(f, a.num(), c), a.den());
}

}  // namespace sparsechar
