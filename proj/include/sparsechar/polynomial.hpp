#pragma once

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <utility>
#include <vector>

#include "sparsechar/error.hpp"

namespace sparsechar {

/// Operations a coefficient field must provide. Elements are small value
/// types whose default-constructed value is the field's zero.
template <class F>
concept FiniteField = requires(const F& f, typename F::Element a, typename F::Element b,
                               std::uint64_t n) {
  { f.zero() } -> std::same_as<typename F::Element>;
  { f.one() } -> std::same_as<typename F::Element>;
  { f.add(a, b) } -> std::same_as<typename F::Element>;
  { f.sub(a, b) } -> std::same_as<typename F::Element>;
  { f.neg(a) } -> std::same_as<typename F::Element>;
  { f.mul(a, b) } -> std::same_as<typename F::Element>;
  { f.inv(a) } -> std::same_as<typename F::Element>;
  { f.pth_root(a) } -> std::same_as<typename F::Element>;
  { f.from_integer(n) } -> std::same_as<typename F::Element>;
  { f.is_zero(a) } -> std::convertible_to<bool>;
  { f.characteristic() } -> std::convertible_to<std::uint64_t>;
  { f.order() } -> std::convertible_to<std::uint64_t>;
};

/// Dense univariate polynomial, constant term first, no trailing zeros.
/// The zero polynomial has no coefficients and degree kZeroDegree.
template <class E>
class Polynomial {
 public:
  static constexpr int kZeroDegree = -1;

  Polynomial() = default;
  explicit Polynomial(std::vector<E> coeffs) : c_(std::move(coeffs)) { trim(); }

  static Polynomial constant(E c) { return Polynomial(std::vector<E>{c}); }
  static Polynomial monomial(E c, std::size_t e) {
    std::vector<E> v(e + 1);
    v[e] = c;
    return Polynomial(std::move(v));
  }

  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const noexcept { return c_.empty(); }
  bool is_constant() const noexcept { return c_.size() <= 1; }
  const std::vector<E>& coeffs() const noexcept { return c_; }
  E coeff(std::size_t i) const noexcept { return i < c_.size() ? c_[i] : E{}; }
  E leading() const noexcept { return c_.empty() ? E{} : c_.back(); }
  std::size_t size() const noexcept { return c_.size(); }

  /// Number of nonzero coefficients.
  std::size_t weight() const noexcept {
    return static_cast<std::size_t>(std::count_if(c_.begin(), c_.end(), [](E e) { return e != E{}; }));
  }

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  void trim() {
    while (!c_.empty() && c_.back() == E{}) c_.pop_back();
  }

  std::vector<E> c_;
};

namespace poly {

template <FiniteField F>
using Poly = Polynomial<typename F::Element>;

template <FiniteField F>
Poly<F> one(const F& f) {
  return Poly<F>::constant(f.one());
}

template <FiniteField F>
Poly<F> x(const F& f) {
  return Poly<F>::monomial(f.one(), 1);
}

template <FiniteField F>
Poly<F> add(const F& f, const Poly<F>& a, const Poly<F>& b) {
  const auto& ca = a.coeffs();
  const auto& cb = b.coeffs();
  std::vector<typename F::Element> out(std::max(ca.size(), cb.size()));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = f.add(a.coeff(i), b.coeff(i));
  return Poly<F>(std::move(out));
}

template <FiniteField F>
Poly<F> neg(const F& f, const Poly<F>& a) {
  std::vector<typename F::Element> out(a.coeffs());
  for (auto& c : out) c = f.neg(c);
  return Poly<F>(std::move(out));
}

template <FiniteField F>
Poly<F> sub(const F& f, const Poly<F>& a, const Poly<F>& b) {
  const auto& ca = a.coeffs();
  const auto& cb = b.coeffs();
  std::vector<typename F::Element> out(std::max(ca.size(), cb.size()));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = f.sub(a.coeff(i), b.coeff(i));
  return Poly<F>(std::move(out));
}

template <FiniteField F>
Poly<F> scale(const F& f, const Poly<F>& a, typename F::Element c) {
  std::vector<typename F::Element> out(a.coeffs());
  for (auto& e : out) e = f.mul(e, c);
  return Poly<F>(std::move(out));
}

template <FiniteField F>
Poly<F> mul(const F& f, const Poly<F>& a, const Poly<F>& b) {
  if (a.is_zero() || b.is_zero()) return {};
  const auto& ca = a.coeffs();
  const auto& cb = b.coeffs();
  std::vector<typename F::Element> out(ca.size() + cb.size() - 1);
  for (std::size_t i = 0; i < ca.size(); ++i) {
    if (f.is_zero(ca[i])) continue;
    for (std::size_t j = 0; j < cb.size(); ++j) {
      if (f.is_zero(cb[j])) continue;
      out[i + j] = f.add(out[i + j], f.mul(ca[i], cb[j]));
    }
  }
  return Poly<F>(std::move(out));
}

/// Quotient and remainder of a by a nonzero b.
template <FiniteField F>
std::pair<Poly<F>, Poly<F>> divmod(const F& f, const Poly<F>& a, const Poly<F>& b) {
  if (b.is_zero()) throw DomainError("polynomial division by zero");
  if (a.degree() < b.degree()) return {Poly<F>{}, a};
  std::vector<typename F::Element> r(a.coeffs());
  const auto& cb = b.coeffs();
  const std::size_t db = cb.size() - 1;
  const auto lead_inv = f.inv(cb.back());
  std::vector<typename F::Element> q(r.size() - db);
  for (std::size_t i = r.size(); i-- > db;) {
    if (f.is_zero(r[i])) continue;
    const auto c = f.mul(r[i], lead_inv);
    q[i - db] = c;
    for (std::size_t j = 0; j <= db; ++j) r[i - db + j] = f.sub(r[i - db + j], f.mul(c, cb[j]));
  }
  r.resize(db);
  return {Poly<F>(std::move(q)), Poly<F>(std::move(r))};
}

template <FiniteField F>
Poly<F> mod(const F& f, const Poly<F>& a, const Poly<F>& b) {
  return divmod(f, a, b).second;
}

template <FiniteField F>
Poly<F> exact_div(const F& f, const Poly<F>& a, const Poly<F>& b) {
  return divmod(f, a, b).first;
}

template <FiniteField F>
Poly<F> monic(const F& f, const Poly<F>& a) {
  if (a.is_zero()) return a;
  return scale(f, a, f.inv(a.leading()));
}

template <FiniteField F>
bool is_monic(const F& f, const Poly<F>& a) {
  return !a.is_zero() && a.leading() == f.one();
}

/// Monic greatest common divisor; both-zero input is an error.
template <FiniteField F>
Poly<F> gcd(const F& f, Poly<F> a, Poly<F> b) {
  if (a.is_zero() && b.is_zero()) throw DomainError("gcd of two zero polynomials");
  while (!b.is_zero()) {
    auto r = mod(f, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(f, a);
}

template <FiniteField F>
Poly<F> derivative(const F& f, const Poly<F>& a) {
  if (a.degree() < 1) return {};
  const auto& c = a.coeffs();
  std::vector<typename F::Element> out(c.size() - 1);
  for (std::size_t i = 1; i < c.size(); ++i) out[i - 1] = f.mul(f.from_integer(i), c[i]);
  return Poly<F>(std::move(out));
}

template <FiniteField F>
typename F::Element eval(const F& f, const Poly<F>& a, typename F::Element x) {
  const auto& c = a.coeffs();
  typename F::Element acc = f.zero();
  for (std::size_t i = c.size(); i-- > 0;) acc = f.add(f.mul(acc, x), c[i]);
  return acc;
}

/// a(X + w) by repeated synthetic division (Taylor shift), O(d^2).
template <FiniteField F>
Poly<F> taylor_shift(const F& f, const Poly<F>& a, typename F::Element w) {
  std::vector<typename F::Element> c(a.coeffs());
  const std::size_t n = c.size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = n - 1; j-- > i;) c[j] = f.add(c[j], f.mul(w, c[j + 1]));
  }
  return Poly<F>(std::move(c));
}

template <FiniteField F>
Poly<F> pow(const F& f, Poly<F> base, std::uint64_t e) {
  Poly<F> acc = one(f);
  while (e != 0) {
    if (e & 1) acc = mul(f, acc, base);
    e >>= 1;
    if (e != 0) base = mul(f, base, base);
  }
  return acc;
}

/// base^e mod m.
template <FiniteField F>
Poly<F> pow_mod(const F& f, Poly<F> base, std::uint64_t e, const Poly<F>& m) {
  Poly<F> acc = mod(f, one(f), m);
  base = mod(f, base, m);
  while (e != 0) {
    if (e & 1) acc = mod(f, mul(f, acc, base), m);
    e >>= 1;
    if (e != 0) base = mod(f, mul(f, base, base), m);
  }
  return acc;
}

/// For a polynomial in X^p only: the unique w with w(X)^p = a(X).
template <FiniteField F>
Poly<F> pth_root(const F& f, const Poly<F>& a) {
  const std::uint64_t p = f.characteristic();
  const auto& c = a.coeffs();
  std::vector<typename F::Element> out(c.empty() ? 0 : (c.size() - 1) / p + 1);
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (f.is_zero(c[i])) continue;
    if (i % p != 0) throw DomainError("pth_root: polynomial is not a p-th power");
    out[i / p] = f.pth_root(c[i]);
  }
  return Poly<F>(std::move(out));
}

/// Irreducibility over F: no common factor with X^{Q^i} - X for i <= deg/2.
template <FiniteField F>
bool is_irreducible(const F& f, const Poly<F>& a) {
  if (a.degree() < 1) throw DomainError("is_irreducible: constant polynomial");
  if (a.degree() == 1) return true;
  const Poly<F> m = monic(f, a);
  const Poly<F> xp = x(f);
  Poly<F> power = xp;  // X^{Q^i} mod m
  for (int i = 1; 2 * i <= m.degree(); ++i) {
    power = pow_mod(f, power, f.order(), m);
    const auto g = gcd(f, m, sub(f, power, xp));
    if (g.degree() > 0) return false;
  }
  return true;
}

/// One entry of a squarefree decomposition.
template <class E>
struct SquarefreeFactor {
  Polynomial<E> factor;
  std::uint64_t multiplicity;
  friend bool operator==(const SquarefreeFactor&, const SquarefreeFactor&) = default;
};

/// Yun-style squarefree decomposition with the characteristic-p descent:
/// the part whose derivative vanishes is a p-th power and is recursed on
/// after taking p-th roots of its coefficients. Factors are monic, pairwise
/// coprime, squarefree; sorted by multiplicity.
template <FiniteField F>
std::vector<SquarefreeFactor<typename F::Element>> squarefree_decomposition(const F& f,
                                                                             const Poly<F>& a) {
  using Factor = SquarefreeFactor<typename F::Element>;
  if (a.is_zero()) throw DomainError("squarefree_decomposition of the zero polynomial");
  std::vector<Factor> out;
  Poly<F> g = monic(f, a);
  if (g.degree() < 1) return out;
  const std::uint64_t p = f.characteristic();

  Poly<F> c = gcd(f, g, derivative(f, g));
  Poly<F> w = exact_div(f, g, c);
  std::uint64_t i = 1;
  while (w.degree() > 0) {
    Poly<F> y = gcd(f, w, c);
    Poly<F> fac = exact_div(f, w, y);
    if (fac.degree() > 0) out.push_back({fac, i});
    w = std::move(y);
    c = exact_div(f, c, w);
    ++i;
  }
  if (c.degree() > 0) {
    for (auto& sub_factor : squarefree_decomposition(f, pth_root(f, c))) {
      out.push_back({std::move(sub_factor.factor), sub_factor.multiplicity * p});
    }
  }
  std::sort(out.begin(), out.end(), [](const Factor& l, const Factor& r) {
    return l.multiplicity < r.multiplicity;
  });
  return out;
}

/// Product of the distinct monic irreducible factors.
template <FiniteField F>
Poly<F> radical(const F& f, const Poly<F>& a) {
  Poly<F> acc = one(f);
  for (const auto& e : squarefree_decomposition(f, a)) acc = mul(f, acc, e.factor);
  return acc;
}

}  // namespace poly
}  // namespace sparsechar
