#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sparsechar/base_field.hpp"
#include "sparsechar/config.hpp"
#include "sparsechar/error.hpp"
#include "sparsechar/numtheory.hpp"
#include "sparsechar/polynomial.hpp"

namespace sparsechar {

/// Element of F_{q^r} = F_q[x]/(g) in canonical encoding: the r coordinates
/// in the polynomial basis, little-endian in base q. Coordinate i is itself
/// an FqElem code, so the code is also the base-p digit string of length rm.
struct ExtElem {
  std::uint64_t code = 0;
  friend constexpr auto operator<=>(const ExtElem&, const ExtElem&) = default;
};

/// Parameters accepted by make_field. Moduli are low-to-high coefficient
/// lists including the leading 1; basis columns give theta_1..theta_r in
/// polynomial-basis coordinates (FqElem codes).
struct FieldParams {
  std::uint32_t p = 2;
  unsigned m = 1;
  unsigned r = 1;
  std::optional<std::vector<std::uint32_t>> base_modulus;
  std::optional<std::vector<std::uint32_t>> ext_modulus;
  std::optional<std::vector<std::vector<std::uint32_t>>> basis;
  Guards guards{};
};

class ExtField;
using FieldPtr = std::shared_ptr<const ExtField>;

FieldPtr make_field(const FieldParams& params);

namespace detail {

/// Lexicographically first monic irreducible of degree n over f, where a
/// candidate X^n + sum_{i<n} c_i X^i is ranked by sum_i c_i |F|^i.
template <FiniteField F>
Polynomial<typename F::Element> first_irreducible(const F& f, unsigned n) {
  using E = typename F::Element;
  const std::uint64_t size = f.order();
  const auto count = checked_pow(size, n, UINT64_MAX);
  if (!count) throw GuardViolation("modulus_search", "modulus search space too large");
  for (std::uint64_t code = 0; code < *count; ++code) {
    std::vector<E> c(n + 1);
    std::uint64_t x = code;
    for (unsigned i = 0; i < n; ++i) {
      c[i] = E{static_cast<decltype(E{}.code)>(x % size)};
      x /= size;
    }
    c[n] = f.one();
    Polynomial<E> cand(std::move(c));
    if (poly::is_irreducible(f, cand)) return cand;
  }
  throw DomainError("no irreducible polynomial found");  // unreachable for a field
}

}  // namespace detail

/// The field F_{q^r} with an ordered basis over F_q. Immutable; share it
/// through FieldPtr.
class ExtField {
 public:
  using Element = ExtElem;

  ExtField(BaseField base, unsigned r, std::vector<FqElem> ext_modulus, const Guards& guards)
      : base_(std::move(base)), r_(r), g_(std::move(ext_modulus)), guards_(guards) {
    p_ = base_.characteristic();
    m_ = base_.degree();
    q_ = base_.order();
    const auto order = checked_pow(q_, r_, guards_.max_field_order);
    if (!order)
      throw GuardViolation("max_field_order", "field order q^r exceeds the configured limit " +
                                                  std::to_string(guards_.max_field_order));
    Q_ = *order;
    rm_ = r_ * m_;
    // p^k for every digit place, used by digit-wise addition.
    place_.resize(rm_ + 1);
    place_[0] = 1;
    for (unsigned k = 0; k < rm_; ++k) place_[k + 1] = place_[k] * p_;
    if (Q_ >= 2 && Q_ <= guards_.max_arith_table) build_tables();
    build_trace_functional();
    basis_.resize(r_);
    for (unsigned i = 0; i < r_; ++i) basis_[i] = ExtElem{ipow(q_, i)};
  }

  // ---- parameters -------------------------------------------------------
  std::uint32_t characteristic() const noexcept { return p_; }
  unsigned m() const noexcept { return m_; }
  unsigned r() const noexcept { return r_; }
  std::uint64_t q() const noexcept { return q_; }
  /// q^r.
  std::uint64_t order() const noexcept { return Q_; }
  const BaseField& base() const noexcept { return base_; }
  const std::vector<FqElem>& ext_modulus() const noexcept { return g_; }
  const Guards& guards() const noexcept { return guards_; }
  bool has_tables() const noexcept { return !exp_.empty(); }
  bool has_custom_basis() const noexcept { return !basis_inv_.empty(); }
  /// theta_1..theta_r.
  const std::vector<ExtElem>& basis() const noexcept { return basis_; }

  // ---- arithmetic --------------------------------------------------------
  ExtElem zero() const noexcept { return {0}; }
  ExtElem one() const noexcept { return {1}; }
  ExtElem from_integer(std::uint64_t n) const noexcept { return {n % p_}; }
  bool is_zero(ExtElem a) const noexcept { return a.code == 0; }

  ExtElem add(ExtElem a, ExtElem b) const noexcept {
    if (p_ == 2) return {a.code ^ b.code};
    std::uint64_t x = a.code, y = b.code, out = 0;
    for (unsigned k = 0; x != 0 || y != 0; ++k) {
      std::uint64_t s = x % p_ + y % p_;
      if (s >= p_) s -= p_;
      out += s * place_[k];
      x /= p_;
      y /= p_;
    }
    return {out};
  }

  ExtElem neg(ExtElem a) const noexcept {
    if (p_ == 2) return a;
    std::uint64_t x = a.code, out = 0;
    for (unsigned k = 0; x != 0; ++k) {
      const std::uint64_t d = x % p_;
      if (d != 0) out += (p_ - d) * place_[k];
      x /= p_;
    }
    return {out};
  }

  ExtElem sub(ExtElem a, ExtElem b) const noexcept { return add(a, neg(b)); }

  ExtElem mul(ExtElem a, ExtElem b) const {
    if (a.code == 0 || b.code == 0) return {0};
    if (!exp_.empty()) {
      std::uint64_t e = std::uint64_t{log_[a.code]} + log_[b.code];
      if (e >= Q_ - 1) e -= Q_ - 1;
      return {exp_[e]};
    }
    return mul_schoolbook(a, b);
  }

  ExtElem pow(ExtElem a, std::uint64_t n) const {
    if (!exp_.empty()) {
      if (a.code == 0) return {n == 0 ? 1u : 0u};
      const std::uint64_t e = static_cast<std::uint64_t>(u128{log_[a.code]} * (n % (Q_ - 1)) % (Q_ - 1));
      return {exp_[e]};
    }
    ExtElem acc = one();
    while (n != 0) {
      if (n & 1) acc = mul(acc, a);
      n >>= 1;
      if (n != 0) a = mul(a, a);
    }
    return acc;
  }

  ExtElem inv(ExtElem a) const {
    if (a.code == 0) throw DomainError("inversion of zero in F_{q^r}");
    if (!exp_.empty()) return {exp_[(Q_ - 1 - log_[a.code]) % (Q_ - 1)]};
    return pow(a, Q_ - 2);
  }

  ExtElem div(ExtElem a, ExtElem b) const { return mul(a, inv(b)); }

  ExtElem frobenius(ExtElem a) const { return pow(a, p_); }
  /// Inverse of frobenius: a^{p^{rm-1}}.
  ExtElem pth_root(ExtElem a) const { return pow(a, Q_ / p_); }

  /// Product by polynomial multiplication modulo g; the reference path.
  ExtElem mul_schoolbook(ExtElem a, ExtElem b) const {
    const auto ca = coords(a), cb = coords(b);
    std::vector<FqElem> prod(2 * r_ - 1);
    for (unsigned i = 0; i < r_; ++i) {
      if (ca[i].code == 0) continue;
      for (unsigned j = 0; j < r_; ++j) prod[i + j] = base_.add(prod[i + j], base_.mul(ca[i], cb[j]));
    }
    for (std::size_t i = prod.size(); i-- > r_;) {
      const FqElem c = prod[i];
      if (c.code == 0) continue;
      for (unsigned j = 0; j < r_; ++j) {
        prod[i - r_ + j] = base_.sub(prod[i - r_ + j], base_.mul(c, g_[j]));
      }
      prod[i] = FqElem{};
    }
    prod.resize(r_);
    return from_coords(prod);
  }

  // ---- trace --------------------------------------------------------------
  /// Absolute trace, returned as a residue in [0, p).
  std::uint32_t trace(ExtElem a) const noexcept {
    if (p_ == 2) return static_cast<std::uint32_t>(std::popcount(a.code & trace_mask_) & 1);
    std::uint64_t x = a.code, acc = 0;
    for (unsigned k = 0; x != 0; ++k) {
      acc += (x % p_) * trace_digit_[k];
      x /= p_;
    }
    return static_cast<std::uint32_t>(acc % p_);
  }

  /// sum_{j < rm} a^{p^j}; lies in the prime field. Reference for trace().
  ExtElem trace_by_frobenius(ExtElem a) const {
    ExtElem acc = zero();
    for (unsigned j = 0; j < rm_; ++j) {
      acc = add(acc, a);
      a = frobenius(a);
    }
    return acc;
  }

  /// Trace down to F_q: sum_{j < r} a^{q^j}. Result lies in F_q.
  FqElem relative_trace(ExtElem a) const {
    ExtElem acc = zero();
    for (unsigned j = 0; j < r_; ++j) {
      acc = add(acc, a);
      a = pow(a, q_);
    }
    return to_base(acc);
  }

  // ---- coordinates and basis -------------------------------------------
  std::vector<FqElem> coords(ExtElem a) const {
    std::vector<FqElem> c(r_);
    std::uint64_t x = a.code;
    for (unsigned i = 0; i < r_; ++i) {
      c[i] = FqElem{static_cast<std::uint32_t>(x % q_)};
      x /= q_;
    }
    return c;
  }

  ExtElem from_coords(std::span<const FqElem> c) const {
    if (c.size() != r_) throw DomainError("F_{q^r} element needs exactly r coordinates");
    std::uint64_t out = 0;
    for (std::size_t i = c.size(); i-- > 0;) {
      if (c[i].code >= q_) throw DomainError("coordinate out of range");
      out = out * q_ + c[i].code;
    }
    return {out};
  }

  ExtElem embed(FqElem a) const noexcept { return {a.code}; }
  bool in_base_field(ExtElem a) const noexcept { return a.code < q_; }
  FqElem to_base(ExtElem a) const {
    if (!in_base_field(a)) throw DomainError("element does not lie in F_q");
    return {static_cast<std::uint32_t>(a.code)};
  }

  /// c * a for c in F_q.
  ExtElem scalar_mul(FqElem c, ExtElem a) const {
    if (c.code == 0 || a.code == 0) return zero();
    if (c.code == 1) return a;
    auto v = coords(a);
    for (auto& e : v) e = base_.mul(c, e);
    return from_coords(v);
  }

  /// Coordinates u_1..u_r with a = sum u_i theta_i.
  std::vector<FqElem> basis_coords(ExtElem a) const {
    auto c = coords(a);
    if (basis_inv_.empty()) return c;
    std::vector<FqElem> u(r_);
    for (unsigned i = 0; i < r_; ++i) {
      FqElem acc{};
      for (unsigned j = 0; j < r_; ++j) acc = base_.add(acc, base_.mul(basis_inv_[i * r_ + j], c[j]));
      u[i] = acc;
    }
    return u;
  }

  /// sum u_i theta_i.
  ExtElem from_basis_coords(std::span<const FqElem> u) const {
    if (basis_inv_.empty()) return from_coords(u);
    if (u.size() != r_) throw DomainError("need exactly r basis coordinates");
    ExtElem acc = zero();
    for (unsigned i = 0; i < r_; ++i) acc = add(acc, scalar_mul(u[i], basis_[i]));
    return acc;
  }

  /// Number of nonzero coordinates in the ordered basis.
  unsigned weight(ExtElem a) const {
    unsigned w = 0;
    if (basis_inv_.empty()) {
      std::uint64_t x = a.code;
      while (x != 0) {
        w += (x % q_) != 0;
        x /= q_;
      }
      return w;
    }
    for (auto u : basis_coords(a)) w += u.code != 0;
    return w;
  }

  /// Installs theta_1..theta_r; columns are polynomial-basis coordinates.
  void set_basis(const std::vector<std::vector<std::uint32_t>>& columns) {
    if (columns.size() != r_) throw DomainError("basis needs r columns");
    std::vector<FqElem> mat(r_ * r_);  // row-major, mat[j*r+i] = coord j of theta_i
    std::vector<ExtElem> thetas(r_);
    for (unsigned i = 0; i < r_; ++i) {
      if (columns[i].size() != r_) throw DomainError("basis column needs r entries");
      std::vector<FqElem> col(r_);
      for (unsigned j = 0; j < r_; ++j) {
        if (columns[i][j] >= q_) throw DomainError("basis entry out of range");
        col[j] = FqElem{columns[i][j]};
        mat[j * r_ + i] = col[j];
      }
      thetas[i] = from_coords(col);
    }
    auto inverse = invert_matrix(mat);
    if (!inverse) throw DomainError("basis matrix is singular over F_q");
    basis_ = std::move(thetas);
    bool identity = true;
    for (unsigned i = 0; i < r_; ++i) identity = identity && basis_[i].code == ipow(q_, i);
    if (identity) {
      basis_inv_.clear();
    } else {
      basis_inv_ = std::move(*inverse);
    }
  }

 private:
  std::optional<std::vector<FqElem>> invert_matrix(std::vector<FqElem> a) const {
    const unsigned n = r_;
    std::vector<FqElem> inv(n * n);
    for (unsigned i = 0; i < n; ++i) inv[i * n + i] = base_.one();
    for (unsigned col = 0; col < n; ++col) {
      unsigned piv = col;
      while (piv < n && a[piv * n + col].code == 0) ++piv;
      if (piv == n) return std::nullopt;
      if (piv != col) {
        for (unsigned k = 0; k < n; ++k) {
          std::swap(a[piv * n + k], a[col * n + k]);
          std::swap(inv[piv * n + k], inv[col * n + k]);
        }
      }
      const FqElem s = base_.inv(a[col * n + col]);
      for (unsigned k = 0; k < n; ++k) {
        a[col * n + k] = base_.mul(a[col * n + k], s);
        inv[col * n + k] = base_.mul(inv[col * n + k], s);
      }
      for (unsigned row = 0; row < n; ++row) {
        if (row == col || a[row * n + col].code == 0) continue;
        const FqElem t = a[row * n + col];
        for (unsigned k = 0; k < n; ++k) {
          a[row * n + k] = base_.sub(a[row * n + k], base_.mul(t, a[col * n + k]));
          inv[row * n + k] = base_.sub(inv[row * n + k], base_.mul(t, inv[col * n + k]));
        }
      }
    }
    return inv;
  }

  void build_tables() {
    const std::uint64_t n = Q_ - 1;
    const auto factors = prime_factors(n);
    auto slow_pow = [&](ExtElem a, std::uint64_t e) {
      ExtElem acc = one();
      while (e != 0) {
        if (e & 1) acc = mul_schoolbook(acc, a);
        e >>= 1;
        if (e != 0) a = mul_schoolbook(a, a);
      }
      return acc;
    };
    ExtElem gen{1};
    for (std::uint64_t c = 1; c < Q_; ++c) {
      bool primitive = true;
      for (auto f : factors) {
        if (slow_pow({c}, n / f) == one()) {
          primitive = false;
          break;
        }
      }
      if (primitive) {
        gen = {c};
        break;
      }
    }
    exp_.resize(n);
    log_.assign(Q_, 0);
    ExtElem x = one();
    for (std::uint64_t i = 0; i < n; ++i) {
      exp_[i] = static_cast<std::uint32_t>(x.code);
      log_[x.code] = static_cast<std::uint32_t>(i);
      x = mul_schoolbook(x, gen);
    }
  }

  void build_trace_functional() {
    trace_digit_.resize(rm_);
    trace_mask_ = 0;
    for (unsigned k = 0; k < rm_; ++k) {
      const ExtElem t = trace_by_frobenius(ExtElem{place_[k]});
      if (t.code >= p_) throw DomainError("internal: trace left the prime field");
      trace_digit_[k] = static_cast<std::uint32_t>(t.code);
      if (t.code != 0) trace_mask_ |= std::uint64_t{1} << k;
    }
  }

  BaseField base_;
  unsigned r_;
  std::vector<FqElem> g_;
  Guards guards_;
  std::uint32_t p_ = 0;
  unsigned m_ = 1;
  std::uint64_t q_ = 0;
  std::uint64_t Q_ = 0;
  unsigned rm_ = 0;
  std::vector<std::uint64_t> place_;
  std::vector<std::uint32_t> exp_;
  std::vector<std::uint32_t> log_;
  std::vector<std::uint32_t> trace_digit_;
  std::uint64_t trace_mask_ = 0;
  std::vector<ExtElem> basis_;
  std::vector<FqElem> basis_inv_;  // empty for the polynomial basis
};

/// Builds and validates F_{q^r}. Omitted moduli are replaced by the
/// lexicographically first monic irreducible of the required degree.
inline FieldPtr make_field(const FieldParams& params) {
  if (!is_prime(params.p)) throw DomainError("p = " + std::to_string(params.p) + " is not prime");
  if (params.m < 1 || params.r < 1) throw DomainError("m and r must be at least 1");
  const Guards& guards = params.guards;
  if (!checked_pow(params.p, std::uint64_t{params.m} * params.r, guards.max_field_order))
    throw GuardViolation("max_field_order", "field order q^r exceeds the configured limit " +
                                                std::to_string(guards.max_field_order));

  const BaseField prime = BaseField::prime(params.p);
  std::vector<std::uint32_t> base_mod;
  if (params.base_modulus) {
    base_mod = *params.base_modulus;
    if (base_mod.size() != params.m + 1 || base_mod.back() != 1)
      throw DomainError("base modulus must be monic of degree m");
    std::vector<FqElem> c;
    for (auto v : base_mod) {
      if (v >= params.p) throw DomainError("base modulus coefficient out of range");
      c.push_back(FqElem{v});
    }
    if (!poly::is_irreducible(prime, Polynomial<FqElem>(c)))
      throw DomainError("base modulus is reducible over F_p");
  } else if (params.m == 1) {
    base_mod = {0, 1};
  } else {
    const auto found = detail::first_irreducible(prime, params.m);
    for (auto c : found.coeffs()) base_mod.push_back(c.code);
  }
  BaseField base(params.p, base_mod);

  std::vector<FqElem> ext_mod;
  if (params.ext_modulus) {
    const auto& v = *params.ext_modulus;
    if (v.size() != params.r + 1 || v.back() != 1)
      throw DomainError("extension modulus must be monic of degree r");
    for (auto c : v) {
      if (c >= base.order()) throw DomainError("extension modulus coefficient out of range");
      ext_mod.push_back(FqElem{c});
    }
    if (!poly::is_irreducible(base, Polynomial<FqElem>(ext_mod)))
      throw DomainError("extension modulus is reducible over F_q");
  } else {
    ext_mod = detail::first_irreducible(base, params.r).coeffs();
  }

  auto field = std::make_shared<ExtField>(std::move(base), params.r, std::move(ext_mod), guards);
  if (params.basis) field->set_basis(*params.basis);
  return field;
}

}  // namespace sparsechar
