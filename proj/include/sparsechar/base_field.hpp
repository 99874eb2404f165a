#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

#include "sparsechar/error.hpp"
#include "sparsechar/numtheory.hpp"

namespace sparsechar {

/// Element of F_q = F_p[y]/(h). The code packs the m residues little-endian
/// in base p: code = sum_j c_j p^j, so 0 is zero and 1 is one.
struct FqElem {
  std::uint32_t code = 0;
  friend constexpr auto operator<=>(const FqElem&, const FqElem&) = default;
};

/// The coefficient field F_q. Immutable after construction.
class BaseField {
 public:
  using Element = FqElem;

  /// F_p itself, represented with modulus y.
  static BaseField prime(std::uint32_t p) { return BaseField(p, {0, 1}); }

  /// F_p[y]/(modulus). `modulus` is monic, low-to-high, entries in [0, p).
  /// Irreducibility is checked by make_field, not here.
  BaseField(std::uint32_t p, std::vector<std::uint32_t> modulus)
      : p_(p), modulus_(std::move(modulus)) {
    if (!is_prime(p_)) throw DomainError("p = " + std::to_string(p_) + " is not prime");
    if (modulus_.size() < 2 || modulus_.back() != 1)
      throw DomainError("base modulus must be monic of degree >= 1");
    for (auto c : modulus_) {
      if (c >= p_) throw DomainError("base modulus coefficient out of range");
    }
    m_ = static_cast<unsigned>(modulus_.size() - 1);
    const auto q = checked_pow(p_, m_, UINT32_MAX);
    if (!q) throw GuardViolation("q", "base field order p^m exceeds 2^32 - 1");
    q_ = static_cast<std::uint32_t>(*q);
    if (m_ > 1 && q_ <= (1u << 16)) build_tables();
  }

  std::uint32_t characteristic() const noexcept { return p_; }
  unsigned degree() const noexcept { return m_; }
  std::uint64_t order() const noexcept { return q_; }
  const std::vector<std::uint32_t>& modulus() const noexcept { return modulus_; }

  FqElem zero() const noexcept { return {0}; }
  FqElem one() const noexcept { return {1}; }
  FqElem from_integer(std::uint64_t n) const noexcept {
    return {static_cast<std::uint32_t>(n % p_)};
  }
  bool is_zero(FqElem a) const noexcept { return a.code == 0; }

  FqElem add(FqElem a, FqElem b) const noexcept {
    if (p_ == 2) return {a.code ^ b.code};
    if (m_ == 1) {
      const std::uint64_t s = std::uint64_t{a.code} + b.code;
      return {static_cast<std::uint32_t>(s >= p_ ? s - p_ : s)};
    }
    std::uint32_t x = a.code, y = b.code, out = 0, place = 1;
    for (unsigned j = 0; j < m_; ++j) {
      std::uint32_t s = x % p_ + y % p_;
      if (s >= p_) s -= p_;
      out += s * place;
      x /= p_;
      y /= p_;
      place *= p_;
    }
    return {out};
  }

  FqElem neg(FqElem a) const noexcept {
    if (p_ == 2) return a;
    if (m_ == 1) return {a.code == 0 ? 0 : p_ - a.code};
    std::uint32_t x = a.code, out = 0, place = 1;
    for (unsigned j = 0; j < m_; ++j) {
      const std::uint32_t d = x % p_;
      out += (d == 0 ? 0 : p_ - d) * place;
      x /= p_;
      place *= p_;
    }
    return {out};
  }

  FqElem sub(FqElem a, FqElem b) const noexcept { return add(a, neg(b)); }

  FqElem mul(FqElem a, FqElem b) const noexcept {
    if (a.code == 0 || b.code == 0) return {0};
    if (m_ == 1) return {static_cast<std::uint32_t>(std::uint64_t{a.code} * b.code % p_)};
    if (!exp_.empty()) {
      const std::uint32_t e = (log_[a.code] + log_[b.code]) % (q_ - 1);
      return {exp_[e]};
    }
    return mul_schoolbook(a, b);
  }

  FqElem pow(FqElem a, std::uint64_t n) const noexcept {
    FqElem acc = one();
    while (n != 0) {
      if (n & 1) acc = mul(acc, a);
      a = mul(a, a);
      n >>= 1;
    }
    return acc;
  }

  FqElem inv(FqElem a) const {
    if (a.code == 0) throw DomainError("inversion of zero in F_q");
    if (!exp_.empty()) return {exp_[(q_ - 1 - log_[a.code]) % (q_ - 1)]};
    return pow(a, q_ - 2);
  }

  FqElem frobenius(FqElem a) const noexcept { return pow(a, p_); }
  FqElem pth_root(FqElem a) const noexcept { return m_ == 1 ? a : pow(a, q_ / p_); }

  std::vector<std::uint32_t> digits(FqElem a) const {
    std::vector<std::uint32_t> d(m_);
    std::uint32_t x = a.code;
    for (unsigned j = 0; j < m_; ++j) {
      d[j] = x % p_;
      x /= p_;
    }
    return d;
  }

  FqElem from_digits(std::span<const std::uint32_t> d) const {
    if (d.size() != m_) throw DomainError("F_q element needs exactly m digits");
    std::uint32_t out = 0;
    for (std::size_t j = d.size(); j-- > 0;) {
      if (d[j] >= p_) throw DomainError("F_q digit out of range");
      out = out * p_ + d[j];
    }
    return {out};
  }

  /// Product through polynomial multiplication mod h; the reference path.
  FqElem mul_schoolbook(FqElem a, FqElem b) const {
    const auto da = digits(a), db = digits(b);
    std::vector<std::uint64_t> prod(2 * m_ - 1, 0);
    for (unsigned i = 0; i < m_; ++i) {
      if (da[i] == 0) continue;
      for (unsigned j = 0; j < m_; ++j) prod[i + j] = (prod[i + j] + std::uint64_t{da[i]} * db[j]) % p_;
    }
    for (std::size_t i = prod.size(); i-- > m_;) {
      const std::uint64_t c = prod[i];
      if (c == 0) continue;
      for (unsigned j = 0; j < m_; ++j) {
        prod[i - m_ + j] = (prod[i - m_ + j] + (p_ - c) * modulus_[j]) % p_;
      }
      prod[i] = 0;
    }
    std::uint32_t out = 0;
    for (unsigned j = m_; j-- > 0;) out = out * p_ + static_cast<std::uint32_t>(prod[j]);
    return {out};
  }

 private:
  void build_tables() {
    const std::uint32_t n = q_ - 1;
    const auto factors = prime_factors(n);
    auto slow_pow = [&](FqElem a, std::uint64_t e) {
      FqElem acc = one();
      while (e != 0) {
        if (e & 1) acc = mul_schoolbook(acc, a);
        a = mul_schoolbook(a, a);
        e >>= 1;
      }
      return acc;
    };
    FqElem gen{0};
    for (std::uint32_t c = 1; c < q_; ++c) {
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
    log_.assign(q_, 0);
    FqElem x = one();
    for (std::uint32_t i = 0; i < n; ++i) {
      exp_[i] = x.code;
      log_[x.code] = i;
      x = mul_schoolbook(x, gen);
    }
  }

  std::uint32_t p_;
  unsigned m_ = 1;
  std::uint32_t q_ = 0;
  std::vector<std::uint32_t> modulus_;
  std::vector<std::uint32_t> exp_;
  std::vector<std::uint32_t> log_;
};

}  // namespace sparsechar
