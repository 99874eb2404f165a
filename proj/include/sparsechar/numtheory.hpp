#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

#include "sparsechar/error.hpp"

namespace sparsechar {

using u128 = unsigned __int128;

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d <= n / d; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

/// Distinct prime divisors of n, ascending. factor(1) is empty.
inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d <= n / d; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

/// base^exp, or nullopt once the value exceeds `limit`.
inline std::optional<std::uint64_t> checked_pow(std::uint64_t base, std::uint64_t exp,
                                                std::uint64_t limit) {
  u128 acc = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    acc *= base;
    if (acc > limit) return std::nullopt;
  }
  return static_cast<std::uint64_t>(acc);
}

inline std::uint64_t ipow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t acc = 1;
  for (std::uint64_t i = 0; i < exp; ++i) acc *= base;
  return acc;
}

/// Exact binomial coefficient. Valid while the result fits in 128 bits
/// (every n <= 125).
inline u128 binomial_exact(unsigned n, unsigned k) {
  if (k > n) return 0;
  if (n > 125) throw DomainError("binomial_exact: n > 125 overflows 128 bits");
  k = std::min(k, n - k);
  u128 acc = 1;
  for (unsigned i = 1; i <= k; ++i) {
    // acc * (n - k + i) / i stays integral at every step.
    acc = acc * (n - k + i) / i;
  }
  return acc;
}

/// Binomial coefficient as uint64, nullopt on overflow.
inline std::optional<std::uint64_t> binomial_u64(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  u128 acc = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    acc = acc * (n - k + i) / i;
    if (acc > UINT64_MAX) return std::nullopt;
  }
  return static_cast<std::uint64_t>(acc);
}

/// log2 C(n, k) by summed logarithms.
inline double log2_binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) throw DomainError("log2_binomial: k > n");
  k = std::min(k, n - k);
  long double acc = 0;
  for (std::uint64_t i = 0; i < k; ++i) {
    acc += std::log2(static_cast<long double>(n - i)) - std::log2(static_cast<long double>(i + 1));
  }
  return static_cast<double>(acc);
}

/// v_p(n) for n >= 1.
inline unsigned p_adic_valuation(std::uint64_t n, std::uint64_t p) {
  unsigned v = 0;
  while (n != 0 && n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

/// True when n = p^k for some k >= 1.
inline bool is_positive_power_of(std::uint64_t n, std::uint64_t p) {
  if (n < p) return false;
  while (n % p == 0) n /= p;
  return n == 1;
}

/// C(n, k) mod p from the base-p digits of n and k.
inline std::uint64_t lucas_binomial_mod_p(std::uint64_t n, std::uint64_t k, std::uint64_t p) {
  if (p < 2) throw DomainError("lucas_binomial_mod_p: p must be prime");
  std::uint64_t acc = 1;
  while (n != 0 || k != 0) {
    const std::uint64_t nd = n % p;
    std::uint64_t kd = k % p;
    if (kd > nd) return 0;
    kd = std::min(kd, nd - kd);
    // C(nd, kd) mod p with nd < p: multiplicative formula with modular inverses.
    std::uint64_t num = 1, den = 1;
    for (std::uint64_t i = 0; i < kd; ++i) {
      num = static_cast<std::uint64_t>(u128{num} * (nd - i) % p);
      den = static_cast<std::uint64_t>(u128{den} * (i + 1) % p);
    }
    // den^{p-2} mod p
    std::uint64_t inv = 1, b = den, e = p - 2;
    while (e != 0) {
      if (e & 1) inv = static_cast<std::uint64_t>(u128{inv} * b % p);
      b = static_cast<std::uint64_t>(u128{b} * b % p);
      e >>= 1;
    }
    acc = static_cast<std::uint64_t>(u128{acc} * num % p * inv % p);
    if (acc == 0) return 0;
    n /= p;
    k /= p;
  }
  return acc;
}

}  // namespace sparsechar
