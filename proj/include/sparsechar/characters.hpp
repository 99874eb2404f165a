#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <numbers>
#include <numeric>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "sparsechar/error.hpp"
#include "sparsechar/ext_field.hpp"
#include "sparsechar/numtheory.hpp"

namespace sparsechar {

/// Discrete logarithms to the base of the smallest primitive element.
struct LogTable {
  ExtElem gamma;
  std::uint64_t group_order = 0;  // q^r - 1
  std::vector<std::uint32_t> log_of;  // indexed by code; entry 0 unused

  std::uint64_t log(ExtElem x) const {
    if (x.code == 0) throw DomainError("discrete log of zero");
    return log_of[x.code];
  }
};

using LogTablePtr = std::shared_ptr<const LogTable>;

inline bool is_primitive(const ExtField& f, ExtElem c) {
  if (c.code == 0) return false;
  const std::uint64_t n = f.order() - 1;
  for (auto factor : prime_factors(n)) {
    if (f.pow(c, n / factor) == f.one()) return false;
  }
  return true;
}

inline LogTablePtr find_primitive(const ExtField& f) {
  const std::uint64_t Q = f.order();
  if (Q > f.guards().max_log_table)
    throw GuardViolation("max_log_table", "log table for q^r = " + std::to_string(Q) +
                                              " exceeds the configured limit " +
                                              std::to_string(f.guards().max_log_table));
  auto table = std::make_shared<LogTable>();
  table->group_order = Q - 1;
  for (std::uint64_t c = 1; c < Q; ++c) {
    if (is_primitive(f, ExtElem{c})) {
      table->gamma = ExtElem{c};
      break;
    }
  }
  table->log_of.assign(Q, 0);
  ExtElem x = f.one();
  for (std::uint64_t j = 0; j < Q - 1; ++j) {
    table->log_of[x.code] = static_cast<std::uint32_t>(j);
    x = f.mul(x, table->gamma);
  }
  return table;
}

/// psi(xi) = e_p(Tr(zeta * xi)). Principal iff zeta = 0.
struct AddCharSpec {
  ExtElem zeta;
  bool is_principal() const noexcept { return zeta.code == 0; }
};

/// chi(gamma^j) = e_{q^r-1}(j k).
struct MultCharSpec {
  std::uint64_t k = 0;
  LogTablePtr table;

  bool is_principal() const noexcept { return table && k % table->group_order == 0; }
  /// (q^r - 1) / gcd(k, q^r - 1).
  std::uint64_t order() const {
    const std::uint64_t n = table->group_order;
    return n / std::gcd(k % n, n);
  }
};

inline MultCharSpec make_mult_char(std::uint64_t k, LogTablePtr table) {
  if (!table) throw DomainError("multiplicative character needs a log table");
  if (k >= table->group_order)
    throw DomainError("character index k must lie in [0, q^r - 1)");
  return {k, std::move(table)};
}

/// Residue b in [0, p) with psi(xi) = e^{2 pi i b / p}.
inline std::uint32_t eval_add(const ExtField& f, const AddCharSpec& psi, ExtElem xi) {
  if (psi.zeta.code == 0) return 0;
  return f.trace(f.mul(psi.zeta, xi));
}

/// Residue a mod q^r - 1 with chi(xi) = e^{2 pi i a / (q^r - 1)}; nullopt
/// for xi = 0 (chi(0) = 0).
inline std::optional<std::uint64_t> eval_mult(const MultCharSpec& chi, ExtElem xi) {
  if (xi.code == 0) return std::nullopt;
  const std::uint64_t n = chi.table->group_order;
  return static_cast<std::uint64_t>(u128{chi.k} * chi.table->log_of[xi.code] % n);
}

/// Exact multiset of roots of unity e^{2 pi i (a/n + b/p)}, n = q^r - 1
/// (or 1 when no multiplicative character is involved). Counts are
/// integers, so chunked accumulation merges exactly.
class UnitAccumulator {
 public:
  UnitAccumulator(std::uint64_t mult_modulus, std::uint32_t p) : n_(mult_modulus), p_(p) {
    if (n_ == 0 || p_ == 0) throw DomainError("accumulator moduli must be positive");
    if (n_ * p_ <= kDenseLimit) dense_.assign(n_ * p_, 0);
  }

  std::uint64_t mult_modulus() const noexcept { return n_; }
  std::uint32_t add_modulus() const noexcept { return p_; }

  void add(std::uint64_t a, std::uint32_t b, std::uint64_t count = 1) {
    const std::uint64_t key = (a % n_) * p_ + b % p_;
    if (!dense_.empty()) {
      dense_[key] += count;
    } else {
      sparse_[key] += count;
    }
    total_ += count;
  }
  void drop(std::uint64_t count = 1) noexcept { dropped_ += count; }

  void merge(const UnitAccumulator& other) {
    if (other.n_ != n_ || other.p_ != p_) throw DomainError("merging accumulators of different moduli");
    if (!dense_.empty()) {
      for (std::size_t i = 0; i < dense_.size(); ++i) dense_[i] += other.dense_[i];
    } else {
      for (const auto& [k, c] : other.sparse_) sparse_[k] += c;
    }
    total_ += other.total_;
    dropped_ += other.dropped_;
  }

  std::uint64_t total() const noexcept { return total_; }
  std::uint64_t dropped() const noexcept { return dropped_; }

  /// Nonzero entries ((a, b), count), sorted by (a, b).
  std::vector<std::pair<std::pair<std::uint64_t, std::uint32_t>, std::uint64_t>> counts() const {
    std::vector<std::pair<std::pair<std::uint64_t, std::uint32_t>, std::uint64_t>> out;
    auto push = [&](std::uint64_t key, std::uint64_t c) {
      if (c != 0) out.push_back({{key / p_, static_cast<std::uint32_t>(key % p_)}, c});
    };
    if (!dense_.empty()) {
      for (std::size_t i = 0; i < dense_.size(); ++i) push(i, dense_[i]);
    } else {
      for (const auto& [k, c] : sparse_) push(k, c);
      std::sort(out.begin(), out.end());
    }
    return out;
  }

  /// |sum counts(a,b) e^{2 pi i (a/n + b/p)}|. Each term is reduced to a
  /// single residue t mod n*p and summed in a fixed order in long double;
  /// absolute error stays below total() * 2^-45.
  double magnitude() const {
    const std::uint64_t N = n_ * p_;
    // a/n + b/p = (a p + b n) / (n p)
    std::vector<std::pair<std::uint64_t, std::uint64_t>> terms;
    for (const auto& [ab, c] : counts()) {
      const std::uint64_t t = static_cast<std::uint64_t>((u128{ab.first} * p_ + u128{ab.second} * n_) % N);
      terms.push_back({t, c});
    }
    std::sort(terms.begin(), terms.end());
    long double re = 0, im = 0;
    const long double two_pi = 2 * std::numbers::pi_v<long double>;
    for (std::size_t i = 0; i < terms.size();) {
      const std::uint64_t t = terms[i].first;
      std::uint64_t c = 0;
      for (; i < terms.size() && terms[i].first == t; ++i) c += terms[i].second;
      const long double angle = two_pi * static_cast<long double>(t) / static_cast<long double>(N);
      re += static_cast<long double>(c) * std::cos(angle);
      im += static_cast<long double>(c) * std::sin(angle);
    }
    return static_cast<double>(std::sqrt(re * re + im * im));
  }

 private:
  static constexpr std::uint64_t kDenseLimit = std::uint64_t{1} << 20;

  std::uint64_t n_;
  std::uint32_t p_;
  std::vector<std::uint64_t> dense_;
  std::unordered_map<std::uint64_t, std::uint64_t> sparse_;
  std::uint64_t total_ = 0;
  std::uint64_t dropped_ = 0;
};

}  // namespace sparsechar
