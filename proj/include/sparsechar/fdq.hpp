#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "sparsechar/config.hpp"
#include "sparsechar/error.hpp"
#include "sparsechar/ext_field.hpp"
#include "sparsechar/numtheory.hpp"
#include "sparsechar/parallel.hpp"
#include "sparsechar/rational.hpp"

namespace sparsechar {

// Membership in F_d: f has degree d and no difference f(X+w) - f(X), w != 0,
// equals a(g^p - g) + bX with g rational over the closure and a, b in
// F_{q^r}.

enum class Status { In, NotIn, Unknown };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::In: return "In";
    case Status::NotIn: return "NotIn";
    case Status::Unknown: return "UnknownByThisTest";
  }
  return "?";
}

struct Witness {
  ExtElem omega;
  ExtElem alpha;
};

struct Verdict {
  Status status = Status::Unknown;
  std::optional<Witness> witness;
  std::string rule;
  std::string reason;
};

// ---- closed forms ------------------------------------------------------------

/// d / p^{v_p(d)}.
inline std::uint64_t normalize_exponent(std::uint64_t d, std::uint64_t p) {
  if (d == 0) throw DomainError("exponent must be positive");
  while (d % p == 0) d /= p;
  return d;
}

/// X^d with gcd(d, p) = 1 is in F_d exactly when d is not 1, 2 or p^k + 1.
inline Verdict monomial_in_Fd(std::uint64_t d, std::uint64_t p) {
  if (d == 0 || d % p == 0) throw DomainError("monomial rule needs gcd(d, p) = 1");
  Verdict v{Status::In, std::nullopt, "monomial", ""};
  if (d == 1 || d == 2) {
    v.status = Status::NotIn;
    v.reason = "d in {1, 2}";
  } else if (is_positive_power_of(d - 1, p)) {
    v.status = Status::NotIn;
    v.reason = "d - 1 is a power of p";
  }
  return v;
}

/// X^{-d} with gcd(d, p) = 1 is always in F_d.
inline Verdict reciprocal_in_Fd(std::uint64_t d, std::uint64_t p) {
  if (d == 0 || d % p == 0) throw DomainError("reciprocal monomial rule needs gcd(d, p) = 1");
  return {Status::In, std::nullopt, "reciprocal_monomial", ""};
}

/// Polynomials of degree d >= 3 with d mod p in [2, p-1].
inline Verdict degree_residue_rule(const Poly& f, std::uint64_t p) {
  Verdict v{Status::Unknown, std::nullopt, "degree_residue", ""};
  const int d = f.degree();
  if (d < 3) {
    v.reason = "degree below 3";
  } else if (static_cast<std::uint64_t>(d) % p < 2) {
    v.reason = "deg f mod p is 0 or 1";
  } else {
    v.status = Status::In;
  }
  return v;
}

enum class DenominatorMode { Shortcut, Exhaustive };

/// Sufficient condition for f = u/v: deg u <= deg v + 1, gcd(deg v, p) = 1
/// and v(X) v(X+w) free of p-th powers for every w != 0. Shortcut replaces
/// the w-loop by "2 deg v < p" or "v irreducible".
inline Verdict denominator_rule(const ExtField& field, const RatFn& f, DenominatorMode mode) {
  Verdict out{Status::Unknown, std::nullopt,
              mode == DenominatorMode::Shortcut ? "denominator_shortcut" : "denominator_exhaustive", ""};
  const std::uint64_t p = field.characteristic();
  const Poly& u = f.num();
  const Poly& v = f.den();
  if (u.is_zero()) {
    out.reason = "f is zero";
    return out;
  }
  if (v.degree() < 1) {
    out.reason = "f is a polynomial";
    return out;
  }
  if (u.degree() > v.degree() + 1) {
    out.reason = "deg u > deg v + 1";
    return out;
  }
  if (static_cast<std::uint64_t>(v.degree()) % p == 0) {
    out.reason = "p divides deg v";
    return out;
  }
  if (mode == DenominatorMode::Shortcut) {
    if (2 * static_cast<std::uint64_t>(v.degree()) < p) {
      out.status = Status::In;
      out.reason = "2 deg v < p";
    } else if (is_irreducible(field, v)) {
      out.status = Status::In;
      out.reason = "v irreducible";
    } else {
      out.reason = "v reducible and 2 deg v >= p";
    }
    return out;
  }
  const std::uint64_t Q = field.order();
  if (Q > field.guards().max_exhaustive)
    throw GuardViolation("max_exhaustive", "exhaustive denominator check needs q^r <= " +
                                               std::to_string(field.guards().max_exhaustive));
  for (std::uint64_t w = 1; w < Q; ++w) {
    const Poly prod = poly::mul(field, v, shift(field, v, ExtElem{w}));
    if (!is_pth_power_free(field, prod)) {
      out.reason = "v(X)v(X+w) has a p-th power factor for w = " + std::to_string(w);
      return out;
    }
  }
  out.status = Status::In;
  return out;
}

// ---- Artin-Schreier forms ----------------------------------------------------

enum class ASResult { Expressible, NotExpressible };

/// Whether h = g^p - g + bX + c for a polynomial g over the closure (b, c
/// arbitrary). With absorb_linear = false the bX term is not available and
/// only the constant is absorbed. Greedy: the top term of g^p - g is
/// lead(g)^p X^{p deg g}, so a top degree not divisible by p is fatal and
/// otherwise the top term is stripped.
inline ASResult artin_schreier_membership(const ExtField& field, const Poly& h,
                                          bool absorb_linear = true) {
  const std::uint64_t p = field.characteristic();
  std::vector<ExtElem> c(h.coeffs());
  const std::size_t floor_degree = absorb_linear ? 1 : 0;
  while (!c.empty() && c.back().code == 0) c.pop_back();
  while (c.size() > floor_degree + 1) {
    const std::size_t deg = c.size() - 1;
    if (deg % p != 0) return ASResult::NotExpressible;
    const ExtElem t = field.pth_root(c[deg]);
    c[deg] = field.zero();
    // subtract t^p X^deg - t X^{deg/p}
    c[deg / p] = field.add(c[deg / p], t);
    while (!c.empty() && c.back().code == 0) c.pop_back();
  }
  return ASResult::Expressible;
}

/// Coefficients of h grouped into chains {j0 p^a}, p not dividing j0.
/// h is expressible iff for every chain with j0 >= start,
/// sum_a (h_{j0 p^a})^{p^-a} = 0 (start = 2 with bX absorbed, 1 without).
struct Chain {
  std::uint64_t j0;
  std::vector<std::pair<unsigned, ExtElem>> terms;  // (a, h_{j0 p^a}), nonzero only
};

inline std::vector<Chain> chains(const ExtField& field, const Poly& h, std::uint64_t start = 2) {
  const std::uint64_t p = field.characteristic();
  std::vector<Chain> out;
  const auto& c = h.coeffs();
  for (std::uint64_t j0 = std::max<std::uint64_t>(start, 1); j0 < c.size(); ++j0) {
    if (j0 % p == 0) continue;
    Chain ch{j0, {}};
    unsigned a = 0;
    for (std::uint64_t j = j0; j < c.size(); j *= p, ++a) {
      if (c[j].code != 0) ch.terms.push_back({a, c[j]});
    }
    if (!ch.terms.empty()) out.push_back(std::move(ch));
  }
  return out;
}

/// True when some chain has a single nonzero term: then no scaling
/// alpha in the closure makes alpha^{-1} h expressible.
inline bool chain_obstruction(const ExtField& field, const Poly& h, std::uint64_t start = 2) {
  for (const auto& ch : chains(field, h, start)) {
    if (ch.terms.size() == 1) return true;
  }
  return false;
}

/// Chain criterion for beta * h, beta != 0.
inline bool chain_expressible(const ExtField& field, const std::vector<Chain>& chs, ExtElem beta) {
  for (const auto& ch : chs) {
    ExtElem acc = field.zero();
    for (const auto& [a, coeff] : ch.terms) {
      ExtElem v = field.mul(beta, coeff);
      for (unsigned i = 0; i < a; ++i) v = field.pth_root(v);
      acc = field.add(acc, v);
    }
    if (acc.code != 0) return false;
  }
  return true;
}

// ---- exhaustive oracle -------------------------------------------------------

enum class OracleMode {
  Fast,    // chain screening, then the chain criterion per alpha
  Greedy,  // greedy reduction for every (w, alpha)
};

namespace fdq_detail {

/// f(X+w) - f(X).
inline Poly difference(const ExtField& field, const Poly& f, ExtElem w) {
  return poly::sub(field, shift_sparse(field, f, w), f);
}

inline std::optional<Witness> scan_omega(const ExtField& field, const Poly& f, ExtElem w, OracleMode mode) {
  const Poly fw = difference(field, f, w);
  const std::uint64_t Q = field.order();
  if (fw.degree() <= 1) {
    // bX needs alpha = 0; a nonzero constant is mu^p - mu over the closure.
    return Witness{w, fw.coeff(0).code == 0 ? field.zero() : field.one()};
  }
  if (mode == OracleMode::Fast) {
    const auto chs = chains(field, fw, 2);
    for (const auto& ch : chs) {
      if (ch.terms.size() == 1) return std::nullopt;
    }
    for (std::uint64_t a = 1; a < Q; ++a) {
      if (chain_expressible(field, chs, field.inv(ExtElem{a}))) return Witness{w, ExtElem{a}};
    }
    return std::nullopt;
  }
  for (std::uint64_t a = 1; a < Q; ++a) {
    const Poly scaled = poly::scale(field, fw, field.inv(ExtElem{a}));
    if (artin_schreier_membership(field, scaled) == ASResult::Expressible) return Witness{w, ExtElem{a}};
  }
  return std::nullopt;
}

}  // namespace fdq_detail

/// Exact membership of a polynomial f by exhausting (w, alpha) over
/// F_{q^r}^* x F_{q^r}^*. The reported witness has the smallest w, and the
/// smallest alpha for that w, independent of the thread count.
inline Verdict fd_oracle_poly(const ExtField& field, const Poly& f, OracleMode mode = OracleMode::Fast,
                              unsigned threads = 1) {
  const std::uint64_t Q = field.order();
  if (Q > field.guards().max_oracle)
    throw GuardViolation("max_oracle", "membership oracle needs q^r <= " +
                                           std::to_string(field.guards().max_oracle));
  Verdict out{Status::In, std::nullopt, "oracle", ""};
  std::atomic<std::uint64_t> best{Q};
  auto partial = run_chunks(Q - 1, threads, [&](std::uint64_t begin, std::uint64_t end) {
    std::optional<Witness> found;
    for (std::uint64_t i = begin; i < end; ++i) {
      const std::uint64_t w = i + 1;
      if (w >= best.load(std::memory_order_relaxed)) break;
      if (auto wit = fdq_detail::scan_omega(field, f, ExtElem{w}, mode)) {
        found = wit;
        std::uint64_t cur = best.load();
        while (w < cur && !best.compare_exchange_weak(cur, w)) {
        }
        break;
      }
    }
    return found;
  });
  for (const auto& wit : partial) {
    if (wit && (!out.witness || wit->omega.code < out.witness->omega.code)) out.witness = wit;
  }
  if (out.witness) {
    out.status = Status::NotIn;
    out.reason = "f(X+w) - f(X) has the excluded form";
  }
  return out;
}

inline Verdict fd_oracle(const ExtField& field, const RatFn& f, OracleMode mode = OracleMode::Fast,
                         unsigned threads = 1) {
  if (!f.is_polynomial()) throw DomainError("the membership oracle handles polynomials only");
  return fd_oracle_poly(field, f.num(), mode, threads);
}

}  // namespace sparsechar
