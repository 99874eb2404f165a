#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sparsechar/bounds.hpp"
#include "sparsechar/characters.hpp"
#include "sparsechar/config.hpp"
#include "sparsechar/error.hpp"
#include "sparsechar/ext_field.hpp"
#include "sparsechar/fdq.hpp"
#include "sparsechar/parallel.hpp"
#include "sparsechar/rational.hpp"

namespace sparsechar {

// ---- domains --------------------------------------------------------------------

struct SumDomain {
  enum class Kind { Sparse, Subspace, FullField };
  Kind kind = Kind::FullField;
  unsigned param = 0;  // s or k

  static SumDomain sparse(unsigned s) { return {Kind::Sparse, s}; }
  static SumDomain subspace(unsigned k) { return {Kind::Subspace, k}; }
  static SumDomain full() { return {Kind::FullField, 0}; }

  std::string to_string() const {
    switch (kind) {
      case Kind::Sparse: return "sparse:" + std::to_string(param);
      case Kind::Subspace: return "subspace:" + std::to_string(param);
      case Kind::FullField: return "full";
    }
    return "?";
  }
  friend bool operator==(const SumDomain&, const SumDomain&) = default;
};

/// Number of points of the domain; throws for parameters above r.
inline std::uint64_t domain_size(const ExtField& f, const SumDomain& d) {
  switch (d.kind) {
    case SumDomain::Kind::Sparse: {
      if (d.param > f.r()) throw DomainError("sparse domain needs 0 <= s <= r");
      const auto c = binomial_u64(f.r(), d.param);
      const auto v = checked_pow(f.q() - 1, d.param, UINT64_MAX);
      if (!c || !v || (*v != 0 && *c > UINT64_MAX / *v)) throw GuardViolation("max_enumeration", "domain too large");
      return *c * *v;
    }
    case SumDomain::Kind::Subspace:
      if (d.param > f.r()) throw DomainError("subspace domain needs 0 <= k <= r");
      return ipow(f.q(), d.param);
    case SumDomain::Kind::FullField:
      return f.order();
  }
  return 0;
}

namespace sums_detail {

/// Colex unranking: the rank-th s-subset of {0..63}, as a bit mask.
inline std::uint64_t unrank_colex(std::uint64_t rank, unsigned s) {
  std::uint64_t mask = 0;
  for (unsigned i = s; i >= 1; --i) {
    unsigned c = i - 1;
    while (*binomial_u64(c + 1, i) <= rank) ++c;
    rank -= *binomial_u64(c, i);
    mask |= std::uint64_t{1} << c;
  }
  return mask;
}

/// Next mask with the same popcount (Gosper), i.e. the colex successor.
inline std::uint64_t next_colex(std::uint64_t v) {
  const std::uint64_t t = v | (v - 1);
  return (t + 1) | (((~t & -~t) - 1) >> (std::countr_zero(v) + 1));
}

/// a + (new - old) * theta as field elements.
inline ExtElem replace_coord(const ExtField& f, ExtElem a, unsigned pos, std::uint32_t old_code,
                             std::uint32_t new_code, const std::vector<std::uint64_t>& place) {
  if (!f.has_custom_basis()) {
    return ExtElem{a.code + new_code * place[pos] - old_code * place[pos]};
  }
  const FqElem delta = f.base().sub(FqElem{new_code}, FqElem{old_code});
  return f.add(a, f.scalar_mul(delta, f.basis()[pos]));
}

inline std::vector<std::uint64_t> places(const ExtField& f) {
  std::vector<std::uint64_t> out(f.r());
  for (unsigned i = 0; i < f.r(); ++i) out[i] = ipow(f.q(), i);
  return out;
}

}  // namespace sums_detail

/// Visits G_r(s) for supports with colex rank in [begin, end): supports in
/// colex order, and within a support every coordinate tuple in 1..q-1 with
/// the lowest basis position varying fastest.
template <class Visit>
void enumerate_sparse(const ExtField& f, unsigned s, Visit&& visit, std::uint64_t begin = 0,
                      std::uint64_t end = UINT64_MAX) {
  const unsigned r = f.r();
  if (s > r) throw DomainError("sparse enumeration needs 0 <= s <= r");
  const std::uint64_t supports = *binomial_u64(r, s);
  end = std::min(end, supports);
  if (begin >= end) return;
  const std::uint32_t q = static_cast<std::uint32_t>(f.q());
  const auto place = sums_detail::places(f);
  std::uint64_t mask = sums_detail::unrank_colex(begin, s);
  std::vector<unsigned> pos(s);
  std::vector<std::uint32_t> u(s);
  for (std::uint64_t rank = begin; rank < end; ++rank) {
    unsigned n = 0;
    for (std::uint64_t m = mask; m != 0; m &= m - 1) pos[n++] = static_cast<unsigned>(std::countr_zero(m));
    ExtElem x = f.zero();
    for (unsigned j = 0; j < s; ++j) {
      u[j] = 1;
      x = sums_detail::replace_coord(f, x, pos[j], 0, 1, place);
    }
    while (true) {
      visit(x);
      unsigned j = 0;
      while (j < s && u[j] == q - 1) {
        x = sums_detail::replace_coord(f, x, pos[j], q - 1, 1, place);
        u[j] = 1;
        ++j;
      }
      if (j == s) break;
      x = sums_detail::replace_coord(f, x, pos[j], u[j], u[j] + 1, place);
      ++u[j];
    }
    if (s == 0 || rank + 1 == end) break;
    mask = sums_detail::next_colex(mask);
  }
}

/// Visits the F_q-span of `vectors` for coefficient indices in [begin, end),
/// index digits base q with vectors[0] least significant.
template <class Visit>
void enumerate_span(const ExtField& f, const std::vector<ExtElem>& vectors, Visit&& visit,
                    std::uint64_t begin = 0, std::uint64_t end = UINT64_MAX) {
  const std::uint64_t q = f.q();
  const std::size_t k = vectors.size();
  end = std::min(end, ipow(q, k));
  if (begin >= end) return;
  std::vector<std::uint32_t> u(k);
  std::uint64_t idx = begin;
  ExtElem x = f.zero();
  for (std::size_t i = 0; i < k; ++i) {
    u[i] = static_cast<std::uint32_t>(idx % q);
    idx /= q;
    x = f.add(x, f.scalar_mul(FqElem{u[i]}, vectors[i]));
  }
  for (std::uint64_t n = begin; n < end; ++n) {
    visit(x);
    std::size_t j = 0;
    while (j < k && u[j] == q - 1) {
      x = f.sub(x, f.scalar_mul(FqElem{u[j]}, vectors[j]));
      u[j] = 0;
      ++j;
    }
    if (j == k) break;
    const FqElem delta = f.base().sub(FqElem{u[j] + 1}, FqElem{u[j]});
    x = f.add(x, f.scalar_mul(delta, vectors[j]));
    ++u[j];
  }
}

/// Visits L_k = span(theta_1..theta_k) in index order [begin, end).
template <class Visit>
void enumerate_subspace(const ExtField& f, unsigned k, Visit&& visit, std::uint64_t begin = 0,
                        std::uint64_t end = UINT64_MAX) {
  if (k > f.r()) throw DomainError("subspace enumeration needs 0 <= k <= r");
  if (!f.has_custom_basis()) {
    // Coordinates in the polynomial basis are the base-q digits of the code.
    end = std::min(end, ipow(f.q(), k));
    for (std::uint64_t c = begin; c < end; ++c) visit(ExtElem{c});
    return;
  }
  std::vector<ExtElem> vectors(f.basis().begin(), f.basis().begin() + k);
  enumerate_span(f, vectors, std::forward<Visit>(visit), begin, end);
}

// ---- hypotheses -------------------------------------------------------------------

/// Which nondegeneracy hypothesis is needed: the full-field bound excludes
/// a(h^p - h); sums over subspaces also exclude a(h^p - h) + bX.
enum class BoundKind { Weil, Subspace };

struct Certificate {
  bool ok = false;
  std::string route;  // "chi" or "psi"
  std::string reason;
};

/// True when g is provably not a(h^p - h) [+ bX for Subspace] with h rational
/// over the closure. Such forms have every finite pole of order divisible by
/// p, and a pole at infinity of order divisible by p (or of order 1 when bX
/// is allowed). Polynomials are also checked with the chain obstruction.
inline std::optional<std::string> additive_form_excluded(const ExtField& f, const RatFn& g, BoundKind kind) {
  const std::uint64_t p = f.characteristic();
  for (const auto& e : squarefree_decomposition(f, g.den())) {
    if (e.multiplicity % p != 0) return "finite pole of order " + std::to_string(e.multiplicity) + " prime to p";
  }
  const int inf = g.num().degree() - g.den().degree();
  if (inf > 0 && inf % static_cast<int>(p) != 0 && (kind == BoundKind::Weil || inf >= 2))
    return "pole at infinity of order " + std::to_string(inf) + " prime to p";
  if (g.is_polynomial() && chain_obstruction(f, g.num(), kind == BoundKind::Weil ? 1 : 2))
    return "isolated coefficient chain";
  return std::nullopt;
}

inline Certificate certify_hypothesis(const ExtField& f, const std::optional<MultCharSpec>& chi,
                                      const AddCharSpec& psi, const std::optional<RatFn>& f1, const RatFn& f2,
                                      BoundKind kind) {
  Certificate c;
  if (chi && !chi->is_principal() && f1) {
    const std::uint64_t e = chi->order();
    if (f1->is_zero()) {
      c.reason = "f1 is zero";
    } else if (!is_eth_power_in_closure(f, *f1, e)) {
      c.ok = true;
      c.route = "chi";
      c.reason = "f1 is not an e-th power, e = " + std::to_string(e);
      return c;
    }
  }
  if (!psi.is_principal()) {
    if (auto why = additive_form_excluded(f, f2, kind)) {
      c.ok = true;
      c.route = "psi";
      c.reason = *why;
      return c;
    }
  }
  c.reason = "no nondegeneracy condition could be certified";
  return c;
}

// ---- sums -------------------------------------------------------------------------

struct SumInputs {
  std::optional<MultCharSpec> chi;  // absent: the factor is the constant 1
  AddCharSpec psi;
  std::optional<RatFn> f1;  // required iff chi is present
  RatFn f2;
};

struct SumReport {
  SumDomain domain;
  std::uint64_t point_count = 0;
  std::uint64_t dropped = 0;
  double abs_value = 0;
  double trivial_log2 = 0;
  std::optional<double> large_q_log2;    // sparse domains with a certified hypothesis
  std::optional<double> weil_bound;      // full field with a certified hypothesis
  std::optional<double> subspace_bound;  // subspaces with a certified hypothesis
  Certificate certificate;
};

namespace sums_detail {

inline void validate(const ExtField& f, const SumInputs& in) {
  if (in.chi.has_value() != in.f1.has_value())
    throw DomainError("f1 must be given exactly when a multiplicative character is");
  if (in.chi && (!in.chi->table || in.chi->table->group_order != f.order() - 1))
    throw DomainError("multiplicative character table does not match the field");
}

/// Adds the term for xi, or counts it as dropped.
inline void accumulate(const ExtField& f, const SumInputs& in, ExtElem xi, UnitAccumulator& acc) {
  const auto v2 = eval(f, in.f2, xi);
  if (!v2) {
    acc.drop();
    return;
  }
  std::uint64_t a = 0;
  if (in.chi) {
    const auto v1 = eval(f, *in.f1, xi);
    if (!v1) {
      acc.drop();
      return;
    }
    const auto res = eval_mult(*in.chi, *v1);
    if (!res) {
      acc.drop();
      return;
    }
    a = *res;
  }
  acc.add(a, eval_add(f, in.psi, *v2));
}

}  // namespace sums_detail

/// Exact accumulation of chi(f1(xi)) psi(f2(xi)) over the domain. Poles of
/// f1 or f2 are dropped; with chi present, zeros of f1 are dropped too.
inline UnitAccumulator accumulate_sum(const ExtField& f, const SumInputs& in, const SumDomain& domain,
                                      unsigned threads = default_threads()) {
  sums_detail::validate(f, in);
  const std::uint64_t points = domain_size(f, domain);
  if (points > f.guards().max_enumeration)
    throw GuardViolation("max_enumeration", "domain has " + std::to_string(points) +
                                                " points, above the configured limit " +
                                                std::to_string(f.guards().max_enumeration));
  const std::uint64_t n = in.chi ? f.order() - 1 : 1;
  const std::uint32_t p = f.characteristic();
  std::uint64_t units = 0;
  switch (domain.kind) {
    case SumDomain::Kind::Sparse: units = *binomial_u64(f.r(), domain.param); break;
    case SumDomain::Kind::Subspace: units = points; break;
    case SumDomain::Kind::FullField: units = points; break;
  }
  auto parts = run_chunks(units, threads, [&](std::uint64_t begin, std::uint64_t end) {
    UnitAccumulator acc(n, p);
    auto visit = [&](ExtElem xi) { sums_detail::accumulate(f, in, xi, acc); };
    switch (domain.kind) {
      case SumDomain::Kind::Sparse: enumerate_sparse(f, domain.param, visit, begin, end); break;
      case SumDomain::Kind::Subspace: enumerate_subspace(f, domain.param, visit, begin, end); break;
      case SumDomain::Kind::FullField:
        for (std::uint64_t c = begin; c < end; ++c) visit(ExtElem{c});
        break;
    }
    return acc;
  });
  UnitAccumulator total(n, p);
  for (const auto& part : parts) total.merge(part);
  return total;
}

inline SumReport mixed_sum(const ExtField& f, const SumInputs& in, const SumDomain& domain,
                           unsigned threads = default_threads()) {
  const UnitAccumulator acc = accumulate_sum(f, in, domain, threads);
  SumReport rep;
  rep.domain = domain;
  rep.point_count = acc.total() + acc.dropped();
  rep.dropped = acc.dropped();
  rep.abs_value = acc.magnitude();
  rep.trivial_log2 = std::log2(static_cast<double>(domain_size(f, domain)));
  if (domain.kind == SumDomain::Kind::Sparse)
    rep.trivial_log2 = trivial_bound_log2(f.q(), f.r(), domain.param);

  const std::uint64_t D1 = in.chi ? static_cast<std::uint64_t>(in.f1->degree()) : 0;
  const std::uint64_t D2 = static_cast<std::uint64_t>(in.f2.degree());
  const BoundKind kind = domain.kind == SumDomain::Kind::FullField ? BoundKind::Weil : BoundKind::Subspace;
  rep.certificate = certify_hypothesis(f, in.chi, in.psi, in.f1, in.f2, kind);
  if (rep.certificate.ok) {
    switch (domain.kind) {
      case SumDomain::Kind::Sparse: rep.large_q_log2 = large_q_bound_log2(f.q(), f.r(), domain.param, D1, D2); break;
      case SumDomain::Kind::Subspace: rep.subspace_bound = subspace_bound(f.order(), D1, D2); break;
      case SumDomain::Kind::FullField: rep.weil_bound = weil_bound(f.order(), D1, D2); break;
    }
  }
  return rep;
}

struct WeilCheck {
  double abs_value;
  double bound;
  bool holds;
};

/// Full-field sum against 2 (D1 + D2) q^{r/2}. Refuses (HypothesisError)
/// unless the nondegeneracy hypothesis is certified.
inline WeilCheck weil_check(const ExtField& f, const SumInputs& in, unsigned threads = default_threads()) {
  sums_detail::validate(f, in);
  const Certificate c = certify_hypothesis(f, in.chi, in.psi, in.f1, in.f2, BoundKind::Weil);
  if (!c.ok) throw HypothesisError("weil_check: " + c.reason);
  const double abs_value = accumulate_sum(f, in, SumDomain::full(), threads).magnitude();
  const std::uint64_t D1 = in.chi ? static_cast<std::uint64_t>(in.f1->degree()) : 0;
  const double bound = weil_bound(f.order(), D1, static_cast<std::uint64_t>(in.f2.degree()));
  return {abs_value, bound, abs_value <= bound + 1e-6};
}

// ---- degenerate subspace sums ---------------------------------------------------

struct CounterexampleResult {
  std::uint64_t points = 0;
  double abs_value = 0;
  std::optional<std::uint64_t> exact_value;  // set when every term equals 1
  std::vector<ExtElem> kernel_basis;
};

/// g2 = alpha (h^p - h) + beta X with psi(xi) = e_p(Tr(xi / alpha)) and the
/// principal chi summed over an (r-1)-dimensional F_q-subspace on which
/// Tr(beta xi / alpha) vanishes: the kernel of xi -> Tr_{q^r/q}(beta xi / alpha),
/// or span(theta_1..theta_{r-1}) when beta = 0.
inline CounterexampleResult subspace_counterexample(const ExtField& f, ExtElem alpha, ExtElem beta,
                                                          const Poly& h) {
  if (alpha.code == 0) throw DomainError("alpha must be nonzero");
  const unsigned r = f.r();
  const Poly hp = poly::pow(f, h, f.characteristic());
  Poly g2 = poly::scale(f, poly::sub(f, hp, h), alpha);
  g2 = poly::add(f, g2, Poly::monomial(beta, 1));
  const AddCharSpec psi{f.inv(alpha)};

  std::vector<ExtElem> kernel;
  const auto& theta = f.basis();
  if (beta.code == 0) {
    kernel.assign(theta.begin(), theta.begin() + (r - 1));
  } else {
    const ExtElem c = f.div(beta, alpha);
    std::vector<FqElem> phi(r);
    for (unsigned i = 0; i < r; ++i) phi[i] = f.relative_trace(f.mul(c, theta[i]));
    unsigned pivot = 0;
    while (phi[pivot].code == 0) ++pivot;  // the relative trace form is nonzero
    const FqElem inv_pivot = f.base().inv(phi[pivot]);
    for (unsigned i = 0; i < r; ++i) {
      if (i == pivot) continue;
      const FqElem ratio = f.base().mul(phi[i], inv_pivot);
      kernel.push_back(f.sub(theta[i], f.scalar_mul(ratio, theta[pivot])));
    }
  }

  UnitAccumulator acc(1, f.characteristic());
  enumerate_span(f, kernel, [&](ExtElem xi) { acc.add(0, eval_add(f, psi, poly::eval(f, g2, xi))); });
  CounterexampleResult out;
  out.points = acc.total();
  out.abs_value = acc.magnitude();
  out.kernel_basis = kernel;
  const auto counts = acc.counts();
  if (counts.size() == 1 && counts[0].first == std::pair<std::uint64_t, std::uint32_t>{0, 0})
    out.exact_value = counts[0].second;
  return out;
}

}  // namespace sparsechar
