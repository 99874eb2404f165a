// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "sparsechar/sparsechar.hpp"

using namespace sparsechar;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && pass) detail = what;
    pass = pass && cond;
  }
};

FieldPtr field(std::uint32_t p, unsigned m, unsigned r) {
  FieldParams fp;
  fp.p = p;
  fp.m = m;
  fp.r = r;
  return make_field(fp);
}

oracle::NaiveField::P codes(const Poly& a) {
  oracle::NaiveField::P out;
  for (auto c : a.coeffs()) out.push_back(c.code);
  return out;
}

oracle::RatP ratp(const RatFn& g) { return {codes(g.num()), codes(g.den())}; }

std::string num(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

// 1: H(1/5) and eta(1/5).
Outcome constants() {
  Outcome o;
  const auto e = eta(0.2, 1e-5);
  o.require(e.eta < 0.7208, "eta(0.2) = " + num(e.eta));
  o.require(oracle::H(0.2) > 0.7219, "H(0.2) = " + num(oracle::H(0.2)));
  o.require(entropy_H(0.2) > 0.7219, "entropy_H(0.2) = " + num(entropy_H(0.2)));
  o.require(std::abs(oracle::eta_objective(0.2, e.kappa_opt, e.lambda_opt) - e.eta) < 1e-12,
            "eta(0.2) is not attained at the reported optimum");
  return o;
}

// 2: root of H(rho) = 3/4.
Outcome entropy_root() {
  Outcome o;
  const double rho = solve_H_eq(0.75);
  o.require(std::abs(rho - 0.2145) <= 5e-4, "rho = " + num(rho));
  o.require(std::abs(oracle::H(rho) - 0.75) < 1e-8, "H(rho) = " + num(oracle::H(rho)));
  return o;
}

// 3: eta against H/2 + 3/8 and against H on the grid 0.05, 0.06, ..., 0.50.
Outcome eta_grid_checks() {
  Outcome o;
  for (int i = 5; i <= 50; ++i) {
    const double rho = i / 100.0;
    const double v = eta(rho, 1e-5).eta;
    const double simple = oracle::H(rho) / 2 + 0.375;
    o.require(v <= simple + 1e-6, "eta above H/2 + 3/8 at rho = " + num(rho));
    if (rho <= 0.275) o.require(v <= simple - 1e-4, "margin below 1e-4 at rho = " + num(rho) + ": " + num(simple - v));
    if (rho >= 0.2) o.require(v < oracle::H(rho), "eta >= H at rho = " + num(rho));
  }
  return o;
}

// 4: X^d over F_{2^r}, odd d, against the closed form.
Outcome monomials() {
  Outcome o;
  std::uint64_t checked = 0;
  for (unsigned r = 4; r <= 10; ++r) {
    auto f = field(2, 1, r);
    const std::uint64_t Q = f->order();
    for (std::uint64_t d = 3; d <= Q - 1; d += 2) {
      // NotIn exactly for d - 1 a power of two.
      const bool excluded = ((d - 1) & (d - 2)) == 0;
      const auto v = fd_oracle_poly(*f, Poly::monomial(f->one(), d));
      o.require((v.status == Status::NotIn) == excluded,
                "disagreement at r = " + std::to_string(r) + ", d = " + std::to_string(d));
      o.require(v.status != Status::NotIn || v.witness.has_value(), "NotIn without a witness");
      ++checked;
    }
  }
  o.detail = o.pass ? std::to_string(checked) + " exponents" : o.detail;
  return o;
}

// 5: (X+1)^{p^k+1} - X^{p^k+1} = X^{p^k} + X + 1 and its Artin-Schreier form.
Outcome power_plus_one() {
  Outcome o;
  for (std::uint32_t p : {2u, 3u, 5u}) {
    auto f = field(p, 1, 1);
    const auto n = oracle::NaiveField::from(*f);
    for (unsigned k = 1; k <= 2; ++k) {
      const std::uint64_t pk = ipow(p, k);
      oracle::NaiveField::P a{1}, b{1};
      for (std::uint64_t i = 0; i < pk + 1; ++i) {
        a = n.pmul(a, {1, 1});
        b = n.pmul(b, {0, 1});
      }
      const auto lhs = n.psub(a, b);
      oracle::NaiveField::P rhs(pk + 1, 0);
      rhs[0] = 1;
      rhs[1] = 1;
      rhs[pk] = 1;
      const std::string tag = "p = " + std::to_string(p) + ", k = " + std::to_string(k);
      o.require(lhs == rhs, "identity fails for " + tag);
      std::vector<ExtElem> c;
      for (auto v : lhs) c.push_back(ExtElem{v});
      const Poly h(std::move(c));
      o.require(artin_schreier_membership(*f, h) == ASResult::Expressible, "not expressible for " + tag);
      o.require(oracle::excluded_form(n, lhs, 1), "linear-algebra check disagrees for " + tag);
    }
  }
  return o;
}

// 6: degenerate subspace sums equal q^{r-1}.
Outcome counterexamples() {
  Outcome o;
  std::mt19937_64 rng(606);
  for (auto [p, r] : {std::pair{2u, 4u}, {2u, 6u}, {3u, 3u}}) {
    auto f = field(p, 1, r);
    const auto n = oracle::NaiveField::from(*f);
    const std::uint64_t target = ipow(p, r - 1);
    for (int i = 0; i < 10; ++i) {
      const ExtElem alpha{1 + rng() % (f->order() - 1)}, beta{rng() % f->order()};
      std::vector<ExtElem> hc(1 + rng() % 4);
      for (auto& c : hc) c = ExtElem{rng() % f->order()};
      const Poly h(std::move(hc));
      const auto res = subspace_counterexample(*f, alpha, beta, h);
      const std::string tag = "q = " + std::to_string(p) + ", r = " + std::to_string(r);
      o.require(res.exact_value == std::optional<std::uint64_t>(target), "sum differs from q^(r-1) for " + tag);
      // Recompute over the span with naive arithmetic.
      std::vector<std::uint64_t> span{0};
      for (auto v : res.kernel_basis) {
        std::vector<std::uint64_t> next;
        for (auto x : span) {
          std::uint64_t y = x;
          for (std::uint32_t c = 0; c < p; ++c, y = n.add(y, v.code)) next.push_back(y);
        }
        span = std::move(next);
      }
      std::sort(span.begin(), span.end());
      o.require(std::unique(span.begin(), span.end()) == span.end() && span.size() == target,
                "kernel basis does not span q^(r-1) points for " + tag);
      // g2 = alpha (h^p - h) + beta X
      oracle::NaiveField::P hp{1};
      for (unsigned j = 0; j < p; ++j) hp = n.pmul(hp, codes(h));
      const auto g2 = n.padd(n.pmul({alpha.code}, n.psub(hp, codes(h))), n.pmul({beta.code}, {0, 1}));
      const std::uint64_t ainv = n.pow_fast(alpha.code, n.Q - 2);
      std::uint64_t ones = 0;
      for (auto x : span) ones += n.trace(n.mul(ainv, n.peval(g2, x))) == 0;
      o.require(ones == target, "naive recomputation differs for " + tag);
    }
  }
  return o;
}

// 7: Weil and subspace bounds on random certified instances.
Outcome weil_suite() {
  Outcome o;
  std::mt19937_64 rng(707);
  for (auto [p, r] : {std::pair{2u, 8u}, {3u, 2u}}) {
    auto f = field(p, 1, r);
    const auto n = oracle::NaiveField::from(*f);
    const auto table = find_primitive(*f);
    const double root = std::sqrt(static_cast<double>(f->order()));
    int found = 0, attempts = 0;
    while (found < 50 && attempts < 100000) {
      ++attempts;
      auto rand_poly = [&](int lo, int hi) {
        const int d = lo + static_cast<int>(rng() % (hi - lo + 1));
        std::vector<ExtElem> c(d + 1);
        for (auto& e : c) e = ExtElem{rng() % f->order()};
        c[d] = ExtElem{1 + rng() % (f->order() - 1)};
        return Poly(std::move(c));
      };
      SumInputs in;
      long long k = -1;
      if (rng() % 2) {
        k = static_cast<long long>(rng() % table->group_order);
        in.chi = make_mult_char(static_cast<std::uint64_t>(k), table);
        in.f1 = RatFn(*f, rand_poly(1, 3), rng() % 3 ? poly::one(*f) : rand_poly(1, 2));
      }
      in.psi = AddCharSpec{ExtElem{rng() % f->order()}};
      in.f2 = RatFn(*f, rand_poly(1, 4), rng() % 3 ? poly::one(*f) : rand_poly(1, 2));
      const auto weil = certify_hypothesis(*f, in.chi, in.psi, in.f1, in.f2, BoundKind::Weil);
      const auto sub = certify_hypothesis(*f, in.chi, in.psi, in.f1, in.f2, BoundKind::Subspace);
      if (!weil.ok || !sub.ok) continue;
      ++found;
      const double D1 = in.f1 ? in.f1->degree() : 0;
      const double D2 = in.f2.degree();
      const auto f1p = in.f1 ? std::optional(ratp(*in.f1)) : std::nullopt;
      std::vector<std::uint64_t> all(f->order());
      for (std::uint64_t c = 0; c < f->order(); ++c) all[c] = c;
      const double full = std::abs(oracle::brute_sum(n, all, k, f1p, in.psi.zeta.code, ratp(in.f2)));
      o.require(full <= 2 * (D1 + D2) * root + 1e-6, "Weil bound exceeded: " + num(full));
      o.require(std::abs(full - weil_check(*f, in).abs_value) < 1e-9, "library and naive full sums differ");
      for (unsigned kk = 0; kk <= r; ++kk) {
        std::vector<std::uint64_t> pts(ipow(p, kk));
        for (std::uint64_t c = 0; c < pts.size(); ++c) pts[c] = c;
        const double s = std::abs(oracle::brute_sum(n, pts, k, f1p, in.psi.zeta.code, ratp(in.f2)));
        o.require(s <= 2 * (D1 + std::max(D2, 2.0)) * root + 1e-6,
                  "subspace bound exceeded at k = " + std::to_string(kk) + ": " + num(s));
      }
    }
    o.require(found == 50, "only " + std::to_string(found) + " certified instances");
  }
  return o;
}

// 8: sparse sums over F_{8^3} against min(trivial, large-q bound).
Outcome sparse_rows() {
  Outcome o;
  auto f = field(2, 3, 3);
  const auto n = oracle::NaiveField::from(*f);
  const auto table = find_primitive(*f);
  SumInputs in;
  in.chi = make_mult_char(1, table);
  in.f1 = RatFn::polynomial(*f, Poly(std::vector<ExtElem>{ExtElem{1}, ExtElem{1}}));  // X + 1
  in.psi = AddCharSpec{f->one()};
  in.f2 = RatFn::polynomial(*f, Poly::monomial(f->one(), 3));
  o.require(has_simple_root(*f, in.f1->num()), "f1 lacks a simple root");
  const auto pascal = oracle::pascal(3);
  for (unsigned s = 0; s <= 3; ++s) {
    const auto pts = oracle::weight_class(n, s);
    const double S = std::abs(oracle::brute_sum(n, pts, 1, ratp(*in.f1), 1, ratp(in.f2)));
    const double trivial = static_cast<double>(pascal[3][s]) * std::pow(7.0, s);
    const double large_q = (1 + 3) * std::pow(2.0, s + 1) * static_cast<double>(pascal[3][s]) * std::pow(8.0, 1.5);
    const auto rep = mixed_sum(*f, in, SumDomain::sparse(s));
    const std::string tag = "s = " + std::to_string(s);
    o.require(pts.size() == pascal[3][s] * ipow(7, s), "weight class size at " + tag);
    o.require(std::abs(rep.abs_value - S) < 1e-9, "library and naive sums differ at " + tag);
    o.require(rep.large_q_log2.has_value(), "no certified bound at " + tag);
    if (rep.large_q_log2) o.require(std::abs(*rep.large_q_log2 - std::log2(large_q)) < 1e-9, "bound formula at " + tag);
    o.require(std::abs(rep.trivial_log2 - std::log2(trivial)) < 1e-9, "trivial bound at " + tag);
    o.require(S <= std::min(trivial, large_q) + 1e-9, "bound exceeded at " + tag + ": " + num(S));
  }
  return o;
}

// 9: sparse counts, orthogonality, Vandermonde.
Outcome counting() {
  Outcome o;
  const auto pascal = oracle::pascal(125);
  for (auto [p, m] : {std::pair{2u, 1u}, {3u, 1u}, {2u, 2u}}) {
    for (unsigned r = 1; r <= 10; ++r) {
      auto f = field(p, m, r);
      const std::uint64_t q = f->q();
      for (unsigned s = 0; s <= r; ++s) {
        std::uint64_t count = 0;
        enumerate_sparse(*f, s, [&](ExtElem) { ++count; });
        o.require(count == static_cast<std::uint64_t>(pascal[r][s]) * ipow(q - 1, s),
                  "count at q = " + std::to_string(q) + ", r = " + std::to_string(r) + ", s = " + std::to_string(s));
      }
      if (f->order() > 4096) continue;
      const auto n = oracle::NaiveField::from(*f);
      std::vector<std::uint64_t> all(f->order());
      for (std::uint64_t c = 0; c < all.size(); ++c) all[c] = c;
      const oracle::RatP x{{0, 1}, {1}};
      for (std::uint64_t z : {std::uint64_t{1}, f->order() - 1}) {
        o.require(std::abs(oracle::brute_sum(n, all, -1, std::nullopt, z, x)) < 1e-9, "additive sum nonzero");
        SumInputs in;
        in.psi = AddCharSpec{ExtElem{z}};
        in.f2 = RatFn::polynomial(*f, poly::x(*f));
        o.require(mixed_sum(*f, in, SumDomain::full()).abs_value < 1e-9, "library additive sum nonzero");
      }
      for (std::uint64_t k = 1; k < f->order() - 1; k += std::max<std::uint64_t>(1, f->order() / 7)) {
        o.require(std::abs(oracle::brute_sum(n, all, static_cast<long long>(k), x, 0, {{0}, {1}})) < 1e-9,
                  "multiplicative sum nonzero");
      }
    }
  }
  std::mt19937_64 rng(909);
  for (int i = 0; i < 100; ++i) {
    const unsigned r = 1 + rng() % 100, s = rng() % (r + 1), k = rng() % (r + 1);
    u128 total = 0;
    for (unsigned t = 0; t <= std::min(s, k); ++t) {
      if (s - t > r - k) continue;
      total += binomial_exact(k, t) * binomial_exact(r - k, s - t);
    }
    o.require(total == pascal[r][s], "Vandermonde fails at r = " + std::to_string(r));
  }
  return o;
}

// 10: Lucas, entropy tail sums, split profile.
Outcome binomials() {
  Outcome o;
  const auto pascal = oracle::pascal(100);
  for (std::uint64_t p : {2u, 3u, 5u, 7u})
    for (unsigned nn = 0; nn <= 100; ++nn)
      for (unsigned k = 0; k <= nn; ++k)
        o.require(lucas_binomial_mod_p(nn, k, p) == static_cast<std::uint64_t>(pascal[nn][k] % p), "Lucas mismatch");
  for (unsigned nn = 1; nn <= 60; ++nn) {
    for (int i = 1; i <= 10; ++i) {
      const double gamma = 0.05 * i;
      u128 sum = 0;
      for (unsigned k = 0; k <= static_cast<unsigned>(std::floor(gamma * nn + 1e-9)); ++k) sum += pascal[nn][k];
      const bool expect = static_cast<long double>(sum) <= std::exp2(static_cast<long double>(nn) * oracle::H(gamma));
      o.require(expect, "entropy tail bound fails at n = " + std::to_string(nn));
      o.require(entropy_tail_check(nn, gamma) == expect, "entropy_tail_check disagrees at n = " + std::to_string(nn));
    }
  }
  std::mt19937_64 rng(1010);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const double rho = 0.01 + 0.49 * U(rng), kappa = 0.01 + 0.98 * U(rng);
    const auto prof = split_profile(rho, kappa);
    auto E = [&](double l) {
      return kappa * oracle::Hstar(l / kappa) + (1 - kappa) * oracle::Hstar((rho - l) / (1 - kappa));
    };
    o.require(prof.monotone, "split profile not monotone at rho = " + num(rho) + ", kappa = " + num(kappa));
    o.require(std::abs(prof.peak_value - E(kappa * rho)) < 1e-12, "split profile peak off");
  }
  return o;
}

struct Criterion {
  const char* name;
  double limit_seconds;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"entropy and eta constants", 60, constants},
      {"entropy root at 3/4", 1, entropy_root},
      {"eta against H/2 + 3/8 and H", 600, eta_grid_checks},
      {"monomial classification, r = 4..10", 900, monomials},
      {"power-plus-one difference identity", 60, power_plus_one},
      {"degenerate subspace sums", 60, counterexamples},
      {"full-field and subspace bounds", 600, weil_suite},
      {"sparse sums over F_512 against bounds", 60, sparse_rows},
      {"counting and orthogonality", 600, counting},
      {"binomial and entropy identities", 600, binomials},
  };
  bool all = true;
  int index = 0;
  for (const auto& c : criteria) {
    ++index;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.limit_seconds) {
      o.pass = false;
      o.detail = "runtime " + num(secs) + " s above " + num(c.limit_seconds) + " s";
    }
    all = all && o.pass;
    std::printf("%s %2d %s (%.2f s)%s%s\n", o.pass ? "PASS" : "FAIL", index, c.name, secs,
                o.detail.empty() ? "" : ": ", o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf(all ? "all criteria passed\n" : "some criteria failed\n");
  return all ? 0 : 1;
}
