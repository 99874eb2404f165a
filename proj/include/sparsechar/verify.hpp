#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "sparsechar/bounds.hpp"
#include "sparsechar/characters.hpp"
#include "sparsechar/ext_field.hpp"
#include "sparsechar/fdq.hpp"
#include "sparsechar/harness.hpp"
#include "sparsechar/sparse_sums.hpp"

namespace sparsechar {

enum class Suite { Small, Full };

inline Suite parse_suite(std::string_view s) {
  if (s == "small") return Suite::Small;
  if (s == "full") return Suite::Full;
  throw ParseError("suite must be small or full", 1, 1);
}

/// Replaceable dependencies, used to inject faults in negative controls.
struct VerifyHooks {
  std::function<double(double)> entropy = [](double g) { return entropy_H(g); };
};

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

namespace verify_detail {

inline FieldPtr field(std::uint32_t p, unsigned m, unsigned r) {
  FieldParams fp;
  fp.p = p;
  fp.m = m;
  fp.r = r;
  return make_field(fp);
}

inline ExtElem random_elem(const ExtField& f, std::mt19937_64& rng, bool nonzero = false) {
  std::uniform_int_distribution<std::uint64_t> dist(nonzero ? 1 : 0, f.order() - 1);
  return ExtElem{dist(rng)};
}

inline Poly random_poly(const ExtField& f, int degree, std::mt19937_64& rng) {
  std::vector<ExtElem> c(static_cast<std::size_t>(degree) + 1);
  for (auto& e : c) e = random_elem(f, rng);
  c.back() = random_elem(f, rng, true);
  return Poly(std::move(c));
}

/// Random (chi, psi, f1, f2) whose full-field and subspace hypotheses are
/// both certified; D1 + D2 stays small.
inline SumInputs random_certified(const ExtField& f, const LogTablePtr& table, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coin(0, 2);
  std::uniform_int_distribution<int> deg(1, 4);
  while (true) {
    SumInputs in;
    const int shape = coin(rng);
    in.psi = AddCharSpec{random_elem(f, rng, shape != 2)};
    if (shape != 0) {
      std::uniform_int_distribution<std::uint64_t> kd(1, table->group_order - 1);
      in.chi = make_mult_char(table->group_order > 1 ? kd(rng) : 0, table);
      in.f1 = RatFn(f, random_poly(f, deg(rng), rng), coin(rng) == 0 ? random_poly(f, 1, rng) : poly::one(f));
    }
    const bool rational = coin(rng) == 0;
    in.f2 = RatFn(f, random_poly(f, deg(rng), rng), rational ? random_poly(f, deg(rng) % 2 + 1, rng) : poly::one(f));
    if (in.f1 && in.f1->is_zero()) continue;
    if (certify_hypothesis(f, in.chi, in.psi, in.f1, in.f2, BoundKind::Weil).ok &&
        certify_hypothesis(f, in.chi, in.psi, in.f1, in.f2, BoundKind::Subspace).ok)
      return in;
  }
}

}  // namespace verify_detail

/// The self-verification suite. Every check is deterministic (fixed seeds).
inline std::vector<CheckResult> run_verify(Suite suite, const VerifyHooks& hooks = {}, unsigned threads = 1,
                                           std::ostream* progress = nullptr) {
  using namespace verify_detail;
  const bool full = suite == Suite::Full;
  std::vector<CheckResult> results;
  auto check = [&](const std::string& name, const std::function<std::string()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    CheckResult r{name, false, "", 0};
    try {
      r.detail = body();
      r.pass = r.detail.empty();
    } catch (const std::exception& e) {
      r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (progress) *progress << (r.pass ? "PASS " : "FAIL ") << r.name << (r.pass ? "" : ": " + r.detail) << "\n";
    results.push_back(std::move(r));
  };
  const auto& H = hooks.entropy;

  check("entropy constants", [&]() -> std::string {
    if (std::abs(H(0.5) - 1.0) > 1e-12) return "H(1/2) = " + std::to_string(H(0.5));
    if (!(H(0.2) > 0.7219)) return "H(1/5) = " + std::to_string(H(0.2));
    return "";
  });

  check("eta at 1/5", [&]() -> std::string {
    const EtaResult e = eta(0.2, 1e-5);
    if (!(e.eta < 0.7208)) return "eta(1/5) = " + std::to_string(e.eta);
    if (!(e.eta < H(0.2))) return "eta(1/5) is not below H(1/5)";
    return "";
  });

  check("entropy root 3/4", [&]() -> std::string {
    const double rho = solve_H_eq(0.75);
    if (std::abs(rho - 0.2145) > 5e-4) return "rho0 = " + std::to_string(rho);
    if (std::abs(H(rho) - 0.75) > 1e-8) return "H(rho0) = " + std::to_string(H(rho));
    return "";
  });

  check("eta against simplified bound", [&]() -> std::string {
    std::vector<double> grid;
    if (full) {
      for (int i = 5; i <= 50; ++i) grid.push_back(i / 100.0);
    } else {
      grid = {0.1, 0.2, 0.25, 0.3, 0.5};
    }
    for (double rho : grid) {
      const double e = eta(rho, 1e-5).eta;
      const double simple = H(rho) / 2 + 0.375;
      if (e > simple + 1e-6) return "eta above simplified bound at rho = " + std::to_string(rho);
      if (rho <= 0.275 && !(e <= simple - 1e-4)) return "gap below 1e-4 at rho = " + std::to_string(rho);
      if (rho >= 0.2 - 1e-12 && !(e < H(rho))) return "eta >= H at rho = " + std::to_string(rho);
    }
    return "";
  });

  check("monomial oracle agrees with closed form", [&]() -> std::string {
    const unsigned rmax = full ? 10 : 6;
    for (unsigned r = 4; r <= rmax; ++r) {
      const auto f = field(2, 1, r);
      for (std::uint64_t d = 3; d < f->order(); d += 2) {
        const Poly xd = Poly::monomial(f->one(), d);
        const Verdict o = fd_oracle_poly(*f, xd, OracleMode::Fast, threads);
        if (o.status != monomial_in_Fd(d, 2).status)
          return "r = " + std::to_string(r) + ", d = " + std::to_string(d);
      }
    }
    return "";
  });

  check("difference identity and reduction", [&]() -> std::string {
    for (std::uint32_t p : {2u, 3u, 5u}) {
      const auto f = field(p, 1, 1);
      for (unsigned k = 1; k <= 2; ++k) {
        const std::uint64_t pk = ipow(p, k);
        const Poly x1 = poly::add(*f, poly::x(*f), poly::one(*f));
        const Poly lhs = poly::sub(*f, poly::pow(*f, x1, pk + 1), poly::pow(*f, poly::x(*f), pk + 1));
        Poly rhs = poly::add(*f, Poly::monomial(f->one(), pk), x1);
        if (!(lhs == rhs)) return "identity fails for p = " + std::to_string(p) + ", k = " + std::to_string(k);
        if (artin_schreier_membership(*f, lhs) != ASResult::Expressible)
          return "reduction fails for p = " + std::to_string(p) + ", k = " + std::to_string(k);
      }
    }
    return "";
  });

  check("degenerate subspace sums", [&]() -> std::string {
    std::mt19937_64 rng(7);
    const int per = full ? 10 : 3;
    for (auto [q, r] : {std::pair{2u, 4u}, std::pair{2u, 6u}, std::pair{3u, 3u}}) {
      const auto f = field(q, 1, r);
      for (int i = 0; i < per; ++i) {
        const ExtElem alpha = random_elem(*f, rng, true);
        const ExtElem beta = random_elem(*f, rng);
        const Poly h = random_poly(*f, 1 + static_cast<int>(rng() % 3), rng);
        const auto res = subspace_counterexample(*f, alpha, beta, h);
        if (!res.exact_value || *res.exact_value != ipow(q, r - 1))
          return "q = " + std::to_string(q) + ", r = " + std::to_string(r);
      }
    }
    return "";
  });

  check("full-field and subspace bounds", [&]() -> std::string {
    std::mt19937_64 rng(11);
    const int per = full ? 50 : 8;
    for (auto [p, r] : {std::pair{2u, 8u}, std::pair{3u, 2u}}) {
      const auto f = field(p, 1, r);
      const auto table = find_primitive(*f);
      for (int i = 0; i < per; ++i) {
        const SumInputs in = random_certified(*f, table, rng);
        const auto w = weil_check(*f, in, threads);
        if (!w.holds) return "full-field bound fails";
        const std::uint64_t D1 = in.f1 ? static_cast<std::uint64_t>(in.f1->degree()) : 0;
        const double bound = subspace_bound(f->order(), D1, static_cast<std::uint64_t>(in.f2.degree()));
        for (unsigned k = 0; k <= r; ++k) {
          const double v = accumulate_sum(*f, in, SumDomain::subspace(k), threads).magnitude();
          if (v > bound + 1e-6) return "subspace bound fails at k = " + std::to_string(k);
        }
      }
    }
    return "";
  });

  check("large-q rows", [&]() -> std::string {
    const auto f = field(2, 3, 3);
    SumInputs in;
    in.chi = make_mult_char(1, find_primitive(*f));
    in.f1 = RatFn::polynomial(*f, poly::x(*f));
    in.psi = AddCharSpec{f->one()};
    in.f2 = RatFn::polynomial(*f, Poly::monomial(f->one(), 3));
    for (unsigned s = 0; s <= 3; ++s) {
      const SumReport rep = mixed_sum(*f, in, SumDomain::sparse(s), threads);
      if (!rep.large_q_log2) return "hypothesis not certified";
      const double limit = std::exp2(std::min(rep.trivial_log2, *rep.large_q_log2));
      if (rep.abs_value > limit + 1e-6) return "s = " + std::to_string(s);
    }
    return "";
  });

  check("counting and orthogonality", [&]() -> std::string {
    const unsigned rmax = full ? 10 : 6;
    for (std::uint32_t q : {2u, 3u, 4u}) {
      for (unsigned r = 1; r <= rmax; ++r) {
        const auto f = q == 4 ? field(2, 2, r) : field(q, 1, r);
        std::uint64_t all = 0;
        for (unsigned s = 0; s <= r; ++s) {
          std::uint64_t n = 0;
          enumerate_sparse(*f, s, [&](ExtElem x) { n += f->weight(x) == s; });
          if (n != *binomial_u64(r, s) * ipow(q - 1, s)) return "count q = " + std::to_string(q);
          all += n;
        }
        if (all != f->order()) return "partition q = " + std::to_string(q);
      }
    }
    std::mt19937_64 rng(13);
    for (int i = 0; i < 100; ++i) {
      const unsigned r = 1 + static_cast<unsigned>(rng() % 100);
      const unsigned s = static_cast<unsigned>(rng() % (r + 1));
      const unsigned k = static_cast<unsigned>(rng() % (r + 1));
      u128 sum = 0;
      for (unsigned t = 0; t <= std::min(s, k); ++t) {
        if (s - t <= r - k) sum += binomial_exact(k, t) * binomial_exact(r - k, s - t);
      }
      if (sum != binomial_exact(r, s)) return "split r = " + std::to_string(r) + ", k = " + std::to_string(k);
    }
    for (auto [p, r] : {std::pair{2u, 4u}, std::pair{3u, 2u}}) {
      const auto f = field(p, 1, r);
      const auto table = find_primitive(*f);
      for (std::uint64_t z = 1; z < f->order(); ++z) {
        UnitAccumulator acc(1, p);
        for (std::uint64_t c = 0; c < f->order(); ++c) acc.add(0, eval_add(*f, AddCharSpec{ExtElem{z}}, ExtElem{c}));
        if (acc.magnitude() > 1e-9) return "additive orthogonality";
      }
      for (std::uint64_t k = 1; k < table->group_order; ++k) {
        UnitAccumulator acc(table->group_order, p);
        const MultCharSpec chi{k, table};
        for (std::uint64_t c = 1; c < f->order(); ++c) acc.add(*eval_mult(chi, ExtElem{c}), 0);
        if (acc.magnitude() > 1e-9) return "multiplicative orthogonality";
      }
    }
    return "";
  });

  check("binomial identities", [&]() -> std::string {
    const unsigned nmax = full ? 100 : 40;
    for (std::uint64_t p : {2u, 3u, 5u, 7u}) {
      for (unsigned n = 0; n <= nmax; ++n) {
        for (unsigned k = 0; k <= n; ++k) {
          // n <= 100 fits in 128 bits.
          if (lucas_binomial_mod_p(n, k, p) != static_cast<std::uint64_t>(binomial_exact(n, k) % p))
            return "Lucas n = " + std::to_string(n);
        }
      }
    }
    for (unsigned n = 1; n <= 60; ++n) {
      for (int g = 1; g <= 10; ++g) {
        if (!entropy_tail_check(n, g * 0.05)) return "entropy bound n = " + std::to_string(n);
      }
    }
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> rho_d(0.01, 0.5), kappa_d(0.01, 0.99);
    for (int i = 0; i < (full ? 100 : 20); ++i) {
      const double rho = rho_d(rng), kappa = kappa_d(rng);
      if (!split_profile(rho, kappa).monotone) return "profile rho = " + std::to_string(rho);
    }
    return "";
  });

  check("field axioms", [&]() -> std::string {
    std::mt19937_64 rng(3);
    for (auto [p, m, r] : {std::tuple{2u, 1u, 8u}, std::tuple{3u, 1u, 4u}, std::tuple{2u, 2u, 3u}}) {
      const auto f = field(p, m, r);
      for (int i = 0; i < 200; ++i) {
        const ExtElem a = random_elem(*f, rng), b = random_elem(*f, rng), c = random_elem(*f, rng);
        if (f->mul(a, f->add(b, c)) != f->add(f->mul(a, b), f->mul(a, c))) return "distributivity";
        if (f->mul(f->mul(a, b), c) != f->mul(a, f->mul(b, c))) return "associativity";
        if (a.code != 0 && f->mul(a, f->inv(a)) != f->one()) return "inverse";
        if (f->pth_root(f->frobenius(a)) != a) return "p-th root";
        if (f->trace(f->add(a, b)) != (f->trace(a) + f->trace(b)) % p) return "trace additivity";
      }
    }
    return "";
  });

  return results;
}

/// Runs the suite, prints one line per check, and returns 0 iff all pass.
inline int cmd_verify(Suite suite, std::ostream& out, const VerifyHooks& hooks = {}, unsigned threads = 1) {
  const auto results = run_verify(suite, hooks, threads);
  bool ok = true;
  for (const auto& r : results) {
    out << (r.pass ? "PASS " : "FAIL ") << r.name << " (" << format_fixed(r.seconds, 2) << " s)"
        << (r.pass ? "" : ": " + r.detail) << "\n";
    ok = ok && r.pass;
  }
  out << (ok ? "all checks passed" : "some checks failed") << "\n";
  return ok ? kExitOk : kExitCheckFailed;
}

}  // namespace sparsechar
