#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sparsechar/error.hpp"
#include "sparsechar/numtheory.hpp"

namespace sparsechar {

// ---- entropy ------------------------------------------------------------------

namespace bounds_detail {

inline double H(double g) {
  if (g <= 0.0 || g >= 1.0) return 0.0;
  return -g * std::log2(g) - (1.0 - g) * std::log2(1.0 - g);
}
inline double Hstar(double g) { return g <= 0.5 ? H(g) : 1.0; }

inline double f(double rho, double kappa, double lambda) {
  return kappa * H(lambda / kappa) + (1.0 - kappa) * Hstar((rho - lambda) / (1.0 - kappa));
}
inline double g(double rho, double kappa, double lambda) {
  return 0.25 + 0.5 * (H(rho) + (1.0 - kappa) * Hstar((rho - lambda) / (1.0 - kappa)));
}
inline double h(double rho, double kappa) { return 0.5 * (H(rho) + kappa); }

inline double objective(double rho, double kappa, double lambda) {
  return std::max({f(rho, kappa, lambda), g(rho, kappa, lambda), h(rho, kappa)});
}

struct Inner {
  double value;
  double lambda;
};

/// min over 0 < lambda <= kappa rho of max(f, g, h). f increases in lambda
/// on that range while g does not increase, so the minimum of max(f, g) is
/// at their crossing (or an endpoint); bisection on f - g finds it.
inline Inner inner(double rho, double kappa) {
  const double hi0 = kappa * rho;
  auto diff = [&](double l) { return f(rho, kappa, l) - g(rho, kappa, l); };
  double l;
  if (diff(hi0) <= 0.0) {
    l = hi0;
  } else {
    double lo = hi0 * 1e-12, hi = hi0;
    if (diff(lo) >= 0.0) {
      l = lo;
    } else {
      for (int it = 0; it < 200 && hi - lo > 1e-17; ++it) {
        const double mid = 0.5 * (lo + hi);
        (diff(mid) < 0.0 ? lo : hi) = mid;
      }
      // Either endpoint is within 1e-17; take the better of the two.
      l = objective(rho, kappa, lo) <= objective(rho, kappa, hi) ? lo : hi;
    }
  }
  return {objective(rho, kappa, l), l};
}

}  // namespace bounds_detail

inline double entropy_H(double gamma) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw DomainError("entropy_H needs 0 <= gamma <= 1");
  return bounds_detail::H(gamma);
}

inline double entropy_Hstar(double gamma) {
  if (!(gamma >= 0.0)) throw DomainError("entropy_Hstar needs gamma >= 0");
  return bounds_detail::Hstar(gamma);
}

// ---- exponent functions -------------------------------------------------------

namespace bounds_detail {
inline void check_fgh(double rho, double kappa, double lambda) {
  if (!(rho > 0.0 && rho <= 0.5)) throw DomainError("rho must lie in (0, 1/2]");
  if (!(kappa > 0.0 && kappa < 1.0)) throw DomainError("kappa must lie in (0, 1)");
  if (!(lambda > 0.0 && lambda <= kappa * rho * (1 + 1e-12))) throw DomainError("lambda must lie in (0, kappa rho]");
}
}  // namespace bounds_detail

inline double func_f(double rho, double kappa, double lambda) {
  bounds_detail::check_fgh(rho, kappa, lambda);
  return bounds_detail::f(rho, kappa, lambda);
}
inline double func_g(double rho, double kappa, double lambda) {
  bounds_detail::check_fgh(rho, kappa, lambda);
  return bounds_detail::g(rho, kappa, lambda);
}
/// Independent of lambda; the argument is validated but otherwise unused.
inline double func_h(double rho, double kappa, double lambda) {
  bounds_detail::check_fgh(rho, kappa, lambda);
  return bounds_detail::h(rho, kappa);
}

// ---- eta ------------------------------------------------------------------------

struct EtaResult {
  double rho = 0;
  double eta = 0;
  double kappa_opt = 0;
  double lambda_opt = 0;
  double tol = 0;
};

/// eta(rho) = min over 0 < kappa < 1, 0 < lambda <= kappa rho of
/// max(f, g, h).
///
/// 1. A 400 x 400 grid over (kappa, lambda / (kappa rho)) gives a coarse
///    minimum.
/// 2. The inner minimum over lambda is solved exactly (see inner()), and the
///    resulting profile in kappa is scanned on 4000 points.
/// 3. Golden-section search refines the best few local minima of the scan.
/// The result is the best point found; its value is recomputed from
/// (kappa_opt, lambda_opt), so eta is attained there exactly.
inline EtaResult eta(double rho, double tol = 1e-5) {
  using namespace bounds_detail;
  if (!(rho > 0.0 && rho <= 0.5)) throw DomainError("eta needs 0 < rho <= 1/2");
  if (!(tol > 0.0)) throw DomainError("eta needs tol > 0");

  EtaResult best{rho, 2.0, 0.5, 0.25 * rho, tol};
  auto consider = [&](double kappa, double lambda) {
    const double v = objective(rho, kappa, lambda);
    if (v < best.eta) {
      best.eta = v;
      best.kappa_opt = kappa;
      best.lambda_opt = lambda;
    }
  };

  constexpr int kGrid = 400;
  for (int i = 1; i < kGrid; ++i) {
    const double kappa = static_cast<double>(i) / kGrid;
    for (int j = 1; j <= kGrid; ++j) consider(kappa, kappa * rho * j / kGrid);
  }

  constexpr int kScan = 4000;
  std::vector<double> profile(kScan + 1, 3.0);
  for (int i = 1; i < kScan; ++i) {
    const double kappa = static_cast<double>(i) / kScan;
    const Inner in = inner(rho, kappa);
    profile[i] = in.value;
    consider(kappa, in.lambda);
  }

  std::vector<int> minima;
  for (int i = 1; i < kScan; ++i) {
    if (profile[i] <= profile[i - 1] && profile[i] <= profile[i + 1]) minima.push_back(i);
  }
  std::sort(minima.begin(), minima.end(), [&](int a, int b) { return profile[a] < profile[b]; });
  if (minima.size() > 4) minima.resize(4);

  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int i : minima) {
    double a = std::max(1e-9, static_cast<double>(i - 1) / kScan);
    double b = std::min(1.0 - 1e-9, static_cast<double>(i + 1) / kScan);
    double c = b - phi * (b - a), d = a + phi * (b - a);
    double fc = inner(rho, c).value, fd = inner(rho, d).value;
    while (b - a > 1e-13) {
      if (fc <= fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - phi * (b - a);
        fc = inner(rho, c).value;
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + phi * (b - a);
        fd = inner(rho, d).value;
      }
    }
    const double kappa = 0.5 * (a + b);
    consider(kappa, inner(rho, kappa).lambda);
  }
  return best;
}

/// Simplified bound H(rho)/2 + 3/8.
inline double eta_simplified(double rho) { return entropy_H(rho) / 2.0 + 0.375; }

// ---- monotonicity profile -------------------------------------------------------

struct SplitProfile {
  bool monotone = false;
  double peak_lambda = 0;
  double peak_value = 0;
  std::size_t samples = 0;
};

/// Samples E(lambda) = kappa H*(lambda/kappa) + (1-kappa) H*((rho-lambda)/(1-kappa))
/// on 1000 points of (0, rho) plus lambda = kappa rho, and checks that it
/// rises up to kappa rho and falls after it, with 1e-12 slack.
inline SplitProfile split_profile(double rho, double kappa) {
  using bounds_detail::Hstar;
  if (!(rho > 0.0 && rho <= 0.5)) throw DomainError("rho must lie in (0, 1/2]");
  if (!(kappa > 0.0 && kappa < 1.0)) throw DomainError("kappa must lie in (0, 1)");
  auto E = [&](double l) { return kappa * Hstar(l / kappa) + (1.0 - kappa) * Hstar((rho - l) / (1.0 - kappa)); };
  std::vector<double> grid;
  for (int i = 1; i <= 1000; ++i) grid.push_back(rho * i / 1001.0);
  const double split = kappa * rho;
  grid.push_back(split);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  SplitProfile out;
  out.samples = grid.size();
  out.monotone = true;
  out.peak_value = -1;
  double prev = E(grid[0]);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double v = E(grid[i]);
    if (v > out.peak_value) {
      out.peak_value = v;
      out.peak_lambda = grid[i];
    }
    if (i > 0) {
      if (grid[i] <= split && v < prev - 1e-12) out.monotone = false;
      if (grid[i] > split && v > prev + 1e-12) out.monotone = false;
    }
    prev = v;
  }
  return out;
}

// ---- explicit bounds (log2) ---------------------------------------------------

namespace bounds_detail {
inline void check_qrs(std::uint64_t q, std::uint64_t r, std::uint64_t s) {
  if (q < 2) throw DomainError("q must be at least 2");
  if (r < 1) throw DomainError("r must be at least 1");
  if (s > r) throw DomainError("s must lie in [0, r]");
}
}  // namespace bounds_detail

/// log2 #G_r(s) = log2(C(r, s) (q-1)^s).
inline double trivial_bound_log2(std::uint64_t q, std::uint64_t r, std::uint64_t s) {
  bounds_detail::check_qrs(q, r, s);
  return log2_binomial(r, s) + static_cast<double>(s) * std::log2(static_cast<double>(q - 1));
}

/// log2((d1 + max(d2, 2)) 2^{s+1} C(r, s) q^{r/2}).
inline double large_q_bound_log2(std::uint64_t q, std::uint64_t r, std::uint64_t s, std::uint64_t d1,
                              std::uint64_t d2) {
  bounds_detail::check_qrs(q, r, s);
  const double lead = static_cast<double>(d1 + std::max<std::uint64_t>(d2, 2));
  return std::log2(lead) + static_cast<double>(s + 1) + log2_binomial(r, s) +
         0.5 * static_cast<double>(r) * std::log2(static_cast<double>(q));
}

/// log2(2^s t C(r, s) q^{r/2}) for pure multiplicative sums with t distinct
/// zeros and poles.
inline double pure_mult_bound_log2(std::uint64_t q, std::uint64_t r, std::uint64_t s, std::uint64_t t) {
  bounds_detail::check_qrs(q, r, s);
  if (t < 1) throw DomainError("t must be at least 1");
  return static_cast<double>(s) + std::log2(static_cast<double>(t)) + log2_binomial(r, s) +
         0.5 * static_cast<double>(r) * std::log2(static_cast<double>(q));
}

/// eta(rho) r with rho = min(s, r - s) / r; an exponent only, the o(r)
/// term is not modeled.
inline double eta_exponent(std::uint64_t r, std::uint64_t s, double tol = 1e-5) {
  if (r < 2 || s < 1 || s >= r) throw DomainError("exponent needs 1 <= s < r");
  const double rho = static_cast<double>(std::min(s, r - s)) / static_cast<double>(r);
  return eta(rho, tol).eta * static_cast<double>(r);
}

/// (1/2) log2 #G_r(s) + (3/8) r log2 q.
inline double generalized_q_bound_log2(std::uint64_t q, std::uint64_t r, std::uint64_t s) {
  return 0.5 * trivial_bound_log2(q, r, s) + 0.375 * static_cast<double>(r) * std::log2(static_cast<double>(q));
}

/// Weil bound 2 (D1 + D2) q^{r/2} for full-field sums.
inline double weil_bound(std::uint64_t Q, std::uint64_t D1, std::uint64_t D2) {
  return 2.0 * static_cast<double>(D1 + D2) * std::sqrt(static_cast<double>(Q));
}

/// Subspace bound 2 (D1 + max(D2, 2)) q^{r/2}.
inline double subspace_bound(std::uint64_t Q, std::uint64_t D1, std::uint64_t D2) {
  return 2.0 * static_cast<double>(D1 + std::max<std::uint64_t>(D2, 2)) * std::sqrt(static_cast<double>(Q));
}

struct Threshold {
  double value;
  bool below_one;
};

/// s/r above log2 q / (2 log2((q-1)/2)) makes the large-q bound nontrivial.
inline Threshold nontrivial_threshold(std::uint64_t q) {
  if (q <= 3) throw DomainError("threshold needs q >= 4");
  const double v = std::log2(static_cast<double>(q)) / (2.0 * std::log2((static_cast<double>(q) - 1.0) / 2.0));
  return {v, v < 1.0};
}

/// The rho in (0, 1/2] with H(rho) = c.
inline double solve_H_eq(double c) {
  if (!(c > 0.0 && c <= 1.0)) throw DomainError("solve_H_eq needs 0 < c <= 1");
  // H is flat to double precision near 1/2, so bisection cannot resolve c = 1.
  if (c == 1.0) return 0.5;
  double lo = 0.0, hi = 0.5;
  while (hi - lo > 1e-15) {
    const double mid = 0.5 * (lo + hi);
    (bounds_detail::H(mid) < c ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

/// sum_{k <= gamma n} C(n, k) <= 2^{n H(gamma)}, left side exact.
inline bool entropy_tail_check(unsigned n, double gamma) {
  if (!(gamma > 0.0 && gamma <= 0.5)) throw DomainError("entropy_tail_check needs 0 < gamma <= 1/2");
  if (n > 125) throw DomainError("entropy_tail_check supports n <= 125");
  const auto kmax = static_cast<unsigned>(std::floor(gamma * n + 1e-9));
  u128 sum = 0;
  for (unsigned k = 0; k <= kmax; ++k) sum += binomial_exact(n, k);
  const long double rhs = std::exp2(static_cast<long double>(n) * bounds_detail::H(gamma));
  return static_cast<long double>(sum) <= rhs;
}

// ---- bound rows ---------------------------------------------------------------

enum class BoundName { Trivial, LargeQ, PureMultiplicative, EtaExponent, GeneralizedQ, SimplifiedEta };

inline const char* to_string(BoundName n) {
  switch (n) {
    case BoundName::Trivial: return "trivial";
    case BoundName::LargeQ: return "large_q";
    case BoundName::PureMultiplicative: return "pure_multiplicative";
    case BoundName::EtaExponent: return "eta_exponent";
    case BoundName::GeneralizedQ: return "generalized_q";
    case BoundName::SimplifiedEta: return "simplified_eta";
  }
  return "?";
}

struct BoundRow {
  BoundName name;
  double log2_value = 0;
  bool applicable = false;
  std::string reason;
};

}  // namespace sparsechar
