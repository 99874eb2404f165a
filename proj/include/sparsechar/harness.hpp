#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "sparsechar/bounds.hpp"
#include "sparsechar/characters.hpp"
#include "sparsechar/config.hpp"
#include "sparsechar/error.hpp"
#include "sparsechar/ext_field.hpp"
#include "sparsechar/fdq.hpp"
#include "sparsechar/parallel.hpp"
#include "sparsechar/rational.hpp"
#include "sparsechar/sparse_sums.hpp"
#include "sparsechar/text.hpp"

namespace sparsechar {

enum ExitCode : int { kExitOk = 0, kExitCheckFailed = 1, kExitUsage = 2, kExitGuard = 3 };

inline std::string format_fixed(double v, int digits = 9) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

// ---- argument syntax ----------------------------------------------------------

/// "sparse:<s>", "sparse:all", "subspace:<k>", "subspace:all" or "full".
inline std::vector<SumDomain> parse_domain(std::string_view s, unsigned r) {
  auto fail = [&](const std::string& what, std::size_t col) { throw ParseError(what, 1, col); };
  auto number_after = [&](std::size_t colon) -> std::optional<unsigned> {
    const std::string_view tail = s.substr(colon + 1);
    if (tail == "all") return std::nullopt;
    unsigned v = 0;
    const auto res = std::from_chars(tail.data(), tail.data() + tail.size(), v);
    if (res.ec != std::errc{} || res.ptr != tail.data() + tail.size()) fail("expected an integer or 'all'", colon + 2);
    if (v > r) fail("domain parameter exceeds r = " + std::to_string(r), colon + 2);
    return v;
  };
  std::vector<SumDomain> out;
  if (s == "full") {
    out.push_back(SumDomain::full());
    return out;
  }
  const std::size_t colon = s.find(':');
  if (colon == std::string_view::npos) fail("expected sparse:<s>, subspace:<k> or full", 1);
  const std::string_view kind = s.substr(0, colon);
  const auto v = number_after(colon);
  if (kind == "sparse") {
    if (v) {
      out.push_back(SumDomain::sparse(*v));
    } else {
      for (unsigned i = 0; i <= r; ++i) out.push_back(SumDomain::sparse(i));
    }
  } else if (kind == "subspace") {
    if (v) {
      out.push_back(SumDomain::subspace(*v));
    } else {
      for (unsigned i = 0; i <= r; ++i) out.push_back(SumDomain::subspace(i));
    }
  } else {
    fail("unknown domain kind '" + std::string(kind) + "'", 1);
  }
  return out;
}

/// "a:b:n": n evenly spaced values from a to b inclusive.
inline std::vector<double> parse_grid(std::string_view s) {
  auto fail = [&](const std::string& what) { throw ParseError(what, 1, 1); };
  const std::size_t c1 = s.find(':');
  const std::size_t c2 = c1 == std::string_view::npos ? c1 : s.find(':', c1 + 1);
  if (c2 == std::string_view::npos) fail("grid must look like a:b:n");
  double a = 0, b = 0;
  unsigned n = 0;
  try {
    std::size_t used = 0;
    const std::string sa(s.substr(0, c1)), sb(s.substr(c1 + 1, c2 - c1 - 1)), sn(s.substr(c2 + 1));
    a = std::stod(sa, &used);
    if (used != sa.size()) fail("bad grid start");
    b = std::stod(sb, &used);
    if (used != sb.size()) fail("bad grid end");
    const unsigned long nn = std::stoul(sn, &used);
    if (used != sn.size() || nn == 0 || nn > 1000000) fail("bad grid count");
    n = static_cast<unsigned>(nn);
  } catch (const std::logic_error&) {
    fail("grid must look like a:b:n");
  }
  std::vector<double> out;
  for (unsigned i = 0; i < n; ++i) {
    const double v = n == 1 ? a : a + (b - a) * i / (n - 1);
    out.push_back(std::round(v * 1e12) / 1e12);
  }
  return out;
}

// ---- field ---------------------------------------------------------------------

inline nlohmann::ordered_json field_info(const ExtField& f) {
  nlohmann::ordered_json j;
  j["field"] = format_field(f);
  j["p"] = f.characteristic();
  j["m"] = f.m();
  j["r"] = f.r();
  j["q"] = f.q();
  j["order"] = f.order();
  j["ext_mod"] = format_polynomial(Polynomial<FqElem>(f.ext_modulus()));
  if (f.m() > 1) {
    std::vector<FqElem> h;
    for (auto c : f.base().modulus()) h.push_back(FqElem{c});
    j["base_mod"] = format_polynomial(Polynomial<FqElem>(h), 'y');
  }
  if (f.order() <= f.guards().max_log_table) j["primitive"] = find_primitive(f)->gamma.code;
  return j;
}

inline int cmd_field(const ExtField& f, std::ostream& out) {
  out << field_info(f).dump(2) << "\n";
  return kExitOk;
}

// ---- sums ----------------------------------------------------------------------

struct SumConfig {
  std::string f1;                 // empty when k is absent
  std::string f2 = "x";
  std::optional<std::uint64_t> k;  // nullopt: no multiplicative factor
  std::uint64_t zeta = 1;
  std::vector<SumDomain> domains;
  unsigned threads = 1;
};

inline constexpr const char* kSumsHeader = "q,r,s,domain,f1,f2,k,zeta,abs_sum,points,dropped,trivial_log2,thm1_log2";

inline int cmd_sum(const ExtField& f, const SumConfig& cfg, std::ostream& out) {
  if (cfg.zeta >= f.order()) throw DomainError("zeta must be the code of a field element");
  SumInputs in;
  in.psi = AddCharSpec{ExtElem{cfg.zeta}};
  in.f2 = parse_rational(f, cfg.f2);
  if (cfg.k) {
    if (cfg.f1.empty()) throw DomainError("a multiplicative character needs --f1");
    in.chi = make_mult_char(*cfg.k, find_primitive(f));
    in.f1 = parse_rational(f, cfg.f1);
  } else if (!cfg.f1.empty()) {
    throw DomainError("--f1 needs a multiplicative character (--k)");
  }
  const std::string f1_text = in.f1 ? format_rational(*in.f1) : "-";
  const std::string f2_text = format_rational(in.f2);
  const std::string k_text = cfg.k ? std::to_string(*cfg.k) : "-";
  // Quote any text that would split a CSV cell.
  auto quoted = [](const std::string& s) {
    return s.find_first_of(",\"") == std::string::npos ? s : "\"" + s + "\"";
  };
  out << kSumsHeader << "\n";
  for (const auto& d : cfg.domains) {
    const SumReport rep = mixed_sum(f, in, d, cfg.threads);
    out << f.q() << "," << f.r() << ","
        << (d.kind == SumDomain::Kind::Sparse ? std::to_string(d.param) : std::string()) << ","
        << d.to_string() << "," << quoted(f1_text) << "," << quoted(f2_text) << "," << k_text << ","
        << cfg.zeta << "," << format_fixed(rep.abs_value) << "," << rep.point_count << "," << rep.dropped
        << "," << format_fixed(rep.trivial_log2) << ","
        << (rep.large_q_log2 ? format_fixed(*rep.large_q_log2) : std::string()) << "\n";
  }
  return kExitOk;
}

// ---- classify --------------------------------------------------------------------

enum class ClassifyMode { Auto, Shortcut, Exhaustive, Oracle };

inline ClassifyMode parse_classify_mode(std::string_view s) {
  if (s == "auto") return ClassifyMode::Auto;
  if (s == "shortcut") return ClassifyMode::Shortcut;
  if (s == "exhaustive") return ClassifyMode::Exhaustive;
  if (s == "oracle") return ClassifyMode::Oracle;
  throw ParseError("mode must be auto, shortcut, exhaustive or oracle", 1, 1);
}

struct Classification {
  std::vector<Verdict> verdicts;
  std::string status;  // In, NotIn, UnknownByThisTest or Conflict
};

/// All applicable rules for f. Monomials c X^d and c X^{-d} are recognized;
/// X^{p d} behaves like X^d, so the monomial rule uses the exponent with
/// factors of p removed.
inline Classification classify(const ExtField& f, const RatFn& fn, ClassifyMode mode, unsigned threads = 1) {
  const std::uint64_t p = f.characteristic();
  Classification out;
  if (fn.is_zero()) throw DomainError("classify: f is zero");
  const Poly& u = fn.num();
  const Poly& v = fn.den();
  auto is_monomial = [](const Poly& a) { return a.weight() == 1; };

  if (fn.is_polynomial() && is_monomial(u) && u.degree() >= 1) {
    const std::uint64_t d = static_cast<std::uint64_t>(u.degree());
    Verdict vd = monomial_in_Fd(normalize_exponent(d, p), p);
    if (d % p == 0) vd.reason += (vd.reason.empty() ? "" : "; ") + std::string("exponent normalized to ") +
                                 std::to_string(normalize_exponent(d, p));
    out.verdicts.push_back(vd);
  }
  if (!fn.is_polynomial() && u.degree() == 0 && is_monomial(v)) {
    const std::uint64_t d = static_cast<std::uint64_t>(v.degree());
    if (d % p != 0) out.verdicts.push_back(reciprocal_in_Fd(d, p));
  }
  if (fn.is_polynomial()) out.verdicts.push_back(degree_residue_rule(u, p));
  if (!fn.is_polynomial()) {
    if (mode == ClassifyMode::Auto || mode == ClassifyMode::Shortcut)
      out.verdicts.push_back(denominator_rule(f, fn, DenominatorMode::Shortcut));
    if (mode == ClassifyMode::Exhaustive || (mode == ClassifyMode::Auto && f.order() <= f.guards().max_exhaustive))
      out.verdicts.push_back(denominator_rule(f, fn, DenominatorMode::Exhaustive));
  } else if (mode == ClassifyMode::Oracle || (mode == ClassifyMode::Auto && f.order() <= f.guards().max_oracle)) {
    out.verdicts.push_back(fd_oracle_poly(f, u, OracleMode::Fast, threads));
  }

  bool in = false, not_in = false;
  for (const auto& vd : out.verdicts) {
    in = in || vd.status == Status::In;
    not_in = not_in || vd.status == Status::NotIn;
  }
  out.status = in && not_in ? "Conflict" : in ? "In" : not_in ? "NotIn" : "UnknownByThisTest";
  return out;
}

inline nlohmann::ordered_json classification_json(const ExtField& f, const RatFn& fn, const Classification& c) {
  nlohmann::ordered_json j;
  j["field"] = format_field(f);
  j["f"] = format_rational(fn);
  j["verdicts"] = nlohmann::ordered_json::array();
  for (const auto& v : c.verdicts) {
    nlohmann::ordered_json e;
    e["rule"] = v.rule;
    e["status"] = to_string(v.status);
    if (!v.reason.empty()) e["reason"] = v.reason;
    if (v.witness) e["witness"] = {{"omega", v.witness->omega.code}, {"alpha", v.witness->alpha.code}};
    j["verdicts"].push_back(e);
  }
  j["status"] = c.status;
  return j;
}

inline int cmd_classify(const ExtField& f, std::string_view fn_text, ClassifyMode mode, std::ostream& out,
                        unsigned threads = 1) {
  const RatFn fn = parse_rational(f, fn_text);
  const Classification c = classify(f, fn, mode, threads);
  out << classification_json(f, fn, c).dump(2) << "\n";
  return c.status == "Conflict" ? kExitCheckFailed : kExitOk;
}

// ---- eta / figure ----------------------------------------------------------------

inline constexpr const char* kFigureHeader = "rho,H,eta,kappa_opt,lambda_opt,simplified";

inline int cmd_eta(const std::vector<double>& rhos, double tol, std::ostream& out, unsigned threads = 1) {
  for (double rho : rhos) {
    if (!(rho > 0.0 && rho <= 0.5)) throw DomainError("rho values must lie in (0, 1/2]");
  }
  auto parts = run_chunks(rhos.size(), threads, [&](std::uint64_t b, std::uint64_t e) {
    std::vector<EtaResult> res;
    for (std::uint64_t i = b; i < e; ++i) res.push_back(eta(rhos[i], tol));
    return res;
  });
  out << kFigureHeader << "\n";
  for (const auto& part : parts) {
    for (const auto& r : part) {
      char rho_buf[32];
      std::snprintf(rho_buf, sizeof rho_buf, "%.10g", r.rho);
      out << rho_buf << "," << format_fixed(entropy_H(r.rho), 10) << "," << format_fixed(r.eta, 10) << ","
          << format_fixed(r.kappa_opt, 10) << "," << format_fixed(r.lambda_opt, 10) << ","
          << format_fixed(eta_simplified(r.rho), 10) << "\n";
    }
  }
  return kExitOk;
}

inline int cmd_figure1(const std::vector<double>& grid, std::ostream& out, unsigned threads = 1) {
  return cmd_eta(grid, 1e-5, out, threads);
}

}  // namespace sparsechar
