#include <gtest/gtest.h>

#include <random>
#include <set>

#include "oracles.hpp"
#include "sparsechar/ext_field.hpp"
#include "sparsechar/numtheory.hpp"

using namespace sparsechar;

namespace {

FieldPtr field(std::uint32_t p, unsigned m, unsigned r) {
  FieldParams fp;
  fp.p = p;
  fp.m = m;
  fp.r = r;
  return make_field(fp);
}

// Irreducibility over F_p by trial division with every monic polynomial of
// degree 1..n/2, coefficients as integer vectors.
bool naive_irreducible(const std::vector<std::uint64_t>& f, std::uint64_t p) {
  const unsigned n = static_cast<unsigned>(f.size() - 1);
  for (unsigned d = 1; d <= n / 2; ++d) {
    const std::uint64_t count = ipow(p, d);
    for (std::uint64_t code = 0; code < count; ++code) {
      std::vector<std::uint64_t> g(d + 1);
      std::uint64_t x = code;
      for (unsigned i = 0; i < d; ++i, x /= p) g[i] = x % p;
      g[d] = 1;
      std::vector<std::uint64_t> rem = f;
      for (unsigned k = n; k >= d; --k) {
        const std::uint64_t c = rem[k];
        for (unsigned i = 0; i <= d; ++i) rem[k - d + i] = (rem[k - d + i] + (p - c) * g[i]) % p;
        if (k == d) break;
      }
      bool zero = true;
      for (unsigned i = 0; i < d; ++i) zero = zero && rem[i] == 0;
      if (zero) return false;
    }
  }
  return true;
}

std::vector<std::uint64_t> first_irreducible_naive(std::uint64_t p, unsigned n) {
  for (std::uint64_t code = 0;; ++code) {
    std::vector<std::uint64_t> f(n + 1);
    std::uint64_t x = code;
    for (unsigned i = 0; i < n; ++i, x /= p) f[i] = x % p;
    f[n] = 1;
    if (naive_irreducible(f, p)) return f;
  }
}

}  // namespace

TEST(Field, DefaultModuli) {
  auto f = field(2, 1, 4);
  std::vector<std::uint64_t> got;
  for (auto c : f->ext_modulus()) got.push_back(c.code);
  EXPECT_EQ(got, (std::vector<std::uint64_t>{1, 1, 0, 0, 1}));  // x^4 + x + 1

  for (std::uint64_t p : {2u, 3u, 5u}) {
    for (unsigned r = 1; r <= (p == 2 ? 8u : 4u); ++r) {
      auto g = field(static_cast<std::uint32_t>(p), 1, r);
      std::vector<std::uint64_t> lib;
      for (auto c : g->ext_modulus()) lib.push_back(c.code);
      EXPECT_EQ(lib, first_irreducible_naive(p, r)) << "p=" << p << " r=" << r;
    }
  }
  auto f4 = field(2, 2, 2);
  EXPECT_EQ(f4->base().modulus(), (std::vector<std::uint32_t>{1, 1, 1}));  // y^2 + y + 1
  auto f9 = field(3, 2, 1);
  EXPECT_EQ(f9->base().modulus(), (std::vector<std::uint32_t>{1, 0, 1}));  // y^2 + 1
}

TEST(Field, TrivialExtension) {
  auto f = field(2, 1, 1);
  EXPECT_EQ(f->order(), 2u);
  EXPECT_EQ(f->mul(f->one(), f->one()), f->one());
  EXPECT_EQ(f->add(f->one(), f->one()), f->zero());
  EXPECT_EQ(f->trace(f->one()), 1u);
  EXPECT_EQ(f->inv(f->one()), f->one());
}

TEST(Field, ConstructionErrors) {
  FieldParams fp;
  fp.p = 4;
  fp.r = 2;
  EXPECT_THROW(make_field(fp), DomainError);
  fp.p = 2;
  fp.r = 0;
  EXPECT_THROW(make_field(fp), DomainError);
  fp.r = 4;
  fp.ext_modulus = std::vector<std::uint32_t>{1, 0, 1, 0, 1};  // (x^2+x+1)^2
  EXPECT_THROW(make_field(fp), DomainError);
  fp.ext_modulus.reset();
  fp.basis = std::vector<std::vector<std::uint32_t>>{{1, 0, 0, 0}, {0, 1, 0, 0}, {1, 1, 0, 0}, {0, 0, 0, 1}};
  EXPECT_THROW(make_field(fp), DomainError);
  fp.basis.reset();
  fp.r = 40;
  EXPECT_THROW(make_field(fp), GuardViolation);
  fp.r = 3;
  fp.guards.max_field_order = 4;
  try {
    make_field(fp);
    FAIL();
  } catch (const GuardViolation& e) {
    EXPECT_EQ(e.parameter(), "max_field_order");
  }
}

TEST(Field, InverseOfZeroThrows) {
  auto f = field(3, 1, 2);
  EXPECT_THROW(f->inv(f->zero()), DomainError);
}

class FieldVsNaive : public ::testing::TestWithParam<std::tuple<unsigned, unsigned, unsigned>> {};

TEST_P(FieldVsNaive, ArithmeticAgrees) {
  const auto [p, m, r] = GetParam();
  auto f = field(p, m, r);
  const auto n = oracle::NaiveField::from(*f);
  const std::uint64_t Q = f->order();
  std::mt19937_64 rng(p * 1000 + m * 100 + r);
  const bool exhaustive = Q <= 64;
  const std::uint64_t pairs = exhaustive ? Q * Q : 3000;
  for (std::uint64_t i = 0; i < pairs; ++i) {
    const std::uint64_t a = exhaustive ? i / Q : rng() % Q;
    const std::uint64_t b = exhaustive ? i % Q : rng() % Q;
    ASSERT_EQ(f->add({a}, {b}).code, n.add(a, b));
    ASSERT_EQ(f->sub({a}, {b}).code, n.sub(a, b));
    ASSERT_EQ(f->mul({a}, {b}).code, n.mul(a, b));
    ASSERT_EQ(f->mul_schoolbook({a}, {b}).code, n.mul(a, b));
  }
  for (std::uint64_t i = 0; i < std::min<std::uint64_t>(Q, 300); ++i) {
    const std::uint64_t a = exhaustive ? i : rng() % Q;
    ASSERT_EQ(f->trace({a}), n.trace(a)) << a;
    ASSERT_EQ(f->trace_by_frobenius({a}).code, n.trace(a));
    ASSERT_EQ(f->weight({a}), n.weight(a));
    ASSERT_EQ(f->neg({a}).code, n.neg(a));
    if (a != 0) { ASSERT_EQ(n.mul(f->inv({a}).code, a), 1u); }
    ASSERT_EQ(f->pow({a}, Q).code, a);
    ASSERT_EQ(f->pth_root(f->frobenius({a})).code, a);
    ASSERT_EQ(f->frobenius({a}).code, n.pow_fast(a, p));
  }
}

INSTANTIATE_TEST_SUITE_P(Fields, FieldVsNaive,
                         ::testing::Values(std::tuple{2u, 1u, 4u}, std::tuple{2u, 1u, 8u}, std::tuple{3u, 1u, 2u},
                                           std::tuple{3u, 1u, 5u}, std::tuple{2u, 2u, 2u}, std::tuple{2u, 2u, 3u},
                                           std::tuple{3u, 2u, 2u}, std::tuple{5u, 1u, 3u}, std::tuple{2u, 3u, 3u},
                                           std::tuple{2u, 1u, 22u}));

TEST(Field, Axioms) {
  std::mt19937_64 rng(1);
  for (auto [p, m, r] : {std::tuple{2u, 1u, 8u}, std::tuple{3u, 2u, 3u}, std::tuple{7u, 1u, 3u},
                         std::tuple{2u, 1u, 24u}}) {
    auto f = field(p, m, r);
    for (int i = 0; i < 300; ++i) {
      const ExtElem a{rng() % f->order()}, b{rng() % f->order()}, c{rng() % f->order()};
      ASSERT_EQ(f->add(a, f->zero()), a);
      ASSERT_EQ(f->mul(a, f->one()), a);
      ASSERT_EQ(f->mul(f->mul(a, b), c), f->mul(a, f->mul(b, c)));
      ASSERT_EQ(f->add(f->add(a, b), c), f->add(a, f->add(b, c)));
      ASSERT_EQ(f->mul(a, f->add(b, c)), f->add(f->mul(a, b), f->mul(a, c)));
      ASSERT_EQ(f->mul(a, b), f->mul(b, a));
      ASSERT_EQ(f->add(a, f->neg(a)), f->zero());
      if (a.code != 0) { ASSERT_EQ(f->mul(a, f->inv(a)), f->one()); }
      if (b.code != 0) { ASSERT_EQ(f->mul(f->div(a, b), b), a); }
      ASSERT_EQ(f->trace(f->add(a, b)), (f->trace(a) + f->trace(b)) % p);
    }
  }
}

TEST(Field, TraceExamples) {
  auto f4 = field(2, 2, 1);
  EXPECT_EQ(f4->trace(f4->zero()), 0u);
  EXPECT_EQ(f4->trace(ExtElem{2}), 1u);  // y + y^2 = 1
  for (auto [p, m, r] : {std::tuple{2u, 1u, 16u}, std::tuple{3u, 1u, 7u}, std::tuple{2u, 2u, 4u},
                         std::tuple{5u, 1u, 4u}}) {
    auto f = field(p, m, r);
    std::vector<std::uint64_t> hist(p, 0);
    for (std::uint64_t c = 0; c < f->order(); ++c) ++hist[f->trace({c})];
    for (auto h : hist) EXPECT_EQ(h, f->order() / p);
  }
}

TEST(Field, PthRootExamples) {
  auto f8 = field(2, 1, 3);
  EXPECT_EQ(f8->pth_root(f8->zero()), f8->zero());
  EXPECT_EQ(f8->pth_root(f8->one()), f8->one());
  for (std::uint64_t c = 0; c < 8; ++c) EXPECT_EQ(f8->pth_root({c}), f8->pow({c}, 4));
  auto f = field(2, 1, 8);
  std::mt19937_64 rng(2);
  for (int i = 0; i < 100; ++i) {
    const ExtElem a{rng() % 256};
    EXPECT_EQ(f->pth_root(f->frobenius(a)), a);
  }
}

TEST(Field, RelativeTrace) {
  auto f = field(2, 2, 3);
  const auto n = oracle::NaiveField::from(*f);
  std::set<std::uint32_t> image;
  for (std::uint64_t c = 0; c < f->order(); ++c) {
    std::uint64_t acc = 0, x = c;
    for (int j = 0; j < 3; ++j) {
      acc = n.add(acc, x);
      x = n.pow_fast(x, 4);
    }
    ASSERT_LT(acc, 4u);
    EXPECT_EQ(f->relative_trace({c}).code, acc);
    image.insert(f->relative_trace({c}).code);
  }
  EXPECT_EQ(image.size(), 4u);
}

TEST(Field, WeightExamples) {
  auto f = field(2, 1, 5);
  EXPECT_EQ(f->weight(f->zero()), 0u);
  EXPECT_EQ(f->weight(f->add(f->basis()[0], f->basis()[2])), 2u);
  auto f27 = field(3, 1, 3);
  int count = 0;
  for (std::uint64_t c = 0; c < 27; ++c) count += f27->weight({c}) == 2;
  EXPECT_EQ(count, 12);
}

TEST(Field, CustomBasis) {
  FieldParams fp;
  fp.p = 3;
  fp.r = 3;
  // theta_1 = 1 + x, theta_2 = x^2, theta_3 = 2 + x^2.
  fp.basis = std::vector<std::vector<std::uint32_t>>{{1, 1, 0}, {0, 0, 1}, {2, 0, 1}};
  auto f = make_field(fp);
  ASSERT_TRUE(f->has_custom_basis());
  EXPECT_EQ(f->basis()[0].code, 1u + 3u);
  std::set<std::uint64_t> seen;
  for (std::uint64_t code = 0; code < 27; ++code) {
    std::vector<FqElem> u{FqElem{static_cast<std::uint32_t>(code % 3)}, FqElem{static_cast<std::uint32_t>(code / 3 % 3)},
                          FqElem{static_cast<std::uint32_t>(code / 9)}};
    const ExtElem x = f->from_basis_coords(u);
    seen.insert(x.code);
    unsigned nz = 0;
    for (auto c : u) nz += c.code != 0;
    EXPECT_EQ(f->weight(x), nz);
    const auto back = f->basis_coords(x);
    for (int i = 0; i < 3; ++i) EXPECT_EQ(back[i].code, u[i].code);
  }
  EXPECT_EQ(seen.size(), 27u);

  // Permuting the basis permutes coordinates and leaves weights unchanged.
  fp.basis = std::vector<std::vector<std::uint32_t>>{{2, 0, 1}, {1, 1, 0}, {0, 0, 1}};
  auto g = make_field(fp);
  for (std::uint64_t c = 0; c < 27; ++c) EXPECT_EQ(f->weight({c}), g->weight({c}));

  // The identity matrix is the polynomial basis.
  fp.basis = std::vector<std::vector<std::uint32_t>>{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  EXPECT_FALSE(make_field(fp)->has_custom_basis());
}

TEST(Field, LargeFieldWithoutTables) {
  FieldParams fp;
  fp.p = 2;
  fp.r = 12;
  fp.guards.max_arith_table = 16;
  auto slow = make_field(fp);
  auto fast = make_field(FieldParams{2, 1, 12, {}, {}, {}, {}});
  ASSERT_FALSE(slow->has_tables());
  ASSERT_TRUE(fast->has_tables());
  std::mt19937_64 rng(4);
  for (int i = 0; i < 2000; ++i) {
    const ExtElem a{rng() % 4096}, b{rng() % 4096};
    ASSERT_EQ(slow->mul(a, b), fast->mul(a, b));
    if (a.code) { ASSERT_EQ(slow->inv(a), fast->inv(a)); }
  }
}
