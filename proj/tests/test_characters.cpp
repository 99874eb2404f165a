#include <gtest/gtest.h>

#include <complex>
#include <random>

#include "oracles.hpp"
#include "sparsechar/characters.hpp"

using namespace sparsechar;

namespace {

FieldPtr field(std::uint32_t p, unsigned m, unsigned r) {
  FieldParams fp;
  fp.p = p;
  fp.m = m;
  fp.r = r;
  return make_field(fp);
}

struct Shape {
  std::uint32_t p;
  unsigned m, r;
};

class CharVsNaive : public ::testing::TestWithParam<Shape> {};

}  // namespace

TEST(Characters, PrimitiveExamples) {
  auto f2 = field(2, 1, 1);
  EXPECT_EQ(find_primitive(*f2)->gamma, f2->one());
  auto f16 = field(2, 1, 4);
  const auto t16 = find_primitive(*f16);
  EXPECT_EQ(t16->group_order, 15u);
  EXPECT_EQ(t16->gamma.code, 2u);  // x generates modulo x^4+x+1
  auto f9 = field(3, 1, 2);
  const auto t9 = find_primitive(*f9);
  EXPECT_EQ(f9->pow(t9->gamma, 4), f9->neg(f9->one()));
  EXPECT_THROW(t9->log(f9->zero()), DomainError);
  EXPECT_FALSE(is_primitive(*f9, f9->zero()));
  EXPECT_FALSE(is_primitive(*f9, f9->one()));
}

TEST(Characters, Guard) {
  FieldParams fp;
  fp.p = 2;
  fp.r = 12;
  fp.guards.max_log_table = 1024;
  auto f = make_field(fp);
  EXPECT_THROW(find_primitive(*f), GuardViolation);
}

TEST_P(CharVsNaive, PrimitiveAndLogs) {
  const auto s = GetParam();
  auto f = field(s.p, s.m, s.r);
  const auto n = oracle::NaiveField::from(*f);
  const auto t = find_primitive(*f);
  EXPECT_EQ(t->gamma.code, n.smallest_primitive());
  const auto lg = n.log_table(t->gamma.code);
  for (std::uint64_t c = 1; c < f->order(); ++c) {
    ASSERT_EQ(t->log(ExtElem{c}), lg[c]);
    ASSERT_EQ(f->pow(t->gamma, t->log(ExtElem{c})).code, c);
  }
  // Logs are a bijection onto [0, Q - 1).
  std::vector<bool> seen(f->order() - 1, false);
  for (std::uint64_t c = 1; c < f->order(); ++c) seen[t->log(ExtElem{c})] = true;
  EXPECT_TRUE(std::all_of(seen.begin(), seen.end(), [](bool b) { return b; }));
}

TEST_P(CharVsNaive, AdditiveCharacter) {
  const auto s = GetParam();
  auto f = field(s.p, s.m, s.r);
  const auto n = oracle::NaiveField::from(*f);
  std::mt19937_64 rng(s.p * 100 + s.r);
  for (int i = 0; i < 200; ++i) {
    const ExtElem zeta{rng() % f->order()}, x{rng() % f->order()}, y{rng() % f->order()};
    const AddCharSpec psi{zeta};
    ASSERT_EQ(eval_add(*f, psi, x), n.trace(n.mul(zeta.code, x.code)));
    ASSERT_EQ(eval_add(*f, psi, f->add(x, y)), (eval_add(*f, psi, x) + eval_add(*f, psi, y)) % s.p);
    ASSERT_EQ(eval_add(*f, AddCharSpec{f->pow(zeta, s.p)}, f->pow(x, s.p)), eval_add(*f, psi, x));
    ASSERT_EQ(eval_add(*f, AddCharSpec{f->one()}, f->pow(x, s.p)), eval_add(*f, AddCharSpec{f->one()}, x));
  }
  EXPECT_TRUE(AddCharSpec{}.is_principal());
  EXPECT_EQ(eval_add(*f, AddCharSpec{}, f->one()), 0u);
}

TEST_P(CharVsNaive, MultiplicativeCharacter) {
  const auto s = GetParam();
  auto f = field(s.p, s.m, s.r);
  const auto t = find_primitive(*f);
  const std::uint64_t N = t->group_order;
  std::mt19937_64 rng(s.p * 1000 + s.r);
  for (int i = 0; i < 200; ++i) {
    const auto chi = make_mult_char(rng() % N, t);
    const ExtElem x{1 + rng() % (f->order() - 1)}, y{1 + rng() % (f->order() - 1)};
    const auto a = *eval_mult(chi, x), b = *eval_mult(chi, y);
    ASSERT_EQ(*eval_mult(chi, f->mul(x, y)), (a + b) % N);
    ASSERT_EQ(*eval_mult(chi, f->pow(x, s.p)), static_cast<std::uint64_t>(u128{a} * s.p % N));
    ASSERT_EQ(*eval_mult(chi, t->gamma), chi.k);
    // chi^order is principal.
    ASSERT_EQ(u128{chi.k} * chi.order() % N, 0u);
    for (std::uint64_t d = 1; d < chi.order(); ++d) ASSERT_NE(u128{chi.k} * d % N, 0u);
  }
  EXPECT_FALSE(eval_mult(make_mult_char(1 % N, t), f->zero()).has_value());
  EXPECT_TRUE(make_mult_char(0, t).is_principal());
  EXPECT_THROW(make_mult_char(N, t), DomainError);
}

TEST_P(CharVsNaive, Orthogonality) {
  const auto s = GetParam();
  auto f = field(s.p, s.m, s.r);
  const auto t = find_primitive(*f);
  const std::uint64_t N = t->group_order;
  for (std::uint64_t k : {std::uint64_t{0}, std::uint64_t{1}, N / 2, N - 1}) {
    if (k >= N) continue;
    UnitAccumulator acc(N, s.p);
    const auto chi = make_mult_char(k, t);
    for (std::uint64_t c = 1; c < f->order(); ++c) acc.add(*eval_mult(chi, ExtElem{c}), 0);
    EXPECT_NEAR(acc.magnitude(), k == 0 ? static_cast<double>(N) : 0.0, 1e-9) << k;
  }
  for (std::uint64_t z : {std::uint64_t{0}, std::uint64_t{1}, f->order() - 1}) {
    UnitAccumulator acc(1, s.p);
    for (std::uint64_t c = 0; c < f->order(); ++c) acc.add(0, eval_add(*f, AddCharSpec{ExtElem{z}}, ExtElem{c}));
    EXPECT_NEAR(acc.magnitude(), z == 0 ? static_cast<double>(f->order()) : 0.0, 1e-9) << z;
  }
}

INSTANTIATE_TEST_SUITE_P(Shapes, CharVsNaive,
                         ::testing::Values(Shape{2, 1, 1}, Shape{2, 1, 4}, Shape{3, 1, 2}, Shape{2, 2, 2},
                                           Shape{5, 1, 2}, Shape{3, 1, 3}, Shape{2, 1, 8}, Shape{2, 3, 2}),
                         [](const auto& info) {
                           return "p" + std::to_string(info.param.p) + "m" + std::to_string(info.param.m) + "r" +
                                  std::to_string(info.param.r);
                         });

TEST(Accumulator, Examples) {
  UnitAccumulator a(1, 2);
  a.add(0, 0, 3);
  EXPECT_NEAR(a.magnitude(), 3.0, 1e-12);
  a.add(0, 1, 3);
  EXPECT_NEAR(a.magnitude(), 0.0, 1e-12);
  EXPECT_EQ(a.total(), 6u);

  UnitAccumulator b(4, 1);
  for (std::uint64_t k = 0; k < 4; ++k) b.add(k, 0);
  EXPECT_NEAR(b.magnitude(), 0.0, 1e-12);
  b.add(1, 0, 2);
  EXPECT_NEAR(b.magnitude(), 2.0, 1e-12);

  // e^{2 pi i/3} + e^{2 pi i/2}: |(-1/2 - 1) + i sqrt(3)/2| = sqrt(3).
  UnitAccumulator c(3, 2);
  c.add(1, 0);
  c.add(0, 1);
  EXPECT_NEAR(c.magnitude(), std::sqrt(3.0), 1e-12);
  c.drop(5);
  EXPECT_EQ(c.dropped(), 5u);
  EXPECT_EQ(c.total(), 2u);
  EXPECT_THROW(UnitAccumulator(0, 2), DomainError);
  EXPECT_THROW(c.merge(UnitAccumulator(4, 2)), DomainError);
}

TEST(Accumulator, MergeMatchesSequential) {
  std::mt19937_64 rng(3);
  // Second modulus pair forces the sparse storage path.
  for (auto [n, p] : {std::pair<std::uint64_t, std::uint32_t>{255, 2}, {(1ULL << 26) - 1, 3}}) {
    UnitAccumulator whole(n, p), left(n, p), right(n, p);
    for (int i = 0; i < 1000; ++i) {
      const std::uint64_t a = rng() % n;
      const std::uint32_t b = static_cast<std::uint32_t>(rng() % p);
      whole.add(a, b);
      (i % 3 == 0 ? left : right).add(a, b);
    }
    left.drop(2);
    whole.drop(2);
    left.merge(right);
    EXPECT_EQ(left.counts(), whole.counts());
    EXPECT_EQ(left.total(), whole.total());
    EXPECT_EQ(left.dropped(), whole.dropped());
    EXPECT_EQ(left.magnitude(), whole.magnitude());
    // Magnitude against a direct complex sum.
    std::complex<double> z = 0;
    for (const auto& [ab, cnt] : whole.counts()) {
      const double ang = 2 * M_PI * (static_cast<double>(ab.first) / n + static_cast<double>(ab.second) / p);
      z += static_cast<double>(cnt) * std::polar(1.0, ang);
    }
    EXPECT_NEAR(whole.magnitude(), std::abs(z), 1e-6);
  }
}
