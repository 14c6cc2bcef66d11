#include <doctest.h>

#include <cmath>
#include <random>

#include "octoroot/jet.hpp"
#include "octoroot/scalar.hpp"
#include "support.hpp"

using namespace octoroot;
using octoroot::test::abs_err;
using octoroot::test::rel_err;

namespace {

using J = Jet<BigComplex, 5>;

J jet_of(const PrecisionContext& ctx, std::array<long, 5> c) {
  return J({BigComplex(ctx, c[0]), BigComplex(ctx, c[1]), BigComplex(ctx, c[2]),
            BigComplex(ctx, c[3]), BigComplex(ctx, c[4])});
}

void check_jet(const J& j, std::array<double, 5> expected, double tol = 1e-40) {
  for (std::size_t k = 0; k < 5; ++k) {
    INFO("coefficient " << k);
    CHECK(abs_err(j[k], BigComplex(j[k].context(), expected[k], 0.0)) < tol);
  }
}

// Reciprocal of a power series by long division: q_k = (a_k - sum_{i<k} q_i b_{k-i}) / b_0.
std::array<BigComplex, 5> long_division(const J& a, const J& b) {
  std::vector<BigComplex> q;
  for (std::size_t k = 0; k < 5; ++k) {
    BigComplex r = a[k];
    for (std::size_t i = 0; i < k; ++i) r = r - q[i] * b[k - i];
    q.push_back(r / b[0]);
  }
  return {q[0], q[1], q[2], q[3], q[4]};
}

J random_jet(std::mt19937_64& rng, const PrecisionContext& ctx) {
  auto r = [&] { return test::random_complex(rng, ctx, -2.0, 2.0); };
  return J({r(), r(), r(), r(), r()});
}

}  // namespace

TEST_CASE("precision context bounds and equality") {
  CHECK_THROWS_AS(PrecisionContext(15), std::invalid_argument);
  CHECK_NOTHROW(PrecisionContext(16));
  CHECK(PrecisionContext(50) == PrecisionContext(50));
  CHECK_FALSE(PrecisionContext(50) == PrecisionContext(60));
  PrecisionContext ctx(40);
  CHECK(ctx.noise_floor() == ctx.power_of_ten(-30));
}

TEST_CASE("values keep their context precision") {
  PrecisionContext ctx(300);
  const BigComplex third = BigComplex(ctx, 1L) / BigComplex(ctx, 3L);
  // 0.333... carries roughly 300 correct digits.
  const BigReal back = third.re() * 3 - 1;
  CHECK(boost::multiprecision::abs(back) < ctx.power_of_ten(-295));
  CHECK(ctx.parse("0.1") * 10 == 1);
}

TEST_CASE("mixing contexts is an error") {
  PrecisionContext a(30);
  PrecisionContext b(60);
  CHECK_THROWS_AS(BigComplex(a, 1L) + BigComplex(b, 1L), ContextError);
  CHECK_THROWS_AS(BigComplex(a, 1L) * BigComplex(b, 2L), ContextError);
}

TEST_CASE("non-finite values propagate") {
  PrecisionContext ctx(30);
  const BigComplex nan = BigComplex::nan(ctx);
  const BigComplex one(ctx, 1L);
  CHECK_FALSE(nan.is_finite());
  CHECK_FALSE((nan + one).is_finite());
  CHECK_FALSE((one * nan).is_finite());
  CHECK_FALSE((one / nan).is_finite());
  CHECK_FALSE((one / BigComplex(ctx, 0L)).is_finite());
  CHECK_FALSE(exp(nan).is_finite());
}

TEST_CASE("modulus via hypot") {
  PrecisionContext ctx(30);
  CHECK(BigComplex(ctx, 3L, 4L).abs() == 5);
  const BigComplex big(ctx, ctx.parse("3e400000"), ctx.parse("4e400000"));
  CHECK(big.abs() == ctx.parse("5e400000"));
}

TEST_CASE("complex elementary functions") {
  PrecisionContext ctx(60);
  const BigComplex i(ctx, 0L, 1L);
  const BigComplex pi(ctx, ctx.pi(), BigReal(0));
  CHECK(abs_err(exp(i * pi), BigComplex(ctx, -1L)) < 1e-55);
  CHECK(abs_err(sqrt(BigComplex(ctx, -4L)), BigComplex(ctx, 0L, 2L)) < 1e-55);
  CHECK(abs_err(log(BigComplex(ctx, -1L)), i * pi) < 1e-55);
  CHECK(abs_err(sin(i), BigComplex(ctx, 0.0, std::sinh(1.0))) < 1e-15);
  CHECK(abs_err(pow(i, 2L), BigComplex(ctx, -1L)) == 0.0);
  CHECK_THROWS_AS(log(BigComplex(ctx, 0L)), DomainError);
  try {
    (void)pow(BigComplex(ctx, 0L), -1L);
    FAIL("expected a domain error");
  } catch (const DomainError& e) {
    CHECK_FALSE(e.offending_value().empty());
  }
}

TEST_CASE("scientific formatting") {
  PrecisionContext ctx(1200);
  CHECK(format_scientific(ctx.parse("6.1046e-7"), 3) == "0.610e-6");
  CHECK(format_scientific(ctx.parse("0.17949e-368"), 3) == "0.179e-368");
  CHECK(format_scientific(ctx.parse("0.1795e-368"), 3) == "0.180e-368");
  CHECK(format_scientific(ctx.parse("0.35"), 3) == "0.350e+0");
  CHECK(format_scientific(ctx.parse("-12.5"), 3) == "-0.125e+2");
  CHECK(format_scientific(ctx.parse("0.1798e-368"), 3, MantissaRounding::truncate) ==
        "0.179e-368");
  CHECK(format_scientific(ctx.parse("-0.9999"), 2, MantissaRounding::truncate) == "-0.99e+0");
  CHECK(format_scientific(ctx.parse("0.35"), 3, MantissaRounding::truncate) == "0.350e+0");
}

TEST_CASE("jet arithmetic examples") {
  PrecisionContext ctx(50);
  const J id = jet_of(ctx, {1, 1, 0, 0, 0});
  check_jet(id * id, {1, 2, 1, 0, 0});
  check_jet(jet_of(ctx, {2, 0, 0, 0, 0}) + jet_of(ctx, {3, 1, 0, 0, 0}), {5, 1, 0, 0, 0});
  const J one = jet_of(ctx, {1, 0, 0, 0, 0});
  const J q = one / id;
  check_jet(q, {1, -1, 1, -1, 1});
  const auto oracle = long_division(one, id);
  for (std::size_t k = 0; k < 5; ++k) CHECK(abs_err(q[k], oracle[k]) < 1e-45);
  CHECK_THROWS_AS(one / jet_of(ctx, {0, 1, 0, 0, 0}), SingularJetError);
}

TEST_CASE("jet division matches long division on random series") {
  PrecisionContext ctx(50);
  std::mt19937_64 rng(7);
  for (int n = 0; n < 50; ++n) {
    const J a = random_jet(rng, ctx);
    const J b = random_jet(rng, ctx);
    const J q = a / b;
    const auto oracle = long_division(a, b);
    for (std::size_t k = 0; k < 5; ++k) CHECK(rel_err(q[k], oracle[k]) < 1e-35);
  }
}

TEST_CASE("jet elementary functions") {
  PrecisionContext ctx(50);
  const J h = jet_of(ctx, {0, 1, 0, 0, 0});
  check_jet(sin(h), {0, 1, 0, -1.0 / 6, 0}, 1e-15);
  check_jet(exp(h), {1, 1, 0.5, 1.0 / 6, 1.0 / 24}, 1e-15);
  check_jet(cos(h), {1, 0, -0.5, 0, 1.0 / 24}, 1e-15);
  check_jet(pow(jet_of(ctx, {3, 1, 0, 0, 0}), 2L), {9, 6, 1, 0, 0});
  // ln(1 + h) = h - h^2/2 + h^3/3 - h^4/4
  check_jet(log(jet_of(ctx, {1, 1, 0, 0, 0})), {0, 1, -0.5, 1.0 / 3, -0.25}, 1e-15);
  // sqrt(4 + h) = 2 + h/4 - h^2/64 + h^3/512 - 5 h^4/16384
  check_jet(sqrt(jet_of(ctx, {4, 1, 0, 0, 0})), {2, 0.25, -1.0 / 64, 1.0 / 512, -5.0 / 16384},
            1e-15);
  // (2 + h)^(1/2) via the real-exponent path agrees with sqrt.
  const J a = jet_of(ctx, {2, 1, 0, 0, 0});
  const J p = pow(a, BigComplex(ctx, 0.5, 0.0));
  const J s = sqrt(a);
  for (std::size_t k = 0; k < 5; ++k) CHECK(rel_err(p[k], s[k]) < 1e-40);
  CHECK_THROWS_AS(log(h), DomainError);
}

TEST_CASE("jet algebra is associative and distributive") {
  PrecisionContext ctx(60);
  std::mt19937_64 rng(11);
  for (int n = 0; n < 100; ++n) {
    const J a = random_jet(rng, ctx);
    const J b = random_jet(rng, ctx);
    const J c = random_jet(rng, ctx);
    const J l1 = (a * b) * c;
    const J r1 = a * (b * c);
    const J l2 = a * (b + c);
    const J r2 = a * b + a * c;
    const J l3 = (a + b) + c;
    const J r3 = a + (b + c);
    for (std::size_t k = 0; k < 5; ++k) {
      CHECK(rel_err(l1[k], r1[k]) < 1e-50);
      CHECK(rel_err(l2[k], r2[k]) < 1e-50);
      CHECK(rel_err(l3[k], r3[k]) < 1e-50);
    }
  }
}

TEST_CASE("jets propagate non-finite values") {
  PrecisionContext ctx(30);
  J bad = jet_of(ctx, {1, 1, 0, 0, 0});
  bad = bad * J::constant(BigComplex::nan(ctx));
  CHECK_FALSE(bad.is_finite());
  CHECK_FALSE((bad + jet_of(ctx, {1, 0, 0, 0, 0})).is_finite());
}

TEST_CASE("double lane traits") {
  using T = ScalarTraits<Complex>;
  CHECK(T::is_zero(Complex{0.0, 0.0}));
  CHECK_FALSE(T::is_finite(Complex{std::nan(""), 0.0}));
  CHECK(T::abs(Complex{3.0, 4.0}) == 5.0);
}
