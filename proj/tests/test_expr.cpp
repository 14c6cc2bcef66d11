#include <doctest.h>

#include <random>

#include "octoroot/expr.hpp"
#include "octoroot/problem.hpp"
#include "support.hpp"

using namespace octoroot;
using namespace octoroot::expr;
using octoroot::test::abs_err;
using octoroot::test::rel_err;

namespace {

Expr num(const char* s) { return build::number(s); }
const Expr X = build::variable();

BigComplex at(const PrecisionContext& ctx, double re, double im = 0.0) { return {ctx, re, im}; }

}  // namespace

TEST_CASE("parse builds the expected trees") {
  CHECK(parse("x^2-1") == build::sub(build::pow(X, num("2")), num("1")));
  CHECK(parse("(10*x^5-1)*(x^5+10)") ==
        build::mul(build::sub(build::mul(num("10"), build::pow(X, num("5"))), num("1")),
                   build::add(build::pow(X, num("5")), num("10"))));
  const Expr f1 = build::add(
      build::call(Func::ln, build::add(num("1"), build::pow(X, num("2")))),
      build::mul(build::call(Func::exp, build::sub(build::pow(X, num("2")),
                                                   build::mul(num("3"), X))),
                 build::call(Func::sin, X)));
  CHECK(parse("ln(1+x^2)+exp(x^2-3*x)*sin(x)") == f1);
  CHECK(parse("  ln ( 1 + x ^ 2 ) + exp(x^2 - 3*x) * sin( x )") == f1);
}

TEST_CASE("precedence and associativity") {
  PrecisionContext ctx(30);
  const auto v = [&](const char* s) { return eval_value(parse(s), at(ctx, 0.0)); };
  CHECK(v("-2^2") == at(ctx, -4.0));
  // 3^2 is not an integer literal, so this exponent goes through exp/log.
  CHECK(rel_err(v("2^3^2"), at(ctx, 512.0)) < 1e-25);
  CHECK(v("2^-1") == at(ctx, 0.5));
  CHECK(v("8/4/2") == at(ctx, 1.0));
  CHECK(v("1-2-3") == at(ctx, -4.0));
  CHECK(v("2*3+4*5") == at(ctx, 26.0));
  CHECK(v("--3") == at(ctx, 3.0));
  CHECK(v("i*i") == at(ctx, -1.0));
  CHECK(parse("-x^2") == build::negate(build::pow(X, num("2"))));
}

TEST_CASE("printing round-trips") {
  const char* sources[] = {"x^2-1",
                           "(10*x^5-1)*(x^5+10)",
                           "ln(1+x^2)+exp(x^2-3*x)*sin(x)",
                           "1+exp(2+x-x^2)+x^3-cos(1+x)",
                           "(1+x^2)*cos(pi*x/2)+ln(x^2+2*x+2)/(1+x^2)",
                           "x^4+sin(pi/x^2)-5",
                           "(x^4-1)*(x^2+2*i)",
                           "-(x-1)^2",
                           "(-x)^2",
                           "2^3^2",
                           "(2^3)^2",
                           "x-(x-1)",
                           "x/(x*x)",
                           "x^-2",
                           "-(-x)",
                           "sqrt(x)/(1/x)",
                           "1.5e-3*x"};
  for (const char* s : sources) {
    INFO(s);
    const Expr e = parse(s);
    CHECK(parse(e.to_string()) == e);
  }
}

TEST_CASE("random trees round-trip through the printer") {
  std::mt19937_64 rng(3);
  std::function<Expr(int)> gen = [&](int depth) -> Expr {
    std::uniform_int_distribution<int> pick(0, depth <= 0 ? 3 : 11);
    switch (pick(rng)) {
      case 0: return X;
      case 1: return num("2");
      case 2: return build::imaginary_unit();
      case 3: return build::pi();
      case 4: return build::negate(gen(depth - 1));
      case 5: return build::add(gen(depth - 1), gen(depth - 1));
      case 6: return build::sub(gen(depth - 1), gen(depth - 1));
      case 7: return build::mul(gen(depth - 1), gen(depth - 1));
      case 8: return build::div(gen(depth - 1), gen(depth - 1));
      case 9: return build::pow(gen(depth - 1), gen(depth - 1));
      case 10: return build::call(Func::exp, gen(depth - 1));
      default: return build::call(Func::sqrt, gen(depth - 1));
    }
  };
  for (int n = 0; n < 300; ++n) {
    const Expr e = gen(4);
    INFO(e.to_string());
    CHECK(parse(e.to_string()) == e);
  }
}

TEST_CASE("syntax errors carry offset and expectations") {
  try {
    (void)parse("x^2-");
    FAIL("expected syntax error");
  } catch (const SyntaxError& e) {
    CHECK(e.offset() == 4);
    CHECK_FALSE(e.expected().empty());
  }
  try {
    (void)parse("sin(x");
    FAIL("expected syntax error");
  } catch (const SyntaxError& e) {
    CHECK(e.offset() == 5);
  }
  CHECK_THROWS_AS(parse(""), SyntaxError);
  CHECK_THROWS_AS(parse("2 3"), SyntaxError);
  CHECK_THROWS_AS(parse("(x"), SyntaxError);
  CHECK_THROWS_AS(parse("x)"), SyntaxError);
  CHECK_THROWS_AS(parse("*x"), SyntaxError);
  try {
    (void)parse("tan(x)");
    FAIL("expected unknown identifier");
  } catch (const UnknownIdentifierError& e) {
    CHECK(e.name() == "tan");
    CHECK(e.offset() == 0);
  }
  CHECK_THROWS_AS(parse("x+y"), UnknownIdentifierError);
}

TEST_CASE("fuzzed input only ever produces expression errors") {
  std::mt19937_64 rng(99);
  const std::string alphabet = "x i pi sin cos exp ln sqrt()+-*/^.e0123456789 \t#@";
  std::uniform_int_distribution<std::size_t> len(0, 24);
  std::uniform_int_distribution<std::size_t> ch(0, alphabet.size() - 1);
  std::uniform_int_distribution<int> byte(0, 255);
  int accepted = 0;
  for (int n = 0; n < 5000; ++n) {
    std::string s;
    const std::size_t L = len(rng);
    for (std::size_t k = 0; k < L; ++k) {
      s.push_back(n % 5 == 0 ? static_cast<char>(byte(rng)) : alphabet[ch(rng)]);
    }
    try {
      const Expr e = parse(s);
      ++accepted;
      CHECK(parse(e.to_string()) == e);
    } catch (const ExprError&) {
    }
  }
  CHECK(accepted > 0);
}

TEST_CASE("evaluation examples") {
  PrecisionContext ctx(100);
  CHECK(eval_value(parse("x^2-1"), at(ctx, 2.0)) == at(ctx, 3.0));
  const BigReal floor = ctx.noise_floor();
  CHECK(eval_value(builtin("f2", ctx).expr, at(ctx, -1.0)).abs() < floor);
  CHECK(eval_value(builtin("p5", ctx).expr, at(ctx, 1.0)).abs() < floor);
  const auto d = eval_derivatives(parse("x^2-1"), at(ctx, 2.0), 2);
  REQUIRE(d.size() == 3);
  CHECK(d[0] == at(ctx, 3.0));
  CHECK(d[1] == at(ctx, 4.0));
  CHECK(d[2] == at(ctx, 2.0));
  const auto d7 = eval_derivatives(parse("x^7-1"), at(ctx, 1.0), 1);
  CHECK(d7[0].is_zero());
  CHECK(d7[1] == at(ctx, 7.0));
  CHECK_THROWS_AS(eval_derivatives(parse("x"), at(ctx, 1.0), 5), std::invalid_argument);
}

TEST_CASE("domain errors name the failing node") {
  PrecisionContext ctx(30);
  try {
    (void)eval_value(parse("1+1/x"), at(ctx, 0.0));
    FAIL("expected a domain error");
  } catch (const EvalDomainError& e) {
    CHECK(e.offset() == 2);  // the quotient node starts at its numerator
  }
  CHECK_THROWS_AS(eval_value(parse("ln(x)"), at(ctx, 0.0)), DomainError);
  CHECK_THROWS_AS(eval_jet<5>(parse("sqrt(x)"), at(ctx, 0.0)), DomainError);
}

TEST_CASE("f4 derivative at its root against central differences") {
  PrecisionContext ctx(50);
  const Problem p = builtin("f4", ctx);
  const BigComplex r = *p.known_root;
  const auto d = eval_derivatives(p.expr, r, 1);
  CHECK(d[0].abs() < ctx.noise_floor());
  // f'(x) = 4x^3 - (2 pi / x^3) cos(pi / x^2); at sqrt(2), cos(pi/2) = 0.
  CHECK(rel_err(d[1], at(ctx, 8.0 * std::sqrt(2.0))) < 1e-14);
  const BigComplex h(ctx, ctx.power_of_ten(-16), BigReal(0));
  const BigComplex fd =
      (eval_value(p.expr, r + h) - eval_value(p.expr, r - h)) / (h * 2.0);
  CHECK(rel_err(d[1], fd) < 1e-25);
}

TEST_CASE("jet derivatives agree with central differences on every builtin") {
  const unsigned digits = 60;
  PrecisionContext ctx(digits);
  const BigComplex h(ctx, ctx.power_of_ten(-static_cast<long>(digits) / 3), BigReal(0));
  std::mt19937_64 rng(5);
  for (const auto& name : builtin_names()) {
    const Problem p = builtin(name, ctx);
    for (int n = 0; n < 100; ++n) {
      // The transcendental problems are sampled near the real axis, away from x = 0.
      BigComplex x = name[0] == 'f' ? test::random_complex(rng, ctx, 0.5, 2.0)
                                    : test::random_complex(rng, ctx, -2.5, 2.5);
      if (name[0] == 'f') x = BigComplex(ctx, x.re(), x.im() / 8);
      const auto d = eval_derivatives(p.expr, x, 1);
      const BigComplex fd = (eval_value(p.expr, x + h) - eval_value(p.expr, x - h)) / (h * 2.0);
      INFO(name << " at " << x.to_string());
      CHECK(rel_err(d[1], fd) < 1e-18);
    }
  }
}

TEST_CASE("builtin problems") {
  PrecisionContext ctx(60);
  const Problem f1 = builtin("f1", ctx);
  CHECK(f1.name == "f1");
  CHECK(f1.known_root->is_zero());
  CHECK(*f1.initial_guess == BigComplex(ctx, ctx.parse("0.35"), BigReal(0)));
  const Problem f4 = builtin("f4", ctx);
  CHECK(rel_err(*f4.known_root, BigComplex(ctx, boost::multiprecision::sqrt(BigReal(2, 60)),
                                           BigReal(0))) < 1e-55);
  CHECK(*f4.initial_guess == at(ctx, 1.5));
  const Problem p4 = builtin("p4", ctx);
  REQUIRE(p4.known_roots.size() == 6);
  const BigComplex expected[] = {at(ctx, 1), at(ctx, 0, 1), at(ctx, -1), at(ctx, 0, -1),
                                 at(ctx, -1, 1), at(ctx, 1, -1)};
  for (std::size_t k = 0; k < 6; ++k) CHECK(p4.known_roots[k] == expected[k]);
  try {
    (void)builtin("f9", ctx);
    FAIL("expected unknown builtin");
  } catch (const UnknownBuiltinError& e) {
    CHECK(std::string(e.what()).find("p6") != std::string::npos);
  }
}

TEST_CASE("known roots are zeros and the f roots satisfy the residual bound") {
  PrecisionContext ctx(200);
  for (const char* name : {"f1", "f2", "f3", "f4"}) {
    const Problem p = builtin(name, ctx);
    INFO(name);
    CHECK(eval_value(p.expr, *p.known_root).abs() <= ctx.noise_floor());
  }
}

TEST_CASE("polynomial roots are simple zeros in double precision") {
  PrecisionContext ctx(30);
  for (const char* name : {"p1", "p2", "p3", "p4", "p5", "p6"}) {
    const Problem p = builtin(name, ctx);
    const ExprFunction<Complex> f(p.expr);
    for (const auto& r : p.known_roots) {
      const auto [v, d] = f.value_and_derivative(to_complex_double(r));
      INFO(name << " root " << r.to_string());
      CHECK(std::abs(v) < 1e-12);
      CHECK(std::abs(d) > 1e-3);
    }
  }
  // p6 roots: 10^(-1/5) e^(2k pi i/5) then 10^(1/5) e^(i pi (2k+1)/5).
  const Problem p6 = builtin("p6", ctx);
  REQUIRE(p6.known_roots.size() == 10);
  CHECK(std::abs(to_complex_double(p6.known_roots[0]) - Complex(std::pow(10.0, -0.2), 0)) < 1e-14);
  CHECK(std::abs(to_complex_double(p6.known_roots[5]) -
                 std::polar(std::pow(10.0, 0.2), std::acos(-1.0) / 5)) < 1e-14);
}

TEST_CASE("custom problems") {
  PrecisionContext ctx(30);
  const Problem p = custom_problem("x^3-2", std::nullopt, at(ctx, 1.0));
  CHECK(p.name == "expr");
  CHECK_FALSE(p.known_root);
  CHECK(p.initial_guess.has_value());
  CHECK_THROWS_AS(custom_problem("x^", std::nullopt, std::nullopt), SyntaxError);
}
