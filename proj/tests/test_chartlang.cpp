#include <doctest.h>

#include <array>
#include <cmath>
#include <random>

#include "biharm/chartlang.hpp"
#include "biharm/jet.hpp"
#include "random_expr.hpp"

using namespace biharm;
using namespace biharm::chartlang;

namespace {

Jet2<double> jet_at(const Expr& e, double u1, double u2) {
  const std::array<Jet2<double>, 2> u{Jet2<double>::variable(u1, 0, 2), Jet2<double>::variable(u2, 1, 2)};
  return eval_jet(e, u);
}

ChartError::Kind parse_error_kind(std::string_view text, int m = 2) {
  try {
    parse_expression(text, m);
  } catch (const ChartError& e) {
    return e.kind();
  }
  FAIL("expected a ChartError for '" << std::string(text) << "'");
  return ChartError::Kind::semantic;
}

}  // namespace

TEST_CASE("jet of a bilinear component") {
  const Expr e = parse_expression("u1*u2", 2);
  const auto j = jet_at(e, 3, 5);
  CHECK(j.value == 15.0);
  CHECK(j.grad(0) == 5.0);
  CHECK(j.grad(1) == 3.0);
  CHECK(j.hess(0, 0) == 0.0);
  CHECK(j.hess(0, 1) == 1.0);
  CHECK(j.hess(1, 0) == 1.0);
  CHECK(j.hess(1, 1) == 0.0);
}

TEST_CASE("jet of sinh at the origin") {
  const Expr e = parse_expression("sinh(u1)", 1);
  const std::array<Jet2<double>, 1> u{Jet2<double>::variable(0.0, 0, 1)};
  const auto j = eval_jet(e, u);
  CHECK(j.value == 0.0);
  CHECK(j.grad(0) == 1.0);
  CHECK(j.hess(0, 0) == 0.0);
}

TEST_CASE("cosh^2 - sinh^2 is constant, matching finite differences") {
  const Expr e = parse_expression("cosh(u1)^2 - sinh(u1)^2", 1);
  const double u0 = 0.7;
  const std::array<Jet2<double>, 1> u{Jet2<double>::variable(u0, 0, 1)};
  const auto j = eval_jet(e, u);
  CHECK(j.value == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(j.grad(0)) < 1e-13);
  CHECK(std::abs(j.hess(0, 0)) < 1e-12);
  const double h = 1e-5;
  const std::array<double, 1> up{u0 + h}, um{u0 - h};
  CHECK(std::abs((eval(e, up) - eval(e, um)) / (2 * h)) < 1e-6);
}

TEST_CASE("precedence: ^ over unary minus over * / over + -") {
  const std::array<double, 2> u{2.0, 3.0};
  CHECK(eval(parse_expression("-u1^2", 2), u) == -4.0);
  CHECK(eval(parse_expression("1 + 2*u2^2", 2), u) == 19.0);
  CHECK(eval(parse_expression("u2 - u1 - 1", 2), u) == 0.0);
  CHECK(eval(parse_expression("12/u1/u2", 2), u) == 2.0);
  CHECK(eval(parse_expression("u1^-1", 2), u) == 0.5);
  CHECK(eval(parse_expression("2*pi", 2), u) == doctest::Approx(2 * M_PI));
  CHECK(parse_expression("-u1^2", 2) == parse_expression("-(u1^2)", 2));
  CHECK(!(parse_expression("-u1^2", 2) == parse_expression("(-u1)^2", 2)));
}

TEST_CASE("diagnostics carry a kind and a location") {
  try {
    parse_chart("params m=1 space=R2_1\nx1 = u1 +\nx2 = 0\n");
    FAIL("no error");
  } catch (const ChartError& e) {
    CHECK(e.kind() == ChartError::Kind::parse);
    CHECK(e.location().line == 2);
    CHECK(e.location().column >= 9);
  }
  CHECK(parse_error_kind("u1 $ u2") == ChartError::Kind::lexer);
  CHECK(parse_error_kind("(u1 + u2") == ChartError::Kind::parse);
  CHECK(parse_error_kind("sin(u1, u2)") == ChartError::Kind::arity);
  CHECK(parse_error_kind("foo(u1)") == ChartError::Kind::unknown_symbol);
  CHECK(parse_error_kind("u3") == ChartError::Kind::unknown_symbol);
  CHECK(parse_error_kind("u1^0.5") == ChartError::Kind::parse);
}

TEST_CASE("chart programs") {
  const auto prog = parse_chart(
      "# slice\n"
      "params m=2 space=H3_1(1)\n"
      "x4 = 0.5\n"
      "x1 = sqrt(1-0.5^2)*u1\n"
      "x2 = sqrt(1-0.5^2)*u2\n"
      "x3 = sqrt(1-0.5^2)*sqrt(1 + u1^2 + u2^2)\n");
  CHECK(prog.param_count == 2);
  CHECK(prog.components.size() == 4);
  CHECK(prog.components[3].kind == Expr::Kind::number);
  CHECK(prog.components[0].kind == Expr::Kind::mul);
  CHECK(prog.components[0].args[0].kind == Expr::Kind::call);
  CHECK(prog.components[0].args[0].func == Func::sqrt);

  const auto sinh_prog = parse_chart("params m=1 space=R2_1\nx1 = sqrt(1-0.5^2)*sinh(u1)\nx2 = u1\n");
  CHECK(sinh_prog.components[0].args[1].func == Func::sinh);

  auto semantic = [](std::string_view src) {
    try {
      parse_chart(src);
    } catch (const ChartError& e) {
      return e.kind() == ChartError::Kind::semantic;
    }
    return false;
  };
  CHECK(semantic("params m=1 space=R2_1\nx1 = u1\nx1 = u1\n"));
  CHECK(semantic("params m=1 space=R2_1\nx1 = u1\n"));
  try {
    parse_chart("params m=1 space=R2_1\nx1 = u1\nx3 = u1\n");
    FAIL("no error");
  } catch (const ChartError& e) {
    CHECK(e.kind() == ChartError::Kind::unknown_symbol);
    CHECK(e.location().line == 3);
  }
}

TEST_CASE("evaluation domain errors are located") {
  const Expr e = parse_expression("1 + log(u1)", 1);
  const std::array<double, 1> bad{-1.0};
  try {
    eval(e, bad);
    FAIL("no error");
  } catch (const ChartError& err) {
    CHECK(err.kind() == ChartError::Kind::domain);
    CHECK(err.location().column == 5);
  }
  const std::array<double, 1> zero{0.0};
  CHECK_THROWS_AS(eval(parse_expression("1/u1", 1), zero), ChartError);
  CHECK_THROWS_AS(eval(parse_expression("sqrt(u1 - 1)", 1), zero), ChartError);
}

TEST_CASE("print then parse round-trips random expressions") {
  RandomExpr gen(11);
  for (int i = 0; i < 300; ++i) {
    const std::string src = gen(5);
    const Expr e = parse_expression(src, 2);
    CAPTURE(src);
    CHECK(parse_expression(print(e), 2) == e);
  }
}

TEST_CASE("jets match finite differences on random expressions") {
  RandomExpr gen(2024);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> box(-1.0, 1.0);
  const double h = 1e-5;
  for (int i = 0; i < 200; ++i) {
    const std::string src = gen();
    CAPTURE(src);
    const Expr e = parse_expression(src, 2);
    const double u1 = box(rng), u2 = box(rng);
    const auto j = jet_at(e, u1, u2);
    for (int k = 0; k < 2; ++k) {
      std::array<double, 2> p{u1, u2}, q{u1, u2};
      p[k] += h;
      q[k] -= h;
      const double fd = (eval(e, p) - eval(e, q)) / (2 * h);
      CHECK(std::abs(j.grad(k) - fd) <= 1e-6 * std::max(1.0, std::abs(fd)));
      const auto jp = jet_at(e, p[0], p[1]);
      const auto jq = jet_at(e, q[0], q[1]);
      for (int l = 0; l < 2; ++l) {
        const double fdh = (jp.grad(l) - jq.grad(l)) / (2 * h);
        CHECK(std::abs(j.hess(k, l) - fdh) <= 1e-6 * std::max(1.0, std::abs(fdh)));
      }
    }
    CHECK(j.hess(0, 1) == j.hess(1, 0));
  }
}

TEST_CASE("evaluation is deterministic") {
  RandomExpr gen(3);
  for (int i = 0; i < 50; ++i) {
    const Expr e = parse_expression(gen(), 2);
    const auto a = jet_at(e, 0.3, -0.2);
    const auto b = jet_at(e, 0.3, -0.2);
    CHECK(a.value == b.value);
    CHECK(a.grad == b.grad);
    CHECK(a.hess == b.hess);
  }
}

TEST_CASE("parsing is total on random input") {
  std::mt19937_64 rng(99);
  const std::string alphabet = "u12x=+-*/^() .,#\n\tsinhcoxpqrtlgpams=HRS_e0123456789$!@";
  RandomExpr gen(4);
  for (int i = 0; i < 3000; ++i) {
    std::string src;
    if (i % 2 == 0) {
      const int len = std::uniform_int_distribution<int>(0, 60)(rng);
      for (int k = 0; k < len; ++k) src += alphabet[std::uniform_int_distribution<std::size_t>(0, alphabet.size() - 1)(rng)];
    } else {
      src = "params m=2 space=H3_1(1)\nx1 = " + gen() + "\nx2 = u2\nx3 = 1\nx4 = 0\n";
      const int cuts = std::uniform_int_distribution<int>(0, 3)(rng);
      for (int k = 0; k < cuts && !src.empty(); ++k) {
        src.erase(std::uniform_int_distribution<std::size_t>(0, src.size() - 1)(rng), 1);
      }
    }
    bool ok = true;
    try {
      parse_chart(src);
    } catch (const ChartError&) {
    } catch (...) {
      ok = false;
    }
    CAPTURE(src);
    CHECK(ok);
  }
}
