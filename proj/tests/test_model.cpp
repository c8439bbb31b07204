#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "quasidiff/bundled.hpp"
#include "quasidiff/model.hpp"

using namespace quasidiff;
using S = Sequence;

TEST_SUITE("model") {

TEST_CASE("sequence families") {
  CHECK(S::geometric(1, 0.5)(3) == 0.125);
  CHECK(S::affine(2, 1)(0) == 1.0);
  CHECK(S::table({5, 7}, 0, OutOfRange::hold_last)(9) == 7.0);
  CHECK(S::power(3, 2)(4) == 48.0);
  CHECK(S::constant(-2.5)(1000) == -2.5);
  CHECK((S::constant(1) / S::affine(1, 0))(4) == 0.25);
  CHECK(S::raise(S::constant(-8), OddRatio(1, 3))(0) == doctest::Approx(-2.0));
}

TEST_CASE("sequence domain errors") {
  const auto t = S::table({1, 2, 3}, 5);
  CHECK(t(7) == 3.0);
  CHECK_THROWS_AS(t(8), DomainError);
  CHECK_THROWS_AS(t(4), DomainError);
  CHECK(S::power(1, -1).start() == 1);
  CHECK_THROWS_AS(S::power(1, -1)(0), DomainError);
  CHECK((t + S::power(1, -1)).start() == 5);
}

TEST_CASE("companion") {
  const IndexedWindow x{1, {1, 2, 3, 4}};
  CHECK(companion(x, S::constant(0.5), 2, 3) == 3.5);
  CHECK(companion(x, S::constant(0.0), 2, 4) == 4.0);
  const Evaluator q = [](Index n) { return std::pow(-2.0, static_cast<double>(n)); };
  CHECK(companion(q, S::geometric(1, 0.5), 2, 4) == 16.25);
  CHECK_THROWS_AS(companion(x, S::constant(1.0), 2, 2), DomainError);
}

TEST_CASE("companion is linear in x") {
  std::mt19937_64 rng(5);
  const auto p = S::geometric(0.7, 0.9);
  for (int i = 0; i < 200; ++i) {
    IndexedWindow u{0, {}}, v{0, {}}, comb{0, {}};
    const double ca = oracle::uniform(rng, -3, 3), cb = oracle::uniform(rng, -3, 3);
    for (int k = 0; k < 6; ++k) {
      u.values.push_back(oracle::uniform(rng, -5, 5));
      v.values.push_back(oracle::uniform(rng, -5, 5));
      comb.values.push_back(ca * u.values.back() + cb * v.values.back());
    }
    const Index n = 3;
    const double lhs = companion(comb, p, 2, n);
    const double rhs = ca * companion(u, p, 2, n) + cb * companion(v, p, 2, n);
    CHECK(std::fabs(lhs - rhs) <= 1e-12 * (1 + std::fabs(rhs)));
  }
}

TEST_CASE("zero solution") {
  EquationSpec eq;
  eq.delta = 2;
  eq.tau = 1;
  eq.alpha = OddRatio(3);
  eq.gamma = OddRatio(5, 3);
  eq.p = S::constant(0.3);
  eq.f = Nonlinearity::odd_power(2.0, OddRatio(3));
  const Evaluator zero = [](Index) { return 0.0; };
  const auto ch = quasidifference_chain(eq, zero, 10);
  CHECK(ch.z == 0.0);
  CHECK(ch.y == 0.0);
  CHECK(ch.w == 0.0);
  CHECK(ch.t == 0.0);
  CHECK(residual(eq, zero, 10) == 0.0);
}

TEST_CASE("chain of the linear-forcing example against its closed forms") {
  for (const auto& beta : {OddRatio(1), OddRatio(5, 3)}) {
    const auto ex = example_linear_forcing(beta);
    const auto x = ex.evaluator();
    const double b = beta.value();
    // z = (-1)^n (1 + 3^-n), so D^2 z = (-1)^n g_n with g_n = 4 + 16/9 3^-n.
    auto g = [](Index n) { return 4.0 + 16.0 / 9.0 * std::pow(3.0, -static_cast<double>(n)); };
    auto sgn = [](Index n) { return n % 2 == 0 ? 1.0 : -1.0; };
    for (Index n = ex.equation.n0; n < 40; ++n) {
      const auto ch = quasidifference_chain(ex.equation, x, n);
      const double z = sgn(n) * (1.0 + std::pow(3.0, -static_cast<double>(n)));
      const double y = -sgn(n) * (2.0 + 4.0 / 3.0 * std::pow(3.0, -static_cast<double>(n)));
      const double w = sgn(n) * std::pow(g(n), b);
      const double t = -sgn(n) * (std::pow(g(n + 1), b) + std::pow(g(n), b));
      CHECK(oracle::rel_err(ch.z, z) <= 1e-12);
      CHECK(oracle::rel_err(ch.y, y) <= 1e-12);
      CHECK(oracle::rel_err(ch.w, w) <= 1e-12);
      CHECK(oracle::rel_err(ch.t, t) <= 1e-12);
      const auto r = residual_terms(ex.equation, x, n);
      CHECK(r.relative() <= 1e-9);
    }
  }
}

TEST_CASE("bundled closed forms satisfy their equations") {
  SUBCASE("sign forcing, beta 1") {
    const auto ex = example_sign_forcing();
    for (Index n = ex.equation.n0; n <= ex.equation.n0 + 40; ++n) {
      CHECK(residual_terms(ex.equation, ex.evaluator(), n).relative() <= 1e-9);
    }
  }
  SUBCASE("sign forcing, beta 3") {
    const auto ex = example_sign_forcing(OddRatio(3));
    for (Index n = ex.equation.n0; n <= ex.equation.n0 + 40; ++n) {
      CHECK(residual_terms(ex.equation, ex.evaluator(), n).relative() <= 1e-8);
    }
  }
  SUBCASE("decaying and oscillating") {
    for (const auto& ex : {example_decaying(), example_oscillating()}) {
      for (Index n = ex.equation.n0; n < ex.equation.n0 + ex.verify_horizon; ++n) {
        CHECK(residual_terms(ex.equation, ex.evaluator(), n).relative() <= 1e-9);
      }
    }
  }
}

TEST_CASE("residual matches chain differences and the direct reference") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 100; ++i) {
    EquationSpec eq;
    eq.delta = static_cast<Index>(rng() % 4);
    eq.tau = static_cast<Index>(rng() % 6) - 2;
    eq.alpha = OddRatio(i % 3 == 0 ? 3 : 1);
    eq.beta = OddRatio(i % 3 == 1 ? 5 : 1, i % 3 == 1 ? 3 : 1);
    eq.gamma = OddRatio(i % 2 ? 1 : 3);
    eq.p = S::constant(oracle::uniform(rng, -0.5, 0.5));
    eq.a = S::affine(oracle::uniform(rng, 0.1, 1.0), 1.0);
    eq.b = S::geometric(1.0, oracle::uniform(rng, 0.9, 1.1));
    eq.c = S::constant(oracle::uniform(rng, 0.5, 2.0));
    eq.d = S::constant(oracle::uniform(rng, 0.5, 2.0));
    const double k = oracle::uniform(rng, -1, 1), om = oracle::uniform(rng, 0.2, 2.0);
    const Evaluator x = [=](Index n) { return std::sin(om * static_cast<double>(n)) + k; };
    const Index n = 10 + static_cast<Index>(rng() % 30);
    const auto [now, next] = chain_at_and_next(eq, x, n);
    const double expect = next.t - now.t + eq.d(n) * eq.f(x(n - eq.tau));
    CHECK(residual(eq, x, n) == expect);
    const double ref = oracle::residual(eq, x, n);
    const double scale = residual_terms(eq, x, n).scale;
    CHECK(std::fabs(residual(eq, x, n) - ref) <= 1e-9 * scale);
  }
}

TEST_CASE("plain differences reduction") {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 100; ++i) {
    EquationSpec eq;
    eq.tau = static_cast<Index>(rng() % 5) - 1;
    eq.d = S::affine(oracle::uniform(rng, 0.1, 1.0), 1.0);
    std::vector<double> vals(80);
    for (auto& v : vals) v = oracle::uniform(rng, -10, 10);
    const Evaluator x = [&](Index n) { return vals.at(static_cast<std::size_t>(n)); };
    for (Index n = 5; n < 60; n += 7) {
      const double want = oracle::fourth_difference(x, n) + eq.d(n) * x(n - eq.tau);
      const double got = residual(eq, x, n);
      CHECK(std::fabs(got - want) <= 1e-12 * std::max(1.0, residual_terms(eq, x, n).scale));
    }
  }
}

TEST_CASE("derived coefficients") {
  EquationSpec eq;
  CHECK(derive_coefficients(eq).A(5) == 1.0);
  eq.a = S::affine(1, 0);
  CHECK(derive_coefficients(eq).A(4) == 0.25);
  eq.a = S::constant(8);
  eq.alpha = OddRatio(3);
  CHECK(derive_coefficients(eq).A(1) == doctest::Approx(0.5).epsilon(1e-15));

  std::mt19937_64 rng(9);
  EquationSpec r;
  r.alpha = OddRatio(5, 3);
  r.beta = OddRatio(3);
  r.gamma = OddRatio(7, 5);
  r.a = S::affine(0.5, 2);
  r.b = S::geometric(3, 1.01);
  r.c = S::power(2, 0.5);
  const auto dc = derive_coefficients(r);
  for (Index n = 1; n < 300; n += 3) {
    CHECK(oracle::rel_err(spow(dc.A(n), r.alpha) * r.a(n), 1.0) <= 1e-12);
    CHECK(oracle::rel_err(spow(dc.B(n), r.beta) * r.b(n), 1.0) <= 1e-12);
    CHECK(oracle::rel_err(spow(dc.C(n), r.gamma) * r.c(n), 1.0) <= 1e-12);
    CHECK(oracle::rel_err(dc.A_sequence()(n), dc.A(n)) <= 1e-14);
  }
  CHECK_THROWS_AS(reciprocal_root(-1.0, OddRatio(1), 3, "a"), DomainError);
}

TEST_CASE("validation") {
  EquationSpec eq;
  eq.delta = 2;
  eq.n0 = 2;
  eq.tau = eq.critical_tau();
  CHECK(eq.tau == -4);
  CHECK_THROWS_AS(eq.validate(), SpecError);
  eq.tau = 1;
  CHECK_NOTHROW(eq.validate());
  eq.n0 = 1;
  CHECK_THROWS_AS(eq.validate(), SpecError);
  eq.n0 = 2;
  eq.a = S::affine(-1, 10);
  CHECK_THROWS_AS(eq.validate(), SpecError);
  eq.a = S::constant(1);
  eq.d = S::affine(1, -20);
  CHECK_THROWS_AS(eq.validate(), SpecError);
  eq.d = S::table({1, 2, 3}, 2);
  CHECK_NOTHROW(eq.validate());
  EquationSpec far;
  far.delta = 7;
  far.n0 = 7;
  CHECK(far.critical_tau() == -4);
}

TEST_CASE("nonlinearity families") {
  const auto f = Nonlinearity::odd_power(2.0, OddRatio(3));
  CHECK(f(-2.0) == -16.0);
  CHECK(f.inverse(-16.0) == doctest::Approx(-2.0));
  CHECK(f.sign_condition());
  const auto s = Nonlinearity::signum();
  CHECK(s(-3.0) == -1.0);
  CHECK(s(0.0) == 0.0);
  CHECK_FALSE(s.invertible());
  CHECK_THROWS_AS(s.inverse(1.0), DomainError);
  CHECK(s.continuous() == false);
  const auto bad = Nonlinearity::custom([](double v) { return -v; });
  CHECK_FALSE(bad.sign_condition());
  CHECK_FALSE(bad.continuous().has_value());
}

}
