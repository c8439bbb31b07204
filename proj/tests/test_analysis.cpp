#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "quasidiff/analysis.hpp"
#include "quasidiff/bundled.hpp"

using namespace quasidiff;
using S = Sequence;

namespace {

IndexedWindow window(Index first, Index last, const Evaluator& f) {
  IndexedWindow w{first, {}};
  for (Index n = first; n <= last; ++n) w.values.push_back(f(n));
  return w;
}

IndexedWindow random_q(std::mt19937_64& rng, Index first, Index len) {
  IndexedWindow q{first, {}};
  for (Index i = 0; i < len; ++i) q.values.push_back(oracle::log_uniform(rng, 1e-3, 1e3));
  return q;
}

// Even delta, d > 0, f identity, everything else from the built-in families.
EquationSpec parity_equation(Index tau, double d_sign) {
  EquationSpec eq;
  eq.delta = 2;
  eq.tau = tau;
  eq.p = S::constant(0.3);
  eq.a = S::affine(0.1, 1);
  eq.beta = OddRatio(3);
  eq.d = S::constant(d_sign * 2.0);
  eq.n0 = std::max<Index>({1, eq.delta, eq.tau});
  return eq;
}

}  // namespace

TEST_SUITE("analysis") {

TEST_CASE("classify worked trajectories") {
  const auto osc = classify(window(1, 200, [](Index n) { return n % 2 ? -0.1 : 0.1; }));
  CHECK(osc.kind == VerdictKind::quickly_oscillatory);
  CHECK_FALSE(osc.tends_to_zero);
  REQUIRE(osc.quick);
  CHECK(osc.quick->positive_terms == Parity::even);
  for (double q : osc.quick->q) CHECK(q == 0.1);

  const auto dec = classify(window(0, 60, [](Index n) { return -std::ldexp(1.0, static_cast<int>(-n)); }));
  CHECK(dec.kind == VerdictKind::nonoscillatory_negative);
  CHECK(dec.tends_to_zero);

  const auto one = classify(window(1, 100, [](Index) { return 1.0; }));
  CHECK(one.kind == VerdictKind::nonoscillatory_positive);
  CHECK_FALSE(one.tends_to_zero);

  const auto sine = classify(window(1, 200, [](Index n) { return std::sin(static_cast<double>(n)); }));
  CHECK(sine.kind == VerdictKind::oscillatory);
  CHECK_FALSE(sine.quick);

  const auto zero = classify(window(1, 50, [](Index) { return 0.0; }));
  CHECK(zero.kind == VerdictKind::undetermined);
  CHECK(zero.degenerate_zero);

  CHECK_THROWS_AS(classify(window(1, 5, [](Index) { return 1.0; })), DomainError);
}

TEST_CASE("sign census of sin(n) agrees with a direct scan") {
  const auto w = window(1, 400, [](Index n) { return std::sin(static_cast<double>(n)); });
  const auto v = classify(w);
  int changes = 0, same = 0;
  for (Index n = v.decided_first + 1; n <= v.decided_last; ++n) {
    (w.at(n) * w.at(n - 1) < 0 ? changes : same)++;
  }
  CHECK(changes > 0);
  CHECK(same > 0);
  CHECK(v.kind == VerdictKind::oscillatory);
}

TEST_CASE("quick decomposition reconstructs the suffix") {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 200; ++i) {
    const Index first = static_cast<Index>(rng() % 7);
    const double sigma = rng() % 2 ? 1.0 : -1.0;
    const auto q = random_q(rng, first, 8 + static_cast<Index>(rng() % 100));
    IndexedWindow x{first, {}};
    for (Index n = first; n <= q.last(); ++n) x.values.push_back(sigma * (n % 2 ? -1.0 : 1.0) * q.at(n));
    const auto v = classify(x);
    REQUIRE(v.kind == VerdictKind::quickly_oscillatory);
    REQUIRE(v.quick);
    CHECK(v.quick->positive_terms == (sigma > 0 ? Parity::even : Parity::odd));
    for (std::size_t k = 0; k < v.quick->q.size(); ++k) {
      const Index n = v.quick->first + static_cast<Index>(k);
      CHECK((n % 2 ? -1.0 : 1.0) * v.quick->q[k] == x.at(n));
    }
  }
}

TEST_CASE("tends-to-zero evidence") {
  ToleranceProfile tol;
  std::vector<double> v;
  for (int n = 0; n < 90; ++n) v.push_back(std::pow(0.5, n));
  CHECK(tends_to_zero_evidence(v, tol));
  std::vector<double> slow;
  for (int n = 1; n < 90; ++n) slow.push_back(1.0 / n);
  CHECK_FALSE(tends_to_zero_evidence(slow, tol));
}

TEST_CASE("quick-oscillation exclusion hypotheses") {
  const auto ex = example_sign_forcing();
  const auto rep = check_theorem1(ex.equation);
  CHECK(rep.hypotheses_hold());
  REQUIRE(rep.excluded_positive_terms);
  CHECK(*rep.excluded_positive_terms == Parity::odd);
  CHECK_FALSE(rep.mirror_branch);

  auto odd_delta = ex.equation;
  odd_delta.delta = 3;
  odd_delta.n0 = 3;
  const auto r3 = check_theorem1(odd_delta);
  REQUIRE(r3.find("delta-even"));
  CHECK(r3.find("delta-even")->status == ConditionStatus::fails_at_index);
  CHECK_FALSE(r3.hypotheses_hold());
  CHECK(r3.overall().find("delta-even") != std::string::npos);

  auto neg = ex.equation;
  neg.d = S::constant(-1.0) * neg.d;
  const auto rn = check_theorem1(neg);
  CHECK(rn.hypotheses_hold());
  CHECK(rn.mirror_branch);
  CHECK(*rn.excluded_positive_terms == Parity::even);

  auto negp = ex.equation;
  negp.p = S::constant(-0.1);
  CHECK(check_theorem1(negp).find("p-nonnegative")->status == ConditionStatus::fails_at_index);
}

// The sign chain conflicts exactly when tau is even (for d > 0), whichever
// parity carries the positive terms. These tests pin that observed behaviour.
TEST_CASE("certificate conflicts for even tau, both parities") {
  std::mt19937_64 rng(32);
  for (const double d_sign : {1.0, -1.0}) {
    const auto eq = parity_equation(2, d_sign);
    for (int i = 0; i < 30; ++i) {
      const auto q = random_q(rng, 0, 60);
      for (const auto par : {Parity::even, Parity::odd}) {
        const auto c = contradiction_certificate(eq, q, par);
        CHECK(c.chains_positive);
        if (d_sign > 0) {
          CHECK(c.valid);
          CHECK(c.conflict_count() == c.conflict.size());
        } else {
          CHECK_FALSE(c.valid);
          CHECK(c.conflict_count() == 0);
        }
      }
    }
  }
}

TEST_CASE("certificate never conflicts for odd tau with d > 0") {
  std::mt19937_64 rng(33);
  const auto ex = example_sign_forcing();
  IndexedWindow ones{0, std::vector<double>(60, 1.0)};
  for (const auto par : {Parity::even, Parity::odd}) {
    const auto c = contradiction_certificate(ex.equation, ones, par);
    CHECK_FALSE(c.valid);
    CHECK(c.conflict_count() == 0);
  }
  for (int i = 0; i < 30; ++i) {
    const auto q = random_q(rng, 0, 60);
    CHECK(contradiction_certificate(ex.equation, q, Parity::odd).conflict_count() == 0);
    CHECK(contradiction_certificate(ex.equation, q, Parity::even).conflict_count() == 0);
  }
  CHECK(check_theorem1(ex.equation).sign_chain_confirms == false);
  CHECK(check_theorem1(parity_equation(2, 1.0)).sign_chain_confirms == true);
}

TEST_CASE("negated closed form solves the sign-forcing equation with positive odd terms") {
  // The equation is odd in x, so -x is a solution whenever x is.
  const auto ex = example_sign_forcing();
  const Evaluator neg = [&](Index n) { return -ex.solution(n); };
  for (Index n = ex.equation.n0; n <= ex.equation.n0 + 40; ++n) {
    CHECK(residual_terms(ex.equation, neg, n).relative() <= 1e-12);
  }
  const auto v = classify(window(ex.equation.n0, ex.equation.n0 + 40, neg));
  REQUIRE(v.quick);
  CHECK(v.quick->positive_terms == Parity::odd);
  CHECK(*check_theorem1(ex.equation).excluded_positive_terms == Parity::odd);
}

TEST_CASE("certificate reduction with p = 0 and unit coefficients") {
  EquationSpec eq;
  eq.delta = 0;
  eq.tau = 2;
  eq.n0 = 2;
  std::mt19937_64 rng(34);
  for (int i = 0; i < 20; ++i) {
    const auto q = random_q(rng, 0, 40);
    const auto c = contradiction_certificate(eq, q, Parity::even);
    CHECK(c.valid);
    // s collapses to q_{n+1} + q_n, r to s, l and g to sums of neighbouring terms.
    for (std::size_t k = 0; k < c.l.size(); ++k) {
      const Index n = c.first + static_cast<Index>(k);
      CHECK(c.s[k] == q.at(n + 1) + q.at(n));
      CHECK(c.r[k] == c.s[k]);
      CHECK(c.l[k] == c.s[k + 1] + c.s[k]);
      if (k < c.g.size()) CHECK(c.g[k] == c.l[k + 1] + c.l[k]);
    }
  }
}

TEST_CASE("certificate preconditions") {
  const auto ex = example_sign_forcing();
  IndexedWindow bad{0, std::vector<double>(40, 1.0)};
  bad.values[10] = 0.0;
  CHECK_THROWS_AS(contradiction_certificate(ex.equation, bad, Parity::odd), DomainError);
  auto odd_delta = ex.equation;
  odd_delta.delta = 3;
  odd_delta.n0 = 3;
  CHECK_THROWS_AS(contradiction_certificate(odd_delta, IndexedWindow{0, std::vector<double>(40, 1.0)}, Parity::odd),
                  DomainError);
}

TEST_CASE("limit of x from the companion limit") {
  CHECK(lemma1_limit(0, 5) == 5);
  CHECK(lemma1_limit(0.5, 3) == 2);
  CHECK(lemma1_limit(-0.5, 1) == 2);
  CHECK_THROWS_AS(lemma1_limit(1.0, 1), DomainError);
  CHECK_THROWS_AS(lemma1_limit(-1.0, 1), DomainError);
  std::mt19937_64 rng(35);
  for (int i = 0; i < 500; ++i) {
    const double l = oracle::uniform(rng, -100, 100);
    CHECK(lemma1_limit(0, l) == l);
    const double p = oracle::uniform(rng, -0.95, 0.95), h = 1e-7;
    CHECK(std::fabs(lemma1_limit(p + h, l) - lemma1_limit(p, l)) <= 1e-4 * (1 + std::fabs(l)));
  }
}

TEST_CASE("bound certificate examples") {
  IndexedWindow z{1, std::vector<double>(100, 1.0)};
  SUBCASE("p = 0") {
    IndexedWindow zz{1, {}};
    for (int i = 0; i < 100; ++i) zz.values.push_back(std::sin(i));
    const auto c = lemma2_bound(zz, S::constant(0), 0, 1, 2, IndexedWindow{1, {0.5}});
    CHECK(c.valid);
    CHECK(c.P == 0.5);
    for (std::size_t k = 0; k < c.x.size(); ++k) CHECK(c.x[k] == zz.at(c.first + static_cast<Index>(k)));
    CHECK(c.max_abs_x <= c.L);
    CHECK(c.L <= c.K + c.L);
  }
  SUBCASE("p = 1/2, delta 1") {
    const auto c = lemma2_bound(z, S::constant(0.5), 0.5, 1, 2, IndexedWindow{1, {1.0}});
    CHECK(c.P == 0.75);
    CHECK(c.L == 1.0);
    CHECK(c.bound == doctest::Approx(c.K + 4.0));
    CHECK(c.valid);
    // direct recursion x_n = 1 - x_{n-1}/2 from x_1 = 1
    double x = 1.0;
    for (std::size_t k = 0; k < c.x.size(); ++k) {
      x = 1.0 - 0.5 * x;
      CHECK(c.x[k] == doctest::Approx(x).epsilon(1e-14));
      CHECK(std::fabs(x) <= c.bound);
    }
  }
  SUBCASE("p beyond P is rejected") {
    CHECK_THROWS_AS(lemma2_bound(z, S::constant(0.95), 0.5, 1, 2, IndexedWindow{1, {1.0}}), DomainError);
  }
  SUBCASE("supplied L must dominate z") {
    CHECK_THROWS_AS(lemma2_bound(z, S::constant(0.5), 0.5, 1, 2, IndexedWindow{1, {1.0}}, 0.5), DomainError);
  }
}

TEST_CASE("bound certificate random instances") {
  std::mt19937_64 rng(36);
  for (int i = 0; i < 100; ++i) {
    const Index delta = 3;
    const double L = 2.0;
    const auto p = S::constant(0.6) + S::geometric(oracle::uniform(rng, -0.19, 0.19), oracle::uniform(rng, 0.5, 0.99));
    IndexedWindow z{0, {}};
    for (int k = 0; k < 500; ++k) z.values.push_back(oracle::uniform(rng, -L, L));
    IndexedWindow start{0, {}};
    for (Index k = 0; k < delta; ++k) start.values.push_back(oracle::uniform(rng, -3, 3));
    const auto c = lemma2_bound(z, p, 0.6, delta, delta, start, L);
    CHECK(c.valid);
    // direct recursion oracle
    std::vector<double> x(start.values);
    double mx = 0;
    for (Index n = delta; n <= z.last(); ++n) {
      x.push_back(z.at(n) - p(n) * x[static_cast<std::size_t>(n - delta)]);
      mx = std::max(mx, std::fabs(x.back()));
    }
    CHECK(mx == doctest::Approx(c.max_abs_x).epsilon(1e-12));
    CHECK(mx <= c.K + L / (1 - c.P));
  }
}

TEST_CASE("series heuristics") {
  CHECK(check_series_divergence(S::power(1, -1), 1000000) == SeriesStatus::heuristic_divergent);
  CHECK(check_series_divergence(S::power(1, -2), 100000) == SeriesStatus::heuristic_convergent);
  CHECK(check_series_divergence(S::constant(1), 1000) == SeriesStatus::heuristic_divergent);
  const auto e = series_evidence(S::power(1, -2), 1, 100000);
  CHECK(e.partial_sum == doctest::Approx(M_PI * M_PI / 6).epsilon(1e-4));
  CHECK(e.ratio < 0.25);
  const auto h = series_evidence(S::power(1, -1), 1, 1000000);
  CHECK(h.threshold_exceeded);
  CHECK(h.partial_sum > 14.0);
}

TEST_CASE("series statuses are mutually exclusive with the threshold") {
  std::mt19937_64 rng(37);
  for (int i = 0; i < 100; ++i) {
    const double sign = rng() % 2 ? 1.0 : -1.0;
    const auto s = S::power(sign * oracle::uniform(rng, 0.1, 5.0), oracle::uniform(rng, -3.0, 0.5));
    const auto e = series_evidence(s, 1, 20000);
    if (e.threshold_exceeded) CHECK(e.status == SeriesStatus::heuristic_divergent);
    if (e.status == SeriesStatus::heuristic_convergent) CHECK(std::fabs(e.partial_sum) <= kDefaultDivergenceThreshold);
  }
}

TEST_CASE("almost-oscillation hypotheses") {
  const auto ex = example_oscillating();
  const auto rep = check_theorem2(ex.equation);
  CHECK(rep.hypotheses_hold());
  for (const auto* id : {"lp", "e1", "f-continuous", "d-one-signed", "abc-A", "abc-B", "abc-C", "zs"}) {
    REQUIRE(rep.find(id));
    CHECK(rep.find(id)->satisfied);
  }
  CHECK(rep.find("abc-A")->status == ConditionStatus::heuristic_evidence);
  CHECK(rep.find("zs")->status == ConditionStatus::heuristic_evidence);

  auto big_p = ex.equation;
  big_p.p = S::constant(2.0);
  const auto rp = check_theorem2(big_p);
  CHECK_FALSE(rp.find("lp")->satisfied);
  CHECK_FALSE(rp.hypotheses_hold());

  auto thin_d = ex.equation;
  thin_d.d = S::power(1, -2);
  const auto rd = check_theorem2(thin_d);
  CHECK_FALSE(rd.find("zs")->satisfied);
  CHECK(rd.find("zs")->detail.find("convergent") != std::string::npos);
  CHECK_FALSE(rd.hypotheses_hold());
  CHECK(rd.overall().find("not confirmed") != std::string::npos);

  auto sgn = ex.equation;
  sgn.f = Nonlinearity::signum();
  CHECK_FALSE(check_theorem2(sgn, 1000).find("f-continuous")->satisfied);
}

TEST_CASE("component sign profiles") {
  SUBCASE("decaying example") {
    const auto ex = example_decaying();
    const auto traj = sample_trajectory(ex.equation, ex.evaluator(), ex.equation.n0, ex.equation.n0 + 60);
    const auto p = component_sign_profile(traj);
    CHECK(p.sign_case == SignCase::y_one_signed_x_to_zero);
  }
  SUBCASE("constant solution of the plain fourth difference") {
    EquationSpec eq;
    eq.tau = 1;
    eq.d = S::constant(0.0);
    const auto traj = sample_trajectory(eq, [](Index) { return 1.0; }, 1, 60);
    const auto p = component_sign_profile(traj);
    CHECK(p.sign_case == SignCase::all_one_signed);
    CHECK(p.degenerate_zero == std::vector<std::string>{"y", "w", "t"});
  }
  SUBCASE("oscillating example") {
    const auto ex = example_oscillating();
    const auto traj = sample_trajectory(ex.equation, ex.evaluator(), ex.equation.n0, ex.equation.n0 + 200);
    CHECK(component_sign_profile(traj).sign_case == SignCase::neither);
  }
  SUBCASE("too short") {
    const auto ex = example_oscillating();
    const auto traj = sample_trajectory(ex.equation, ex.evaluator(), 2, 10);
    CHECK_THROWS_AS(component_sign_profile(traj), DomainError);
  }
}

}
