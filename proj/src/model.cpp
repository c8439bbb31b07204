#include "quasidiff/model.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace quasidiff {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double sgn(double x) { return (x > 0.0) - (x < 0.0); }

template <class Get>
double companion_impl(const Get& x, const Sequence& p, Index delta, Index n) {
  return x(n) + p(n) * x(n - delta);
}

// Chain values at n and n + 1 (t_{n+1} is needed for the residual).
template <class Get>
std::array<ChainValues, 2> chain_pair(const EquationSpec& eq, const Get& x, Index n, bool need_next) {
  const int zc = need_next ? 5 : 4;
  std::array<double, 5> z{};
  for (int k = 0; k < zc; ++k) z[k] = companion_impl(x, eq.p, eq.delta, n + k);
  std::array<double, 4> y{};
  for (int k = 0; k + 1 < zc; ++k) y[k] = eq.c(n + k) * spow(z[k + 1] - z[k], eq.gamma);
  std::array<double, 3> w{};
  for (int k = 0; k + 2 < zc; ++k) w[k] = eq.b(n + k) * spow(y[k + 1] - y[k], eq.beta);
  std::array<double, 2> t{};
  for (int k = 0; k + 3 < zc; ++k) t[k] = eq.a(n + k) * spow(w[k + 1] - w[k], eq.alpha);
  return {ChainValues{z[0], y[0], w[0], t[0]}, ChainValues{z[1], y[1], w[1], t[1]}};
}

template <class Get>
Residual residual_impl(const EquationSpec& eq, const Get& x, Index n) {
  const auto chain = chain_pair(eq, x, n, true);
  Residual r;
  r.t_now = chain[0].t;
  r.t_next = chain[1].t;
  r.forcing = eq.d(n) * eq.f(x(n - eq.tau));
  r.value = (r.t_next - r.t_now) + r.forcing;
  r.scale = std::max({std::abs(r.t_next), std::abs(r.t_now), std::abs(r.forcing)});
  return r;
}

}  // namespace

Nonlinearity Nonlinearity::odd_power(double kappa, OddRatio lambda) { return Nonlinearity(OddPower{kappa, lambda}); }

Nonlinearity Nonlinearity::signum(double kappa) { return Nonlinearity(Signum{kappa}); }

Nonlinearity Nonlinearity::custom(std::function<double(double)> f, std::function<double(double)> inverse) {
  if (!f) throw SpecError("custom nonlinearity needs an evaluator");
  return Nonlinearity(Custom{std::move(f), std::move(inverse)});
}

double Nonlinearity::operator()(double x) const {
  return std::visit(overloaded{
                        [&](const OddPower& o) { return o.kappa * spow(x, o.lambda); },
                        [&](const Signum& s) { return s.kappa * sgn(x); },
                        [&](const Custom& c) { return c.f(x); },
                    },
                    v_);
}

double Nonlinearity::inverse(double y) const {
  return std::visit(overloaded{
                        [&](const OddPower& o) -> double {
                          if (o.kappa == 0.0) throw DomainError("odd-power nonlinearity with zero coefficient is not invertible");
                          return spow_inverse(y / o.kappa, o.lambda);
                        },
                        [&](const Signum&) -> double { throw DomainError("signum nonlinearity is not invertible"); },
                        [&](const Custom& c) -> double {
                          if (!c.inverse) throw DomainError("custom nonlinearity has no inverse evaluator");
                          return c.inverse(y);
                        },
                    },
                    v_);
}

bool Nonlinearity::invertible() const {
  return std::visit(overloaded{
                        [](const OddPower& o) { return o.kappa != 0.0; },
                        [](const Signum&) { return false; },
                        [](const Custom& c) { return static_cast<bool>(c.inverse); },
                    },
                    v_);
}

bool Nonlinearity::sign_condition() const {
  return std::visit(overloaded{
                        [](const OddPower& o) { return o.kappa > 0.0; },
                        [](const Signum& s) { return s.kappa > 0.0; },
                        [](const Custom& c) {
                          for (int e = -12; e <= 12; ++e) {
                            const double x = std::pow(10.0, e / 2.0);
                            if (!(x * c.f(x) > 0.0) || !(-x * c.f(-x) > 0.0)) return false;
                          }
                          return true;
                        },
                    },
                    v_);
}

std::optional<bool> Nonlinearity::continuous() const {
  return std::visit(overloaded{
                        [](const OddPower&) -> std::optional<bool> { return true; },
                        [](const Signum& s) -> std::optional<bool> { return s.kappa == 0.0; },
                        [](const Custom&) -> std::optional<bool> { return std::nullopt; },
                    },
                    v_);
}

void EquationSpec::validate(Index sample) const {
  if (tau == critical_tau()) {
    throw SpecError("tau = min{-4, delta-4} = " + std::to_string(tau) + " is excluded");
  }
  const Index lower = std::max<Index>({1, delta, tau});
  if (n0 < lower) {
    throw SpecError("n0 = " + std::to_string(n0) + " must be at least max{1, delta, tau} = " + std::to_string(lower));
  }
  const Index count = std::max<Index>(256, sample);
  double d_sign = 0.0;
  for (Index n = n0; n < n0 + count; ++n) {
    try {
      if (!(a(n) > 0.0)) throw SpecError("coefficient a must be positive", n);
      if (!(b(n) > 0.0)) throw SpecError("coefficient b must be positive", n);
      if (!(c(n) > 0.0)) throw SpecError("coefficient c must be positive", n);
      const double dn = d(n);
      const double s = sgn(dn);
      if (s == 0.0) throw SpecError("coefficient d vanishes", n);
      if (d_sign == 0.0) d_sign = s;
      if (s != d_sign) throw SpecError("coefficient d changes sign", n);
    } catch (const DomainError& e) {
      // Tables that end before the sample horizon are checked as far as they go.
      if (n > n0) break;
      throw SpecError(std::string("coefficient not evaluable at n0: ") + e.what());
    }
  }
}

double IndexedWindow::at(Index n) const {
  if (!contains(n)) {
    throw DomainError("index outside window [" + std::to_string(first) + ", " + std::to_string(last()) + "]", n);
  }
  return values[static_cast<std::size_t>(n - first)];
}

double companion(const IndexedWindow& x, const Sequence& p, Index delta, Index n) {
  return companion_impl([&](Index k) { return x.at(k); }, p, delta, n);
}

double companion(const Evaluator& x, const Sequence& p, Index delta, Index n) {
  return companion_impl(x, p, delta, n);
}

ChainValues quasidifference_chain(const EquationSpec& eq, const IndexedWindow& x, Index n) {
  return chain_pair(eq, [&](Index k) { return x.at(k); }, n, false)[0];
}

ChainValues quasidifference_chain(const EquationSpec& eq, const Evaluator& x, Index n) {
  return chain_pair(eq, x, n, false)[0];
}

std::pair<ChainValues, ChainValues> chain_at_and_next(const EquationSpec& eq, const Evaluator& x, Index n) {
  const auto chain = chain_pair(eq, x, n, true);
  return {chain[0], chain[1]};
}

Residual residual_terms(const EquationSpec& eq, const Evaluator& x, Index n) { return residual_impl(eq, x, n); }

Residual residual_terms(const EquationSpec& eq, const IndexedWindow& x, Index n) {
  return residual_impl(eq, [&](Index k) { return x.at(k); }, n);
}

double residual(const EquationSpec& eq, const Evaluator& x, Index n) { return residual_impl(eq, x, n).value; }

double reciprocal_root(double coefficient, OddRatio e, Index n, const char* name) {
  if (!(coefficient > 0.0)) {
    throw DomainError(std::string("coefficient ") + name + " must be positive", n);
  }
  return 1.0 / spow(coefficient, e.reciprocal());
}

DerivedCoefficients::DerivedCoefficients(const EquationSpec& eq)
    : a_(eq.a), b_(eq.b), c_(eq.c), alpha_(eq.alpha), beta_(eq.beta), gamma_(eq.gamma) {}

double DerivedCoefficients::A(Index n) const { return reciprocal_root(a_(n), alpha_, n, "a"); }
double DerivedCoefficients::B(Index n) const { return reciprocal_root(b_(n), beta_, n, "b"); }
double DerivedCoefficients::C(Index n) const { return reciprocal_root(c_(n), gamma_, n, "c"); }

Sequence DerivedCoefficients::A_sequence() const {
  return Sequence::constant(1.0) / Sequence::raise(a_, alpha_.reciprocal());
}
Sequence DerivedCoefficients::B_sequence() const {
  return Sequence::constant(1.0) / Sequence::raise(b_, beta_.reciprocal());
}
Sequence DerivedCoefficients::C_sequence() const {
  return Sequence::constant(1.0) / Sequence::raise(c_, gamma_.reciprocal());
}

DerivedCoefficients derive_coefficients(const EquationSpec& eq) { return DerivedCoefficients(eq); }

}  // namespace quasidiff
