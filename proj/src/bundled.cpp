#include "quasidiff/bundled.hpp"

#include <cmath>

namespace quasidiff {

namespace {

using S = Sequence;

// (kappa * rho^n + offset)^beta
Sequence shifted_power(double kappa, double rho, Sequence offset, OddRatio beta) {
  return S::raise(S::geometric(kappa, rho) + std::move(offset), beta);
}

Index default_n0(Index delta, Index tau) { return std::max<Index>({1, delta, tau}); }

void require_positive(Index v, const char* what) {
  if (v < 1) throw SpecError(std::string(what) + " must be a positive integer");
}

void require_odd(Index v, const char* what) {
  if (v % 2 == 0) throw SpecError(std::string(what) + " must be odd");
}

}  // namespace

double BundledExample::solution(Index n) const { return kappa * std::pow(rho, static_cast<double>(n)); }

Evaluator BundledExample::evaluator() const {
  return [k = kappa, r = rho](Index n) { return k * std::pow(r, static_cast<double>(n)); };
}

std::vector<std::string> bundled_names() { return {"example-1", "example-2", "example-3", "example-4"}; }

BundledExample example_sign_forcing(OddRatio beta, Index lambda, Index tau) {
  require_positive(lambda, "lambda");
  require_positive(tau, "tau");
  require_odd(tau, "tau");
  EquationSpec eq;
  eq.name = "example-1";
  eq.beta = beta;
  eq.delta = 2 * lambda;
  eq.tau = tau;
  eq.p = S::geometric(1.0, 0.5);
  // d_n = W_{n+2} + 2 W_{n+1} + W_n,  W_n = (9 * 2^n + 2^(2 - 2 lambda))^beta
  const Sequence offset = S::constant(std::ldexp(1.0, static_cast<int>(2 - 2 * lambda)));
  eq.d = S::combine(CombineOp::add, {shifted_power(36.0, 2.0, offset, beta),
                                     S::constant(2.0) * shifted_power(18.0, 2.0, offset, beta),
                                     shifted_power(9.0, 2.0, offset, beta)});
  eq.f = Nonlinearity::signum(1.0);
  eq.n0 = default_n0(eq.delta, eq.tau);
  return {"example-1", "sign forcing, quickly oscillatory solution (-1)^n 2^n", std::move(eq), 1.0, -2.0, 40};
}

BundledExample example_linear_forcing(OddRatio beta, Index lambda, Index tau) {
  require_positive(lambda, "lambda");
  require_odd(tau, "tau");
  EquationSpec eq;
  eq.name = "example-2";
  eq.beta = beta;
  eq.delta = 2 * lambda;
  eq.tau = tau;
  eq.p = S::constant(1.0) / S::geometric(1.0, 3.0);
  // d_n = V_{n+2} + 2 V_{n+1} + V_n,  V_n = (4 + 16 / 3^(n+2))^beta
  auto term = [&](double scale) {
    return S::raise(S::constant(4.0) + S::constant(16.0) / S::geometric(scale, 3.0), beta);
  };
  eq.d = S::combine(CombineOp::add, {term(81.0), S::constant(2.0) * term(27.0), term(9.0)});
  eq.f = Nonlinearity::odd_power(1.0);
  eq.n0 = default_n0(eq.delta, eq.tau);
  return {"example-2", "linear forcing, quickly oscillatory solution (-1)^n", std::move(eq), 1.0, -1.0, 200};
}

BundledExample example_decaying() {
  EquationSpec eq;
  eq.name = "example-3";
  eq.delta = 2;
  eq.tau = -3;
  eq.p = S::constant(0.25);
  eq.a = S::affine(1.0, 0.0);
  eq.d = S::affine(-1.0, 1.0);
  eq.f = Nonlinearity::odd_power(1.0);
  eq.n0 = 2;
  return {"example-3", "nonoscillatory solution -2^-n tending to zero", std::move(eq), -1.0, 0.5, 60};
}

BundledExample example_oscillating() {
  EquationSpec eq;
  eq.name = "example-4";
  eq.delta = 2;
  eq.tau = -3;
  eq.p = S::constant(0.25);
  eq.a = S::affine(1.0, 0.0);
  eq.d = S::affine(20.0, 10.0);
  eq.f = Nonlinearity::odd_power(1.0);
  eq.n0 = 2;
  return {"example-4", "oscillatory solution (-1)^n / 10", std::move(eq), 0.1, -1.0, 200};
}

BundledExample bundled_example(std::string_view name, const ExampleParameters& params) {
  const OddRatio beta = params.beta.value_or(OddRatio{});
  const Index lambda = params.lambda.value_or(1);
  if (name == "example-1") return example_sign_forcing(beta, lambda, params.tau.value_or(3));
  if (name == "example-2") return example_linear_forcing(beta, lambda, params.tau.value_or(1));
  if (params.beta || params.lambda || params.tau) {
    throw SpecError(std::string(name) + " has no free parameters");
  }
  if (name == "example-3") return example_decaying();
  if (name == "example-4") return example_oscillating();
  throw SpecError("unknown example '" + std::string(name) + "'");
}

}  // namespace quasidiff
