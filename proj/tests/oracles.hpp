#pragma once

// Reference computations written straight from the definitions. They share no
// code with the library beyond the EquationSpec data they read.

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "quasidiff/model.hpp"

namespace oracle {

using quasidiff::Index;

// Real branch of x^(p/q) for odd p, q: q-th root through exp/log, then an
// integer power by repeated multiplication.
inline double odd_power(double x, std::int64_t p, std::int64_t q) {
  if (x == 0.0) return 0.0;
  const double mag = std::exp(std::log(std::fabs(x)) / static_cast<double>(q));
  double r = 1.0;
  for (std::int64_t i = 0; i < p; ++i) r *= mag;
  return x < 0 ? -r : r;
}

inline double odd_power(double x, const quasidiff::OddRatio& e) {
  return odd_power(x, e.numerator(), e.denominator());
}

struct Chain {
  double z, y, w, t;
};

// z, y, w, t at n by direct substitution, one level at a time.
inline Chain chain(const quasidiff::EquationSpec& eq, const std::function<double(Index)>& x, Index n) {
  auto z = [&](Index k) { return x(k) + eq.p(k) * x(k - eq.delta); };
  auto y = [&](Index k) { return eq.c(k) * odd_power(z(k + 1) - z(k), eq.gamma); };
  auto w = [&](Index k) { return eq.b(k) * odd_power(y(k + 1) - y(k), eq.beta); };
  auto t = [&](Index k) { return eq.a(k) * odd_power(w(k + 1) - w(k), eq.alpha); };
  return {z(n), y(n), w(n), t(n)};
}

inline double residual(const quasidiff::EquationSpec& eq, const std::function<double(Index)>& x, Index n) {
  return chain(eq, x, n + 1).t - chain(eq, x, n).t + eq.d(n) * eq.f(x(n - eq.tau));
}

// Binomial fourth difference.
inline double fourth_difference(const std::function<double(Index)>& x, Index n) {
  return x(n + 4) - 4 * x(n + 3) + 6 * x(n + 2) - 4 * x(n + 1) + x(n);
}

inline double rel_err(double got, double want) {
  const double s = std::max(std::fabs(want), 1e-300);
  return std::fabs(got - want) / s;
}

// Log-uniform positive value in [lo, hi].
inline double log_uniform(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
  return std::exp(u(rng));
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

}  // namespace oracle
