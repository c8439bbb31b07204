#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "quasidiff/model.hpp"

namespace quasidiff {

/// One of the four worked equations with its known closed-form solution
/// x_n = kappa * rho^n.
struct BundledExample {
  std::string name;
  std::string summary;
  EquationSpec equation;
  double kappa;
  double rho;
  /// Number of indices verified by default, starting at n0.
  Index verify_horizon;

  double solution(Index n) const;
  Evaluator evaluator() const;
};

/// Parameters left free by the worked examples.
struct ExampleParameters {
  std::optional<OddRatio> beta;
  std::optional<Index> lambda;
  std::optional<Index> tau;
};

std::vector<std::string> bundled_names();

/// Throws SpecError for an unknown name or an inadmissible parameter.
BundledExample bundled_example(std::string_view name, const ExampleParameters& params = {});

/// Delta^2 ( Delta^2 (x_n + 2^-n x_{n-2 lambda}) )^beta + d_n sgn(x_{n-tau}) = 0, tau odd.
/// Solution (-1)^n 2^n.
BundledExample example_sign_forcing(OddRatio beta = {}, Index lambda = 1, Index tau = 3);

/// Delta^2 ( Delta^2 (x_n + 3^-n x_{n-2 lambda}) )^beta + d_n x_{n-tau} = 0, tau odd.
/// Solution (-1)^n.
BundledExample example_linear_forcing(OddRatio beta = {}, Index lambda = 1, Index tau = 1);

/// Delta(n Delta^3 (x_n + x_{n-2}/4)) + (1 - n) x_{n+3} = 0. Solution -2^-n.
BundledExample example_decaying();

/// Delta(n Delta^3 (x_n + x_{n-2}/4)) + 10(2n + 1) x_{n+3} = 0. Solution (-1)^n / 10.
BundledExample example_oscillating();

}  // namespace quasidiff
