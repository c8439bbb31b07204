#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "quasidiff/errors.hpp"
#include "quasidiff/numerics.hpp"
#include "quasidiff/sequence.hpp"

namespace quasidiff {

/// x evaluated at an integer index.
using Evaluator = std::function<double(Index)>;

/// The nonlinearity f of the forcing term d_n f(x_{n-tau}).
class Nonlinearity {
 public:
  struct OddPower {
    double kappa;
    OddRatio lambda;
  };
  struct Signum {
    double kappa;
  };
  struct Custom {
    std::function<double(double)> f;
    std::function<double(double)> inverse;  // empty when not invertible
  };
  using Variant = std::variant<OddPower, Signum, Custom>;

  /// kappa * spow(x, lambda)
  static Nonlinearity odd_power(double kappa, OddRatio lambda = {});
  /// kappa * sgn(x)
  static Nonlinearity signum(double kappa = 1.0);
  static Nonlinearity custom(std::function<double(double)> f, std::function<double(double)> inverse = {});

  double operator()(double x) const;
  /// Throws DomainError when no inverse is available.
  double inverse(double y) const;

  bool invertible() const;
  /// x f(x) > 0 for x != 0. Sampled on a log-spaced grid for custom evaluators.
  bool sign_condition() const;
  /// Known for the built-in families only.
  std::optional<bool> continuous() const;

  const Variant& variant() const { return v_; }

 private:
  explicit Nonlinearity(Variant v) : v_(std::move(v)) {}
  Variant v_;
};

/// Full description of
///   Delta{ a_n [Delta( b_n (Delta(c_n (Delta z_n)^gamma))^beta )]^alpha } + d_n f(x_{n-tau}) = 0,
///   z_n = x_n + p_n x_{n-delta}.
struct EquationSpec {
  std::string name;
  OddRatio alpha;
  OddRatio beta;
  OddRatio gamma;
  Index tau = 0;
  Index delta = 0;
  Sequence p = Sequence::constant(0.0);
  Sequence d = Sequence::constant(1.0);
  Sequence a = Sequence::constant(1.0);
  Sequence b = Sequence::constant(1.0);
  Sequence c = Sequence::constant(1.0);
  Nonlinearity f = Nonlinearity::odd_power(1.0);
  Index n0 = 1;

  /// min{-4, delta - 4}: tau may not equal it; above it the recursion runs forward.
  Index critical_tau() const { return std::min<Index>(-4, delta - 4); }

  /// Checks the structural constraints and samples a, b, c > 0 and d one-signed
  /// on [n0, n0 + max(256, sample)). Throws SpecError.
  void validate(Index sample = 256) const;
};

/// Contiguous run of x values starting at index `first`.
struct IndexedWindow {
  Index first = 0;
  std::vector<double> values;

  Index last() const { return first + static_cast<Index>(values.size()) - 1; }
  bool contains(Index n) const { return n >= first && n <= last(); }
  /// Throws DomainError when n is outside the window.
  double at(Index n) const;
};

/// z_n = x_n + p_n x_{n-delta}
double companion(const IndexedWindow& x, const Sequence& p, Index delta, Index n);
double companion(const Evaluator& x, const Sequence& p, Index delta, Index n);

struct ChainValues {
  double z;
  double y;
  double w;
  double t;
};

/// (z_n, y_n, w_n, t_n) with y = c (Delta z)^gamma, w = b (Delta y)^beta, t = a (Delta w)^alpha.
/// Consumes x on [n - max(delta,0), n + 3 + max(-delta,0)].
ChainValues quasidifference_chain(const EquationSpec& eq, const IndexedWindow& x, Index n);
ChainValues quasidifference_chain(const EquationSpec& eq, const Evaluator& x, Index n);

/// Chain values at n and n + 1; consumes x up to n + 4 + max(-delta,0).
std::pair<ChainValues, ChainValues> chain_at_and_next(const EquationSpec& eq, const Evaluator& x, Index n);

/// Delta t_n + d_n f(x_{n-tau}) together with the magnitude it is measured against.
struct Residual {
  double value = 0.0;
  /// max(|t_{n+1}|, |t_n|, |d_n f(x_{n-tau})|)
  double scale = 0.0;
  double t_next = 0.0;
  double t_now = 0.0;
  double forcing = 0.0;

  double relative() const { return scale > 0.0 ? std::abs(value) / scale : std::abs(value); }
};

Residual residual_terms(const EquationSpec& eq, const Evaluator& x, Index n);
Residual residual_terms(const EquationSpec& eq, const IndexedWindow& x, Index n);
double residual(const EquationSpec& eq, const Evaluator& x, Index n);

/// A = a^(-1/alpha), B = b^(-1/beta), C = c^(-1/gamma).
class DerivedCoefficients {
 public:
  explicit DerivedCoefficients(const EquationSpec& eq);

  double A(Index n) const;
  double B(Index n) const;
  double C(Index n) const;

  /// The three as standalone sequences, for series checks.
  Sequence A_sequence() const;
  Sequence B_sequence() const;
  Sequence C_sequence() const;

 private:
  Sequence a_, b_, c_;
  OddRatio alpha_, beta_, gamma_;
};

DerivedCoefficients derive_coefficients(const EquationSpec& eq);

/// coefficient^(-1/e) for a strictly positive coefficient; throws DomainError otherwise.
double reciprocal_root(double coefficient, OddRatio e, Index n, const char* name);

}  // namespace quasidiff
