#pragma once

#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "quasidiff/errors.hpp"
#include "quasidiff/numerics.hpp"

namespace quasidiff {

enum class OutOfRange { error, hold_last };
enum class CombineOp { add, sub, mul, div, pow };

/// An integer-indexed real sequence given by a small closed-form family,
/// a table, or an arithmetic combination of other sequences.
///
/// Immutable; copies share the underlying node.
class Sequence {
 public:
  struct Constant;
  struct Geometric;
  struct Affine;
  struct Power;
  struct Table;
  struct Combination;
  struct Node;

  /// kappa
  static Sequence constant(double kappa);
  /// kappa * rho^n
  static Sequence geometric(double kappa, double rho);
  /// kappa * n + mu
  static Sequence affine(double kappa, double mu);
  /// kappa * n^sigma
  static Sequence power(double kappa, double sigma);
  static Sequence table(std::vector<double> values, Index start, OutOfRange rule = OutOfRange::error);
  /// Left fold of op over the operands (at least one; pow takes exactly one).
  static Sequence combine(CombineOp op, std::vector<Sequence> operands,
                          std::optional<OddRatio> exponent = std::nullopt);
  /// spow(base_n, e)
  static Sequence raise(Sequence base, OddRatio e);

  double operator()(Index n) const;

  /// Smallest index at which the sequence is defined.
  Index start() const;

  const Node& node() const { return *node_; }

 private:
  explicit Sequence(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

Sequence operator+(Sequence a, Sequence b);
Sequence operator-(Sequence a, Sequence b);
Sequence operator*(Sequence a, Sequence b);
Sequence operator/(Sequence a, Sequence b);

struct Sequence::Constant {
  double value;
};
struct Sequence::Geometric {
  double kappa;
  double rho;
};
struct Sequence::Affine {
  double kappa;
  double mu;
};
struct Sequence::Power {
  double kappa;
  double sigma;
};
struct Sequence::Table {
  std::vector<double> values;
  Index start;
  OutOfRange rule;
};
struct Sequence::Combination {
  CombineOp op;
  std::vector<Sequence> operands;
  std::optional<OddRatio> exponent;
};
struct Sequence::Node : std::variant<Constant, Geometric, Affine, Power, Table, Combination> {
  using variant::variant;
};

}  // namespace quasidiff
