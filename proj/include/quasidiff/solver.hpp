#pragma once

#include <optional>
#include <string>
#include <vector>

#include "quasidiff/model.hpp"

namespace quasidiff {

enum class SolveMode { forward, inverse };
enum class Provenance { solved_forward, solved_inverse, sampled };

const char* to_string(SolveMode m);
const char* to_string(Provenance p);

/// Forward when tau > min{-4, delta-4}: the forcing index n - tau never exceeds n + 3.
/// Inverse otherwise: x_{n-tau} is recovered through f^{-1}.
SolveMode solving_mode(const EquationSpec& eq);

/// Initial x history. Derived quantities (y, w, t) are never seeded directly.
struct SeedWindow {
  Index first = 0;
  std::vector<double> values;
};

/// Index range a seed must cover for the equation's solving mode.
struct SeedRange {
  Index first;
  Index last;
};
SeedRange seed_range(const EquationSpec& eq);

/// Seed filled from a closed form.
SeedWindow seed_from(const EquationSpec& eq, const Evaluator& x);

struct Truncation {
  Index index;  // first index that could not be produced
  std::string reason;
};

/// Finite window of x together with the materialized chain (z, y, w, t).
struct Trajectory {
  IndexedWindow x;
  /// Chain arrays share the index origin chain_first; empty when not materialized.
  Index chain_first = 0;
  std::vector<double> z, y, w, t;
  Provenance provenance = Provenance::sampled;
  std::optional<Truncation> truncation;
  std::vector<std::string> warnings;

  Index first() const { return x.first; }
  Index last() const { return x.last(); }
  std::size_t size() const { return x.values.size(); }
  bool has_chain() const { return !t.empty(); }
  Index chain_last() const { return chain_first + static_cast<Index>(t.size()) - 1; }
};

/// Runs the recursion for n = n0 .. n0 + horizon - 1, producing x up to n0 + horizon + 3.
/// Non-finite values truncate the run and set `truncation`.
Trajectory solve_forward(const EquationSpec& eq, const SeedWindow& seed, Index horizon,
                         const ToleranceProfile& tol = {});

/// Recovers x_{n-tau} = f^{-1}(-Delta t_n / d_n) for n = n0 .. n0 + horizon - 1.
Trajectory solve_inverse(const EquationSpec& eq, const SeedWindow& seed, Index horizon,
                         const ToleranceProfile& tol = {});

/// Dispatches on solving_mode(eq).
Trajectory solve(const EquationSpec& eq, const SeedWindow& seed, Index horizon, const ToleranceProfile& tol = {});

/// Wraps a closed-form candidate on [first, last]; the chain is materialized
/// over the whole range using the evaluator outside it.
Trajectory sample_trajectory(const EquationSpec& eq, const Evaluator& x, Index first, Index last);

/// Fills the chain arrays over every index whose inputs lie inside the x window.
void materialize_chain(const EquationSpec& eq, Trajectory& traj);

struct ResidualSummary {
  Index first = 0;
  Index last = -1;
  double max_relative = 0.0;
  Index worst_index = 0;
  std::vector<double> relative;  // indexed from `first`
};

/// Residuals at every interior index of the x window.
ResidualSummary trajectory_residuals(const EquationSpec& eq, const Trajectory& traj);

/// Residuals of a closed form on [first, last].
ResidualSummary evaluator_residuals(const EquationSpec& eq, const Evaluator& x, Index first, Index last);

}  // namespace quasidiff
