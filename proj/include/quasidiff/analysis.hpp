#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "quasidiff/model.hpp"
#include "quasidiff/solver.hpp"

namespace quasidiff {

// ---------------------------------------------------------------------------
// Trajectory classification

enum class VerdictKind { nonoscillatory_positive, nonoscillatory_negative, oscillatory, quickly_oscillatory, undetermined };

/// Which index parity carries the positive terms of a quickly oscillatory x.
enum class Parity { even, odd };

const char* to_string(VerdictKind k);
const char* to_string(Parity p);

/// x_n = (-1)^n q_n on [first, first + q.size()).
struct QuickDecomposition {
  Index first = 0;
  std::vector<double> q;
  Parity positive_terms = Parity::even;
};

struct Verdict {
  VerdictKind kind = VerdictKind::undetermined;
  /// Finite-window evidence only; never a proof of a limit.
  bool tends_to_zero = false;
  std::optional<QuickDecomposition> quick;
  /// Index range the sign decision was made on.
  Index decided_first = 0;
  Index decided_last = -1;
  bool degenerate_zero = false;
  std::vector<std::string> notes;
};

/// Decides on the trailing ceil(suffix_fraction * len) values. Requires len >= 8.
Verdict classify(const Trajectory& traj, const ToleranceProfile& tol = {});
Verdict classify(const IndexedWindow& x, const ToleranceProfile& tol = {});

/// Max |v| over each third of the window is non-increasing and the last third's
/// max is below eps_limit times the first third's.
bool tends_to_zero_evidence(std::span<const double> v, const ToleranceProfile& tol);

// ---------------------------------------------------------------------------
// Hypothesis reports

enum class ConditionStatus { holds_on_sample, fails_at_index, heuristic_evidence, not_checkable };

const char* to_string(ConditionStatus s);

struct ConditionEntry {
  std::string id;
  ConditionStatus status = ConditionStatus::holds_on_sample;
  /// Whether the entry supports the hypothesis. Heuristic entries may go either way.
  bool satisfied = true;
  std::optional<Index> index;
  std::string detail;
  Index sample_first = 0;
  Index sample_last = 0;
};

struct ConditionReport {
  std::string subject;
  std::vector<ConditionEntry> entries;
  /// Quick-oscillation reports: parity class the statement excludes.
  std::optional<Parity> excluded_positive_terms;
  /// Quick-oscillation reports: true when d < 0 (mirror statement).
  bool mirror_branch = false;
  /// Quick-oscillation reports: the sign chain of the proof actually conflicts
  /// for candidates of the excluded class (see contradiction_certificate).
  std::optional<bool> sign_chain_confirms;

  bool hypotheses_hold() const;
  const ConditionEntry* first_failure() const;
  const ConditionEntry* find(std::string_view id) const;
  std::string overall() const;
};

/// p_n >= 0, d one-signed, delta even, x f(x) > 0; reports the excluded parity class.
ConditionReport check_theorem1(const EquationSpec& eq, Index horizon = 256);

// ---------------------------------------------------------------------------
// Sign-conflict certificate behind the nonexistence of quickly oscillatory solutions

struct ContradictionCertificate {
  Parity positive_terms = Parity::even;
  /// Certified n range; left/right/conflict are indexed from `first`.
  Index first = 0;
  Index last = -1;
  /// s, r over [first, last + 3]; l over [first, last + 2]; g over [first, last + 1].
  std::vector<double> s, r, l, g;
  /// (-1)^{n+1} (g_{n+1} + g_n) with the parity sign applied.
  std::vector<double> left;
  /// d_n f(x_{n-tau})
  std::vector<double> right;
  std::vector<bool> conflict;
  bool chains_positive = false;
  bool valid = false;

  std::size_t conflict_count() const;
};

/// Candidate x_n = sigma (-1)^n q_n with sigma = +1 for positive even terms, -1 for
/// positive odd terms. Refused (DomainError) unless p >= 0, d one-signed, delta even,
/// x f(x) > 0 hold and q is strictly positive.
ContradictionCertificate contradiction_certificate(const EquationSpec& eq, const IndexedWindow& q, Parity positive_terms);

// ---------------------------------------------------------------------------
// Limits and bounds of the companion relation

/// lim x_n = l / (1 + p) for bounded x with z -> l, p_n -> p, |p| != 1.
double lemma1_limit(double p_limit, double z_limit, double eps = 1e-12);

struct BoundCertificate {
  double L = 0.0;
  double P = 0.0;
  double K = 0.0;
  double bound = 0.0;
  Index first = 0;
  Index last = -1;
  double max_abs_x = 0.0;
  /// Reconstructed x on [first, last].
  std::vector<double> x;
  bool valid = false;
};

/// Reconstructs x_n = z_n - p_n x_{n-delta} for n in [n1, z.last()] from x on
/// [n1 - delta, n1 - 1] (`startup`), and certifies max |x_n| <= K + L/(1-P) with
/// P = (1 + |p_limit|)/2 and K the max of |x| over [n1, n1 + delta + 1].
/// L defaults to max |z| on the range; a supplied L must dominate it.
BoundCertificate lemma2_bound(const IndexedWindow& z, const Sequence& p, double p_limit, Index delta, Index n1,
                              const IndexedWindow& startup, std::optional<double> L = std::nullopt);

// ---------------------------------------------------------------------------
// Series divergence heuristics

enum class SeriesStatus { heuristic_divergent, heuristic_convergent, undetermined };

const char* to_string(SeriesStatus s);

inline constexpr double kDefaultDivergenceThreshold = 10.0;

struct SeriesEvidence {
  SeriesStatus status = SeriesStatus::undetermined;
  Index first = 0;
  Index last = -1;
  double partial_sum = 0.0;
  bool threshold_exceeded = false;
  /// Increment over the last and the middle log-third of the range.
  double tail_increment = 0.0;
  double middle_increment = 0.0;
  double ratio = 0.0;
};

/// Sums s over [from, from + horizon). Divergent when a partial sum exceeds the
/// threshold in magnitude or the last log-third contributes at least half as much
/// as the middle one; convergent when it contributes at most a quarter or the tail
/// is below eps_limit relative to the sum.
SeriesEvidence series_evidence(const Sequence& s, Index from, Index horizon,
                               double threshold = kDefaultDivergenceThreshold, double eps_limit = 1e-8);

SeriesStatus check_series_divergence(const Sequence& s, Index horizon, double threshold = kDefaultDivergenceThreshold);

/// (lp), (e1), (abc), continuity of f, (zs), d one-signed.
ConditionReport check_theorem2(const EquationSpec& eq, Index horizon = 100000,
                               double threshold = kDefaultDivergenceThreshold, const ToleranceProfile& tol = {});

// ---------------------------------------------------------------------------
// Component sign structure of (x, y, w, t)

enum class SignCase { all_one_signed, y_one_signed_x_to_zero, neither, undetermined };
enum class SignState { positive, negative, zero, mixed, undetermined };
enum class Monotonicity { nondecreasing, nonincreasing, constant, none };

const char* to_string(SignCase c);
const char* to_string(SignState s);
const char* to_string(Monotonicity m);

struct ComponentProfile {
  std::string name;
  SignState sign = SignState::undetermined;
  Monotonicity monotone = Monotonicity::none;
  bool tends_to_zero = false;
  double max_abs = 0.0;
};

struct SignProfile {
  SignCase sign_case = SignCase::undetermined;
  /// x, y, w, t in that order.
  std::vector<ComponentProfile> components;
  /// Components identically zero on the decided suffix.
  std::vector<std::string> degenerate_zero;
  /// max |x| on the window (boundedness is observed, not established).
  double observed_max_abs_x = 0.0;
  Index decided_first = 0;
  Index decided_last = -1;
};

/// Requires a materialized chain over at least 16 indices.
SignProfile component_sign_profile(const Trajectory& traj, const ToleranceProfile& tol = {});

}  // namespace quasidiff
