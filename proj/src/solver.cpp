#include "quasidiff/solver.hpp"

#include <algorithm>
#include <cmath>

namespace quasidiff {

namespace {

Index lag_reach(const EquationSpec& eq) { return std::max<Index>(eq.delta, 0); }
Index lead_reach(const EquationSpec& eq) { return std::max<Index>(-eq.delta, 0); }

void check_seed(const SeedWindow& seed, const SeedRange& need) {
  const Index seed_last = seed.first + static_cast<Index>(seed.values.size()) - 1;
  if (seed.values.empty() || seed.first > need.first || seed_last < need.last) {
    throw DomainError("seed must cover indices [" + std::to_string(need.first) + ", " + std::to_string(need.last) +
                      "]");
  }
  for (std::size_t i = 0; i < seed.values.size(); ++i) {
    if (!std::isfinite(seed.values[i])) {
      throw DomainError("seed value is not finite", seed.first + static_cast<Index>(i));
    }
  }
}

// Seed restricted to exactly the required range.
std::vector<double> trimmed_seed(const SeedWindow& seed, const SeedRange& need) {
  const auto from = static_cast<std::size_t>(need.first - seed.first);
  const auto count = static_cast<std::size_t>(need.last - need.first + 1);
  return {seed.values.begin() + static_cast<std::ptrdiff_t>(from),
          seed.values.begin() + static_cast<std::ptrdiff_t>(from + count)};
}

class SignWatch {
 public:
  void observe(double dn, Index n, std::vector<std::string>& warnings) {
    const int s = (dn > 0.0) - (dn < 0.0);
    if (sign_ == 0) {
      sign_ = s;
    } else if (s != sign_ && !reported_) {
      warnings.push_back("coefficient d leaves its initial sign at n=" + std::to_string(n));
      reported_ = true;
    }
  }

 private:
  int sign_ = 0;
  bool reported_ = false;
};

}  // namespace

const char* to_string(SolveMode m) { return m == SolveMode::forward ? "forward" : "inverse"; }

const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::solved_forward: return "solved-forward";
    case Provenance::solved_inverse: return "solved-inverse";
    case Provenance::sampled: return "sampled-from-evaluator";
  }
  return "unknown";
}

SolveMode solving_mode(const EquationSpec& eq) {
  return eq.tau > eq.critical_tau() ? SolveMode::forward : SolveMode::inverse;
}

SeedRange seed_range(const EquationSpec& eq) {
  if (solving_mode(eq) == SolveMode::forward) {
    return {eq.n0 - std::max<Index>({eq.delta, eq.tau, 0}), eq.n0 + 3};
  }
  return {eq.n0 - lag_reach(eq), eq.n0 - eq.tau - 1};
}

SeedWindow seed_from(const EquationSpec& eq, const Evaluator& x) {
  const auto r = seed_range(eq);
  SeedWindow seed{r.first, {}};
  for (Index n = r.first; n <= r.last; ++n) seed.values.push_back(x(n));
  return seed;
}

Trajectory solve_forward(const EquationSpec& eq, const SeedWindow& seed, Index horizon, const ToleranceProfile& tol) {
  tol.validate();
  eq.validate(horizon);
  if (solving_mode(eq) != SolveMode::forward) {
    throw DomainError("forward solving requires tau > min{-4, delta-4}");
  }
  if (eq.delta < 0) {
    throw DomainError("forward solving does not support an advanced neutral term (delta < 0)");
  }
  if (horizon < 1) throw DomainError("horizon must be positive");
  const SeedRange need = seed_range(eq);
  check_seed(seed, need);

  Trajectory traj;
  traj.provenance = Provenance::solved_forward;
  traj.x.first = need.first;
  traj.x.values = trimmed_seed(seed, need);
  traj.x.values.reserve(traj.x.values.size() + static_cast<std::size_t>(horizon));

  const DerivedCoefficients coeff(eq);
  auto& xs = traj.x.values;
  const Index first = traj.x.first;
  auto x = [&](Index k) { return xs[static_cast<std::size_t>(k - first)]; };
  SignWatch d_watch;

  for (Index n = eq.n0; n < eq.n0 + horizon; ++n) {
    double z[4], y[3], w[2];
    for (int k = 0; k < 4; ++k) z[k] = x(n + k) + eq.p(n + k) * x(n + k - eq.delta);
    for (int k = 0; k < 3; ++k) y[k] = eq.c(n + k) * spow(z[k + 1] - z[k], eq.gamma);
    for (int k = 0; k < 2; ++k) w[k] = eq.b(n + k) * spow(y[k + 1] - y[k], eq.beta);
    const double t_now = eq.a(n) * spow(w[1] - w[0], eq.alpha);

    const double dn = eq.d(n);
    d_watch.observe(dn, n, traj.warnings);
    const double t_next = t_now - dn * eq.f(x(n - eq.tau));
    const double w_next = w[1] + coeff.A(n + 1) * spow_inverse(t_next, eq.alpha);
    const double y_next = y[2] + coeff.B(n + 2) * spow_inverse(w_next, eq.beta);
    const double z_next = z[3] + coeff.C(n + 3) * spow_inverse(y_next, eq.gamma);

    const Index target = n + 4;
    const double p_target = eq.p(target);
    double x_next;
    if (eq.delta == 0) {
      const double pivot = 1.0 + p_target;
      if (std::abs(pivot) <= tol.eps_sign) {
        throw NumericError("pivot 1 + p_n vanishes", target);
      }
      x_next = z_next / pivot;
    } else {
      x_next = z_next - p_target * x(target - eq.delta);
    }
    if (!std::isfinite(x_next)) {
      const bool nan = std::isnan(x_next);
      traj.truncation = Truncation{target, nan ? "non-finite value" : "overflow"};
      break;
    }
    xs.push_back(x_next);
  }
  materialize_chain(eq, traj);
  return traj;
}

Trajectory solve_inverse(const EquationSpec& eq, const SeedWindow& seed, Index horizon, const ToleranceProfile& tol) {
  tol.validate();
  eq.validate(horizon);
  if (solving_mode(eq) != SolveMode::inverse) {
    throw DomainError("inverse solving requires tau < min{-4, delta-4}");
  }
  if (!eq.f.invertible()) {
    throw DomainError("inverse solving requires an invertible nonlinearity");
  }
  if (horizon < 1) throw DomainError("horizon must be positive");
  const SeedRange need = seed_range(eq);
  check_seed(seed, need);

  Trajectory traj;
  traj.provenance = Provenance::solved_inverse;
  traj.x.first = need.first;
  traj.x.values = trimmed_seed(seed, need);
  auto& xs = traj.x.values;
  const Index first = traj.x.first;
  const Evaluator x = [&](Index k) { return xs[static_cast<std::size_t>(k - first)]; };
  SignWatch d_watch;

  for (Index n = eq.n0; n < eq.n0 + horizon; ++n) {
    const auto [now, next] = chain_at_and_next(eq, x, n);
    const double dn = eq.d(n);
    d_watch.observe(dn, n, traj.warnings);
    const double dt = next.t - now.t;
    // d_n counts as zero relative to the increment it has to absorb.
    if (dn == 0.0 || std::abs(dn) <= tol.eps_sign * std::abs(dt)) {
      throw NumericError("coefficient d vanishes; cannot invert the forcing term", n);
    }
    const Index target = n - eq.tau;
    const double x_next = eq.f.inverse(-dt / dn);
    if (!std::isfinite(x_next)) {
      traj.truncation = Truncation{target, std::isnan(x_next) ? "non-finite value" : "overflow"};
      break;
    }
    xs.push_back(x_next);
  }
  materialize_chain(eq, traj);
  return traj;
}

Trajectory solve(const EquationSpec& eq, const SeedWindow& seed, Index horizon, const ToleranceProfile& tol) {
  return solving_mode(eq) == SolveMode::forward ? solve_forward(eq, seed, horizon, tol)
                                                : solve_inverse(eq, seed, horizon, tol);
}

Trajectory sample_trajectory(const EquationSpec& eq, const Evaluator& x, Index first, Index last) {
  if (last < first) throw DomainError("empty sampling range");
  Trajectory traj;
  traj.provenance = Provenance::sampled;
  traj.x.first = first;
  for (Index n = first; n <= last; ++n) {
    const double v = x(n);
    if (std::isnan(v)) throw DomainError("evaluator returned NaN", n);
    traj.x.values.push_back(v);
  }
  traj.chain_first = first;
  for (Index n = first; n <= last; ++n) {
    const auto c = quasidifference_chain(eq, x, n);
    traj.z.push_back(c.z);
    traj.y.push_back(c.y);
    traj.w.push_back(c.w);
    traj.t.push_back(c.t);
  }
  return traj;
}

void materialize_chain(const EquationSpec& eq, Trajectory& traj) {
  traj.z.clear();
  traj.y.clear();
  traj.w.clear();
  traj.t.clear();
  // The seed window can reach below where the coefficient sequences start.
  const Index from = std::max({traj.first() + lag_reach(eq), eq.p.start(), eq.a.start(), eq.b.start(), eq.c.start()});
  const Index to = traj.last() - 3 - lead_reach(eq);
  traj.chain_first = from;
  for (Index n = from; n <= to; ++n) {
    const auto c = quasidifference_chain(eq, traj.x, n);
    traj.z.push_back(c.z);
    traj.y.push_back(c.y);
    traj.w.push_back(c.w);
    traj.t.push_back(c.t);
  }
}

namespace {

template <class Residuals>
ResidualSummary summarize(Index first, Index last, Residuals&& at) {
  ResidualSummary s;
  s.first = first;
  s.last = last;
  s.worst_index = first;
  for (Index n = first; n <= last; ++n) {
    const double r = at(n);
    s.relative.push_back(r);
    if (!(r <= s.max_relative)) {
      s.max_relative = r;
      s.worst_index = n;
    }
  }
  return s;
}

}  // namespace

ResidualSummary trajectory_residuals(const EquationSpec& eq, const Trajectory& traj) {
  const Index from = traj.first() + std::max<Index>({eq.delta, eq.tau, 0});
  const Index to = traj.last() - std::max<Index>(4 + lead_reach(eq), -eq.tau);
  return summarize(from, to, [&](Index n) { return residual_terms(eq, traj.x, n).relative(); });
}

ResidualSummary evaluator_residuals(const EquationSpec& eq, const Evaluator& x, Index first, Index last) {
  return summarize(first, last, [&](Index n) { return residual_terms(eq, x, n).relative(); });
}

}  // namespace quasidiff
