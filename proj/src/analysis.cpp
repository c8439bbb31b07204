#include "quasidiff/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace quasidiff {

namespace {

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

// (-1)^n for any integer n.
double alternating(Index n) { return (n % 2 == 0) ? 1.0 : -1.0; }

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double e : v) m = std::max(m, std::abs(e));
  return m;
}

std::size_t suffix_length(std::size_t len, double fraction) {
  auto s = static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(len)));
  return std::clamp<std::size_t>(s, std::min<std::size_t>(len, 4), len);
}

// Sign census of the trailing suffix with values at or below the resolution
// threshold trimmed off the end.
struct SuffixSigns {
  std::size_t begin = 0;  // decided segment [begin, end)
  std::size_t end = 0;
  std::size_t trimmed = 0;
  bool all_zero = false;
  bool interior_zero = false;
  std::vector<int> signs;
};

SuffixSigns suffix_signs(std::span<const double> v, const ToleranceProfile& tol) {
  SuffixSigns out;
  const double theta = tol.eps_sign * max_abs(v);
  out.begin = v.size() - suffix_length(v.size(), tol.suffix_fraction);
  out.end = v.size();
  while (out.end > out.begin && std::abs(v[out.end - 1]) <= theta) --out.end;
  out.trimmed = v.size() - out.end;
  out.all_zero = out.end == out.begin;
  for (std::size_t i = out.begin; i < out.end; ++i) {
    if (std::abs(v[i]) <= theta) out.interior_zero = true;
    out.signs.push_back(sign_of(v[i]));
  }
  return out;
}

SignState state_of(const SuffixSigns& s) {
  if (s.all_zero) return SignState::zero;
  if (s.interior_zero || s.signs.size() < 4) return SignState::undetermined;
  const bool pos = std::all_of(s.signs.begin(), s.signs.end(), [](int x) { return x > 0; });
  const bool neg = std::all_of(s.signs.begin(), s.signs.end(), [](int x) { return x < 0; });
  if (pos) return SignState::positive;
  if (neg) return SignState::negative;
  return SignState::mixed;
}

std::string range_text(Index a, Index b) { return "[" + std::to_string(a) + ", " + std::to_string(b) + "]"; }

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

ConditionEntry structural(std::string id, bool ok, std::string detail, Index first, Index last) {
  ConditionEntry e;
  e.id = std::move(id);
  e.status = ok ? ConditionStatus::holds_on_sample : ConditionStatus::fails_at_index;
  e.satisfied = ok;
  e.detail = std::move(detail);
  e.sample_first = first;
  e.sample_last = last;
  return e;
}

// First index in [first, last] where pred(value) fails, if any.
template <class Pred>
std::optional<Index> first_violation(const Sequence& s, Index first, Index last, Pred pred) {
  for (Index n = first; n <= last; ++n) {
    if (!pred(s(n))) return n;
  }
  return std::nullopt;
}

// Sign of d over the sample, or the index where it vanishes or flips.
struct DSign {
  int sign = 0;
  std::optional<Index> violation;
};

DSign d_sign(const Sequence& d, Index first, Index last) {
  DSign out;
  for (Index n = first; n <= last; ++n) {
    const int s = sign_of(d(n));
    if (s == 0 || (out.sign != 0 && s != out.sign)) {
      out.violation = n;
      return out;
    }
    out.sign = s;
  }
  return out;
}

ConditionEntry d_entry(const DSign& ds, Index first, Index last) {
  ConditionEntry e = structural("d-one-signed", !ds.violation,
                                ds.violation ? "d vanishes or changes sign"
                                             : (ds.sign > 0 ? "d > 0 on sample" : "d < 0 on sample"),
                                first, last);
  e.index = ds.violation;
  return e;
}

ConditionEntry e1_entry(const Nonlinearity& f, Index first, Index last) {
  const bool custom = std::holds_alternative<Nonlinearity::Custom>(f.variant());
  ConditionEntry e = structural("e1", f.sign_condition(),
                                custom ? "x f(x) > 0 sampled on a log grid over [1e-6, 1e6]" : "x f(x) > 0 for x != 0",
                                first, last);
  if (custom && e.satisfied) e.status = ConditionStatus::heuristic_evidence;
  return e;
}

}  // namespace

// ---------------------------------------------------------------------------

const char* to_string(VerdictKind k) {
  switch (k) {
    case VerdictKind::nonoscillatory_positive: return "nonoscillatory-positive";
    case VerdictKind::nonoscillatory_negative: return "nonoscillatory-negative";
    case VerdictKind::oscillatory: return "oscillatory";
    case VerdictKind::quickly_oscillatory: return "quickly-oscillatory";
    case VerdictKind::undetermined: return "undetermined";
  }
  return "?";
}

const char* to_string(Parity p) { return p == Parity::even ? "even" : "odd"; }

const char* to_string(ConditionStatus s) {
  switch (s) {
    case ConditionStatus::holds_on_sample: return "holds-on-sample";
    case ConditionStatus::fails_at_index: return "fails-at-index";
    case ConditionStatus::heuristic_evidence: return "heuristic-evidence";
    case ConditionStatus::not_checkable: return "not-checkable";
  }
  return "?";
}

const char* to_string(SeriesStatus s) {
  switch (s) {
    case SeriesStatus::heuristic_divergent: return "heuristic-divergent";
    case SeriesStatus::heuristic_convergent: return "heuristic-convergent";
    case SeriesStatus::undetermined: return "undetermined";
  }
  return "?";
}

const char* to_string(SignCase c) {
  switch (c) {
    case SignCase::all_one_signed: return "all-components-one-signed";
    case SignCase::y_one_signed_x_to_zero: return "y-one-signed-x-to-zero";
    case SignCase::neither: return "neither";
    case SignCase::undetermined: return "undetermined";
  }
  return "?";
}

const char* to_string(SignState s) {
  switch (s) {
    case SignState::positive: return "positive";
    case SignState::negative: return "negative";
    case SignState::zero: return "zero";
    case SignState::mixed: return "mixed";
    case SignState::undetermined: return "undetermined";
  }
  return "?";
}

const char* to_string(Monotonicity m) {
  switch (m) {
    case Monotonicity::nondecreasing: return "nondecreasing";
    case Monotonicity::nonincreasing: return "nonincreasing";
    case Monotonicity::constant: return "constant";
    case Monotonicity::none: return "none";
  }
  return "?";
}

// ---------------------------------------------------------------------------

bool tends_to_zero_evidence(std::span<const double> v, const ToleranceProfile& tol) {
  if (v.size() < 3) return false;
  const std::size_t third = v.size() / 3;
  const double m1 = max_abs(v.subspan(0, third));
  const double m2 = max_abs(v.subspan(third, third));
  const double m3 = max_abs(v.subspan(2 * third));
  if (m1 == 0.0) return m2 == 0.0 && m3 == 0.0;
  return m1 >= m2 && m2 >= m3 && m3 < tol.eps_limit * m1;
}

Verdict classify(const IndexedWindow& x, const ToleranceProfile& tol) {
  tol.validate();
  const std::span<const double> v(x.values);
  if (v.size() < 8) throw DomainError("classification needs at least 8 values");

  Verdict out;
  out.tends_to_zero = tends_to_zero_evidence(v, tol);
  out.notes.push_back("tends_to_zero is finite-window evidence, not a limit");
  const SuffixSigns s = suffix_signs(v, tol);
  out.decided_first = x.first + static_cast<Index>(s.begin);
  out.decided_last = x.first + static_cast<Index>(s.end) - 1;

  if (s.all_zero) {
    out.degenerate_zero = true;
    out.notes.push_back("degenerate-zero: the decided suffix is identically zero at sign resolution");
    return out;
  }
  if (s.trimmed > 0) {
    out.notes.push_back(std::to_string(s.trimmed) + " trailing values below sign resolution excluded");
  }
  if (s.interior_zero || s.signs.size() < 4) {
    out.notes.push_back("suffix values straddle zero within eps_sign; sign pattern unresolved");
    return out;
  }
  switch (state_of(s)) {
    case SignState::positive: out.kind = VerdictKind::nonoscillatory_positive; return out;
    case SignState::negative: out.kind = VerdictKind::nonoscillatory_negative; return out;
    default: break;
  }
  bool alternates = true;
  for (std::size_t i = 0; i + 1 < s.signs.size(); ++i) alternates = alternates && s.signs[i] != s.signs[i + 1];
  if (!alternates) {
    out.kind = VerdictKind::oscillatory;
    return out;
  }
  out.kind = VerdictKind::quickly_oscillatory;
  QuickDecomposition qd;
  qd.first = out.decided_first;
  for (Index n = out.decided_first; n <= out.decided_last; ++n) qd.q.push_back(alternating(n) * x.at(n));
  qd.positive_terms = qd.q.front() > 0.0 ? Parity::even : Parity::odd;
  out.quick = std::move(qd);
  return out;
}

Verdict classify(const Trajectory& traj, const ToleranceProfile& tol) { return classify(traj.x, tol); }

// ---------------------------------------------------------------------------

bool ConditionReport::hypotheses_hold() const {
  return std::all_of(entries.begin(), entries.end(), [](const ConditionEntry& e) { return e.satisfied; });
}

const ConditionEntry* ConditionReport::first_failure() const {
  for (const auto& e : entries) {
    if (!e.satisfied) return &e;
  }
  return nullptr;
}

const ConditionEntry* ConditionReport::find(std::string_view id) const {
  for (const auto& e : entries) {
    if (e.id == id) return &e;
  }
  return nullptr;
}

std::string ConditionReport::overall() const {
  if (const auto* f = first_failure()) return "hypotheses not confirmed: " + f->id + " (" + to_string(f->status) + ")";
  const bool heuristic = std::any_of(entries.begin(), entries.end(), [](const ConditionEntry& e) {
    return e.status == ConditionStatus::heuristic_evidence;
  });
  return heuristic ? "hypotheses hold (heuristically for series)" : "hypotheses hold on sample";
}

ConditionReport check_theorem1(const EquationSpec& eq, Index horizon) {
  ConditionReport rep;
  rep.subject = "no quickly oscillatory solutions of the excluded parity";
  const Index first = eq.n0;
  const Index last = eq.n0 + std::max<Index>(horizon, 1) - 1;

  const auto p_bad = first_violation(eq.p, first, last, [](double v) { return v >= 0.0; });
  ConditionEntry p = structural("p-nonnegative", !p_bad, p_bad ? "p_n < 0" : "p_n >= 0 on sample", first, last);
  p.index = p_bad;
  rep.entries.push_back(p);

  const DSign ds = d_sign(eq.d, first, last);
  rep.entries.push_back(d_entry(ds, first, last));
  rep.entries.push_back(structural("delta-even", eq.delta % 2 == 0, "delta = " + std::to_string(eq.delta), first, last));
  rep.entries.push_back(e1_entry(eq.f, first, last));

  if (rep.hypotheses_hold()) {
    rep.mirror_branch = ds.sign < 0;
    const bool tau_even = eq.tau % 2 == 0;
    // d > 0: tau even excludes positive even terms, tau odd positive odd terms; d < 0 swaps.
    rep.excluded_positive_terms = (tau_even != rep.mirror_branch) ? Parity::even : Parity::odd;

    const Index lead = std::max<Index>({eq.delta, eq.tau, 0});
    const Index trail = std::max<Index>(4, -eq.tau);
    IndexedWindow ones{eq.n0 - lead, std::vector<double>(static_cast<std::size_t>(lead + trail + 16), 1.0)};
    rep.sign_chain_confirms = contradiction_certificate(eq, ones, *rep.excluded_positive_terms).valid;
  }
  return rep;
}

// ---------------------------------------------------------------------------

std::size_t ContradictionCertificate::conflict_count() const {
  return static_cast<std::size_t>(std::count(conflict.begin(), conflict.end(), true));
}

ContradictionCertificate contradiction_certificate(const EquationSpec& eq, const IndexedWindow& q, Parity positive_terms) {
  if (eq.delta < 0 || eq.delta % 2 != 0) throw DomainError("certificate requires an even, nonnegative delta");
  if (!eq.f.sign_condition()) throw DomainError("certificate requires x f(x) > 0 for x != 0");
  for (Index n = q.first; n <= q.last(); ++n) {
    if (!(q.at(n) > 0.0)) throw DomainError("q must be strictly positive", n);
  }

  ContradictionCertificate cert;
  cert.positive_terms = positive_terms;
  cert.first = std::max(eq.n0, q.first + std::max<Index>({eq.delta, eq.tau, 0}));
  cert.last = q.last() - std::max<Index>(4, -eq.tau);
  if (cert.last < cert.first) throw DomainError("q window too short for the certificate chain");

  const DSign ds = d_sign(eq.d, cert.first, cert.last);
  if (ds.violation) throw DomainError("certificate requires d one-signed", ds.violation);
  if (auto bad = first_violation(eq.p, cert.first, cert.last + 4, [](double v) { return v >= 0.0; })) {
    throw DomainError("certificate requires p_n >= 0", bad);
  }

  const DerivedCoefficients coeff(eq);
  const double sigma = positive_terms == Parity::even ? 1.0 : -1.0;
  const auto count = static_cast<std::size_t>(cert.last - cert.first + 1);

  for (std::size_t i = 0; i < count + 3; ++i) {
    const Index n = cert.first + static_cast<Index>(i);
    const double s = q.at(n + 1) + q.at(n) + eq.p(n + 1) * q.at(n - eq.delta + 1) + eq.p(n) * q.at(n - eq.delta);
    cert.s.push_back(s);
    cert.r.push_back(spow(s / coeff.C(n), eq.gamma));
  }
  for (std::size_t i = 0; i < count + 2; ++i) {
    const Index n = cert.first + static_cast<Index>(i);
    cert.l.push_back(spow((cert.r[i + 1] + cert.r[i]) / coeff.B(n), eq.beta));
  }
  for (std::size_t i = 0; i < count + 1; ++i) {
    const Index n = cert.first + static_cast<Index>(i);
    cert.g.push_back(spow((cert.l[i + 1] + cert.l[i]) / coeff.A(n), eq.alpha));
  }

  auto positive = [](const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(), [](double e) { return e > 0.0; });
  };
  cert.chains_positive = positive(cert.s) && positive(cert.r) && positive(cert.l) && positive(cert.g);

  bool all_conflict = true;
  for (std::size_t i = 0; i < count; ++i) {
    const Index n = cert.first + static_cast<Index>(i);
    const double left = sigma * alternating(n + 1) * (cert.g[i + 1] + cert.g[i]);
    const Index k = n - eq.tau;
    const double right = eq.d(n) * eq.f(sigma * alternating(k) * q.at(k));
    const bool conflict = sign_of(left) * sign_of(right) < 0;
    cert.left.push_back(left);
    cert.right.push_back(right);
    cert.conflict.push_back(conflict);
    all_conflict = all_conflict && conflict;
  }
  cert.valid = cert.chains_positive && all_conflict;
  return cert;
}

// ---------------------------------------------------------------------------

double lemma1_limit(double p_limit, double z_limit, double eps) {
  if (std::abs(std::abs(p_limit) - 1.0) <= eps) throw DomainError("limit of p must satisfy |p| != 1");
  return z_limit / (1.0 + p_limit);
}

BoundCertificate lemma2_bound(const IndexedWindow& z, const Sequence& p, double p_limit, Index delta, Index n1,
                              const IndexedWindow& startup, std::optional<double> L) {
  if (delta < 1) throw DomainError("bound requires delta >= 1");
  if (!(std::abs(p_limit) < 1.0)) throw DomainError("bound requires |lim p_n| < 1");
  if (!z.contains(n1) || z.last() < n1 + delta + 1) {
    throw DomainError("z window must cover [n1, n1 + delta + 1]", n1);
  }
  if (!startup.contains(n1 - delta) || !startup.contains(n1 - 1)) {
    throw DomainError("startup values must cover [n1 - delta, n1 - 1]", n1);
  }

  BoundCertificate cert;
  cert.P = (1.0 + std::abs(p_limit)) / 2.0;
  cert.first = n1;
  cert.last = z.last();

  std::vector<double> xs;  // indexed from n1 - delta
  for (Index n = n1 - delta; n < n1; ++n) xs.push_back(startup.at(n));
  double z_sup = 0.0;
  for (Index n = n1; n <= cert.last; ++n) {
    const double pn = p(n);
    if (std::abs(pn) > cert.P) throw DomainError("|p_n| exceeds P = (1 + |p|)/2", n);
    const double zn = z.at(n);
    z_sup = std::max(z_sup, std::abs(zn));
    xs.push_back(zn - pn * xs[static_cast<std::size_t>(n - delta - (n1 - delta))]);
  }
  if (L && *L < z_sup) throw DomainError("supplied L is below sup |z_n| on the range");
  cert.L = L.value_or(z_sup);

  cert.x.assign(xs.begin() + delta, xs.end());
  for (Index n = n1; n <= n1 + delta + 1; ++n) cert.K = std::max(cert.K, std::abs(cert.x[static_cast<std::size_t>(n - n1)]));
  cert.bound = cert.K + cert.L / (1.0 - cert.P);
  cert.max_abs_x = max_abs(cert.x);
  cert.valid = std::isfinite(cert.max_abs_x) && cert.max_abs_x <= cert.bound;
  return cert;
}

// ---------------------------------------------------------------------------

SeriesEvidence series_evidence(const Sequence& s, Index from, Index horizon, double threshold, double eps_limit) {
  SeriesEvidence ev;
  ev.first = from;
  ev.last = from + horizon - 1;
  if (horizon < 1) return ev;

  const auto m = static_cast<double>(horizon);
  const auto m1 = static_cast<Index>(std::llround(std::cbrt(m)));
  const auto m2 = static_cast<Index>(std::llround(std::cbrt(m) * std::cbrt(m)));
  double s1 = 0.0, s2 = 0.0;
  CompensatedSum sum;
  for (Index k = 1; k <= horizon; ++k) {
    sum.add(s(from + k - 1));
    const double v = sum.value();
    if (std::abs(v) > threshold) ev.threshold_exceeded = true;
    if (k == m1) s1 = v;
    if (k == m2) s2 = v;
  }
  ev.partial_sum = sum.value();
  ev.middle_increment = s2 - s1;
  ev.tail_increment = ev.partial_sum - s2;

  const double tail = std::abs(ev.tail_increment);
  const double middle = std::abs(ev.middle_increment);
  ev.ratio = middle > 0.0 ? tail / middle : (tail > 0.0 ? INFINITY : 0.0);
  if (ev.threshold_exceeded) {
    ev.status = SeriesStatus::heuristic_divergent;
    return ev;
  }
  if (horizon < 27) return ev;
  if (tail <= eps_limit * std::abs(ev.partial_sum)) {
    ev.status = SeriesStatus::heuristic_convergent;
  } else if (ev.ratio >= 0.5) {
    ev.status = SeriesStatus::heuristic_divergent;
  } else if (ev.ratio <= 0.25) {
    ev.status = SeriesStatus::heuristic_convergent;
  }
  return ev;
}

SeriesStatus check_series_divergence(const Sequence& s, Index horizon, double threshold) {
  return series_evidence(s, std::max<Index>(1, s.start()), horizon, threshold).status;
}

ConditionReport check_theorem2(const EquationSpec& eq, Index horizon, double threshold, const ToleranceProfile& tol) {
  ConditionReport rep;
  rep.subject = "bounded solutions are almost oscillatory";
  const Index first = eq.n0;
  const Index last = eq.n0 + std::max<Index>(horizon, 27) - 1;
  const Index count = last - first + 1;

  {
    const double est = eq.p(last);
    double spread = 0.0;
    for (Index n = last - count / 3; n <= last; ++n) spread = std::max(spread, std::abs(eq.p(n) - est));
    ConditionEntry e;
    e.id = "lp";
    e.sample_first = first;
    e.sample_last = last;
    if (!(std::abs(est) < 1.0)) {
      e.status = ConditionStatus::fails_at_index;
      e.satisfied = false;
      e.index = last;
      e.detail = "|p_n| = " + fmt(std::abs(est)) + " >= 1 at the end of the sample";
    } else if (spread <= tol.eps_limit * std::max(1.0, std::abs(est))) {
      e.status = ConditionStatus::holds_on_sample;
      e.detail = "p_n settled at " + fmt(est) + " over the last third";
    } else {
      e.status = ConditionStatus::heuristic_evidence;
      e.detail = "p_n near " + fmt(est) + ", still varying by " + fmt(spread) + " over the last third";
    }
    rep.entries.push_back(e);
  }

  rep.entries.push_back(e1_entry(eq.f, first, last));

  {
    const auto cont = eq.f.continuous();
    ConditionEntry e = structural("f-continuous", cont.value_or(false),
                                  cont ? (*cont ? "built-in family is continuous" : "signum is discontinuous at 0")
                                       : "custom evaluator; continuity not checkable",
                                  first, last);
    if (!cont) e.status = ConditionStatus::not_checkable;
    rep.entries.push_back(e);
  }

  rep.entries.push_back(d_entry(d_sign(eq.d, first, last), first, last));

  auto series_entry = [&](std::string id, const Sequence& s) {
    ConditionEntry e;
    e.id = std::move(id);
    e.status = ConditionStatus::heuristic_evidence;
    e.sample_first = first;
    e.sample_last = last;
    try {
      const SeriesEvidence ev = series_evidence(s, first, count, threshold, tol.eps_limit);
      e.satisfied = ev.status == SeriesStatus::heuristic_divergent;
      e.detail = std::string(to_string(ev.status)) + ": partial sum " + fmt(ev.partial_sum) + " over " +
                 range_text(first, last) + ", tail/middle ratio " + fmt(ev.ratio);
    } catch (const Error& err) {
      e.status = ConditionStatus::fails_at_index;
      e.satisfied = false;
      e.index = err.index();
      e.detail = err.what();
    }
    rep.entries.push_back(std::move(e));
  };
  const DerivedCoefficients coeff(eq);
  series_entry("abc-A", coeff.A_sequence());
  series_entry("abc-B", coeff.B_sequence());
  series_entry("abc-C", coeff.C_sequence());
  series_entry("zs", eq.d);
  return rep;
}

// ---------------------------------------------------------------------------

SignProfile component_sign_profile(const Trajectory& traj, const ToleranceProfile& tol) {
  tol.validate();
  if (!traj.has_chain() || traj.t.size() < 16) {
    throw DomainError("sign profile needs a materialized chain over at least 16 indices");
  }
  SignProfile out;
  const std::size_t len = traj.t.size();
  const Index cf = traj.chain_first;
  std::vector<double> xs;
  for (std::size_t i = 0; i < len; ++i) xs.push_back(traj.x.at(cf + static_cast<Index>(i)));
  out.observed_max_abs_x = max_abs(traj.x.values);

  const std::vector<std::pair<const char*, const std::vector<double>*>> comps = {
      {"x", &xs}, {"y", &traj.y}, {"w", &traj.w}, {"t", &traj.t}};
  const std::size_t begin = len - suffix_length(len, tol.suffix_fraction);
  out.decided_first = cf + static_cast<Index>(begin);
  out.decided_last = cf + static_cast<Index>(len) - 1;

  for (const auto& [name, vec] : comps) {
    const std::span<const double> v(*vec);
    ComponentProfile cp;
    cp.name = name;
    cp.max_abs = max_abs(v);
    cp.sign = state_of(suffix_signs(v, tol));
    cp.tends_to_zero = tends_to_zero_evidence(v, tol);
    bool up = true, down = true, flat = true;
    for (std::size_t i = begin; i + 1 < len; ++i) {
      const double dv = v[i + 1] - v[i];
      up = up && dv >= 0.0;
      down = down && dv <= 0.0;
      flat = flat && dv == 0.0;
    }
    cp.monotone = flat ? Monotonicity::constant
                       : (up ? Monotonicity::nondecreasing : (down ? Monotonicity::nonincreasing : Monotonicity::none));
    if (cp.sign == SignState::zero) out.degenerate_zero.push_back(name);
    out.components.push_back(cp);
  }

  auto one_signed = [](SignState s) {
    return s == SignState::positive || s == SignState::negative || s == SignState::zero;
  };
  const auto& x = out.components[0];
  const auto& y = out.components[1];
  if (x.sign == SignState::undetermined || x.sign == SignState::zero) {
    out.sign_case = SignCase::undetermined;
  } else if (one_signed(y.sign) && x.tends_to_zero) {
    out.sign_case = SignCase::y_one_signed_x_to_zero;
  } else if (std::all_of(out.components.begin(), out.components.end(),
                         [&](const ComponentProfile& c) { return one_signed(c.sign); })) {
    out.sign_case = SignCase::all_one_signed;
  } else if (std::any_of(out.components.begin(), out.components.end(),
                         [](const ComponentProfile& c) { return c.sign == SignState::undetermined; })) {
    out.sign_case = SignCase::undetermined;
  } else {
    out.sign_case = SignCase::neither;
  }
  return out;
}

}  // namespace quasidiff
