#include "quasidiff/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace quasidiff {

using nlohmann::ordered_json;

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

// Non-finite doubles have no JSON literal.
ordered_json real(double v) {
  if (std::isfinite(v)) return v;
  return format_real(v);
}

ordered_json reals(const std::vector<double>& v) {
  ordered_json a = ordered_json::array();
  for (double e : v) a.push_back(real(e));
  return a;
}

}  // namespace

ordered_json to_json(const Verdict& v) {
  ordered_json j;
  j["kind"] = to_string(v.kind);
  j["tends_to_zero"] = v.tends_to_zero;
  j["decided_first"] = v.decided_first;
  j["decided_last"] = v.decided_last;
  j["degenerate_zero"] = v.degenerate_zero;
  if (v.quick) {
    j["quick_decomposition"] = {{"positive_terms", to_string(v.quick->positive_terms)},
                                {"first", v.quick->first},
                                {"q", reals(v.quick->q)}};
  } else {
    j["quick_decomposition"] = nullptr;
  }
  j["notes"] = v.notes;
  return j;
}

ordered_json to_json(const ConditionReport& r) {
  ordered_json j;
  j["subject"] = r.subject;
  j["hypotheses_hold"] = r.hypotheses_hold();
  j["overall"] = r.overall();
  ordered_json entries = ordered_json::array();
  for (const auto& e : r.entries) {
    ordered_json je;
    je["id"] = e.id;
    je["status"] = to_string(e.status);
    je["satisfied"] = e.satisfied;
    je["index"] = e.index ? ordered_json(*e.index) : ordered_json(nullptr);
    je["detail"] = e.detail;
    je["sample"] = {e.sample_first, e.sample_last};
    entries.push_back(std::move(je));
  }
  j["entries"] = std::move(entries);
  if (r.excluded_positive_terms) {
    j["excluded_positive_terms"] = to_string(*r.excluded_positive_terms);
    j["mirror_branch"] = r.mirror_branch;
  }
  if (r.sign_chain_confirms) j["sign_chain_confirms"] = *r.sign_chain_confirms;
  return j;
}

ordered_json to_json(const ContradictionCertificate& c) {
  ordered_json j;
  j["positive_terms"] = to_string(c.positive_terms);
  j["first"] = c.first;
  j["last"] = c.last;
  j["valid"] = c.valid;
  j["chains_positive"] = c.chains_positive;
  j["conflicts"] = c.conflict_count();
  j["s"] = reals(c.s);
  j["r"] = reals(c.r);
  j["l"] = reals(c.l);
  j["g"] = reals(c.g);
  j["left"] = reals(c.left);
  j["right"] = reals(c.right);
  j["conflict"] = c.conflict;
  return j;
}

ordered_json to_json(const BoundCertificate& c) {
  ordered_json j;
  j["L"] = real(c.L);
  j["P"] = real(c.P);
  j["K"] = real(c.K);
  j["bound"] = real(c.bound);
  j["first"] = c.first;
  j["last"] = c.last;
  j["max_abs_x"] = real(c.max_abs_x);
  j["valid"] = c.valid;
  return j;
}

ordered_json to_json(const SignProfile& p) {
  ordered_json j;
  j["case"] = to_string(p.sign_case);
  j["decided_first"] = p.decided_first;
  j["decided_last"] = p.decided_last;
  j["observed_max_abs_x"] = real(p.observed_max_abs_x);
  ordered_json comps = ordered_json::array();
  for (const auto& c : p.components) {
    comps.push_back({{"name", c.name},
                     {"sign", to_string(c.sign)},
                     {"monotone", to_string(c.monotone)},
                     {"tends_to_zero", c.tends_to_zero},
                     {"max_abs", real(c.max_abs)}});
  }
  j["components"] = std::move(comps);
  j["degenerate_zero"] = p.degenerate_zero;
  return j;
}

ordered_json to_json(const ResidualSummary& s) {
  ordered_json j;
  j["first"] = s.first;
  j["last"] = s.last;
  j["max_relative"] = real(s.max_relative);
  j["worst_index"] = s.worst_index;
  j["relative"] = reals(s.relative);
  return j;
}

std::string render(const Verdict& v) {
  std::ostringstream os;
  os << "verdict: " << to_string(v.kind) << "\n";
  os << "decided on: [" << v.decided_first << ", " << v.decided_last << "]\n";
  os << "tends to zero (evidence): " << (v.tends_to_zero ? "yes" : "no") << "\n";
  if (v.quick) {
    os << "quick decomposition: x_n = (-1)^n q_n, positive " << to_string(v.quick->positive_terms)
       << " terms, q_" << v.quick->first << " = " << format_real(v.quick->q.front()) << "\n";
  }
  for (const auto& n : v.notes) os << "note: " << n << "\n";
  return os.str();
}

std::string render(const ConditionReport& r) {
  std::ostringstream os;
  os << r.subject << "\n";
  for (const auto& e : r.entries) {
    os << "  [" << (e.satisfied ? "ok" : "--") << "] " << e.id << ": " << to_string(e.status);
    if (e.index) os << " (n=" << *e.index << ")";
    os << " -- " << e.detail << "\n";
  }
  if (r.excluded_positive_terms) {
    os << "  statement: no quickly oscillatory solutions with positive " << to_string(*r.excluded_positive_terms)
       << " terms" << (r.mirror_branch ? " (d < 0 mirror)" : "") << "\n";
  }
  if (r.sign_chain_confirms) {
    os << "  sign chain " << (*r.sign_chain_confirms ? "confirms" : "does NOT confirm") << " the exclusion\n";
  }
  os << "  overall: " << r.overall() << "\n";
  return os.str();
}

std::string render(const ContradictionCertificate& c) {
  std::ostringstream os;
  os << "contradiction certificate (positive " << to_string(c.positive_terms) << " terms) on [" << c.first << ", "
     << c.last << "]: " << (c.valid ? "VALID" : "NOT VALID") << ", " << c.conflict_count() << "/" << c.conflict.size()
     << " sign conflicts, chains " << (c.chains_positive ? "positive" : "not positive") << "\n";
  return os.str();
}

std::string render(const BoundCertificate& c) {
  std::ostringstream os;
  os << "bound certificate on [" << c.first << ", " << c.last << "]: " << (c.valid ? "VALID" : "NOT VALID")
     << "\n  L = " << format_real(c.L) << ", P = " << format_real(c.P) << ", K = " << format_real(c.K)
     << "\n  K + L/(1-P) = " << format_real(c.bound) << ", max |x_n| = " << format_real(c.max_abs_x) << "\n";
  return os.str();
}

std::string render(const SignProfile& p) {
  std::ostringstream os;
  os << "component sign profile: " << to_string(p.sign_case) << " on [" << p.decided_first << ", " << p.decided_last
     << "]\n";
  for (const auto& c : p.components) {
    os << "  " << c.name << ": sign " << to_string(c.sign) << ", " << to_string(c.monotone) << ", tends to zero "
       << (c.tends_to_zero ? "yes" : "no") << ", max |.| " << format_real(c.max_abs) << "\n";
  }
  if (!p.degenerate_zero.empty()) {
    os << "  degenerate zero components:";
    for (const auto& n : p.degenerate_zero) os << " " << n;
    os << "\n";
  }
  os << "  observed max |x| = " << format_real(p.observed_max_abs_x) << " (boundedness observed, not proven)\n";
  return os.str();
}

void write_csv(std::ostream& out, const Trajectory& traj) {
  out << "n,x,z,y,w,t\n";
  for (Index n = traj.first(); n <= traj.last(); ++n) {
    out << n << ',' << format_real(traj.x.at(n));
    if (traj.has_chain() && n >= traj.chain_first && n <= traj.chain_last()) {
      const auto i = static_cast<std::size_t>(n - traj.chain_first);
      out << ',' << format_real(traj.z[i]) << ',' << format_real(traj.y[i]) << ',' << format_real(traj.w[i]) << ','
          << format_real(traj.t[i]);
    } else {
      out << ",,,,";
    }
    out << '\n';
  }
  if (traj.truncation) {
    out << "# truncated,n=" << traj.truncation->index << ",reason=" << traj.truncation->reason << '\n';
  }
}

}  // namespace quasidiff
