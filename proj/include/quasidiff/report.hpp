#pragma once

#include <ostream>
#include <string>

#include "json.hpp"
#include "quasidiff/analysis.hpp"
#include "quasidiff/solver.hpp"

namespace quasidiff {

// Structured renderings; field names are listed in docs/report-format.md.
nlohmann::ordered_json to_json(const Verdict& v);
nlohmann::ordered_json to_json(const ConditionReport& r);
nlohmann::ordered_json to_json(const ContradictionCertificate& c);
nlohmann::ordered_json to_json(const BoundCertificate& c);
nlohmann::ordered_json to_json(const SignProfile& p);
nlohmann::ordered_json to_json(const ResidualSummary& s);

// Plain-text renderings.
std::string render(const Verdict& v);
std::string render(const ConditionReport& r);
std::string render(const ContradictionCertificate& c);
std::string render(const BoundCertificate& c);
std::string render(const SignProfile& p);

/// Header `n,x,z,y,w,t`; values with 17 significant digits; chain columns empty
/// outside the materialized range. A truncated trajectory ends with a
/// `# truncated,n=<index>,reason=<reason>` line.
void write_csv(std::ostream& out, const Trajectory& traj);

/// %.17g
std::string format_real(double v);

}  // namespace quasidiff
