#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "json.hpp"
#include "quasidiff/model.hpp"

namespace quasidiff {

/// Equation documents are JSON; the grammar is described in docs/equation-format.md.
/// Parse failures raise SpecError naming the line/column or the offending field path.
EquationSpec parse_equation(std::string_view text);
EquationSpec load_equation(const std::filesystem::path& path);

/// Canonical rendering (two-space indent, trailing newline). Custom nonlinearities
/// are not representable and raise SpecError.
std::string dump_equation(const EquationSpec& eq);

nlohmann::ordered_json sequence_to_json(const Sequence& s);
Sequence sequence_from_json(const nlohmann::json& j, const std::string& path);

}  // namespace quasidiff
