#include "quasidiff/document.hpp"

#include <fstream>
#include <sstream>

namespace quasidiff {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

[[noreturn]] void field_error(const std::string& path, const std::string& msg) {
  throw SpecError("field '" + path + "': " + msg);
}

const json& require(const json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) field_error(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) field_error(path.empty() ? key : path + "." + key, "missing");
  return *it;
}

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

double number(const json& j, const std::string& key, const std::string& path) {
  const json& v = require(j, key, path);
  if (!v.is_number()) field_error(join(path, key), "expected a number");
  return v.get<double>();
}

Index integer(const json& j, const std::string& key, const std::string& path) {
  const json& v = require(j, key, path);
  if (!v.is_number_integer()) field_error(join(path, key), "expected an integer");
  return v.get<Index>();
}

OddRatio ratio(const json& j, const std::string& key, const std::string& path) {
  const json& v = require(j, key, path);
  if (!v.is_string()) field_error(join(path, key), "expected a \"num/den\" string");
  try {
    return OddRatio::parse(v.get<std::string>());
  } catch (const SpecError& e) {
    field_error(join(path, key), e.what());
  }
}

void reject_unknown(const json& j, std::initializer_list<const char*> known, const std::string& path) {
  for (const auto& [key, _] : j.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) field_error(join(path, key), "unknown field");
  }
}

const char* op_name(CombineOp op) {
  switch (op) {
    case CombineOp::add: return "add";
    case CombineOp::sub: return "sub";
    case CombineOp::mul: return "mul";
    case CombineOp::div: return "div";
    case CombineOp::pow: return "pow";
  }
  return "?";
}

Nonlinearity nonlinearity_from_json(const json& j, const std::string& path) {
  const json& kind = require(j, "kind", path);
  if (!kind.is_string()) field_error(join(path, "kind"), "expected a string");
  const auto k = kind.get<std::string>();
  if (k == "odd-power") {
    reject_unknown(j, {"kind", "coefficient", "exponent"}, path);
    return Nonlinearity::odd_power(number(j, "coefficient", path), ratio(j, "exponent", path));
  }
  if (k == "signum") {
    reject_unknown(j, {"kind", "coefficient"}, path);
    return Nonlinearity::signum(number(j, "coefficient", path));
  }
  field_error(join(path, "kind"), "unknown nonlinearity '" + k + "' (expected odd-power or signum)");
}

ordered_json nonlinearity_to_json(const Nonlinearity& f) {
  return std::visit(overloaded{
                        [](const Nonlinearity::OddPower& o) {
                          ordered_json j;
                          j["kind"] = "odd-power";
                          j["coefficient"] = o.kappa;
                          j["exponent"] = o.lambda.str();
                          return j;
                        },
                        [](const Nonlinearity::Signum& s) {
                          ordered_json j;
                          j["kind"] = "signum";
                          j["coefficient"] = s.kappa;
                          return j;
                        },
                        [](const Nonlinearity::Custom&) -> ordered_json {
                          throw SpecError("custom nonlinearities cannot be written to an equation document");
                        },
                    },
                    f.variant());
}

// Line and column of a byte offset, both 1-based.
std::pair<std::size_t, std::size_t> locate(std::string_view text, std::size_t offset) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

}  // namespace

ordered_json sequence_to_json(const Sequence& s) {
  ordered_json j;
  std::visit(overloaded{
                 [&](const Sequence::Constant& c) {
                   j["kind"] = "constant";
                   j["value"] = c.value;
                 },
                 [&](const Sequence::Geometric& g) {
                   j["kind"] = "geometric";
                   j["coefficient"] = g.kappa;
                   j["ratio"] = g.rho;
                 },
                 [&](const Sequence::Affine& a) {
                   j["kind"] = "affine";
                   j["slope"] = a.kappa;
                   j["intercept"] = a.mu;
                 },
                 [&](const Sequence::Power& p) {
                   j["kind"] = "power";
                   j["coefficient"] = p.kappa;
                   j["exponent"] = p.sigma;
                 },
                 [&](const Sequence::Table& t) {
                   j["kind"] = "table";
                   j["start"] = t.start;
                   j["values"] = t.values;
                   j["out_of_range"] = t.rule == OutOfRange::error ? "error" : "hold-last";
                 },
                 [&](const Sequence::Combination& c) {
                   j["kind"] = "combination";
                   j["op"] = op_name(c.op);
                   if (c.exponent) j["exponent"] = c.exponent->str();
                   ordered_json ops = ordered_json::array();
                   for (const auto& o : c.operands) ops.push_back(sequence_to_json(o));
                   j["operands"] = std::move(ops);
                 },
             },
             static_cast<const Sequence::Node::variant&>(s.node()));
  return j;
}

Sequence sequence_from_json(const json& j, const std::string& path) {
  const json& kind = require(j, "kind", path);
  if (!kind.is_string()) field_error(join(path, "kind"), "expected a string");
  const auto k = kind.get<std::string>();
  if (k == "constant") {
    reject_unknown(j, {"kind", "value"}, path);
    return Sequence::constant(number(j, "value", path));
  }
  if (k == "geometric") {
    reject_unknown(j, {"kind", "coefficient", "ratio"}, path);
    return Sequence::geometric(number(j, "coefficient", path), number(j, "ratio", path));
  }
  if (k == "affine") {
    reject_unknown(j, {"kind", "slope", "intercept"}, path);
    return Sequence::affine(number(j, "slope", path), number(j, "intercept", path));
  }
  if (k == "power") {
    reject_unknown(j, {"kind", "coefficient", "exponent"}, path);
    return Sequence::power(number(j, "coefficient", path), number(j, "exponent", path));
  }
  if (k == "table") {
    reject_unknown(j, {"kind", "start", "values", "out_of_range"}, path);
    const json& vals = require(j, "values", path);
    if (!vals.is_array() || vals.empty()) field_error(join(path, "values"), "expected a non-empty array of numbers");
    std::vector<double> values;
    for (std::size_t i = 0; i < vals.size(); ++i) {
      if (!vals[i].is_number()) field_error(join(path, "values[" + std::to_string(i) + "]"), "expected a number");
      values.push_back(vals[i].get<double>());
    }
    OutOfRange rule = OutOfRange::error;
    if (j.contains("out_of_range")) {
      const json& r = j["out_of_range"];
      if (r == "error") {
        rule = OutOfRange::error;
      } else if (r == "hold-last") {
        rule = OutOfRange::hold_last;
      } else {
        field_error(join(path, "out_of_range"), "expected \"error\" or \"hold-last\"");
      }
    }
    return Sequence::table(std::move(values), integer(j, "start", path), rule);
  }
  if (k == "combination") {
    reject_unknown(j, {"kind", "op", "operands", "exponent"}, path);
    const json& op = require(j, "op", path);
    CombineOp cop;
    if (op == "add") {
      cop = CombineOp::add;
    } else if (op == "sub") {
      cop = CombineOp::sub;
    } else if (op == "mul") {
      cop = CombineOp::mul;
    } else if (op == "div") {
      cop = CombineOp::div;
    } else if (op == "pow") {
      cop = CombineOp::pow;
    } else {
      field_error(join(path, "op"), "expected one of add, sub, mul, div, pow");
    }
    const json& ops = require(j, "operands", path);
    if (!ops.is_array() || ops.empty()) field_error(join(path, "operands"), "expected a non-empty array");
    std::vector<Sequence> operands;
    for (std::size_t i = 0; i < ops.size(); ++i) {
      operands.push_back(sequence_from_json(ops[i], join(path, "operands[" + std::to_string(i) + "]")));
    }
    std::optional<OddRatio> exponent;
    if (j.contains("exponent")) exponent = ratio(j, "exponent", path);
    try {
      return Sequence::combine(cop, std::move(operands), exponent);
    } catch (const SpecError& e) {
      field_error(path, e.what());
    }
  }
  field_error(join(path, "kind"), "unknown sequence kind '" + k + "'");
}

EquationSpec parse_equation(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const auto [line, col] = locate(text, e.byte > 0 ? e.byte - 1 : 0);
    throw SpecError("syntax error at line " + std::to_string(line) + ", column " + std::to_string(col) + ": " +
                    e.what());
  }
  if (!doc.is_object()) throw SpecError("equation document must be a JSON object");
  reject_unknown(doc, {"name", "exponents", "tau", "delta", "n0", "p", "d", "a", "b", "c", "f"}, "");

  EquationSpec eq;
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) field_error("name", "expected a string");
    eq.name = doc["name"].get<std::string>();
  }
  const json& ex = require(doc, "exponents", "");
  reject_unknown(ex, {"alpha", "beta", "gamma"}, "exponents");
  eq.alpha = ratio(ex, "alpha", "exponents");
  eq.beta = ratio(ex, "beta", "exponents");
  eq.gamma = ratio(ex, "gamma", "exponents");
  eq.tau = integer(doc, "tau", "");
  eq.delta = integer(doc, "delta", "");
  eq.n0 = integer(doc, "n0", "");
  eq.p = sequence_from_json(require(doc, "p", ""), "p");
  eq.d = sequence_from_json(require(doc, "d", ""), "d");
  eq.a = sequence_from_json(require(doc, "a", ""), "a");
  eq.b = sequence_from_json(require(doc, "b", ""), "b");
  eq.c = sequence_from_json(require(doc, "c", ""), "c");
  eq.f = nonlinearity_from_json(require(doc, "f", ""), "f");
  eq.validate();
  return eq;
}

EquationSpec load_equation(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SpecError("cannot open equation document '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_equation(buf.str());
}

std::string dump_equation(const EquationSpec& eq) {
  ordered_json j;
  if (!eq.name.empty()) j["name"] = eq.name;
  j["exponents"] = {{"alpha", eq.alpha.str()}, {"beta", eq.beta.str()}, {"gamma", eq.gamma.str()}};
  j["tau"] = eq.tau;
  j["delta"] = eq.delta;
  j["n0"] = eq.n0;
  j["p"] = sequence_to_json(eq.p);
  j["d"] = sequence_to_json(eq.d);
  j["a"] = sequence_to_json(eq.a);
  j["b"] = sequence_to_json(eq.b);
  j["c"] = sequence_to_json(eq.c);
  j["f"] = nonlinearity_to_json(eq.f);
  return j.dump(2) + "\n";
}

}  // namespace quasidiff
