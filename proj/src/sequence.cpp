#include "quasidiff/sequence.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace quasidiff {

namespace {

constexpr Index kUnbounded = std::numeric_limits<Index>::min();

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

bool is_integral(double v) { return std::isfinite(v) && std::floor(v) == v; }

}  // namespace

Sequence Sequence::constant(double kappa) { return Sequence(std::make_shared<Node>(Constant{kappa})); }

Sequence Sequence::geometric(double kappa, double rho) {
  return Sequence(std::make_shared<Node>(Geometric{kappa, rho}));
}

Sequence Sequence::affine(double kappa, double mu) {
  return Sequence(std::make_shared<Node>(Affine{kappa, mu}));
}

Sequence Sequence::power(double kappa, double sigma) {
  return Sequence(std::make_shared<Node>(Power{kappa, sigma}));
}

Sequence Sequence::table(std::vector<double> values, Index start, OutOfRange rule) {
  if (values.empty()) {
    throw SpecError("table sequence needs at least one value");
  }
  return Sequence(std::make_shared<Node>(Table{std::move(values), start, rule}));
}

Sequence Sequence::combine(CombineOp op, std::vector<Sequence> operands, std::optional<OddRatio> exponent) {
  if (operands.empty()) {
    throw SpecError("combination needs at least one operand");
  }
  if (op == CombineOp::pow) {
    if (operands.size() != 1 || !exponent) {
      throw SpecError("pow combination takes exactly one operand and an odd-ratio exponent");
    }
  } else if (exponent) {
    throw SpecError("only pow combinations carry an exponent");
  }
  return Sequence(std::make_shared<Node>(Combination{op, std::move(operands), exponent}));
}

Sequence Sequence::raise(Sequence base, OddRatio e) { return combine(CombineOp::pow, {std::move(base)}, e); }

Index Sequence::start() const {
  return std::visit(
      overloaded{
          [](const Table& t) { return t.start; },
          [](const Power& p) -> Index {
            if (is_integral(p.sigma) && p.sigma >= 0) return kUnbounded;
            return p.sigma >= 0 ? 0 : 1;
          },
          [](const Combination& c) {
            Index s = kUnbounded;
            for (const auto& o : c.operands) s = std::max(s, o.start());
            return s;
          },
          [](const auto&) { return kUnbounded; },
      },
      static_cast<const Node::variant&>(*node_));
}

double Sequence::operator()(Index n) const {
  if (n < start()) {
    throw DomainError("sequence evaluated below its start index " + std::to_string(start()), n);
  }
  const auto dn = static_cast<double>(n);
  const double v = std::visit(
      overloaded{
          [](const Constant& c) { return c.value; },
          [&](const Geometric& g) { return g.kappa * std::pow(g.rho, dn); },
          [&](const Affine& a) { return a.kappa * dn + a.mu; },
          [&](const Power& p) { return p.kappa * std::pow(dn, p.sigma); },
          [&](const Table& t) {
            const auto offset = static_cast<std::size_t>(n - t.start);
            if (offset >= t.values.size()) {
              if (t.rule == OutOfRange::error) {
                throw DomainError("table sequence has no value past index " +
                                      std::to_string(t.start + static_cast<Index>(t.values.size()) - 1),
                                  n);
              }
              return t.values.back();
            }
            return t.values[offset];
          },
          [&](const Combination& c) {
            if (c.op == CombineOp::pow) {
              return spow(c.operands.front()(n), *c.exponent);
            }
            double acc = c.operands.front()(n);
            for (std::size_t i = 1; i < c.operands.size(); ++i) {
              const double rhs = c.operands[i](n);
              switch (c.op) {
                case CombineOp::add: acc += rhs; break;
                case CombineOp::sub: acc -= rhs; break;
                case CombineOp::mul: acc *= rhs; break;
                case CombineOp::div: acc /= rhs; break;
                case CombineOp::pow: break;
              }
            }
            return acc;
          },
      },
      static_cast<const Node::variant&>(*node_));
  if (std::isnan(v)) {
    throw DomainError("sequence evaluates to NaN", n);
  }
  return v;
}

Sequence operator+(Sequence a, Sequence b) { return Sequence::combine(CombineOp::add, {std::move(a), std::move(b)}); }
Sequence operator-(Sequence a, Sequence b) { return Sequence::combine(CombineOp::sub, {std::move(a), std::move(b)}); }
Sequence operator*(Sequence a, Sequence b) { return Sequence::combine(CombineOp::mul, {std::move(a), std::move(b)}); }
Sequence operator/(Sequence a, Sequence b) { return Sequence::combine(CombineOp::div, {std::move(a), std::move(b)}); }

}  // namespace quasidiff
