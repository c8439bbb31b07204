#include "quasidiff/numerics.hpp"

#include <charconv>
#include <cmath>
#include <numeric>

#include "quasidiff/errors.hpp"

namespace quasidiff {

namespace {

bool is_odd_positive(std::int64_t v) { return v >= 1 && (v % 2) == 1; }

std::int64_t parse_int(std::string_view text, std::string_view whole) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    throw SpecError("malformed odd ratio '" + std::string(whole) + "'");
  }
  return v;
}

}  // namespace

OddRatio::OddRatio(std::int64_t numerator, std::int64_t denominator) {
  if (!is_odd_positive(numerator) || !is_odd_positive(denominator)) {
    throw SpecError("odd ratio requires odd positive integers, got " + std::to_string(numerator) +
                    "/" + std::to_string(denominator));
  }
  const std::int64_t g = std::gcd(numerator, denominator);
  num_ = numerator / g;
  den_ = denominator / g;
}

OddRatio OddRatio::parse(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    return OddRatio(parse_int(text, text), 1);
  }
  return OddRatio(parse_int(text.substr(0, slash), text), parse_int(text.substr(slash + 1), text));
}

OddRatio OddRatio::reciprocal() const noexcept {
  OddRatio r;
  r.num_ = den_;
  r.den_ = num_;
  return r;
}

std::string OddRatio::str() const { return std::to_string(num_) + "/" + std::to_string(den_); }

double spow(double x, OddRatio e) noexcept {
  if (x == 0.0 || std::isnan(x)) {
    return x == 0.0 ? 0.0 : x;
  }
  if (e.is_one()) {
    return x;
  }
  const double mag = std::fabs(x);
  double r;
  if (e.denominator() == 1) {
    r = std::pow(mag, static_cast<double>(e.numerator()));
  } else if (e.numerator() == 1 && e.denominator() == 3) {
    r = std::cbrt(mag);
  } else {
    r = std::pow(mag, e.value());
  }
  return std::copysign(r, x);
}

double spow_inverse(double y, OddRatio e) noexcept { return spow(y, e.reciprocal()); }

void ToleranceProfile::validate() const {
  if (!(eps_sign > 0.0) || !(eps_residual > 0.0) || !(eps_limit > 0.0)) {
    throw DomainError("tolerances must be strictly positive");
  }
  if (!(suffix_fraction > 0.0 && suffix_fraction <= 1.0)) {
    throw DomainError("suffix_fraction must lie in (0, 1]");
  }
}

}  // namespace quasidiff
