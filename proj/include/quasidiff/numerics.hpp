#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace quasidiff {

/// Exponent p/q with p, q odd positive integers, kept in lowest terms.
///
/// For such exponents the signed power sign(x)|x|^(p/q) is the real branch of
/// x^(p/q) on all of R, so the quasidifference chain stays defined for
/// negative arguments.
class OddRatio {
 public:
  constexpr OddRatio() = default;
  OddRatio(std::int64_t numerator, std::int64_t denominator = 1);

  /// Accepts "p/q" or "p".
  static OddRatio parse(std::string_view text);

  std::int64_t numerator() const noexcept { return num_; }
  std::int64_t denominator() const noexcept { return den_; }
  double value() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }
  OddRatio reciprocal() const noexcept;
  bool is_one() const noexcept { return num_ == 1 && den_ == 1; }
  std::string str() const;

  friend bool operator==(const OddRatio&, const OddRatio&) = default;

 private:
  std::int64_t num_ = 1;
  std::int64_t den_ = 1;
};

/// sign(x) * |x|^e. Exactly zero at zero, odd in x, overflows to +-inf.
double spow(double x, OddRatio e) noexcept;

/// Inverse of spow in its first argument: spow(spow_inverse(y, e), e) == y.
double spow_inverse(double y, OddRatio e) noexcept;

/// Finite-horizon stand-ins for "eventually" and "equals zero".
struct ToleranceProfile {
  /// Values with |v| <= eps_sign * (largest |v| on the window) count as zero.
  double eps_sign = 1e-12;
  /// Relative residual tolerance.
  double eps_residual = 1e-9;
  /// Tail threshold for tends-to-zero evidence and series saturation.
  double eps_limit = 1e-8;
  /// Trailing portion of a window treated as "eventually".
  double suffix_fraction = 0.5;

  /// Throws DomainError unless every epsilon is positive and suffix_fraction is in (0, 1].
  void validate() const;
};

}  // namespace quasidiff
