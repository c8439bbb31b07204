#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace quasidiff {

using Index = std::int64_t;

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what, std::optional<Index> index = std::nullopt)
      : std::runtime_error(index ? what + " (at n=" + std::to_string(*index) + ")" : what),
        index_(index) {}

  std::optional<Index> index() const noexcept { return index_; }

 private:
  std::optional<Index> index_;
};

/// Malformed or inadmissible equation description / configuration.
class SpecError : public Error {
 public:
  using Error::Error;
};

/// A precondition of an operation does not hold (short window, bad parameter).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Numeric breakdown: near-zero pivot, division by a vanishing coefficient.
class NumericError : public Error {
 public:
  using Error::Error;
};

}  // namespace quasidiff
