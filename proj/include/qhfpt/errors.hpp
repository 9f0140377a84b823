#ifndef QHFPT_ERRORS_HPP
#define QHFPT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qhfpt {

// Base of every error the library raises on purpose. `kind()` is the short
// machine-readable tag used in the CLI's {"error": {"kind", "detail"}} output.
class Error : public std::runtime_error {
public:
  Error(std::string kind, const std::string& detail)
      : std::runtime_error(detail), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

private:
  std::string kind_;
};

// A mathematical hypothesis of the requested computation does not hold
// (not quasi-homogeneous, not isolated, prime too small, ...).
class HypothesisError : public Error {
public:
  using Error::Error;
};

// Caller broke an API contract (mismatched rings, parts not summing, ...).
class ContractViolation : public Error {
public:
  explicit ContractViolation(const std::string& detail)
      : Error("contract-violation", detail) {}
};

class DivisionByZero : public Error {
public:
  explicit DivisionByZero(const std::string& detail)
      : Error("division-by-zero", detail) {}
};

// Estimated work exceeds the configured term cap.
class ResourceError : public Error {
public:
  explicit ResourceError(const std::string& detail)
      : Error("resource-limit", detail) {}
};

class ParseError : public Error {
public:
  ParseError(const std::string& detail, std::size_t position)
      : Error("parse-error", detail + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }

private:
  std::size_t position_;
};

// Internal consistency check failed: a proven bound or identity did not hold
// on computed data. Indicates a bug, never bad input.
class InvariantViolation : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

} // namespace qhfpt

#endif
