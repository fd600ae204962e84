#pragma once

#include <stdexcept>
#include <string>

namespace dss {

enum class ErrorKind {
  InvalidArgument,   // malformed input that is not a system configuration
  InvalidConfig,     // a configuration invariant is violated
  Infeasible,        // query outside the feasible region of a curve
  BudgetExceeded,    // exhaustive search would exceed its state budget
  Internal,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Which configuration invariant failed validation.
enum class ConfigIssue {
  NonPositiveFileSize,
  TauBelowOne,
  NonPositiveK,
  NonPositiveD,
  EmptyRack,
  HelperSplitMismatch,
  CheapHelpersExceedRack,
  ExpensiveHelpersExceedRack,
  KTooLarge,
  DTooLarge,
  KExceedsD,
  SymmetricTau,
  StaticSplitMismatch,
  InvalidCosts,
};

class ConfigError : public Error {
 public:
  ConfigError(ConfigIssue issue, const std::string& what)
      : Error(ErrorKind::InvalidConfig, what), issue_(issue) {}
  ConfigIssue issue() const noexcept { return issue_; }

 private:
  ConfigIssue issue_;
};

}  // namespace dss
