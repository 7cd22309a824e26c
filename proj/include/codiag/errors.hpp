#ifndef CODIAG_ERRORS_HPP
#define CODIAG_ERRORS_HPP

#include <stdexcept>
#include <string>

#include "codiag/rational.hpp"

namespace codiag {

/// Base class for all toolkit errors.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// A model failed validation (dangling ids, reserved names, bad constants...).
struct ValidationError : Error {
  using Error::Error;
};

/// A delay move would leave a location invariant. Carries the supremum of the
/// admissible delay from the queried valuation.
struct InvariantViolation : Error {
  Rat sup_admissible;
  InvariantViolation(const std::string& msg, Rat sup)
      : Error(msg), sup_admissible(sup) {}
};

/// A search or construction ran past its node/time budget. Distinct from any
/// verdict: callers must not interpret this as (non-)codiagnosability.
struct BudgetExceeded : Error {
  using Error::Error;
};

/// Region-graph construction exceeded its state budget.
struct StateBudgetExceeded : BudgetExceeded {
  using BudgetExceeded::BudgetExceeded;
};

/// A diagnoser resource is too large for synthesis (guard enumeration blew the
/// budget, or more clocks than the rectangular guard language can describe).
struct ResourceTooLarge : Error {
  using Error::Error;
};

/// Synthesis was asked for a delay at which the model is not codiagnosable.
struct NotCodiagnosable : Error {
  using Error::Error;
};

/// An observation fed to an estimator matches no run of the model.
struct InconsistentObservation : Error {
  using Error::Error;
};

/// Text input could not be parsed; carries a 1-based position.
struct ParseError : Error {
  int line;
  int column;
  ParseError(const std::string& msg, int line_, int column_ = 0)
      : Error(msg), line(line_), column(column_) {}
};

}  // namespace codiag

#endif
