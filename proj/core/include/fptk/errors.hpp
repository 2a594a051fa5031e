#ifndef FPTK_ERRORS_HPP
#define FPTK_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fptk {

/// Base class for all toolkit errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// An iterative scheme (series, root bracketing, fixed point) failed to
/// reach its tolerance within the iteration cap.
class NonConvergence : public Error {
 public:
  using Error::Error;
};

/// Argument outside the representable range of the computation.
class OverflowError : public Error {
 public:
  using Error::Error;
};

/// Argument violates a documented precondition.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Sample cannot support the requested statistic (identical values, or
/// observations mapped to exact 0/1 by the null CDF).
class DegenerateSample : public Error {
 public:
  using Error::Error;
};

/// A solver threshold came within two cells of the grid boundary.
class GridTooNarrow : public Error {
 public:
  using Error::Error;
};

/// A function expected to be strictly increasing failed the crossing search.
class NonMonotone : public Error {
 public:
  using Error::Error;
};

/// Monte Carlo budget below the minimum for a meaningful estimate.
class BudgetTooSmall : public Error {
 public:
  using Error::Error;
};

}  // namespace fptk

#endif  // FPTK_ERRORS_HPP
