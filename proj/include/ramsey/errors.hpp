#pragma once

#include <stdexcept>
#include <string>

namespace ramsey {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parameters outside the physical domain (k <= 0, negative widths, ...).
class InvalidParameters : public Error {
 public:
  using Error::Error;
};

/// The dressed basis |1> + (2 lambda / Omega)|2> is undefined at Omega = 0.
class DegenerateBasis : public Error {
 public:
  using Error::Error;
};

/// A linear solve failed or produced a residual above tolerance.
/// `condition` carries the reciprocal condition estimate of the system
/// (or the residual norm, see `what()`).
class SingularSystem : public Error {
 public:
  SingularSystem(const std::string& message, double condition)
      : Error(message), condition_(condition) {}
  double condition() const noexcept { return condition_; }

 private:
  double condition_;
};

}  // namespace ramsey
