#pragma once

#include <stdexcept>
#include <string>

namespace homoclinic {

/// Bad input: malformed polynomial text, violated precondition, wrong branch.
class InvalidArgument : public std::invalid_argument {
 public:
  explicit InvalidArgument(const std::string& what) : std::invalid_argument(what) {}
};

/// A numerical procedure could not certify its result (non-convergence,
/// rounding residual too large, ambiguous root classification, budget).
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace homoclinic
