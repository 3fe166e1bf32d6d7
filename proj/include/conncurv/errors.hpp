#pragma once

#include <stdexcept>
#include <string>

namespace conncurv {

// Input violates a structural invariant (CLI exit code 1).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Two independent computations disagree beyond tolerance (CLI exit code 2).
class CrossCheckError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace conncurv
