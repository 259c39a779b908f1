#pragma once

#include <stdexcept>
#include <string>

namespace annealdyn {

// Numerical integration left its tolerance band (norm/trace drift).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ZeroFrequencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Data carries no information about the requested parameter.
class NonIdentifiableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NoSolutionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace annealdyn
