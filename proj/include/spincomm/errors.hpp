#pragma once

#include <stdexcept>
#include <string>

namespace spincomm {

// Bad input: malformed description, violated precondition, dimension mismatch.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A numerical invariant was broken (unitarity, Hermiticity, reality of controls).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace spincomm
