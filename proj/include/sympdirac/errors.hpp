#pragma once

#include <stdexcept>
#include <string>

namespace sympdirac {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad parameters: dimensions, levels, cutoffs, malformed tensors.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A formula was requested on a model that does not satisfy its hypotheses.
class HypothesisError : public Error {
 public:
  using Error::Error;
};

// An exact fiber computation would need levels above the padded fiber.
class HeadroomError : public Error {
 public:
  using Error::Error;
};

// Assembled matrix failed the Hermiticity gate.
class NonHermitianError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace sympdirac
