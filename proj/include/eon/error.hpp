#pragma once

#include <stdexcept>
#include <string>

namespace eon {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised while loading or validating a topology document.
class TopologyError : public Error {
 public:
  using Error::Error;
};

// Raised on an illegal spectrum operation (overlap, out of range).
class SpectrumError : public Error {
 public:
  using Error::Error;
};

// Raised for malformed growth-profile or physical-layer configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace eon
