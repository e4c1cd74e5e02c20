#pragma once

#include <stdexcept>
#include <string>

namespace sccsa {

/// Bad argument to an operation (out-of-range value, empty input, ...).
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Shapes that do not line up, e.g. a position whose length differs from the bounds.
class StructuralError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Invalid run or experiment configuration (unknown id, bad budget, ...).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sccsa
