#pragma once

#include <stdexcept>
#include <string>

namespace bfvar {

/// Malformed input: files, configuration, dimension errors traceable to
/// what the caller supplied. The CLI maps this to exit code 2.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/// A computation that started from valid input failed statistically or
/// numerically (for example, too many rank-deficient resamples). The CLI
/// maps this to exit code 1.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace bfvar
