#pragma once

#include <stdexcept>
#include <string>

namespace lcdepth {

// Raised for malformed or inconsistent user data (files, rows, recipes).
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when a numeric routine cannot deliver its accuracy contract
// (series non-convergence, quadrature too coarse, rejection exhaustion).
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace lcdepth
