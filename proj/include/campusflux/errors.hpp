#pragma once

#include <stdexcept>
#include <string>

namespace cflux {

/// Malformed or missing input data (files, CSV rows, mismatched grids).
class data_error : public std::runtime_error {
public:
  explicit data_error(const std::string& what) : std::runtime_error(what) {}
};

/// Numerical failure (SVD non-convergence, vertical forecasting group).
class numeric_error : public std::runtime_error {
public:
  explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cflux
