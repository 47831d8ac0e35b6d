#pragma once

#include <stdexcept>
#include <string>

namespace qslab {

// Thrown when a requested computation would exceed a configured budget
// (enumeration size caps, trial budgets).
class ResourceError : public std::runtime_error {
public:
  explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qslab
