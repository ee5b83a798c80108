#ifndef FRACTDIST_ERRORS_HPP
#define FRACTDIST_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fractdist {

// Requested frequency/scale lies beyond what the discrete construction can
// represent (finer than the construction scale).
class resolution_error : public std::runtime_error {
 public:
  explicit resolution_error(const std::string& what) : std::runtime_error(what) {}
};

// Work estimate exceeds the configured pair/memory budget.
class budget_error : public std::runtime_error {
 public:
  explicit budget_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace fractdist

#endif
