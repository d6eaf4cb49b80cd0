#pragma once

#include <stdexcept>
#include <string>

namespace triadic {

// Thrown when an operation would materialize more state than the caller's
// cap allows (atom enumerations, gap lists, planarization blowups).
struct resource_error : std::runtime_error {
  explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when a certified comparison stays Undecided at the maximum
// precision level the caller permits.
struct undecided_error : std::runtime_error {
  explicit undecided_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace triadic
