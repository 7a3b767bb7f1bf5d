#pragma once

#include <cstdint>

#include "ffcm/error.hpp"

namespace ffcm {

// Explicit work budget for the enumerative evaluators.  Counted in character
// evaluations (or enumeration steps of comparable cost).  No silent
// truncation: exceeding the budget throws BudgetError.
struct Budget {
  std::uint64_t max_steps = 100'000'000;  // default: 1e8 character evaluations

  void charge(std::uint64_t steps, std::uint64_t& used, const char* what) const {
    used += steps;
    if (used > max_steps) {
      throw BudgetError(std::string(what) + ": work budget exceeded (" +
                        std::to_string(used) + " > " + std::to_string(max_steps) + " steps)");
    }
  }
  void require(std::uint64_t steps, const char* what) const {
    std::uint64_t used = 0;
    charge(steps, used, what);
  }
};

}  // namespace ffcm
