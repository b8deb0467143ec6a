#pragma once

#include "gk/instance.hpp"
#include "gk/rounding.hpp"

namespace gk {

inline constexpr int kDefaultOracleLimit = 24;

// Exact maximum of x^T A x over x in {-1,+1}^n by Gray-code enumeration of
// the 2^(n-1) sign classes with x_1 = +1 (global sign flip is a symmetry).
// Ties go to the lexicographically smallest x, with +1 ordered before -1.
SignVector brute_force_max(const ProblemInstance& inst, int n_limit = kDefaultOracleLimit);

}  // namespace gk
