#pragma once

// Small-integer utilities: trial-division factorization at desk scale.

#include <vector>
#include <utility>

#include "sik3/rational.hpp"

namespace sik3 {

inline constexpr long kTrialDivisionBound = 10'000'000L;

// Prime factorization of n >= 1 by trial division up to `bound`; a remaining
// cofactor is accepted if probably prime, otherwise the input is rejected.
std::vector<std::pair<Int, int>> factorize(Int n, long bound = kTrialDivisionBound);

// All positive divisors, ascending.
std::vector<Int> divisors(const Int& n, long bound = kTrialDivisionBound);

} // namespace sik3
