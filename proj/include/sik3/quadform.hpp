#pragma once

// Positive-definite binary quadratic forms: exhaustive primitive
// representation search, the three divisibility criteria on N, and reduced
// form enumeration (class numbers) for small negative discriminants.

#include <utility>
#include <vector>

#include "sik3/intutil.hpp"

namespace sik3 {

struct BinaryForm {
    Int a, b, c; // Q(x,y) = a x^2 + b xy + c y^2
    Int discriminant() const { return b * b - 4 * a * c; }
    Rat value(const Int& x, const Int& y) const {
        return Rat(a * x * x + b * x * y + c * y * y);
    }
    bool operator==(const BinaryForm&) const = default;
};

// All (x,y) with Q(x,y) = n and gcd(x,y) = 1, lexicographic in (x,y).
std::vector<std::pair<Int, Int>> primitive_representations(const BinaryForm& q, const Int& n);

// Whether a form of the series represents -2N on the lattice side:
//  1: N a product of primes = 1 mod 4, or twice such;
//  2: N = prod p_i or 7 prod p_i with every p_i = 1,2,4 mod 7;
//  3: N = prod p_i or 15 prod p_i for an odd number of primes = 2,8 mod 15,
//     or N = 3 prod p_i or 5 prod p_i for an even number of such primes.
bool criterion(int series, const Int& n);

// The halved positive-definite form paired with each series
// (series k lattices are -2 times these).
BinaryForm series_form(int series);

// All reduced primitive forms of discriminant d < 0; size = class number h(d).
std::vector<BinaryForm> class_forms(const Int& d);

} // namespace sik3
