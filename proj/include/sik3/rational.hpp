#pragma once

// Exact arbitrary-precision integers and rationals (GMP-backed).
// Every numeric value in the engine is one of these; no floating point.

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "sik3/errors.hpp"

namespace sik3 {

using Int = mpz_class;
using Rat = mpq_class;

inline Rat make_rat(const Int& num, const Int& den) {
    if (den == 0) throw Error("zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline Rat make_rat(long num, long den = 1) { return make_rat(Int(num), Int(den)); }

// Parses "p", "-p" or "p/q"; throws on malformed input.
Rat parse_rat(const std::string& s);

// Lowest terms, "p" or "p/q".
std::string rat_str(const Rat& r);
std::string int_str(const Int& n);

inline bool is_integer(const Rat& r) { return r.get_den() == 1; }

// Floor division of the rational (towards -infinity).
Int rat_floor(const Rat& r);

// Representative of r mod 2Z in [0,2).
Rat mod_2z(const Rat& r);
// Representative of r mod Z in [0,1).
Rat mod_1z(const Rat& r);

// Exact square root when the rational is a perfect square.
std::optional<Rat> rat_sqrt(const Rat& r);
std::optional<Int> int_sqrt(const Int& n);

} // namespace sik3
