#pragma once

// Exact dense matrix helpers over Z and Q (desk-scale ranks).

#include <vector>

#include "sik3/rational.hpp"

namespace sik3 {

using IntVec = std::vector<Int>;
using IntMat = std::vector<std::vector<Int>>;
using RatVec = std::vector<Rat>;
using RatMat = std::vector<std::vector<Rat>>;

Int int_det(IntMat m); // Bareiss, fraction-free

Rat rat_det(RatMat m);
RatVec rat_solve(RatMat a, RatVec b); // throws Error on singular
RatMat rat_inverse(RatMat a);         // throws Error on singular

inline RatMat to_rat(const IntMat& m) {
    RatMat r(m.size());
    for (std::size_t i = 0; i < m.size(); ++i)
        for (const auto& x : m[i]) r[i].emplace_back(x);
    return r;
}

// Smith normal form D = P*M*Q with unimodular P, Q.  Returns the diagonal
// (nonnegative, divisibility chain) and the inverse of the row transform P.
struct Smith {
    IntVec diag;
    IntMat pinv;
};
Smith smith_normal_form(IntMat m);

// Row-style Hermite form of a full-column-rank (m>=n) x n matrix: returns an
// n x n upper-triangular basis of the row span.
IntMat hnf_row_basis(IntMat m);

} // namespace sik3
