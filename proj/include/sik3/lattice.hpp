#pragma once

// Even integral lattices presented by Gram matrices, their discriminant
// groups with the induced finite quadratic form, overlattices from glue
// vectors, and orthogonal complements / projections.

#include <string>
#include <utility>
#include <vector>

#include "sik3/matrix.hpp"

namespace sik3 {

class Lattice {
public:
    explicit Lattice(IntMat gram, std::string label = "");

    int rank() const { return static_cast<int>(gram_.size()); }
    const IntMat& gram() const { return gram_; }
    const std::string& label() const { return label_; }
    Lattice relabel(std::string label) const;

    // Determinant of the Gram matrix (nonzero by construction).
    const Int& disc() const { return det_; }
    // (p, q) counts of positive/negative eigenvalues, by exact diagonalization.
    std::pair<int, int> signature() const;

private:
    IntMat gram_;
    std::string label_;
    Int det_;
};

// Standard lattices.  Root lattices are negative definite (roots of square -2).
Lattice lat_U();
Lattice lat_A(int n);
Lattice lat_D(int n);
Lattice lat_E(int n);
Lattice lat_rank1(const Int& m);
Lattice lat_binary(const Int& a, const Int& b, const Int& c);
// Names: "U", "A7", "D5", "E6".."E8".
Lattice named_lattice(const std::string& name);

Lattice direct_sum(const Lattice& a, const Lattice& b);
// The lattice L(k): same module, form scaled by k.
Lattice twist(const Lattice& l, const Int& k);
inline Int disc(const Lattice& l) { return l.disc(); }

// Finite quadratic form on generators of a finite abelian group.
// From a lattice the orders are the invariant factors != 1; hand-built forms
// may use any generator orders (e.g. Z/3 + Z/5).
struct DiscForm {
    std::vector<Int> orders;
    RatVec q;       // q(g_i) in [0,2), values mod 2Z
    RatMat pairing; // b(g_i,g_j) in [0,1); diagonal == q_i mod 1
    RatMat gens;    // generator coordinates in the source lattice basis (may be empty)

    Int group_order() const;
    // Direct sum of cyclic factors Z/o_i with q(g_i)=q_i and zero cross pairing.
    static DiscForm cyclic(const std::vector<Int>& orders, const RatVec& qvals);
    DiscForm negated() const;
};

DiscForm discriminant_form(const Lattice& l);

// True iff some group isomorphism carries q1 to q2 (to -q2 when negate).
// Brute force over generator images with order/value pruning.
bool disc_forms_isomorphic(const DiscForm& q1, const DiscForm& q2, bool negate,
                           long cap = 10000);

// Rational coordinates (in the basis of L) of a vector of the dual lattice.
using GlueVector = RatVec;

// Lattice generated by L and the glue vectors; glues must lie in the dual,
// have even square and integral mutual pairings.
Lattice overlattice(const Lattice& l, const std::vector<GlueVector>& glues);

// {x in L : x.v = 0} on an integral basis; v must be primitive and nonzero.
Lattice orthogonal_complement(const Lattice& l, const IntVec& v);

// Component of x orthogonal to span(S) inside L tensor Q.
RatVec orthogonal_project(const Lattice& l, const RatVec& x, const std::vector<RatVec>& sbasis);

// Order of x + L in the discriminant group and its q-value in [0,2).
std::pair<Int, Rat> disc_form_eval(const Lattice& l, const GlueVector& x);

// Genus-level comparison: rank, signature, determinant, discriminant form.
bool same_genus_invariants(const Lattice& a, const Lattice& b, long cap = 10000);

// Q(v) = v^T G v / stated convention helpers.
Rat gram_product(const Lattice& l, const RatVec& x, const RatVec& y);

} // namespace sik3
