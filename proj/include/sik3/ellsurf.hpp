#pragma once

// Elliptic K3 surfaces over P^1 with exact Q(t) coefficients: Kodaira types
// at every bad place, Mordell-Weil heights with fibre corrections, and
// Neron-Severi discriminant / Gram assembly via the Shioda-Tate formula.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sik3/lattice.hpp"
#include "sik3/ratfunc.hpp"

namespace sik3 {

// y^2 = x^3 + p2 x^2 + p4 x + p6 in the K3 chart: deg p2 <= 4, deg p4 <= 8,
// deg p6 <= 12, x and y of weights 4 and 6 at infinity (chi = 2).
class WeierstrassModel {
public:
    enum class Shape { Extended, Short, Cubic };

    // y^2 = x(x^2 + a x + b)
    static WeierstrassModel extended(Poly a, Poly b);
    // y^2 = x^3 + A x + B
    static WeierstrassModel short_form(Poly a4, Poly b6);
    static WeierstrassModel general(Poly p2, Poly p4, Poly p6);

    Shape shape() const { return shape_; }
    const Poly& p2() const { return p2_; }
    const Poly& p4() const { return p4_; }
    const Poly& p6() const { return p6_; }
    const Poly& ext_a() const; // Extended shape only
    const Poly& ext_b() const;

    Poly c4() const;
    Poly c6() const;
    const Poly& discriminant() const { return disc_; }
    RatFunc j_invariant() const;

private:
    WeierstrassModel(Shape s, Poly p2, Poly p4, Poly p6);
    Shape shape_;
    Poly p2_, p4_, p6_;
    Poly disc_;
};

// Weierstrass form of a cubic y^2 = c3 T^3 + c2 T^2 + c1 T (+ c0, required 0)
// via x = c3 T, y -> c3 y: Extended(c2, c1*c3).
WeierstrassModel from_cubic(const Poly& c3, const Poly& c2, const Poly& c1,
                            const Poly& c0 = Poly());

struct SectionPoint {
    bool zero = true;
    RatFunc x, y;
    static SectionPoint at_infinity() { return SectionPoint{}; }
    static SectionPoint affine(RatFunc px, RatFunc py) {
        return SectionPoint{false, std::move(px), std::move(py)};
    }
    bool operator==(const SectionPoint&) const = default;
};

bool on_curve(const WeierstrassModel& w, const SectionPoint& p);
SectionPoint point_neg(const WeierstrassModel& w, const SectionPoint& p);
SectionPoint point_add(const WeierstrassModel& w, const SectionPoint& p, const SectionPoint& q);
SectionPoint point_double(const WeierstrassModel& w, const SectionPoint& p);

enum class FiberKind { In, Instar, II, III, IV, IVstar, IIIstar, IIstar };

struct KodairaFiber {
    Place place;
    FiberKind kind = FiberKind::In;
    int n = 0;      // index for I_n / I_n*
    long euler = 0; // per geometric fibre
    int count = 1;  // geometric fibres in the batch (= deg of the place)
    std::string type_str() const;      // "I14", "I4*", "III*", ...
    int root_rank() const;             // rank of the fibre root lattice
    std::string root_label() const;    // "A13", "D8", "E7", "" if irreducible
    Int root_disc() const;             // |disc| of the root lattice (1 if none)
};

// Tate classification at every bad place; throws NonMinimalModel where the
// minimality test fails and AdditiveAtNonRationalPlace outside scope.
std::vector<KodairaFiber> kodaira_classify(const WeierstrassModel& w);

long euler_number(const std::vector<KodairaFiber>& fibers);
Lattice trivial_lattice(const std::vector<KodairaFiber>& fibers);

// Rescale/translate until every rational place is minimal.
WeierstrassModel minimalize(const WeierstrassModel& w);

// Index of the fibre component met by the section, up to the inversion
// symmetry i <-> n-i (the smaller representative is returned).
int component_index(const WeierstrassModel& w, const SectionPoint& p, const KodairaFiber& fiber);

// Correction terms of the height pairing.
Rat fiber_contribution(const KodairaFiber& fiber, int comp);
Rat fiber_contribution_pair(const KodairaFiber& fiber, int ci, int cj);

// (P.O) computed from the pole divisor of x(P).
Int intersection_with_zero(const WeierstrassModel& w, const SectionPoint& p);

Rat height(const WeierstrassModel& w, const SectionPoint& p);
Rat height_pairing(const WeierstrassModel& w, const SectionPoint& p, const SectionPoint& q);

// |disc NS| = prod_v |disc root_v| * det(height Gram) / torsion^2.
Rat ns_disc(const std::vector<KodairaFiber>& fibers, const RatMat& height_gram,
            const Int& torsion_order);

// Abstract section data for NS assembly.
struct SectionSpec {
    Rat height;
    Int po;                        // (P.O)
    std::map<std::size_t, int> comps; // fibre position in the classify list -> component id
};
SectionSpec section_spec(const WeierstrassModel& w, const std::vector<KodairaFiber>& fibers,
                         const SectionPoint& p);

// Gram matrix of NS on {O, F, fibre components, sections}, with torsion
// sections adjoined as overlattice glue.  Free-section pairings default to
// the diagonal of the given heights.
Lattice ns_gram(const std::vector<KodairaFiber>& fibers, const std::vector<SectionSpec>& sections,
                const std::vector<SectionSpec>& torsion, const RatMat& pairing = {});

} // namespace sik3
