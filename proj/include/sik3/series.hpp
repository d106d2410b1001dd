#pragma once

// The three K3 families, their lattice enhancements by a primitive vector of
// the transcendental summand, explicit solved members with a section of the
// predicted height, and the end-to-end sandwich verification pipelines.

#include <optional>
#include <utility>

#include "sik3/isogeny.hpp"
#include "sik3/quadform.hpp"

namespace sik3 {

struct FamilyMember {
    int series = 0;
    Poly a, b;              // series 1 uses both; series 2/3 have b = t, t^3
    WeierstrassModel model;
    std::optional<WeierstrassModel> alt; // series 1: the fibration with 2-torsion
};

// series 1: y^2 = x^3 + t^3 a x + t^5 b (deg a = deg b = 2, a(0) != 0),
//           plus the alternate fibration through the elliptic parameter x/t^2;
// series 2: y^2 = x(x^2 + a x + t)    (deg a = 4, a(0) != 0);
// series 3: y^2 = x(x^2 + a x + t^3)  (deg a = 4, a(0) != 0).
FamilyMember build_member(int series, const Poly& a, const Poly& b = Poly());

struct Enhancement {
    int series = 0;
    Int n;
    std::pair<Int, Int> rep;    // primitive representation of N by the series form
    Rat section_height;         // N/2, 2N/7, 2N/15
    Lattice tprime = lat_U();   // U^2 + <-2N>, built through the complement
    Int disc_ns;                // 2N
    std::optional<Lattice> enhanced_ns; // series 1: the glued lattice L'
};

Enhancement enhancement_plan(int series, const Int& n);

// The solved members of the two explicit recipes: w^2 = alpha^3 + alpha^2 a + alpha t
// with P = (alpha, w), resp. w^2 = alpha^3 t^2 + alpha^2 a + alpha t with
// P = (alpha t^2, w t^2).
std::pair<FamilyMember, SectionPoint> solve_section_series2(const Rat& alpha, const Poly& w);
std::pair<FamilyMember, SectionPoint> solve_section_series3(const Rat& alpha, const Poly& w);

struct Stage {
    std::string name;
    bool pass = false;
    std::vector<std::pair<std::string, std::string>> values;
};

struct Report {
    int series = 0;
    Int n;
    std::vector<Stage> stages;
    bool all_pass() const;
    const Stage* find(const std::string& name) const;
};

// Runs every verifiable consequence for the given series and N; an explicit
// (alpha, w) witness adds the section, transport, halving and NS-form stages
// for series 2 and 3.
Report verify_sandwich(int series, const Int& n,
                       const std::optional<std::pair<Rat, Poly>>& witness = std::nullopt);

} // namespace sik3
