#pragma once

// 2-isogenies of extended Weierstrass models over Q(t): the quotient by
// translation by the 2-torsion section (0,0), point transport, the dual
// isogeny, and exact rational preimages.

#include <optional>

#include "sik3/ellsurf.hpp"

namespace sik3 {

struct TwoIsogeny {
    WeierstrassModel source; // Extended(a, b), kernel (0,0)
    WeierstrassModel target; // Extended(-2a, a^2 - 4b)
};

// Quotient by translation by (0,0) in the classical normal form.
TwoIsogeny quotient_curve(const WeierstrassModel& w);

// phi(x, y) = (x + a + b/x, y (1 - b/x^2)); kernel and Zero map to Zero.
SectionPoint map_point(const TwoIsogeny& iso, const SectionPoint& p);

// Quotient of the target by its own (0,0); its target is the source scaled
// by (x, y) -> (4x, 8y), so the composition is multiplication by 2.
TwoIsogeny dual(const TwoIsogeny& iso);

// Admissible change (x, y) -> (u^2 x, u^3 y).
SectionPoint scale_point(const SectionPoint& p, const Rat& u);

// One rational preimage of an affine target point, if the fibre quadratic
// x^2 + (a - X)x + b splits over Q(t).
std::optional<SectionPoint> preimage_point(const TwoIsogeny& iso, const SectionPoint& q);

// Classification of the target, re-minimalizing first if Tate's check fails.
std::vector<KodairaFiber> classify_quotient(const TwoIsogeny& iso);

std::optional<RatFunc> ratfunc_sqrt(const RatFunc& f);

} // namespace sik3
