#include "sik3/isogeny.hpp"

namespace sik3 {

TwoIsogeny quotient_curve(const WeierstrassModel& w) {
    const Poly& a = w.ext_a();
    const Poly& b = w.ext_b();
    if (b.is_zero()) throw SingularKernel();
    WeierstrassModel target = WeierstrassModel::extended(-2 * a, a * a - 4 * b);
    return TwoIsogeny{w, std::move(target)};
}

SectionPoint map_point(const TwoIsogeny& iso, const SectionPoint& p) {
    if (!on_curve(iso.source, p)) throw PointNotOnCurve();
    if (p.zero || (p.x.is_zero() && p.y.is_zero())) return SectionPoint::at_infinity();
    const RatFunc a(iso.source.ext_a());
    const RatFunc b(iso.source.ext_b());
    const RatFunc xx = p.x + a + b / p.x;
    const RatFunc yy = p.y * (RatFunc(1L) - b / (p.x * p.x));
    SectionPoint out = SectionPoint::affine(xx, yy);
    if (!on_curve(iso.target, out)) throw PointNotOnCurve("isogeny image escaped the target");
    return out;
}

TwoIsogeny dual(const TwoIsogeny& iso) { return quotient_curve(iso.target); }

SectionPoint scale_point(const SectionPoint& p, const Rat& u) {
    if (p.zero) return p;
    return SectionPoint::affine(RatFunc(Poly(u * u)) * p.x, RatFunc(Poly(u * u * u)) * p.y);
}

std::optional<RatFunc> ratfunc_sqrt(const RatFunc& f) {
    auto n = poly_sqrt(f.num());
    if (!n) return std::nullopt;
    auto d = poly_sqrt(f.den());
    if (!d) return std::nullopt;
    return RatFunc(*n, *d);
}

std::optional<SectionPoint> preimage_point(const TwoIsogeny& iso, const SectionPoint& q) {
    if (!on_curve(iso.target, q)) throw PointNotOnCurve();
    if (q.zero) return SectionPoint::at_infinity();
    const RatFunc a(iso.source.ext_a());
    const RatFunc b(iso.source.ext_b());
    // x + a + b/x = X_q: quadratic in x with discriminant (X_q - a)^2 - 4b.
    const RatFunc shifted = q.x - a;
    const auto root = ratfunc_sqrt(shifted * shifted - RatFunc(4L) * b);
    if (!root) return std::nullopt;
    const RatFunc half(make_rat(1, 2));
    for (const RatFunc& s : {*root, -*root}) {
        const RatFunc x = half * (shifted + s);
        if (x.is_zero()) continue;
        const RatFunc rhs = x * x * x + a * x * x + b * x;
        const auto y = ratfunc_sqrt(rhs);
        if (!y) continue;
        for (const RatFunc& yy : {*y, -*y}) {
            SectionPoint cand = SectionPoint::affine(x, yy);
            if (map_point(iso, cand) == q) return cand;
        }
    }
    return std::nullopt;
}

std::vector<KodairaFiber> classify_quotient(const TwoIsogeny& iso) {
    try {
        return kodaira_classify(iso.target);
    } catch (const NonMinimalModel&) {
        return kodaira_classify(minimalize(iso.target));
    }
}

} // namespace sik3
