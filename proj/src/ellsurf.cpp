#include "sik3/ellsurf.hpp"

#include <algorithm>
#include <climits>

namespace sik3 {

namespace {

constexpr long kValInf = LONG_MAX / 4;

} // namespace

// ---------------------------------------------------------------------------
// Weierstrass models

WeierstrassModel::WeierstrassModel(Shape s, Poly p2, Poly p4, Poly p6)
    : shape_(s), p2_(std::move(p2)), p4_(std::move(p4)), p6_(std::move(p6)) {
    if (p2_.degree() > 4 || p4_.degree() > 8 || p6_.degree() > 12)
        throw InvalidParameter("coefficient degrees exceed the K3 chart (4, 8, 12)");
    const Poly b2 = 4 * p2_;
    const Poly b4 = 2 * p4_;
    const Poly b6 = 4 * p6_;
    const Poly b8 = 4 * p2_ * p6_ - p4_ * p4_;
    disc_ = -(b2 * b2 * b8) - Rat(8) * b4.pow(3) - Rat(27) * b6 * b6 + Rat(9) * b2 * b4 * b6;
    if (disc_.is_zero()) throw DegenerateCurve("vanishing discriminant");
}

WeierstrassModel WeierstrassModel::extended(Poly a, Poly b) {
    return WeierstrassModel(Shape::Extended, std::move(a), std::move(b), Poly());
}

WeierstrassModel WeierstrassModel::short_form(Poly a4, Poly b6) {
    return WeierstrassModel(Shape::Short, Poly(), std::move(a4), std::move(b6));
}

WeierstrassModel WeierstrassModel::general(Poly p2, Poly p4, Poly p6) {
    return WeierstrassModel(Shape::Cubic, std::move(p2), std::move(p4), std::move(p6));
}

const Poly& WeierstrassModel::ext_a() const {
    if (shape_ != Shape::Extended) throw Error("model is not in extended form");
    return p2_;
}

const Poly& WeierstrassModel::ext_b() const {
    if (shape_ != Shape::Extended) throw Error("model is not in extended form");
    return p4_;
}

Poly WeierstrassModel::c4() const { return 16 * p2_ * p2_ - 48 * p4_; }

Poly WeierstrassModel::c6() const {
    return Rat(-64) * p2_.pow(3) + Rat(288) * p2_ * p4_ - Rat(864) * p6_;
}

RatFunc WeierstrassModel::j_invariant() const { return RatFunc(c4().pow(3), disc_); }

WeierstrassModel from_cubic(const Poly& c3, const Poly& c2, const Poly& c1, const Poly& c0) {
    if (!c0.is_zero()) throw NonzeroConstantTerm(c0.str());
    if (c3.is_zero()) throw DegenerateLeadingCoefficient();
    return WeierstrassModel::extended(c2, c1 * c3);
}

// ---------------------------------------------------------------------------
// Section points and the group law

bool on_curve(const WeierstrassModel& w, const SectionPoint& p) {
    if (p.zero) return true;
    const RatFunc x = p.x, y = p.y;
    RatFunc rhs = x * x * x + RatFunc(w.p2()) * x * x + RatFunc(w.p4()) * x + RatFunc(w.p6());
    return y * y == rhs;
}

SectionPoint point_neg(const WeierstrassModel& w, const SectionPoint& p) {
    (void)w;
    if (p.zero) return p;
    return SectionPoint::affine(p.x, -p.y);
}

SectionPoint point_add(const WeierstrassModel& w, const SectionPoint& p, const SectionPoint& q) {
    if (!on_curve(w, p) || !on_curve(w, q)) throw PointNotOnCurve();
    if (p.zero) return q;
    if (q.zero) return p;
    RatFunc lambda;
    if (p.x == q.x) {
        if (p.y == -q.y) return SectionPoint::at_infinity();
        // tangent
        const RatFunc num = RatFunc(Poly(3)) * p.x * p.x + RatFunc(2 * w.p2()) * p.x + RatFunc(w.p4());
        lambda = num / (RatFunc(Poly(2)) * p.y);
    } else {
        lambda = (q.y - p.y) / (q.x - p.x);
    }
    RatFunc x3 = lambda * lambda - RatFunc(w.p2()) - p.x - q.x;
    RatFunc y3 = -(p.y + lambda * (x3 - p.x));
    return SectionPoint::affine(std::move(x3), std::move(y3));
}

SectionPoint point_double(const WeierstrassModel& w, const SectionPoint& p) {
    return point_add(w, p, p);
}

// ---------------------------------------------------------------------------
// Kodaira fibres

std::string KodairaFiber::type_str() const {
    switch (kind) {
    case FiberKind::In: return "I" + std::to_string(n);
    case FiberKind::Instar: return "I" + std::to_string(n) + "*";
    case FiberKind::II: return "II";
    case FiberKind::III: return "III";
    case FiberKind::IV: return "IV";
    case FiberKind::IVstar: return "IV*";
    case FiberKind::IIIstar: return "III*";
    case FiberKind::IIstar: return "II*";
    }
    return "?";
}

int KodairaFiber::root_rank() const {
    switch (kind) {
    case FiberKind::In: return n >= 2 ? n - 1 : 0;
    case FiberKind::Instar: return n + 4;
    case FiberKind::II: return 0;
    case FiberKind::III: return 1;
    case FiberKind::IV: return 2;
    case FiberKind::IVstar: return 6;
    case FiberKind::IIIstar: return 7;
    case FiberKind::IIstar: return 8;
    }
    return 0;
}

std::string KodairaFiber::root_label() const {
    switch (kind) {
    case FiberKind::In: return n >= 2 ? "A" + std::to_string(n - 1) : "";
    case FiberKind::Instar: return "D" + std::to_string(n + 4);
    case FiberKind::II: return "";
    case FiberKind::III: return "A1";
    case FiberKind::IV: return "A2";
    case FiberKind::IVstar: return "E6";
    case FiberKind::IIIstar: return "E7";
    case FiberKind::IIstar: return "E8";
    }
    return "";
}

Int KodairaFiber::root_disc() const {
    switch (kind) {
    case FiberKind::In: return Int(n >= 1 ? n : 1);
    case FiberKind::Instar: return Int(4);
    case FiberKind::III: return Int(2);
    case FiberKind::IV: return Int(3);
    case FiberKind::IVstar: return Int(3);
    case FiberKind::IIIstar: return Int(2);
    case FiberKind::IIstar: return Int(1);
    case FiberKind::II: return Int(1);
    }
    return Int(1);
}

namespace {

long euler_of(FiberKind kind, int n) {
    switch (kind) {
    case FiberKind::In: return n;
    case FiberKind::Instar: return n + 6;
    case FiberKind::II: return 2;
    case FiberKind::III: return 3;
    case FiberKind::IV: return 4;
    case FiberKind::IVstar: return 8;
    case FiberKind::IIIstar: return 9;
    case FiberKind::IIstar: return 10;
    }
    return 0;
}

KodairaFiber classify_local(const Place& place, long vc4, long vc6, long vd) {
    KodairaFiber f;
    f.place = place;
    f.count = place.at_infinity ? 1 : place.g.degree();
    if (vc4 == 0) {
        f.kind = FiberKind::In;
        f.n = static_cast<int>(vd);
    } else if (vc4 >= 4 && vd >= 12) {
        throw NonMinimalModel("at place " + place.str());
    } else if (vd == 2) {
        f.kind = FiberKind::II;
    } else if (vd == 3) {
        f.kind = FiberKind::III;
    } else if (vd == 4) {
        f.kind = FiberKind::IV;
    } else if (vd == 6) {
        f.kind = FiberKind::Instar;
        f.n = 0;
    } else if (vc4 == 2 && vc6 == 3) {
        f.kind = FiberKind::Instar;
        f.n = static_cast<int>(vd - 6);
    } else if (vd == 8 && vc6 == 4) {
        f.kind = FiberKind::IVstar;
    } else if (vd == 9 && vc4 == 3) {
        f.kind = FiberKind::IIIstar;
    } else if (vd == 10 && vc6 == 5) {
        f.kind = FiberKind::IIstar;
    } else {
        throw Error("unclassifiable valuation triple (" + std::to_string(vc4) + "," +
                    std::to_string(vc6) + "," + std::to_string(vd) + ") at " + place.str());
    }
    f.euler = euler_of(f.kind, f.n);
    return f;
}

long poly_val_at(const Poly& p, const Poly& lin) {
    if (p.is_zero()) return kValInf;
    return p.multiplicity(lin);
}

} // namespace

std::vector<KodairaFiber> kodaira_classify(const WeierstrassModel& w) {
    const Poly delta = w.discriminant();
    const Poly c4 = w.c4();
    const Poly c6 = w.c6();
    std::vector<KodairaFiber> finite_rat, batches;

    if (delta.degree() >= 1) {
        for (const auto& [g, mult] : squarefree_decompose(delta)) {
            Poly rest = g;
            for (const Rat& r : rational_roots(g)) {
                const Poly lin = Poly::t() - Poly(r);
                rest = rest.exact_div(lin);
                const Place place = Place::rational(r);
                finite_rat.push_back(
                    classify_local(place, poly_val_at(c4, lin), poly_val_at(c6, lin), mult));
            }
            if (rest.degree() >= 1) {
                const Place place = Place::finite(rest);
                // Only multiplicative reduction is in scope off the rational
                // points; v(c4) = 0 there, so minimality is automatic.
                if (c4.is_zero() || gcd(c4, rest).degree() != 0)
                    throw AdditiveAtNonRationalPlace(place.str());
                KodairaFiber f;
                f.place = place;
                f.kind = FiberKind::In;
                f.n = mult;
                f.euler = mult;
                f.count = rest.degree();
                batches.push_back(f);
            }
        }
    }

    std::vector<KodairaFiber> out = std::move(finite_rat);
    // deterministic order: rational places by centre, then batches by degree
    std::sort(out.begin(), out.end(), [](const KodairaFiber& a, const KodairaFiber& b) {
        return a.place.g.coeff(0) > b.place.g.coeff(0); // t - r: constant is -r
    });
    std::sort(batches.begin(), batches.end(), [](const KodairaFiber& a, const KodairaFiber& b) {
        return a.place.g.degree() < b.place.g.degree();
    });
    for (auto& f : batches) out.push_back(std::move(f));

    const long vd_inf = 24 - delta.degree();
    if (vd_inf < 0) throw Error("discriminant degree exceeds 24");
    if (vd_inf > 0) {
        const long vc4_inf = c4.is_zero() ? kValInf : 8 - c4.degree();
        const long vc6_inf = c6.is_zero() ? kValInf : 12 - c6.degree();
        out.push_back(classify_local(Place::infinity(), vc4_inf, vc6_inf, vd_inf));
    }
    return out;
}

long euler_number(const std::vector<KodairaFiber>& fibers) {
    long sum = 0;
    for (const auto& f : fibers) sum += f.euler * f.count;
    return sum;
}

Lattice trivial_lattice(const std::vector<KodairaFiber>& fibers) {
    std::vector<std::pair<int, std::string>> parts; // (rank, label) per reducible fibre
    for (const auto& f : fibers)
        for (int i = 0; f.root_rank() > 0 && i < f.count; ++i)
            parts.emplace_back(f.root_rank(), f.root_label());
    std::sort(parts.begin(), parts.end(), [](const auto& a, const auto& b) {
        return a.first != b.first ? a.first > b.first : a.second < b.second;
    });
    Lattice acc = lat_U();
    std::string label = "U";
    for (const auto& [rank, name] : parts) {
        acc = direct_sum(acc, named_lattice(name));
        label += "+" + name;
    }
    return acc.relabel(label);
}

// ---------------------------------------------------------------------------
// Truncated power series at a rational place

namespace {

struct Series {
    std::vector<Rat> c; // coefficients 0 .. prec-1

    explicit Series(int prec) : c(static_cast<std::size_t>(prec), Rat(0)) {}
    int prec() const { return static_cast<int>(c.size()); }
    long val() const {
        for (std::size_t i = 0; i < c.size(); ++i)
            if (c[i] != 0) return static_cast<long>(i);
        return kValInf;
    }
    Rat at(int i) const { return c[static_cast<std::size_t>(i)]; }
};

Series series_from_poly(const Poly& p, int prec) {
    Series s(prec);
    for (int i = 0; i < prec; ++i) s.c[static_cast<std::size_t>(i)] = p.coeff(i);
    return s;
}

Series series_add(const Series& a, const Series& b) {
    Series s(a.prec());
    for (int i = 0; i < a.prec(); ++i)
        s.c[static_cast<std::size_t>(i)] = a.at(i) + b.at(i);
    return s;
}

Series series_sub(const Series& a, const Series& b) {
    Series s(a.prec());
    for (int i = 0; i < a.prec(); ++i)
        s.c[static_cast<std::size_t>(i)] = a.at(i) - b.at(i);
    return s;
}

Series series_mul(const Series& a, const Series& b) {
    Series s(a.prec());
    for (int i = 0; i < a.prec(); ++i) {
        if (a.at(i) == 0) continue;
        for (int j = 0; i + j < a.prec(); ++j)
            if (b.at(j) != 0) s.c[static_cast<std::size_t>(i + j)] += a.at(i) * b.at(j);
    }
    return s;
}

Series series_scale(const Rat& r, const Series& a) {
    Series s(a.prec());
    for (int i = 0; i < a.prec(); ++i) s.c[static_cast<std::size_t>(i)] = r * a.at(i);
    return s;
}

Series series_add_const(const Series& a, const Rat& r) {
    Series s = a;
    s.c[0] += r;
    return s;
}

// a / u with u a unit (u(0) != 0).
Series series_div(const Series& a, const Series& u) {
    if (u.at(0) == 0) throw Error("series division by a non-unit");
    Series d(a.prec());
    for (int k = 0; k < a.prec(); ++k) {
        Rat acc = a.at(k);
        for (int j = 1; j <= k; ++j) acc -= u.at(j) * d.at(k - j);
        d.c[static_cast<std::size_t>(k)] = acc / u.at(0);
    }
    return d;
}

// Local data of the model at a rational place (finite r, or infinity in the
// weighted chart).
struct LocalModel {
    int prec;
    bool at_inf = false;
    Rat centre;
    Series a2, a4, a6;

    LocalModel(const WeierstrassModel& w, const Place& place, int precision)
        : prec(precision), a2(precision), a4(precision), a6(precision) {
        if (place.at_infinity) {
            at_inf = true;
            centre = 0;
            a2 = series_from_poly(w.p2().reverse_weighted(4), prec);
            a4 = series_from_poly(w.p4().reverse_weighted(8), prec);
            a6 = series_from_poly(w.p6().reverse_weighted(12), prec);
        } else {
            if (place.g.degree() != 1) throw NonRationalPlace(place.str());
            centre = -place.g.coeff(0);
            a2 = series_from_poly(w.p2().taylor_shift(centre), prec);
            a4 = series_from_poly(w.p4().taylor_shift(centre), prec);
            a6 = series_from_poly(w.p6().taylor_shift(centre), prec);
        }
    }

    // Local expansion of a section coordinate; requires no pole at the place.
    Series expand(const RatFunc& f, int weight) const {
        RatFunc g = at_inf ? f.infinity_chart(weight) : f;
        const Poly num = at_inf ? g.num() : g.num().taylor_shift(centre);
        const Poly den = at_inf ? g.den() : g.den().taylor_shift(centre);
        if (den.coeff(0) == 0) throw Error("pole at the place in local expansion");
        return series_div(series_from_poly(num, prec), series_from_poly(den, prec));
    }
};

// f = (x^2 + alpha x + beta)(x + gamma) with alpha, beta in (tau); needs the
// node at the origin: a4, a6 = 0 mod tau and a2(0) != 0.
void hensel_split(const LocalModel& m, Series& alpha, Series& beta, Series& gamma) {
    const int prec = m.prec;
    alpha = Series(prec);
    beta = Series(prec);
    gamma = Series(prec);
    const Rat g0 = m.a2.at(0);
    if (g0 == 0 || m.a4.at(0) != 0 || m.a6.at(0) != 0)
        throw Error("hensel_split requires a node at the origin");
    gamma.c[0] = g0;
    for (int k = 1; k < prec; ++k) {
        // beta gamma = a6, beta + alpha gamma = a4, alpha + gamma = a2.
        Rat acc6 = m.a6.at(k);
        for (int j = 1; j < k; ++j) acc6 -= beta.at(j) * gamma.at(k - j);
        const Rat bk = acc6 / g0;
        Rat acc4 = m.a4.at(k) - bk;
        for (int j = 1; j < k; ++j) acc4 -= alpha.at(j) * gamma.at(k - j);
        const Rat ak = acc4 / g0;
        beta.c[static_cast<std::size_t>(k)] = bk;
        alpha.c[static_cast<std::size_t>(k)] = ak;
        gamma.c[static_cast<std::size_t>(k)] = m.a2.at(k) - ak;
    }
}

// Double root of the reduced cubic x^3 + p x^2 + q x + r (node case).
Rat node_x_of(const Rat& p, const Rat& q, const Rat& r) {
    const Rat den = 6 * q - 2 * p * p;
    if (den == 0) throw Error("node formula degenerates (triple root)");
    return (p * q - 9 * r) / den;
}

// Singular x of the reduced fibre, or nullopt for a smooth cubic.
std::optional<Rat> singular_x(FiberKind kind, const Rat& p, const Rat& q, const Rat& r) {
    if (kind == FiberKind::In) return node_x_of(p, q, r);
    return -p / 3; // additive: triple root
}

} // namespace

int component_index(const WeierstrassModel& w, const SectionPoint& p, const KodairaFiber& fiber) {
    if (p.zero) return 0;
    if (!fiber.place.is_rational() || fiber.count != 1) throw NonRationalPlace(fiber.place.str());
    if (fiber.kind == FiberKind::In && fiber.n <= 1) return 0;
    if (fiber.kind == FiberKind::II || fiber.kind == FiberKind::IIstar) return 0;

    // A pole of the chart coordinate of x(P) means P passes through the smooth
    // point at infinity of the Weierstrass fibre: the identity component.
    if (!p.x.is_zero()) {
        const long weight = fiber.place.at_infinity ? 4 : 0;
        if (valuation(p.x, fiber.place) + weight < 0) return 0;
    }

    const int n = fiber.kind == FiberKind::In ? fiber.n : 0;
    const int prec = std::max(n + 6, 12);
    LocalModel lm(w, fiber.place, prec);
    Series sx = lm.expand(p.x, 4);
    Series sy = p.y.is_zero() ? Series(prec) : lm.expand(p.y, 6);

    const auto x0 = singular_x(fiber.kind, lm.a2.at(0), lm.a4.at(0), lm.a6.at(0));
    if (sx.at(0) != *x0 || sy.at(0) != 0) return 0; // reduces to a smooth fibre point

    if (fiber.kind != FiberKind::In)
        throw Error("component tracking through additive singular points is not implemented");

    // Shift the node to the origin.
    LocalModel sh = lm;
    const Rat c = *x0;
    sh.a6 = series_add_const(series_add(lm.a6, series_add(series_scale(c, lm.a4),
                                                          series_scale(c * c, lm.a2))),
                             c * c * c);
    sh.a4 = series_add_const(series_add(lm.a4, series_scale(2 * c, lm.a2)), 3 * c * c);
    sh.a2 = series_add_const(lm.a2, 3 * c);
    Series sxs = series_add_const(sx, -c);

    Series alpha(prec), beta(prec), gamma(prec);
    hensel_split(sh, alpha, beta, gamma);
    const Series e = series_sub(beta, series_scale(make_rat(1, 4), series_mul(alpha, alpha)));
    if (e.val() != n)
        throw Error("I_n split inconsistency: v(E) = " + std::to_string(e.val()) +
                    " expected " + std::to_string(n));
    // y^2 = (X^2 + E) * unit with X = x + alpha/2; the component index is
    // min(v(y), v(X), n/2) up to inversion.
    const long vy = sy.val() >= prec ? kValInf : sy.val();
    const Series xs = series_add(sxs, series_scale(make_rat(1, 2), alpha));
    const long vx = xs.val() >= prec ? kValInf : xs.val();
    long jt = std::min({2 * vy, 2 * vx, static_cast<long>(n)});
    if (jt % 2 != 0) throw Error("odd branch valuation in I_n component tracking");
    return static_cast<int>(jt / 2);
}

Rat fiber_contribution(const KodairaFiber& fiber, int comp) {
    if (comp == 0) return Rat(0);
    switch (fiber.kind) {
    case FiberKind::In:
        if (comp < 0 || comp >= fiber.n) throw InvalidParameter("I_n component out of range");
        return make_rat(static_cast<long>(comp) * (fiber.n - comp), fiber.n);
    case FiberKind::Instar:
        if (comp == 1) return Rat(1);
        if (comp == 2 || comp == 3) return Rat(1) + make_rat(fiber.n, 4);
        break;
    case FiberKind::III:
        if (comp == 1) return make_rat(1, 2);
        break;
    case FiberKind::IV:
        if (comp == 1 || comp == 2) return make_rat(2, 3);
        break;
    case FiberKind::IVstar:
        if (comp == 1 || comp == 2) return make_rat(4, 3);
        break;
    case FiberKind::IIIstar:
        if (comp == 1) return make_rat(3, 2);
        break;
    default: break;
    }
    throw InvalidParameter("component id " + std::to_string(comp) + " invalid for " +
                           fiber.type_str());
}

Rat fiber_contribution_pair(const KodairaFiber& fiber, int ci, int cj) {
    if (ci == 0 || cj == 0) return Rat(0);
    if (ci == cj) return fiber_contribution(fiber, ci);
    int i = std::min(ci, cj), j = std::max(ci, cj);
    switch (fiber.kind) {
    case FiberKind::In:
        return make_rat(static_cast<long>(i) * (fiber.n - j), fiber.n);
    case FiberKind::Instar:
        if (j == 1) break;
        if (i == 1) return make_rat(1, 2);                       // near vs far
        return make_rat(1, 2) + make_rat(fiber.n, 4);            // the two far ends
    case FiberKind::IV:
        return make_rat(1, 3);
    case FiberKind::IVstar:
        return make_rat(2, 3);
    default: break;
    }
    throw InvalidParameter("component pair invalid for " + fiber.type_str());
}

Int intersection_with_zero(const WeierstrassModel& w, const SectionPoint& p) {
    (void)w;
    if (p.zero) return Int(0);
    Rat total(0);
    const Poly& den = p.x.den();
    if (den.degree() >= 1) {
        for (const auto& [g, mult] : squarefree_decompose(den)) {
            if (mult % 2 != 0)
                throw Error("odd pole order of x(P): not a section of the minimal model");
            total += Rat(g.degree()) * make_rat(mult, 2);
        }
    }
    const int d = p.x.is_zero() ? 0 : p.x.degree();
    if (d > 4) {
        if ((d - 4) % 2 != 0)
            throw Error("odd pole order of x(P) at infinity: not a section of the minimal model");
        total += make_rat(d - 4, 2);
    }
    return Int(total.get_num());
}

namespace {

// Contribution of one fibre entry (including non-rational batches) to h(P).
Rat contribution_of(const WeierstrassModel& w, const SectionPoint& p, const KodairaFiber& f) {
    if (f.root_rank() == 0 && !(f.kind == FiberKind::In && f.n >= 2)) return Rat(0);
    if (f.count == 1) {
        const int idx = component_index(w, p, f);
        return fiber_contribution(f, idx);
    }
    // batch of I_n fibres over a squarefree non-rational place
    if (f.kind != FiberKind::In) throw AdditiveAtNonRationalPlace(f.place.str());
    if (f.n <= 1) return Rat(0);
    const Poly& g = f.place.g;
    // nodes sit at x0(t); P hits one iff x - x0 and y vanish there
    const Poly& q2 = w.p2();
    const Poly& q4 = w.p4();
    const Poly& q6 = w.p6();
    const RatFunc x0(q2 * q4 - 9 * q6, 6 * q4 - 2 * q2 * q2);
    const RatFunc diff = p.x - x0;
    Poly hit = gcd(g, diff.num());
    hit = gcd(hit, p.y.num());
    if (hit.degree() == 0) return Rat(0);
    if (f.n != 2)
        throw NonRationalPlace("section meets nodes of I_" + std::to_string(f.n) +
                               " over " + f.place.str());
    return Rat(hit.degree()) * make_rat(1, 2); // middle component of I_2 per root
}

} // namespace

Rat height(const WeierstrassModel& w, const SectionPoint& p) {
    if (p.zero) return Rat(0);
    if (!on_curve(w, p)) throw PointNotOnCurve();
    const auto fibers = kodaira_classify(w);
    Rat h = Rat(4) + 2 * Rat(intersection_with_zero(w, p));
    for (const auto& f : fibers) h -= contribution_of(w, p, f);
    return h;
}

Rat height_pairing(const WeierstrassModel& w, const SectionPoint& p, const SectionPoint& q) {
    const SectionPoint sum = point_add(w, p, q);
    return (height(w, sum) - height(w, p) - height(w, q)) / 2;
}

Rat ns_disc(const std::vector<KodairaFiber>& fibers, const RatMat& height_gram,
            const Int& torsion_order) {
    if (torsion_order < 1) throw InvalidParameter("torsion order must be positive");
    Rat prod(1);
    for (const auto& f : fibers)
        for (int i = 0; i < f.count; ++i) prod *= Rat(f.root_disc());
    Rat det(1);
    if (!height_gram.empty()) {
        det = rat_det(height_gram);
        if (det == 0) throw SingularHeightGram();
    }
    return prod * det / Rat(torsion_order * torsion_order);
}

SectionSpec section_spec(const WeierstrassModel& w, const std::vector<KodairaFiber>& fibers,
                         const SectionPoint& p) {
    SectionSpec spec;
    spec.height = height(w, p);
    spec.po = intersection_with_zero(w, p);
    for (std::size_t i = 0; i < fibers.size(); ++i) {
        const auto& f = fibers[i];
        if (f.root_rank() == 0) continue;
        if (f.count != 1) {
            if (contribution_of(w, p, f) != 0)
                throw InconsistentData("section meets non-rational fibre components");
            continue;
        }
        spec.comps[i] = component_index(w, p, f);
    }
    return spec;
}

// ---------------------------------------------------------------------------
// Neron-Severi Gram assembly

namespace {

Lattice fiber_root_lattice(const KodairaFiber& f) { return named_lattice(f.root_label()); }

// Basis node for a component id inside the fibre root block, matched through
// the diagonal of the inverse (positive) Cartan matrix.
int node_for_component(const KodairaFiber& f, int id, const Lattice& root) {
    if (f.kind == FiberKind::In) return id - 1;
    const Rat want = fiber_contribution(f, id);
    RatMat cartan = to_rat(root.gram());
    for (auto& row : cartan)
        for (auto& x : row) x = -x;
    const RatMat inv = rat_inverse(std::move(cartan));
    std::vector<int> hits;
    for (std::size_t k = 0; k < inv.size(); ++k)
        if (inv[k][k] == want) hits.push_back(static_cast<int>(k));
    if (hits.empty()) throw InconsistentData("no root node matches the correction term");
    int occurrence = 0;
    if (f.kind == FiberKind::IVstar) occurrence = id - 1;      // ids 1,2
    if (f.kind == FiberKind::Instar && id >= 2) occurrence = id - 2; // ids 2,3
    if (occurrence >= static_cast<int>(hits.size()))
        throw InconsistentData("not enough matching root nodes");
    return hits[static_cast<std::size_t>(occurrence)];
}

} // namespace

Lattice ns_gram(const std::vector<KodairaFiber>& fibers, const std::vector<SectionSpec>& sections,
                const std::vector<SectionSpec>& torsion, const RatMat& pairing) {
    std::vector<std::size_t> red; // indices of reducible fibres
    for (std::size_t i = 0; i < fibers.size(); ++i) {
        if (fibers[i].root_rank() == 0) continue;
        if (fibers[i].count != 1)
            throw InconsistentData("reducible fibre over a non-rational place");
        red.push_back(i);
    }
    std::map<std::size_t, std::size_t> block_of; // fibre index -> basis offset
    std::size_t dim = 2;
    std::vector<Lattice> roots;
    for (std::size_t idx : red) {
        block_of[idx] = dim;
        roots.push_back(fiber_root_lattice(fibers[idx]));
        dim += static_cast<std::size_t>(fibers[idx].root_rank());
    }
    const std::size_t sec0 = dim;
    dim += sections.size();

    // Section heights must be consistent with their component data.
    auto check_height = [&](const SectionSpec& s, bool is_torsion) {
        Rat h = Rat(4) + 2 * Rat(s.po);
        for (const auto& [fi, id] : s.comps) h -= fiber_contribution(fibers.at(fi), id);
        const Rat expect = is_torsion ? Rat(0) : s.height;
        if (h != expect)
            throw InconsistentData("section height inconsistent with component data: " +
                                   rat_str(h) + " vs " + rat_str(expect));
    };
    for (const auto& s : sections) check_height(s, false);
    for (const auto& t : torsion) check_height(t, true);

    RatMat pair = pairing;
    if (pair.empty()) {
        pair.assign(sections.size(), RatVec(sections.size(), Rat(0)));
        for (std::size_t i = 0; i < sections.size(); ++i) pair[i][i] = sections[i].height;
    }

    IntMat g(dim, IntVec(dim, Int(0)));
    g[0][0] = -2; // O
    g[0][1] = 1;  // O.F
    g[1][0] = 1;
    for (std::size_t b = 0; b < red.size(); ++b) {
        const std::size_t off = block_of[red[b]];
        const auto& rg = roots[b].gram();
        for (std::size_t i = 0; i < rg.size(); ++i)
            for (std::size_t j = 0; j < rg.size(); ++j) g[off + i][off + j] = rg[i][j];
    }
    auto fill_section_row = [&](std::size_t row, const SectionSpec& s) {
        g[row][row] = -2;
        g[row][0] = s.po;
        g[0][row] = s.po;
        g[row][1] = 1;
        g[1][row] = 1;
        for (const auto& [fi, id] : s.comps) {
            if (id == 0) continue;
            const auto it = block_of.find(fi);
            if (it == block_of.end()) throw InconsistentData("component on an irreducible fibre");
            std::size_t b = 0;
            while (red[b] != fi) ++b;
            const std::size_t node =
                it->second + static_cast<std::size_t>(node_for_component(fibers[fi], id, roots[b]));
            g[row][node] = 1;
            g[node][row] = 1;
        }
    };
    for (std::size_t si = 0; si < sections.size(); ++si) fill_section_row(sec0 + si, sections[si]);
    for (std::size_t si = 0; si < sections.size(); ++si)
        for (std::size_t sj = si + 1; sj < sections.size(); ++sj) {
            Rat contr(0);
            for (const auto& [fi, idi] : sections[si].comps) {
                const auto jt = sections[sj].comps.find(fi);
                if (jt != sections[sj].comps.end())
                    contr += fiber_contribution_pair(fibers[fi], idi, jt->second);
            }
            const Rat val =
                Rat(2) + Rat(sections[si].po) + Rat(sections[sj].po) - pair[si][sj] - contr;
            if (!is_integer(val))
                throw InconsistentData("non-integral section intersection number");
            g[sec0 + si][sec0 + sj] = Int(val.get_num());
            g[sec0 + sj][sec0 + si] = g[sec0 + si][sec0 + sj];
        }

    Lattice base(std::move(g), "NS-base");

    // Torsion sections enter as glue vectors determined by their pairings.
    std::vector<GlueVector> glues;
    Int torsion_order(1);
    for (const auto& t : torsion) {
        RatVec pi(dim, Rat(0));
        pi[0] = Rat(t.po);
        pi[1] = 1;
        for (const auto& [fi, id] : t.comps) {
            if (id == 0) continue;
            std::size_t b = 0;
            while (red[b] != fi) ++b;
            pi[block_of[fi] + static_cast<std::size_t>(node_for_component(fibers[fi], id, roots[b]))] =
                1;
        }
        for (std::size_t si = 0; si < sections.size(); ++si) {
            Rat contr(0);
            for (const auto& [fi, idt] : t.comps) {
                const auto jt = sections[si].comps.find(fi);
                if (jt != sections[si].comps.end())
                    contr += fiber_contribution_pair(fibers[fi], idt, jt->second);
            }
            const Rat val = Rat(2) + Rat(t.po) + Rat(sections[si].po) - contr;
            if (!is_integer(val)) throw InconsistentData("non-integral torsion intersection");
            pi[sec0 + si] = val;
        }
        RatVec tv = rat_solve(to_rat(base.gram()), pi);
        Rat selfint(0);
        for (std::size_t i = 0; i < dim; ++i) selfint += pi[i] * tv[i];
        if (selfint != -2) throw InconsistentData("torsion class has self-intersection != -2");
        const auto [ord, qv] = disc_form_eval(base, tv);
        if (ord == 1) throw InconsistentData("torsion class already lies in the base lattice");
        (void)qv;
        torsion_order *= ord;
        glues.push_back(std::move(tv));
    }
    Lattice ns = glues.empty() ? base : overlattice(base, glues);

    const Rat predicted = ns_disc(fibers, pair, torsion_order);
    if (abs(Rat(ns.disc())) != abs(predicted))
        throw InconsistentData("Gram determinant disagrees with the Shioda-Tate discriminant: " +
                               int_str(ns.disc()) + " vs " + rat_str(predicted));
    return ns.relabel("NS");
}

// ---------------------------------------------------------------------------
// Minimalization at rational places

namespace {

WeierstrassModel shift_x(const WeierstrassModel& w, const Poly& s) {
    // x -> x + s
    const Poly p2 = w.p2() + 3 * s;
    const Poly p4 = w.p4() + 2 * s * w.p2() + 3 * s * s;
    const Poly p6 = w.p6() + s * w.p4() + s * s * w.p2() + s.pow(3);
    return WeierstrassModel::general(p2, p4, p6);
}

WeierstrassModel chart_swap(const WeierstrassModel& w) {
    return WeierstrassModel::general(w.p2().reverse_weighted(4), w.p4().reverse_weighted(8),
                                     w.p6().reverse_weighted(12));
}

bool nonminimal_at(const WeierstrassModel& w, const Rat& r) {
    const Poly lin = Poly::t() - Poly(r);
    const long vd = poly_val_at(w.discriminant(), lin);
    const long vc4 = poly_val_at(w.c4(), lin);
    return vc4 >= 4 && vd >= 12;
}

WeierstrassModel reduce_at_zero(const WeierstrassModel& w) {
    // assumes non-minimality at t = 0
    const Poly t = Poly::t();
    WeierstrassModel m = w;
    const Rat x0 = -m.p2().eval(Rat(0)) / 3;
    if (x0 != 0) m = shift_x(m, Poly(x0));
    const Rat x1 = -m.p2().coeff(1) / 3;
    if (x1 != 0) m = shift_x(m, Poly{Rat(0), x1});
    const Poly t2 = t * t;
    return WeierstrassModel::general(m.p2().exact_div(t2), m.p4().exact_div(t2 * t2),
                                     m.p6().exact_div(t2 * t2 * t2));
}

} // namespace

WeierstrassModel minimalize(const WeierstrassModel& w) {
    WeierstrassModel m = w;
    for (int pass = 0;; ++pass) {
        if (pass > 8)
            throw Error("minimal model search did not converge: not a K3 chart");
        bool changed = false;
        const Poly delta = m.discriminant();
        if (delta.degree() >= 1) {
            for (const Rat& r : rational_roots(delta)) {
                if (!nonminimal_at(m, r)) continue;
                // translate the place to t = 0, reduce, translate back
                WeierstrassModel shifted = WeierstrassModel::general(
                    m.p2().taylor_shift(r), m.p4().taylor_shift(r), m.p6().taylor_shift(r));
                shifted = reduce_at_zero(shifted);
                m = WeierstrassModel::general(shifted.p2().taylor_shift(-r),
                                              shifted.p4().taylor_shift(-r),
                                              shifted.p6().taylor_shift(-r));
                changed = true;
                break;
            }
        }
        if (changed) continue;
        const long vd_inf = 24 - m.discriminant().degree();
        const long vc4_inf = m.c4().is_zero() ? kValInf : 8 - m.c4().degree();
        if (vd_inf >= 12 && vc4_inf >= 4) {
            m = chart_swap(reduce_at_zero(chart_swap(m)));
            continue;
        }
        break;
    }
    return m;
}

} // namespace sik3
