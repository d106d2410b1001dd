#include "sik3/ratfunc.hpp"

#include <sstream>

namespace sik3 {

RatFunc::RatFunc(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw ZeroInput("rational function with zero denominator");
    if (num_.is_zero()) {
        den_ = Poly(1);
        return;
    }
    const Poly g = gcd(num_, den_);
    if (g.degree() >= 1) {
        num_ = num_.exact_div(g);
        den_ = den_.exact_div(g);
    }
    const Rat l = den_.lc();
    num_ = (Rat(1) / l) * num_;
    den_ = (Rat(1) / l) * den_;
}

RatFunc RatFunc::operator-() const {
    RatFunc r = *this;
    r.num_ = -r.num_;
    return r;
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) {
    if (b.is_zero()) throw ZeroInput("division by zero rational function");
    return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
}

int RatFunc::degree() const {
    if (is_zero()) throw ZeroInput("degree of zero rational function");
    return num_.degree() - den_.degree();
}

Rat RatFunc::eval(const Rat& x) const {
    const Rat d = den_.eval(x);
    if (d == 0) throw Error("evaluation at a pole");
    return num_.eval(x) / d;
}

RatFunc RatFunc::infinity_chart(int w) const {
    if (is_zero()) return RatFunc();
    const int dn = num_.degree(), dd = den_.degree();
    const Poly rn = num_.reverse_weighted(dn);
    const Poly rd = den_.reverse_weighted(dd);
    const int e = w + dd - dn;
    if (e >= 0) return RatFunc(rn * Poly::monomial(e), rd);
    return RatFunc(rn, rd * Poly::monomial(-e));
}

std::string RatFunc::str(const std::string& var) const {
    if (is_polynomial()) return num_.str(var);
    return "(" + num_.str(var) + ")/(" + den_.str(var) + ")";
}

Place Place::finite(const Poly& g) {
    if (g.degree() < 1) throw Error("finite place needs degree >= 1");
    if (g.lc() != 1) throw Error("finite place polynomial must be monic");
    if (gcd(g, g.derivative()).degree() != 0) throw Error("finite place polynomial must be squarefree");
    return Place{false, g};
}

Place Place::rational(const Rat& r) { return finite(Poly::t() - Poly(r)); }

std::string Place::str() const {
    if (at_infinity) return "infinity";
    return g.str();
}

namespace {

// Uniform multiplicity of the squarefree g across a nonzero polynomial,
// with the mixed-multiplicity gcd test.
long uniform_multiplicity(const Poly& f, const Poly& g) {
    int m = f.multiplicity(g);
    Poly cof = f;
    for (int i = 0; i < m; ++i) cof = cof.exact_div(g);
    if (gcd(cof, g).degree() != 0)
        throw NonUniformValuation("factors of " + g.str() + " divide with mixed multiplicities");
    return m;
}

} // namespace

long valuation(const RatFunc& f, const Place& v) {
    if (f.is_zero()) throw ZeroInput("valuation of zero");
    if (v.at_infinity) return f.den().degree() - f.num().degree();
    long vn = uniform_multiplicity(f.num(), v.g);
    long vd = uniform_multiplicity(f.den(), v.g);
    return vn - vd;
}

long valuation(const Poly& f, const Place& v) { return valuation(RatFunc(f), v); }

// "num" or "num:den"; ':' separates so that coefficients may contain '/'.
RatFunc parse_ratfunc(const std::string& s) {
    const std::size_t sep = s.find(':');
    if (sep == std::string::npos) return RatFunc(parse_poly(s));
    return RatFunc(parse_poly(s.substr(0, sep)), parse_poly(s.substr(sep + 1)));
}

} // namespace sik3
