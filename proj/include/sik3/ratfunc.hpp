#pragma once

// Rational functions over Q(t) and places of P^1.
// Normal form: monic denominator, gcd(num, den) = 1.

#include <string>
#include <utility>

#include "sik3/poly.hpp"

namespace sik3 {

class RatFunc {
public:
    RatFunc() : num_(), den_(Poly(1)) {}
    RatFunc(Poly num, Poly den);
    explicit RatFunc(const Poly& p) : num_(p), den_(Poly(1)) {}
    explicit RatFunc(const Rat& r) : num_(Poly(r)), den_(Poly(1)) {}
    explicit RatFunc(long n) : num_(Poly(n)), den_(Poly(1)) {}

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.degree() == 0; }

    RatFunc operator-() const;
    friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
    friend bool operator==(const RatFunc& a, const RatFunc& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

    // deg num - deg den; throws on zero.
    int degree() const;
    Rat eval(const Rat& x) const; // throws Error on a pole

    // s^w * f(1/s): the weight-w infinity-chart transform.
    RatFunc infinity_chart(int w) const;

    std::string str(const std::string& var = "t") const;

private:
    Poly num_, den_;
};

struct Place {
    bool at_infinity = false;
    Poly g; // finite: monic squarefree, deg >= 1

    static Place infinity() { return Place{true, Poly()}; }
    static Place finite(const Poly& g);
    static Place rational(const Rat& r); // t - r

    bool is_rational() const { return at_infinity || g.degree() == 1; }
    std::string str() const;
};

// ord_v(f); at a reducible squarefree place the multiplicity must be uniform
// across the irreducible factors (detected through gcds).
long valuation(const RatFunc& f, const Place& v);
long valuation(const Poly& f, const Place& v);

RatFunc parse_ratfunc(const std::string& s); // "num" or "num:den" in csv coefficients

} // namespace sik3
