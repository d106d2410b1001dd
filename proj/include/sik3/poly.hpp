#pragma once

// Dense univariate polynomials over Q, ascending coefficient order.
// The zero polynomial is the empty coefficient list (degree -1).

#include <initializer_list>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sik3/rational.hpp"

namespace sik3 {

class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { normalize(); }
    Poly(std::initializer_list<Rat> coeffs) : c_(coeffs) { normalize(); }
    explicit Poly(const Rat& constant) : c_{constant} { normalize(); }
    explicit Poly(long constant) : c_{Rat(constant)} { normalize(); }

    static Poly monomial(int deg, const Rat& coeff = Rat(1));
    // The variable t itself.
    static Poly t() { return monomial(1); }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; } // -1 for zero
    const Rat& lc() const;
    Rat coeff(int i) const { return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[i] : Rat(0); }
    const std::vector<Rat>& coeffs() const { return c_; }

    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator*(const Rat& s, const Poly& p);
    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

    // Euclidean division: *this = q*d + r with deg r < deg d.  Throws on d = 0.
    std::pair<Poly, Poly> divrem(const Poly& d) const;
    // Exact division; throws if the remainder is nonzero.
    Poly exact_div(const Poly& d) const;

    Poly derivative() const;
    Poly monic() const;
    Poly pow(unsigned long e) const;
    Rat eval(const Rat& x) const;
    // a(t + r): Taylor shift by Horner.
    Poly taylor_shift(const Rat& r) const;
    // s^w * a(1/s); requires deg <= w.
    Poly reverse_weighted(int w) const;

    // Exact multiplicity of the factor g (deg g >= 1) in *this.
    int multiplicity(const Poly& g) const;

    std::string str(const std::string& var = "t") const;

private:
    void normalize();
    std::vector<Rat> c_;
};

Poly gcd(const Poly& a, const Poly& b); // monic gcd, gcd(0,0) = 0

// f = lc * prod g_i^{m_i}, g_i monic squarefree pairwise coprime, m_i strictly increasing.
std::vector<std::pair<Poly, int>> squarefree_decompose(const Poly& f);

// g with g^2 = f over Q, if one exists.
std::optional<Poly> poly_sqrt(const Poly& f);

// All rational roots with multiplicity, sorted ascending.
std::vector<Rat> rational_roots(const Poly& f);

// Parsing / serialization: comma-separated rationals, ascending degree.
Poly parse_poly(const std::string& csv);
std::vector<std::string> poly_to_strings(const Poly& p);

} // namespace sik3
