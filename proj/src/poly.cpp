#include "sik3/poly.hpp"

#include <algorithm>
#include <sstream>

#include "sik3/intutil.hpp"

namespace sik3 {

void Poly::normalize() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Poly Poly::monomial(int deg, const Rat& coeff) {
    if (coeff == 0 || deg < 0) return Poly();
    std::vector<Rat> c(static_cast<std::size_t>(deg) + 1, Rat(0));
    c.back() = coeff;
    return Poly(std::move(c));
}

const Rat& Poly::lc() const {
    if (c_.empty()) throw ZeroInput("leading coefficient of zero polynomial");
    return c_.back();
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

Poly& Poly::operator+=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rat(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    normalize();
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rat(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    normalize();
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<Rat> c(a.c_.size() + b.c_.size() - 1, Rat(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return Poly(std::move(c));
}

Poly operator*(const Rat& s, const Poly& p) {
    if (s == 0) return Poly();
    Poly r = p;
    for (auto& x : r.c_) x *= s;
    return r;
}

std::pair<Poly, Poly> Poly::divrem(const Poly& d) const {
    if (d.is_zero()) throw ZeroInput("division by zero polynomial");
    Poly r = *this;
    if (r.degree() < d.degree()) return {Poly(), r};
    std::vector<Rat> q(static_cast<std::size_t>(r.degree() - d.degree()) + 1, Rat(0));
    const Rat dl = d.lc();
    while (!r.is_zero() && r.degree() >= d.degree()) {
        const int k = r.degree() - d.degree();
        const Rat f = r.lc() / dl;
        q[static_cast<std::size_t>(k)] = f;
        r -= Poly::monomial(k, f) * d;
    }
    return {Poly(std::move(q)), r};
}

Poly Poly::exact_div(const Poly& d) const {
    auto [q, r] = divrem(d);
    if (!r.is_zero()) throw Error("inexact polynomial division");
    return q;
}

Poly Poly::derivative() const {
    if (c_.size() <= 1) return Poly();
    std::vector<Rat> c(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) c[i - 1] = Rat(static_cast<long>(i)) * c_[i];
    return Poly(std::move(c));
}

Poly Poly::monic() const {
    if (is_zero()) return *this;
    return (Rat(1) / lc()) * *this;
}

Poly Poly::pow(unsigned long e) const {
    Poly r(1);
    Poly base = *this;
    while (e > 0) {
        if (e & 1UL) r = r * base;
        base = base * base;
        e >>= 1UL;
    }
    return r;
}

Rat Poly::eval(const Rat& x) const {
    Rat acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

Poly Poly::taylor_shift(const Rat& r) const {
    // Horner: a(t+r) accumulated as poly in t.
    Poly acc;
    const Poly shift{r, Rat(1)};
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * shift + Poly(*it);
    return acc;
}

Poly Poly::reverse_weighted(int w) const {
    if (degree() > w) throw Error("reverse_weighted: degree exceeds weight");
    std::vector<Rat> c(static_cast<std::size_t>(w) + 1, Rat(0));
    for (std::size_t i = 0; i < c_.size(); ++i) c[static_cast<std::size_t>(w) - i] = c_[i];
    return Poly(std::move(c));
}

int Poly::multiplicity(const Poly& g) const {
    if (is_zero()) throw ZeroInput("multiplicity in zero polynomial");
    if (g.degree() < 1) throw Error("multiplicity of constant factor");
    int m = 0;
    Poly h = *this;
    for (;;) {
        auto [q, r] = h.divrem(g);
        if (!r.is_zero()) return m;
        h = q;
        ++m;
    }
}

std::string Poly::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const Rat& a = c_[static_cast<std::size_t>(i)];
        if (a == 0) continue;
        if (!first) os << (a > 0 ? " + " : " - ");
        else if (a < 0) os << "-";
        first = false;
        Rat mag = abs(a);
        if (mag != 1 || i == 0) os << rat_str(mag);
        if (i > 0) {
            if (mag != 1) os << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

Poly gcd(const Poly& a, const Poly& b) {
    Poly x = a, y = b;
    while (!y.is_zero()) {
        Poly r = x.divrem(y).second;
        x = y;
        y = r;
    }
    return x.monic();
}

std::vector<std::pair<Poly, int>> squarefree_decompose(const Poly& f) {
    if (f.is_zero()) throw ZeroInput("squarefree decomposition of zero");
    std::vector<std::pair<Poly, int>> out;
    if (f.degree() == 0) return out;
    // Yun's algorithm over Q.
    const Poly a = f.monic();
    const Poly da = a.derivative();
    Poly g = gcd(a, da);
    Poly w = a.exact_div(g);
    Poly z = da.exact_div(g) - w.derivative();
    int i = 1;
    while (w.degree() >= 1) {
        Poly gi = gcd(w, z);
        if (gi.degree() >= 1) out.emplace_back(gi, i);
        w = w.exact_div(gi);
        z = z.exact_div(gi) - w.derivative();
        ++i;
    }
    return out;
}

std::optional<Poly> poly_sqrt(const Poly& f) {
    if (f.is_zero()) return Poly();
    const int d = f.degree();
    if (d % 2 != 0) return std::nullopt;
    auto lead = rat_sqrt(f.lc());
    if (!lead) return std::nullopt;
    const int m = d / 2;
    std::vector<Rat> g(static_cast<std::size_t>(m) + 1, Rat(0));
    g[static_cast<std::size_t>(m)] = *lead;
    // Peel coefficients of g from the top of f: [t^{m+k}] g^2 determines g_k.
    for (int k = m - 1; k >= 0; --k) {
        Rat s(0);
        for (int i = k + 1; i <= m; ++i) {
            const int j = m + k - i;
            if (j > m || j < 0) continue;
            if (i > j) continue;
            Rat term = g[static_cast<std::size_t>(i)] * g[static_cast<std::size_t>(j)];
            s += (i == j) ? term : 2 * term;
        }
        g[static_cast<std::size_t>(k)] =
            (f.coeff(m + k) - s) / (2 * g[static_cast<std::size_t>(m)]);
    }
    Poly cand{std::vector<Rat>(g)};
    if (cand * cand == f) return cand;
    return std::nullopt;
}

std::vector<Rat> rational_roots(const Poly& f) {
    if (f.is_zero()) throw ZeroInput("rational roots of zero polynomial");
    std::vector<Rat> roots;
    Poly h = f;
    // Strip powers of t.
    const Poly t = Poly::t();
    while (h.degree() >= 1 && h.coeff(0) == 0) {
        roots.push_back(Rat(0));
        h = h.exact_div(t);
    }
    if (h.degree() >= 1) {
        // Clear denominators to a primitive integer polynomial; then any root
        // p/q in lowest terms has p | constant and q | leading (Gauss).
        Int den_lcm = 1;
        for (const auto& c : h.coeffs())
            mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
        std::vector<Int> ic;
        ic.reserve(h.coeffs().size());
        Int content = 0;
        for (const auto& c : h.coeffs()) {
            Rat scaled = c * Rat(den_lcm);
            ic.emplace_back(scaled.get_num());
            mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), ic.back().get_mpz_t());
        }
        for (auto& v : ic) v /= content;
        Int a0 = abs(ic.front());
        Int ad = abs(ic.back());
        std::vector<Rat> found;
        for (const Int& p : divisors(a0)) {
            for (const Int& q : divisors(ad)) {
                Int g;
                mpz_gcd(g.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
                if (g != 1) continue;
                for (int sign : {1, -1}) {
                    Rat r = make_rat(sign * p, q);
                    if (h.eval(r) == 0) found.push_back(r);
                }
            }
        }
        const Poly tpoly = Poly::t();
        for (const Rat& r : found) {
            const Poly lin = tpoly - Poly(r);
            int m = h.multiplicity(lin);
            for (int k = 0; k < m; ++k) roots.push_back(r);
        }
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

Poly parse_poly(const std::string& csv) {
    std::vector<Rat> coeffs;
    std::string cur;
    std::istringstream is(csv);
    while (std::getline(is, cur, ',')) {
        // trim spaces
        std::size_t b = cur.find_first_not_of(" \t");
        std::size_t e = cur.find_last_not_of(" \t");
        if (b == std::string::npos) throw Error("empty coefficient in polynomial: " + csv);
        coeffs.push_back(parse_rat(cur.substr(b, e - b + 1)));
    }
    if (coeffs.empty()) throw Error("empty polynomial literal");
    return Poly(std::move(coeffs));
}

std::vector<std::string> poly_to_strings(const Poly& p) {
    std::vector<std::string> out;
    if (p.is_zero()) return {"0"};
    for (const auto& c : p.coeffs()) out.push_back(rat_str(c));
    return out;
}

} // namespace sik3
