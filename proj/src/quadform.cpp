#include "sik3/quadform.hpp"

namespace sik3 {

std::vector<std::pair<Int, Int>> primitive_representations(const BinaryForm& q, const Int& n) {
    if (q.a <= 0 || q.discriminant() >= 0) throw InvalidParameter("form not positive definite");
    if (n < 1) throw InvalidParameter("representation target must be positive");
    // 4a Q(x,y) = (2ax+by)^2 + |D| y^2 bounds both coordinates.
    const Int absd = -q.discriminant();
    auto bound = [&](const Int& coeff) {
        Int s;
        Int val = 4 * coeff * n / absd;
        mpz_sqrt(s.get_mpz_t(), val.get_mpz_t());
        return s;
    };
    const Int xb = bound(q.c), yb = bound(q.a);
    std::vector<std::pair<Int, Int>> out;
    for (Int x = -xb; x <= xb; ++x)
        for (Int y = -yb; y <= yb; ++y) {
            if (q.value(x, y) != n) continue;
            Int g;
            mpz_gcd(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
            if (g == 1) out.emplace_back(x, y);
        }
    return out;
}

bool criterion(int series, const Int& n) {
    if (n <= 0) throw InvalidN(int_str(n));
    if (series < 1 || series > 3) throw InvalidParameter("series must be 1, 2 or 3");
    const auto fac = factorize(n);
    switch (series) {
    case 1: {
        // primes = 1 mod 4, or twice such
        for (const auto& [p, e] : fac) {
            if (p == 2) {
                if (e > 1) return false;
            } else if (p % 4 != 1) {
                return false;
            }
        }
        return true;
    }
    case 2: {
        // prod p_i = 1,2,4 mod 7, optionally times 7
        for (const auto& [p, e] : fac) {
            if (p == 7) {
                if (e > 1) return false;
            } else {
                const Int r = p % 7;
                if (r != 1 && r != 2 && r != 4) return false;
            }
        }
        return true;
    }
    default: {
        // The form is the 2-torsion class of Cl(-15).  Split primes are
        // p = 1,2,4,8 mod 15; the ideals over p = 2,8 lie in the non-principal
        // class, those over p = 1,4 are principal, and the ramified 3, 5 are
        // non-principal and may divide N at most once.  By composition, N is
        // represented by the 2-torsion class iff the non-principal factors
        // have odd total count.
        int e3 = 0, e5 = 0;
        long nonprincipal = 0;
        for (const auto& [p, e] : fac) {
            if (p == 3) {
                e3 = e;
            } else if (p == 5) {
                e5 = e;
            } else {
                const Int r = p % 15;
                if (r == 2 || r == 8) nonprincipal += e;
                else if (r != 1 && r != 4) return false; // inert prime
            }
        }
        if (e3 > 1 || e5 > 1) return false;
        return (nonprincipal + e3 + e5) % 2 != 0;
    }
    }
}

BinaryForm series_form(int series) {
    switch (series) {
    case 1: return {1, 0, 1}; // -1/2 times A1^2
    case 2: return {1, 1, 2}; // -1/2 times [[-2,-1],[-1,-4]]
    case 3: return {2, 1, 2}; // -1/2 times [[-4,-1],[-1,-4]]
    default: throw InvalidParameter("series must be 1, 2 or 3");
    }
}

std::vector<BinaryForm> class_forms(const Int& d) {
    if (d >= 0) throw InvalidDiscriminant(int_str(d));
    const Int rem = ((d % 4) + 4) % 4;
    if (rem != 0 && rem != 1) throw InvalidDiscriminant(int_str(d));
    std::vector<BinaryForm> out;
    const Int absd = -d;
    for (Int a = 1; 3 * a * a <= absd; ++a) {
        for (Int b = -a; b <= a; ++b) {
            const Int num = b * b - d;
            if (num % (4 * a) != 0) continue;
            const Int c = num / (4 * a);
            if (c < a) continue;
            if (b < 0 && (-b == a || a == c)) continue; // keep the normalized twin
            Int g;
            mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
            if (g != 1) continue; // primitive forms only
            out.push_back({a, b, c});
        }
    }
    return out;
}

} // namespace sik3
