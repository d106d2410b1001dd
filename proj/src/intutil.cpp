#include "sik3/intutil.hpp"

#include <algorithm>

namespace sik3 {

std::vector<std::pair<Int, int>> factorize(Int n, long bound) {
    if (n < 1) throw Error("factorize expects n >= 1");
    std::vector<std::pair<Int, int>> out;
    for (Int p = 2; p <= bound && p * p <= n; p == 2 ? p = 3 : p += 2) {
        if (n % p == 0) {
            int e = 0;
            while (n % p == 0) {
                n /= p;
                ++e;
            }
            out.emplace_back(p, e);
        }
    }
    if (n > 1) {
        if (mpz_probab_prime_p(n.get_mpz_t(), 40) == 0)
            throw Error("factorize: composite cofactor beyond trial-division bound: " + int_str(n));
        out.emplace_back(n, 1);
    }
    return out;
}

std::vector<Int> divisors(const Int& n, long bound) {
    auto fac = factorize(n, bound);
    std::vector<Int> out{Int(1)};
    for (const auto& [p, e] : fac) {
        const std::size_t base = out.size();
        Int pk = 1;
        for (int k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace sik3
