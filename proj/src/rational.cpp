#include "sik3/rational.hpp"

#include <cctype>

namespace sik3 {

Rat parse_rat(const std::string& s) {
    if (s.empty()) throw Error("empty rational literal");
    std::size_t pos = 0;
    auto read_int = [&](void) -> std::string {
        std::string out;
        if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) out += s[pos++];
        std::size_t digits = 0;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            out += s[pos++];
            ++digits;
        }
        if (digits == 0) throw Error("malformed rational literal: " + s);
        return out;
    };
    const std::string num = read_int();
    std::string den = "1";
    if (pos < s.size() && s[pos] == '/') {
        ++pos;
        den = read_int();
    }
    if (pos != s.size()) throw Error("malformed rational literal: " + s);
    Int n(num), d(den);
    if (d == 0) throw Error("zero denominator in rational literal: " + s);
    return make_rat(n, d);
}

std::string rat_str(const Rat& r) { return r.get_str(); }
std::string int_str(const Int& n) { return n.get_str(); }

Int rat_floor(const Rat& r) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q;
}

Rat mod_2z(const Rat& r) {
    Rat half = r / 2;
    Rat frac = half - Rat(rat_floor(half));
    return frac * 2;
}

Rat mod_1z(const Rat& r) { return r - Rat(rat_floor(r)); }

std::optional<Int> int_sqrt(const Int& n) {
    if (n < 0) return std::nullopt;
    if (mpz_perfect_square_p(n.get_mpz_t())) {
        Int s;
        mpz_sqrt(s.get_mpz_t(), n.get_mpz_t());
        return s;
    }
    return std::nullopt;
}

std::optional<Rat> rat_sqrt(const Rat& r) {
    auto n = int_sqrt(Int(r.get_num()));
    if (!n) return std::nullopt;
    auto d = int_sqrt(Int(r.get_den()));
    if (!d) return std::nullopt;
    return make_rat(*n, *d);
}

} // namespace sik3
