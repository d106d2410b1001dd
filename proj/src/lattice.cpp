#include "sik3/lattice.hpp"

#include <algorithm>
#include <map>

namespace sik3 {

Lattice::Lattice(IntMat gram, std::string label)
    : gram_(std::move(gram)), label_(std::move(label)) {
    const std::size_t n = gram_.size();
    for (const auto& row : gram_)
        if (row.size() != n) throw InvalidParameter("Gram matrix not square");
    for (std::size_t i = 0; i < n; ++i) {
        if (gram_[i][i] % 2 != 0) throw InvalidParameter("odd diagonal entry (lattice not even)");
        for (std::size_t j = i + 1; j < n; ++j)
            if (gram_[i][j] != gram_[j][i]) throw InvalidParameter("Gram matrix not symmetric");
    }
    det_ = int_det(gram_);
    if (n > 0 && det_ == 0) throw DegenerateLattice(label_);
}

Lattice Lattice::relabel(std::string label) const {
    Lattice copy = *this;
    copy.label_ = std::move(label);
    return copy;
}

std::pair<int, int> Lattice::signature() const {
    RatMat m = to_rat(gram_);
    const std::size_t n = m.size();
    int pos = 0, neg = 0;
    // Symmetric congruent diagonalization; a zero diagonal entry with a
    // nonzero partner is repaired by adding the partner row and column.
    for (std::size_t k = 0; k < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t j = k + 1;
            while (j < n && m[k][j] == 0) ++j;
            if (j == n) continue;
            for (std::size_t s = 0; s < n; ++s) m[k][s] += m[j][s];
            for (std::size_t s = 0; s < n; ++s) m[s][k] += m[s][j];
        }
        const Rat d = m[k][k];
        if (d > 0) ++pos;
        else ++neg;
        for (std::size_t i = k + 1; i < n; ++i) {
            if (m[i][k] == 0) continue;
            const Rat f = m[i][k] / d;
            for (std::size_t s = 0; s < n; ++s) m[i][s] -= f * m[k][s];
            for (std::size_t s = 0; s < n; ++s) m[s][i] -= f * m[s][k];
        }
    }
    return {pos, neg};
}

namespace {

IntMat negated_cartan(const std::vector<std::pair<int, int>>& edges, int n) {
    IntMat g(static_cast<std::size_t>(n), IntVec(static_cast<std::size_t>(n), Int(0)));
    for (int i = 0; i < n; ++i) g[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = -2;
    for (auto [a, b] : edges) {
        g[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = 1;
        g[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] = 1;
    }
    return g;
}

std::vector<std::pair<int, int>> chain_edges(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
    return e;
}

} // namespace

Lattice lat_U() { return Lattice({{0, 1}, {1, 0}}, "U"); }

Lattice lat_A(int n) {
    if (n < 1) throw InvalidParameter("A_n needs n >= 1");
    return Lattice(negated_cartan(chain_edges(n), n), "A" + std::to_string(n));
}

Lattice lat_D(int n) {
    if (n < 4) throw InvalidParameter("D_n needs n >= 4");
    auto e = chain_edges(n - 1);
    e.emplace_back(n - 3, n - 1);
    return Lattice(negated_cartan(e, n), "D" + std::to_string(n));
}

Lattice lat_E(int n) {
    if (n < 6 || n > 8) throw InvalidParameter("E_n needs n in {6,7,8}");
    auto e = chain_edges(n - 1);
    e.emplace_back(2, n - 1);
    return Lattice(negated_cartan(e, n), "E" + std::to_string(n));
}

Lattice lat_rank1(const Int& m) {
    if (m == 0) throw InvalidParameter("rank-1 lattice needs m != 0");
    return Lattice({{m}}, "<" + int_str(m) + ">");
}

Lattice lat_binary(const Int& a, const Int& b, const Int& c) {
    return Lattice({{a, b}, {b, c}},
                   "[" + int_str(a) + "," + int_str(b) + ";" + int_str(b) + "," + int_str(c) + "]");
}

Lattice named_lattice(const std::string& name) {
    if (name == "U") return lat_U();
    if (name.size() >= 2 && (name[0] == 'A' || name[0] == 'D' || name[0] == 'E')) {
        int n = 0;
        try {
            n = std::stoi(name.substr(1));
        } catch (...) {
            throw InvalidParameter("unknown lattice name: " + name);
        }
        if (name[0] == 'A') return lat_A(n);
        if (name[0] == 'D') return lat_D(n);
        return lat_E(n);
    }
    throw InvalidParameter("unknown lattice name: " + name);
}

Lattice direct_sum(const Lattice& a, const Lattice& b) {
    const std::size_t n = static_cast<std::size_t>(a.rank());
    const std::size_t m = static_cast<std::size_t>(b.rank());
    IntMat g(n + m, IntVec(n + m, Int(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) g[i][j] = a.gram()[i][j];
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) g[n + i][n + j] = b.gram()[i][j];
    std::string label = a.label().empty() || b.label().empty() ? std::string()
                                                               : a.label() + "+" + b.label();
    return Lattice(std::move(g), std::move(label));
}

Lattice twist(const Lattice& l, const Int& k) {
    if (k == 0) throw InvalidParameter("twist by zero");
    IntMat g = l.gram();
    for (auto& row : g)
        for (auto& x : row) x *= k;
    for (std::size_t i = 0; i < g.size(); ++i)
        if (g[i][i] % 2 != 0) throw OddResult(l.label());
    std::string label = l.label().empty() ? std::string() : l.label() + "(" + int_str(k) + ")";
    return Lattice(std::move(g), std::move(label));
}

Int DiscForm::group_order() const {
    Int n(1);
    for (const auto& d : orders) n *= d;
    return n;
}

DiscForm DiscForm::cyclic(const std::vector<Int>& orders, const RatVec& qvals) {
    if (orders.size() != qvals.size()) throw InvalidParameter("orders/qvals size mismatch");
    DiscForm f;
    f.orders = orders;
    for (const auto& v : qvals) f.q.push_back(mod_2z(v));
    const std::size_t k = orders.size();
    f.pairing.assign(k, RatVec(k, Rat(0)));
    for (std::size_t i = 0; i < k; ++i) f.pairing[i][i] = mod_1z(f.q[i]);
    return f;
}

DiscForm DiscForm::negated() const {
    DiscForm f = *this;
    for (auto& v : f.q) v = mod_2z(-v);
    for (auto& row : f.pairing)
        for (auto& v : row) v = mod_1z(-v);
    f.gens.clear();
    return f;
}

Rat gram_product(const Lattice& l, const RatVec& x, const RatVec& y) {
    const std::size_t n = static_cast<std::size_t>(l.rank());
    if (x.size() != n || y.size() != n) throw InvalidParameter("vector size mismatch");
    Rat s(0);
    for (std::size_t i = 0; i < n; ++i) {
        if (x[i] == 0) continue;
        Rat row(0);
        for (std::size_t j = 0; j < n; ++j)
            if (y[j] != 0) row += Rat(l.gram()[i][j]) * y[j];
        s += x[i] * row;
    }
    return s;
}

DiscForm discriminant_form(const Lattice& l) {
    const std::size_t n = static_cast<std::size_t>(l.rank());
    if (n == 0) return DiscForm{};
    Smith snf = smith_normal_form(l.gram());
    // Generators of L^dual/L: columns of G^{-1} P^{-1} at invariant factors > 1.
    RatMat ginv = rat_inverse(to_rat(l.gram()));
    DiscForm f;
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < n; ++i)
        if (snf.diag[i] > 1) {
            keep.push_back(i);
            f.orders.push_back(snf.diag[i]);
        }
    const std::size_t k = keep.size();
    f.gens.assign(k, RatVec(n, Rat(0)));
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t i = 0; i < n; ++i) {
            Rat s(0);
            for (std::size_t p = 0; p < n; ++p) s += ginv[i][p] * Rat(snf.pinv[p][keep[a]]);
            f.gens[a][i] = s;
        }
    f.pairing.assign(k, RatVec(k, Rat(0)));
    for (std::size_t a = 0; a < k; ++a) {
        f.q.push_back(mod_2z(gram_product(l, f.gens[a], f.gens[a])));
        for (std::size_t b = 0; b < k; ++b)
            f.pairing[a][b] = mod_1z(gram_product(l, f.gens[a], f.gens[b]));
    }
    return f;
}

namespace {

std::map<Int, std::vector<int>> primary_decomposition(const std::vector<Int>& orders) {
    std::map<Int, std::vector<int>> shape;
    for (const Int& d : orders) {
        Int rest = d;
        for (Int p = 2; p * p <= rest; p == 2 ? p = 3 : p += 2) {
            if (rest % p == 0) {
                int e = 0;
                while (rest % p == 0) {
                    rest /= p;
                    ++e;
                }
                shape[p].push_back(e);
            }
        }
        if (rest > 1) shape[rest].push_back(1);
    }
    for (auto& [p, v] : shape) std::sort(v.begin(), v.end());
    return shape;
}

struct GroupTable {
    std::vector<long> radix;
    std::vector<std::vector<long>> elems;
    std::vector<Int> ord;
    std::vector<Rat> qval;
    const DiscForm* form = nullptr;

    Rat bval(const std::vector<long>& x, const std::vector<long>& y) const {
        Rat s(0);
        for (std::size_t i = 0; i < radix.size(); ++i)
            for (std::size_t j = 0; j < radix.size(); ++j)
                if (x[i] != 0 && y[j] != 0) s += Rat(x[i]) * Rat(y[j]) * form->pairing[i][j];
        return mod_1z(s);
    }
    Rat qof(const std::vector<long>& x) const {
        Rat s(0);
        for (std::size_t i = 0; i < radix.size(); ++i) {
            if (x[i] == 0) continue;
            s += Rat(x[i]) * Rat(x[i]) * form->q[i];
            for (std::size_t j = i + 1; j < radix.size(); ++j)
                if (x[j] != 0) s += 2 * Rat(x[i]) * Rat(x[j]) * form->pairing[i][j];
        }
        return mod_2z(s);
    }
};

GroupTable build_table(const DiscForm& f) {
    GroupTable t;
    t.form = &f;
    long total = 1;
    for (const Int& d : f.orders) {
        t.radix.push_back(d.get_si());
        total *= d.get_si();
    }
    std::vector<long> cur(t.radix.size(), 0);
    for (long idx = 0; idx < total; ++idx) {
        Int o(1);
        for (std::size_t i = 0; i < cur.size(); ++i) {
            if (cur[i] == 0) continue;
            Int g, ci(cur[i]), di(t.radix[i]);
            mpz_gcd(g.get_mpz_t(), ci.get_mpz_t(), di.get_mpz_t());
            Int oi = di / g;
            mpz_lcm(o.get_mpz_t(), o.get_mpz_t(), oi.get_mpz_t());
        }
        t.ord.push_back(o);
        t.qval.push_back(t.qof(cur));
        t.elems.push_back(cur);
        for (std::size_t i = 0; i < cur.size(); ++i) {
            if (++cur[i] < t.radix[i]) break;
            cur[i] = 0;
        }
    }
    return t;
}

long tuple_index(const std::vector<long>& x, const std::vector<long>& radix) {
    long idx = 0, mult = 1;
    for (std::size_t i = 0; i < radix.size(); ++i) {
        idx += x[i] * mult;
        mult *= radix[i];
    }
    return idx;
}

bool generates(const std::vector<std::vector<long>>& gens, const std::vector<long>& radix,
               long total) {
    std::vector<char> seen(static_cast<std::size_t>(total), 0);
    std::vector<std::vector<long>> frontier{std::vector<long>(radix.size(), 0)};
    seen[0] = 1;
    long count = 1;
    while (!frontier.empty()) {
        auto x = frontier.back();
        frontier.pop_back();
        for (const auto& g : gens) {
            std::vector<long> y(x.size());
            for (std::size_t i = 0; i < x.size(); ++i) y[i] = (x[i] + g[i]) % radix[i];
            const long idx = tuple_index(y, radix);
            if (!seen[static_cast<std::size_t>(idx)]) {
                seen[static_cast<std::size_t>(idx)] = 1;
                ++count;
                frontier.push_back(std::move(y));
            }
        }
    }
    return count == total;
}

bool search_iso(const GroupTable& tgt, const DiscForm& src, bool negate, std::size_t i,
                std::vector<std::vector<long>>& picked) {
    if (i == src.orders.size())
        return generates(picked, tgt.radix, static_cast<long>(tgt.elems.size()));
    const Rat want_q = negate ? mod_2z(-src.q[i]) : src.q[i];
    for (std::size_t e = 0; e < tgt.elems.size(); ++e) {
        if (tgt.ord[e] != src.orders[i] || tgt.qval[e] != want_q) continue;
        bool ok = true;
        for (std::size_t j = 0; j < i && ok; ++j) {
            const Rat want_b = negate ? mod_1z(-src.pairing[i][j]) : src.pairing[i][j];
            if (tgt.bval(tgt.elems[e], picked[j]) != want_b) ok = false;
        }
        if (!ok) continue;
        picked.push_back(tgt.elems[e]);
        if (search_iso(tgt, src, negate, i + 1, picked)) return true;
        picked.pop_back();
    }
    return false;
}

} // namespace

bool disc_forms_isomorphic(const DiscForm& q1, const DiscForm& q2, bool negate, long cap) {
    if (q1.group_order() != q2.group_order()) return false;
    if (q1.group_order() > cap) throw GroupTooLarge(int_str(q1.group_order()));
    if (primary_decomposition(q1.orders) != primary_decomposition(q2.orders)) return false;
    if (q1.orders.empty()) return true;
    GroupTable tgt = build_table(q2);
    std::vector<std::vector<long>> picked;
    return search_iso(tgt, q1, negate, 0, picked);
}

Lattice overlattice(const Lattice& l, const std::vector<GlueVector>& glues) {
    const std::size_t n = static_cast<std::size_t>(l.rank());
    for (const auto& x : glues) {
        if (x.size() != n) throw InvalidParameter("glue vector size mismatch");
        for (std::size_t i = 0; i < n; ++i) {
            Rat s(0);
            for (std::size_t j = 0; j < n; ++j) s += Rat(l.gram()[i][j]) * x[j];
            if (!is_integer(s)) throw NonIntegralGlue("glue vector not in the dual lattice");
        }
        const Rat sq = gram_product(l, x, x);
        if (Int(sq.get_den()) != 1 || Int(sq.get_num()) % 2 != 0)
            throw OddGlue("glue square " + rat_str(sq));
    }
    for (std::size_t a = 0; a < glues.size(); ++a)
        for (std::size_t b = a + 1; b < glues.size(); ++b)
            if (!is_integer(gram_product(l, glues[a], glues[b])))
                throw NonIntegralGlue("glue vectors pair non-integrally");

    Int d(1);
    for (const auto& x : glues)
        for (const auto& c : x) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), c.get_den_mpz_t());
    IntMat stacked;
    for (std::size_t i = 0; i < n; ++i) {
        IntVec row(n, Int(0));
        row[i] = d;
        stacked.push_back(std::move(row));
    }
    for (const auto& x : glues) {
        IntVec row(n);
        for (std::size_t j = 0; j < n; ++j) {
            Rat v = x[j] * Rat(d);
            row[j] = Int(v.get_num());
        }
        stacked.push_back(std::move(row));
    }
    IntMat basis = hnf_row_basis(std::move(stacked));
    IntMat gram(n, IntVec(n, Int(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            Rat s(0);
            for (std::size_t p = 0; p < n; ++p) {
                if (basis[i][p] == 0) continue;
                Rat row(0);
                for (std::size_t q = 0; q < n; ++q)
                    if (basis[j][q] != 0) row += Rat(l.gram()[p][q]) * Rat(basis[j][q]);
                s += Rat(basis[i][p]) * row;
            }
            s /= Rat(d * d);
            if (!is_integer(s)) throw NonIntegralGlue("overlattice Gram not integral");
            gram[i][j] = s.get_num();
            gram[j][i] = gram[i][j];
        }
    std::string label = l.label().empty() ? std::string() : l.label() + "~glued";
    return Lattice(std::move(gram), std::move(label));
}

Lattice orthogonal_complement(const Lattice& l, const IntVec& v) {
    const std::size_t n = static_cast<std::size_t>(l.rank());
    if (v.size() != n) throw InvalidParameter("vector size mismatch");
    Int g(0);
    for (const auto& c : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g != 1) throw NonPrimitiveVector(g == 0 ? "zero vector" : "gcd " + int_str(g));
    IntVec w(n, Int(0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) w[i] += l.gram()[i][j] * v[j];
    // Kernel of x -> w.x via unimodular column reduction of w to one entry.
    IntMat tr(n, IntVec(n, Int(0)));
    for (std::size_t i = 0; i < n; ++i) tr[i][i] = 1;
    for (;;) {
        std::size_t m = n;
        for (std::size_t i = 0; i < n; ++i)
            if (w[i] != 0 && (m == n || cmp(abs(w[i]), abs(w[m])) < 0)) m = i;
        if (m == n) throw DegenerateLattice("pairing functional vanished");
        for (std::size_t j = 0; j < n; ++j) {
            if (j == m || w[j] == 0) continue;
            Int q = w[j] / w[m];
            w[j] -= q * w[m];
            for (std::size_t r = 0; r < n; ++r) tr[r][j] -= q * tr[r][m];
        }
        bool lone = true;
        for (std::size_t j = 0; j < n; ++j)
            if (j != m && w[j] != 0) lone = false;
        if (!lone) continue;
        IntMat cols;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == m) continue;
            IntVec col(n);
            for (std::size_t r = 0; r < n; ++r) col[r] = tr[r][j];
            cols.push_back(std::move(col));
        }
        const std::size_t k = cols.size();
        IntMat gram(k, IntVec(k, Int(0)));
        for (std::size_t a = 0; a < k; ++a)
            for (std::size_t b = 0; b < k; ++b) {
                Int s(0);
                for (std::size_t p = 0; p < n; ++p)
                    for (std::size_t q2 = 0; q2 < n; ++q2)
                        s += cols[a][p] * l.gram()[p][q2] * cols[b][q2];
                gram[a][b] = s;
            }
        std::string label = l.label().empty() ? std::string() : l.label() + "-perp";
        return Lattice(std::move(gram), std::move(label));
    }
}

RatVec orthogonal_project(const Lattice& l, const RatVec& x, const std::vector<RatVec>& sbasis) {
    const std::size_t n = static_cast<std::size_t>(l.rank());
    const std::size_t k = sbasis.size();
    RatMat m(k, RatVec(k));
    RatVec rhs(k);
    for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t b = 0; b < k; ++b) m[a][b] = gram_product(l, sbasis[a], sbasis[b]);
        rhs[a] = gram_product(l, sbasis[a], x);
    }
    RatVec coef;
    try {
        coef = rat_solve(std::move(m), std::move(rhs));
    } catch (const Error&) {
        throw DegenerateSublattice();
    }
    RatVec out = x;
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t i = 0; i < n; ++i) out[i] -= coef[a] * sbasis[a][i];
    return out;
}

std::pair<Int, Rat> disc_form_eval(const Lattice& l, const GlueVector& x) {
    const std::size_t n = static_cast<std::size_t>(l.rank());
    if (x.size() != n) throw InvalidParameter("vector size mismatch");
    for (std::size_t i = 0; i < n; ++i) {
        Rat s(0);
        for (std::size_t j = 0; j < n; ++j) s += Rat(l.gram()[i][j]) * x[j];
        if (!is_integer(s)) throw NotInDual();
    }
    Int order(1);
    for (const auto& c : x) mpz_lcm(order.get_mpz_t(), order.get_mpz_t(), c.get_den_mpz_t());
    return {order, mod_2z(gram_product(l, x, x))};
}

bool same_genus_invariants(const Lattice& a, const Lattice& b, long cap) {
    if (a.rank() != b.rank()) return false;
    if (a.signature() != b.signature()) return false;
    if (a.disc() != b.disc()) return false;
    return disc_forms_isomorphic(discriminant_form(a), discriminant_form(b), false, cap);
}

} // namespace sik3
