#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "sik3/lattice.hpp"

using namespace sik3;

namespace {

RatVec concat4(const RatVec& a, const RatVec& b, const RatVec& c, const RatVec& d) {
    RatVec out;
    for (const auto* part : {&a, &b, &c, &d})
        for (const auto& x : *part) out.push_back(x);
    return out;
}

RatVec zeros(int n) { return RatVec(static_cast<std::size_t>(n), Rat(0)); }

} // namespace

TEST_CASE("named lattices") {
    CHECK(lat_U().gram() == IntMat{{0, 1}, {1, 0}});
    CHECK(lat_A(1).gram() == IntMat{{-2}});
    CHECK(lat_binary(-2, -1, -4).gram() == IntMat{{-2, -1}, {-1, -4}});
    CHECK(named_lattice("E7").rank() == 7);
    CHECK(named_lattice("A6").disc() == 7);
    CHECK(lat_E(7).disc() == -2);
    CHECK(lat_E(8).disc() == 1);
    CHECK(lat_E(6).disc() == 3);
    CHECK(lat_D(4).disc() == 4);
    CHECK(lat_A(9).disc() == -10);
    CHECK(lat_rank1(-2).gram() == IntMat{{-2}});
    CHECK_THROWS_AS(lat_rank1(Int(3)), InvalidParameter);
    CHECK_THROWS_AS(lat_rank1(Int(0)), InvalidParameter);
    CHECK_THROWS_AS(lat_binary(1, 0, 2), InvalidParameter);
    CHECK_THROWS_AS(lat_E(5), InvalidParameter);
    CHECK_THROWS_AS(named_lattice("Q3"), InvalidParameter);
    CHECK_THROWS_AS(Lattice({{2, 1}, {0, 2}}), InvalidParameter); // not symmetric
    CHECK_THROWS_AS(Lattice({{2, 2}, {2, 2}}), DegenerateLattice);
}

TEST_CASE("signatures by exact diagonalization") {
    CHECK(lat_U().signature() == std::pair<int, int>(1, 1));
    CHECK(lat_E(8).signature() == std::pair<int, int>(0, 8));
    CHECK(lat_A(6).signature() == std::pair<int, int>(0, 6));
    // K3 lattice U^3 + E8^2: signature (3,19)
    Lattice k3 = direct_sum(direct_sum(lat_U(), direct_sum(lat_U(), lat_U())),
                            direct_sum(lat_E(8), lat_E(8)));
    CHECK(k3.rank() == 22);
    CHECK(k3.signature() == std::pair<int, int>(3, 19));
    CHECK(k3.disc() == -1);
}

TEST_CASE("direct sums") {
    CHECK(direct_sum(lat_U(), lat_A(1)).rank() == 3);
    Lattice t1 = direct_sum(direct_sum(lat_U(), lat_U()), direct_sum(lat_A(1), lat_A(1)));
    CHECK(t1.rank() == 6);
    CHECK(t1.disc() == 4);
    CHECK(direct_sum(lat_E(7), lat_E(7)).disc() == 4);
    // disc multiplicativity
    for (const auto& [a, b] : {std::pair{lat_U(), lat_A(3)}, {lat_E(6), lat_A(1)}}) {
        CHECK(direct_sum(a, b).disc() == a.disc() * b.disc());
    }
}

TEST_CASE("twists") {
    CHECK(twist(lat_U(), 2).gram() == IntMat{{0, 2}, {2, 0}});
    CHECK(twist(lat_A(2), 1).gram() == lat_A(2).gram());
    Lattice u2sq = direct_sum(twist(lat_U(), 2), twist(lat_U(), 2));
    Lattice y = direct_sum(u2sq, lat_rank1(-4));
    CHECK(y.disc() == -64); // (-4)^2 * (-4N), N = 1
    // disc(L(k)) = k^rank disc(L)
    for (const Lattice& l : {lat_U(), lat_A(2), lat_E(7)}) {
        Int expect = l.disc();
        for (int i = 0; i < l.rank(); ++i) expect *= 3;
        CHECK(twist(l, 3).disc() == expect);
    }
    CHECK_THROWS_AS(twist(lat_U(), Int(0)), InvalidParameter);
}

TEST_CASE("discriminants of the key sums") {
    CHECK(lat_U().disc() == -1);
    CHECK(lat_E(8).disc() == 1);
    // Enhanced Neron-Severi of the N=1 gluing: determinant of sign (+) and
    // absolute value 2 (signature (1,16) makes the determinant positive).
    Lattice l = direct_sum(lat_U(), direct_sum(lat_E(7), lat_E(8)));
    CHECK(l.disc() == 2);
    CHECK(l.signature() == std::pair<int, int>(1, 16));
}

TEST_CASE("discriminant forms of root lattices") {
    const DiscForm e7 = discriminant_form(lat_E(7));
    REQUIRE(e7.orders == std::vector<Int>{2});
    CHECK(e7.q[0] == mod_2z(make_rat(-3, 2))); // generator of square -3/2
    const DiscForm a1 = discriminant_form(lat_A(1));
    REQUIRE(a1.orders == std::vector<Int>{2});
    CHECK(a1.q[0] == mod_2z(make_rat(-1, 2))); // generator of square -1/2
    const DiscForm a6 = discriminant_form(lat_A(6));
    REQUIRE(a6.orders == std::vector<Int>{7});
    CHECK(disc_forms_isomorphic(a6, DiscForm::cyclic({Int(7)}, {make_rat(-6, 7)}), false));
    // |L^dual/L| = |disc L|
    for (const Lattice& l :
         {lat_A(6), lat_E(7), lat_D(5), lat_binary(-4, -1, -4), twist(lat_U(), 2)}) {
        CHECK(discriminant_form(l).group_order() == abs(l.disc()));
    }
    // E8 and U are unimodular: trivial discriminant form
    CHECK(discriminant_form(lat_E(8)).orders.empty());
    CHECK(discriminant_form(lat_U()).orders.empty());
}

TEST_CASE("discriminant form isomorphism") {
    const DiscForm e7 = discriminant_form(lat_E(7));
    const DiscForm a1 = discriminant_form(lat_A(1));
    CHECK(disc_forms_isomorphic(e7, a1, true));  // q_{E7} = -q_{A1}
    CHECK(!disc_forms_isomorphic(e7, a1, false));
    CHECK(disc_forms_isomorphic(a1, a1, false));
    const DiscForm e7e7 = discriminant_form(direct_sum(lat_E(7), lat_E(7)));
    const DiscForm a1a1 = discriminant_form(direct_sum(lat_A(1), lat_A(1)));
    CHECK(disc_forms_isomorphic(e7e7, a1a1, true));
    const DiscForm a6 = discriminant_form(lat_A(6));
    const DiscForm b7 = discriminant_form(lat_binary(-2, -1, -4));
    CHECK(disc_forms_isomorphic(a6, b7, true));
    // Z/15 side: q of [[-4,-1],[-1,-4]] matches Z/3(-4/3)+Z/5(-2/5) only after
    // a global sign flip.
    const DiscForm b15 = discriminant_form(lat_binary(-4, -1, -4));
    const DiscForm paper15 = DiscForm::cyclic({Int(3), Int(5)}, {make_rat(-4, 3), make_rat(-2, 5)});
    CHECK(disc_forms_isomorphic(b15, paper15, true));
    CHECK(!disc_forms_isomorphic(b15, paper15, false));
    // The sign distinction lives in the Z/3 part (-1 is a square mod 5, so the
    // Z/5 part is isomorphic to its own negative).
    const DiscForm z3plus = DiscForm::cyclic({Int(3)}, {make_rat(4, 3)});
    const DiscForm z3minus = DiscForm::cyclic({Int(3)}, {make_rat(-4, 3)});
    CHECK(!disc_forms_isomorphic(z3plus, z3minus, false));
    const DiscForm z5plus = DiscForm::cyclic({Int(5)}, {make_rat(2, 5)});
    const DiscForm z5minus = DiscForm::cyclic({Int(5)}, {make_rat(-2, 5)});
    CHECK(disc_forms_isomorphic(z5plus, z5minus, false));
    // Different groups of equal order.
    CHECK(!disc_forms_isomorphic(DiscForm::cyclic({Int(4)}, {make_rat(1, 4)}),
                                 DiscForm::cyclic({Int(2), Int(2)}, {make_rat(1, 2), make_rat(1, 2)}),
                                 false));
    CHECK_THROWS_AS(
        disc_forms_isomorphic(discriminant_form(lat_rank1(-30000)),
                              discriminant_form(lat_rank1(-30000)), false, 100),
        GroupTooLarge);
}

TEST_CASE("overlattice: gluing A1 into E7 recovers U+E7+E8 invariants") {
    // L = U + E7 + E7 + <-2>, glue = (0; w1; 0; v/2).
    Lattice l = direct_sum(direct_sum(lat_U(), lat_E(7)), direct_sum(lat_E(7), lat_rank1(-2)));
    const DiscForm e7 = discriminant_form(lat_E(7));
    RatVec glue = concat4(zeros(2), e7.gens[0], zeros(7), {make_rat(1, 2)});
    Lattice lp = overlattice(l, {glue});
    CHECK(lp.rank() == 17);
    CHECK(abs(lp.disc()) == 2);
    Lattice target = direct_sum(lat_U(), direct_sum(lat_E(7), lat_E(8)));
    CHECK(lp.disc() == l.disc() / 4);
    CHECK(same_genus_invariants(lp, target));
}

TEST_CASE("overlattice gates") {
    Lattice a1a1 = direct_sum(lat_A(1), lat_A(1));
    CHECK_THROWS_AS(overlattice(a1a1, {{make_rat(1, 2), make_rat(1, 2)}}), OddGlue);
    CHECK_THROWS_AS(overlattice(a1a1, {{make_rat(1, 3), Rat(0)}}), NonIntegralGlue);
    // Gluing by a lattice vector changes nothing.
    Lattice same = overlattice(a1a1, {{Rat(1), Rat(1)}});
    CHECK(same.disc() == a1a1.disc());
}

TEST_CASE("overlattice: 2-torsion glue on U+A9+A5 has index 2") {
    Lattice l = direct_sum(lat_U(), direct_sum(lat_A(9), lat_A(5)));
    const DiscForm a9 = discriminant_form(lat_A(9));
    const DiscForm a5 = discriminant_form(lat_A(5));
    RatVec glue = zeros(2);
    for (const auto& c : a9.gens[0]) glue.push_back(5 * c);
    for (const auto& c : a5.gens[0]) glue.push_back(3 * c);
    Lattice lp = overlattice(l, {glue});
    CHECK(abs(lp.disc()) == 15); // 60 / 2^2
    CHECK(lp.disc() == l.disc() / 4);
}

TEST_CASE("orthogonal complements") {
    CHECK(orthogonal_complement(direct_sum(lat_A(1), lat_A(1)), {Int(1), Int(0)}).gram() ==
          IntMat{{-2}});
    CHECK(orthogonal_complement(lat_U(), {Int(1), Int(1)}).gram() == IntMat{{-2}});
    CHECK(orthogonal_complement(lat_binary(-2, -1, -4), {Int(0), Int(1)}).gram() ==
          IntMat{{-28}});
    CHECK_THROWS_AS(orthogonal_complement(lat_U(), {Int(2), Int(0)}), NonPrimitiveVector);
    CHECK_THROWS_AS(orthogonal_complement(lat_U(), {Int(0), Int(0)}), NonPrimitiveVector);
    // Complement vectors really pair to zero with v.
    Lattice b = lat_binary(-4, -1, -4);
    Lattice perp = orthogonal_complement(b, {Int(2), Int(1)});
    CHECK(perp.rank() == 1);
}

TEST_CASE("orthogonal projection") {
    Lattice u = lat_U();
    RatVec inside = orthogonal_project(u, {Rat(3), Rat(0)}, {{Rat(1), Rat(0)}, {Rat(0), Rat(1)}});
    CHECK(inside == zeros(2));
    // x orthogonal to S stays put: (1,-1) against span{(1,1)} in U
    RatVec kept = orthogonal_project(u, {Rat(1), Rat(-1)}, {{Rat(1), Rat(1)}});
    CHECK(kept == RatVec{Rat(1), Rat(-1)});
    // Result is orthogonal to S and differs from x by an element of span(S).
    Lattice e7 = lat_E(7);
    RatVec x(7, Rat(0));
    x[3] = make_rat(5, 3);
    x[0] = Rat(1);
    std::vector<RatVec> s{RatVec(7, Rat(0)), RatVec(7, Rat(0))};
    s[0][0] = 1;
    s[1][1] = 1;
    RatVec p = orthogonal_project(e7, x, s);
    for (const auto& sv : s) CHECK(gram_product(e7, p, sv) == 0);
    CHECK_THROWS_AS(orthogonal_project(u, {Rat(1), Rat(0)},
                                       {{Rat(1), Rat(0)}, {Rat(2), Rat(0)}}),
                    DegenerateSublattice);
}

TEST_CASE("discriminant form evaluation") {
    Lattice e7 = lat_E(7);
    const DiscForm f = discriminant_form(e7);
    auto [ord, q] = disc_form_eval(e7, f.gens[0]);
    CHECK(ord == 2);
    CHECK(q == mod_2z(make_rat(-3, 2)));
    auto [ord0, q0] = disc_form_eval(e7, RatVec(7, Rat(1)));
    CHECK(ord0 == 1);
    CHECK(q0 == 0);
    RatVec bad(7, Rat(0));
    bad[0] = make_rat(1, 3);
    CHECK_THROWS_AS(disc_form_eval(e7, bad), NotInDual);
}

TEST_CASE("genus invariants equality is reflexive and detects differences") {
    CHECK(same_genus_invariants(lat_E(7), lat_E(7)));
    CHECK(!same_genus_invariants(lat_E(7), lat_A(7)));
    CHECK(!same_genus_invariants(lat_A(1), lat_rank1(-4)));
}

TEST_CASE("form isomorphism is reflexive and symmetric on the corpus") {
    std::vector<Lattice> corpus{lat_A(6), lat_E(7), lat_binary(-4, -1, -4), lat_rank1(-10),
                                direct_sum(lat_A(1), lat_A(1))};
    for (const auto& l : corpus) {
        const DiscForm f = discriminant_form(l);
        CHECK(disc_forms_isomorphic(f, f, false));
    }
    for (const auto& l1 : corpus)
        for (const auto& l2 : corpus) {
            const DiscForm f1 = discriminant_form(l1), f2 = discriminant_form(l2);
            CHECK(disc_forms_isomorphic(f1, f2, false) == disc_forms_isomorphic(f2, f1, false));
        }
}

TEST_CASE("discriminant form of a direct sum decomposes") {
    for (const auto& [l1, l2] : {std::pair{lat_A(2), lat_A(3)}, {lat_E(7), lat_A(1)},
                                 {lat_A(6), lat_rank1(-4)}}) {
        const DiscForm f1 = discriminant_form(l1);
        const DiscForm f2 = discriminant_form(l2);
        // block direct sum of the two forms
        DiscForm sum;
        sum.orders = f1.orders;
        sum.orders.insert(sum.orders.end(), f2.orders.begin(), f2.orders.end());
        sum.q = f1.q;
        sum.q.insert(sum.q.end(), f2.q.begin(), f2.q.end());
        const std::size_t k1 = f1.orders.size(), k = sum.orders.size();
        sum.pairing.assign(k, RatVec(k, Rat(0)));
        for (std::size_t i = 0; i < k1; ++i)
            for (std::size_t j = 0; j < k1; ++j) sum.pairing[i][j] = f1.pairing[i][j];
        for (std::size_t i = k1; i < k; ++i)
            for (std::size_t j = k1; j < k; ++j) sum.pairing[i][j] = f2.pairing[i - k1][j - k1];
        CHECK(disc_forms_isomorphic(discriminant_form(direct_sum(l1, l2)), sum, false));
    }
}

TEST_CASE("pairing agrees with the polarization of q") {
    for (const auto& l :
         {lat_A(6), lat_D(5), lat_binary(-4, -1, -4), direct_sum(lat_A(2), lat_A(3))}) {
        const DiscForm f = discriminant_form(l);
        const std::size_t k = f.orders.size();
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) {
                RatVec sum(f.gens[i].size());
                for (std::size_t s = 0; s < sum.size(); ++s) sum[s] = f.gens[i][s] + f.gens[j][s];
                const Rat qsum = mod_2z(gram_product(l, sum, sum));
                // q(g_i + g_j) - q(g_i) - q(g_j) = 2 b(g_i, g_j) mod 2Z
                CHECK(mod_2z(qsum - f.q[i] - f.q[j]) == mod_2z(2 * f.pairing[i][j]));
            }
    }
}
