#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "starres/complex.hpp"

using namespace starres;

namespace {

WeightedRing q_ring(std::array<unsigned, 3> w = {1, 1, 1}) {
    return WeightedRing(w, Field(0));
}

Polynomial P(const std::string& s, const WeightedRing& r) {
    return parse_polynomial(s, r);
}

ChainComplex koszul_xyz(const WeightedRing& r) {
    return koszul_complex(r, P("x", r), P("y", r), P("z", r));
}

}  // namespace

TEST_CASE("Koszul complex on x, y, z") {
    auto r = q_ring();
    auto K = koszul_xyz(r);
    REQUIRE(K.length() == 3);
    CHECK(K.module(0)->rank() == 1);
    CHECK(K.module(1)->rank() == 3);
    CHECK(K.module(2)->rank() == 3);
    CHECK(K.module(3)->rank() == 1);

    // d1 = (x y z)
    CHECK(K.differential(1).entry(0, 0) == P("x", r));
    CHECK(K.differential(1).entry(0, 1) == P("y", r));
    CHECK(K.differential(1).entry(0, 2) == P("z", r));

    // d3(e123) = x ce1 - y ce2 + z ce3 with the alternating signs
    CHECK(K.differential(3).entry(0, 0) == P("x", r));
    CHECK(K.differential(3).entry(1, 0) == P("-y", r));
    CHECK(K.differential(3).entry(2, 0) == P("z", r));

    // d2(e1^e2) = x e2 - y e1 (column ce3)
    CHECK(K.differential(2).entry(0, 2) == P("-y", r));
    CHECK(K.differential(2).entry(1, 2) == P("x", r));

    CHECK(K.is_complex());
    auto rep = verify_exactness(K, 12);
    CHECK(rep.all_exact);
}

TEST_CASE("Koszul on x, y^2, z^3 resolves R/Q, exact up to 12") {
    auto r = q_ring();
    auto K = koszul_complex(r, P("x", r), P("y^2", r), P("z^3", r));
    CHECK(verify_exactness(K, 12).all_exact);
}

TEST_CASE("non-homogeneous Koszul input is rejected") {
    auto r = q_ring({3, 4, 5});
    CHECK_THROWS_AS(koszul_complex(r, P("x + y", r), P("y", r), P("z", r)),
                    ComplexError);
    CHECK_THROWS_AS(koszul_complex(r, P("1", r), P("y", r), P("z", r)),
                    ComplexError);
}

TEST_CASE("a corrupted differential is not a complex or not exact") {
    auto r = q_ring();
    auto K = koszul_xyz(r);
    // flip one sign in d3: x ce1 + y ce2 + z ce3
    ModuleMap bad3 = K.differential(3);
    bad3.set_entry(1, 0, P("y", r));
    CHECK_THROWS_AS(
        ChainComplex({K.module(0), K.module(1), K.module(2), K.module(3)},
                     {K.differential(1), K.differential(2), bad3}),
        ComplexError);

    // flip a sign in d2 instead; d1 o d2 != 0 as well
    ModuleMap bad2 = K.differential(2);
    bad2.set_entry(1, 0, P("x", r));  // overwrite the -z entry at (e2, ce1)
    CHECK_THROWS_AS(
        ChainComplex({K.module(0), K.module(1), K.module(2), K.module(3)},
                     {K.differential(1), bad2, K.differential(3)}),
        ComplexError);
}

TEST_CASE("cone of the identity map on K(x,y,z) is exact") {
    auto r = q_ring();
    auto K = koszul_xyz(r);
    std::vector<ModuleMap> levels;
    for (size_t i = 0; i <= 3; ++i)
        levels.push_back(ModuleMap::identity(K.module(i)));
    ChainMap id(K, K, levels);
    auto cone = mapping_cone(id);
    REQUIRE(cone.length() == 4);
    CHECK(cone.is_complex());
    CHECK(verify_exactness(cone, 12).all_exact);
}

TEST_CASE("cone of the zero map is the direct sum") {
    auto r = q_ring();
    auto K = koszul_xyz(r);
    std::vector<ModuleMap> levels;
    for (size_t i = 0; i <= 3; ++i)
        levels.push_back(ModuleMap::zero(K.module(i), K.module(i)));
    ChainMap zero(K, K, levels);
    auto cone = mapping_cone(zero);
    CHECK(cone.is_complex());
    // homology of the sum = sum of homologies: K is exact at positions
    // 1..3, so the cone is exact at positions 2..4 but has homology at
    // position 1 (the shifted K contributes its H_0 = R/Q).
    auto rep = verify_exactness(cone, 6);
    CHECK_FALSE(rep.all_exact);
    REQUIRE(rep.first_failure.has_value());
    CHECK(rep.first_failure->second == 1);
    for (const auto& dr : rep.degrees)
        for (size_t pos = 2; pos <= 4; ++pos)
            CHECK(dr.positions[pos - 1].exact);
}

TEST_CASE("zigzag lift: zero input gives zero output") {
    auto r = q_ring();
    auto K = koszul_xyz(r);
    DoubleComplexKF dc(K, K);
    GradedVector xi0(dc.cell(0, 3)), xi1(dc.cell(1, 2));
    auto [xi2, xi3] = zigzag_lift(dc, xi0, xi1);
    CHECK(xi2.is_zero());
    CHECK(xi3.is_zero());
    CHECK(zigzag_cycle_check(dc, xi0, xi1, xi2, xi3));
}

TEST_CASE("zigzag lift on K(x,y,z) tensor K(x,y,z)") {
    auto r = q_ring();
    auto K = koszul_xyz(r);
    DoubleComplexKF dc(K, K);
    // xi0 = 1 (x) e123, xi1 chosen with d''(xi0) + d'(xi1) = 0:
    // d''(xi0) = 1 (x) (x ce1 - y ce2 + z ce3), so take
    // xi1 = -(e1 (x) ce1 - e2 (x) ce2 + e3 (x) ce3) whose d' is the same
    // with a minus sign.
    GradedVector xi0(dc.cell(0, 3));
    xi0.set_coord(dc.cell(0, 3)->index_of("(1|e123)"), P("1", r));
    GradedVector xi1(dc.cell(1, 2));
    xi1.set_coord(dc.cell(1, 2)->index_of("(e1|ce1)"), P("-1", r));
    xi1.set_coord(dc.cell(1, 2)->index_of("(e2|ce2)"), P("1", r));
    xi1.set_coord(dc.cell(1, 2)->index_of("(e3|ce3)"), P("-1", r));
    auto [xi2, xi3] = zigzag_lift(dc, xi0, xi1);
    CHECK(zigzag_cycle_check(dc, xi0, xi1, xi2, xi3));
}

TEST_CASE("split trim removes an identity summand") {
    auto r = q_ring();
    auto K = koszul_xyz(r);
    // append R = R on top: C4 = R(-3) --id--> summand of C3' = K3 (+) R(-3)
    auto extra = GradedFreeModule::make(r, {"s"}, {3});
    auto extra_top = GradedFreeModule::make(r, {"t"}, {3});
    auto C3 = direct_sum({K.module(3), extra});
    ModuleMap d3 = ModuleMap::zero(C3, K.module(2));
    for (size_t i = 0; i < 3; ++i)
        d3.set_entry(i, 0, K.differential(3).entry(i, 0));
    ModuleMap d4 = ModuleMap::zero(extra_top, C3);
    d4.set_entry(1, 0, P("1", r));
    ChainComplex padded({K.module(0), K.module(1), K.module(2), C3, extra_top},
                        {K.differential(1), K.differential(2), d3, d4});
    CHECK(verify_exactness(padded, 10).all_exact);

    // phi projects onto the appended summand; kernel is the K3 block
    ModuleMap phi = ModuleMap::zero(C3, extra_top);
    phi.set_entry(0, 1, P("1", r));
    auto [ker, inc] = coordinate_submodule(C3, {0});
    auto trimmed = split_trim(padded, phi, inc);
    REQUIRE(trimmed.length() == 3);
    CHECK(trimmed.module(3)->rank() == 1);
    CHECK(verify_exactness(trimmed, 10).all_exact);
    // the trimmed complex is the Koszul complex again
    CHECK(trimmed.differential(3).entry(0, 0) == K.differential(3).entry(0, 0));
    CHECK(trimmed.differential(3).entry(1, 0) == K.differential(3).entry(1, 0));

    // phi o d4 != id is rejected
    ModuleMap badphi = ModuleMap::zero(C3, extra_top);
    CHECK_THROWS_AS(split_trim(padded, badphi, inc), ComplexError);
}

TEST_CASE("randomized: append an identity summand, trim it, re-verify") {
    auto r = q_ring({2, 1, 3});
    std::mt19937 rng(4242);
    std::uniform_int_distribution<unsigned> expo(1, 3);
    for (int trial = 0; trial < 10; ++trial) {
        auto K = koszul_complex(
            r, Polynomial::monomial(Monomial(expo(rng), 0, 0), r),
            Polynomial::monomial(Monomial(0, expo(rng), 0), r),
            Polynomial::monomial(Monomial(0, 0, expo(rng)), r));
        long d = K.module(3)->degree(0) + static_cast<long>(rng() % 4);
        auto extra = GradedFreeModule::make(r, {"s"}, {d});
        auto extra_top = GradedFreeModule::make(r, {"t"}, {d});
        auto C3 = direct_sum({K.module(3), extra});
        ModuleMap d3 = ModuleMap::zero(C3, K.module(2));
        for (size_t i = 0; i < 3; ++i)
            d3.set_entry(i, 0, K.differential(3).entry(i, 0));
        ModuleMap d4 = ModuleMap::zero(extra_top, C3);
        d4.set_entry(1, 0, P("1", r));
        ChainComplex padded(
            {K.module(0), K.module(1), K.module(2), C3, extra_top},
            {K.differential(1), K.differential(2), d3, d4});

        ModuleMap phi = ModuleMap::zero(C3, extra_top);
        phi.set_entry(0, 1, P("1", r));
        auto [ker, inc] = coordinate_submodule(C3, {0});
        auto trimmed = split_trim(padded, phi, inc);
        long bound = default_verify_bound(trimmed);
        REQUIRE(verify_exactness(trimmed, bound).all_exact);
    }
}

TEST_CASE("verify_exactness flags a deliberately corrupted map") {
    auto r = q_ring();
    // droppping a generator from K2 leaves ker(d1) bigger than im(d2)
    auto K = koszul_xyz(r);
    auto [K2sub, inc] = coordinate_submodule(K.module(2), {0, 1});
    ModuleMap d2 = K.differential(2).compose(inc);
    ModuleMap d3 = ModuleMap::zero(GradedFreeModule::make(r, {}, {}), K2sub);
    ChainComplex broken({K.module(0), K.module(1), K2sub,
                         GradedFreeModule::make(r, {}, {})},
                        {K.differential(1), d2, d3});
    auto rep = verify_exactness(broken, 6);
    CHECK_FALSE(rep.all_exact);
}

TEST_CASE("shifted complexes keep homogeneity and exactness") {
    auto r = q_ring({3, 4, 5});
    auto K = koszul_complex(r, P("x", r), P("y", r), P("z", r));
    auto S = K.shifted(7);
    CHECK(S.module(0)->degree(0) == 7);
    CHECK(S.module(3)->degree(0) == 19);
    CHECK(verify_exactness(S, 25).all_exact);
}

TEST_CASE("chain maps with non-commuting squares are rejected") {
    auto r = q_ring();
    auto K = koszul_xyz(r);
    std::vector<ModuleMap> levels;
    for (size_t i = 0; i <= 3; ++i)
        levels.push_back(ModuleMap::identity(K.module(i)));
    levels[1].set_entry(0, 0, P("2", r));  // breaks square 1
    CHECK_THROWS_AS(ChainMap(K, K, levels), ComplexError);
}

TEST_CASE("zig-zag lift failure signals a broken exactness precondition") {
    auto r = q_ring();
    auto K = koszul_xyz(r);
    // K with d2 and d3 zeroed out is still a complex but its rows in the
    // double complex are not exact, so the first solve is inconsistent
    ModuleMap z2 = ModuleMap::zero(K.module(2), K.module(1));
    ModuleMap z3 = ModuleMap::zero(K.module(3), K.module(2));
    ChainComplex broken({K.module(0), K.module(1), K.module(2), K.module(3)},
                        {K.differential(1), z2, z3});
    DoubleComplexKF dc(broken, K);
    GradedVector xi0(dc.cell(0, 3));
    GradedVector xi1(dc.cell(1, 2));
    // xi1 = (x e2 - y e1) (x) ce1 lies in Ker(d1 (x) id)
    xi1.set_coord(dc.cell(1, 2)->index_of("(e2|ce1)"), P("x", r));
    xi1.set_coord(dc.cell(1, 2)->index_of("(e1|ce1)"), P("-y", r));
    CHECK_THROWS_AS(zigzag_lift(dc, xi0, xi1), NoLiftError);
}
