#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "starres/ideal.hpp"

using namespace starres;

namespace {

WeightedRing q_ring(std::array<unsigned, 3> w = {1, 1, 1}) {
    return WeightedRing(w, Field(0));
}

Polynomial P(const std::string& s, const WeightedRing& r) {
    return parse_polynomial(s, r);
}

Ideal ideal(const WeightedRing& r, std::initializer_list<const char*> gens) {
    std::vector<Polynomial> g;
    for (const char* s : gens) g.push_back(P(s, r));
    return Ideal(r, std::move(g));
}

// independent oracle for len R/(x, y^b, z^c) with unit weights: count the
// standard monomials y^i z^j with i < b, j < c
long brute_colength_xbc(unsigned b, unsigned c) {
    return static_cast<long>(b) * static_cast<long>(c);
}

}  // namespace

TEST_CASE("ideal powers") {
    auto r = q_ring();
    auto I = ideal(r, {"x", "y"});
    CHECK(ideal_power(I, 1).generators().size() == 2);
    auto I2 = ideal_power(I, 2);
    REQUIRE(I2.generators().size() == 3);
    CHECK(membership(P("x^2", r), I2, 5));
    CHECK(membership(P("x*y", r), I2, 5));
    CHECK(membership(P("y^2", r), I2, 5));
    CHECK_FALSE(membership(P("x", r), I2, 5));
}

TEST_CASE("section-5 I^2 has the six expected generators") {
    auto r = q_ring({3, 4, 5});
    auto I = ideal(r, {"z^2 - x^2*y", "x^3 - y*z", "y^2 - x*z"});
    auto I2 = ideal_power(I, 2);
    CHECK(I2.generators().size() == 6);
    auto a = P("z^2 - x^2*y", r), b = P("x^3 - y*z", r), c = P("y^2 - x*z", r);
    for (const auto& p : {a * a, a * b, a * c, b * b, b * c, c * c})
        CHECK(membership(p, I2, 30));
}

TEST_CASE("membership basics") {
    auto r = q_ring();
    auto I = ideal(r, {"y", "z"});
    CHECK(membership(P("y", r), I, 10));
    CHECK_FALSE(membership(P("x", r), I, 10));
    CHECK_THROWS_AS(membership(P("x^20", r), I, 10), IdealError);

    // the first syzygy of the minors lands in every ideal: it is zero
    auto r345 = q_ring({3, 4, 5});
    auto x = P("x", r345), y = P("y", r345), z = P("z", r345);
    auto s = x * P("z^2 - x^2*y", r345) + y * P("x^3 - y*z", r345) +
             z * P("y^2 - x*z", r345);
    CHECK(s.is_zero());
    CHECK(membership(s, ideal(r345, {"x"}), 30));
}

TEST_CASE("colon oracle basics") {
    auto r = q_ring();
    auto a = ideal(r, {"x^2", "x*y"});

    // a : R = a
    auto aR = colon_oracle(a, Ideal::unit(r), 8);
    CHECK(ideals_equal(aR, a, 8));

    // (x^2, xy) : (x) = (x, y)
    auto q = colon_oracle(a, ideal(r, {"x"}), 8);
    CHECK(ideals_equal(q, ideal(r, {"x", "y"}), 8));
    CHECK(q.generators().size() == 2);
}

TEST_CASE("lengths of monomial colengths") {
    auto r = q_ring();
    CHECK(colength(Ideal::maximal(r)) == 1);
    for (unsigned b = 1; b <= 3; ++b)
        for (unsigned c = 1; c <= 3; ++c) {
            auto Q = ideal(r, {"x"});
            std::vector<Polynomial> gens = {
                P("x", r), Polynomial::monomial(Monomial(0, b, 0), r),
                Polynomial::monomial(Monomial(0, 0, c), r)};
            CHECK(colength(Ideal(r, gens)) == brute_colength_xbc(b, c));
        }
}

TEST_CASE("quotient length checks containment") {
    auto r = q_ring();
    CHECK_THROWS_AS(quotient_length(ideal(r, {"x"}), ideal(r, {"y"})),
                    IdealError);
}

TEST_CASE("length of a non-finite quotient is reported infinite") {
    auto r = q_ring();
    // R/(x) has infinite length
    CHECK(quotient_length(ideal(r, {"x"}), Ideal::unit(r), 6) ==
          kInfiniteLength);
}

TEST_CASE("section-5 n=2: I^2 : m strictly bigger, quotient length 1") {
    auto r = q_ring({3, 4, 5});
    auto I = ideal(r, {"z^2 - x^2*y", "x^3 - y*z", "y^2 - x*z"});
    auto I2 = ideal_power(I, 2);
    auto colon = colon_oracle(I2, Ideal::maximal(r), 24);
    CHECK_FALSE(ideals_equal(colon, I2, 24));
    CHECK(quotient_length(I2, colon) == 1);
}

TEST_CASE("iterated colon equals colon by product") {
    auto r = q_ring();
    auto a = ideal(r, {"x^3", "x*y^2", "y^3*z"});
    auto J1 = ideal(r, {"x", "y"});
    auto J2 = ideal(r, {"y", "z"});
    auto lhs = colon_oracle(a, ideal_product(J1, J2), 10);
    auto rhs = colon_oracle(colon_oracle(a, J1, 10), J2, 10);
    CHECK(ideals_equal(lhs, rhs, 9));
}

TEST_CASE("minimalize drops redundant generators") {
    auto r = q_ring();
    auto I = ideal(r, {"x", "x^2", "y", "x*y + y^2"});
    auto m = minimalize(I, 8);
    CHECK(m.generators().size() == 2);
}
