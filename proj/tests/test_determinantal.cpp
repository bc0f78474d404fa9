#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "starres/determinantal.hpp"

using namespace starres;

namespace {

Polynomial P(const std::string& s, const WeightedRing& r) {
    return parse_polynomial(s, r);
}

}  // namespace

TEST_CASE("weight solver") {
    // unit weights for the symmetric tuple
    CHECK(solve_weights({1, 1, 1, 2, 2, 2}) ==
          std::array<unsigned, 3>{1, 1, 1});
    // the section-5 family (x,y,z / y,z,x^2)
    CHECK(solve_weights({1, 1, 1, 2, 1, 1}) ==
          std::array<unsigned, 3>{3, 4, 5});
    // exponents (1,1,1,2,2,3)
    CHECK(solve_weights({1, 1, 1, 2, 2, 3}) ==
          std::array<unsigned, 3>{9, 10, 7});
}

TEST_CASE("spec derives the expected minors and parameters") {
    DeterminantalSpec spec({1, 1, 1, 2, 1, 1}, Field(0));
    const auto& r = spec.ring();
    CHECK(spec.minor_a() == P("z^2 - x^2*y", r));
    CHECK(spec.minor_b() == P("x^3 - y*z", r));
    CHECK(spec.minor_c() == P("y^2 - x*z", r));
    auto q = spec.parameters();
    CHECK(q[0] == P("x", r));
    CHECK(q[1] == P("y", r));
    CHECK(q[2] == P("z", r));
    CHECK(spec.deg_f() == 13);
    CHECK(spec.deg_g() == 14);
}

TEST_CASE("rees resolution ranks and exactness") {
    DeterminantalSpec spec({1, 1, 1, 2, 1, 1}, Field(0));
    for (unsigned n : {2u, 3u}) {
        auto F = rees_resolution(spec, n);
        CHECK(F.module(3)->rank() == n * (n - 1) / 2);
        CHECK(F.module(2)->rank() == n * (n + 1));
        CHECK(F.module(1)->rank() == (n + 1) * (n + 2) / 2);
        CHECK(F.module(0)->rank() == 1);
        CHECK(F.is_complex());
    }
    // exactness of the n = 3 resolution up to degree 20
    auto F = rees_resolution(spec, 3);
    CHECK(verify_exactness(F, 20).all_exact);
}

TEST_CASE("rees resolution rejects n < 2") {
    DeterminantalSpec spec({1, 1, 1, 2, 1, 1}, Field(0));
    CHECK_THROWS_AS(rees_resolution(spec, 1), SpecError);
}

TEST_CASE("phi2 o phi3 = f(-g) + g f = 0 and eps image is I^n") {
    DeterminantalSpec spec({1, 1, 1, 2, 2, 2}, Field(0));
    auto F = rees_resolution(spec, 2);
    CHECK(F.differential(2).compose(F.differential(3)).is_zero());

    // eps image = I^2, both directions
    Ideal I2 = ideal_power(spec.ideal_I(), 2);
    const ModuleMap& eps = F.differential(1);
    for (size_t j = 0; j < F.module(1)->rank(); ++j)
        CHECK(membership(eps.entry(0, j), I2, 12));
    for (const auto& g : I2.generators()) {
        Ideal from_eps(spec.ring(), [&] {
            std::vector<Polynomial> v;
            for (size_t j = 0; j < F.module(1)->rank(); ++j)
                v.push_back(eps.entry(0, j));
            return v;
        }());
        CHECK(membership(g, from_eps, 12));
    }
}

TEST_CASE("d-sequence certificate for the section-5 family") {
    DeterminantalSpec spec({1, 1, 1, 2, 1, 1}, Field(0));
    auto rep = dsequence_checks(spec, 30);
    CHECK(rep.syzygy1);
    CHECK(rep.syzygy2);
    CHECK(rep.all());
    // the second syzygy, spelled out
    const auto& r = spec.ring();
    CHECK((P("y", r) * spec.minor_a() + P("z", r) * spec.minor_b() +
           P("x^2", r) * spec.minor_c())
              .is_zero());
}

TEST_CASE("degenerate weight systems are rejected") {
    CHECK_THROWS_AS(DeterminantalSpec({1, 1, 1, 1, 1, 1}, Field(0),
                                      std::array<unsigned, 3>{1, 2, 1}),
                    SpecError);
}
