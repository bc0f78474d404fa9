#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "starres/linalg.hpp"

using namespace starres;

namespace {

Matrix from_rows(const std::vector<std::vector<long>>& rows, const Field& f) {
    Matrix m(rows.size(), rows.empty() ? 0 : rows[0].size(), f);
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < rows[i].size(); ++j)
            m.at(i, j) = Scalar(rows[i][j], f);
    return m;
}

}  // namespace

TEST_CASE("solve with identity returns b") {
    Field q(0);
    Matrix id = from_rows({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, q);
    Vector b = {Scalar(3, q), Scalar(-7, q), Scalar(5, q)};
    auto x = linear_solve(id, b);
    REQUIRE(x.has_value());
    CHECK(*x == b);
}

TEST_CASE("rank of zero matrix is 0") {
    Field q(0);
    Matrix z(4, 5, q);
    CHECK(rank(z) == 0);
    CHECK(kernel(z).size() == 5);
}

TEST_CASE("kernel of (1 1) over F_2 is spanned by (1,1)") {
    Field f2(2);
    Matrix m = from_rows({{1, 1}}, f2);
    auto k = kernel(m);
    REQUIRE(k.size() == 1);
    CHECK(k[0][0] == Scalar(1, f2));
    CHECK(k[0][1] == Scalar(1, f2));
}

TEST_CASE("inconsistent system returns nullopt") {
    Field q(0);
    Matrix m = from_rows({{1, 1}, {1, 1}}, q);
    Vector b = {Scalar(1, q), Scalar(2, q)};
    CHECK_FALSE(linear_solve(m, b).has_value());
}

TEST_CASE("randomized: solutions and kernels are exact") {
    Field q(0);
    std::mt19937 rng(99);
    std::uniform_int_distribution<long> entry(-5, 5);
    for (int trial = 0; trial < 60; ++trial) {
        size_t rows = 1 + rng() % 6, cols = 1 + rng() % 6;
        Matrix a(rows, cols, q);
        for (size_t i = 0; i < rows; ++i)
            for (size_t j = 0; j < cols; ++j) a.at(i, j) = Scalar(entry(rng), q);
        // right side in the column space by construction
        Vector xs(cols, Scalar(0, q));
        for (auto& v : xs) v = Scalar(entry(rng), q);
        Vector b(rows, Scalar(0, q));
        for (size_t i = 0; i < rows; ++i)
            for (size_t j = 0; j < cols; ++j) b[i] += a.at(i, j) * xs[j];
        auto sol = linear_solve(a, b);
        REQUIRE(sol.has_value());
        for (size_t i = 0; i < rows; ++i) {
            Scalar acc(0, q);
            for (size_t j = 0; j < cols; ++j) acc += a.at(i, j) * (*sol)[j];
            CHECK(acc == b[i]);
        }
        for (const auto& v : kernel(a)) {
            for (size_t i = 0; i < rows; ++i) {
                Scalar acc(0, q);
                for (size_t j = 0; j < cols; ++j) acc += a.at(i, j) * v[j];
                CHECK(acc.is_zero());
            }
        }
        CHECK(rank(a) + kernel(a).size() == cols);
        // the modular lower bound agrees with the rank on these small inputs
        auto lb = rank_lower_bound(a, 2147483647ull);
        REQUIRE(lb.has_value());
        CHECK(*lb <= rank(a));
    }
}

TEST_CASE("rank over F_p via the word-size path matches the generic path") {
    Field f5(5);
    Matrix m = from_rows({{1, 2, 3}, {4, 0, 1}, {0, 3, 4}}, f5);
    auto lb = rank_lower_bound(m, 5);
    REQUIRE(lb.has_value());
    CHECK(*lb == rank(m));
}

TEST_CASE("dimension mismatch throws") {
    Field q(0);
    Matrix m(2, 2, q);
    Vector b(3, Scalar(0, q));
    CHECK_THROWS_AS(linear_solve(m, b), LinalgError);
}
