#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "starres/field.hpp"

namespace starres {

struct RingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Weighted-graded polynomial ring k[x,y,z] with positive integer weights.
/// This is the graded model of the 3-dimensional local ring: an element is a
/// local unit exactly when its constant term is nonzero.
class WeightedRing {
public:
    WeightedRing() = default;
    WeightedRing(std::array<unsigned, 3> weights, Field field);

    const std::array<unsigned, 3>& weights() const { return weights_; }
    const Field& field() const { return field_; }
    unsigned max_weight() const;
    static const std::array<std::string, 3>& variables();

    bool operator==(const WeightedRing&) const = default;

private:
    std::array<unsigned, 3> weights_ = {1, 1, 1};
    Field field_;
};

/// Monomial x^a y^b z^c.
class Monomial {
public:
    Monomial() = default;
    Monomial(unsigned a, unsigned b, unsigned c) : e_{a, b, c} {}

    const std::array<unsigned, 3>& exponents() const { return e_; }
    unsigned exponent(size_t i) const { return e_[i]; }
    long weighted_degree(const WeightedRing& ring) const;
    bool is_one() const { return e_[0] == 0 && e_[1] == 0 && e_[2] == 0; }

    Monomial operator*(const Monomial& o) const;
    bool divides(const Monomial& o) const;
    Monomial divide(const Monomial& o) const;  // o / this, requires divides

    bool operator==(const Monomial&) const = default;

    std::string str() const;

private:
    std::array<unsigned, 3> e_ = {0, 0, 0};
};

/// Canonical term order: weighted degree ascending, then lexicographic
/// ascending on the exponent triple. Total, deterministic.
int cmp_monomials(const Monomial& a, const Monomial& b,
                  const WeightedRing& ring);

/// Sparse exact polynomial in x, y, z over the ring's field, terms kept in
/// canonical order with no zero coefficients.
class Polynomial {
public:
    using Term = std::pair<Monomial, Scalar>;

    explicit Polynomial(const WeightedRing& ring) : ring_(ring) {}
    Polynomial(const WeightedRing& ring, std::vector<Term> terms);

    static Polynomial zero(const WeightedRing& ring) { return Polynomial(ring); }
    static Polynomial constant(long c, const WeightedRing& ring);
    static Polynomial monomial(const Monomial& m, const WeightedRing& ring);
    static Polynomial term(const Monomial& m, const Scalar& c,
                           const WeightedRing& ring);
    static Polynomial variable(size_t i, const WeightedRing& ring);

    const WeightedRing& ring() const { return ring_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }

    Scalar coefficient(const Monomial& m) const;
    Scalar constant_term() const;

    /// True iff the polynomial is not in m = (x,y,z), i.e. has a unit part.
    bool is_local_unit() const { return !constant_term().is_zero(); }

    bool is_monomial() const;  // single term with coefficient 1

    bool is_homogeneous() const;
    bool is_homogeneous_of_degree(long d) const;
    /// Degree of a nonzero homogeneous polynomial.
    long homogeneous_degree() const;

    Polynomial operator-() const;
    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);

    Polynomial times_monomial(const Monomial& m) const;
    Polynomial times_scalar(const Scalar& c) const;

    /// Exact quotient by a monomial; requires m to divide every term.
    Polynomial divide_by_monomial(const Monomial& m) const;

    bool operator==(const Polynomial& o) const;
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

    std::string str() const;

private:
    void check_same_ring(const Polynomial& o) const;
    void normalize();  // sort canonically, merge, drop zeros

    WeightedRing ring_;
    std::vector<Term> terms_;
};

/// Parses the polynomial text format: a signed sum of terms
/// `c*x^a*y^b*z^c`, with `*` and `^` omitted for exponent 1 and
/// coefficient +-1, e.g. `z^2 - x^2*y`. Round-trips with Polynomial::str().
Polynomial parse_polynomial(const std::string& text, const WeightedRing& ring);

/// All monomials of the given weighted degree, in canonical order.
std::vector<Monomial> monomials_of_weighted_degree(const WeightedRing& ring,
                                                   long d);

/// Dimension of the degree-d graded piece of the ring.
size_t ring_piece_dim(const WeightedRing& ring, long d);

}  // namespace starres
