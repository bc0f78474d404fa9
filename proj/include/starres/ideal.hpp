#pragma once

#include <optional>

#include "starres/module.hpp"

namespace starres {

struct IdealError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Homogeneous ideal of the weighted ring, given by generators. Zero
/// generators are pruned; all generators must be homogeneous.
class Ideal {
public:
    explicit Ideal(const WeightedRing& ring) : ring_(ring) {}
    Ideal(const WeightedRing& ring, std::vector<Polynomial> gens);

    const WeightedRing& ring() const { return ring_; }
    const std::vector<Polynomial>& generators() const { return gens_; }
    bool is_zero() const { return gens_.empty(); }
    long max_generator_degree() const;

    /// The maximal ideal m = (x, y, z).
    static Ideal maximal(const WeightedRing& ring);
    /// The unit ideal (1), representing R itself.
    static Ideal unit(const WeightedRing& ring);

private:
    WeightedRing ring_;
    std::vector<Polynomial> gens_;
};

/// I^n: generated by all n-fold products of generators.
Ideal ideal_power(const Ideal& I, unsigned n);

/// Ideal product.
Ideal ideal_product(const Ideal& a, const Ideal& b);

/// Degree-d graded piece of the ideal, as the span of monomial multiples of
/// the generators inside R_d; returns the piece dimension.
size_t ideal_piece_dim(const Ideal& I, long d);

/// Exact per-degree membership: f in I iff f lies in the span of
/// { m * g : g generator, deg(m g) = deg f }. Requires f homogeneous with
/// deg f <= d_bound.
bool membership(const Polynomial& f, const Ideal& I, long d_bound);

/// Brute-force colon ideal (a : J) computed degree by degree up to d_max,
/// returned as minimal homogeneous generators (degree-ascending Nakayama
/// pruning). Independent of the star-transform pipeline.
Ideal colon_oracle(const Ideal& a, const Ideal& J, long d_max);

/// Reduce a generating set to a minimal one (degree-ascending, drop members
/// of the ideal generated by the others already kept).
Ideal minimalize(const Ideal& I, long d_bound);

/// True iff the two ideals agree in every degree <= d_max (piece dimensions
/// plus mutual membership of generators).
bool ideals_equal(const Ideal& a, const Ideal& b, long d_max);

inline constexpr long kInfiniteLength = -1;

/// Length of outer/inner as sum of graded piece codimensions. Certified
/// finite via an annihilation exponent N with m^N * outer <= inner, which
/// bounds the degrees where the quotient can live; kInfiniteLength when no
/// such N <= n_cap exists. Throws when inner is not contained in outer.
long quotient_length(const Ideal& inner, const Ideal& outer,
                     unsigned n_cap = 24);

/// Length of R/I (finite iff I is m-primary).
long colength(const Ideal& I, unsigned n_cap = 24);

}  // namespace starres
