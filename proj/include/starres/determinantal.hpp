#pragma once

#include "starres/complex.hpp"
#include "starres/ideal.hpp"

namespace starres {

struct SpecError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The 2x3 matrix family
///     ( x^alpha   y^beta    z^gamma  )
///     ( y^beta'   z^gamma'  x^alpha' )
/// whose maximal minors a, b, c generate the ideal I. The weights make
/// a, b, c (and the Rees forms f, g) weighted-homogeneous; they are solved
/// from the exponents unless supplied.
class DeterminantalSpec {
public:
    /// exponents = (alpha, beta, gamma, alpha', beta', gamma')
    DeterminantalSpec(std::array<unsigned, 6> exponents, Field field,
                      std::optional<std::array<unsigned, 3>> weights =
                          std::nullopt);

    const std::array<unsigned, 6>& exponents() const { return exponents_; }
    const WeightedRing& ring() const { return ring_; }

    unsigned alpha() const { return exponents_[0]; }
    unsigned beta() const { return exponents_[1]; }
    unsigned gamma() const { return exponents_[2]; }
    unsigned alpha2() const { return exponents_[3]; }
    unsigned beta2() const { return exponents_[4]; }
    unsigned gamma2() const { return exponents_[5]; }

    /// a = z^{g+g'} - x^{a'} y^b, b = x^{a+a'} - y^{b'} z^g,
    /// c = y^{b+b'} - x^a z^{g'}
    const Polynomial& minor_a() const { return a_; }
    const Polynomial& minor_b() const { return b_; }
    const Polynomial& minor_c() const { return c_; }
    Ideal ideal_I() const;

    /// Q = (x^{alpha''}, y^{beta''}, z^{gamma''}), the parameter ideal of
    /// the first transform (double primes are the coordinatewise minima).
    std::array<Polynomial, 3> parameters() const;
    Ideal ideal_Q() const;

    /// Degrees of the Rees variables A, B, C (= degrees of a, b, c) and of
    /// the linear forms f, g.
    long deg_A() const { return a_.homogeneous_degree(); }
    long deg_B() const { return b_.homogeneous_degree(); }
    long deg_C() const { return c_.homogeneous_degree(); }
    long deg_f() const;
    long deg_g() const;

private:
    std::array<unsigned, 6> exponents_;
    WeightedRing ring_;
    Polynomial a_, b_, c_;
};

/// Positive coprime integer weights making the family homogeneous; throws
/// SpecError when the homogeneity system has no positive solution.
std::array<unsigned, 3> solve_weights(const std::array<unsigned, 6>& e);

/// Monomials A^i B^j C^k of total degree d in the Rees variables, in the
/// canonical order of the S_d basis. Entries are the (i, j, k) exponents.
std::vector<std::array<unsigned, 3>> rees_monomials(unsigned d);

/// Label "A^i*B^j*C^k" for a Rees monomial.
std::string rees_label(const std::array<unsigned, 3>& m);

/// The minimal free resolution of I^n (n >= 2):
///     S_{n-2} --(-g; f)--> S_{n-1} (+) S_{n-1} --(f g)--> S_n --eps--> R
/// with eps the substitution A -> a, B -> b, C -> c. Bases are the Rees
/// monomial sets; the [.]-side of the middle module is the f-column.
ChainComplex rees_resolution(const DeterminantalSpec& spec, unsigned n);

struct DSequenceReport {
    bool syzygy1 = false;  // x^a a + y^b b + z^g c = 0
    bool syzygy2 = false;  // y^b' a + z^g' b + x^a' c = 0
    // (p, q) : r == (p, q) : r^2 for every ordering of a, b, c
    std::vector<std::pair<std::string, bool>> colon_conditions;
    // Koszul on each pair is exact at positions 1, 2 (complete intersection)
    std::vector<std::pair<std::string, bool>> pair_regular;
    bool all() const;
};

/// Computational d-sequence certificate for a, b, c up to the degree bound.
DSequenceReport dsequence_checks(const DeterminantalSpec& spec, long d_max);

}  // namespace starres
