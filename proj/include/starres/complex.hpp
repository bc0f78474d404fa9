#pragma once

#include <array>
#include <map>

#include "starres/module.hpp"

namespace starres {

struct ComplexError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Signals that a required lift does not exist, i.e. an exactness
/// precondition of the input failed.
struct NoLiftError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Chain complex of graded free modules F_0 <- F_1 <- ... <- F_L with
/// differentials d_i : F_i -> F_{i-1}. Compositions are verified to vanish
/// symbolically on construction.
class ChainComplex {
public:
    ChainComplex(std::vector<ModulePtr> modules, std::vector<ModuleMap> maps);

    size_t length() const { return maps_.size(); }
    const ModulePtr& module(size_t i) const { return modules_.at(i); }
    /// d_i : F_i -> F_{i-1}, for 1 <= i <= length().
    const ModuleMap& differential(size_t i) const { return maps_.at(i - 1); }
    const WeightedRing& ring() const { return modules_[0]->ring(); }

    bool is_complex() const;
    void require_complex() const;

    long max_generator_degree() const;
    /// Same complex with every generator degree shifted by s.
    ChainComplex shifted(long s) const;

    bool operator==(const ChainComplex& o) const;

private:
    std::vector<ModulePtr> modules_;  // F_0 .. F_L
    std::vector<ModuleMap> maps_;     // maps_[i-1] = d_i
};

/// Koszul complex K(x1, x2, x3) on homogeneous parameters: bases e_i for
/// K_1, ce_i (the complements e_j ^ e_k) for K_2, e123 for K_3, with
///   d1(e_i) = x_i,
///   d2(e_i ^ e_j) = x_i e_j - x_j e_i   (i < j),
///   d3(e123) = x1 ce1 - x2 ce2 + x3 ce3.
ChainComplex koszul_complex(const WeightedRing& ring, const Polynomial& x1,
                            const Polynomial& x2, const Polynomial& x3);

/// Koszul complex on two parameters (0 -> R -> R^2 -> R).
ChainComplex koszul_complex_pair(const WeightedRing& ring,
                                 const Polynomial& x1, const Polynomial& x2);

/// Degree-0 chain map between complexes of equal length; commuting squares
/// are verified symbolically on construction.
class ChainMap {
public:
    ChainMap(ChainComplex source, ChainComplex target,
             std::vector<ModuleMap> levels);

    const ChainComplex& source() const { return source_; }
    const ChainComplex& target() const { return target_; }
    const ModuleMap& level(size_t i) const { return levels_.at(i); }

private:
    ChainComplex source_, target_;
    std::vector<ModuleMap> levels_;  // levels_[i] : source F_i -> target F_i
};

/// Mapping cone of sigma : G -> F, with C_i = G_{i-1} (+) F_i (G block
/// first) and differential
///   d_i = [[ dG_{i-1}, 0 ], [ (-1)^{i-1} sigma_{i-1}, dF_i ]].
ChainComplex mapping_cone(const ChainMap& sigma);

/// K (x) M : the complex with modules K_p (x) M and maps d_p (x) id, all
/// generator degrees shifted by `shift`.
ChainComplex tensor_with_module(const ChainComplex& K, ModulePtr M,
                                long shift = 0);

/// The K (x) F double complex: cells C_pq = K_p (x) F_q, horizontal maps
/// d'_pq = dK_p (x) id, vertical maps d''_pq = id (x) dF_q. Rows and
/// columns commute; the total differential uses the sign (-1)^p on d''.
class DoubleComplexKF {
public:
    DoubleComplexKF(const ChainComplex& K, const ChainComplex& F);

    const ModulePtr& cell(size_t p, size_t q) const { return cells_[p][q]; }
    const ModuleMap& horiz(size_t p, size_t q) const;  // C_pq -> C_{p-1,q}
    const ModuleMap& vert(size_t p, size_t q) const;   // C_pq -> C_{p,q-1}
    size_t rows() const { return pmax_ + 1; }
    size_t cols() const { return qmax_ + 1; }

private:
    size_t pmax_, qmax_;
    std::array<std::array<ModulePtr, 4>, 4> cells_;
    std::map<std::pair<size_t, size_t>, ModuleMap> horiz_, vert_;
};

/// Zig-zag lift through the double complex: given xi0 in C_03 and xi1 in
/// C_12 with d''(xi0) + d'(xi1) = 0, produce xi2 in C_21 and xi3 in C_30
/// completing a cycle of the total complex. Throws NoLiftError when a lift
/// does not exist (the exactness precondition failed).
std::pair<GradedVector, GradedVector> zigzag_lift(const DoubleComplexKF& dc,
                                                  const GradedVector& xi0,
                                                  const GradedVector& xi1);

/// Checks the three component equations making (xi0, xi1, xi2, xi3) a cycle
/// of the total complex; exact symbolic recomputation.
bool zigzag_cycle_check(const DoubleComplexKF& dc, const GradedVector& xi0,
                        const GradedVector& xi1, const GradedVector& xi2,
                        const GradedVector& xi3);

struct PositionReport {
    size_t dim_ker = 0;
    size_t dim_im = 0;
    bool exact = true;
};

struct DegreeReport {
    long degree = 0;
    std::vector<PositionReport> positions;  // positions 1..L
};

struct ExactnessReport {
    long d_max = 0;
    bool all_exact = true;
    // first (degree, position) where exactness fails, if any
    std::optional<std::pair<long, size_t>> first_failure;
    std::vector<DegreeReport> degrees;
};

/// Per-degree exactness certification at the interior positions 1..L for
/// all weighted degrees <= d_max, by rank computations on the degree-d
/// coefficient matrices. Over Q the ranks are certified through modular
/// lower bounds (rank_p <= rank plus the subcomplex inequality), with exact
/// rational elimination as the fallback, so every verdict is exact.
ExactnessReport verify_exactness(const ChainComplex& c, long d_max);

/// Default regression-guard bound: twice the largest generator degree + 2.
long default_verify_bound(const ChainComplex& c);

/// Split trimming: given phi with phi o d_L = id on F_L and an inclusion
/// ker : G* -> F_{L-1} of a free complement basis spanning Ker phi, returns
/// the complex with (F_L, F_{L-1}) replaced by G*.
ChainComplex split_trim(const ChainComplex& c, const ModuleMap& phi,
                        const ModuleMap& kernel_inclusion);

/// Per-degree certificate of the cone-acyclicity hypothesis
/// sigma_0^{-1}(Im dF_1) = Im dG_1 for degrees <= d_max.
bool certify_cone_hypothesis(const ChainMap& sigma, long d_max);

}  // namespace starres
