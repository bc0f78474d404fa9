#pragma once

#include "starres/complex.hpp"
#include "starres/ideal.hpp"

namespace starres {

struct StarError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Input of one star-transform pass: an acyclic length-3 complex with
/// F_0 = R whose last differential lands in Q F_2, plus the parameters
/// x1, x2, x3 generating the m-primary ideal Q.
struct StarInput {
    ChainComplex complex;
    std::array<Polynomial, 3> params;
};

/// Index (i, lambda): Koszul direction 1..3 times an F_3 generator.
struct IndexPair {
    int i = 1;          // 1..3
    size_t lambda = 0;  // generator index in F_3

    auto operator<=>(const IndexPair&) const = default;
};

/// Per-generator artifacts of the sigma construction.
struct LiftTrace {
    std::array<GradedVector, 3> v;  // v_(i,lambda) in F_2
    std::array<GradedVector, 3> u;  // u_(i,lambda) in F_1
    Polynomial d;                   // d_lambda in R
    GradedVector xi2;               // in K_2 (x) F_1
    GradedVector xi3;               // in K_3 (x) F_0
};

/// The chain map sigma : K (x) F_3 -> F with sigma_2 determined by the v
/// family and sigma_3 = -identity, together with the zig-zag bookkeeping.
struct ChainMapSigma {
    ChainComplex koszul;    // K(x1,x2,x3) with its natural grading
    ChainComplex domain;    // K (x) F_3, generator degrees shifted by -D
    std::vector<ModuleMap> sigma;  // sigma_0..sigma_3 : domain_i -> F_i
    std::vector<LiftTrace> lifts;  // one per F_3 generator
};

/// Coefficient tables expressing each v_(j,mu), (j,mu) in Lambda**, as
/// sum_(i,lambda) a * v_(i,lambda) + sum_u b * u. Entry k corresponds to
/// the k-th member of Lambda** in canonical order.
struct ExpressionTables {
    std::vector<std::map<IndexPair, Polynomial>> a;
    std::vector<std::map<size_t, Polynomial>> b;  // key: F_2 generator index
};

/// Basis selection certificate: Lambda*' with one unit pivot coordinate per
/// member, U = the unpivoted standard generators, and the degree-0
/// determinant of the change of basis (a unit iff nonzero).
struct BasisSelection {
    std::vector<IndexPair> lambda_star_prime;
    std::vector<size_t> pivots;  // F_2 coordinate pivoted by each member
    std::vector<size_t> U;       // F_2 generator indices kept
    Scalar certificate;
};

struct StarOptions {
    enum class DecompRule {
        SmallestIndex,  // term goes to the least i with x_i dividing it
        LargestIndex,   // term goes to the greatest such i
    };
    DecompRule decomp_rule = DecompRule::SmallestIndex;

    // Optional explicit choices (validated exactly, errors when invalid):
    std::optional<std::vector<std::array<GradedVector, 3>>> v_override;
    std::optional<std::vector<IndexPair>> lambda_star_override;
    std::optional<ExpressionTables> expression_override;

    // Degree bound for the per-degree certifications; < 0 selects
    // max generator degree + max parameter degree + 2.
    long verify_bound = -1;
    bool check_cone_hypothesis = true;
    bool check_cone_exactness = true;
    bool check_output_exactness = true;
    // Cross-check Im phi*_1 against the brute-force colon oracle.
    bool check_colon_oracle = false;
};

/// Everything produced by one star-transform pass.
struct StarTransformRecord {
    StarInput input;
    ChainMapSigma sigma;
    ChainComplex cone;     // length 4, resolves a : Q
    ChainComplex trimmed;  // F'_3 -> F'_2 -> F*_1 -> R
    std::vector<IndexPair> lambda_tilde;
    std::vector<IndexPair> lambda_star_prime;
    std::vector<IndexPair> lambda_double_star;
    std::vector<size_t> U;
    Scalar basis_certificate;
    ExpressionTables coefficients;
    std::vector<GradedVector> w_star;  // elements of F'_3
    ChainComplex output;               // F*: length 3, top rank |Lambda**|
    bool depth_shortcut = false;
    int promotion_sweeps = 0;
    long verify_bound = 0;
};

/// phi_3(w_lambda) = sum_i x_i v_(i,lambda) with the term-assignment rule
/// for monomial parameters (or a deterministic per-degree solve otherwise).
std::vector<std::array<GradedVector, 3>> decompose_into_Q(
    const ChainComplex& F, const std::array<Polynomial, 3>& params,
    StarOptions::DecompRule rule = StarOptions::DecompRule::SmallestIndex);

/// Builds sigma by zig-zag lifting through K (x) F; verifies the chain-map
/// squares and the componentwise lift relations exactly.
ChainMapSigma build_sigma(const ChainComplex& F,
                          const std::array<Polynomial, 3>& params,
                          const std::vector<std::array<GradedVector, 3>>& v);

/// Mapping cone of sigma and its split trim (the K_3 (x) F_3 summand is
/// removed through phi = (0  -sigma_3^{-1})).
std::pair<ChainComplex, ChainComplex> cone_and_split(const ChainComplex& F,
                                                     const ChainMapSigma& s);

/// Greedy maximal Lambda*' via unit-pivot elimination on the residues of
/// the v family mod m, or validation of an explicit override.
BasisSelection select_basis_subset(
    const ChainComplex& F, const std::vector<std::array<GradedVector, 3>>& v,
    const std::optional<std::vector<IndexPair>>& override_set = std::nullopt);

/// Expresses each leftover v_(j,mu) over the selected basis. The default
/// path solves against {v restricted to Lambda*'} + U and runs the
/// promotion loop when a unit b shows up; sweeps reports the iteration
/// count. Overrides are validated exactly (identity + membership in m).
ExpressionTables express_remaining(
    const ChainComplex& F, const std::vector<std::array<GradedVector, 3>>& v,
    BasisSelection& sel, int& sweeps,
    const std::optional<ExpressionTables>& override_tables = std::nullopt);

/// Predicted colon length: rank(F_3) * length(R/Q).
long predict_colon_length(const StarInput& input);

/// The full pass.
StarTransformRecord star_transform(const StarInput& input,
                                   const StarOptions& opts = {});

/// Ideal generated by the entries of the first differential (Im phi_1).
Ideal image_ideal(const ChainComplex& c);

/// Default verification bound used by the pass (max generator degree of the
/// input + max parameter degree + 2).
long star_verify_bound(const StarInput& input);

}  // namespace starres
