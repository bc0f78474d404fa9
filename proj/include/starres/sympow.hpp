#pragma once

#include "starres/determinantal.hpp"
#include "starres/star.hpp"

namespace starres {

struct SympowError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct LengthStep {
    unsigned k = 0;        // pass number, 1-based
    long length = 0;       // length of (I^n : Q^k) / (I^n : Q^{k-1})
    long predicted = 0;    // rank(F^k_3) * len(R/Q)
    bool oracle_checked = false;
    std::vector<std::string> params;
};

struct LengthReport {
    unsigned n = 0;
    unsigned passes = 0;
    unsigned shortcut_pass = 0;  // pass where the depth shortcut fired
    std::vector<LengthStep> steps;
    long total = 0;
};

struct SympowOptions {
    // Parameter triples per pass; when empty the family's Q = (x^a'',
    // y^b'', z^g'') is repeated. A non-repeating schedule that runs out before the
    // shortcut fires is an error carrying the partial filtration.
    std::vector<std::array<Polynomial, 3>> schedule;
    bool repeat_last = true;

    enum class Strategy {
        Auto,    // pinned per-family choices where recognized
        Pinned,  // require the recognized pinned choices, error otherwise
        Greedy,  // pure defaults
    };
    Strategy strategy = Strategy::Auto;

    enum class OracleLevel { None, FinalOnly, EveryPass };
    OracleLevel oracle = OracleLevel::EveryPass;

    long verify_bound = -1;  // forwarded to each pass when >= 0
    bool check_cone_exactness = true;
    unsigned max_passes = 64;
};

struct SympowResult {
    Ideal symbolic;  // I^(n), minimal homogeneous generators
    LengthReport report;
    std::vector<StarTransformRecord> records;
};

/// Iterates the star transform on the I^n resolution until the depth
/// shortcut fires; cross-checks each pass length (predicted
/// rank(F_3) * len(R/Q) vs the measured filtration) and, per options, the
/// brute-force colon oracle.
SympowResult symbolic_power(const DeterminantalSpec& spec, unsigned n,
                            const SympowOptions& opts = {});

/// sum_{k=1}^{floor(n/2)} C(n-2k+2, 2): the closed filtration sum for the
/// section-5 family.
long epsilon_length_formula(unsigned n);

struct EpsilonRow {
    unsigned n = 0;
    unsigned q = 0;       // floor(n/2)
    long length = 0;      // len I^(n)/I^n
    mpq_class ratio;      // 6 * length / n^3, exact
    bool pipeline_verified = false;
};

struct EpsilonTable {
    std::vector<EpsilonRow> rows;
};

/// Runs the section-5 pipeline (exponents (1,1,1,2,1,1), schedule (x,y,z))
/// for n = 2..n_max and tabulates lengths and the 6 len / n^3 ratios. For
/// n <= pipeline_cutoff every row is produced by the full pipeline and
/// cross-checked against the closed sum; beyond the cutoff rows come from
/// the sum alone and are flagged. Any mismatch aborts with the offending n.
EpsilonTable epsilon_table(unsigned n_max, unsigned pipeline_cutoff,
                           const SympowOptions& opts = {});

/// True for the (x,y,z / y,z,x^2) family the epsilon table runs on.
bool is_epsilon_family(const DeterminantalSpec& spec);

/// True for the doubled-exponent family
/// (alpha=1, alpha'=2, 2 beta <= beta', 2 gamma <= gamma').
bool is_doubled_exponent_family(const DeterminantalSpec& spec);

}  // namespace starres
