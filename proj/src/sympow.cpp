#include "starres/sympow.hpp"

#include <sstream>

namespace starres {

namespace {

long binom2(long n) { return n < 2 ? 0 : n * (n - 1) / 2; }

std::string format_partial(const LengthReport& rep) {
    std::ostringstream os;
    os << "partial filtration:";
    for (const auto& s : rep.steps)
        os << " k=" << s.k << " len=" << s.length;
    return os.str();
}

// index of a Rees monomial in the basis of S_d
size_t rees_pos(unsigned d, std::array<unsigned, 3> m) {
    auto basis = rees_monomials(d);
    for (size_t i = 0; i < basis.size(); ++i)
        if (basis[i] == m) return i;
    throw SympowError("rees monomial lookup failed");
}

// Pinned choices for the epsilon family at a pass whose F_3 basis
// corresponds to mon(A,B,C, d), d = n - 2k >= 2: keep (1,.), (2,.) and the
// (3,.) pairs with A-exponent <= 1, and expand each leftover v_(3, A^2 N)
// through the recursion identity among the v's.
void epsilon_family_overrides(unsigned d, const WeightedRing& ring,
                              StarOptions& opts) {
    opts.decomp_rule = StarOptions::DecompRule::LargestIndex;
    auto lam = rees_monomials(d);
    std::vector<IndexPair> star;
    for (size_t l = 0; l < lam.size(); ++l) {
        star.push_back({1, l});
        star.push_back({2, l});
        if (lam[l][0] <= 1) star.push_back({3, l});  // A-exponent <= 1
    }
    opts.lambda_star_override = star;

    ExpressionTables tables;
    const Polynomial x = Polynomial::variable(0, ring);
    for (const auto& N : rees_monomials(d - 2)) {
        std::map<IndexPair, Polynomial> a;
        auto shift = [&](unsigned da, unsigned db, unsigned dc) {
            return rees_pos(d, {N[0] + da, N[1] + db, N[2] + dc});
        };
        a.emplace(IndexPair{2, shift(1, 1, 0)},
                  Polynomial::constant(1, ring));  // + v_(2, ABN)
        a.emplace(IndexPair{1, shift(0, 2, 0)},
                  Polynomial::constant(-1, ring));  // - v_(1, B^2 N)
        a.emplace(IndexPair{1, shift(1, 0, 1)},
                  Polynomial::constant(1, ring));  // + v_(1, ACN)
        a.emplace(IndexPair{2, shift(0, 0, 2)}, -x);  // - x v_(2, C^2 N)
        a.emplace(IndexPair{3, shift(0, 1, 1)}, x);   // + x v_(3, BCN)
        tables.a.push_back(std::move(a));
        tables.b.emplace_back();
    }
    opts.expression_override = std::move(tables);
}

// The explicit char-2 second-pass choice for the doubled-exponent family:
// everything but (3, (1,B)), with v^2_(3,1,B) = -v^2_(2,1,C) - v^2_(1,2,C)
// (the coefficient-2 relation vanishes mod 2).
void doubled_family_char2_pass2_overrides(const WeightedRing& ring,
                                          StarOptions& opts) {
    std::vector<IndexPair> keep;
    for (size_t l = 0; l < 3; ++l)
        for (int i = 1; i <= 3; ++i)
            if (!(i == 3 && l == 0)) keep.push_back({i, l});
    opts.lambda_star_override = keep;
    ExpressionTables tables;
    tables.a.resize(1);
    tables.b.resize(1);
    tables.a[0].emplace(IndexPair{2, 1}, Polynomial::constant(-1, ring));
    tables.a[0].emplace(IndexPair{1, 2}, Polynomial::constant(-1, ring));
    opts.expression_override = std::move(tables);
}

}  // namespace

bool is_epsilon_family(const DeterminantalSpec& spec) {
    return spec.exponents() == std::array<unsigned, 6>{1, 1, 1, 2, 1, 1};
}

bool is_doubled_exponent_family(const DeterminantalSpec& spec) {
    const auto& e = spec.exponents();
    return e[0] == 1 && e[3] == 2 && 2 * e[1] <= e[4] && 2 * e[2] <= e[5];
}

SympowResult symbolic_power(const DeterminantalSpec& spec, unsigned n,
                            const SympowOptions& opts) {
    if (n < 2) throw SympowError("symbolic_power requires n >= 2");
    const WeightedRing& ring = spec.ring();
    const bool char2 = ring.field().characteristic() == 2;

    const bool eps_family = is_epsilon_family(spec);
    const bool doubled = is_doubled_exponent_family(spec) && n == 3;
    bool use_pinned = false;
    switch (opts.strategy) {
        case SympowOptions::Strategy::Greedy:
            break;
        case SympowOptions::Strategy::Pinned:
            if (!eps_family && !doubled)
                throw SympowError(
                    "pinned strategy requested for an unrecognized family");
            use_pinned = true;
            break;
        case SympowOptions::Strategy::Auto:
            use_pinned = eps_family || doubled;
            break;
    }

    auto params_for = [&](unsigned pass) -> std::array<Polynomial, 3> {
        if (opts.schedule.empty()) return spec.parameters();
        if (pass <= opts.schedule.size()) return opts.schedule[pass - 1];
        if (opts.repeat_last) return opts.schedule.back();
        throw SympowError("schedule exhausted");
    };

    SympowResult result{Ideal(ring), {}, {}};
    result.report.n = n;

    ChainComplex F = rees_resolution(spec, n);
    Ideal current = ideal_power(spec.ideal_I(), n);

    for (unsigned pass = 1; pass <= opts.max_passes; ++pass) {
        std::optional<std::array<Polynomial, 3>> params;
        try {
            params = params_for(pass);
        } catch (const SympowError&) {
            throw SympowError("schedule exhausted before the depth shortcut "
                              "fired; " +
                              format_partial(result.report));
        }

        StarOptions sopts;
        sopts.verify_bound = opts.verify_bound;
        sopts.check_cone_exactness = opts.check_cone_exactness;
        if (use_pinned && eps_family) {
            sopts.decomp_rule = StarOptions::DecompRule::LargestIndex;
            if (n >= 2 * pass + 2)
                epsilon_family_overrides(n - 2 * pass, ring, sopts);
        }
        if (use_pinned && doubled && char2 && pass == 2)
            doubled_family_char2_pass2_overrides(ring, sopts);

        StarInput input{F, *params};
        long predicted = predict_colon_length(input);
        auto rec = star_transform(input, sopts);

        Ideal next = image_ideal(rec.output);
        long measured = quotient_length(current, next);
        if (measured != predicted)
            throw SympowError(
                "pass " + std::to_string(pass) + ": measured length " +
                std::to_string(measured) + " != predicted " +
                std::to_string(predicted));

        LengthStep step;
        step.k = pass;
        step.length = measured;
        step.predicted = predicted;
        for (const auto& p : *params) step.params.push_back(p.str());

        bool check_oracle =
            opts.oracle == SympowOptions::OracleLevel::EveryPass;
        if (opts.oracle == SympowOptions::OracleLevel::FinalOnly &&
            rec.depth_shortcut)
            check_oracle = true;
        if (check_oracle) {
            long obound = rec.output.module(1)->max_degree();
            Ideal Q(ring, {(*params)[0], (*params)[1], (*params)[2]});
            Ideal oracle = colon_oracle(current, Q, obound);
            if (!ideals_equal(next, oracle, obound))
                throw SympowError("pass " + std::to_string(pass) +
                                  ": Im phi*_1 differs from the colon oracle");
            step.oracle_checked = true;
        }

        result.report.steps.push_back(std::move(step));
        result.report.total += measured;
        result.records.push_back(rec);
        current = next;

        if (rec.depth_shortcut) {
            result.report.passes = pass;
            result.report.shortcut_pass = pass;
            break;
        }
        F = rec.output;
        if (pass == opts.max_passes)
            throw SympowError("no depth shortcut after " +
                              std::to_string(opts.max_passes) + " passes; " +
                              format_partial(result.report));
    }

    long mbound = 0;
    for (const auto& g : current.generators())
        mbound = std::max(mbound, g.homogeneous_degree());
    result.symbolic = minimalize(current, mbound);
    return result;
}

long epsilon_length_formula(unsigned n) {
    long total = 0;
    for (unsigned k = 1; 2 * k <= n; ++k)
        total += binom2(static_cast<long>(n) - 2 * k + 2);
    return total;
}

EpsilonTable epsilon_table(unsigned n_max, unsigned pipeline_cutoff,
                           const SympowOptions& opts) {
    if (n_max < 2) throw SympowError("epsilon_table requires n_max >= 2");
    DeterminantalSpec spec({1, 1, 1, 2, 1, 1}, Field(0));
    EpsilonTable table;
    for (unsigned n = 2; n <= n_max; ++n) {
        EpsilonRow row;
        row.n = n;
        row.q = n / 2;
        long formula = epsilon_length_formula(n);
        if (n <= pipeline_cutoff) {
            auto res = symbolic_power(spec, n, opts);
            if (res.report.passes != n / 2)
                throw SympowError("epsilon_table: pass count mismatch at n=" +
                                  std::to_string(n));
            for (const auto& s : res.report.steps)
                if (s.length != binom2(static_cast<long>(n) - 2 * s.k + 2))
                    throw SympowError(
                        "epsilon_table: pass length mismatch at n=" +
                        std::to_string(n) + ", k=" + std::to_string(s.k));
            if (res.report.total != formula)
                throw SympowError("epsilon_table: total mismatch at n=" +
                                  std::to_string(n));
            row.length = res.report.total;
            row.pipeline_verified = true;
        } else {
            row.length = formula;
            row.pipeline_verified = false;
        }
        row.ratio = mpq_class(6 * row.length) /
                    mpq_class(static_cast<long>(n) * n * n);
        row.ratio.canonicalize();
        table.rows.push_back(row);
    }
    return table;
}

}  // namespace starres
