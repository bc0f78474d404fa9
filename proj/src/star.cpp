#include "starres/star.hpp"

#include <algorithm>

namespace starres {

namespace {

// (s_i, t_i): the complement of i in {1,2,3} with s_i < t_i
constexpr int kS[4] = {0, 2, 1, 1};
constexpr int kT[4] = {0, 3, 3, 2};

Scalar sign(int exponent, const Field& f) {
    return Scalar(exponent % 2 == 0 ? 1 : -1, f);
}

std::vector<IndexPair> canonical_lambda_tilde(size_t nlambda) {
    std::vector<IndexPair> out;
    for (size_t l = 0; l < nlambda; ++l)
        for (int i = 1; i <= 3; ++i) out.push_back({i, l});
    return out;
}

// residue of an F_2 element mod m: the vector of constant coefficients
Vector residue_mod_m(const GradedVector& v) {
    const Field& f = v.module()->ring().field();
    Vector out(v.module()->rank(), Scalar(0, f));
    for (size_t g = 0; g < out.size(); ++g)
        out[g] = v.coord(g).constant_term();
    return out;
}

long param_degree_sum(const std::array<Polynomial, 3>& params) {
    long s = 0;
    for (const auto& p : params) s += p.homogeneous_degree();
    return s;
}

void validate_input(const StarInput& input) {
    const ChainComplex& F = input.complex;
    if (F.length() != 3)
        throw StarError("star transform needs a length-3 complex");
    if (F.module(0)->rank() != 1 || F.module(0)->degree(0) != 0)
        throw StarError("F_0 must be R (rank 1, degree 0)");
    const WeightedRing& ring = F.ring();
    for (const auto& p : input.params) {
        if (!(p.ring() == ring)) throw StarError("parameter ring mismatch");
        if (p.is_zero() || !p.is_homogeneous() || p.homogeneous_degree() <= 0)
            throw StarError(
                "parameters must be homogeneous of positive degree");
    }
    // m-primary: some power of each variable must fall into Q
    Ideal Q(ring, {input.params[0], input.params[1], input.params[2]});
    long cap = 2 * param_degree_sum(input.params);
    for (size_t var = 0; var < 3; ++var) {
        bool hit = false;
        for (long k = 1; k * ring.weights()[var] <= cap && !hit; ++k) {
            unsigned e[3] = {0, 0, 0};
            e[var] = static_cast<unsigned>(k);
            hit = membership(
                Polynomial::monomial(Monomial(e[0], e[1], e[2]), ring), Q, cap);
        }
        if (!hit)
            throw StarError("parameters do not generate an m-primary ideal "
                            "(no power of " +
                            WeightedRing::variables()[var] + " found)");
    }
}

}  // namespace

Ideal image_ideal(const ChainComplex& c) {
    std::vector<Polynomial> gens;
    const ModuleMap& d1 = c.differential(1);
    for (size_t j = 0; j < d1.source()->rank(); ++j)
        gens.push_back(d1.entry(0, j));
    return Ideal(c.ring(), std::move(gens));
}

long star_verify_bound(const StarInput& input) {
    long pd = 0;
    for (const auto& p : input.params)
        pd = std::max(pd, p.homogeneous_degree());
    return input.complex.max_generator_degree() + pd + 2;
}

std::vector<std::array<GradedVector, 3>> decompose_into_Q(
    const ChainComplex& F, const std::array<Polynomial, 3>& params,
    StarOptions::DecompRule rule) {
    const ModuleMap& phi3 = F.differential(3);
    ModulePtr F2 = F.module(2), F3 = F.module(3);
    const WeightedRing& ring = F.ring();

    bool monomial_params =
        std::all_of(params.begin(), params.end(),
                    [](const Polynomial& p) { return p.is_monomial(); });

    std::vector<std::array<GradedVector, 3>> out(
        F3->rank(),
        {GradedVector(F2), GradedVector(F2), GradedVector(F2)});

    if (monomial_params) {
        std::array<Monomial, 3> q;
        for (int i = 0; i < 3; ++i) q[i] = params[i].terms()[0].first;
        for (size_t l = 0; l < F3->rank(); ++l) {
            std::array<std::vector<std::vector<Polynomial::Term>>, 3> acc;
            for (auto& a : acc) a.resize(F2->rank());
            for (size_t r = 0; r < F2->rank(); ++r) {
                for (const auto& [m, c] : phi3.entry(r, l).terms()) {
                    int chosen = -1;
                    if (rule == StarOptions::DecompRule::SmallestIndex) {
                        for (int i = 0; i < 3 && chosen < 0; ++i)
                            if (q[i].divides(m)) chosen = i;
                    } else {
                        for (int i = 2; i >= 0 && chosen < 0; --i)
                            if (q[i].divides(m)) chosen = i;
                    }
                    if (chosen < 0)
                        throw StarError(
                            "term " + m.str() + " of phi_3(" + F3->label(l) +
                            ") is divisible by no parameter: Im phi_3 is not "
                            "contained in Q F_2");
                    acc[chosen][r].emplace_back(q[chosen].divide(m), c);
                }
            }
            for (int i = 0; i < 3; ++i)
                for (size_t r = 0; r < F2->rank(); ++r)
                    if (!acc[i][r].empty())
                        out[l][i].set_coord(
                            r, Polynomial(ring, std::move(acc[i][r])));
        }
    } else {
        // general homogeneous parameters: per-entry exact solve of
        // h = x1 h1 + x2 h2 + x3 h3 with deterministic pivoting
        auto R = GradedFreeModule::base_ring(ring);
        auto Qmod = GradedFreeModule::make(
            ring, {"q1", "q2", "q3"},
            {params[0].homogeneous_degree(), params[1].homogeneous_degree(),
             params[2].homogeneous_degree()});
        ModuleMap qmap = ModuleMap::zero(Qmod, R);
        for (int i = 0; i < 3; ++i) qmap.set_entry(0, i, params[i]);
        for (size_t l = 0; l < F3->rank(); ++l)
            for (size_t r = 0; r < F2->rank(); ++r) {
                const Polynomial& h = phi3.entry(r, l);
                if (h.is_zero()) continue;
                long d = h.homogeneous_degree();
                PieceBasis src(*Qmod, d), tgt(*R, d);
                GradedVector rhs(R);
                rhs.set_coord(0, h);
                auto sol = linear_solve(qmap.piece_matrix(src, tgt),
                                        rhs.piece_coords(tgt));
                if (!sol)
                    throw StarError("entry " + h.str() +
                                    " of phi_3 does not lie in Q: Im phi_3 "
                                    "is not contained in Q F_2");
                GradedVector hs =
                    GradedVector::from_piece_coords(Qmod, src, *sol);
                for (int i = 0; i < 3; ++i)
                    out[l][i].set_coord(r, out[l][i].coord(r) + hs.coord(i));
            }
    }

    // exact validation of the decomposition
    for (size_t l = 0; l < F3->rank(); ++l) {
        GradedVector lhs = phi3.column(l);
        GradedVector rhs(F2);
        for (int i = 0; i < 3; ++i) rhs += out[l][i].times(params[i]);
        if (!(lhs == rhs))
            throw StarError("decomposition of phi_3(" + F3->label(l) +
                            ") failed validation");
    }
    return out;
}

ChainMapSigma build_sigma(const ChainComplex& F,
                          const std::array<Polynomial, 3>& params,
                          const std::vector<std::array<GradedVector, 3>>& v) {
    const WeightedRing& ring = F.ring();
    const Field& field = ring.field();
    ModulePtr F3 = F.module(3);
    const size_t nl = F3->rank();
    if (v.size() != nl) throw StarError("one v triple per F_3 generator");

    ChainComplex K = koszul_complex(ring, params[0], params[1], params[2]);
    long D = param_degree_sum(params);
    ChainComplex G = tensor_with_module(K, F3, -D);
    DoubleComplexKF dc(K, F);

    size_t rankF1 = F.module(1)->rank();
    size_t rankF2 = F.module(2)->rank();

    std::vector<LiftTrace> lifts;
    lifts.reserve(nl);
    for (size_t l = 0; l < nl; ++l) {
        GradedVector xi0(dc.cell(0, 3));
        xi0.set_coord(l, Polynomial::constant(1, ring));
        GradedVector xi1(dc.cell(1, 2));
        for (int i = 0; i < 3; ++i)
            for (size_t t = 0; t < rankF2; ++t)
                xi1.set_coord(i * rankF2 + t, -v[l][i].coord(t));
        auto [xi2, xi3] = zigzag_lift(dc, xi0, xi1);
        if (!zigzag_cycle_check(dc, xi0, xi1, xi2, xi3))
            throw StarError("zig-zag lift failed its cycle equations");

        LiftTrace tr{{v[l][0], v[l][1], v[l][2]},
                     {GradedVector(F.module(1)), GradedVector(F.module(1)),
                      GradedVector(F.module(1))},
                     Polynomial(ring),
                     xi2,
                     xi3};
        for (int i = 0; i < 3; ++i)
            for (size_t t = 0; t < rankF1; ++t)
                tr.u[i].set_coord(t, -xi2.coord(i * rankF1 + t));
        tr.d = xi3.coord(0);
        lifts.push_back(std::move(tr));
    }

    // componentwise lift relations against phi_2 and phi_1, asserted
    // exactly
    const Polynomial &x1 = params[0], &x2 = params[1], &x3 = params[2];
    const ModuleMap& phi2 = F.differential(2);
    const ModuleMap& phi1 = F.differential(1);
    for (size_t l = 0; l < nl; ++l) {
        const auto& tr = lifts[l];
        GradedVector r1 = phi2.apply(tr.v[0]) + tr.u[2].times(x2) +
                          tr.u[1].times(x3);
        GradedVector r2 = phi2.apply(tr.v[1]) - tr.u[2].times(x1) +
                          tr.u[0].times(x3);
        GradedVector r3 = phi2.apply(tr.v[2]) - tr.u[1].times(x1) -
                          tr.u[0].times(x2);
        if (!r1.is_zero() || !r2.is_zero() || !r3.is_zero())
            throw StarError("phi_2 lift relations fail for " + F3->label(l));
        for (int i = 0; i < 3; ++i) {
            Polynomial lhs = params[i] * tr.d;
            Polynomial rhs = phi1.apply(tr.u[i]).coord(0);
            if (i % 2 == 1) rhs = -rhs;  // (-1)^{i-1} with i in 1..3
            if (!(lhs == rhs))
                throw StarError("phi_1 lift relation fails for " + F3->label(l));
        }
    }

    // assemble sigma_0..sigma_3
    std::vector<ModuleMap> sg;
    {
        ModuleMap s0 = ModuleMap::zero(G.module(0), F.module(0));
        for (size_t l = 0; l < nl; ++l) s0.set_entry(0, l, lifts[l].d);
        sg.push_back(std::move(s0));
    }
    {
        ModuleMap s1 = ModuleMap::zero(G.module(1), F.module(1));
        for (size_t l = 0; l < nl; ++l)
            for (int i = 0; i < 3; ++i) {
                Scalar sgn = sign(i, field);  // (-1)^{i-1}, i zero-based here
                for (size_t t = 0; t < rankF1; ++t)
                    s1.set_entry(t, i * nl + l,
                                 lifts[l].u[i].coord(t).times_scalar(sgn));
            }
        sg.push_back(std::move(s1));
    }
    {
        ModuleMap s2 = ModuleMap::zero(G.module(2), F.module(2));
        for (size_t l = 0; l < nl; ++l)
            for (int i = 0; i < 3; ++i) {
                Scalar sgn = sign(i + 1, field);  // (-1)^i
                for (size_t t = 0; t < rankF2; ++t)
                    s2.set_entry(t, i * nl + l,
                                 lifts[l].v[i].coord(t).times_scalar(sgn));
            }
        sg.push_back(std::move(s2));
    }
    {
        ModuleMap s3 = ModuleMap::zero(G.module(3), F.module(3));
        for (size_t l = 0; l < nl; ++l)
            s3.set_entry(l, l, Polynomial::constant(-1, ring));
        sg.push_back(std::move(s3));
    }

    // the ChainMap constructor re-verifies all four commuting squares
    ChainMap check(G, F, sg);
    return ChainMapSigma{std::move(K), std::move(G), std::move(sg),
                         std::move(lifts)};
}

std::pair<ChainComplex, ChainComplex> cone_and_split(const ChainComplex& F,
                                                     const ChainMapSigma& s) {
    ChainMap cm(s.domain, F, s.sigma);
    ChainComplex cone = mapping_cone(cm);

    // phi = ( 0  -sigma_3^{-1} ) : (K_2 (x) F_3) (+) F_3 -> K_3 (x) F_3
    ModulePtr C3 = cone.module(3), C4 = cone.module(4);
    size_t g2 = s.domain.module(2)->rank();
    size_t f3 = F.module(3)->rank();
    ModuleMap phi = ModuleMap::zero(C3, C4);
    for (size_t r = 0; r < f3; ++r)
        phi.set_entry(r, g2 + r, Polynomial::constant(1, F.ring()));
    ModuleMap inc = block_inclusion(C3, 0, g2, s.domain.module(2));
    ChainComplex trimmed = split_trim(cone, phi, inc);
    return {std::move(cone), std::move(trimmed)};
}

BasisSelection select_basis_subset(
    const ChainComplex& F, const std::vector<std::array<GradedVector, 3>>& v,
    const std::optional<std::vector<IndexPair>>& override_set) {
    const Field& field = F.ring().field();
    size_t rankF2 = F.module(2)->rank();
    size_t nl = F.module(3)->rank();

    std::vector<IndexPair> candidates;
    if (override_set) {
        candidates = *override_set;
        for (const auto& p : candidates)
            if (p.i < 1 || p.i > 3 || p.lambda >= nl)
                throw StarError("lambda override index out of range");
    } else {
        candidates = canonical_lambda_tilde(nl);
    }

    BasisSelection sel;
    sel.certificate = Scalar(1, field);
    std::vector<Vector> rows;          // normalized eliminated rows
    std::vector<size_t> row_pivots;    // pivot coordinate per row
    std::vector<bool> pivoted(rankF2, false);

    for (const auto& cand : candidates) {
        Vector res = residue_mod_m(v[cand.lambda][cand.i - 1]);
        for (size_t k = 0; k < rows.size(); ++k) {
            const Scalar& c = res[row_pivots[k]];
            if (c.is_zero()) continue;
            Scalar f = c;
            for (size_t t = 0; t < rankF2; ++t) res[t] -= f * rows[k][t];
        }
        size_t pivot = rankF2;
        for (size_t t = 0; t < rankF2; ++t)
            if (!pivoted[t] && !res[t].is_zero()) {
                pivot = t;
                break;
            }
        if (pivot == rankF2) {
            if (override_set)
                throw StarError(
                    "lambda override member (" + std::to_string(cand.i) +
                    ", " + F.module(3)->label(cand.lambda) +
                    ") has no unit pivot: not a free-basis part");
            continue;  // greedy: reject
        }
        sel.certificate *= res[pivot];
        Scalar inv = res[pivot].inverse();
        for (auto& c : res) c *= inv;
        rows.push_back(std::move(res));
        row_pivots.push_back(pivot);
        pivoted[pivot] = true;
        sel.lambda_star_prime.push_back(cand);
        sel.pivots.push_back(pivot);
    }
    for (size_t t = 0; t < rankF2; ++t)
        if (!pivoted[t]) sel.U.push_back(t);
    return sel;
}

namespace {

// basis map Theta : (+) R(-deg) -> F_2 with columns the selected v's
// followed by the U generators
ModuleMap basis_map(const ChainComplex& F,
                    const std::vector<std::array<GradedVector, 3>>& v,
                    const BasisSelection& sel) {
    ModulePtr F2 = F.module(2), F3 = F.module(3);
    std::vector<std::string> labels;
    std::vector<long> degrees;
    for (const auto& p : sel.lambda_star_prime) {
        labels.push_back("v(" + std::to_string(p.i) + "," +
                         F3->label(p.lambda) + ")");
        auto d = v[p.lambda][p.i - 1].homogeneous_degree();
        if (!d) throw StarError("selected v is zero or inhomogeneous");
        degrees.push_back(*d);
    }
    for (size_t u : sel.U) {
        labels.push_back("u:" + F2->label(u));
        degrees.push_back(F2->degree(u));
    }
    auto src = GradedFreeModule::make(F.ring(), labels, degrees);
    ModuleMap theta = ModuleMap::zero(src, F2);
    size_t col = 0;
    for (const auto& p : sel.lambda_star_prime) {
        for (size_t r = 0; r < F2->rank(); ++r)
            theta.set_entry(r, col, v[p.lambda][p.i - 1].coord(r));
        ++col;
    }
    for (size_t u : sel.U) {
        theta.set_entry(u, col, Polynomial::constant(1, F.ring()));
        ++col;
    }
    return theta;
}

std::vector<IndexPair> complement(const std::vector<IndexPair>& all,
                                  const std::vector<IndexPair>& chosen) {
    std::vector<IndexPair> out;
    for (const auto& p : all)
        if (std::find(chosen.begin(), chosen.end(), p) == chosen.end())
            out.push_back(p);
    return out;
}

}  // namespace

ExpressionTables express_remaining(
    const ChainComplex& F, const std::vector<std::array<GradedVector, 3>>& v,
    BasisSelection& sel, int& sweeps,
    const std::optional<ExpressionTables>& override_tables) {
    ModulePtr F2 = F.module(2), F3 = F.module(3);
    auto lambda_tilde = canonical_lambda_tilde(F3->rank());

    if (override_tables) {
        auto dstar = complement(lambda_tilde, sel.lambda_star_prime);
        if (override_tables->a.size() != dstar.size() ||
            override_tables->b.size() != dstar.size())
            throw StarError("expression override size mismatch");
        for (size_t k = 0; k < dstar.size(); ++k) {
            const auto& jm = dstar[k];
            GradedVector rhs(F2);
            for (const auto& [key, coeff] : override_tables->a[k]) {
                if (key.i < 1 || key.i > 3 || key.lambda >= F3->rank())
                    throw StarError("expression override key out of range");
                bool in_star = std::find(sel.lambda_star_prime.begin(),
                                         sel.lambda_star_prime.end(),
                                         key) != sel.lambda_star_prime.end();
                if (!in_star && !coeff.constant_term().is_zero())
                    throw StarError(
                        "expression override: coefficient on a Lambda** "
                        "member must lie in m");
                rhs += v[key.lambda][key.i - 1].times(coeff);
            }
            for (const auto& [u, coeff] : override_tables->b[k]) {
                if (std::find(sel.U.begin(), sel.U.end(), u) == sel.U.end())
                    throw StarError("expression override: b key not in U");
                if (!coeff.constant_term().is_zero())
                    throw StarError("expression override: b coefficient "
                                    "must lie in m");
                GradedVector unit(F2);
                unit.set_coord(u, coeff);
                rhs += unit;
            }
            if (!(rhs == v[jm.lambda][jm.i - 1]))
                throw StarError("expression override identity fails for (" +
                                std::to_string(jm.i) + ", " +
                                F3->label(jm.lambda) + ")");
        }
        sweeps = 1;
        return *override_tables;
    }

    const long sweep_cap = static_cast<long>(lambda_tilde.size()) + 1;
    for (sweeps = 1; sweeps <= sweep_cap; ++sweeps) {
        auto dstar = complement(lambda_tilde, sel.lambda_star_prime);
        ModuleMap theta = basis_map(F, v, sel);
        ExpressionTables tables;
        std::optional<std::pair<IndexPair, size_t>> promote;

        for (const auto& jm : dstar) {
            const GradedVector& target = v[jm.lambda][jm.i - 1];
            std::map<IndexPair, Polynomial> arow;
            std::map<size_t, Polynomial> brow;
            if (!target.is_zero()) {
                auto deg = target.homogeneous_degree();
                if (!deg)
                    throw StarError("inhomogeneous v element");
                PieceBasis src(*theta.source(), *deg), tgt(*F2, *deg);
                auto sol = linear_solve(theta.piece_matrix(src, tgt),
                                        target.piece_coords(tgt));
                if (!sol)
                    throw StarError("selected basis does not span F_2");
                GradedVector coeffs = GradedVector::from_piece_coords(
                    theta.source(), src, *sol);
                size_t nsel = sel.lambda_star_prime.size();
                for (size_t k = 0; k < nsel; ++k)
                    if (!coeffs.coord(k).is_zero())
                        arow.emplace(sel.lambda_star_prime[k], coeffs.coord(k));
                for (size_t k = 0; k < sel.U.size(); ++k) {
                    const Polynomial& c = coeffs.coord(nsel + k);
                    if (c.is_zero()) continue;
                    brow.emplace(sel.U[k], c);
                    if (!c.constant_term().is_zero() && !promote)
                        promote = {jm, sel.U[k]};
                }
            }
            tables.a.push_back(std::move(arow));
            tables.b.push_back(std::move(brow));
        }

        if (!promote) return tables;

        // minimality violated: promote (j, mu) into Lambda*' and drop the
        // unit-pivot u from U, then re-run the selection validation
        auto [jm, u] = *promote;
        std::vector<IndexPair> bigger = sel.lambda_star_prime;
        bigger.push_back(jm);
        std::sort(bigger.begin(), bigger.end(),
                  [](const IndexPair& a, const IndexPair& b) {
                      return std::tie(a.lambda, a.i) < std::tie(b.lambda, b.i);
                  });
        sel = select_basis_subset(F, v, bigger);
    }
    throw StarError("promotion loop did not stabilize");
}

long predict_colon_length(const StarInput& input) {
    Ideal Q(input.complex.ring(),
            {input.params[0], input.params[1], input.params[2]});
    return static_cast<long>(input.complex.module(3)->rank()) * colength(Q);
}

StarTransformRecord star_transform(const StarInput& input,
                                   const StarOptions& opts) {
    validate_input(input);
    const ChainComplex& F = input.complex;
    const WeightedRing& ring = F.ring();
    const Field& field = ring.field();
    ModulePtr F3 = F.module(3);
    const size_t nl = F3->rank();

    long bound = opts.verify_bound >= 0 ? opts.verify_bound
                                        : star_verify_bound(input);

    auto v = opts.v_override
                 ? *opts.v_override
                 : decompose_into_Q(F, input.params, opts.decomp_rule);
    if (opts.v_override) {
        // validate the explicit decomposition exactly
        for (size_t l = 0; l < nl; ++l) {
            GradedVector rhs(F.module(2));
            for (int i = 0; i < 3; ++i)
                rhs += v[l][i].times(input.params[i]);
            if (!(F.differential(3).column(l) == rhs))
                throw StarError("v override fails phi_3(w_lambda) = sum x_i "
                                "v_(i,lambda) for " +
                                F3->label(l));
        }
    }

    ChainMapSigma sigma = build_sigma(F, input.params, v);
    auto [cone, trimmed] = cone_and_split(F, sigma);

    if (opts.check_cone_hypothesis) {
        ChainMap cm(sigma.domain, F, sigma.sigma);
        if (!certify_cone_hypothesis(cm, bound))
            throw StarError("cone hypothesis sigma_0^{-1}(Im phi_1) = "
                            "Im d_1 failed");
    }
    if (opts.check_cone_exactness) {
        auto rep = verify_exactness(cone, bound);
        if (!rep.all_exact)
            throw StarError("mapping cone is not exact up to the bound");
    }

    std::vector<IndexPair> lambda_tilde = canonical_lambda_tilde(nl);
    BasisSelection sel = select_basis_subset(F, v, opts.lambda_star_override);
    int sweeps = 1;
    ExpressionTables coeffs =
        express_remaining(F, v, sel, sweeps, opts.expression_override);
    std::vector<IndexPair> dstar = complement(lambda_tilde,
                                              sel.lambda_star_prime);

    // --- assemble F* ---
    ModulePtr C2 = trimmed.module(2);   // (K_1 (x) F_3) (+) F_2
    ModulePtr C3 = trimmed.module(3);   // K_2 (x) F_3
    ModulePtr F2 = F.module(2);
    const ModuleMap& phi3p = trimmed.differential(3);
    const ModuleMap& phi2p = trimmed.differential(2);

    // F*_2: the [i,lambda] block plus <U>
    std::vector<size_t> keep;
    std::vector<std::string> keep_labels;
    for (int i = 1; i <= 3; ++i)
        for (size_t l = 0; l < nl; ++l) {
            keep.push_back((i - 1) * nl + l);
            keep_labels.push_back("[" + std::to_string(i) + "," +
                                  F3->label(l) + "]");
        }
    for (size_t u : sel.U) {
        keep.push_back(3 * nl + u);
        keep_labels.push_back("<" + F2->label(u) + ">");
    }
    auto [Fstar2, inc2] = coordinate_submodule(C2, keep, keep_labels);
    ModuleMap phistar2 = phi2p.compose(inc2);

    // F*_3 with basis the w* elements
    std::vector<std::string> w_labels;
    std::vector<long> w_degrees;
    for (const auto& jm : dstar) {
        w_labels.push_back("w*(" + std::to_string(jm.i) + "," +
                           F3->label(jm.lambda) + ")");
        w_degrees.push_back(F3->degree(jm.lambda) -
                            input.params[jm.i - 1].homogeneous_degree());
    }
    auto Fstar3 = GradedFreeModule::make(ring, w_labels, w_degrees);
    ModuleMap phistar3 = ModuleMap::zero(Fstar3, Fstar2);
    std::vector<GradedVector> w_star;

    for (size_t k = 0; k < dstar.size(); ++k) {
        const auto& jm = dstar[k];
        // w* = (-1)^j ce_j (x) w_mu + sum (-1)^{i+1} a ce_i (x) w_lambda
        GradedVector w(C3);
        {
            size_t idx = (jm.i - 1) * nl + jm.lambda;
            w.set_coord(idx, Polynomial::term(Monomial(), sign(jm.i, field),
                                              ring));
        }
        for (const auto& [key, a] : coeffs.a[k]) {
            size_t idx = (key.i - 1) * nl + key.lambda;
            w.set_coord(idx,
                        w.coord(idx) + a.times_scalar(sign(key.i + 1, field)));
        }
        w_star.push_back(w);

        GradedVector img = phi3p.apply(w);

        // closed form of phi'_3(w*), rebuilt independently from the
        // coefficient tables; the construction must reproduce it exactly
        {
            GradedVector formula(C2);
            auto add_bracket = [&](int i, size_t lam, const Polynomial& c) {
                size_t idx = (i - 1) * nl + lam;
                formula.set_coord(idx, formula.coord(idx) + c);
            };
            const auto& xs = input.params;
            int j = jm.i;
            add_bracket(kT[j], jm.lambda,
                        xs[kS[j] - 1].times_scalar(sign(j, field)));
            add_bracket(kS[j], jm.lambda,
                        xs[kT[j] - 1].times_scalar(sign(j + 1, field)));
            for (const auto& [key, a] : coeffs.a[k]) {
                int i = key.i;
                Polynomial c = a.times_scalar(sign(i + 1, field));
                add_bracket(kT[i], key.lambda, c * xs[kS[i] - 1]);
                add_bracket(kS[i], key.lambda, -(c * xs[kT[i] - 1]));
            }
            for (const auto& [u, b] : coeffs.b[k]) {
                size_t idx = 3 * nl + u;
                formula.set_coord(idx, formula.coord(idx) + b);
            }
            if (!(formula == img))
                throw StarError("assembled phi'_3(w*) does not match "
                                "its closed form for " +
                                w_labels[k]);
        }

        // the image must live in F*_2 (coordinates off the kept set vanish)
        std::vector<bool> kept(C2->rank(), false);
        for (size_t idx : keep) kept[idx] = true;
        for (size_t t = 0; t < C2->rank(); ++t)
            if (!kept[t] && !img.coord(t).is_zero())
                throw StarError("phi'_3(w*) leaves the trimmed module");
        for (size_t kk = 0; kk < keep.size(); ++kk)
            phistar3.set_entry(kk, k, img.coord(keep[kk]));
    }

    ChainComplex output({F.module(0), trimmed.module(1), Fstar2, Fstar3},
                        {trimmed.differential(1), phistar2, phistar3});

    if (!phistar3.image_in_max_ideal())
        throw StarError("Im phi*_3 is not contained in m F*_2");

    if (opts.check_output_exactness) {
        auto rep = verify_exactness(output, bound);
        if (!rep.all_exact)
            throw StarError("F* is not exact up to the bound");
    }
    if (opts.check_colon_oracle) {
        Ideal a = image_ideal(F);
        Ideal Q(ring, {input.params[0], input.params[1], input.params[2]});
        long obound = output.module(1)->max_degree();
        Ideal oracle = colon_oracle(a, Q, obound);
        if (!ideals_equal(image_ideal(output), oracle, obound))
            throw StarError("Im phi*_1 differs from the colon oracle");
    }

    const bool shortcut = dstar.empty();
    return StarTransformRecord{input,
                               std::move(sigma),
                               std::move(cone),
                               std::move(trimmed),
                               std::move(lambda_tilde),
                               sel.lambda_star_prime,
                               std::move(dstar),
                               sel.U,
                               sel.certificate,
                               std::move(coeffs),
                               std::move(w_star),
                               std::move(output),
                               shortcut,
                               sweeps,
                               bound};
}

}  // namespace starres
