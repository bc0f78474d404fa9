#include "starres/ideal.hpp"

#include <algorithm>

namespace starres {

namespace {

// Basis matrix of the degree-d piece of the ideal: columns are the
// monomial multiples m*g landing in R_d, rows indexed by the monomials of
// R_d. Column count varies; rows = dim R_d.
Matrix ideal_piece_matrix(const Ideal& I, long d, const PieceBasis& rdbasis) {
    const WeightedRing& ring = I.ring();
    std::vector<std::pair<size_t, Monomial>> cols;  // (generator, multiplier)
    for (size_t g = 0; g < I.generators().size(); ++g) {
        long gd = I.generators()[g].homogeneous_degree();
        for (const auto& m : monomials_of_weighted_degree(ring, d - gd))
            cols.emplace_back(g, m);
    }
    Matrix a(rdbasis.dim(), cols.size(), ring.field());
    for (size_t c = 0; c < cols.size(); ++c) {
        const auto& [g, mult] = cols[c];
        for (const auto& [m, coef] : I.generators()[g].terms())
            a.at(rdbasis.index_of(0, m * mult), c) = coef;
    }
    return a;
}

ModulePtr ring_as_module(const WeightedRing& ring) {
    return GradedFreeModule::base_ring(ring);
}

}  // namespace

Ideal::Ideal(const WeightedRing& ring, std::vector<Polynomial> gens)
    : ring_(ring) {
    for (auto& g : gens) {
        if (g.is_zero()) continue;
        if (!(g.ring() == ring_)) throw IdealError("generator ring mismatch");
        if (!g.is_homogeneous())
            throw IdealError("ideal generators must be homogeneous, got " +
                             g.str());
        gens_.push_back(std::move(g));
    }
}

long Ideal::max_generator_degree() const {
    long m = 0;
    for (const auto& g : gens_) m = std::max(m, g.homogeneous_degree());
    return m;
}

Ideal Ideal::maximal(const WeightedRing& ring) {
    return Ideal(ring, {Polynomial::variable(0, ring),
                        Polynomial::variable(1, ring),
                        Polynomial::variable(2, ring)});
}

Ideal Ideal::unit(const WeightedRing& ring) {
    return Ideal(ring, {Polynomial::constant(1, ring)});
}

Ideal ideal_power(const Ideal& I, unsigned n) {
    if (n == 0) return Ideal::unit(I.ring());
    std::vector<Polynomial> gens = I.generators();
    std::vector<Polynomial> result = gens;
    for (unsigned k = 1; k < n; ++k) {
        std::vector<Polynomial> next;
        for (size_t i = 0; i < result.size(); ++i)
            for (size_t j = (k == 1 ? i : 0); j < gens.size(); ++j)
                next.push_back(result[i] * gens[j]);
        result = std::move(next);
    }
    // prune duplicates
    std::vector<Polynomial> uniq;
    for (auto& p : result)
        if (std::find(uniq.begin(), uniq.end(), p) == uniq.end())
            uniq.push_back(std::move(p));
    return Ideal(I.ring(), std::move(uniq));
}

Ideal ideal_product(const Ideal& a, const Ideal& b) {
    std::vector<Polynomial> gens;
    for (const auto& p : a.generators())
        for (const auto& q : b.generators()) gens.push_back(p * q);
    return Ideal(a.ring(), std::move(gens));
}

size_t ideal_piece_dim(const Ideal& I, long d) {
    if (I.is_zero()) return 0;
    PieceBasis rd(*ring_as_module(I.ring()), d);
    if (rd.dim() == 0) return 0;
    return rank(ideal_piece_matrix(I, d, rd));
}

bool membership(const Polynomial& f, const Ideal& I, long d_bound) {
    if (f.is_zero()) return true;
    if (!f.is_homogeneous())
        throw IdealError("membership requires a homogeneous element");
    long d = f.homogeneous_degree();
    if (d > d_bound)
        throw IdealError("membership degree " + std::to_string(d) +
                         " above bound " + std::to_string(d_bound));
    if (I.is_zero()) return false;
    PieceBasis rd(*ring_as_module(I.ring()), d);
    Matrix a = ideal_piece_matrix(I, d, rd);
    Vector b(rd.dim(), Scalar(0, I.ring().field()));
    for (const auto& [m, c] : f.terms()) b[rd.index_of(0, m)] = c;
    return linear_solve(a, b).has_value();
}

Ideal colon_oracle(const Ideal& a, const Ideal& J, long d_max) {
    const WeightedRing& ring = a.ring();
    const Field& field = ring.field();
    auto R = ring_as_module(ring);
    std::vector<Polynomial> gens;

    for (long d = 0; d <= d_max; ++d) {
        PieceBasis rd(*R, d);
        if (rd.dim() == 0) continue;

        // f in R_d with f*j in a for every generator j of J: stack, per
        // generator j, the map R_d -> R_{d+deg j} / a_{d+deg j}.
        size_t total_rows = 0;
        struct Block {
            Matrix mult;          // R_d -> R_{d+dj}
            std::vector<Vector> quot;  // basis of the quotient projection
        };
        std::vector<Block> blocks;
        for (const auto& j : J.generators()) {
            long dj = j.homogeneous_degree();
            PieceBasis rdj(*R, d + dj);
            Matrix mult(rdj.dim(), rd.dim(), field);
            for (size_t c = 0; c < rd.dim(); ++c) {
                const Monomial& m = rd.elements()[c].second;
                for (const auto& [jm, jc] : j.terms())
                    mult.at(rdj.index_of(0, jm * m), c) = jc;
            }
            // quotient by a_{d+dj}: rows of a complement projector; use
            // the kernel of the transpose of the ideal piece matrix, i.e.
            // linear functionals vanishing on the ideal piece
            Matrix ap = ideal_piece_matrix(a, d + dj, rdj);
            Matrix apt(ap.cols(), ap.rows(), field);
            for (size_t i = 0; i < ap.rows(); ++i)
                for (size_t jx = 0; jx < ap.cols(); ++jx)
                    apt.at(jx, i) = ap.at(i, jx);
            auto functionals = kernel(apt);
            Block blk{std::move(mult), std::move(functionals)};
            total_rows += blk.quot.size();
            blocks.push_back(std::move(blk));
        }

        Matrix big(total_rows, rd.dim(), field);
        size_t row = 0;
        for (const auto& blk : blocks)
            for (const auto& fn : blk.quot) {
                for (size_t c = 0; c < rd.dim(); ++c) {
                    Scalar acc(0, field);
                    for (size_t r0 = 0; r0 < fn.size(); ++r0) {
                        if (blk.mult.at(r0, c).is_zero() || fn[r0].is_zero())
                            continue;
                        acc += fn[r0] * blk.mult.at(r0, c);
                    }
                    big.at(row, c) = acc;
                }
                ++row;
            }

        auto colon_basis = kernel(big);
        if (colon_basis.empty()) continue;

        // Nakayama pruning: keep only vectors outside the span of monomial
        // multiples of the generators already collected
        Ideal partial(ring, gens);
        Matrix span = partial.is_zero()
                          ? Matrix(rd.dim(), 0, field)
                          : ideal_piece_matrix(partial, d, rd);
        size_t base_cols = span.cols();
        for (const auto& v : colon_basis) {
            Matrix ext(rd.dim(), base_cols + 1, field);
            for (size_t i = 0; i < rd.dim(); ++i) {
                for (size_t c = 0; c < base_cols; ++c)
                    ext.at(i, c) = span.at(i, c);
                ext.at(i, base_cols) = v[i];
            }
            if (rank(ext) > rank(span)) {
                // new generator; rebuild the span including it
                std::vector<Polynomial::Term> terms;
                for (size_t i = 0; i < rd.dim(); ++i)
                    if (!v[i].is_zero())
                        terms.emplace_back(rd.elements()[i].second, v[i]);
                gens.emplace_back(ring, std::move(terms));
                partial = Ideal(ring, gens);
                span = ideal_piece_matrix(partial, d, rd);
                base_cols = span.cols();
            }
        }
    }
    return Ideal(ring, std::move(gens));
}

Ideal minimalize(const Ideal& I, long d_bound) {
    std::vector<Polynomial> sorted = I.generators();
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const Polynomial& a, const Polynomial& b) {
                         return a.homogeneous_degree() < b.homogeneous_degree();
                     });
    std::vector<Polynomial> kept;
    for (const auto& g : sorted) {
        Ideal partial(I.ring(), kept);
        if (!membership(g, partial, d_bound)) kept.push_back(g);
    }
    return Ideal(I.ring(), std::move(kept));
}

bool ideals_equal(const Ideal& a, const Ideal& b, long d_max) {
    for (const auto& g : a.generators())
        if (g.homogeneous_degree() <= d_max && !membership(g, b, d_max))
            return false;
    for (const auto& g : b.generators())
        if (g.homogeneous_degree() <= d_max && !membership(g, a, d_max))
            return false;
    for (long d = 0; d <= d_max; ++d)
        if (ideal_piece_dim(a, d) != ideal_piece_dim(b, d)) return false;
    return true;
}

long quotient_length(const Ideal& inner, const Ideal& outer, unsigned n_cap) {
    const WeightedRing& ring = inner.ring();
    long check_bound = std::max(inner.max_generator_degree(),
                                outer.max_generator_degree()) +
                       static_cast<long>(n_cap) * ring.max_weight();
    for (const auto& g : inner.generators())
        if (!membership(g, outer, check_bound))
            throw IdealError("quotient_length: inner not contained in outer");

    // find N with m^N * outer <= inner; then the quotient lives in degrees
    // <= max generator degree of outer + N * max weight
    std::optional<unsigned> ncert;
    for (unsigned n = 0; n <= n_cap && !ncert; ++n) {
        std::vector<Monomial> layer;
        for (unsigned i = 0; i <= n; ++i)
            for (unsigned j = 0; i + j <= n; ++j)
                layer.emplace_back(i, j, n - i - j);
        bool ok = true;
        for (const auto& g : outer.generators()) {
            for (const auto& m : layer)
                if (!membership(g.times_monomial(m), inner, check_bound)) {
                    ok = false;
                    break;
                }
            if (!ok) break;
        }
        if (ok) ncert = n;
    }
    if (!ncert) return kInfiniteLength;

    long top = outer.max_generator_degree() +
               static_cast<long>(*ncert) * ring.max_weight();
    auto diff_at = [&](long d) {
        long diff =
            static_cast<long>(outer.is_zero() ? 0 : ideal_piece_dim(outer, d)) -
            static_cast<long>(inner.is_zero() ? 0 : ideal_piece_dim(inner, d));
        if (diff < 0)
            throw IdealError("quotient_length: negative graded difference");
        return diff;
    };
    long total = 0;
    for (long d = 0; d <= top; ++d) total += diff_at(d);
    // stabilization window past the certified top, as a cross-check
    for (long d = top + 1; d <= top + 3; ++d)
        if (diff_at(d) != 0)
            throw IdealError("quotient_length: certificate violated at degree " +
                             std::to_string(d));
    return total;
}

long colength(const Ideal& I, unsigned n_cap) {
    return quotient_length(I, Ideal::unit(I.ring()), n_cap);
}

}  // namespace starres
