#include "starres/complex.hpp"

#include <algorithm>

namespace starres {

namespace {

constexpr uint64_t kPrimes[2] = {2147483647ull, 2147483629ull};

}  // namespace

ChainComplex::ChainComplex(std::vector<ModulePtr> modules,
                           std::vector<ModuleMap> maps)
    : modules_(std::move(modules)), maps_(std::move(maps)) {
    if (modules_.empty()) throw ComplexError("complex needs modules");
    if (maps_.size() + 1 != modules_.size())
        throw ComplexError("complex needs one map per adjacent module pair");
    for (size_t i = 0; i < maps_.size(); ++i) {
        if (!(*maps_[i].source() == *modules_[i + 1]) ||
            !(*maps_[i].target() == *modules_[i]))
            throw ComplexError("differential " + std::to_string(i + 1) +
                               " does not match the adjacent modules");
    }
    require_complex();
}

bool ChainComplex::is_complex() const {
    for (size_t i = 1; i + 1 <= maps_.size(); ++i)
        if (!maps_[i - 1].compose(maps_[i]).is_zero()) return false;
    return true;
}

void ChainComplex::require_complex() const {
    for (size_t i = 1; i + 1 <= maps_.size(); ++i)
        if (!maps_[i - 1].compose(maps_[i]).is_zero())
            throw ComplexError("d_" + std::to_string(i) + " o d_" +
                               std::to_string(i + 1) + " != 0");
}

long ChainComplex::max_generator_degree() const {
    long m = 0;
    for (const auto& mod : modules_)
        for (long d : mod->degrees()) m = std::max(m, d);
    return m;
}

ChainComplex ChainComplex::shifted(long s) const {
    std::vector<ModulePtr> mods;
    for (const auto& m : modules_) {
        std::vector<long> degs = m->degrees();
        for (long& d : degs) d += s;
        mods.push_back(
            GradedFreeModule::make(m->ring(), m->labels(), std::move(degs)));
    }
    std::vector<ModuleMap> maps;
    for (size_t i = 0; i < maps_.size(); ++i) {
        ModuleMap nm = ModuleMap::zero(mods[i + 1], mods[i]);
        for (size_t r = 0; r < mods[i]->rank(); ++r)
            for (size_t c = 0; c < mods[i + 1]->rank(); ++c)
                nm.set_entry(r, c, maps_[i].entry(r, c));
        maps.push_back(std::move(nm));
    }
    return ChainComplex(std::move(mods), std::move(maps));
}

bool ChainComplex::operator==(const ChainComplex& o) const {
    if (modules_.size() != o.modules_.size()) return false;
    for (size_t i = 0; i < modules_.size(); ++i)
        if (!(*modules_[i] == *o.modules_[i])) return false;
    return maps_ == o.maps_;
}

ChainComplex koszul_complex(const WeightedRing& ring, const Polynomial& x1,
                            const Polynomial& x2, const Polynomial& x3) {
    const Polynomial* xs[3] = {&x1, &x2, &x3};
    long d[3];
    for (int i = 0; i < 3; ++i) {
        if (xs[i]->is_zero() || !xs[i]->is_homogeneous())
            throw ComplexError("Koszul parameters must be nonzero homogeneous");
        d[i] = xs[i]->homogeneous_degree();
        if (d[i] <= 0)
            throw ComplexError("Koszul parameters must have positive degree");
    }
    auto K0 = GradedFreeModule::base_ring(ring);
    auto K1 = GradedFreeModule::make(ring, {"e1", "e2", "e3"},
                                     {d[0], d[1], d[2]});
    auto K2 = GradedFreeModule::make(ring, {"ce1", "ce2", "ce3"},
                                     {d[1] + d[2], d[0] + d[2], d[0] + d[1]});
    auto K3 = GradedFreeModule::make(ring, {"e123"}, {d[0] + d[1] + d[2]});

    ModuleMap d1 = ModuleMap::zero(K1, K0);
    for (int i = 0; i < 3; ++i) d1.set_entry(0, i, *xs[i]);

    // ce1 = e2^e3 -> x2 e3 - x3 e2 ; ce2 = e1^e3 -> x1 e3 - x3 e1 ;
    // ce3 = e1^e2 -> x1 e2 - x2 e1
    ModuleMap d2 = ModuleMap::zero(K2, K1);
    d2.set_entry(2, 0, x2);
    d2.set_entry(1, 0, -x3);
    d2.set_entry(2, 1, x1);
    d2.set_entry(0, 1, -x3);
    d2.set_entry(1, 2, x1);
    d2.set_entry(0, 2, -x2);

    ModuleMap d3 = ModuleMap::zero(K3, K2);
    d3.set_entry(0, 0, x1);
    d3.set_entry(1, 0, -x2);
    d3.set_entry(2, 0, x3);

    return ChainComplex({K0, K1, K2, K3}, {d1, d2, d3});
}

ChainComplex koszul_complex_pair(const WeightedRing& ring,
                                 const Polynomial& x1, const Polynomial& x2) {
    for (const Polynomial* p : {&x1, &x2})
        if (p->is_zero() || !p->is_homogeneous())
            throw ComplexError("Koszul parameters must be nonzero homogeneous");
    long d1deg = x1.homogeneous_degree(), d2deg = x2.homogeneous_degree();
    auto K0 = GradedFreeModule::base_ring(ring);
    auto K1 = GradedFreeModule::make(ring, {"e1", "e2"}, {d1deg, d2deg});
    auto K2 = GradedFreeModule::make(ring, {"e12"}, {d1deg + d2deg});
    ModuleMap d1 = ModuleMap::zero(K1, K0);
    d1.set_entry(0, 0, x1);
    d1.set_entry(0, 1, x2);
    ModuleMap d2 = ModuleMap::zero(K2, K1);
    d2.set_entry(0, 0, -x2);
    d2.set_entry(1, 0, x1);
    return ChainComplex({K0, K1, K2}, {d1, d2});
}

ChainMap::ChainMap(ChainComplex source, ChainComplex target,
                   std::vector<ModuleMap> levels)
    : source_(std::move(source)), target_(std::move(target)),
      levels_(std::move(levels)) {
    if (source_.length() != target_.length() ||
        levels_.size() != source_.length() + 1)
        throw ComplexError("chain map needs one level per module");
    for (size_t i = 0; i <= source_.length(); ++i) {
        if (!(*levels_[i].source() == *source_.module(i)) ||
            !(*levels_[i].target() == *target_.module(i)))
            throw ComplexError("chain map level " + std::to_string(i) +
                               " has wrong source/target");
    }
    for (size_t i = 1; i <= source_.length(); ++i) {
        ModuleMap lhs = target_.differential(i).compose(levels_[i]);
        ModuleMap rhs = levels_[i - 1].compose(source_.differential(i));
        if (!(lhs == rhs))
            throw ComplexError("chain map square " + std::to_string(i) +
                               " does not commute");
    }
}

ChainComplex mapping_cone(const ChainMap& sigma) {
    const ChainComplex& G = sigma.source();
    const ChainComplex& F = sigma.target();
    const size_t L = G.length();

    std::vector<ModulePtr> C(L + 2);
    C[0] = F.module(0);
    for (size_t i = 1; i <= L; ++i)
        C[i] = direct_sum({G.module(i - 1), F.module(i)});
    C[L + 1] = G.module(L);

    std::vector<ModuleMap> d;
    {
        // d_1 = [ sigma_0 | dF_1 ]
        ModuleMap d1 = ModuleMap::zero(C[1], C[0]);
        size_t g0 = G.module(0)->rank();
        for (size_t r = 0; r < F.module(0)->rank(); ++r) {
            for (size_t j = 0; j < g0; ++j)
                d1.set_entry(r, j, sigma.level(0).entry(r, j));
            for (size_t j = 0; j < F.module(1)->rank(); ++j)
                d1.set_entry(r, g0 + j, F.differential(1).entry(r, j));
        }
        d.push_back(std::move(d1));
    }
    for (size_t i = 2; i <= L; ++i) {
        ModuleMap di = ModuleMap::zero(C[i], C[i - 1]);
        size_t gsrc = G.module(i - 1)->rank();
        size_t gtgt = G.module(i - 2)->rank();
        const ModuleMap& dg = G.differential(i - 1);
        const ModuleMap& df = F.differential(i);
        const ModuleMap& s = sigma.level(i - 1);
        bool negate = (i - 1) % 2 == 1;  // (-1)^{i-1}
        for (size_t r = 0; r < gtgt; ++r)
            for (size_t c = 0; c < gsrc; ++c) di.set_entry(r, c, dg.entry(r, c));
        for (size_t r = 0; r < F.module(i - 1)->rank(); ++r) {
            for (size_t c = 0; c < gsrc; ++c) {
                Polynomial e = s.entry(r, c);
                di.set_entry(gtgt + r, c, negate ? -e : e);
            }
            for (size_t c = 0; c < F.module(i)->rank(); ++c)
                di.set_entry(gtgt + r, gsrc + c, df.entry(r, c));
        }
        d.push_back(std::move(di));
    }
    {
        // d_{L+1} = [ dG_L ; (-1)^L sigma_L ]
        ModuleMap dt = ModuleMap::zero(C[L + 1], C[L]);
        size_t gtgt = G.module(L - 1)->rank();
        bool negate = L % 2 == 1;
        for (size_t r = 0; r < gtgt; ++r)
            for (size_t c = 0; c < G.module(L)->rank(); ++c)
                dt.set_entry(r, c, G.differential(L).entry(r, c));
        for (size_t r = 0; r < F.module(L)->rank(); ++r)
            for (size_t c = 0; c < G.module(L)->rank(); ++c) {
                Polynomial e = sigma.level(L).entry(r, c);
                dt.set_entry(gtgt + r, c, negate ? -e : e);
            }
        d.push_back(std::move(dt));
    }
    return ChainComplex(std::move(C), std::move(d));
}

namespace {

ModulePtr tensor_module(ModulePtr A, ModulePtr B, long shift) {
    std::vector<std::string> labels;
    std::vector<long> degrees;
    labels.reserve(A->rank() * B->rank());
    for (size_t a = 0; a < A->rank(); ++a)
        for (size_t b = 0; b < B->rank(); ++b) {
            labels.push_back("(" + A->label(a) + "|" + B->label(b) + ")");
            degrees.push_back(A->degree(a) + B->degree(b) + shift);
        }
    return GradedFreeModule::make(A->ring(), std::move(labels),
                                  std::move(degrees));
}

// f (x) id_B : A (x) B -> A' (x) B, with generators ordered A-major.
ModuleMap tensor_map_left(const ModuleMap& f, ModulePtr B, ModulePtr src,
                          ModulePtr tgt) {
    ModuleMap out = ModuleMap::zero(src, tgt);
    size_t nb = B->rank();
    for (size_t i = 0; i < f.target()->rank(); ++i)
        for (size_t j = 0; j < f.source()->rank(); ++j) {
            const Polynomial& e = f.entry(i, j);
            if (e.is_zero()) continue;
            for (size_t b = 0; b < nb; ++b)
                out.set_entry(i * nb + b, j * nb + b, e);
        }
    return out;
}

// id_A (x) g : A (x) B -> A (x) B'.
ModuleMap tensor_map_right(ModulePtr A, const ModuleMap& g, ModulePtr src,
                           ModulePtr tgt) {
    ModuleMap out = ModuleMap::zero(src, tgt);
    size_t nb = g.source()->rank();
    size_t nbt = g.target()->rank();
    for (size_t a = 0; a < A->rank(); ++a)
        for (size_t i = 0; i < nbt; ++i)
            for (size_t j = 0; j < nb; ++j) {
                const Polynomial& e = g.entry(i, j);
                if (!e.is_zero()) out.set_entry(a * nbt + i, a * nb + j, e);
            }
    return out;
}

}  // namespace

ChainComplex tensor_with_module(const ChainComplex& K, ModulePtr M,
                                long shift) {
    std::vector<ModulePtr> mods;
    for (size_t p = 0; p <= K.length(); ++p)
        mods.push_back(tensor_module(K.module(p), M, shift));
    std::vector<ModuleMap> maps;
    for (size_t p = 1; p <= K.length(); ++p)
        maps.push_back(
            tensor_map_left(K.differential(p), M, mods[p], mods[p - 1]));
    return ChainComplex(std::move(mods), std::move(maps));
}

DoubleComplexKF::DoubleComplexKF(const ChainComplex& K, const ChainComplex& F)
    : pmax_(K.length()), qmax_(F.length()) {
    if (pmax_ > 3 || qmax_ > 3)
        throw ComplexError("double complex limited to 4x4 cells");
    for (size_t p = 0; p <= pmax_; ++p)
        for (size_t q = 0; q <= qmax_; ++q)
            cells_[p][q] = tensor_module(K.module(p), F.module(q), 0);
    for (size_t p = 1; p <= pmax_; ++p)
        for (size_t q = 0; q <= qmax_; ++q)
            horiz_.emplace(std::make_pair(p, q),
                           tensor_map_left(K.differential(p), F.module(q),
                                           cells_[p][q], cells_[p - 1][q]));
    for (size_t p = 0; p <= pmax_; ++p)
        for (size_t q = 1; q <= qmax_; ++q)
            vert_.emplace(std::make_pair(p, q),
                          tensor_map_right(K.module(p), F.differential(q),
                                           cells_[p][q], cells_[p][q - 1]));
}

const ModuleMap& DoubleComplexKF::horiz(size_t p, size_t q) const {
    auto it = horiz_.find({p, q});
    if (it == horiz_.end()) throw ComplexError("no horizontal map at cell");
    return it->second;
}

const ModuleMap& DoubleComplexKF::vert(size_t p, size_t q) const {
    auto it = vert_.find({p, q});
    if (it == vert_.end()) throw ComplexError("no vertical map at cell");
    return it->second;
}

namespace {

// Solve f(x) = rhs for homogeneous rhs of degree d; deterministic solution.
GradedVector solve_in_degree(const ModuleMap& f, const GradedVector& rhs,
                             const char* what) {
    auto deg = rhs.homogeneous_degree();
    if (!deg) {
        if (rhs.is_zero()) return GradedVector(f.source());
        throw ComplexError(std::string(what) + ": inhomogeneous right side");
    }
    PieceBasis src(*f.source(), *deg), tgt(*f.target(), *deg);
    Matrix a = f.piece_matrix(src, tgt);
    auto sol = linear_solve(a, rhs.piece_coords(tgt));
    if (!sol)
        throw NoLiftError(std::string(what) +
                          ": no lift in degree " + std::to_string(*deg) +
                          " (input complex not acyclic there)");
    return GradedVector::from_piece_coords(f.source(), src, *sol);
}

}  // namespace

std::pair<GradedVector, GradedVector> zigzag_lift(const DoubleComplexKF& dc,
                                                  const GradedVector& xi0,
                                                  const GradedVector& xi1) {
    if (!(*xi0.module() == *dc.cell(0, 3)) ||
        !(*xi1.module() == *dc.cell(1, 2)))
        throw ComplexError("zigzag_lift: inputs must lie in C_03 and C_12");
    // precondition: d''(xi0) + d'(xi1) = 0
    GradedVector pre = dc.vert(0, 3).apply(xi0) + dc.horiz(1, 2).apply(xi1);
    if (!pre.is_zero())
        throw ComplexError("zigzag_lift: d''(xi0) + d'(xi1) != 0");
    // d'(xi2) = d''(xi1)
    GradedVector t = dc.vert(1, 2).apply(xi1);
    GradedVector xi2 = solve_in_degree(dc.horiz(2, 1), t, "zigzag xi2");
    // d'(xi3) = -d''(xi2)
    GradedVector s = -dc.vert(2, 1).apply(xi2);
    GradedVector xi3 = solve_in_degree(dc.horiz(3, 0), s, "zigzag xi3");
    return {std::move(xi2), std::move(xi3)};
}

bool zigzag_cycle_check(const DoubleComplexKF& dc, const GradedVector& xi0,
                        const GradedVector& xi1, const GradedVector& xi2,
                        const GradedVector& xi3) {
    GradedVector a = dc.vert(0, 3).apply(xi0) + dc.horiz(1, 2).apply(xi1);
    GradedVector b = dc.horiz(2, 1).apply(xi2) - dc.vert(1, 2).apply(xi1);
    GradedVector c = dc.vert(2, 1).apply(xi2) + dc.horiz(3, 0).apply(xi3);
    return a.is_zero() && b.is_zero() && c.is_zero();
}

long default_verify_bound(const ChainComplex& c) {
    return 2 * c.max_generator_degree() + 2;
}

ExactnessReport verify_exactness(const ChainComplex& c, long d_max) {
    c.require_complex();
    const size_t L = c.length();
    const bool char_p = c.ring().field().characteristic() != 0;
    const uint64_t base_p = c.ring().field().characteristic();

    ExactnessReport report;
    report.d_max = d_max;

    for (long d = 0; d <= d_max; ++d) {
        std::vector<PieceBasis> bases;
        bases.reserve(L + 1);
        for (size_t i = 0; i <= L; ++i) bases.emplace_back(*c.module(i), d);

        // rank bookkeeping per differential (index 1..L); lb = certified
        // lower bound, exact = true once the value is known to be the rank
        std::vector<size_t> rk(L + 2, 0);
        std::vector<bool> exact(L + 2, false);
        rk[L + 1] = 0;
        exact[L + 1] = true;

        auto compute_lb = [&](size_t i) {
            const ModuleMap& f = c.differential(i);
            if (bases[i].dim() == 0 || bases[i - 1].dim() == 0) {
                rk[i] = 0;
                exact[i] = true;
                return;
            }
            Matrix m = f.piece_matrix(bases[i], bases[i - 1]);
            if (char_p) {
                auto r = rank_lower_bound(m, base_p);
                rk[i] = *r;  // mod-p elimination over F_p itself is exact
                exact[i] = true;
                return;
            }
            for (uint64_t prime : kPrimes) {
                auto r = rank_lower_bound(m, prime);
                if (r) {
                    rk[i] = std::max(rk[i], *r);
                    return;
                }
            }
            rk[i] = rank(m);
            exact[i] = true;
        };
        auto compute_exact = [&](size_t i) {
            if (exact[i]) return;
            const ModuleMap& f = c.differential(i);
            rk[i] = rank(f.piece_matrix(bases[i], bases[i - 1]));
            exact[i] = true;
        };

        for (size_t i = 1; i <= L; ++i) compute_lb(i);

        DegreeReport dr;
        dr.degree = d;
        for (size_t i = 1; i <= L; ++i) {
            size_t dim = bases[i].dim();
            // rank(d_i) + rank(d_{i+1}) <= dim always (d o d = 0), so a
            // matching lower-bound sum certifies both ranks and exactness.
            if (rk[i] + rk[i + 1] != dim) {
                compute_exact(i);
                compute_exact(i + 1);
            } else {
                exact[i] = exact[i + 1] = true;
            }
            PositionReport pr;
            pr.dim_ker = dim - rk[i];
            pr.dim_im = rk[i + 1];
            pr.exact = pr.dim_ker == pr.dim_im;
            if (!pr.exact) {
                report.all_exact = false;
                if (!report.first_failure) report.first_failure = {d, i};
            }
            dr.positions.push_back(pr);
        }
        report.degrees.push_back(std::move(dr));
    }
    return report;
}

ChainComplex split_trim(const ChainComplex& c, const ModuleMap& phi,
                        const ModuleMap& kernel_inclusion) {
    const size_t L = c.length();
    if (L < 2) throw ComplexError("split_trim needs length >= 2");
    const ModuleMap& dtop = c.differential(L);
    if (!(*phi.source() == *c.module(L - 1)) ||
        !(*phi.target() == *c.module(L)))
        throw ComplexError("split_trim: phi must map F_{L-1} -> F_L");
    if (!(phi.compose(dtop) == ModuleMap::identity(c.module(L))))
        throw ComplexError("split_trim: phi o d_L != id");
    if (!(*kernel_inclusion.target() == *c.module(L - 1)))
        throw ComplexError("split_trim: kernel inclusion targets F_{L-1}");
    if (!phi.compose(kernel_inclusion).is_zero())
        throw ComplexError("split_trim: supplied basis is not in Ker phi");
    if (kernel_inclusion.source()->rank() + c.module(L)->rank() !=
        c.module(L - 1)->rank())
        throw ComplexError("split_trim: kernel basis has wrong rank");

    // [ker | d_L] must be an isomorphism onto F_{L-1}: degrees must match
    // as multisets and the degree-0 coefficient matrix must be invertible.
    {
        size_t n = c.module(L - 1)->rank();
        std::vector<long> have = kernel_inclusion.source()->degrees();
        have.insert(have.end(), c.module(L)->degrees().begin(),
                    c.module(L)->degrees().end());
        std::vector<long> want = c.module(L - 1)->degrees();
        std::sort(have.begin(), have.end());
        std::sort(want.begin(), want.end());
        if (have != want)
            throw ComplexError("split_trim: generator degrees do not match");
        const Field& fld = c.ring().field();
        Matrix m0(n, n, fld);
        size_t kr = kernel_inclusion.source()->rank();
        for (size_t i = 0; i < n; ++i) {
            for (size_t j = 0; j < kr; ++j)
                if (c.module(L - 1)->degree(i) ==
                    kernel_inclusion.source()->degree(j))
                    m0.at(i, j) = kernel_inclusion.entry(i, j).constant_term();
            for (size_t j = 0; j < c.module(L)->rank(); ++j)
                if (c.module(L - 1)->degree(i) == c.module(L)->degree(j))
                    m0.at(i, kr + j) = dtop.entry(i, j).constant_term();
        }
        if (rank(m0) != n)
            throw ComplexError(
                "split_trim: [ker | d_L] is not a basis of F_{L-1}");
    }

    std::vector<ModulePtr> mods;
    std::vector<ModuleMap> maps;
    for (size_t i = 0; i + 2 <= L; ++i) mods.push_back(c.module(i));
    for (size_t i = 1; i + 2 <= L; ++i) maps.push_back(c.differential(i));
    mods.push_back(kernel_inclusion.source());
    maps.push_back(c.differential(L - 1).compose(kernel_inclusion));
    return ChainComplex(std::move(mods), std::move(maps));
}

bool certify_cone_hypothesis(const ChainMap& sigma, long d_max) {
    const ChainComplex& G = sigma.source();
    const ChainComplex& F = sigma.target();
    for (long d = 0; d <= d_max; ++d) {
        PieceBasis g0(*G.module(0), d), g1(*G.module(1), d);
        PieceBasis f0(*F.module(0), d), f1(*F.module(1), d);
        if (g0.dim() == 0) continue;
        // dim sigma_0^{-1}(Im dF_1) = dim ker of (G_0 -> F_0 / Im dF_1)
        Matrix s0 = sigma.level(0).piece_matrix(g0, f0);
        Matrix df1 = F.differential(1).piece_matrix(f1, f0);
        // stack [s0 | df1]; kernel vectors restricted to the s0 block give
        // preimages, so dim preimage = dim ker(stack) - dim ker(df1)
        Matrix stack(f0.dim(), g0.dim() + f1.dim(), F.ring().field());
        for (size_t i = 0; i < f0.dim(); ++i) {
            for (size_t j = 0; j < g0.dim(); ++j) stack.at(i, j) = s0.at(i, j);
            for (size_t j = 0; j < f1.dim(); ++j)
                stack.at(i, g0.dim() + j) = df1.at(i, j);
        }
        size_t preimage_dim =
            (g0.dim() + f1.dim() - rank(stack)) - (f1.dim() - rank(df1));
        Matrix dg1 = G.differential(1).piece_matrix(g1, g0);
        size_t image_dim = rank(dg1);
        // Im dG_1 is contained in the preimage because the square commutes
        if (preimage_dim != image_dim) return false;
    }
    return true;
}

}  // namespace starres
