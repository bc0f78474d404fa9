#include "starres/determinantal.hpp"

#include <algorithm>
#include <numeric>

namespace starres {

namespace {

Polynomial power_of_var(size_t var, unsigned e, const WeightedRing& ring) {
    unsigned ex[3] = {0, 0, 0};
    ex[var] = e;
    return Polynomial::monomial(Monomial(ex[0], ex[1], ex[2]), ring);
}

}  // namespace

std::array<unsigned, 3> solve_weights(const std::array<unsigned, 6>& e) {
    // homogeneity of a, b, c:
    //   (g + g') wz = a' wx + b wy
    //   (a + a') wx = b' wy + g wz
    //   (b + b') wy = a wx + g' wz
    // The three rows always sum to zero, so the kernel is >= 1 dimensional.
    const long A = e[0], B = e[1], G = e[2], A2 = e[3], B2 = e[4], G2 = e[5];
    mpq_class m[3][3] = {
        {-A2, -B, G + G2},
        {A + A2, -B2, -G},
        {-A, B + B2, -G2},
    };
    // Gaussian elimination to a kernel vector
    int pivot_col[3] = {-1, -1, -1};
    int r = 0;
    for (int c = 0; c < 3 && r < 3; ++c) {
        int p = r;
        while (p < 3 && m[p][c] == 0) ++p;
        if (p == 3) continue;
        std::swap(m[p], m[r]);
        mpq_class inv = 1 / m[r][c];
        for (int j = 0; j < 3; ++j) m[r][j] *= inv;
        for (int i = 0; i < 3; ++i) {
            if (i == r) continue;
            mpq_class f = m[i][c];
            for (int j = 0; j < 3; ++j) m[i][j] -= f * m[r][j];
        }
        pivot_col[r] = c;
        ++r;
    }
    if (r == 3) throw SpecError("weight system admits only the zero solution");
    if (r < 2)
        throw SpecError("weight system is degenerate; supply weights "
                        "explicitly");
    // one free column: build the kernel vector with that coordinate = 1
    bool is_pivot[3] = {false, false, false};
    for (int i = 0; i < r; ++i) is_pivot[pivot_col[i]] = true;
    int free_col = 0;
    while (is_pivot[free_col]) ++free_col;
    mpq_class w[3];
    w[free_col] = 1;
    for (int i = 0; i < r; ++i) w[pivot_col[i]] = -m[i][free_col];

    // clear denominators, normalize to coprime positive integers
    mpz_class lcm = 1;
    for (auto& q : w) {
        q.canonicalize();
        mpz_class d = q.get_den();
        mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), d.get_mpz_t());
    }
    mpz_class iv[3], g = 0;
    for (int i = 0; i < 3; ++i) {
        iv[i] = w[i].get_num() * (lcm / w[i].get_den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), iv[i].get_mpz_t());
    }
    for (int i = 0; i < 3; ++i) iv[i] /= g;
    if (iv[0] < 0) for (int i = 0; i < 3; ++i) iv[i] = -iv[i];
    for (int i = 0; i < 3; ++i)
        if (iv[i] <= 0)
            throw SpecError("weight system has no positive solution for "
                            "these exponents");
    return {static_cast<unsigned>(iv[0].get_ui()),
            static_cast<unsigned>(iv[1].get_ui()),
            static_cast<unsigned>(iv[2].get_ui())};
}

DeterminantalSpec::DeterminantalSpec(
    std::array<unsigned, 6> exponents, Field field,
    std::optional<std::array<unsigned, 3>> weights)
    : exponents_(exponents),
      ring_(weights ? *weights : solve_weights(exponents), field),
      a_(Polynomial::zero(ring_)),
      b_(Polynomial::zero(ring_)),
      c_(Polynomial::zero(ring_)) {
    for (unsigned e : exponents_)
        if (e == 0) throw SpecError("exponents must be positive");
    a_ = Polynomial::monomial(Monomial(0, 0, gamma() + gamma2()), ring_) -
         Polynomial::monomial(Monomial(alpha2(), beta(), 0), ring_);
    b_ = Polynomial::monomial(Monomial(alpha() + alpha2(), 0, 0), ring_) -
         Polynomial::monomial(Monomial(0, beta2(), gamma()), ring_);
    c_ = Polynomial::monomial(Monomial(0, beta() + beta2(), 0), ring_) -
         Polynomial::monomial(Monomial(alpha(), 0, gamma2()), ring_);
    for (const Polynomial* p : {&a_, &b_, &c_})
        if (!p->is_homogeneous())
            throw SpecError("supplied weights do not make the minors "
                            "homogeneous");
}

Ideal DeterminantalSpec::ideal_I() const { return Ideal(ring_, {a_, b_, c_}); }

std::array<Polynomial, 3> DeterminantalSpec::parameters() const {
    return {power_of_var(0, std::min(alpha(), alpha2()), ring_),
            power_of_var(1, std::min(beta(), beta2()), ring_),
            power_of_var(2, std::min(gamma(), gamma2()), ring_)};
}

Ideal DeterminantalSpec::ideal_Q() const {
    auto p = parameters();
    return Ideal(ring_, {p[0], p[1], p[2]});
}

long DeterminantalSpec::deg_f() const {
    return static_cast<long>(alpha()) * ring_.weights()[0] + deg_A();
}

long DeterminantalSpec::deg_g() const {
    return static_cast<long>(beta2()) * ring_.weights()[1] + deg_A();
}

std::vector<std::array<unsigned, 3>> rees_monomials(unsigned d) {
    std::vector<std::array<unsigned, 3>> out;
    for (unsigned i = d + 1; i-- > 0;)
        for (unsigned j = d - i + 1; j-- > 0;)
            out.push_back({i, j, d - i - j});
    return out;
}

std::string rees_label(const std::array<unsigned, 3>& m) {
    if (m[0] == 0 && m[1] == 0 && m[2] == 0) return "1";
    std::string s;
    const char* names[3] = {"A", "B", "C"};
    for (int t = 0; t < 3; ++t) {
        if (m[t] == 0) continue;
        if (!s.empty()) s += "*";
        s += names[t];
        if (m[t] > 1) s += "^" + std::to_string(m[t]);
    }
    return s;
}

namespace {

// free module S_d with the Rees-monomial basis, generator degrees shifted
ModulePtr rees_piece(const DeterminantalSpec& spec, unsigned d, long shift,
                     const std::string& label_prefix,
                     const std::string& label_suffix) {
    std::vector<std::string> labels;
    std::vector<long> degrees;
    for (const auto& m : rees_monomials(d)) {
        labels.push_back(label_prefix + rees_label(m) + label_suffix);
        degrees.push_back(m[0] * spec.deg_A() + m[1] * spec.deg_B() +
                          m[2] * spec.deg_C() + shift);
    }
    return GradedFreeModule::make(spec.ring(), std::move(labels),
                                  std::move(degrees));
}

size_t rees_index(const std::vector<std::array<unsigned, 3>>& basis,
                  std::array<unsigned, 3> m) {
    auto it = std::find(basis.begin(), basis.end(), m);
    if (it == basis.end()) throw SpecError("rees monomial not in basis");
    return static_cast<size_t>(it - basis.begin());
}

// multiplication by f = x^a A + y^b B + z^g C (or g = y^b' A + z^g' B +
// x^a' C) as a map S_{d} -> S_{d+1}; coefficients are the ring monomials.
void add_linear_form(ModuleMap& map, const DeterminantalSpec& spec, bool use_f,
                     unsigned d, size_t col_offset, size_t row_offset,
                     const Scalar& scale) {
    const auto src = rees_monomials(d);
    const auto tgt = rees_monomials(d + 1);
    const WeightedRing& ring = spec.ring();
    std::array<Polynomial, 3> coeff =
        use_f ? std::array<Polynomial, 3>{power_of_var(0, spec.alpha(), ring),
                                          power_of_var(1, spec.beta(), ring),
                                          power_of_var(2, spec.gamma(), ring)}
              : std::array<Polynomial, 3>{
                    power_of_var(1, spec.beta2(), ring),
                    power_of_var(2, spec.gamma2(), ring),
                    power_of_var(0, spec.alpha2(), ring)};
    for (size_t c = 0; c < src.size(); ++c)
        for (int t = 0; t < 3; ++t) {
            auto m = src[c];
            ++m[t];
            size_t r = rees_index(tgt, m);
            map.set_entry(row_offset + r, col_offset + c,
                          map.entry(row_offset + r, col_offset + c) +
                              coeff[t].times_scalar(scale));
        }
}

}  // namespace

ChainComplex rees_resolution(const DeterminantalSpec& spec, unsigned n) {
    if (n < 2) throw SpecError("rees_resolution requires n >= 2");
    const WeightedRing& ring = spec.ring();
    const Field& field = ring.field();

    auto F0 = GradedFreeModule::base_ring(ring);
    auto F1 = rees_piece(spec, n, 0, "", "");
    ModulePtr F2;
    {
        auto fside = rees_piece(spec, n - 1, spec.deg_f(), "[", "]");
        auto gside = rees_piece(spec, n - 1, spec.deg_g(), "<", ">");
        F2 = direct_sum({fside, gside});
    }
    auto F3 = rees_piece(spec, n - 2, spec.deg_f() + spec.deg_g(), "", "");

    // eps : S_n -> R, substitution A -> a, B -> b, C -> c
    ModuleMap d1 = ModuleMap::zero(F1, F0);
    {
        const auto basis = rees_monomials(n);
        for (size_t c = 0; c < basis.size(); ++c) {
            Polynomial val = Polynomial::constant(1, ring);
            for (unsigned k = 0; k < basis[c][0]; ++k) val = val * spec.minor_a();
            for (unsigned k = 0; k < basis[c][1]; ++k) val = val * spec.minor_b();
            for (unsigned k = 0; k < basis[c][2]; ++k) val = val * spec.minor_c();
            d1.set_entry(0, c, val);
        }
    }

    // (f g) : S_{n-1} (+) S_{n-1} -> S_n
    ModuleMap d2 = ModuleMap::zero(F2, F1);
    size_t half = rees_monomials(n - 1).size();
    add_linear_form(d2, spec, true, n - 1, 0, 0, Scalar(1, field));
    add_linear_form(d2, spec, false, n - 1, half, 0, Scalar(1, field));

    // (-g; f) : S_{n-2} -> S_{n-1} (+) S_{n-1}
    ModuleMap d3 = ModuleMap::zero(F3, F2);
    add_linear_form(d3, spec, false, n - 2, 0, 0, Scalar(-1, field));
    add_linear_form(d3, spec, true, n - 2, 0, half, Scalar(1, field));

    return ChainComplex({F0, F1, F2, F3}, {d1, d2, d3});
}

bool DSequenceReport::all() const {
    if (!syzygy1 || !syzygy2) return false;
    for (const auto& [name, ok] : colon_conditions)
        if (!ok) return false;
    for (const auto& [name, ok] : pair_regular)
        if (!ok) return false;
    return true;
}

DSequenceReport dsequence_checks(const DeterminantalSpec& spec, long d_max) {
    const WeightedRing& ring = spec.ring();
    DSequenceReport rep;
    const Polynomial &a = spec.minor_a(), &b = spec.minor_b(),
                     &c = spec.minor_c();

    rep.syzygy1 = (power_of_var(0, spec.alpha(), ring) * a +
                   power_of_var(1, spec.beta(), ring) * b +
                   power_of_var(2, spec.gamma(), ring) * c)
                      .is_zero();
    rep.syzygy2 = (power_of_var(1, spec.beta2(), ring) * a +
                   power_of_var(2, spec.gamma2(), ring) * b +
                   power_of_var(0, spec.alpha2(), ring) * c)
                      .is_zero();

    struct Perm {
        const char* name;
        const Polynomial *p, *q, *r;
    };
    const Perm perms[] = {
        {"(a,b):c", &a, &b, &c}, {"(a,c):b", &a, &c, &b},
        {"(b,c):a", &b, &c, &a}, {"(b,a):c", &b, &a, &c},
        {"(c,a):b", &c, &a, &b}, {"(c,b):a", &c, &b, &a},
    };
    for (const auto& pm : perms) {
        Ideal pq(ring, {*pm.p, *pm.q});
        Ideal jr(ring, {*pm.r});
        Ideal jr2(ring, {*pm.r * *pm.r});
        auto lhs = colon_oracle(pq, jr, d_max);
        auto rhs = colon_oracle(pq, jr2, d_max);
        rep.colon_conditions.emplace_back(pm.name,
                                          ideals_equal(lhs, rhs, d_max));
    }

    const std::pair<const char*, std::pair<const Polynomial*,
                                           const Polynomial*>> pairs[] = {
        {"(a,b)", {&a, &b}}, {"(a,c)", {&a, &c}}, {"(b,c)", {&b, &c}}};
    for (const auto& [name, pq] : pairs) {
        auto K = koszul_complex_pair(ring, *pq.first, *pq.second);
        rep.pair_regular.emplace_back(
            name, verify_exactness(K, d_max).all_exact);
    }
    return rep;
}

}  // namespace starres
