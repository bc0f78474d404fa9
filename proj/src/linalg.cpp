#include "starres/linalg.hpp"

namespace starres {

Matrix::Matrix(size_t rows, size_t cols, const Field& f)
    : rows_(rows), cols_(cols), field_(f),
      a_(rows * cols, Scalar(0, f)) {}

bool Matrix::operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
}

namespace {

// Row echelon reduction in place; returns pivot (row, col) pairs.
// Deterministic: scan columns left to right, take the first nonzero row.
std::vector<std::pair<size_t, size_t>> echelonize(Matrix& m) {
    std::vector<std::pair<size_t, size_t>> pivots;
    size_t r = 0;
    for (size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        size_t p = r;
        while (p < m.rows() && m.at(p, c).is_zero()) ++p;
        if (p == m.rows()) continue;
        if (p != r)
            for (size_t j = c; j < m.cols(); ++j)
                std::swap(m.at(r, j), m.at(p, j));
        Scalar inv = m.at(r, c).inverse();
        for (size_t j = c; j < m.cols(); ++j) m.at(r, j) *= inv;
        for (size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m.at(i, c).is_zero()) continue;
            Scalar f = m.at(i, c);
            for (size_t j = c; j < m.cols(); ++j)
                m.at(i, j) -= f * m.at(r, j);
        }
        pivots.emplace_back(r, c);
        ++r;
    }
    return pivots;
}

uint64_t mod_inverse(uint64_t a, uint64_t p) {
    // extended Euclid; p prime, a in (0, p)
    int64_t t = 0, newt = 1;
    int64_t r = static_cast<int64_t>(p), newr = static_cast<int64_t>(a);
    while (newr != 0) {
        int64_t q = r / newr;
        t -= q * newt;
        std::swap(t, newt);
        r -= q * newr;
        std::swap(r, newr);
    }
    if (t < 0) t += static_cast<int64_t>(p);
    return static_cast<uint64_t>(t);
}

}  // namespace

size_t rank(const Matrix& a) {
    Matrix m = a;
    return echelonize(m).size();
}

std::optional<Vector> linear_solve(const Matrix& a, const Vector& b) {
    if (b.size() != a.rows())
        throw LinalgError("linear_solve: dimension mismatch");
    Matrix m(a.rows(), a.cols() + 1, a.field());
    for (size_t i = 0; i < a.rows(); ++i) {
        for (size_t j = 0; j < a.cols(); ++j) m.at(i, j) = a.at(i, j);
        m.at(i, a.cols()) = b[i];
    }
    auto pivots = echelonize(m);
    // inconsistent iff some pivot lands in the appended column
    for (const auto& [r, c] : pivots)
        if (c == a.cols()) return std::nullopt;
    Vector x(a.cols(), Scalar(0, a.field()));
    for (const auto& [r, c] : pivots) x[c] = m.at(r, a.cols());
    return x;
}

std::vector<Vector> kernel(const Matrix& a) {
    Matrix m = a;
    auto pivots = echelonize(m);
    std::vector<bool> is_pivot(a.cols(), false);
    for (const auto& [r, c] : pivots) is_pivot[c] = true;
    std::vector<Vector> basis;
    for (size_t fc = 0; fc < a.cols(); ++fc) {
        if (is_pivot[fc]) continue;
        Vector v(a.cols(), Scalar(0, a.field()));
        v[fc] = Scalar(1, a.field());
        for (const auto& [r, c] : pivots) v[c] = -m.at(r, fc);
        basis.push_back(std::move(v));
    }
    return basis;
}

size_t rank_mod_p(std::vector<uint64_t>& a, size_t rows, size_t cols,
                  uint64_t p) {
    size_t rk = 0;
    for (size_t c = 0; c < cols && rk < rows; ++c) {
        size_t piv = rk;
        while (piv < rows && a[piv * cols + c] == 0) ++piv;
        if (piv == rows) continue;
        if (piv != rk)
            for (size_t j = c; j < cols; ++j)
                std::swap(a[rk * cols + j], a[piv * cols + j]);
        uint64_t inv = mod_inverse(a[rk * cols + c], p);
        for (size_t j = c; j < cols; ++j)
            a[rk * cols + j] = a[rk * cols + j] * inv % p;
        for (size_t i = rk + 1; i < rows; ++i) {
            uint64_t f = a[i * cols + c];
            if (f == 0) continue;
            uint64_t nf = p - f;
            for (size_t j = c; j < cols; ++j)
                a[i * cols + j] = (a[i * cols + j] + nf * a[rk * cols + j]) % p;
        }
        ++rk;
    }
    return rk;
}

std::optional<size_t> rank_lower_bound(const Matrix& a, uint64_t prime) {
    std::vector<uint64_t> m(a.rows() * a.cols(), 0);
    mpz_class p(static_cast<unsigned long>(prime)), num, den, r;
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j) {
            const mpq_class& q = a.at(i, j).value();
            mpz_mod(num.get_mpz_t(), q.get_num().get_mpz_t(), p.get_mpz_t());
            if (q.get_den() == 1) {
                m[i * a.cols() + j] = num.get_ui();
                continue;
            }
            mpz_mod(den.get_mpz_t(), q.get_den().get_mpz_t(), p.get_mpz_t());
            if (den == 0) return std::nullopt;
            uint64_t dinv = mod_inverse(den.get_ui(), prime);
            m[i * a.cols() + j] = num.get_ui() * dinv % prime;
        }
    return rank_mod_p(m, a.rows(), a.cols(), prime);
}

}  // namespace starres
