#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "starres/field.hpp"

namespace starres {

struct LinalgError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Dense matrix over an exact field.
class Matrix {
public:
    Matrix() = default;
    Matrix(size_t rows, size_t cols, const Field& f);

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    const Field& field() const { return field_; }

    Scalar& at(size_t i, size_t j) { return a_[i * cols_ + j]; }
    const Scalar& at(size_t i, size_t j) const { return a_[i * cols_ + j]; }

    bool operator==(const Matrix& o) const;

private:
    size_t rows_ = 0, cols_ = 0;
    Field field_;
    std::vector<Scalar> a_;
};

using Vector = std::vector<Scalar>;

/// Exact rank via Gaussian elimination with deterministic pivoting
/// (columns left to right, first nonzero row).
size_t rank(const Matrix& a);

/// Any exact solution of A x = b, or nullopt when inconsistent. Free
/// variables are set to zero, so the result is deterministic.
std::optional<Vector> linear_solve(const Matrix& a, const Vector& b);

/// Canonical basis of the null space (from the reduced row echelon form,
/// one vector per free column, in column order).
std::vector<Vector> kernel(const Matrix& a);

/// Lower bound on rank(a) obtained by reducing the entries modulo a 31-bit
/// prime; always <= the true rank. Returns nullopt when some denominator
/// vanishes mod the prime (caller should escalate to the exact path).
/// For a base field of characteristic p this is computed mod p and is exact.
std::optional<size_t> rank_lower_bound(const Matrix& a, uint64_t prime);

/// Word-size Gaussian elimination mod p on an explicit dense array
/// (row-major, rows x cols), destroys its input.
size_t rank_mod_p(std::vector<uint64_t>& a, size_t rows, size_t cols,
                  uint64_t p);

}  // namespace starres
