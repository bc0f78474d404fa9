#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace starres {

struct FieldError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Coefficient field: the rationals (characteristic 0) or a prime field F_p.
class Field {
public:
    Field() = default;
    explicit Field(unsigned long characteristic);

    unsigned long characteristic() const { return char_; }
    bool operator==(const Field&) const = default;

    std::string name() const;

private:
    unsigned long char_ = 0;
};

/// Exact field element. Carries its characteristic so values are
/// self-contained; mixing elements of different fields throws.
class Scalar {
public:
    Scalar() = default;  // zero over Q

    Scalar(long n, const Field& f);
    Scalar(const mpq_class& v, const Field& f);
    static Scalar parse(const std::string& text, const Field& f);

    Field field() const { return Field(char_); }
    unsigned long characteristic() const { return char_; }
    bool is_zero() const { return v_ == 0; }
    bool is_one() const { return v_ == 1; }
    const mpq_class& value() const { return v_; }

    Scalar operator-() const;
    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o);
    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

    Scalar inverse() const;

    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    std::string str() const;

private:
    void normalize();
    void check_same(const Scalar& o) const;

    mpq_class v_ = 0;
    unsigned long char_ = 0;
};

}  // namespace starres
