#include "starres/field.hpp"

namespace starres {

namespace {

bool is_prime(unsigned long n) {
    if (n < 2) return false;
    for (unsigned long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

}  // namespace

Field::Field(unsigned long characteristic) : char_(characteristic) {
    if (char_ != 0 && !is_prime(char_))
        throw FieldError("field characteristic must be 0 or prime, got " +
                         std::to_string(char_));
    if (char_ >= (1ul << 31))
        throw FieldError("prime characteristic must be < 2^31");
}

std::string Field::name() const {
    return char_ == 0 ? "Q" : "F" + std::to_string(char_);
}

Scalar::Scalar(long n, const Field& f) : v_(n), char_(f.characteristic()) {
    normalize();
}

Scalar::Scalar(const mpq_class& v, const Field& f)
    : v_(v), char_(f.characteristic()) {
    v_.canonicalize();
    if (char_ != 0 && v_.get_den() != 1) {
        // reduce the denominator via its inverse mod p
        mpz_class p(static_cast<unsigned long>(char_)), inv;
        if (mpz_invert(inv.get_mpz_t(), v_.get_den().get_mpz_t(),
                       p.get_mpz_t()) == 0)
            throw FieldError("denominator not invertible mod " +
                             std::to_string(char_));
        v_ = mpq_class(v_.get_num() * inv);
    }
    normalize();
}

Scalar Scalar::parse(const std::string& text, const Field& f) {
    mpq_class q;
    if (q.set_str(text, 10) != 0)
        throw FieldError("cannot parse scalar '" + text + "'");
    q.canonicalize();
    return Scalar(q, f);
}

void Scalar::normalize() {
    if (char_ == 0) {
        v_.canonicalize();
        return;
    }
    mpz_class r;
    mpz_class p(static_cast<unsigned long>(char_));
    mpz_mod(r.get_mpz_t(), v_.get_num().get_mpz_t(), p.get_mpz_t());
    v_ = mpq_class(r);
}

void Scalar::check_same(const Scalar& o) const {
    if (char_ != o.char_)
        throw FieldError("scalar field mismatch (" + Field(char_).name() +
                         " vs " + Field(o.char_).name() + ")");
}

Scalar Scalar::operator-() const {
    Scalar r = *this;
    r.v_ = -r.v_;
    r.normalize();
    return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
    check_same(o);
    v_ += o.v_;
    normalize();
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
    check_same(o);
    v_ -= o.v_;
    normalize();
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
    check_same(o);
    v_ *= o.v_;
    normalize();
    return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
    check_same(o);
    return *this *= o.inverse();
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw FieldError("division by zero");
    Scalar r = *this;
    if (char_ == 0) {
        r.v_ = 1 / v_;
        return r;
    }
    mpz_class p(static_cast<unsigned long>(char_)), inv;
    mpz_invert(inv.get_mpz_t(), v_.get_num().get_mpz_t(), p.get_mpz_t());
    r.v_ = mpq_class(inv);
    r.normalize();
    return r;
}

bool Scalar::operator==(const Scalar& o) const {
    check_same(o);
    return v_ == o.v_;
}

std::string Scalar::str() const { return v_.get_str(); }

}  // namespace starres
