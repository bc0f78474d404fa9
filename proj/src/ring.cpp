#include "starres/ring.hpp"

#include <algorithm>
#include <cctype>

namespace starres {

WeightedRing::WeightedRing(std::array<unsigned, 3> weights, Field field)
    : weights_(weights), field_(field) {
    for (unsigned w : weights_)
        if (w < 1) throw RingError("ring weights must be positive");
}

unsigned WeightedRing::max_weight() const {
    return std::max({weights_[0], weights_[1], weights_[2]});
}

const std::array<std::string, 3>& WeightedRing::variables() {
    static const std::array<std::string, 3> vars = {"x", "y", "z"};
    return vars;
}

long Monomial::weighted_degree(const WeightedRing& ring) const {
    const auto& w = ring.weights();
    return static_cast<long>(e_[0]) * w[0] + static_cast<long>(e_[1]) * w[1] +
           static_cast<long>(e_[2]) * w[2];
}

Monomial Monomial::operator*(const Monomial& o) const {
    return Monomial(e_[0] + o.e_[0], e_[1] + o.e_[1], e_[2] + o.e_[2]);
}

bool Monomial::divides(const Monomial& o) const {
    return e_[0] <= o.e_[0] && e_[1] <= o.e_[1] && e_[2] <= o.e_[2];
}

Monomial Monomial::divide(const Monomial& o) const {
    if (!divides(o)) throw RingError("monomial division is not exact");
    return Monomial(o.e_[0] - e_[0], o.e_[1] - e_[1], o.e_[2] - e_[2]);
}

std::string Monomial::str() const {
    if (is_one()) return "1";
    std::string s;
    const auto& vars = WeightedRing::variables();
    for (size_t i = 0; i < 3; ++i) {
        if (e_[i] == 0) continue;
        if (!s.empty()) s += "*";
        s += vars[i];
        if (e_[i] > 1) s += "^" + std::to_string(e_[i]);
    }
    return s;
}

int cmp_monomials(const Monomial& a, const Monomial& b,
                  const WeightedRing& ring) {
    long da = a.weighted_degree(ring), db = b.weighted_degree(ring);
    if (da != db) return da < db ? -1 : 1;
    if (a.exponents() != b.exponents())
        return a.exponents() < b.exponents() ? -1 : 1;
    return 0;
}

Polynomial::Polynomial(const WeightedRing& ring, std::vector<Term> terms)
    : ring_(ring), terms_(std::move(terms)) {
    for (const auto& [m, c] : terms_)
        if (c.characteristic() != ring_.field().characteristic())
            throw RingError("coefficient field does not match ring field");
    normalize();
}

Polynomial Polynomial::constant(long c, const WeightedRing& ring) {
    return Polynomial(ring, {{Monomial(), Scalar(c, ring.field())}});
}

Polynomial Polynomial::monomial(const Monomial& m, const WeightedRing& ring) {
    return Polynomial(ring, {{m, Scalar(1, ring.field())}});
}

Polynomial Polynomial::term(const Monomial& m, const Scalar& c,
                            const WeightedRing& ring) {
    return Polynomial(ring, {{m, c}});
}

Polynomial Polynomial::variable(size_t i, const WeightedRing& ring) {
    if (i >= 3) throw RingError("variable index out of range");
    unsigned e[3] = {0, 0, 0};
    e[i] = 1;
    return monomial(Monomial(e[0], e[1], e[2]), ring);
}

Scalar Polynomial::coefficient(const Monomial& m) const {
    for (const auto& [mm, c] : terms_)
        if (mm == m) return c;
    return Scalar(0, ring_.field());
}

Scalar Polynomial::constant_term() const { return coefficient(Monomial()); }

bool Polynomial::is_monomial() const {
    return terms_.size() == 1 && terms_[0].second.is_one();
}

bool Polynomial::is_homogeneous() const {
    if (terms_.empty()) return true;
    long d = terms_[0].first.weighted_degree(ring_);
    for (const auto& [m, c] : terms_)
        if (m.weighted_degree(ring_) != d) return false;
    return true;
}

bool Polynomial::is_homogeneous_of_degree(long d) const {
    for (const auto& [m, c] : terms_)
        if (m.weighted_degree(ring_) != d) return false;
    return true;
}

long Polynomial::homogeneous_degree() const {
    if (terms_.empty())
        throw RingError("zero polynomial has no homogeneous degree");
    if (!is_homogeneous())
        throw RingError("polynomial is not homogeneous: " + str());
    return terms_[0].first.weighted_degree(ring_);
}

Polynomial Polynomial::operator-() const {
    Polynomial r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    check_same_ring(o);
    terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
    normalize();
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    check_same_ring(o);
    for (const auto& [m, c] : o.terms_) terms_.emplace_back(m, -c);
    normalize();
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    a.check_same_ring(b);
    std::vector<Polynomial::Term> prod;
    prod.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) prod.emplace_back(ma * mb, ca * cb);
    return Polynomial(a.ring_, std::move(prod));
}

Polynomial Polynomial::times_monomial(const Monomial& m) const {
    Polynomial r = *this;
    for (auto& [mm, c] : r.terms_) mm = mm * m;
    // multiplying by a monomial preserves the canonical order
    return r;
}

Polynomial Polynomial::times_scalar(const Scalar& c) const {
    if (c.is_zero()) return Polynomial(ring_);
    Polynomial r = *this;
    for (auto& [m, cc] : r.terms_) cc *= c;
    return r;
}

Polynomial Polynomial::divide_by_monomial(const Monomial& m) const {
    Polynomial r = *this;
    for (auto& [mm, c] : r.terms_) mm = m.divide(mm);
    return r;
}

bool Polynomial::operator==(const Polynomial& o) const {
    check_same_ring(o);
    return terms_ == o.terms_;
}

void Polynomial::check_same_ring(const Polynomial& o) const {
    if (!(ring_ == o.ring_)) throw RingError("polynomial ring mismatch");
}

void Polynomial::normalize() {
    std::sort(terms_.begin(), terms_.end(),
              [this](const Term& a, const Term& b) {
                  return cmp_monomials(a.first, b.first, ring_) < 0;
              });
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
        if (!out.empty() && out.back().first == t.first)
            out.back().second += t.second;
        else
            out.push_back(std::move(t));
        if (!out.empty() && out.back().second.is_zero()) out.pop_back();
    }
    terms_ = std::move(out);
}

std::string Polynomial::str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (size_t k = 0; k < terms_.size(); ++k) {
        const auto& [m, c] = terms_[k];
        mpq_class v = c.value();
        bool neg = v < 0;
        mpq_class av = neg ? mpq_class(-v) : v;
        if (k == 0)
            s += neg ? "-" : "";
        else
            s += neg ? " - " : " + ";
        if (m.is_one()) {
            s += av.get_str();
        } else {
            if (av != 1) s += av.get_str() + "*";
            s += m.str();
        }
    }
    return s;
}

namespace {

struct Parser {
    const std::string& text;
    size_t pos = 0;

    explicit Parser(const std::string& t) : text(t) {}

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    bool done() {
        skip_ws();
        return pos >= text.size();
    }
    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }
    [[noreturn]] void fail(const std::string& what) {
        throw RingError("parse error at position " + std::to_string(pos) +
                        " in '" + text + "': " + what);
    }

    std::string read_integer() {
        skip_ws();
        size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == start) fail("expected integer");
        return text.substr(start, pos - start);
    }

    unsigned read_exponent() {
        auto s = read_integer();
        return static_cast<unsigned>(std::stoul(s));
    }

    // term := [coeff] ['*'] factors | coeff ;  caller handles the sign
    Polynomial::Term read_term(const WeightedRing& ring) {
        mpq_class coeff = 1;
        bool saw_coeff = false;
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
            std::string num = read_integer();
            std::string den;
            if (peek() == '/') {
                ++pos;
                den = read_integer();
            }
            coeff = den.empty() ? mpq_class(num) : mpq_class(num + "/" + den);
            coeff.canonicalize();
            saw_coeff = true;
            if (peek() == '*') ++pos;
        }
        std::array<unsigned, 3> e = {0, 0, 0};
        bool saw_var = false;
        while (true) {
            char c = peek();
            int vi = c == 'x' ? 0 : c == 'y' ? 1 : c == 'z' ? 2 : -1;
            if (vi < 0) break;
            ++pos;
            unsigned ex = 1;
            if (peek() == '^') {
                ++pos;
                ex = read_exponent();
            }
            e[vi] += ex;
            saw_var = true;
            if (peek() == '*') {
                ++pos;
                continue;
            }
            break;
        }
        if (!saw_var && !saw_coeff) fail("expected term");
        return {Monomial(e[0], e[1], e[2]), Scalar(coeff, ring.field())};
    }
};

}  // namespace

Polynomial parse_polynomial(const std::string& text, const WeightedRing& ring) {
    Parser p(text);
    std::vector<Polynomial::Term> terms;
    if (p.done()) throw RingError("empty polynomial text");
    bool first = true;
    while (!p.done()) {
        int sign = 1;
        char c = p.peek();
        if (c == '+' || c == '-') {
            sign = c == '-' ? -1 : 1;
            ++p.pos;
        } else if (!first) {
            p.fail("expected '+' or '-' between terms");
        }
        auto [m, coeff] = p.read_term(ring);
        if (sign < 0) coeff = -coeff;
        terms.emplace_back(m, coeff);
        first = false;
    }
    return Polynomial(ring, std::move(terms));
}

std::vector<Monomial> monomials_of_weighted_degree(const WeightedRing& ring,
                                                   long d) {
    std::vector<Monomial> out;
    if (d < 0) return out;
    const auto& w = ring.weights();
    for (unsigned i = 0; static_cast<long>(i) * w[0] <= d; ++i) {
        long rest_i = d - static_cast<long>(i) * w[0];
        for (unsigned j = 0; static_cast<long>(j) * w[1] <= rest_i; ++j) {
            long rest = rest_i - static_cast<long>(j) * w[1];
            if (rest % w[2] == 0)
                out.emplace_back(i, j, static_cast<unsigned>(rest / w[2]));
        }
    }
    // enumeration is already lex-ascending on (i, j, k) within fixed degree
    return out;
}

size_t ring_piece_dim(const WeightedRing& ring, long d) {
    if (d < 0) return 0;
    if (d == 0) return 1;
    return monomials_of_weighted_degree(ring, d).size();
}

}  // namespace starres
