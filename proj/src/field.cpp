#include "mcmcert/field.hpp"

#include <charconv>
#include <random>

#include "mcmcert/error.hpp"

namespace mcmcert {

Field Field::prime(std::uint64_t p) {
    if (p <= 2 || p >= (std::uint64_t{1} << 63)) {
        throw ArithmeticError("prime field characteristic must lie in (2, 2^63), got " +
                              std::to_string(p));
    }
    mpz_class z;
    mpz_import(z.get_mpz_t(), 1, 1, sizeof(p), 0, 0, &p);
    if (mpz_probab_prime_p(z.get_mpz_t(), 40) == 0) {
        throw ArithmeticError(std::to_string(p) + " is not prime");
    }
    return Field(p);
}

Field Field::parse(std::string_view text) {
    if (text == "rationals" || text == "q" || text == "Q") return rationals();
    std::string_view digits;
    if (text.starts_with("prime:")) {
        digits = text.substr(6);
    } else if (text.starts_with("p:")) {
        digits = text.substr(2);
    } else {
        throw ParseError("unknown field '" + std::string(text) +
                         "' (expected rationals or prime:<p>)");
    }
    std::uint64_t p = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), p);
    if (ec != std::errc{} || ptr != digits.data() + digits.size()) {
        throw ParseError("bad prime in field descriptor '" + std::string(text) + "'");
    }
    return prime(p);
}

Field Field::random_prime(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uint64_t lo = std::uint64_t{1} << 30;
    std::uint64_t start = lo + rng() % (lo - 4096);
    mpz_class z(static_cast<unsigned long>(start));
    mpz_class next;
    mpz_nextprime(next.get_mpz_t(), z.get_mpz_t());
    return prime(next.get_ui());
}

std::string Field::to_string() const {
    return is_rational() ? std::string("rationals") : "prime:" + std::to_string(p_);
}

namespace modp {

std::uint64_t pow(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
    std::uint64_t result = 1 % p;
    a %= p;
    while (e > 0) {
        if (e & 1) result = mul(result, a, p);
        a = mul(a, a, p);
        e >>= 1;
    }
    return result;
}

std::uint64_t inv(std::uint64_t a, std::uint64_t p) {
    if (a % p == 0) throw ArithmeticError("division by zero in F_" + std::to_string(p));
    return pow(a, p - 2, p);
}

std::uint64_t reduce(const mpz_class& z, std::uint64_t p) {
    mpz_class pz;
    mpz_import(pz.get_mpz_t(), 1, 1, sizeof(p), 0, 0, &p);
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), z.get_mpz_t(), pz.get_mpz_t());
    std::uint64_t out = 0;
    if (r != 0) mpz_export(&out, nullptr, 1, sizeof(out), 0, 0, r.get_mpz_t());
    return out;
}

std::uint64_t reduce(const mpq_class& q, std::uint64_t p) {
    std::uint64_t den = reduce(q.get_den(), p);
    if (den == 0) {
        throw ArithmeticError("denominator of " + q.get_str() + " vanishes mod " +
                              std::to_string(p));
    }
    return mul(reduce(q.get_num(), p), inv(den, p), p);
}

}  // namespace modp

Scalar::Scalar(const Field& field, const mpq_class& value) : field_(field) {
    if (field_.is_rational()) {
        q_ = value;
        q_.canonicalize();
    } else {
        r_ = modp::reduce(value, field_.characteristic());
    }
}

Scalar Scalar::from_residue(const Field& f, std::uint64_t r) {
    if (!f.is_prime()) throw FieldMismatch("from_residue over the rationals");
    Scalar s;
    s.field_ = f;
    s.r_ = r % f.characteristic();
    return s;
}

bool Scalar::is_zero() const { return field_.is_rational() ? q_ == 0 : r_ == 0; }

const mpq_class& Scalar::rational() const {
    if (!field_.is_rational()) throw FieldMismatch("rational() on an F_p scalar");
    return q_;
}

std::uint64_t Scalar::residue() const {
    if (field_.is_rational()) throw FieldMismatch("residue() on a rational scalar");
    return r_;
}

void Scalar::require_same_field(const Scalar& o) const {
    if (!(field_ == o.field_)) {
        throw FieldMismatch("scalar arithmetic between " + field_.to_string() + " and " +
                            o.field_.to_string());
    }
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw ArithmeticError("inverse of zero");
    Scalar out = *this;
    if (field_.is_rational()) {
        out.q_ = 1 / q_;
    } else {
        out.r_ = modp::inv(r_, field_.characteristic());
    }
    return out;
}

Scalar& Scalar::operator+=(const Scalar& o) {
    require_same_field(o);
    if (field_.is_rational()) q_ += o.q_;
    else r_ = modp::add(r_, o.r_, field_.characteristic());
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
    require_same_field(o);
    if (field_.is_rational()) q_ -= o.q_;
    else r_ = modp::sub(r_, o.r_, field_.characteristic());
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
    require_same_field(o);
    if (field_.is_rational()) q_ *= o.q_;
    else r_ = modp::mul(r_, o.r_, field_.characteristic());
    return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
    require_same_field(o);
    return *this *= o.inverse();
}

Scalar Scalar::operator-() const {
    Scalar out = *this;
    if (field_.is_rational()) out.q_ = -q_;
    else out.r_ = modp::sub(0, r_, field_.characteristic());
    return out;
}

bool operator==(const Scalar& a, const Scalar& b) {
    if (!(a.field_ == b.field_)) return false;
    return a.field_.is_rational() ? a.q_ == b.q_ : a.r_ == b.r_;
}

std::string Scalar::to_string() const {
    return field_.is_rational() ? q_.get_str() : std::to_string(r_);
}

}  // namespace mcmcert
