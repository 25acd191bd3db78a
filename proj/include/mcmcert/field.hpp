#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace mcmcert {

/// The base field: the rationals, or F_p for a prime p < 2^63.
///
/// Rationals are the default and the source of truth. Results over F_p can
/// undershoot ranks for finitely many unlucky primes and are reported as
/// probabilistic by the callers that expose them.
class Field {
public:
    Field() = default;

    static Field rationals() { return Field{}; }
    /// Throws ArithmeticError unless p is a prime in (2, 2^63).
    static Field prime(std::uint64_t p);
    /// Accepts "rationals", "q", "prime:<p>" or "p:<p>".
    static Field parse(std::string_view text);
    /// A prime in (2^30, 2^31) chosen deterministically from `seed`.
    static Field random_prime(std::uint64_t seed);

    bool is_rational() const { return p_ == 0; }
    bool is_prime() const { return p_ != 0; }
    /// 0 for the rationals.
    std::uint64_t characteristic() const { return p_; }

    std::string to_string() const;

    friend bool operator==(const Field&, const Field&) = default;

private:
    explicit Field(std::uint64_t p) : p_(p) {}
    std::uint64_t p_ = 0;
};

namespace modp {

inline std::uint64_t add(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    std::uint64_t s = a + b;
    return s >= p ? s - p : s;
}

inline std::uint64_t sub(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return a >= b ? a - b : a + (p - b);
}

inline std::uint64_t mul(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t pow(std::uint64_t a, std::uint64_t e, std::uint64_t p);
/// Throws ArithmeticError on a == 0.
std::uint64_t inv(std::uint64_t a, std::uint64_t p);
/// Image of a rational in F_p; throws ArithmeticError if p divides the denominator.
std::uint64_t reduce(const mpq_class& q, std::uint64_t p);
std::uint64_t reduce(const mpz_class& z, std::uint64_t p);

}  // namespace modp

/// An exact field element. Rationals are kept in lowest terms with positive
/// denominator (gmp canonical form); residues lie in [0, p).
class Scalar {
public:
    Scalar() = default;
    Scalar(const Field& field, const mpq_class& value);
    Scalar(const Field& field, long value) : Scalar(field, mpq_class(value)) {}

    static Scalar zero(const Field& f) { return Scalar(f, 0L); }
    static Scalar one(const Field& f) { return Scalar(f, 1L); }
    /// Element of F_p from a residue already in [0, p).
    static Scalar from_residue(const Field& f, std::uint64_t r);

    const Field& field() const { return field_; }
    bool is_zero() const;

    /// Throws FieldMismatch over F_p.
    const mpq_class& rational() const;
    /// Throws FieldMismatch over Q.
    std::uint64_t residue() const;

    Scalar inverse() const;

    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o);

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
    Scalar operator-() const;

    friend bool operator==(const Scalar& a, const Scalar& b);

    std::string to_string() const;

private:
    void require_same_field(const Scalar& o) const;

    Field field_;
    mpq_class q_;
    std::uint64_t r_ = 0;
};

}  // namespace mcmcert
