#pragma once

#include <vector>

#include "mcmcert/field.hpp"

namespace mcmcert {

/// Dense univariate polynomial over a Field, coefficients low to high,
/// trailing zeros trimmed. The zero polynomial has degree -1.
class UnivariatePolynomial {
public:
    explicit UnivariatePolynomial(const Field& field, std::vector<Scalar> coeffs = {});

    /// The unique polynomial of degree < xs.size() through (xs[k], ys[k]).
    /// Throws ArithmeticError on repeated nodes.
    static UnivariatePolynomial interpolate(const Field& field, const std::vector<Scalar>& xs,
                                            const std::vector<Scalar>& ys);

    const Field& field() const { return field_; }
    const std::vector<Scalar>& coefficients() const { return c_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }

    Scalar evaluate(const Scalar& x) const;
    UnivariatePolynomial derivative() const;
    /// Remainder of division by a nonzero divisor.
    UnivariatePolynomial mod(const UnivariatePolynomial& divisor) const;
    /// Quotient of division by a nonzero divisor.
    UnivariatePolynomial div(const UnivariatePolynomial& divisor) const;
    /// Number of distinct roots over the algebraic closure: deg(p / gcd(p, p')).
    /// Only valid in characteristic 0 or above the degree.
    int distinct_root_count() const;

    friend bool operator==(const UnivariatePolynomial& a, const UnivariatePolynomial& b) {
        return a.c_ == b.c_;
    }

private:
    void trim();
    Field field_;
    std::vector<Scalar> c_;
};

/// Monic gcd; gcd(0, 0) = 0.
UnivariatePolynomial gcd(UnivariatePolynomial a, UnivariatePolynomial b);

}  // namespace mcmcert
