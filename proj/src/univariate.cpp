#include "mcmcert/univariate.hpp"

#include "mcmcert/error.hpp"

namespace mcmcert {

UnivariatePolynomial::UnivariatePolynomial(const Field& field, std::vector<Scalar> coeffs)
    : field_(field), c_(std::move(coeffs)) {
    for (const auto& s : c_)
        if (!(s.field() == field_)) throw FieldMismatch("polynomial coefficient over another field");
    trim();
}

void UnivariatePolynomial::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

UnivariatePolynomial UnivariatePolynomial::interpolate(const Field& field,
                                                       const std::vector<Scalar>& xs,
                                                       const std::vector<Scalar>& ys) {
    if (xs.size() != ys.size()) throw Error("interpolate: node and value counts differ");
    const std::size_t k = xs.size();
    // Newton divided differences, then expand the Newton form by Horner.
    std::vector<Scalar> dd = ys;
    for (std::size_t level = 1; level < k; ++level) {
        for (std::size_t i = k - 1; i >= level; --i) {
            Scalar den = xs[i] - xs[i - level];
            if (den.is_zero()) throw ArithmeticError("interpolate: repeated node");
            dd[i] = (dd[i] - dd[i - 1]) / den;
        }
    }
    std::vector<Scalar> poly;
    for (std::size_t idx = k; idx-- > 0;) {
        // poly = poly * (x - xs[idx]) + dd[idx]
        std::vector<Scalar> next(poly.size() + 1, Scalar::zero(field));
        for (std::size_t j = 0; j < poly.size(); ++j) {
            next[j + 1] += poly[j];
            next[j] -= poly[j] * xs[idx];
        }
        next[0] += dd[idx];
        poly = std::move(next);
    }
    return UnivariatePolynomial(field, std::move(poly));
}

Scalar UnivariatePolynomial::evaluate(const Scalar& x) const {
    Scalar acc = Scalar::zero(field_);
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
}

UnivariatePolynomial UnivariatePolynomial::derivative() const {
    std::vector<Scalar> d;
    for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * Scalar(field_, static_cast<long>(i)));
    return UnivariatePolynomial(field_, std::move(d));
}

namespace {

void divide(const UnivariatePolynomial& a, const UnivariatePolynomial& b,
            std::vector<Scalar>& quot, std::vector<Scalar>& rem) {
    if (b.is_zero()) throw ArithmeticError("polynomial division by zero");
    const Field& f = a.field();
    rem = a.coefficients();
    const auto& bc = b.coefficients();
    const Scalar lead_inv = bc.back().inverse();
    quot.clear();
    if (rem.size() < bc.size()) return;
    quot.assign(rem.size() - bc.size() + 1, Scalar::zero(f));
    for (std::size_t shift = quot.size(); shift-- > 0;) {
        Scalar q = rem[shift + bc.size() - 1] * lead_inv;
        quot[shift] = q;
        for (std::size_t j = 0; j < bc.size(); ++j) rem[shift + j] -= q * bc[j];
    }
}

}  // namespace

UnivariatePolynomial UnivariatePolynomial::mod(const UnivariatePolynomial& divisor) const {
    std::vector<Scalar> q, r;
    divide(*this, divisor, q, r);
    return UnivariatePolynomial(field_, std::move(r));
}

UnivariatePolynomial UnivariatePolynomial::div(const UnivariatePolynomial& divisor) const {
    std::vector<Scalar> q, r;
    divide(*this, divisor, q, r);
    return UnivariatePolynomial(field_, std::move(q));
}

int UnivariatePolynomial::distinct_root_count() const {
    if (degree() <= 0) return 0;
    return div(gcd(*this, derivative())).degree();
}

UnivariatePolynomial gcd(UnivariatePolynomial a, UnivariatePolynomial b) {
    while (!b.is_zero()) {
        UnivariatePolynomial r = a.mod(b);
        a = std::move(b);
        b = std::move(r);
    }
    if (a.is_zero()) return a;
    Scalar inv = a.coefficients().back().inverse();
    std::vector<Scalar> c = a.coefficients();
    for (auto& s : c) s *= inv;
    return UnivariatePolynomial(a.field(), std::move(c));
}

}  // namespace mcmcert
