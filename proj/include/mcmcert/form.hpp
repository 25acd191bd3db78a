#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "mcmcert/field.hpp"

namespace mcmcert {

/// Exponent vector of a monomial in x_0..x_n.
using Exponent = std::vector<int>;

/// A homogeneous polynomial in x_0..x_n with rational coefficients, stored
/// sparsely by exponent vector.
///
/// The zero form carries a declared degree so it can sit in a presentation
/// matrix slot of any degree; arithmetic treats it as degree-agnostic.
class HomogeneousForm {
public:
    HomogeneousForm() = default;
    /// The zero form of the given degree.
    HomogeneousForm(int n, int degree);

    static HomogeneousForm constant(int n, const mpq_class& c);
    static HomogeneousForm variable(int n, int i);
    static HomogeneousForm monomial(int n, const Exponent& e, const mpq_class& c = 1);
    /// sum_i coeffs[i] * x_i; coeffs must have n + 1 entries.
    static HomogeneousForm linear(int n, std::span<const mpq_class> coeffs);

    /// Parses e.g. "x0 + 2*x1^2 - 3*x0*x2". Coefficients are integers or a/b.
    /// The zero form "0" takes `expected_degree` (or 0). A nonzero form must
    /// match `expected_degree` when one is given; throws ParseError otherwise.
    static HomogeneousForm parse(std::string_view text, int n,
                                 std::optional<int> expected_degree = std::nullopt);

    int ambient_dim() const { return n_; }
    int degree() const { return degree_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<Exponent, mpq_class>& terms() const { return terms_; }
    mpq_class coefficient(const Exponent& e) const;

    HomogeneousForm& operator+=(const HomogeneousForm& o);
    HomogeneousForm& operator-=(const HomogeneousForm& o);
    HomogeneousForm& operator*=(const mpq_class& c);

    friend HomogeneousForm operator+(HomogeneousForm a, const HomogeneousForm& b) { return a += b; }
    friend HomogeneousForm operator-(HomogeneousForm a, const HomogeneousForm& b) { return a -= b; }
    friend HomogeneousForm operator*(HomogeneousForm a, const mpq_class& c) { return a *= c; }
    friend HomogeneousForm operator*(const HomogeneousForm& a, const HomogeneousForm& b);
    friend bool operator==(const HomogeneousForm& a, const HomogeneousForm& b);

    mpq_class evaluate(std::span<const mpq_class> point) const;
    Scalar evaluate(const Field& field, std::span<const mpq_class> point) const;

    /// Replaces x_i by images[i]; all images share one ambient ring and one degree.
    HomogeneousForm substitute(const std::vector<HomogeneousForm>& images) const;

    std::string to_string() const;

private:
    void check_compatible(const HomogeneousForm& o, const char* op) const;

    int n_ = 0;
    int degree_ = 0;
    std::map<Exponent, mpq_class> terms_;
};

}  // namespace mcmcert
