#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "mcmcert/form.hpp"
#include "mcmcert/matrix.hpp"

namespace mcmcert {

/// C(d+n, n) for d >= 0, 0 for d < 0: the dimension of the space of
/// degree-d forms in n+1 variables.
std::size_t dim_forms(int n, int d);

/// Monomials of degree d in x_0..x_n in graded lexicographic order with
/// x_0 > x_1 > ... > x_n: x_0^d comes first, x_n^d last.
class MonomialBasis {
public:
    MonomialBasis(int n, int d);

    /// Shared, cached instance.
    static std::shared_ptr<const MonomialBasis> get(int n, int d);

    int ambient_dim() const { return n_; }
    int degree() const { return d_; }
    std::size_t size() const { return monomials_.size(); }
    const std::vector<Exponent>& monomials() const { return monomials_; }
    const Exponent& operator[](std::size_t i) const { return monomials_[i]; }
    /// Position of `e` in the basis; throws if `e` is not a degree-d monomial.
    std::size_t index_of(const Exponent& e) const;

private:
    int n_;
    int d_;
    std::vector<Exponent> monomials_;
    std::map<Exponent, std::size_t> index_;
};

/// Matrix of (. f): Forms_d -> Forms_{d+e}, shape dim_forms(n, d+e) x dim_forms(n, d).
/// For d < 0 the result has zero columns. Throws DegreeMismatch when a
/// nonzero f disagrees with `expected_degree`.
DenseMatrix multiplication_matrix(const HomogeneousForm& f, int d, const Field& field,
                                  std::optional<int> expected_degree = std::nullopt);

/// Matrix of the map  (+)_j H^0(O(source_j + m)) -> (+)_i H^0(O(target_i + m))
/// induced by phi, a target.size() x source.size() grid with
/// deg phi[i][j] = target_i - source_j (zero entries are allowed anywhere).
/// Blocks with a negative twist collapse to zero width.
DenseMatrix block_matrix(const std::vector<std::vector<HomogeneousForm>>& phi,
                         const std::vector<int>& source_twists,
                         const std::vector<int>& target_twists, int m, int n,
                         const Field& field);

}  // namespace mcmcert
