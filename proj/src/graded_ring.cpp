#include "mcmcert/graded_ring.hpp"

#include <mutex>

#include "mcmcert/error.hpp"

namespace mcmcert {

std::size_t dim_forms(int n, int d) {
    if (n < 0) throw Error("dim_forms: negative dimension");
    if (d < 0) return 0;
    // C(d+n, n) computed incrementally; exact at each step.
    std::uint64_t c = 1;
    for (int k = 1; k <= n; ++k) c = c * static_cast<std::uint64_t>(d + k) / static_cast<std::uint64_t>(k);
    return static_cast<std::size_t>(c);
}

namespace {

void enumerate(int var, int n, int remaining, Exponent& cur, std::vector<Exponent>& out) {
    if (var == n) {
        cur[static_cast<std::size_t>(var)] = remaining;
        out.push_back(cur);
        return;
    }
    for (int e = remaining; e >= 0; --e) {
        cur[static_cast<std::size_t>(var)] = e;
        enumerate(var + 1, n, remaining - e, cur, out);
    }
}

}  // namespace

MonomialBasis::MonomialBasis(int n, int d) : n_(n), d_(d) {
    if (n < 0) throw Error("MonomialBasis: negative dimension");
    if (d < 0) return;
    Exponent cur(static_cast<std::size_t>(n + 1), 0);
    monomials_.reserve(dim_forms(n, d));
    enumerate(0, n, d, cur, monomials_);
    for (std::size_t i = 0; i < monomials_.size(); ++i) index_.emplace(monomials_[i], i);
}

std::shared_ptr<const MonomialBasis> MonomialBasis::get(int n, int d) {
    static std::mutex mutex;
    static std::map<std::pair<int, int>, std::shared_ptr<const MonomialBasis>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[{n, d}];
    if (!slot) slot = std::make_shared<const MonomialBasis>(n, d);
    return slot;
}

std::size_t MonomialBasis::index_of(const Exponent& e) const {
    auto it = index_.find(e);
    if (it == index_.end()) throw Error("monomial not in basis");
    return it->second;
}

namespace {

// Adds the matrix of (. f) on Forms_d into `out` at (row0, col0).
void write_block(DenseMatrix& out, std::size_t row0, std::size_t col0, const HomogeneousForm& f,
                 int d) {
    if (d < 0 || f.is_zero()) return;
    int n = f.ambient_dim();
    auto src = MonomialBasis::get(n, d);
    auto dst = MonomialBasis::get(n, d + f.degree());
    Exponent prod(static_cast<std::size_t>(n + 1));
    for (std::size_t c = 0; c < src->size(); ++c) {
        const Exponent& m = (*src)[c];
        for (const auto& [e, coeff] : f.terms()) {
            for (std::size_t k = 0; k < prod.size(); ++k) prod[k] = m[k] + e[k];
            out.set(row0 + dst->index_of(prod), col0 + c, coeff);
        }
    }
}

}  // namespace

DenseMatrix multiplication_matrix(const HomogeneousForm& f, int d, const Field& field,
                                  std::optional<int> expected_degree) {
    if (expected_degree && !f.is_zero() && f.degree() != *expected_degree) {
        throw DegreeMismatch("multiplication_matrix: form of degree " + std::to_string(f.degree()) +
                             ", declared " + std::to_string(*expected_degree));
    }
    int e = expected_degree.value_or(f.degree());
    int n = f.ambient_dim();
    DenseMatrix out(field, dim_forms(n, d + e), dim_forms(n, d));
    write_block(out, 0, 0, f, d);
    return out;
}

DenseMatrix block_matrix(const std::vector<std::vector<HomogeneousForm>>& phi,
                         const std::vector<int>& source_twists,
                         const std::vector<int>& target_twists, int m, int n,
                         const Field& field) {
    if (phi.size() != target_twists.size()) throw Error("block_matrix: row count mismatch");
    std::vector<std::size_t> row_off(target_twists.size() + 1, 0);
    std::vector<std::size_t> col_off(source_twists.size() + 1, 0);
    for (std::size_t i = 0; i < target_twists.size(); ++i) {
        row_off[i + 1] = row_off[i] + dim_forms(n, target_twists[i] + m);
    }
    for (std::size_t j = 0; j < source_twists.size(); ++j) {
        col_off[j + 1] = col_off[j] + dim_forms(n, source_twists[j] + m);
    }
    DenseMatrix out(field, row_off.back(), col_off.back());
    for (std::size_t i = 0; i < target_twists.size(); ++i) {
        if (phi[i].size() != source_twists.size()) throw Error("block_matrix: column count mismatch");
        for (std::size_t j = 0; j < source_twists.size(); ++j) {
            const HomogeneousForm& f = phi[i][j];
            if (f.is_zero()) continue;
            if (f.ambient_dim() != n) throw Error("block_matrix: entry over the wrong ambient space");
            int want = target_twists[i] - source_twists[j];
            if (f.degree() != want) {
                throw DegreeMismatch("block_matrix: entry (" + std::to_string(i) + "," +
                                     std::to_string(j) + ") has degree " +
                                     std::to_string(f.degree()) + ", needs " + std::to_string(want));
            }
            write_block(out, row_off[i], col_off[j], f, source_twists[j] + m);
        }
    }
    return out;
}

}  // namespace mcmcert
