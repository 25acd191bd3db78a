#include "mcmcert/matrix.hpp"

#include <algorithm>
#include <utility>

#include "mcmcert/error.hpp"

namespace mcmcert {

namespace {

constexpr std::uint64_t kShortcutPrime = (std::uint64_t{1} << 61) - 1;

void require_same_field(const Field& a, const Field& b, const char* what) {
    if (!(a == b)) {
        throw FieldMismatch(std::string(what) + ": " + a.to_string() + " vs " + b.to_string());
    }
}

// Gaussian elimination mod p on a scratch copy. Returns the rank.
std::size_t rank_mod(std::vector<std::uint64_t> a, std::size_t rows, std::size_t cols,
                     std::uint64_t p) {
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && a[piv * cols + c] == 0) ++piv;
        if (piv == rows) continue;
        if (piv != r) {
            std::swap_ranges(a.begin() + piv * cols, a.begin() + (piv + 1) * cols,
                             a.begin() + r * cols);
        }
        std::uint64_t inv = modp::inv(a[r * cols + c], p);
        for (std::size_t j = c; j < cols; ++j) a[r * cols + j] = modp::mul(a[r * cols + j], inv, p);
        for (std::size_t i = r + 1; i < rows; ++i) {
            std::uint64_t f = a[i * cols + c];
            if (f == 0) continue;
            for (std::size_t j = c; j < cols; ++j) {
                a[i * cols + j] = modp::sub(a[i * cols + j], modp::mul(f, a[r * cols + j], p), p);
            }
        }
        ++r;
    }
    return r;
}

// Clears denominators row by row; rank is unchanged by nonzero row scaling.
std::vector<mpz_class> integer_rows(const DenseMatrix& m) {
    std::vector<mpz_class> out(m.rows() * m.cols());
    const auto& q = m.rational_entries();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        mpz_class l = 1;
        for (std::size_t c = 0; c < m.cols(); ++c) {
            const mpz_class& d = q[r * m.cols() + c].get_den();
            if (d != 1) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
        }
        for (std::size_t c = 0; c < m.cols(); ++c) {
            const mpq_class& e = q[r * m.cols() + c];
            out[r * m.cols() + c] = e.get_num() * (l / e.get_den());
        }
    }
    return out;
}

std::size_t bareiss(std::vector<mpz_class> a, std::size_t rows, std::size_t cols) {
    mpz_class prev = 1;
    mpz_class t;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && a[piv * cols + c] == 0) ++piv;
        if (piv == rows) continue;
        if (piv != r) {
            for (std::size_t j = 0; j < cols; ++j) std::swap(a[piv * cols + j], a[r * cols + j]);
        }
        const mpz_class& p = a[r * cols + c];
        for (std::size_t i = r + 1; i < rows; ++i) {
            mpz_class f = a[i * cols + c];
            for (std::size_t j = c + 1; j < cols; ++j) {
                mpz_class& x = a[i * cols + j];
                x *= p;
                if (f != 0) {
                    t = f * a[r * cols + j];
                    x -= t;
                }
                if (prev != 1) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), prev.get_mpz_t());
            }
            a[i * cols + c] = 0;
        }
        prev = p;
        ++r;
    }
    return r;
}

}  // namespace

DenseMatrix::DenseMatrix(const Field& field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols) {
    if (field_.is_rational()) q_.assign(rows * cols, mpq_class(0));
    else p_.assign(rows * cols, 0);
}

DenseMatrix DenseMatrix::from_rows(const Field& field,
                                   const std::vector<std::vector<Scalar>>& rows) {
    std::size_t cols = rows.empty() ? 0 : rows.front().size();
    DenseMatrix m(field, rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) throw Error("ragged rows in DenseMatrix::from_rows");
        for (std::size_t c = 0; c < cols; ++c) m.set(r, c, rows[r][c]);
    }
    return m;
}

DenseMatrix DenseMatrix::from_integers(const Field& field,
                                       std::initializer_list<std::initializer_list<long>> rows) {
    std::size_t cols = rows.size() == 0 ? 0 : rows.begin()->size();
    DenseMatrix m(field, rows.size(), cols);
    std::size_t r = 0;
    for (const auto& row : rows) {
        if (row.size() != cols) throw Error("ragged rows in DenseMatrix::from_integers");
        std::size_t c = 0;
        for (long v : row) m.set(r, c++, mpq_class(v));
        ++r;
    }
    return m;
}

DenseMatrix DenseMatrix::identity(const Field& field, std::size_t n) {
    DenseMatrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, mpq_class(1));
    return m;
}

Scalar DenseMatrix::at(std::size_t r, std::size_t c) const {
    if (field_.is_rational()) return Scalar(field_, q_[index(r, c)]);
    return Scalar::from_residue(field_, p_[index(r, c)]);
}

void DenseMatrix::set(std::size_t r, std::size_t c, const Scalar& value) {
    require_same_field(field_, value.field(), "DenseMatrix::set");
    if (field_.is_rational()) q_[index(r, c)] = value.rational();
    else p_[index(r, c)] = value.residue();
}

void DenseMatrix::set(std::size_t r, std::size_t c, const mpq_class& value) {
    if (field_.is_rational()) {
        auto& slot = q_[index(r, c)];
        slot = value;
        slot.canonicalize();
    } else {
        p_[index(r, c)] = modp::reduce(value, field_.characteristic());
    }
}

DenseMatrix DenseMatrix::transpose() const {
    DenseMatrix t(field_, cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) {
            if (field_.is_rational()) t.q_[t.index(c, r)] = q_[index(r, c)];
            else t.p_[t.index(c, r)] = p_[index(r, c)];
        }
    }
    return t;
}

DenseMatrix DenseMatrix::reduce_mod(const Field& prime_field) const {
    if (!field_.is_rational() || !prime_field.is_prime()) {
        throw FieldMismatch("reduce_mod needs a rational matrix and a prime field");
    }
    DenseMatrix out(prime_field, rows_, cols_);
    for (std::size_t i = 0; i < q_.size(); ++i) {
        out.p_[i] = modp::reduce(q_[i], prime_field.characteristic());
    }
    return out;
}

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
    require_same_field(a.field_, b.field_, "matrix product");
    if (a.cols_ != b.rows_) throw Error("matrix product shape mismatch");
    DenseMatrix out(a.field_, a.rows_, b.cols_);
    if (a.field_.is_rational()) {
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const mpq_class& x = a.q_[a.index(i, k)];
                if (x == 0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) out.q_[out.index(i, j)] += x * b.q_[b.index(k, j)];
            }
    } else {
        std::uint64_t p = a.field_.characteristic();
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                std::uint64_t x = a.p_[a.index(i, k)];
                if (x == 0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) {
                    auto& dst = out.p_[out.index(i, j)];
                    dst = modp::add(dst, modp::mul(x, b.p_[b.index(k, j)], p), p);
                }
            }
    }
    return out;
}

bool operator==(const DenseMatrix& a, const DenseMatrix& b) {
    return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.q_ == b.q_ &&
           a.p_ == b.p_;
}

std::size_t bareiss_rank(const DenseMatrix& m) {
    if (!m.field().is_rational()) throw FieldMismatch("bareiss_rank needs a rational matrix");
    if (m.rows() == 0 || m.cols() == 0) return 0;
    return bareiss(integer_rows(m), m.rows(), m.cols());
}

std::size_t rank(const DenseMatrix& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    if (m.field().is_prime()) {
        return rank_mod(m.residue_entries(), m.rows(), m.cols(), m.field().characteristic());
    }
    auto ints = integer_rows(m);
    // rank_Q >= rank_p for integer matrices, and rank_Q <= min(rows, cols).
    std::vector<std::uint64_t> reduced(ints.size());
    for (std::size_t i = 0; i < ints.size(); ++i) reduced[i] = modp::reduce(ints[i], kShortcutPrime);
    std::size_t rp = rank_mod(std::move(reduced), m.rows(), m.cols(), kShortcutPrime);
    if (rp == std::min(m.rows(), m.cols())) return rp;
    return bareiss(std::move(ints), m.rows(), m.cols());
}

Scalar determinant(const DenseMatrix& m) {
    if (m.rows() != m.cols()) throw Error("determinant of a non-square matrix");
    const Field& f = m.field();
    std::size_t n = m.rows();
    std::vector<std::vector<Scalar>> a(n, std::vector<Scalar>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i][j] = m.at(i, j);
    Scalar det = Scalar::one(f);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && a[piv][c].is_zero()) ++piv;
        if (piv == n) return Scalar::zero(f);
        if (piv != c) {
            std::swap(a[piv], a[c]);
            det = -det;
        }
        det *= a[c][c];
        Scalar inv = a[c][c].inverse();
        for (std::size_t i = c + 1; i < n; ++i) {
            if (a[i][c].is_zero()) continue;
            Scalar factor = a[i][c] * inv;
            for (std::size_t j = c; j < n; ++j) a[i][j] -= factor * a[c][j];
        }
    }
    return det;
}

std::vector<std::vector<Scalar>> kernel_basis(const DenseMatrix& m) {
    const Field& f = m.field();
    std::size_t rows = m.rows();
    std::size_t cols = m.cols();
    std::vector<std::vector<Scalar>> a(rows, std::vector<Scalar>(cols));
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) a[i][j] = m.at(i, j);

    std::vector<std::size_t> pivot_cols;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && a[piv][c].is_zero()) ++piv;
        if (piv == rows) continue;
        std::swap(a[piv], a[r]);
        Scalar inv = a[r][c].inverse();
        for (std::size_t j = 0; j < cols; ++j) a[r][j] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c].is_zero()) continue;
            Scalar factor = a[i][c];
            for (std::size_t j = 0; j < cols; ++j) a[i][j] -= factor * a[r][j];
        }
        pivot_cols.push_back(c);
        ++r;
    }

    std::vector<std::vector<Scalar>> basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (std::find(pivot_cols.begin(), pivot_cols.end(), free) != pivot_cols.end()) continue;
        std::vector<Scalar> v(cols, Scalar::zero(f));
        v[free] = Scalar::one(f);
        for (std::size_t k = 0; k < pivot_cols.size(); ++k) v[pivot_cols[k]] = -a[k][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace mcmcert
