#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <vector>

#include "mcmcert/field.hpp"

namespace mcmcert {

/// Dense row-major matrix whose entries all live in one field.
///
/// Rational entries are stored as gmp rationals, F_p entries as residues.
/// Shapes with zero rows or zero columns are valid and have rank 0.
class DenseMatrix {
public:
    DenseMatrix() = default;
    /// Zero matrix.
    DenseMatrix(const Field& field, std::size_t rows, std::size_t cols);

    /// Throws FieldMismatch if the scalars do not share `field`, and
    /// Error on ragged rows.
    static DenseMatrix from_rows(const Field& field,
                                 const std::vector<std::vector<Scalar>>& rows);
    static DenseMatrix from_integers(const Field& field,
                                     std::initializer_list<std::initializer_list<long>> rows);
    static DenseMatrix identity(const Field& field, std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const Field& field() const { return field_; }

    Scalar at(std::size_t r, std::size_t c) const;
    /// Throws FieldMismatch when `value` belongs to another field.
    void set(std::size_t r, std::size_t c, const Scalar& value);
    /// Coerces a rational into the matrix field.
    void set(std::size_t r, std::size_t c, const mpq_class& value);

    DenseMatrix transpose() const;
    /// Same entries reinterpreted over F_p. Requires a rational matrix.
    DenseMatrix reduce_mod(const Field& prime_field) const;

    friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b);
    friend bool operator==(const DenseMatrix& a, const DenseMatrix& b);

    // Raw storage, used by the elimination kernels.
    const std::vector<mpq_class>& rational_entries() const { return q_; }
    const std::vector<std::uint64_t>& residue_entries() const { return p_; }

private:
    std::size_t index(std::size_t r, std::size_t c) const { return r * cols_ + c; }

    Field field_;
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<mpq_class> q_;
    std::vector<std::uint64_t> p_;
};

/// Exact rank. Over Q: fraction-free (Bareiss) elimination on the
/// row-scaled integer matrix, skipped when a reduction modulo 2^61-1 already
/// has full rank min(rows, cols).
std::size_t rank(const DenseMatrix& m);
inline std::size_t kernel_dim(const DenseMatrix& m) { return m.cols() - rank(m); }
inline std::size_t cokernel_dim(const DenseMatrix& m) { return m.rows() - rank(m); }

/// Rank by plain fraction-free elimination over Q, with no modular shortcut.
std::size_t bareiss_rank(const DenseMatrix& m);

/// Determinant of a square matrix (1 for the 0x0 matrix).
Scalar determinant(const DenseMatrix& m);

/// A basis of the right kernel, one vector per free column.
std::vector<std::vector<Scalar>> kernel_basis(const DenseMatrix& m);

}  // namespace mcmcert
