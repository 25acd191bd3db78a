#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "mcmcert/bundle.hpp"
#include "mcmcert/field.hpp"

namespace mcmcert {

/// The line [s:u] -> s P + u Q in P^n.
class LineParam {
public:
    /// Throws Error unless P and Q are linearly independent points of P^n.
    LineParam(std::vector<mpq_class> p, std::vector<mpq_class> q);

    int ambient_dim() const { return static_cast<int>(p_.size()) - 1; }
    const std::vector<mpq_class>& p() const { return p_; }
    const std::vector<mpq_class>& q() const { return q_; }
    /// x_i -> P_i x0 + Q_i x1 as binary linear forms.
    std::vector<HomogeneousForm> parametrization() const;
    std::string to_string() const;

private:
    std::vector<mpq_class> p_;
    std::vector<mpq_class> q_;
};

/// Seeded line through two integer points with coordinates in [-100, 100].
LineParam random_line(int n, std::uint64_t seed);

/// The presentation of E|_L over P^1: same twists, phi composed with L.
/// Throws TorsionDetected when phi|_L drops rank everywhere on L.
PresentedBundle restrict_to_line(const PresentedBundle& e, const LineParam& line);

/// E|_L = (+) O_L(e_i), degrees sorted descending.
struct SplittingType {
    std::vector<int> degrees;

    int rank() const { return static_cast<int>(degrees.size()); }
    std::int64_t degree() const;
    /// a_e = #{i : e_i = e}.
    std::size_t multiplicity(int e) const;
    /// "(2, 1)".
    std::string to_string() const;
    friend bool operator==(const SplittingType&, const SplittingType&) = default;
};

/// Recovers the splitting type from g(k) = h^0(E|_L(k)). The summands of a
/// torsion-free quotient of (+) O(b_i) have e_i >= min b_i, and sum to c_1,
/// so k runs over [-hi-1, -lo] with lo = min b_i, hi = c_1 - (r-1) lo.
/// A nonzero g(-hi-1) means torsion: throws TorsionDetected naming the line
/// and the torsion length.
SplittingType splitting_type(const PresentedBundle& e, const LineParam& line,
                             const Field& field = Field::rationals());

/// Splitting type on a generic line: the most balanced type among a few
/// seeded random lines that avoid the degeneracy locus. Jumping lines form a
/// proper closed subset, so a balanced minimum is the generic type.
SplittingType generic_splitting_type(const PresentedBundle& e, std::uint64_t seed,
                                     const Field& field = Field::rationals());

struct SplittingReport {
    bool range_ok = false;
    bool sum_ok = false;
    bool count_ok = false;
    /// a_{-1} + a_0 > 0 and a_0 + a_1 > 0; only evaluated for MCM, non-split E.
    std::optional<bool> positivity_ok;

    bool all_ok() const { return range_ok && sum_ok && count_ok && positivity_ok.value_or(true); }
    std::string to_string() const;
};

/// -2 <= e_i <= 2, sum e_i = c1, #e_i = rank, plus the positivity relations
/// when `mcm_nonsplit` is set.
SplittingReport splitting_constraints_check(const SplittingType& st, int rank, std::int64_t c1,
                                            bool mcm_nonsplit = false);

/// Lines through `base` and s C + u D, [s:u] in P^1, on P^2.
struct PencilParam {
    std::vector<mpq_class> base;
    std::vector<mpq_class> c;
    std::vector<mpq_class> d;

    /// Throws Error unless base, C, D are independent.
    void validate() const;
    LineParam member(const mpq_class& s, const mpq_class& u) const;
    std::string to_string() const;
};

PencilParam random_pencil(std::uint64_t seed);

struct JumpingReport {
    std::string pencil;
    /// Degree D of the homogeneous determinant in [s:u].
    int degree = 0;
    /// True when the determinant vanishes identically (pencil inside the
    /// jumping curve); the counts below are then meaningless.
    bool degenerate = false;
    /// Distinct jumping parameters over the algebraic closure, s = infinity included.
    std::size_t roots_found = 0;
    /// Jumping parameters counted with multiplicity.
    int multiplicity_sum = 0;
};

/// Rank 2, c_1 = 0 on P^2. L is jumping iff h^0(E|_L(-1)) > 0. That number
/// is the corank of one square matrix over P^1 whose entries are forms in
/// [s:u]; its determinant has degree D = (sum of row tau-exponents) -
/// (sum of column tau-exponents) and is recovered by interpolation at D + 1
/// values of s with u = 1. Throws UnsupportedDimension for other ranks,
/// c_1 or ambient spaces, and when the presentation does not give a square
/// matrix.
JumpingReport jumping_lines_in_pencil(const PresentedBundle& e, const PencilParam& pencil,
                                      const Field& field = Field::rationals());

}  // namespace mcmcert
