#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "mcmcert/bundle.hpp"
#include "mcmcert/field.hpp"

namespace mcmcert {

/// Bott's formula for line bundles: h^0 = C(d+n, n) for d >= 0,
/// h^n = C(-d-1, n) for d <= -n-1, all other h^i zero.
/// Throws Error when i is outside [0, n].
std::size_t line_bundle_cohomology(int n, int d, int i);

/// chi(O_{P^n}(d)) = C(d+n, n) read as a polynomial in d.
std::int64_t line_bundle_euler_characteristic(int n, int d);

/// (h^0, ..., h^n) of E(m), from the long exact sequence of
/// 0 -> A(m) -> B(m) -> E(m) -> 0:
///   H^0 level:  M0 : H^0(A(m)) -> H^0(B(m))
///   H^n level:  the transpose of N : (+)_i H^0(O(-b_i-m-n-1)) -> (+)_j H^0(O(-a_j-m-n-1)),
///               multiplication by phi^T between the Serre-dual form spaces.
/// h^0 = coker M0, h^{n-1} = coker N, h^n = ker N, everything else 0
/// (for n = 1 the two contributions to h^0 add up).
std::vector<std::size_t> cohomology_column(const PresentedBundle& e, int m,
                                           const Field& field = Field::rationals());

std::size_t bundle_cohomology(const PresentedBundle& e, int m, int i,
                              const Field& field = Field::rationals());

/// (h^0, ..., h^n) of E^dual(m) from 0 -> E^dual -> B^dual -> A^dual -> 0.
/// Only meaningful when E is locally free; callers record the probe verdict.
/// Requires n >= 2.
std::vector<std::size_t> dual_cohomology_column(const PresentedBundle& e, int m,
                                                const Field& field = Field::rationals());

std::size_t dual_bundle_cohomology(const PresentedBundle& e, int m, int i,
                                   const Field& field = Field::rationals());

std::int64_t euler_characteristic(const PresentedBundle& e, int m);

/// Smallest d >= max(max_j a_j, max_i b_i - 1) at which
/// (+)_i H^0(O(d - b_i)) -> (+)_j H^0(O(d - a_j)) (multiplication by phi^T)
/// is onto, scanning at most `max_steps` degrees. Once onto in such a degree
/// it stays onto in every higher one, so a hit certifies that phi(P) has full
/// column rank at every point (E locally free) and that h^1(E^dual(m)) = 0
/// for all m >= d. std::nullopt when the scan runs out.
std::optional<int> dual_saturation_degree(const PresentedBundle& e, int max_steps,
                                          const Field& field = Field::rationals());

/// h[i][m - m_lo] for 0 <= i <= n over a twist window.
struct CohomologyTable {
    std::string bundle;
    Field field;
    int n = 0;
    int m_lo = 0;
    int m_hi = 0;
    std::vector<std::vector<std::size_t>> h;

    std::size_t at(int i, int m) const {
        return h[static_cast<std::size_t>(i)][static_cast<std::size_t>(m - m_lo)];
    }
    /// Rows h^n .. h^0, one column per twist.
    std::string render_text() const;
};

/// Batch of cohomology_column over [m_lo, m_hi]. Every column is checked
/// against euler_characteristic; a mismatch throws InternalConsistency.
CohomologyTable cohomology_table(const PresentedBundle& e, int m_lo, int m_hi,
                                 const Field& field = Field::rationals());

/// Numerical invariants of a bundle on P^2.
struct ChernData {
    int rank = 0;
    std::int64_t c1 = 0;
    std::int64_t c2 = 0;
    /// chi(E(m)) = chi_poly[0] + chi_poly[1] m + chi_poly[2] m^2.
    std::array<mpq_class, 3> chi_poly;

    mpq_class chi(int m) const { return chi_poly[0] + chi_poly[1] * m + chi_poly[2] * m * m; }
};

/// Chern classes from c(E) = prod(1 + b_i h) / prod(1 + a_j h) mod h^3 and
/// chi by Riemann-Roch. Throws UnsupportedDimension unless n == 2.
ChernData chern_data(const PresentedBundle& e);

}  // namespace mcmcert
