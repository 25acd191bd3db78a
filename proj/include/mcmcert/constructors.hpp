#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "mcmcert/bundle.hpp"
#include "mcmcert/field.hpp"

namespace mcmcert {

/// Coefficients of random linear forms are drawn uniformly from this range.
inline constexpr long kRandomCoefficientBound = 9;
/// Attempts (initial draw plus resamples) before a constructor gives up.
inline constexpr int kResampleBudget = 9;

/// Parameters of 0 -> O(-n)^{kt} -> O(-n+1)^{k(t+r)} -> E_k -> 0 on P^n.
struct SteinerParams {
    int n = 2;
    int t = 1;
    int r = 2;
    int k = 1;
    std::uint64_t seed = 0;
};

/// A point of P^2, normalized so that its last nonzero coordinate is 1.
class PlanePoint {
public:
    /// Throws Error when all coordinates vanish.
    PlanePoint(mpq_class x0, mpq_class x1, mpq_class x2);
    /// "a:b:c" with integer or a/b entries.
    static PlanePoint parse(const std::string& text);

    const std::array<mpq_class, 3>& coords() const { return coords_; }
    std::string to_string() const;

private:
    std::array<mpq_class, 3> coords_;
};

/// T_{P^n}(m) = coker(O(m) -> O(m+1)^{n+1}), phi = (x_0, ..., x_n)^T.
PresentedBundle euler_tangent(int n, int m);

/// h^i(Omega(l)(m)) = h^{n-i}(T(-l-m-n-1)) by Serre duality.
std::size_t cotangent_cohomology(int n, int l, int m, int i,
                                 const Field& field = Field::rationals());

/// Two independent integral linear forms cutting out x.
std::array<HomogeneousForm, 2> linear_forms_through(const PlanePoint& x);

/// E_x = coker(O(-2) -> O(-1)^2 (+) O) with column (l1, l2, q): l1, l2 cut
/// out x and q is a seeded random conic with q(x) != 0. The unique nonsplit
/// extension 0 -> O -> E_x -> I_x -> 0.
PresentedBundle ideal_point_extension(const PlanePoint& x, std::uint64_t q_seed);

/// O (+) I_x presented with column (l1, l2, 0). Not locally free at x.
PresentedBundle trivial_point_extension(const PlanePoint& x);

/// General 0 -> O(-2)^2 -> O(-1)^4 -> E -> 0 on P^2: rank 2, c1 = 0, c2 = 2.
/// Resamples (up to the budget) until the probe and the rank-2 Hoppe check
/// pass; throws GenericityFailure otherwise.
PresentedBundle stable_02_bundle(std::uint64_t seed);

/// Seeded random Steiner bundle E_k. Requires r >= n, t >= 1, k >= 1.
/// Resamples only when phi is not generically injective.
PresentedBundle random_steiner(const SteinerParams& p);

/// An arbitrary presentation with random forms of the requested degrees;
/// used by property tests and sweeps.
PresentedBundle random_presentation(int n, const std::vector<int>& source_twists,
                                    const std::vector<int>& target_twists, std::uint64_t seed,
                                    const std::string& provenance);

enum class LocalFreeness { certified_generic, probably_locally_free, degenerate_at_point };

std::string to_string(LocalFreeness v);

struct ProbeResult {
    LocalFreeness verdict = LocalFreeness::probably_locally_free;
    /// A point where phi loses rank, when one was found.
    std::optional<std::vector<mpq_class>> witness;
    /// Degree of the exact surjectivity certificate, when requested and found.
    std::optional<int> certificate_degree;
};

/// Monte Carlo local-freeness check. Evaluates phi at `trials` seeded
/// random points and also solves exactly for common zeros of columns whose
/// entries are linear. With `certify`, additionally runs the exact
/// dual_saturation_degree scan; success upgrades the verdict to
/// certified_generic.
ProbeResult local_freeness_probe(const PresentedBundle& e, int trials, std::uint64_t seed,
                                 bool certify = false, const Field& field = Field::rationals());

/// Sufficient stability test for rank-2 bundles on P^2: twist so that
/// c1 lies in {-1, 0}, then require h^0 = 0. False is inconclusive.
/// Throws UnsupportedDimension for n != 2 and Error for rank != 2.
bool hoppe_rank2_stability(const PresentedBundle& e, const Field& field = Field::rationals());

}  // namespace mcmcert
