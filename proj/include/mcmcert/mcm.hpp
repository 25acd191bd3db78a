#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>
#include <json.hpp>

#include "mcmcert/bundle.hpp"
#include "mcmcert/constructors.hpp"
#include "mcmcert/field.hpp"

namespace mcmcert {

inline constexpr const char* kCertificateSchema = "mcm-cert/1";
inline constexpr const char* kEngineVersion = "1.0.0";

/// max(max_i(-b_i), max_j(-a_j) - 1): E is p-regular for this p, because
/// O(d) is (-d)-regular, B is p-regular and A is (p+1)-regular.
int regularity_bound(const PresentedBundle& e);

/// p such that E^dual is p-regular, from the exact surjectivity scan
/// (dual_saturation_degree + 1). std::nullopt when the scan runs out, which
/// happens exactly when some h^1(E^dual(d)) stays nonzero.
std::optional<int> dual_regularity_bound(const PresentedBundle& e,
                                         const Field& field = Field::rationals());

/// h[i][m - m_lo] for 0 <= i <= n.
struct EvidenceGrid {
    int m_lo = 0;
    int m_hi = -1;
    std::vector<std::vector<std::size_t>> h;

    std::size_t at(int i, int m) const {
        return h[static_cast<std::size_t>(i)][static_cast<std::size_t>(m - m_lo)];
    }
    bool empty() const { return m_hi < m_lo; }
};

enum class Side { positive, dual };

std::string to_string(Side s);

struct Witness {
    Side side = Side::positive;
    int i = 0;
    int m = 0;
    std::size_t value = 0;

    /// Twist of E carrying the same number: m itself on the positive side,
    /// -m-n-1 (degree n-i) on the dual side.
    int bundle_twist(int n) const { return side == Side::positive ? m : -m - n - 1; }
};

struct MCMCertificate {
    std::string provenance;
    int n = 0;
    Field field;
    bool pass = false;
    LocalFreeness local_freeness = LocalFreeness::probably_locally_free;
    std::optional<std::vector<mpq_class>> degeneracy_point;
    int regularity_bundle = 0;
    std::optional<int> regularity_dual;
    /// h^i(E(m)), 0 <= m <= M+.
    EvidenceGrid positive;
    /// h^i(E^dual(m)), 0 <= m <= M-.
    EvidenceGrid dual;
    /// h^i(E(m)) for -n <= m <= -1. Not part of the verdict.
    EvidenceGrid bridge;
    std::optional<Witness> witness;
    std::vector<std::string> flags;

    /// The vanishing verdict only implies the MCM property for locally free E.
    bool mcm_interpretation() const {
        return pass && local_freeness != LocalFreeness::degenerate_at_point;
    }
    std::string summary() const;
    nlohmann::json to_json() const;
    /// Throws ParseError on schema violations.
    static MCMCertificate from_json(const nlohmann::json& doc);
};

bool operator==(const EvidenceGrid& a, const EvidenceGrid& b);
bool operator==(const Witness& a, const Witness& b);

struct MCMOptions {
    Field field = Field::rationals();
    int probe_trials = 16;
    std::uint64_t probe_seed = 0;
    /// Extra twists added to both windows. Zero reproduces the certified
    /// windows; positive values are spot checks of truncation soundness.
    int extend = 0;
};

/// Two-sided vanishing check. Positive side: h^i(E(m)) = 0 for 1 <= i <= n,
/// 0 <= m <= max(0, reg(E) + n). Dual side: h^i(E^dual(m)) = 0 for
/// 1 <= i <= n, 0 <= m <= max(0, reg(E^dual) + n); by Serre duality this is
/// H^{<n}(E(-m-n-1)) = 0. The witness is the first nonzero entry, positive
/// side first, then by twist, then by degree. Requires n >= 2.
MCMCertificate mcm_vanishing_check(const PresentedBundle& e, const MCMOptions& opts = {});

/// The k-threshold of the natural cohomology bound: 1 when n divides r,
/// otherwise the least integer k >= 1 with
/// k >= max(C(a+n-1, n)^2 C(a+n, n) / (4(t+r)), C(b+n-1, n)^3 / (4t)),
/// a = ceil(tn/r), b = floor(tn/r). Exact rational comparison.
std::int64_t natural_cohomology_threshold(int n, int t, int r);

/// Largest t < r with r >= n and r < t (n - 1 + sqrt(n^2 + 2n - 3)) / 2,
/// compared exactly by squaring.
std::optional<int> admissible_parameters(int n, int r);

}  // namespace mcmcert
