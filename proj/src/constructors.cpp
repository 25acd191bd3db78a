#include "mcmcert/constructors.hpp"

#include <sstream>

#include "mcmcert/cohomology.hpp"
#include "mcmcert/error.hpp"
#include "mcmcert/graded_ring.hpp"
#include "mcmcert/random.hpp"

namespace mcmcert {

namespace {

constexpr long kProbePointBound = 1000;
constexpr int kCertifySteps = 16;

HomogeneousForm random_form(int n, int degree, SeededRng& rng) {
    HomogeneousForm f(n, degree);
    if (degree < 0) return f;
    for (const auto& e : MonomialBasis::get(n, degree)->monomials()) {
        f += HomogeneousForm::monomial(n, e, rng.uniform(-kRandomCoefficientBound,
                                                         kRandomCoefficientBound));
    }
    return f;
}

// Scales a rational vector to a primitive integer vector.
std::vector<mpq_class> primitive(const std::vector<Scalar>& v) {
    mpz_class l = 1;
    for (const auto& s : v) {
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), s.rational().get_den().get_mpz_t());
    }
    std::vector<mpz_class> ints;
    mpz_class g = 0;
    for (const auto& s : v) {
        ints.push_back(s.rational().get_num() * (l / s.rational().get_den()));
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), ints.back().get_mpz_t());
    }
    std::vector<mpq_class> out;
    for (auto& z : ints) out.emplace_back(g == 0 ? z : z / g);
    return out;
}

std::string steiner_provenance(const SteinerParams& p) {
    std::ostringstream s;
    s << "steiner(n=" << p.n << ",t=" << p.t << ",r=" << p.r << ",k=" << p.k << ",seed=" << p.seed
      << ")";
    return s.str();
}

}  // namespace

PlanePoint::PlanePoint(mpq_class x0, mpq_class x1, mpq_class x2) : coords_{x0, x1, x2} {
    int last = -1;
    for (int i = 2; i >= 0; --i) {
        if (coords_[static_cast<std::size_t>(i)] != 0) {
            last = i;
            break;
        }
    }
    if (last < 0) throw Error("degenerate point: all coordinates vanish");
    mpq_class scale = coords_[static_cast<std::size_t>(last)];
    for (auto& c : coords_) c /= scale;
}

PlanePoint PlanePoint::parse(const std::string& text) {
    std::array<mpq_class, 3> c;
    std::istringstream in(text);
    std::string part;
    std::size_t i = 0;
    while (std::getline(in, part, ':')) {
        if (i == 3) throw ParseError("point '" + text + "' needs exactly three coordinates");
        try {
            c[i] = mpq_class(part);
            c[i].canonicalize();
        } catch (const std::invalid_argument&) {
            throw ParseError("bad coordinate '" + part + "' in point '" + text + "'");
        }
        ++i;
    }
    if (i != 3) throw ParseError("point '" + text + "' needs exactly three coordinates");
    return PlanePoint(c[0], c[1], c[2]);
}

std::string PlanePoint::to_string() const {
    return coords_[0].get_str() + ":" + coords_[1].get_str() + ":" + coords_[2].get_str();
}

PresentedBundle euler_tangent(int n, int m) {
    if (n < 2) throw UnsupportedDimension("euler_tangent needs n >= 2");
    FormGrid phi;
    for (int i = 0; i <= n; ++i) phi.push_back({HomogeneousForm::variable(n, i)});
    return PresentedBundle(n, {m}, std::vector<int>(static_cast<std::size_t>(n + 1), m + 1), phi,
                           "tangent(n=" + std::to_string(n) + ",twist=" + std::to_string(m) + ")");
}

std::size_t cotangent_cohomology(int n, int l, int m, int i, const Field& field) {
    if (i < 0 || i > n) throw Error("cohomological degree out of range");
    return bundle_cohomology(euler_tangent(n, 0), -l - m - n - 1, n - i, field);
}

std::array<HomogeneousForm, 2> linear_forms_through(const PlanePoint& x) {
    DenseMatrix row(Field::rationals(), 1, 3);
    for (std::size_t i = 0; i < 3; ++i) row.set(0, i, x.coords()[i]);
    auto basis = kernel_basis(row);
    if (basis.size() != 2) throw InternalConsistency("point kernel is not two-dimensional");
    std::array<HomogeneousForm, 2> out;
    for (std::size_t k = 0; k < 2; ++k) out[k] = HomogeneousForm::linear(2, primitive(basis[k]));
    return out;
}

PresentedBundle ideal_point_extension(const PlanePoint& x, std::uint64_t q_seed) {
    auto [l1, l2] = linear_forms_through(x);
    std::vector<mpq_class> pt(x.coords().begin(), x.coords().end());
    for (std::uint64_t attempt = 0; attempt < 64; ++attempt) {
        SeededRng rng(derive_seed(q_seed, attempt));
        HomogeneousForm q = random_form(2, 2, rng);
        if (q.evaluate(pt) == 0) continue;
        FormGrid phi{{l1}, {l2}, {q}};
        return PresentedBundle(2, {-2}, {-1, -1, 0}, phi,
                               "ext-point(x=" + x.to_string() + ",seed=" + std::to_string(q_seed) +
                                   ")");
    }
    throw GenericityFailure("no conic avoiding " + x.to_string() + " found");
}

PresentedBundle trivial_point_extension(const PlanePoint& x) {
    auto [l1, l2] = linear_forms_through(x);
    FormGrid phi{{l1}, {l2}, {HomogeneousForm(2, 2)}};
    return PresentedBundle(2, {-2}, {-1, -1, 0}, phi, "trivial-ext(x=" + x.to_string() + ")");
}

PresentedBundle random_presentation(int n, const std::vector<int>& source_twists,
                                    const std::vector<int>& target_twists, std::uint64_t seed,
                                    const std::string& provenance) {
    std::string last_error;
    for (int attempt = 0; attempt < kResampleBudget; ++attempt) {
        SeededRng rng(derive_seed(seed, static_cast<std::uint64_t>(attempt)));
        FormGrid phi(target_twists.size(), std::vector<HomogeneousForm>(source_twists.size()));
        for (std::size_t i = 0; i < target_twists.size(); ++i)
            for (std::size_t j = 0; j < source_twists.size(); ++j)
                phi[i][j] = random_form(n, target_twists[i] - source_twists[j], rng);
        try {
            return PresentedBundle(n, source_twists, target_twists, std::move(phi), provenance);
        } catch (const GenericityFailure& e) {
            last_error = e.what();
        }
    }
    throw GenericityFailure(provenance + ": resample budget exhausted (" + last_error + ")");
}

PresentedBundle stable_02_bundle(std::uint64_t seed) {
    const std::string prov = "stable02(seed=" + std::to_string(seed) + ")";
    for (int attempt = 0; attempt < kResampleBudget; ++attempt) {
        std::uint64_t sub = derive_seed(seed, 1000 + static_cast<std::uint64_t>(attempt));
        PresentedBundle e = [&] {
            try {
                return std::optional(random_presentation(2, {-2, -2}, {-1, -1, -1, -1}, sub, prov));
            } catch (const GenericityFailure&) {
                return std::optional<PresentedBundle>();
            }
        }().value_or(PresentedBundle::line_bundle(2, 0));
        if (e.rank() != 2) continue;
        auto probe = local_freeness_probe(e, 8, sub);
        if (probe.verdict == LocalFreeness::degenerate_at_point) continue;
        if (!hoppe_rank2_stability(e)) continue;
        return e;
    }
    throw GenericityFailure(prov + ": resample budget exhausted");
}

PresentedBundle random_steiner(const SteinerParams& p) {
    if (p.n < 2) throw UnsupportedDimension("Steiner bundles are built on P^n with n >= 2");
    if (p.t < 1 || p.k < 1) throw Error("Steiner parameters need t >= 1 and k >= 1");
    if (p.r < p.n) throw Error("Steiner parameters need r >= n for local freeness");
    std::vector<int> source(static_cast<std::size_t>(p.k * p.t), -p.n);
    std::vector<int> target(static_cast<std::size_t>(p.k * (p.t + p.r)), -p.n + 1);
    return random_presentation(p.n, source, target, p.seed, steiner_provenance(p));
}

std::string to_string(LocalFreeness v) {
    switch (v) {
        case LocalFreeness::certified_generic: return "certified-generic";
        case LocalFreeness::probably_locally_free: return "probably-locally-free";
        case LocalFreeness::degenerate_at_point: return "degenerate-at-point";
    }
    return "unknown";
}

ProbeResult local_freeness_probe(const PresentedBundle& e, int trials, std::uint64_t seed,
                                 bool certify, const Field& field) {
    if (trials < 1) throw Error("local_freeness_probe needs trials >= 1");
    ProbeResult out;
    const std::size_t s = e.source_twists().size();
    if (s == 0) {
        out.verdict = certify ? LocalFreeness::certified_generic
                              : LocalFreeness::probably_locally_free;
        if (certify) out.certificate_degree = dual_saturation_degree(e, 1, field);
        return out;
    }
    const int n = e.ambient_dim();
    for (int t = 0; t < trials; ++t) {
        SeededRng rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
        auto point = rng.integer_point(n, kProbePointBound);
        if (rank(e.evaluate_at(point, field)) < s) {
            out.verdict = LocalFreeness::degenerate_at_point;
            out.witness = point;
            return out;
        }
    }
    // A column of linear forms vanishes on the common zeros of its entries.
    for (std::size_t j = 0; j < s; ++j) {
        bool linear = true;
        for (std::size_t i = 0; i < e.target_twists().size(); ++i) {
            const auto& f = e.phi()[i][j];
            if (!f.is_zero() && f.degree() != 1) linear = false;
        }
        if (!linear) continue;
        DenseMatrix coeffs(Field::rationals(), e.target_twists().size(),
                           static_cast<std::size_t>(n + 1));
        for (std::size_t i = 0; i < e.target_twists().size(); ++i) {
            const auto& f = e.phi()[i][j];
            if (f.is_zero()) continue;
            for (const auto& [exp, c] : f.terms()) {
                for (std::size_t v = 0; v < exp.size(); ++v)
                    if (exp[v] == 1) coeffs.set(i, v, c);
            }
        }
        auto kernel = kernel_basis(coeffs);
        if (!kernel.empty()) {
            out.verdict = LocalFreeness::degenerate_at_point;
            out.witness = primitive(kernel.front());
            return out;
        }
    }
    if (certify) {
        out.certificate_degree = dual_saturation_degree(e, kCertifySteps, field);
        if (out.certificate_degree) out.verdict = LocalFreeness::certified_generic;
    }
    return out;
}

bool hoppe_rank2_stability(const PresentedBundle& e, const Field& field) {
    if (e.ambient_dim() != 2) throw UnsupportedDimension("Hoppe check is implemented on P^2 only");
    if (e.rank() != 2) throw Error("Hoppe check is implemented for rank 2 only");
    std::int64_t c1 = chern_data(e).c1;
    // Twist k with c1 + 2k in {-1, 0}, i.e. k = floor(-c1 / 2).
    std::int64_t k = (-c1 >= 0) ? (-c1) / 2 : -((c1 + 1) / 2);
    return bundle_cohomology(e, static_cast<int>(k), 0, field) == 0;
}

}  // namespace mcmcert
