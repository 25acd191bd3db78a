#include "mcmcert/mcm.hpp"

#include <algorithm>
#include <sstream>

#include "mcmcert/cohomology.hpp"
#include "mcmcert/error.hpp"

namespace mcmcert {

namespace {

constexpr int kSaturationSteps = 16;

int saturation_start(const PresentedBundle& e) {
    const auto& a = e.source_twists();
    const auto& b = e.target_twists();
    int start = *std::max_element(b.begin(), b.end()) - 1;
    if (!a.empty()) start = std::max(start, *std::max_element(a.begin(), a.end()));
    return start;
}

template <typename Column>
EvidenceGrid fill(int n, int lo, int hi, Column column) {
    EvidenceGrid g;
    g.m_lo = lo;
    g.m_hi = hi;
    g.h.assign(static_cast<std::size_t>(n + 1), {});
    for (int m = lo; m <= hi; ++m) {
        auto col = column(m);
        for (int i = 0; i <= n; ++i) g.h[static_cast<std::size_t>(i)].push_back(col[static_cast<std::size_t>(i)]);
    }
    return g;
}

std::optional<Witness> first_nonzero(const EvidenceGrid& g, Side side, int n) {
    for (int m = g.m_lo; m <= g.m_hi; ++m)
        for (int i = 1; i <= n; ++i)
            if (auto v = g.at(i, m); v != 0) return Witness{side, i, m, v};
    return std::nullopt;
}

nlohmann::json grid_json(const EvidenceGrid& g) {
    return {{"window", {g.m_lo, g.m_hi}}, {"h", g.h}};
}

EvidenceGrid grid_from_json(const nlohmann::json& j) {
    EvidenceGrid g;
    g.m_lo = j.at("window").at(0).get<int>();
    g.m_hi = j.at("window").at(1).get<int>();
    g.h = j.at("h").get<std::vector<std::vector<std::size_t>>>();
    return g;
}

LocalFreeness local_freeness_from_string(const std::string& s) {
    for (auto v : {LocalFreeness::certified_generic, LocalFreeness::probably_locally_free,
                   LocalFreeness::degenerate_at_point})
        if (to_string(v) == s) return v;
    throw ParseError("unknown local-freeness verdict '" + s + "'");
}

// C(x, n) for x >= 0.
mpz_class binom(long x, long n) {
    mpz_class out;
    if (x < 0) return 0;
    mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(x), static_cast<unsigned long>(n));
    return out;
}

}  // namespace

int regularity_bound(const PresentedBundle& e) {
    const auto& a = e.source_twists();
    const auto& b = e.target_twists();
    int bound = -*std::min_element(b.begin(), b.end());
    if (!a.empty()) bound = std::max(bound, -*std::min_element(a.begin(), a.end()) - 1);
    return bound;
}

std::optional<int> dual_regularity_bound(const PresentedBundle& e, const Field& field) {
    int steps = std::max(0, -saturation_start(e)) + kSaturationSteps;
    auto d = dual_saturation_degree(e, steps, field);
    if (!d) return std::nullopt;
    return *d + 1;
}

std::string to_string(Side s) { return s == Side::positive ? "positive" : "dual"; }

bool operator==(const EvidenceGrid& a, const EvidenceGrid& b) {
    return a.m_lo == b.m_lo && a.m_hi == b.m_hi && a.h == b.h;
}

bool operator==(const Witness& a, const Witness& b) {
    return a.side == b.side && a.i == b.i && a.m == b.m && a.value == b.value;
}

MCMCertificate mcm_vanishing_check(const PresentedBundle& e, const MCMOptions& opts) {
    const int n = e.ambient_dim();
    if (n < 2) throw UnsupportedDimension("mcm_vanishing_check needs n >= 2");

    MCMCertificate c;
    c.provenance = e.provenance();
    c.n = n;
    c.field = opts.field;
    if (opts.field.is_prime()) c.flags.push_back("probabilistic");

    c.regularity_bundle = regularity_bound(e);
    c.regularity_dual = dual_regularity_bound(e, opts.field);

    if (c.regularity_dual) {
        c.local_freeness = LocalFreeness::certified_generic;
    } else {
        auto probe = local_freeness_probe(e, opts.probe_trials, opts.probe_seed, false, opts.field);
        c.local_freeness = probe.verdict;
        c.degeneracy_point = probe.witness;
    }

    int pos_hi = std::max(0, c.regularity_bundle + n) + opts.extend;
    // Without a certificate, the scan failed at max(0, start); that twist
    // carries a nonzero h^1(E^dual) and must be inside the window.
    int dual_hi = (c.regularity_dual ? std::max(0, *c.regularity_dual + n)
                                     : std::max(0, saturation_start(e)) + n) +
                  opts.extend;

    c.positive = fill(n, 0, pos_hi, [&](int m) { return cohomology_column(e, m, opts.field); });
    c.dual = fill(n, 0, dual_hi, [&](int m) { return dual_cohomology_column(e, m, opts.field); });
    c.bridge = fill(n, -n, -1, [&](int m) { return cohomology_column(e, m, opts.field); });

    c.witness = first_nonzero(c.positive, Side::positive, n);
    if (!c.witness) c.witness = first_nonzero(c.dual, Side::dual, n);
    c.pass = !c.witness.has_value();
    return c;
}

std::string MCMCertificate::summary() const {
    std::ostringstream out;
    out << (pass ? "PASS " : "FAIL ") << provenance;
    if (pass) {
        out << ": H^{>0}(E(m)) = 0 for 0 <= m <= " << positive.m_hi
            << ", H^{>0}(E^dual(m)) = 0 for 0 <= m <= " << dual.m_hi;
    } else if (witness) {
        const auto& w = *witness;
        if (w.side == Side::positive) {
            out << ": h^" << w.i << "(E(" << w.m << ")) = " << w.value;
        } else {
            out << ": h^" << w.i << "(E^dual(" << w.m << ")) = " << w.value << ", i.e. h^"
                << n - w.i << "(E(" << w.bundle_twist(n) << ")) = " << w.value;
        }
    }
    out << " [" << to_string(local_freeness);
    if (!mcm_interpretation() && pass) out << "; MCM interpretation withheld";
    out << "; " << field.to_string() << "]";
    return out.str();
}

nlohmann::json MCMCertificate::to_json() const {
    nlohmann::json doc;
    doc["schema"] = kCertificateSchema;
    doc["provenance"] = provenance;
    doc["n"] = n;
    doc["field"] = field.to_string();
    doc["verdict"] = pass ? "pass" : "fail";
    doc["mcm"] = mcm_interpretation();
    nlohmann::json lf{{"verdict", to_string(local_freeness)}};
    if (degeneracy_point) {
        std::vector<std::string> pt;
        for (const auto& x : *degeneracy_point) pt.push_back(x.get_str());
        lf["witness"] = pt;
    }
    doc["local_freeness"] = lf;
    doc["regularity"] = {{"bundle", regularity_bundle},
                         {"dual", regularity_dual ? nlohmann::json(*regularity_dual) : nlohmann::json()}};
    doc["positive_side"] = grid_json(positive);
    doc["dual_side"] = grid_json(dual);
    doc["bridge"] = grid_json(bridge);
    if (witness) {
        doc["witness"] = {{"side", to_string(witness->side)},
                          {"i", witness->i},
                          {"m", witness->m},
                          {"value", witness->value},
                          {"bundle_twist", witness->bundle_twist(n)}};
    } else {
        doc["witness"] = nullptr;
    }
    doc["flags"] = flags;
    doc["engine_version"] = kEngineVersion;
    return doc;
}

MCMCertificate MCMCertificate::from_json(const nlohmann::json& doc) {
    try {
        if (doc.at("schema").get<std::string>() != kCertificateSchema)
            throw ParseError("unsupported certificate schema '" + doc.at("schema").get<std::string>() + "'");
        MCMCertificate c;
        c.provenance = doc.at("provenance").get<std::string>();
        c.n = doc.at("n").get<int>();
        c.field = Field::parse(doc.at("field").get<std::string>());
        const auto verdict = doc.at("verdict").get<std::string>();
        if (verdict != "pass" && verdict != "fail") throw ParseError("bad verdict '" + verdict + "'");
        c.pass = verdict == "pass";
        const auto& lf = doc.at("local_freeness");
        c.local_freeness = local_freeness_from_string(lf.at("verdict").get<std::string>());
        if (lf.contains("witness")) {
            std::vector<mpq_class> pt;
            for (const auto& s : lf.at("witness")) pt.emplace_back(s.get<std::string>());
            c.degeneracy_point = pt;
        }
        c.regularity_bundle = doc.at("regularity").at("bundle").get<int>();
        if (!doc.at("regularity").at("dual").is_null())
            c.regularity_dual = doc.at("regularity").at("dual").get<int>();
        c.positive = grid_from_json(doc.at("positive_side"));
        c.dual = grid_from_json(doc.at("dual_side"));
        c.bridge = grid_from_json(doc.at("bridge"));
        if (!doc.at("witness").is_null()) {
            const auto& w = doc.at("witness");
            const auto side = w.at("side").get<std::string>();
            c.witness = Witness{side == "dual" ? Side::dual : Side::positive, w.at("i").get<int>(),
                                w.at("m").get<int>(), w.at("value").get<std::size_t>()};
        }
        c.flags = doc.at("flags").get<std::vector<std::string>>();
        return c;
    } catch (const nlohmann::json::exception& ex) {
        throw ParseError(std::string("malformed certificate: ") + ex.what());
    }
}

std::int64_t natural_cohomology_threshold(int n, int t, int r) {
    if (n < 1 || t < 1 || r < 1) throw Error("natural_cohomology_threshold needs n, t, r >= 1");
    if (r % n == 0) return 1;
    const long tn = static_cast<long>(t) * n;
    const long alpha = (tn + r - 1) / r;
    const long beta = tn / r;
    mpz_class ca = binom(alpha + n - 1, n);
    mpq_class first(ca * ca * binom(alpha + n, n), mpz_class(4L * (t + r)));
    mpz_class cb = binom(beta + n - 1, n);
    mpq_class second(cb * cb * cb, mpz_class(4L * t));
    first.canonicalize();
    second.canonicalize();
    mpq_class bound = std::max(first, second);
    mpz_class k = bound.get_num() / bound.get_den();
    if (k * bound.get_den() < bound.get_num()) k += 1;
    if (k < 1) k = 1;
    if (!k.fits_slong_p()) throw ArithmeticError("threshold does not fit in 64 bits");
    return k.get_si();
}

std::optional<int> admissible_parameters(int n, int r) {
    if (n < 2 || r < 1) throw Error("admissible_parameters needs n >= 2 and r >= 1");
    if (r < n) return std::nullopt;
    const mpz_class disc = mpz_class(n) * n + 2 * n - 3;
    for (int t = r - 1; t >= 1; --t) {
        mpz_class lhs = mpz_class(2) * r - mpz_class(t) * (n - 1);
        if (lhs < 0 || lhs * lhs < mpz_class(t) * t * disc) return t;
    }
    return std::nullopt;
}

}  // namespace mcmcert
