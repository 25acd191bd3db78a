// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <algorithm>
#include <array>
#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "mcmcert/cli.hpp"
#include "mcmcert/cohomology.hpp"
#include "mcmcert/constructors.hpp"
#include "mcmcert/error.hpp"
#include "mcmcert/lines.hpp"
#include "mcmcert/mcm.hpp"
#include "mcmcert/random.hpp"
#include "oracles.hpp"

using namespace mcmcert;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
    bool ok = true;
    std::string detail;

    void fail(const std::string& why) {
        if (ok) detail = why;
        ok = false;
    }
};

std::vector<std::size_t> numbers_after_bar(const std::string& text, const std::string& label) {
    std::istringstream in(text);
    std::vector<std::size_t> out;
    for (std::string line; std::getline(in, line);) {
        if (line.rfind(label, 0) != 0) continue;
        std::istringstream row(line.substr(line.find('|') + 1));
        for (std::size_t v; row >> v;) out.push_back(v);
    }
    return out;
}

Outcome tangent_table() {
    Outcome o;
    auto t0 = Clock::now();
    std::ostringstream out, err;
    int code = cli::run({"table", "tangent", "--n", "2", "--twist", "0", "--window", "-8:3"}, out, err);
    double s = seconds_since(t0);
    using V = std::vector<std::size_t>;
    if (code != 0) o.fail("exit code " + std::to_string(code));
    if (numbers_after_bar(out.str(), "h^2") != V{24, 15, 8, 3, 0, 0, 0, 0, 0, 0, 0, 0}) o.fail("h^2 row differs");
    if (numbers_after_bar(out.str(), "h^1") != V{0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0}) o.fail("h^1 row differs");
    if (numbers_after_bar(out.str(), "h^0") != V{0, 0, 0, 0, 0, 0, 0, 3, 8, 15, 24, 35}) o.fail("h^0 row differs");
    if (s >= 5) o.fail("took " + std::to_string(s) + " s");
    if (o.ok) o.detail = "rows match, " + std::to_string(s) + " s";
    return o;
}

Outcome euler_characteristic_coherence() {
    Outcome o;
    std::size_t checked = 0;
    for (int n : {2, 3}) {
        for (std::uint64_t seed = 0; seed < 50; ++seed) {
            auto e = oracle::random_bundle(n, 90000 + 100 * static_cast<std::uint64_t>(n) + seed);
            for (int m = -8; m <= 5; ++m) {
                auto col = cohomology_column(e, m);
                std::int64_t alt = 0;
                for (int i = 0; i <= n; ++i) alt += (i % 2 ? -1 : 1) * static_cast<std::int64_t>(col[static_cast<std::size_t>(i)]);
                if (alt != euler_characteristic(e, m)) o.fail(e.provenance() + " at m=" + std::to_string(m));
                ++checked;
            }
        }
    }
    if (o.ok) o.detail = std::to_string(checked) + " columns over 100 bundles";
    return o;
}

std::vector<PresentedBundle> locally_free_samples() {
    std::vector<PresentedBundle> v;
    for (int j : {-3, -1, 0, 2}) v.push_back(euler_tangent(2, j));
    for (int j : {-2, 0}) v.push_back(euler_tangent(3, j));
    for (std::uint64_t s : {1ULL, 2ULL, 3ULL}) v.push_back(stable_02_bundle(s));
    for (const char* x : {"0:0:1", "1:2:1", "-3:5:2"}) v.push_back(ideal_point_extension(PlanePoint::parse(x), 1));
    for (std::uint64_t s : {1ULL, 2ULL, 3ULL}) v.push_back(random_steiner({2, 2, 3, 1, s}));
    for (std::uint64_t s : {1ULL, 2ULL}) v.push_back(random_steiner({3, 2, 3, 1, s}));
    v.push_back(PresentedBundle::line_bundle(2, 3));
    v.push_back(PresentedBundle::line_bundle(3, -4));
    v.push_back(euler_tangent(2, 1).direct_sum(PresentedBundle::line_bundle(2, -1)));
    return v;
}

Outcome serre_duality() {
    Outcome o;
    auto samples = locally_free_samples();
    for (const auto& e : samples) {
        if (!dual_saturation_degree(e, 32)) {
            o.fail(e.provenance() + " is not certified locally free");
            continue;
        }
        const int n = e.ambient_dim();
        for (int m = -6; m <= 6; ++m)
            for (int i = 0; i <= n; ++i)
                if (dual_bundle_cohomology(e, m, i) != bundle_cohomology(e, -m - n - 1, n - i))
                    o.fail(e.provenance() + " at i=" + std::to_string(i) + ", m=" + std::to_string(m));
    }
    if (o.ok) o.detail = std::to_string(samples.size()) + " locally free samples, m in [-6, 6]";
    return o;
}

Outcome line_bundle_range() {
    Outcome o;
    for (int n : {2, 3, 4}) {
        std::vector<int> passing;
        for (int a = -n - 3; a <= n + 3; ++a)
            if (mcm_vanishing_check(PresentedBundle::line_bundle(n, a)).pass) passing.push_back(a);
        std::vector<int> want;
        for (int a = -n; a <= n; ++a) want.push_back(a);
        if (passing != want) o.fail("P^" + std::to_string(n) + " range differs");
    }
    if (o.ok) o.detail = "O(a) passes iff -n <= a <= n for n = 2, 3, 4";
    return o;
}

struct FamilyMember {
    PresentedBundle bundle;
    bool expect_pass;
};

std::vector<FamilyMember> classification_members() {
    std::vector<FamilyMember> v;
    v.push_back({euler_tangent(2, -1), true});
    v.push_back({euler_tangent(2, -2), true});
    for (const char* x : {"1:2:1", "0:0:1", "-3:5:2"}) v.push_back({ideal_point_extension(PlanePoint::parse(x), 11), true});
    for (std::uint64_t s : {1ULL, 2ULL, 3ULL}) v.push_back({stable_02_bundle(s), true});
    v.push_back({euler_tangent(2, 0), false});
    v.push_back({euler_tangent(2, -3), false});
    v.push_back({PresentedBundle::line_bundle(2, 3), false});
    v.push_back({PresentedBundle::line_bundle(2, -3), false});
    v.push_back({trivial_point_extension(PlanePoint(1, 2, 1)), false});
    return v;
}

Outcome family_certification() {
    Outcome o;
    std::size_t n = 0;
    for (const auto& [e, expect] : classification_members()) {
        auto c = mcm_vanishing_check(e);
        if (c.pass != expect) o.fail(c.summary());
        if (!c.pass && !c.witness) o.fail(e.provenance() + " failed without a witness");
        ++n;
    }
    if (o.ok) o.detail = std::to_string(n) + " verdicts as expected";
    return o;
}

Outcome extension_sensitivity() {
    Outcome o;
    auto x = PlanePoint(1, 2, 1);
    auto ex = bundle_cohomology(ideal_point_extension(x, 11), -3, 1);
    auto triv = bundle_cohomology(trivial_point_extension(x), -3, 1);
    if (ex != 0) o.fail("h^1(E_x(-3)) = " + std::to_string(ex));
    if (triv != 1) o.fail("h^1((O+I_x)(-3)) = " + std::to_string(triv));
    if (o.ok) o.detail = "h^1(E_x(-3)) = 0, h^1((O+I_x)(-3)) = 1";
    return o;
}

Outcome steiner_rates() {
    Outcome o;
    std::ostringstream detail;
    double slowest = 0;
    for (auto [n, t, r, k] : std::vector<std::array<int, 4>>{{2, 2, 3, 1}, {2, 3, 4, 1}, {2, 4, 6, 1}, {3, 2, 3, 1}}) {
        int passed = 0;
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            auto t0 = Clock::now();
            try {
                if (mcm_vanishing_check(random_steiner({n, t, r, k, seed})).pass) ++passed;
            } catch (const GenericityFailure&) {
            }
            double s = seconds_since(t0);
            slowest = std::max(slowest, s);
            if (s >= 60) o.fail("seed " + std::to_string(seed) + " took " + std::to_string(s) + " s");
        }
        detail << "(" << n << "," << t << "," << r << "," << k << ") " << passed << "/20; ";
        if (passed < 19) o.fail("pass rate " + std::to_string(passed) + "/20 for (" + std::to_string(n) + "," +
                                std::to_string(t) + "," + std::to_string(r) + ")");
    }
    if (o.ok) {
        detail << "slowest run " << slowest << " s";
        o.detail = detail.str();
    }
    return o;
}

Outcome steiner_boundary() {
    Outcome o;
    for (auto p : {SteinerParams{2, 2, 3, 1, 1}, SteinerParams{2, 3, 4, 1, 2}, SteinerParams{3, 2, 3, 1, 3},
                   SteinerParams{2, 2, 3, 2, 4}}) {
        auto c = mcm_vanishing_check(random_steiner(p));
        // E_k = V(-n+1), so V(-n) is E_k(-1).
        if (c.bridge.at(p.n - 1, -1) != static_cast<std::size_t>(p.k * p.t)) o.fail("h^{n-1}(V(-n)) != kt");
        for (int m = 0; m <= c.positive.m_hi; ++m)
            if (c.positive.at(p.n - 1, m) != 0) o.fail("nonzero h^{n-1} above V(-n)");
    }
    if (o.ok) o.detail = "h^{n-1}(V(-n)) = kt and zero above for 4 parameter points";
    return o;
}

Outcome jumping_counts() {
    Outcome o;
    auto check = [&](const PresentedBundle& e, int want) {
        for (std::uint64_t i = 0; i < 5; ++i) {
            auto rep = jumping_lines_in_pencil(e, random_pencil(derive_seed(77, i)));
            if (rep.degenerate || rep.multiplicity_sum != want)
                o.fail(e.provenance() + " in " + rep.pencil + " gave " + std::to_string(rep.multiplicity_sum));
        }
    };
    for (std::uint64_t s : {1ULL, 2ULL, 3ULL}) check(stable_02_bundle(s), 2);
    for (const char* x : {"1:2:1", "0:0:1", "-3:5:2"}) check(ideal_point_extension(PlanePoint::parse(x), 11), 1);
    if (o.ok) o.detail = "stable02 -> 2, E_x -> 1 over 5 pencils each";
    return o;
}

Outcome thresholds() {
    Outcome o;
    if (natural_cohomology_threshold(2, 2, 3) != 3) o.fail("(2,2,3)");
    if (natural_cohomology_threshold(3, 2, 3) != 1) o.fail("(3,2,3)");
    if (natural_cohomology_threshold(2, 1, 2) != 1) o.fail("(2,1,2)");
    if (o.ok) o.detail = "(2,2,3) -> 3, (3,2,3) -> 1, (2,1,2) -> 1";
    return o;
}

Outcome splitting_constraints() {
    Outcome o;
    std::size_t n = 0;
    for (const auto& [e, expect] : classification_members()) {
        if (!expect || !mcm_vanishing_check(e).pass) continue;
        auto st = generic_splitting_type(e, 5);
        auto rep = splitting_constraints_check(st, e.rank(), chern_data(e).c1, true);
        if (!rep.all_ok()) o.fail(e.provenance() + " " + st.to_string() + ": " + rep.to_string());
        if (st.multiplicity(2) != bundle_cohomology(e, -2, 0)) o.fail(e.provenance() + ": a_2 != h^0(E(-2))");
        if (st.multiplicity(-2) != bundle_cohomology(e, -1, 2)) o.fail(e.provenance() + ": a_-2 != h^2(E(-1))");
        ++n;
    }
    if (o.ok) o.detail = std::to_string(n) + " passing bundles satisfy all relations";
    return o;
}

}  // namespace

int main() {
    std::vector<std::function<Outcome()>> criteria{tangent_table,         euler_characteristic_coherence,
                                                   serre_duality,         line_bundle_range,
                                                   family_certification,  extension_sensitivity,
                                                   steiner_rates,         steiner_boundary,
                                                   jumping_counts,        thresholds,
                                                   splitting_constraints};
    bool all = true;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i]();
        } catch (const std::exception& ex) {
            o.fail(std::string("exception: ") + ex.what());
        }
        all = all && o.ok;
        std::cout << "criterion " << i + 1 << ": " << (o.ok ? "PASS" : "FAIL") << " (" << o.detail << ")" << std::endl;
    }
    return all ? 0 : 1;
}
