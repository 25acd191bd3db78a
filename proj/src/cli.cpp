#include "mcmcert/cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <iomanip>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "mcmcert/bundle_spec.hpp"
#include "mcmcert/cohomology.hpp"
#include "mcmcert/constructors.hpp"
#include "mcmcert/error.hpp"
#include "mcmcert/lines.hpp"
#include "mcmcert/mcm.hpp"
#include "mcmcert/random.hpp"

namespace mcmcert::cli {

namespace {

using nlohmann::json;

struct RunConfig {
    std::string field = "rationals";
    std::uint64_t seed = 0;
    std::string format = "text";
    std::string window;
    std::string out;
    int trials = 16;
};

struct BundleArgs {
    std::string kind;
    std::string matrix;
    int n = 2;
    int d = 0;
    int twist = 0;
    int t = 2;
    int r = 3;
    int k = 1;
    std::string point = "0:0:1";
};

std::pair<int, int> parse_range(const std::string& text, const char* what) {
    auto colon = text.find(':', 1);
    if (colon == std::string::npos) throw ParseError(std::string(what) + " must look like lo:hi");
    try {
        std::size_t u1 = 0, u2 = 0;
        std::string a = text.substr(0, colon), b = text.substr(colon + 1);
        int lo = std::stoi(a, &u1);
        int hi = std::stoi(b, &u2);
        if (u1 != a.size() || u2 != b.size()) throw std::invalid_argument(text);
        if (lo > hi) throw ParseError(std::string(what) + " '" + text + "' is empty");
        return {lo, hi};
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception&) {
        throw ParseError(std::string(what) + " '" + text + "' must look like lo:hi");
    }
}

void add_run_options(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--field", cfg.field, "rationals or prime:P")->envname("MCMCERT_FIELD");
    sub->add_option("--seed", cfg.seed, "seed for random constructions")->envname("MCMCERT_SEED");
    sub->add_option("--format", cfg.format, "text or json")->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--trials", cfg.trials, "local-freeness probe points")->check(CLI::PositiveNumber);
}

void add_bundle_options(CLI::App* sub, BundleArgs& b) {
    sub->add_option("kind", b.kind,
                    "line-bundle, tangent, steiner, stable02, ext-point, trivial-ext");
    sub->add_option("--matrix", b.matrix, "presentation file (see README)");
    sub->add_option("--n", b.n, "ambient dimension");
    sub->add_option("--d", b.d, "line bundle degree");
    sub->add_option("--twist", b.twist, "tangent twist");
    sub->add_option("--t", b.t, "Steiner t");
    sub->add_option("--r", b.r, "Steiner r");
    sub->add_option("--k", b.k, "Steiner k");
    sub->add_option("--point", b.point, "point a:b:c of P^2");
}

PresentedBundle build(const BundleArgs& b, std::uint64_t seed) {
    if (!b.matrix.empty()) {
        if (!b.kind.empty() && b.kind != "matrix")
            throw ParseError("give either a constructor name or --matrix, not both");
        return load_matrix_file(b.matrix);
    }
    if (b.kind == "line-bundle") return PresentedBundle::line_bundle(b.n, b.d);
    if (b.kind == "tangent") return euler_tangent(b.n, b.twist);
    if (b.kind == "steiner") return random_steiner({b.n, b.t, b.r, b.k, seed});
    if (b.kind == "stable02") return stable_02_bundle(seed);
    if (b.kind == "ext-point") return ideal_point_extension(PlanePoint::parse(b.point), seed);
    if (b.kind == "trivial-ext") return trivial_point_extension(PlanePoint::parse(b.point));
    if (b.kind.empty()) throw ParseError("no bundle given");
    throw ParseError("unknown bundle kind '" + b.kind + "'");
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path);
    if (!f) throw Error("cannot write '" + path + "'");
    f << text;
    if (!f) throw Error("write to '" + path + "' failed");
}

json table_json(const CohomologyTable& t) {
    json flags = json::array();
    if (t.field.is_prime()) flags.push_back("probabilistic");
    return {{"bundle", t.bundle}, {"field", t.field.to_string()}, {"n", t.n},
            {"window", {t.m_lo, t.m_hi}}, {"h", t.h}, {"flags", flags}};
}

int cmd_table(const BundleArgs& b, const RunConfig& cfg, std::ostream& out) {
    Field field = Field::parse(cfg.field);
    auto e = build(b, cfg.seed);
    auto [lo, hi] = cfg.window.empty() ? std::pair{-8, 3} : parse_range(cfg.window, "--window");
    auto t = cohomology_table(e, lo, hi, field);
    std::string text;
    if (cfg.format == "json") {
        text = table_json(t).dump(2) + "\n";
    } else {
        text = e.provenance() + " over " + field.to_string() +
               (field.is_prime() ? " (probabilistic)" : "") + "\n" + t.render_text();
    }
    out << text;
    if (!cfg.out.empty()) write_file(cfg.out, text);
    return kPass;
}

int cmd_mcm_check(const BundleArgs& b, const RunConfig& cfg, std::ostream& out) {
    MCMOptions opts;
    opts.field = Field::parse(cfg.field);
    opts.probe_trials = cfg.trials;
    opts.probe_seed = cfg.seed;
    auto cert = mcm_vanishing_check(build(b, cfg.seed), opts);
    if (cfg.format == "json") {
        out << cert.to_json().dump(2) << "\n";
    } else {
        out << cert.summary() << "\n";
    }
    if (!cfg.out.empty()) {
        write_file(cfg.out, cert.to_json().dump(2) + "\n");
        if (cfg.format == "text") out << "certificate written to " << cfg.out << "\n";
    }
    return cert.pass ? kPass : kFail;
}

int cmd_verify(const std::string& path, const RunConfig& cfg, std::ostream& out) {
    std::ifstream f(path);
    if (!f) throw ParseError("cannot open certificate '" + path + "'");
    json doc;
    try {
        f >> doc;
    } catch (const json::exception& ex) {
        throw ParseError("certificate '" + path + "' is not valid JSON: " + ex.what());
    }
    auto stored = MCMCertificate::from_json(doc);
    MCMOptions opts;
    opts.field = stored.field;
    opts.probe_trials = cfg.trials;
    opts.probe_seed = cfg.seed;
    auto fresh = mcm_vanishing_check(bundle_from_provenance(stored.provenance), opts);

    std::vector<std::string> diffs;
    if (fresh.pass != stored.pass) diffs.push_back("verdict");
    if (fresh.regularity_bundle != stored.regularity_bundle || fresh.regularity_dual != stored.regularity_dual)
        diffs.push_back("regularity");
    if (!(fresh.positive == stored.positive)) diffs.push_back("positive side");
    if (!(fresh.dual == stored.dual)) diffs.push_back("dual side");
    if (!(fresh.bridge == stored.bridge)) diffs.push_back("bridge");
    if (fresh.witness != stored.witness) diffs.push_back("witness");

    bool ok = diffs.empty();
    if (cfg.format == "json") {
        out << json{{"certificate", path}, {"provenance", stored.provenance}, {"verified", ok},
                    {"differences", diffs}}
                   .dump(2)
            << "\n";
    } else if (ok) {
        out << "VERIFIED " << stored.provenance << ": recomputation matches (" << (stored.pass ? "PASS" : "FAIL")
            << ")\n";
    } else {
        out << "MISMATCH " << stored.provenance << ":";
        for (const auto& d : diffs) out << " " << d;
        out << "\n";
    }
    return ok ? kPass : kFail;
}

struct SweepPoint {
    std::string label;
    long value = 0;
    bool pass = false;
    std::string note;
    double seconds = 0;
};

int cmd_sweep(const std::string& family, const BundleArgs& base, const RunConfig& cfg,
              const std::string& seeds, const std::string& range, std::ostream& out) {
    MCMOptions opts;
    opts.field = Field::parse(cfg.field);
    opts.probe_trials = cfg.trials;

    bool by_seed = family == "steiner" || family == "stable02" || family == "ext-point";
    bool by_range = family == "line-bundle" || family == "tangent";
    if (!by_seed && !by_range) throw ParseError("cannot sweep family '" + family + "'");
    const std::string& bounds = by_seed ? seeds : range;
    if (bounds.empty()) throw ParseError(by_seed ? "sweep needs --seeds lo:hi" : "sweep needs --range lo:hi");
    auto [lo, hi] = parse_range(bounds, by_seed ? "--seeds" : "--range");
    if (by_seed && lo < 0) throw ParseError("seeds are non-negative");

    std::vector<SweepPoint> points;
    for (long v = lo; v <= hi; ++v) {
        BundleArgs b = base;
        b.kind = family;
        if (family == "line-bundle") b.d = static_cast<int>(v);
        if (family == "tangent") b.twist = static_cast<int>(v);
        std::uint64_t seed = by_seed ? static_cast<std::uint64_t>(v) : cfg.seed;
        SweepPoint p;
        p.value = v;
        auto t0 = std::chrono::steady_clock::now();
        try {
            auto e = build(b, seed);
            p.label = e.provenance();
            opts.probe_seed = seed;
            auto cert = mcm_vanishing_check(e, opts);
            p.pass = cert.pass;
            if (cert.witness) {
                const auto& w = *cert.witness;
                p.note = to_string(w.side) + " h^" + std::to_string(w.i) + "(" + std::to_string(w.m) +
                         ")=" + std::to_string(w.value);
            }
        } catch (const GenericityFailure& ex) {
            p.label = family + " " + std::to_string(v);
            p.note = "genericity-failure";
        }
        p.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        points.push_back(p);
    }

    std::size_t passed = 0;
    double total = 0;
    std::vector<long> failing, passing;
    for (const auto& p : points) {
        total += p.seconds;
        if (p.pass) {
            ++passed;
            passing.push_back(p.value);
        } else {
            failing.push_back(p.value);
        }
    }
    double rate = static_cast<double>(passed) / static_cast<double>(points.size());
    double mean = total / static_cast<double>(points.size());

    if (cfg.format == "json") {
        json rows = json::array();
        for (const auto& p : points)
            rows.push_back({{"bundle", p.label}, {by_seed ? "seed" : "value", p.value},
                            {"verdict", p.pass ? "pass" : "fail"}, {"note", p.note},
                            {"seconds", p.seconds}});
        out << json{{"family", family}, {"points", rows}, {"pass_rate", rate},
                    {"mean_seconds", mean}, {by_seed ? "failing_seeds" : "failing_values", failing},
                    {"passing", passing}}
                   .dump(2)
            << "\n";
        return kPass;
    }
    std::size_t w = 6;
    for (const auto& p : points) w = std::max(w, p.label.size());
    out << std::left << std::setw(static_cast<int>(w)) << "bundle" << "  verdict  seconds   note\n";
    for (const auto& p : points) {
        out << std::left << std::setw(static_cast<int>(w)) << p.label << "  " << std::setw(7)
            << (p.pass ? "PASS" : "FAIL") << "  " << std::fixed << std::setprecision(4) << std::setw(8)
            << p.seconds << "  " << p.note << "\n";
    }
    out << "pass rate " << passed << "/" << points.size() << " = " << std::setprecision(3) << rate
        << ", mean runtime " << std::setprecision(4) << mean << " s\n";
    auto list = [&](const std::vector<long>& v) {
        if (v.empty()) return std::string("none");
        std::string s;
        for (long x : v) s += (s.empty() ? "" : " ") + std::to_string(x);
        return s;
    };
    out << (by_seed ? "failing seeds: " : "failing values: ") << list(failing) << "\n";
    if (by_range) out << "passing values: " << list(passing) << "\n";
    return kPass;
}

std::vector<mpq_class> parse_point(const std::string& text) {
    std::vector<mpq_class> p;
    std::istringstream in(text);
    std::string part;
    while (std::getline(in, part, ':')) {
        try {
            mpq_class v(part);
            v.canonicalize();
            p.push_back(v);
        } catch (const std::invalid_argument&) {
            throw ParseError("bad coordinate '" + part + "'");
        }
    }
    return p;
}

int cmd_splitting(const BundleArgs& b, const RunConfig& cfg, const std::string& line_text,
                  bool nonsplit, std::ostream& out) {
    Field field = Field::parse(cfg.field);
    auto e = build(b, cfg.seed);
    std::optional<LineParam> line;
    if (!line_text.empty()) {
        auto comma = line_text.find(',');
        if (comma == std::string::npos) throw ParseError("--line must look like P,Q with P, Q as a:b:c");
        try {
            line.emplace(parse_point(line_text.substr(0, comma)), parse_point(line_text.substr(comma + 1)));
        } catch (const ParseError&) {
            throw;
        } catch (const Error& ex) {
            throw ParseError(std::string("--line: ") + ex.what());
        }
    }
    SplittingType st;
    std::string where;
    try {
        if (line) {
            st = splitting_type(e, *line, field);
            where = line->to_string();
        } else {
            st = generic_splitting_type(e, cfg.seed, field);
            where = "generic line";
        }
    } catch (const TorsionDetected& ex) {
        if (cfg.format == "json") {
            out << json{{"bundle", e.provenance()}, {"torsion", ex.what()}}.dump(2) << "\n";
        } else {
            out << "TORSION " << ex.what() << "\n";
        }
        return kFail;
    }
    std::int64_t c1 = 0;
    for (int x : e.target_twists()) c1 += x;
    for (int x : e.source_twists()) c1 -= x;
    auto rep = splitting_constraints_check(st, e.rank(), c1, nonsplit);
    if (cfg.format == "json") {
        json j{{"bundle", e.provenance()}, {"line", where}, {"splitting_type", st.degrees},
               {"range_ok", rep.range_ok}, {"sum_ok", rep.sum_ok}, {"count_ok", rep.count_ok}};
        j["positivity_ok"] = rep.positivity_ok ? json(*rep.positivity_ok) : json();
        out << j.dump(2) << "\n";
    } else {
        out << e.provenance() << " on " << where << ": " << st.to_string() << "\n" << rep.to_string() << "\n";
    }
    return rep.all_ok() ? kPass : kFail;
}

int cmd_jumping(const BundleArgs& b, const RunConfig& cfg, int pencils, std::ostream& out) {
    Field field = Field::parse(cfg.field);
    auto e = build(b, cfg.seed);
    json rows = json::array();
    for (int i = 0; i < pencils; ++i) {
        auto pencil = random_pencil(derive_seed(cfg.seed, 0x70e1c11ULL + static_cast<std::uint64_t>(i)));
        auto rep = jumping_lines_in_pencil(e, pencil, field);
        if (cfg.format == "json") {
            json r{{"pencil", rep.pencil}, {"degree", rep.degree}, {"degenerate", rep.degenerate}};
            r["roots_found"] = rep.roots_found;
            r["multiplicity_sum"] = rep.multiplicity_sum;
            rows.push_back(r);
        } else if (rep.degenerate) {
            out << rep.pencil << ": degenerate pencil (inside the jumping curve)\n";
        } else {
            out << rep.pencil << ": degree " << rep.degree << ", roots-found " << rep.roots_found
                << ", multiplicity-sum " << rep.multiplicity_sum << "\n";
        }
    }
    if (cfg.format == "json") out << json{{"bundle", e.provenance()}, {"pencils", rows}}.dump(2) << "\n";
    return kPass;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact cohomology and MCM certification for bundles on projective space", "mcmcert"};
    app.require_subcommand(1);

    RunConfig cfg;
    BundleArgs bundle;
    std::string cert_path, seeds, range, line_text;
    int n = 2, t = 1, r = 1, pencils = 5;
    bool nonsplit = false;
    std::function<int()> action;

    auto* table = app.add_subcommand("table", "print h^i(E(k)) over a twist window");
    add_bundle_options(table, bundle);
    add_run_options(table, cfg);
    table->add_option("--window", cfg.window, "twist window lo:hi (default -8:3)");
    table->add_option("--out", cfg.out, "also write the output to a file");
    table->callback([&] { action = [&] { return cmd_table(bundle, cfg, out); }; });

    auto* check = app.add_subcommand("mcm-check", "certify the two-sided vanishing criterion");
    add_bundle_options(check, bundle);
    add_run_options(check, cfg);
    check->add_option("--out", cfg.out, "write the mcm-cert/1 certificate here");
    check->callback([&] { action = [&] { return cmd_mcm_check(bundle, cfg, out); }; });

    auto* verify = app.add_subcommand("verify", "recompute a certificate from its provenance");
    verify->add_option("certificate", cert_path, "certificate file")->required();
    add_run_options(verify, cfg);
    verify->callback([&] { action = [&] { return cmd_verify(cert_path, cfg, out); }; });

    auto* threshold = app.add_subcommand("threshold", "natural-cohomology k-threshold M_{r,t}");
    threshold->add_option("--n", n)->required();
    threshold->add_option("--t", t)->required();
    threshold->add_option("--r", r)->required();
    threshold->add_option("--format", cfg.format)->check(CLI::IsMember({"text", "json"}));
    threshold->callback([&] {
        action = [&] {
            auto k = natural_cohomology_threshold(n, t, r);
            if (cfg.format == "json")
                out << json{{"n", n}, {"t", t}, {"r", r}, {"threshold", k}}.dump() << "\n";
            else
                out << k << "\n";
            return static_cast<int>(kPass);
        };
    });

    auto* params = app.add_subcommand("params", "largest admissible t for given n, r");
    params->add_option("--n", n)->required();
    params->add_option("--r", r)->required();
    params->add_option("--format", cfg.format)->check(CLI::IsMember({"text", "json"}));
    params->callback([&] {
        action = [&] {
            auto p = admissible_parameters(n, r);
            if (cfg.format == "json")
                out << json{{"n", n}, {"r", r}, {"t", p ? json(*p) : json()}}.dump() << "\n";
            else
                out << (p ? std::to_string(*p) : std::string("none")) << "\n";
            return static_cast<int>(kPass);
        };
    });

    auto* sweep = app.add_subcommand("sweep", "pass rates of mcm-check over seeds or twists");
    add_bundle_options(sweep, bundle);
    add_run_options(sweep, cfg);
    sweep->add_option("--seeds", seeds, "seed range lo:hi");
    sweep->add_option("--range", range, "degree or twist range lo:hi");
    sweep->callback([&] { action = [&] { return cmd_sweep(bundle.kind, bundle, cfg, seeds, range, out); }; });

    auto* split = app.add_subcommand("splitting", "splitting type on a line");
    add_bundle_options(split, bundle);
    add_run_options(split, cfg);
    split->add_option("--line", line_text, "two points P,Q as a:b:c,d:e:f (default: generic)");
    split->add_flag("--nonsplit", nonsplit, "also check positivity (E MCM and indecomposable)");
    split->callback([&] { action = [&] { return cmd_splitting(bundle, cfg, line_text, nonsplit, out); }; });

    auto* jump = app.add_subcommand("jumping", "count jumping lines in random pencils");
    add_bundle_options(jump, bundle);
    add_run_options(jump, cfg);
    jump->add_option("--pencils", pencils, "number of pencils")->check(CLI::PositiveNumber);
    jump->callback([&] { action = [&] { return cmd_jumping(bundle, cfg, pencils, out); }; });

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kPass;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kPass;
    } catch (const CLI::ParseError& ex) {
        err << "error: " << ex.what() << "\n";
        return kUsage;
    }

    try {
        return action();
    } catch (const GenericityFailure& ex) {
        err << "genericity failure: " << ex.what() << "\n";
        return kGenericity;
    } catch (const Error& ex) {
        err << "error: " << ex.what() << "\n";
        return kUsage;
    } catch (const std::exception& ex) {
        err << "error: " << ex.what() << "\n";
        return kUsage;
    }
}

}  // namespace mcmcert::cli
