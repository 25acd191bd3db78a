#include "mcmcert/lines.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "mcmcert/cohomology.hpp"
#include "mcmcert/error.hpp"
#include "mcmcert/graded_ring.hpp"
#include "mcmcert/random.hpp"
#include "mcmcert/univariate.hpp"

namespace mcmcert {

namespace {

constexpr long kLinePointBound = 100;
constexpr int kGenericLineSamples = 3;
constexpr int kLineBudget = 12;

std::string point_string(const std::vector<mpq_class>& p) {
    std::string out;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i) out += ':';
        out += p[i].get_str();
    }
    return out;
}

std::size_t point_rank(std::initializer_list<const std::vector<mpq_class>*> pts) {
    const std::size_t cols = (*pts.begin())->size();
    DenseMatrix m(Field::rationals(), pts.size(), cols);
    std::size_t r = 0;
    for (const auto* p : pts) {
        if (p->size() != cols) throw Error("points with different numbers of coordinates");
        for (std::size_t c = 0; c < cols; ++c) m.set(r, c, (*p)[c]);
        ++r;
    }
    return rank(m);
}

// sum over the degree-d monomials sigma^{d-k} tau^k of k.
std::int64_t tau_weight(int d) {
    return d < 0 ? 0 : static_cast<std::int64_t>(d) * (d + 1) / 2;
}

FormGrid transposed(const FormGrid& phi, std::size_t cols) {
    FormGrid out(cols, std::vector<HomogeneousForm>(phi.size()));
    for (std::size_t i = 0; i < phi.size(); ++i)
        for (std::size_t j = 0; j < cols; ++j) out[j][i] = phi[i][j];
    return out;
}

std::vector<int> negated(const std::vector<int>& v) {
    std::vector<int> out;
    for (int x : v) out.push_back(-x);
    return out;
}

FormGrid restricted_grid(const PresentedBundle& e, const LineParam& line) {
    auto images = line.parametrization();
    FormGrid out(e.phi().size());
    for (std::size_t i = 0; i < e.phi().size(); ++i) {
        for (std::size_t j = 0; j < e.phi()[i].size(); ++j) {
            const auto& f = e.phi()[i][j];
            out[i].push_back(f.is_zero() ? HomogeneousForm(1, f.degree()) : f.substitute(images));
        }
    }
    return out;
}

}  // namespace

LineParam::LineParam(std::vector<mpq_class> p, std::vector<mpq_class> q)
    : p_(std::move(p)), q_(std::move(q)) {
    if (p_.size() < 2 || p_.size() != q_.size()) throw Error("line needs two points of one P^n");
    if (point_rank({&p_, &q_}) != 2) throw Error("line points are not independent");
}

std::vector<HomogeneousForm> LineParam::parametrization() const {
    std::vector<HomogeneousForm> out;
    for (std::size_t i = 0; i < p_.size(); ++i) {
        std::vector<mpq_class> coeffs{p_[i], q_[i]};
        out.push_back(HomogeneousForm::linear(1, coeffs));
    }
    return out;
}

std::string LineParam::to_string() const {
    return "line(" + point_string(p_) + "," + point_string(q_) + ")";
}

LineParam random_line(int n, std::uint64_t seed) {
    SeededRng rng(seed);
    for (;;) {
        auto p = rng.integer_point(n, kLinePointBound);
        auto q = rng.integer_point(n, kLinePointBound);
        if (point_rank({&p, &q}) == 2) return LineParam(std::move(p), std::move(q));
    }
}

PresentedBundle restrict_to_line(const PresentedBundle& e, const LineParam& line) {
    if (line.ambient_dim() != e.ambient_dim()) throw Error("line lives in another P^n");
    try {
        return PresentedBundle(1, e.source_twists(), e.target_twists(), restricted_grid(e, line),
                               e.provenance() + "|" + line.to_string());
    } catch (const GenericityFailure&) {
        throw TorsionDetected(line.to_string() + " lies in the degeneracy locus of " +
                              e.provenance());
    }
}

std::int64_t SplittingType::degree() const {
    return std::accumulate(degrees.begin(), degrees.end(), std::int64_t{0});
}

std::size_t SplittingType::multiplicity(int e) const {
    return static_cast<std::size_t>(std::count(degrees.begin(), degrees.end(), e));
}

std::string SplittingType::to_string() const {
    std::string out = "(";
    for (std::size_t i = 0; i < degrees.size(); ++i) {
        if (i) out += ", ";
        out += std::to_string(degrees[i]);
    }
    return out + ")";
}

SplittingType splitting_type(const PresentedBundle& e, const LineParam& line, const Field& field) {
    PresentedBundle el = restrict_to_line(e, line);
    const int r = e.rank();
    const auto& b = e.target_twists();
    const auto& a = e.source_twists();
    const std::int64_t c1 = std::accumulate(b.begin(), b.end(), std::int64_t{0}) -
                            std::accumulate(a.begin(), a.end(), std::int64_t{0});
    const int lo = *std::min_element(b.begin(), b.end());
    const auto hi = static_cast<int>(c1 - static_cast<std::int64_t>(r - 1) * lo);

    auto g = [&](int k) { return cohomology_column(el, k, field)[0]; };
    std::size_t prev_g = g(-hi - 1);
    if (prev_g != 0) {
        throw TorsionDetected("restriction of " + e.provenance() + " to " + line.to_string() +
                              " has torsion of length " + std::to_string(prev_g));
    }
    SplittingType st;
    std::size_t prev_d = 0;
    for (int k = -hi; k <= -lo; ++k) {
        std::size_t gk = g(k);
        std::size_t d = gk - prev_g;  // #{i : e_i >= -k}
        for (std::size_t c = prev_d; c < d; ++c) st.degrees.push_back(-k);
        prev_d = std::max(prev_d, d);
        prev_g = gk;
    }
    if (st.rank() != r || st.degree() != c1) {
        throw InternalConsistency("splitting type " + st.to_string() + " of " + e.provenance() +
                                  " does not match rank " + std::to_string(r) + ", c1 " +
                                  std::to_string(c1));
    }
    return st;
}

SplittingType generic_splitting_type(const PresentedBundle& e, std::uint64_t seed,
                                     const Field& field) {
    std::optional<SplittingType> best;
    int found = 0;
    for (int attempt = 0; attempt < kLineBudget && found < kGenericLineSamples; ++attempt) {
        LineParam line = random_line(e.ambient_dim(), derive_seed(seed, static_cast<std::uint64_t>(attempt)));
        try {
            SplittingType st = splitting_type(e, line, field);
            ++found;
            // Equal sums, so lexicographically smaller descending vectors are more balanced.
            if (!best || st.degrees < best->degrees) best = st;
        } catch (const TorsionDetected&) {
        }
    }
    if (!best) throw GenericityFailure("every sampled line meets the degeneracy locus of " + e.provenance());
    return *best;
}

std::string SplittingReport::to_string() const {
    auto mark = [](bool ok) { return ok ? "ok" : "violated"; };
    std::string out = std::string("range ") + mark(range_ok) + ", sum " + mark(sum_ok) + ", count " +
                      mark(count_ok);
    if (positivity_ok) out += std::string(", positivity ") + mark(*positivity_ok);
    return out;
}

SplittingReport splitting_constraints_check(const SplittingType& st, int rank, std::int64_t c1,
                                            bool mcm_nonsplit) {
    SplittingReport rep;
    rep.range_ok = std::all_of(st.degrees.begin(), st.degrees.end(), [](int e) { return -2 <= e && e <= 2; });
    rep.sum_ok = st.degree() == c1;
    rep.count_ok = st.rank() == rank;
    if (mcm_nonsplit) {
        rep.positivity_ok = st.multiplicity(-1) + st.multiplicity(0) > 0 &&
                            st.multiplicity(0) + st.multiplicity(1) > 0;
    }
    return rep;
}

void PencilParam::validate() const {
    if (base.size() != 3 || c.size() != 3 || d.size() != 3) throw Error("pencils live on P^2");
    if (point_rank({&base, &c, &d}) != 3) throw Error("pencil points are not independent");
}

LineParam PencilParam::member(const mpq_class& s, const mpq_class& u) const {
    std::vector<mpq_class> q(3);
    for (std::size_t i = 0; i < 3; ++i) q[i] = s * c[i] + u * d[i];
    return LineParam(base, std::move(q));
}

std::string PencilParam::to_string() const {
    return "pencil(" + point_string(base) + ";" + point_string(c) + "," + point_string(d) + ")";
}

PencilParam random_pencil(std::uint64_t seed) {
    SeededRng rng(seed);
    for (;;) {
        PencilParam p{rng.integer_point(2, kLinePointBound), rng.integer_point(2, kLinePointBound),
                      rng.integer_point(2, kLinePointBound)};
        if (point_rank({&p.base, &p.c, &p.d}) == 3) return p;
    }
}

JumpingReport jumping_lines_in_pencil(const PresentedBundle& e, const PencilParam& pencil,
                                      const Field& field) {
    if (e.ambient_dim() != 2 || e.rank() != 2)
        throw UnsupportedDimension("jumping lines are implemented for rank 2 on P^2");
    const auto c1 = chern_data(e).c1;
    if (c1 != 0) {
        throw UnsupportedDimension("jumping lines are implemented for c1 = 0 (got c1 = " +
                                   std::to_string(c1) + ")");
    }
    pencil.validate();

    const auto& a = e.source_twists();
    const auto& b = e.target_twists();
    // h^0(E_L(-1)) = coker M0 + coker N with M0 : H^0(A_L(-1)) -> H^0(B_L(-1)) and
    // N : (+)_i H^0(O(-b_i - 1)) -> (+)_j H^0(O(-a_j - 1)).
    std::size_t m0_rows = 0, n_rows = 0;
    for (int x : b) m0_rows += dim_forms(1, x - 1);
    for (int x : a) n_rows += dim_forms(1, -x - 1);
    bool use_n = m0_rows == 0;
    if (!use_n && n_rows != 0)
        throw UnsupportedDimension("presentation of " + e.provenance() +
                                   " gives no single square jumping matrix");

    std::int64_t degree = 0;
    if (use_n) {
        for (int x : a) degree += tau_weight(-x - 1);
        for (int x : b) degree -= tau_weight(-x - 1);
    } else {
        for (int x : b) degree += tau_weight(x - 1);
        for (int x : a) degree -= tau_weight(x - 1);
    }

    auto matrix_at = [&](const mpq_class& s) {
        FormGrid phi = restricted_grid(e, pencil.member(s, 1));
        return use_n ? block_matrix(transposed(phi, a.size()), negated(b), negated(a), -1, 1, field)
                     : block_matrix(phi, a, b, -1, 1, field);
    };
    {
        DenseMatrix probe = matrix_at(0);
        if (probe.rows() != probe.cols())
            throw UnsupportedDimension("jumping matrix of " + e.provenance() + " is not square");
    }

    std::vector<Scalar> xs, ys;
    for (std::int64_t k = 0; k <= degree; ++k) {
        xs.emplace_back(field, static_cast<long>(k));
        ys.push_back(determinant(matrix_at(mpq_class(static_cast<long>(k)))));
    }
    auto p = UnivariatePolynomial::interpolate(field, xs, ys);

    JumpingReport rep;
    rep.pencil = pencil.to_string();
    rep.degree = static_cast<int>(degree);
    if (p.is_zero()) {
        rep.degenerate = true;
        return rep;
    }
    rep.multiplicity_sum = rep.degree;
    rep.roots_found = static_cast<std::size_t>(p.distinct_root_count()) + (p.degree() < degree ? 1 : 0);
    return rep;
}

}  // namespace mcmcert
