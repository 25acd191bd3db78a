#include "mcmcert/cohomology.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include "mcmcert/error.hpp"
#include "mcmcert/graded_ring.hpp"

namespace mcmcert {

namespace {

std::vector<int> negated(const std::vector<int>& v) {
    std::vector<int> out(v.size());
    std::transform(v.begin(), v.end(), out.begin(), [](int x) { return -x; });
    return out;
}

FormGrid transposed(const FormGrid& phi, std::size_t cols) {
    FormGrid out(cols, std::vector<HomogeneousForm>(phi.size()));
    for (std::size_t i = 0; i < phi.size(); ++i)
        for (std::size_t j = 0; j < cols; ++j) out[j][i] = phi[i][j];
    return out;
}

// H^0(A(m)) -> H^0(B(m)).
DenseMatrix h0_map(const PresentedBundle& e, int m, const Field& field) {
    return block_matrix(e.phi(), e.source_twists(), e.target_twists(), m, e.ambient_dim(), field);
}

// (+)_i H^0(O(-b_i + m)) -> (+)_j H^0(O(-a_j + m)), multiplication by phi^T.
DenseMatrix dual_h0_map(const PresentedBundle& e, int m, const Field& field) {
    return block_matrix(transposed(e.phi(), e.source_twists().size()), negated(e.target_twists()),
                        negated(e.source_twists()), m, e.ambient_dim(), field);
}

void check_degree(int n, int i) {
    if (i < 0 || i > n) {
        throw Error("cohomological degree " + std::to_string(i) + " outside [0, " +
                    std::to_string(n) + "]");
    }
}

}  // namespace

std::size_t line_bundle_cohomology(int n, int d, int i) {
    check_degree(n, i);
    if (i == 0) return dim_forms(n, d);
    if (i == n) return d <= -n - 1 ? dim_forms(n, -d - n - 1) : 0;
    return 0;
}

std::int64_t line_bundle_euler_characteristic(int n, int d) {
    mpz_class num = 1;
    mpz_class den = 1;
    for (int k = 1; k <= n; ++k) {
        num *= d + k;
        den *= k;
    }
    mpz_class q = num / den;
    return q.get_si();
}

std::vector<std::size_t> cohomology_column(const PresentedBundle& e, int m, const Field& field) {
    const int n = e.ambient_dim();
    std::vector<std::size_t> h(static_cast<std::size_t>(n + 1), 0);

    DenseMatrix m0 = h0_map(e, m, field);
    h[0] += cokernel_dim(m0);

    DenseMatrix top = dual_h0_map(e, -m - n - 1, field);
    std::size_t r = rank(top);
    h[static_cast<std::size_t>(n - 1)] += top.rows() - r;
    h[static_cast<std::size_t>(n)] += top.cols() - r;
    return h;
}

std::size_t bundle_cohomology(const PresentedBundle& e, int m, int i, const Field& field) {
    check_degree(e.ambient_dim(), i);
    return cohomology_column(e, m, field)[static_cast<std::size_t>(i)];
}

std::vector<std::size_t> dual_cohomology_column(const PresentedBundle& e, int m,
                                                const Field& field) {
    const int n = e.ambient_dim();
    if (n < 2) throw UnsupportedDimension("dual cohomology is implemented for n >= 2");
    std::vector<std::size_t> h(static_cast<std::size_t>(n + 1), 0);

    DenseMatrix bottom = dual_h0_map(e, m, field);
    std::size_t r = rank(bottom);
    h[0] = bottom.cols() - r;
    h[1] = bottom.rows() - r;

    // H^n(B^dual(m)) -> H^n(A^dual(m)) is the transpose of H^0(A(-m-n-1)) -> H^0(B(-m-n-1)).
    DenseMatrix top = h0_map(e, -m - n - 1, field).transpose();
    h[static_cast<std::size_t>(n)] = kernel_dim(top);
    return h;
}

std::size_t dual_bundle_cohomology(const PresentedBundle& e, int m, int i, const Field& field) {
    check_degree(e.ambient_dim(), i);
    return dual_cohomology_column(e, m, field)[static_cast<std::size_t>(i)];
}

std::int64_t euler_characteristic(const PresentedBundle& e, int m) {
    const int n = e.ambient_dim();
    std::int64_t chi = 0;
    for (int b : e.target_twists()) chi += line_bundle_euler_characteristic(n, b + m);
    for (int a : e.source_twists()) chi -= line_bundle_euler_characteristic(n, a + m);
    return chi;
}

std::optional<int> dual_saturation_degree(const PresentedBundle& e, int max_steps,
                                          const Field& field) {
    int start = *std::max_element(e.target_twists().begin(), e.target_twists().end()) - 1;
    if (!e.source_twists().empty()) {
        start = std::max(start, *std::max_element(e.source_twists().begin(), e.source_twists().end()));
    }
    for (int d = start; d < start + max_steps; ++d) {
        if (cokernel_dim(dual_h0_map(e, d, field)) == 0) return d;
    }
    return std::nullopt;
}

CohomologyTable cohomology_table(const PresentedBundle& e, int m_lo, int m_hi,
                                 const Field& field) {
    if (m_lo > m_hi) throw Error("cohomology_table: empty window");
    const int n = e.ambient_dim();
    CohomologyTable t;
    t.bundle = e.provenance();
    t.field = field;
    t.n = n;
    t.m_lo = m_lo;
    t.m_hi = m_hi;
    t.h.assign(static_cast<std::size_t>(n + 1), {});
    for (int m = m_lo; m <= m_hi; ++m) {
        auto col = cohomology_column(e, m, field);
        std::int64_t alt = 0;
        for (int i = 0; i <= n; ++i) {
            auto v = static_cast<std::int64_t>(col[static_cast<std::size_t>(i)]);
            alt += (i % 2 == 0) ? v : -v;
            t.h[static_cast<std::size_t>(i)].push_back(col[static_cast<std::size_t>(i)]);
        }
        std::int64_t chi = euler_characteristic(e, m);
        if (alt != chi) {
            throw InternalConsistency("alternating sum " + std::to_string(alt) + " != chi " +
                                      std::to_string(chi) + " for " + e.provenance() + " at m=" +
                                      std::to_string(m));
        }
    }
    return t;
}

std::string CohomologyTable::render_text() const {
    std::vector<std::string> labels;
    labels.push_back("k");
    for (int i = n; i >= 0; --i) labels.push_back("h^" + std::to_string(i) + "(E(k))");
    std::size_t label_w = 0;
    for (const auto& l : labels) label_w = std::max(label_w, l.size());

    std::size_t cell_w = 1;
    for (int m = m_lo; m <= m_hi; ++m) cell_w = std::max(cell_w, std::to_string(m).size());
    for (const auto& row : h)
        for (auto v : row) cell_w = std::max(cell_w, std::to_string(v).size());

    std::ostringstream out;
    out << std::left << std::setw(static_cast<int>(label_w)) << labels[0] << " |";
    for (int m = m_lo; m <= m_hi; ++m) out << ' ' << std::right << std::setw(static_cast<int>(cell_w)) << m;
    out << '\n' << std::string(label_w + 2 + (cell_w + 1) * static_cast<std::size_t>(m_hi - m_lo + 1), '-')
        << '\n';
    for (int i = n; i >= 0; --i) {
        out << std::left << std::setw(static_cast<int>(label_w))
            << labels[static_cast<std::size_t>(n - i + 1)] << " |";
        for (auto v : h[static_cast<std::size_t>(i)]) {
            out << ' ' << std::right << std::setw(static_cast<int>(cell_w)) << v;
        }
        out << '\n';
    }
    return out.str();
}

ChernData chern_data(const PresentedBundle& e) {
    if (e.ambient_dim() != 2) {
        throw UnsupportedDimension("chern_data is only implemented on P^2 (n = " +
                                   std::to_string(e.ambient_dim()) + ")");
    }
    // Truncated power series in h: c[0] + c[1] h + c[2] h^2.
    std::array<std::int64_t, 3> c{1, 0, 0};
    auto mul = [&c](std::array<std::int64_t, 3> f) {
        c = {c[0] * f[0], c[0] * f[1] + c[1] * f[0], c[0] * f[2] + c[1] * f[1] + c[2] * f[0]};
    };
    for (int b : e.target_twists()) mul({1, b, 0});
    for (int a : e.source_twists()) mul({1, -a, static_cast<std::int64_t>(a) * a});

    ChernData d;
    d.rank = e.rank();
    d.c1 = c[1];
    d.c2 = c[2];
    mpq_class r(d.rank);
    mpq_class c1(d.c1);
    mpq_class c2(d.c2);
    d.chi_poly[2] = r / 2;
    d.chi_poly[1] = r * 3 / 2 + c1;
    d.chi_poly[0] = c1 * c1 / 2 - c2 + c1 * 3 / 2 + r;
    for (auto& x : d.chi_poly) x.canonicalize();
    return d;
}

}  // namespace mcmcert
