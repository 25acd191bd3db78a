// Independent reference computations used by the tests. Nothing here calls
// the engine's elimination, monomial-basis or block-assembly code.
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <vector>

#include <gmpxx.h>

#include "mcmcert/bundle.hpp"
#include "mcmcert/constructors.hpp"
#include "mcmcert/random.hpp"

namespace oracle {

using Grid = std::vector<std::vector<mpq_class>>;

// Schoolbook Gauss-Jordan over Q.
inline std::size_t rank(Grid m) {
    std::size_t r = 0;
    const std::size_t rows = m.size();
    const std::size_t cols = rows ? m[0].size() : 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && m[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(m[p], m[r]);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            mpq_class f = m[i][c] / m[r][c];
            for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        ++r;
    }
    return r;
}

inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
    unsigned __int128 x = a % p, acc = 1;
    while (e) {
        if (e & 1) acc = acc * x % p;
        x = x * x % p;
        e >>= 1;
    }
    return static_cast<std::uint64_t>(acc);
}

// Rank over F_p of an integer matrix, inverses by Fermat.
inline std::size_t rank_mod(const std::vector<std::vector<long>>& in, std::uint64_t p) {
    std::vector<std::vector<std::uint64_t>> m;
    for (const auto& row : in) {
        std::vector<std::uint64_t> r;
        for (long v : row) r.push_back(static_cast<std::uint64_t>(((v % static_cast<long>(p)) + static_cast<long>(p)) % static_cast<long>(p)));
        m.push_back(r);
    }
    std::size_t r = 0;
    const std::size_t rows = m.size();
    const std::size_t cols = rows ? m[0].size() : 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && m[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[piv], m[r]);
        std::uint64_t inv = powmod(m[r][c], p - 2, p);
        for (std::size_t i = r + 1; i < rows; ++i) {
            if (m[i][c] == 0) continue;
            std::uint64_t f = static_cast<std::uint64_t>(static_cast<unsigned __int128>(m[i][c]) * inv % p);
            for (std::size_t j = c; j < cols; ++j) {
                std::uint64_t sub = static_cast<std::uint64_t>(static_cast<unsigned __int128>(f) * m[r][j] % p);
                m[i][j] = (m[i][j] + p - sub) % p;
            }
        }
        ++r;
    }
    return r;
}

// Leibniz expansion; only for tiny matrices.
inline mpq_class det(const Grid& m) {
    const std::size_t n = m.size();
    if (n == 0) return 1;
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    mpq_class total = 0;
    do {
        int inversions = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (perm[i] > perm[j]) ++inversions;
        mpq_class term = inversions % 2 ? -1 : 1;
        for (std::size_t i = 0; i < n; ++i) term *= m[i][perm[i]];
        total += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

inline long binom(long a, long b) {
    if (b < 0 || a < b) return 0;
    long r = 1;
    for (long k = 1; k <= b; ++k) r = r * (a - b + k) / k;
    return r;
}

// Every exponent vector of degree d in n+1 variables, via odometer over
// [0, d]^{n+1}, sorted so that x0^d comes first (graded lex, x0 > ... > xn).
inline std::vector<std::vector<int>> monomials(int n, int d) {
    std::vector<std::vector<int>> out;
    if (d < 0) return out;
    std::vector<int> e(static_cast<std::size_t>(n + 1), 0);
    for (;;) {
        int s = 0;
        for (int v : e) s += v;
        if (s == d) out.push_back(e);
        std::size_t i = 0;
        while (i < e.size() && e[i] == d) e[i++] = 0;
        if (i == e.size()) break;
        ++e[i];
    }
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

// Matrix of multiplication by f from degree d to degree d + deg f.
inline Grid multiplication(const mcmcert::HomogeneousForm& f, int d) {
    int n = f.ambient_dim();
    auto src = monomials(n, d);
    auto dst = monomials(n, d + f.degree());
    std::map<std::vector<int>, std::size_t> index;
    for (std::size_t i = 0; i < dst.size(); ++i) index[dst[i]] = i;
    Grid m(dst.size(), std::vector<mpq_class>(src.size(), 0));
    if (f.is_zero()) return m;
    for (std::size_t c = 0; c < src.size(); ++c) {
        for (const auto& [e, coeff] : f.terms()) {
            std::vector<int> prod(e.size());
            for (std::size_t k = 0; k < e.size(); ++k) prod[k] = src[c][k] + e[k];
            m[index.at(prod)][c] += coeff;
        }
    }
    return m;
}

// (+)_j Forms(src_j + m) -> (+)_i Forms(tgt_i + m) given by the grid g[i][j].
inline Grid assemble(const std::vector<std::vector<mcmcert::HomogeneousForm>>& g,
                     const std::vector<int>& src, const std::vector<int>& tgt, int m, int n) {
    std::vector<std::size_t> row_off{0}, col_off{0};
    for (int b : tgt) row_off.push_back(row_off.back() + monomials(n, b + m).size());
    for (int a : src) col_off.push_back(col_off.back() + monomials(n, a + m).size());
    Grid out(row_off.back(), std::vector<mpq_class>(col_off.back(), 0));
    for (std::size_t i = 0; i < tgt.size(); ++i) {
        for (std::size_t j = 0; j < src.size(); ++j) {
            if (src[j] + m < 0 || tgt[i] + m < 0) continue;
            auto blk = multiplication(g[i][j], src[j] + m);
            for (std::size_t r = 0; r < blk.size(); ++r)
                for (std::size_t c = 0; c < blk[r].size(); ++c) out[row_off[i] + r][col_off[j] + c] = blk[r][c];
        }
    }
    return out;
}

// h^i(E(m)) from the long exact sequence of 0 -> A -> B -> E -> 0, with the
// H^n level read off the Serre-dual map (+) H^0(B^v(-m-n-1)) -> (+) H^0(A^v(-m-n-1)).
inline std::vector<std::size_t> cohomology(const mcmcert::PresentedBundle& e, int m) {
    const int n = e.ambient_dim();
    const auto& a = e.source_twists();
    const auto& b = e.target_twists();
    std::vector<std::size_t> h(static_cast<std::size_t>(n + 1), 0);
    Grid m0 = assemble(e.phi(), a, b, m, n);
    h[0] += m0.size() - rank(m0);

    std::vector<std::vector<mcmcert::HomogeneousForm>> phit(a.size(), std::vector<mcmcert::HomogeneousForm>(b.size()));
    for (std::size_t i = 0; i < b.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) phit[j][i] = e.phi()[i][j];
    std::vector<int> na, nb;
    for (int x : a) na.push_back(-x);
    for (int x : b) nb.push_back(-x);
    Grid top = assemble(phit, nb, na, -m - n - 1, n);
    std::size_t cols = 0;
    for (int x : nb) cols += monomials(n, x - m - n - 1).size();
    std::size_t r = rank(top);
    h[static_cast<std::size_t>(n - 1)] += top.size() - r;
    h[static_cast<std::size_t>(n)] += cols - r;
    return h;
}

// chi(O_{P^n}(d)) = C(d+n, n) as a polynomial in d.
inline mpq_class chi_line(int n, int d) {
    mpq_class v = 1;
    for (int k = 1; k <= n; ++k) {
        mpq_class f(d + k, k);
        f.canonicalize();
        v *= f;
    }
    return v;
}

// c1 = sum b - sum a, c2 = (c1^2 - 2 ch2) / 2 with ch2 = (sum b^2 - sum a^2) / 2.
struct Chern {
    long c1;
    long c2;
};
inline Chern chern(const std::vector<int>& a, const std::vector<int>& b) {
    long c1 = 0, s2 = 0;
    for (int x : b) {
        c1 += x;
        s2 += static_cast<long>(x) * x;
    }
    for (int x : a) {
        c1 -= x;
        s2 -= static_cast<long>(x) * x;
    }
    return {c1, (c1 * c1 - s2) / 2};
}

// A random presentation with small twists whose entries all have degree 1..3.
inline mcmcert::PresentedBundle random_bundle(int n, std::uint64_t seed) {
    mcmcert::SeededRng rng(seed);
    int s = static_cast<int>(rng.uniform(0, 2));
    int q = s + static_cast<int>(rng.uniform(1, 3));
    int base = static_cast<int>(rng.uniform(-2, 1));
    std::vector<int> a, b;
    for (int j = 0; j < s; ++j) a.push_back(base - static_cast<int>(rng.uniform(1, 2)));
    for (int i = 0; i < q; ++i) b.push_back(base + static_cast<int>(rng.uniform(0, 1)));
    return mcmcert::random_presentation(n, a, b, rng.next(), "random(n=" + std::to_string(n) + ",seed=" + std::to_string(seed) + ")");
}

}  // namespace oracle
