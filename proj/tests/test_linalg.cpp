#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mcmcert/error.hpp"
#include "mcmcert/field.hpp"
#include "mcmcert/matrix.hpp"
#include "mcmcert/random.hpp"
#include "oracles.hpp"

using namespace mcmcert;

namespace {

const Field Q = Field::rationals();

std::vector<std::vector<long>> random_integer_matrix(SeededRng& rng, std::size_t r, std::size_t c,
                                                     long bound, std::size_t target_rank) {
    // Product of r x k and k x c random factors: rank at most k.
    std::vector<std::vector<long>> u(r, std::vector<long>(target_rank)), v(target_rank, std::vector<long>(c));
    for (auto& row : u)
        for (auto& x : row) x = rng.uniform(-bound, bound);
    for (auto& row : v)
        for (auto& x : row) x = rng.uniform(-bound, bound);
    std::vector<std::vector<long>> m(r, std::vector<long>(c, 0));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            for (std::size_t k = 0; k < target_rank; ++k) m[i][j] += u[i][k] * v[k][j];
    return m;
}

DenseMatrix to_matrix(const Field& f, const std::vector<std::vector<long>>& m) {
    DenseMatrix out(f, m.size(), m.empty() ? 0 : m[0].size());
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m[i].size(); ++j) out.set(i, j, mpq_class(m[i][j]));
    return out;
}

oracle::Grid to_grid(const std::vector<std::vector<long>>& m) {
    oracle::Grid g;
    for (const auto& row : m) {
        g.emplace_back();
        for (long x : row) g.back().emplace_back(x);
    }
    return g;
}

}  // namespace

TEST_CASE("rank of small fixed matrices") {
    CHECK(rank(DenseMatrix::identity(Q, 3)) == 3);
    CHECK(rank(DenseMatrix(Q, 4, 2)) == 0);
    CHECK(rank(DenseMatrix::from_integers(Q, {{1, 2}, {2, 4}})) == 1);
    CHECK(rank(DenseMatrix(Q, 0, 5)) == 0);
    CHECK(rank(DenseMatrix(Q, 5, 0)) == 0);
}

TEST_CASE("kernel and cokernel dimensions") {
    CHECK(kernel_dim(DenseMatrix::identity(Q, 3)) == 0);
    CHECK(cokernel_dim(DenseMatrix(Q, 2, 5)) == 2);
    CHECK(kernel_dim(DenseMatrix::from_integers(Q, {{1, 1}, {1, 1}})) == 1);
}

TEST_CASE("rational entries are kept in lowest terms") {
    DenseMatrix m(Q, 1, 1);
    m.set(0, 0, mpq_class(6, 4));
    CHECK(m.at(0, 0).rational().get_num() == 3);
    CHECK(m.at(0, 0).rational().get_den() == 2);
    m.set(0, 0, mpq_class(-3, 6));
    CHECK(m.at(0, 0).rational().get_den() == 2);
    CHECK(m.at(0, 0).rational().get_num() == -1);
}

TEST_CASE("prime field residues and arithmetic") {
    Field f = Field::prime(1000003);
    Scalar a(f, -1L);
    CHECK(a.residue() == 1000002);
    Scalar half(f, mpq_class(1, 2));
    CHECK((half * Scalar(f, 2L)) == Scalar::one(f));
    CHECK((a * a) == Scalar::one(f));
    CHECK_THROWS_AS(Scalar::zero(f).inverse(), ArithmeticError);
    CHECK_THROWS_AS(Scalar(f, mpq_class(1, 1000003)), ArithmeticError);
}

TEST_CASE("field parsing and validation") {
    CHECK(Field::parse("rationals").is_rational());
    CHECK(Field::parse("q").is_rational());
    CHECK(Field::parse("prime:1000003").characteristic() == 1000003);
    CHECK_THROWS_AS(Field::prime(2), ArithmeticError);
    CHECK_THROWS_AS(Field::prime(1000001), ArithmeticError);
    CHECK_THROWS_AS(Field::parse("reals"), Error);
    auto p = Field::random_prime(7);
    CHECK(p.characteristic() > (1ULL << 30));
    CHECK(p.characteristic() < (1ULL << 31));
    CHECK(Field::random_prime(7) == p);
}

TEST_CASE("mixing fields is rejected") {
    Field f = Field::prime(101);
    CHECK_THROWS_AS(Scalar(Q, 1L) + Scalar(f, 1L), FieldMismatch);
    CHECK_THROWS_AS(Scalar(Field::prime(103), 1L) * Scalar(f, 1L), FieldMismatch);
    DenseMatrix m(Q, 1, 1);
    CHECK_THROWS_AS(m.set(0, 0, Scalar(f, 1L)), FieldMismatch);
    CHECK_THROWS_AS(DenseMatrix::from_rows(Q, {{Scalar(Q, 1L), Scalar(f, 1L)}}), FieldMismatch);
    CHECK_THROWS_AS(DenseMatrix(Q, 1, 1) * DenseMatrix(f, 1, 1), FieldMismatch);
}

TEST_CASE("rank agrees with schoolbook elimination on random low-rank matrices") {
    SeededRng rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        auto r = static_cast<std::size_t>(rng.uniform(1, 12));
        auto c = static_cast<std::size_t>(rng.uniform(1, 12));
        auto k = static_cast<std::size_t>(rng.uniform(0, 8));
        auto m = random_integer_matrix(rng, r, c, 9, k);
        auto want = oracle::rank(to_grid(m));
        DenseMatrix dm = to_matrix(Q, m);
        CHECK(rank(dm) == want);
        CHECK(bareiss_rank(dm) == want);
    }
}

TEST_CASE("rank handles rational entries and large numerators") {
    SeededRng rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        oracle::Grid g(6, std::vector<mpq_class>(7));
        DenseMatrix m(Q, 6, 7);
        for (std::size_t i = 0; i < 6; ++i) {
            for (std::size_t j = 0; j < 7; ++j) {
                mpq_class v(rng.uniform(-1000000, 1000000), rng.uniform(1, 97));
                v.canonicalize();
                if (j == 6) v = g[i][0] * 3 - g[i][1] / 5;  // dependent column
                g[i][j] = v;
                m.set(i, j, v);
            }
        }
        CHECK(rank(m) == oracle::rank(g));
        CHECK(rank(m) <= 6);
    }
}

TEST_CASE("property: rank equals rank of transpose") {
    SeededRng rng(21);
    for (int trial = 0; trial < 30; ++trial) {
        auto r = static_cast<std::size_t>(rng.uniform(1, 10));
        auto c = static_cast<std::size_t>(rng.uniform(1, 10));
        auto m = to_matrix(Q, random_integer_matrix(rng, r, c, 5, static_cast<std::size_t>(rng.uniform(0, 6))));
        CHECK(rank(m) == rank(m.transpose()));
        Field f = Field::prime(1000003);
        CHECK(rank(m.reduce_mod(f)) == rank(m.transpose().reduce_mod(f)));
    }
}

TEST_CASE("property: kernel plus rank equals columns") {
    SeededRng rng(31);
    for (int trial = 0; trial < 30; ++trial) {
        auto r = static_cast<std::size_t>(rng.uniform(0, 9));
        auto c = static_cast<std::size_t>(rng.uniform(0, 9));
        auto m = to_matrix(Q, random_integer_matrix(rng, r, c, 5, static_cast<std::size_t>(rng.uniform(0, 5))));
        CHECK(kernel_dim(m) + rank(m) == m.cols());
        CHECK(cokernel_dim(m) + rank(m) == m.rows());
        auto basis = kernel_basis(m);
        CHECK(basis.size() == kernel_dim(m));
        for (const auto& v : basis) {
            DenseMatrix col(Q, v.size(), 1);
            for (std::size_t i = 0; i < v.size(); ++i) col.set(i, 0, v[i]);
            CHECK(rank(m * col) == 0);
        }
    }
}

TEST_CASE("property: rank over Q dominates rank mod p, with equality for large primes") {
    SeededRng rng(41);
    const std::uint64_t primes[] = {1000003, 1000000007ULL, 2305843009213693951ULL};
    for (int trial = 0; trial < 25; ++trial) {
        auto r = static_cast<std::size_t>(rng.uniform(1, 9));
        auto c = static_cast<std::size_t>(rng.uniform(1, 9));
        auto ints = random_integer_matrix(rng, r, c, 50, static_cast<std::size_t>(rng.uniform(0, 7)));
        auto m = to_matrix(Q, ints);
        std::size_t rq = rank(m);
        for (auto p : primes) {
            std::size_t rp = rank(m.reduce_mod(Field::prime(p)));
            CHECK(rp <= rq);
            CHECK(rp == rq);
            CHECK(rp == oracle::rank_mod(ints, p));
        }
    }
}

TEST_CASE("reduction mod a small prime can drop the rank") {
    // det = 6, singular mod 2 and mod 3 only.
    auto m = DenseMatrix::from_integers(Q, {{2, 0}, {0, 3}});
    CHECK(rank(m) == 2);
    CHECK(rank(m.reduce_mod(Field::prime(3))) == 1);
    CHECK(rank(m.reduce_mod(Field::prime(5))) == 2);
}

TEST_CASE("modular shortcut and Bareiss agree near the 2^61-1 boundary") {
    // Columns proportional modulo 2^61-1 but not over Q.
    const long big = (1L << 61) - 1;
    DenseMatrix m(Q, 2, 2);
    m.set(0, 0, mpq_class(1));
    m.set(0, 1, mpq_class(1));
    m.set(1, 0, mpq_class(1));
    m.set(1, 1, mpq_class(big) + 1);
    CHECK(rank(m) == 2);
    CHECK(bareiss_rank(m) == 2);
}

TEST_CASE("determinant matches Leibniz expansion") {
    SeededRng rng(51);
    for (int trial = 0; trial < 20; ++trial) {
        auto n = static_cast<std::size_t>(rng.uniform(0, 5));
        oracle::Grid g(n, std::vector<mpq_class>(n));
        DenseMatrix m(Q, n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                mpq_class v(rng.uniform(-9, 9), rng.uniform(1, 4));
                v.canonicalize();
                g[i][j] = v;
                m.set(i, j, v);
            }
        CHECK(determinant(m).rational() == oracle::det(g));
        Field f = Field::prime(1000003);
        CHECK(determinant(m.reduce_mod(f)) == Scalar(f, oracle::det(g)));
    }
}

TEST_CASE("rank leaves its argument untouched") {
    auto m = DenseMatrix::from_integers(Q, {{1, 2, 3}, {4, 5, 6}, {7, 8, 9}});
    for (int i = 0; i < 5; ++i) CHECK(rank(m) == 2);
    CHECK(m == DenseMatrix::from_integers(Q, {{1, 2, 3}, {4, 5, 6}, {7, 8, 9}}));
}
