#include <doctest.h>

#include "diophlab/matrix.hpp"
#include "diophlab/util.hpp"

using namespace diophlab;

namespace {

RatMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, long num = 9,
                        long den = 9) {
    RatMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = rng.rational(num, den);
    return m;
}

// Independent oracle: plain rational Gauss elimination, counting pivots.
std::size_t rank_oracle(RatMatrix a) {
    std::size_t rank = 0;
    for (std::size_t c = 0; c < a.cols() && rank < a.rows(); ++c) {
        std::size_t piv = rank;
        while (piv < a.rows() && a(piv, c) == 0) ++piv;
        if (piv == a.rows()) continue;
        for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(piv, j), a(rank, j));
        for (std::size_t i = rank + 1; i < a.rows(); ++i) {
            if (a(i, c) == 0) continue;
            const Rational f = a(i, c) / a(rank, c);
            for (std::size_t j = c; j < a.cols(); ++j) a(i, j) -= f * a(rank, j);
        }
        ++rank;
    }
    return rank;
}

// Independent oracle: cofactor expansion along the first row.
Rational det_oracle(const RatMatrix& m) {
    const std::size_t n = m.rows();
    if (n == 1) return m(0, 0);
    Rational acc(0);
    for (std::size_t k = 0; k < n; ++k) {
        if (m(0, k) == 0) continue;
        RatMatrix sub(n - 1, n - 1);
        for (std::size_t i = 1; i < n; ++i) {
            std::size_t jj = 0;
            for (std::size_t j = 0; j < n; ++j) {
                if (j == k) continue;
                sub(i - 1, jj++) = m(i, j);
            }
        }
        const Rational piece = m(0, k) * det_oracle(sub);
        acc += (k % 2 == 0) ? piece : -piece;
    }
    return acc;
}

} // namespace

TEST_CASE("rank_exact basics") {
    CHECK(rank_exact(RatMatrix::identity(2)) == 2);
    CHECK(rank_exact(RatMatrix(3, 4)) == 0);
}

TEST_CASE("rank_exact agrees with an independent elimination oracle") {
    Rng rng(101);
    for (int trial = 0; trial < 50; ++trial) {
        const RatMatrix m = random_matrix(rng, 4, 6);
        CHECK(rank_exact(m) == rank_oracle(m));
    }
}

TEST_CASE("rank is invariant under transposition") {
    Rng rng(102);
    for (int trial = 0; trial < 30; ++trial) {
        const RatMatrix m = random_matrix(rng, 2 + trial % 3, 2 + (trial / 3) % 4);
        CHECK(rank_exact(m) == rank_exact(m.transpose()));
    }
}

TEST_CASE("det_exact basics") {
    CHECK(det_exact(RatMatrix::identity(3)) == 1);
    CHECK_THROWS_AS(det_exact(RatMatrix(2, 3)), NotSquare);
}

TEST_CASE("det_exact: 1x1 pencil matches the 2x2 block with the corrected sign") {
    // A=(2), B=(3), Y=(5): det(AY+B) = 13 = det [[1, 5], [-2, 3]]
    RatMatrix block(2, 2);
    block(0, 0) = 1;
    block(0, 1) = 5;
    block(1, 0) = -2;
    block(1, 1) = 3;
    CHECK(det_exact(block) == 13);
}

TEST_CASE("det_exact agrees with cofactor expansion") {
    Rng rng(103);
    for (int trial = 0; trial < 40; ++trial) {
        const RatMatrix m = random_matrix(rng, 4, 4);
        CHECK(det_exact(m) == det_oracle(m));
    }
}

TEST_CASE("det is multiplicative") {
    Rng rng(104);
    for (int trial = 0; trial < 25; ++trial) {
        const RatMatrix a = random_matrix(rng, 3, 3);
        const RatMatrix b = random_matrix(rng, 3, 3);
        CHECK(det_exact(a * b) == det_exact(a) * det_exact(b));
    }
}

TEST_CASE("nullspace_basis basics") {
    CHECK(nullspace_basis(RatMatrix::identity(2)).empty());

    RatMatrix m(1, 2);
    m(0, 0) = 1;
    m(0, 1) = 1;
    const auto basis = nullspace_basis(m);
    REQUIRE(basis.size() == 1);
    CHECK(basis[0] == IntVector{Integer(1), Integer(-1)});
}

TEST_CASE("nullspace vectors satisfy M v = 0 exactly and are coprime") {
    Rng rng(105);
    for (int trial = 0; trial < 25; ++trial) {
        RatMatrix m = random_matrix(rng, 3, 5);
        if (rank_exact(m) != 3) continue;
        const auto basis = nullspace_basis(m);
        CHECK(basis.size() == 2);
        for (const auto& v : basis) {
            Integer g(0);
            for (const auto& x : v) g = gcd_int(g, x);
            CHECK(g == 1);
            for (std::size_t i = 0; i < 3; ++i) {
                Rational dot(0);
                for (std::size_t j = 0; j < 5; ++j) dot += m(i, j) * Rational(v[j]);
                CHECK(dot == 0);
            }
        }
    }
}

TEST_CASE("inverse_exact round trip") {
    Rng rng(106);
    for (int trial = 0; trial < 15; ++trial) {
        RatMatrix m = random_matrix(rng, 3, 3);
        if (det_exact(m) == 0) continue;
        CHECK(m * inverse_exact(m) == RatMatrix::identity(3));
    }
    RatMatrix sing(2, 2);
    sing(0, 0) = 1;
    sing(0, 1) = 2;
    sing(1, 0) = 2;
    sing(1, 1) = 4;
    CHECK_THROWS_AS(inverse_exact(sing), RankDeficient);
}

TEST_CASE("hnf_rows is a canonical form for the left GL(Z) action") {
    Rng rng(107);
    for (int trial = 0; trial < 30; ++trial) {
        IntMatrix a(2, 4);
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 4; ++j) a(i, j) = Integer(rng.range(-3, 3));
        if (rank_exact(to_rational(a)) != 2) continue;
        // multiply by a random unimodular 2x2 on the left
        IntMatrix u(2, 2);
        const long k = rng.range(-2, 2);
        u(0, 0) = 1;
        u(0, 1) = k;
        u(1, 0) = 0;
        u(1, 1) = 1;
        if (rng.range(0, 1)) {
            std::swap(u(0, 0), u(1, 0));
            std::swap(u(0, 1), u(1, 1));
        }
        const IntMatrix b = u * a;
        CHECK(hnf_rows(a) == hnf_rows(b));
    }
}

TEST_CASE("rationals: parsing, formatting, rounding") {
    CHECK(rat_to_string(Rational(-3, 6)) == "-1/2");
    CHECK(rat_from_string("7/2") == Rational(7, 2));
    CHECK(rat_from_string("-4") == Rational(-4));
    CHECK_THROWS_AS(rat_from_string("1/0"), ParseError);

    CHECK(round_half_toward_zero(Rational(1, 2)) == 0);
    CHECK(round_half_toward_zero(Rational(-1, 2)) == 0);
    CHECK(round_half_toward_zero(Rational(3, 2)) == 1);
    CHECK(round_half_toward_zero(Rational(-3, 2)) == -1);
    CHECK(round_half_toward_zero(Rational(2, 5)) == 0);
    CHECK(round_half_toward_zero(Rational(-8, 5)) == -2);

    CHECK(rat_to_decimal(Rational(1, 3), 6) == "0.333333");
    CHECK(rat_to_decimal(Rational(-1, 2), 2) == "-0.50");
    CHECK(root_decimal(Rational(2), 2, 6) == "1.414213");
}

TEST_CASE("cmp_pow compares against rational powers exactly") {
    // 1/8 < 2^{-5/2} < 1/4
    CHECK(cmp_pow(Rational(1, 8), Rational(2), Rational(-5, 2)) < 0);
    CHECK(cmp_pow(Rational(1, 4), Rational(2), Rational(-5, 2)) > 0);
    CHECK(cmp_pow(Rational(1, 4), Rational(2), Rational(-2)) == 0);
    CHECK(cmp_pow(Rational(3), Rational(9), Rational(1, 2)) == 0);
}
