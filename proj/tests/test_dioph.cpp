#include <doctest.h>

#include "diophlab/dioph.hpp"
#include "diophlab/util.hpp"

using namespace diophlab;

namespace {

RatMatrix mat1x1(const Rational& y) { return RatMatrix(1, 1, {y}); }

RatMatrix random_rat(Rng& rng, std::size_t r, std::size_t c, long num = 9, long den = 9) {
    RatMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = rng.rational(num, den);
    return m;
}

} // namespace

TEST_CASE("best_p rounds rowwise to the nearest integer, ties toward zero") {
    RatMatrix Y(2, 1);
    Y(0, 0) = Rational(2, 5);   // 0.4
    Y(1, 0) = Rational(-8, 5);  // -1.6
    const IntVector p = best_p(Y, {Integer(1)}, InhomShift{});
    CHECK(p == IntVector{Integer(0), Integer(-2)});

    // integral values give zero errors
    const IntVector p2 = best_p(RatMatrix::identity(2), {Integer(3), Integer(-7)}, InhomShift{});
    CHECK(p2 == IntVector{Integer(3), Integer(-7)});

    CHECK_THROWS_AS(best_p(Y, {Integer(0)}, InhomShift{}), Error);
}

TEST_CASE("best_p beats every neighbouring p rowwise") {
    Rng rng(601);
    for (int trial = 0; trial < 20; ++trial) {
        const RatMatrix Y = random_rat(rng, 2, 2);
        InhomShift z;
        z.z = {rng.rational(5, 5), rng.rational(5, 5)};
        IntVector q{Integer(rng.range(-9, 9)), Integer(rng.range(-9, 9))};
        if (q[0] == 0 && q[1] == 0) q[0] = 1;
        const IntVector p = best_p(Y, q, z);
        for (std::size_t j = 0; j < 2; ++j) {
            Rational v = z.z[j];
            for (std::size_t i = 0; i < 2; ++i) v += Y(j, i) * Rational(q[i]);
            const Rational err = abs_rat(v - Rational(p[j]));
            for (long d = -1; d <= 1; ++d)
                CHECK(err <= abs_rat(v - Rational(p[j] + d)));
        }
    }
}

TEST_CASE("scan_vwa on rational y hits the infinite-epsilon sentinel") {
    const ScanResult scan = scan_vwa(mat1x1(Rational(3, 4)), InhomShift{}, Integer(256));
    REQUIRE(!scan.shells.empty());
    const Shell& last = scan.shells.back();
    CHECK(last.eps_infinite);
    CHECK(scan.integrality_event);
    // q = 4 clears the denominator: |3/4 * 4 - 3| = 0
    CHECK(scan.shells.size() == 2); // shells Q=2 (best err 1/4), Q=4 (err 0)
}

TEST_CASE("scan_vwa: y=1/2, z=1/4 stays a quarter away from the integers") {
    InhomShift z;
    z.z = {Rational(1, 4)};
    const ScanResult scan = scan_vwa(mat1x1(Rational(1, 2)), z, Integer(1 << 10));
    for (const auto& sh : scan.shells) {
        CHECK_FALSE(sh.eps_infinite);
        // |q/2 + 1/4 - p| >= 1/4 always, so eps* = -1 + log2(4)/t = -1 + 2/t
        const Rational expect = Rational(-1) + Rational(2, sh.t);
        CHECK(sh.eps_low <= expect);
        CHECK(expect <= sh.eps_high + Rational(1, 1024));
        // exactness: the reported inequality holds at eps_low
        CHECK(cmp_pow(sh.witness.row_errors[0], Rational(2),
                      Rational(-sh.t) * (1 + sh.eps_low)) < 0);
    }
}

TEST_CASE("scan_vwa per-shell epsilon is nonnegative for rational targets (m=n=1)") {
    Rng rng(602);
    for (int trial = 0; trial < 10; ++trial) {
        Rational y = rng.rational(9, 9);
        const ScanResult scan = scan_vwa(mat1x1(y), InhomShift{}, Integer(1 << 12));
        for (const auto& sh : scan.shells) {
            if (sh.eps_infinite) break;
            CHECK(sh.eps_low >= 0);
        }
    }
}

TEST_CASE("scan_vwma comparison (e:003): multiplicative beats the norm form") {
    Rng rng(603);
    const RatMatrix Y = random_rat(rng, 2, 2, 9, 7);
    const ScanResult vwa = scan_vwa(Y, InhomShift{}, Integer(256));
    const ScanResult vwma = scan_vwma(Y, InhomShift{}, Integer(256));
    // per shell: Pi_+(q) <= ||q||^n and Pi(err) <= ||err||^m, so the
    // multiplicative best epsilon dominates the vwa one
    for (std::size_t k = 0; k < std::min(vwa.shells.size(), vwma.shells.size()); ++k) {
        if (vwa.shells[k].eps_infinite || vwma.shells[k].eps_infinite) break;
        CHECK(vwma.shells[k].eps_low + Rational(1, 1024) >= vwa.shells[k].eps_low);
    }
    // and the witnesses satisfy the comparison inequalities themselves
    for (const auto& sh : vwa.shells) {
        Integer piplus(1);
        Rational norm2(0);
        for (const auto& qi : sh.witness.q) {
            piplus *= abs_int(qi) > 1 ? abs_int(qi) : Integer(1);
            norm2 += Rational(qi * qi);
        }
        CHECK(Rational(piplus * piplus) <= pow_rat(norm2, 2)); // Pi+^2 <= (||q||^2)^n
    }
}

TEST_CASE("scan_vwma: Y = 0 gives the infinite flag immediately") {
    const ScanResult scan = scan_vwma(RatMatrix(2, 2), InhomShift{}, Integer(4));
    REQUIRE(!scan.shells.empty());
    CHECK(scan.shells[0].eps_infinite);
}

TEST_CASE("scan_rvwa with r=(1;1) is the strict-box variant of scan_vwa") {
    // the weighted region is |q| < Q (strict), the vwa one |q| <= Q; the
    // row predicates agree, so per shell the weighted epsilon can only
    // lose to vwa, and only when the vwa argmax sat on the boundary
    const WeightTuple r(RatVector{Rational(1), Rational(1)}, 1, 1);
    const Rational y(5, 8);
    const ScanResult a = scan_rvwa(mat1x1(y), InhomShift{}, r, Integer(64));
    const ScanResult b = scan_vwa(mat1x1(y), InhomShift{}, Integer(64));
    for (std::size_t k = 0; k < std::min(a.shells.size(), b.shells.size()); ++k) {
        if (a.shells[k].eps_infinite || b.shells[k].eps_infinite) break;
        CHECK(a.shells[k].eps_low <= b.shells[k].eps_low);
        const Integer qa = abs_int(b.shells[k].witness.q[0]);
        if (Rational(qa) < pow_rat(Rational(2), a.shells[k].t))
            CHECK(a.shells[k].eps_low == b.shells[k].eps_low);
    }
    // both scans eventually flag the exact event of the rational target
    CHECK(a.shells.back().eps_infinite);
    CHECK(b.shells.back().eps_infinite);
}

TEST_CASE("scan_rvwa zero tail weight forces that coordinate to zero") {
    Rng rng(604);
    const RatMatrix Y = random_rat(rng, 1, 2, 7, 5);
    const WeightTuple r(RatVector{Rational(1), Rational(1), Rational(0)}, 1, 2);
    const ScanResult scan = scan_rvwa(Y, InhomShift{}, r, Integer(64));
    for (const auto& sh : scan.shells) CHECK(sh.witness.q[1] == 0);
}

TEST_CASE("weight tuple validation") {
    CHECK_THROWS_AS(WeightTuple(RatVector{Rational(1, 2), Rational(1)}, 1, 1), InvalidWeights);
    CHECK_THROWS_AS(WeightTuple(RatVector{Rational(-1), Rational(2), Rational(1)}, 2, 1),
                    InvalidWeights);
}

TEST_CASE("rvwa witnesses are vwma witnesses at the same Q") {
    // any weighted witness satisfies the multiplicative inequality: the
    // product of row bounds is Q^{-(1+eps)} and the box bound gives
    // Pi_+(q) <= Q
    Rng rng(605);
    const RatMatrix Y = random_rat(rng, 2, 2, 9, 7);
    const WeightTuple r(
        RatVector{Rational(1, 2), Rational(1, 2), Rational(1, 2), Rational(1, 2)}, 2, 2);
    const ScanResult scan = scan_rvwa(Y, InhomShift{}, r, Integer(256));
    for (const auto& sh : scan.shells) {
        if (sh.eps_infinite) break;
        Rational prod(1);
        for (const auto& e : sh.witness.row_errors) prod *= e;
        Integer piplus(1);
        for (const auto& qi : sh.witness.q)
            piplus *= abs_int(qi) > 1 ? abs_int(qi) : Integer(1);
        CHECK(Rational(piplus) <= sh.witness.Q);
        if (prod != 0)
            CHECK(cmp_pow(prod, Rational(2), Rational(-sh.t) * (1 + sh.eps_low)) < 0);
    }
}

TEST_CASE("exponent_curve is the monotone envelope and stops at +inf") {
    const ScanResult scan = scan_vwa(mat1x1(Rational(3, 4)), InhomShift{}, Integer(1 << 8));
    const auto rows = exponent_curve(scan);
    CHECK(rows.size() == scan.shells.size());
    CHECK(rows.back().eps_infinite);
    CHECK_THROWS_AS(exponent_curve(ScanResult{}), EmptyScan);

    // single-shell scan gives a single row
    const ScanResult one = scan_vwa(mat1x1(Rational(1, 3)), InhomShift{}, Integer(2));
    CHECK(exponent_curve(one).size() == 1);
}

TEST_CASE("golden-ratio truncation: final epsilon lands near zero") {
    // convergent of 1/phi with denominator F_46 > 2^30
    const Integer f45("1134903170"), f46("1836311903");
    const Rational y(f45, f46);
    const ScanResult scan = scan_vwa(mat1x1(y), InhomShift{}, Integer(1 << 20));
    REQUIRE(scan.shells.size() == 20);
    const Shell& last = scan.shells.back();
    REQUIRE_FALSE(last.eps_infinite);
    CHECK(last.eps_low >= Rational(-5, 100));
    CHECK(last.eps_low <= Rational(5, 100));
}
