#include <doctest.h>

#include "diophlab/flow.hpp"
#include "diophlab/util.hpp"

using namespace diophlab;

namespace {

FlowTuple ft(std::initializer_list<long> head, std::initializer_list<long> tail) {
    RatVector v;
    for (long x : head) v.emplace_back(x);
    for (long x : tail) v.emplace_back(x);
    return FlowTuple(v, head.size(), tail.size());
}

// random integral cone point: head entries 1..4, tail balanced
FlowTuple random_integral_tuple(Rng& rng, std::size_t m, std::size_t n) {
    while (true) {
        RatVector v(m + n);
        long head = 0;
        for (std::size_t i = 0; i < m; ++i) {
            const long x = rng.range(1, 4) * static_cast<long>(n);
            v[i] = Rational(x);
            head += x;
        }
        if (head % static_cast<long>(n) != 0) continue;
        for (std::size_t j = 0; j < n; ++j) v[m + j] = Rational(head / static_cast<long>(n));
        return FlowTuple(v, m, n);
    }
}

} // namespace

TEST_CASE("flow tuple validation") {
    CHECK_THROWS_AS(ft({1}, {2}), InvalidFlowTuple);
    CHECK_THROWS_AS(FlowTuple(RatVector{Rational(0), Rational(0)}, 1, 1), InvalidFlowTuple);
    const FlowTuple ok = ft({1, 1}, {2});
    CHECK(ok.is_integral());
}

TEST_CASE("flow_matrix: m=n=1, t=(1,1) is diag(2, 1/2)") {
    const RatMatrix g = flow_matrix(ft({1}, {1}));
    CHECK(g(0, 0) == 2);
    CHECK(g(1, 1) == Rational(1, 2));
    CHECK(det_exact(g) == 1);
    CHECK_THROWS_AS(flow_matrix(FlowTuple(RatVector{Rational(1, 2), Rational(1, 2)}, 1, 1)),
                    NonDyadicExponent);
}

TEST_CASE("flow matrices are unimodular on random cone points") {
    Rng rng(801);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t m = 1 + static_cast<std::size_t>(rng.range(0, 1));
        const std::size_t n = 1 + static_cast<std::size_t>(rng.range(0, 1));
        CHECK(det_exact(flow_matrix(random_integral_tuple(rng, m, n))) == 1);
    }
}

TEST_CASE("grade eigenvalue law matches the exterior power action") {
    Rng rng(802);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t m = 1 + static_cast<std::size_t>(rng.range(0, 1));
        const std::size_t n = 1 + static_cast<std::size_t>(rng.range(0, 1));
        const FlowTuple t = random_integral_tuple(rng, m, n);
        const RatMatrix g = flow_matrix(t);
        const std::size_t dim = m + n;
        for (SubsetMask s = 1; s < (SubsetMask(1) << dim); ++s) {
            ExteriorElement e;
            e.ambient_dim = dim;
            e.grade = static_cast<std::size_t>(popcount_mask(s));
            e.set(s, Rational(1));
            const ExteriorElement img = ext_apply(g, e);
            const Rational expo = flow_scale_exponent(s, t);
            REQUIRE(den(expo) == 1);
            const Rational scale = pow_rat(Rational(2), num(expo).convert_to<long>());
            CHECK(img.coeff(s) == scale);
            CHECK(img.coords.size() == 1);
        }
    }
}

TEST_CASE("lattice_at: Y = 0 gives the diagonal flow basis, and u_y columns") {
    const RatMatrix zero(1, 1);
    const LatticeBasis b0 = lattice_at(zero, ft({1}, {1}));
    CHECK(b0.to_matrix()(0, 0) == 2);
    CHECK(b0.to_matrix()(1, 1) == Rational(1, 2));

    RatMatrix y(1, 1);
    y(0, 0) = 5;
    const LatticeBasis b = lattice_at(y, ft({1}, {1}));
    // u_y columns (1,0) and (5,1), then scaled by diag(2,1/2)
    CHECK(b.columns[0] == RatVector{Rational(2), Rational(0)});
    CHECK(b.columns[1] == RatVector{Rational(10), Rational(1, 2)});
}

TEST_CASE("systole is invariant under the integer GL action on Y") {
    // Y -> Y + integer matrix gives the same lattice u_Y Z^(m+n)
    Rng rng(803);
    RatMatrix y(1, 2);
    y(0, 0) = Rational(3, 7);
    y(0, 1) = Rational(5, 11);
    RatMatrix y2 = y;
    y2(0, 0) += 2;
    y2(0, 1) -= 1;
    const FlowTuple t = ft({2}, {1, 1});
    CHECK(shortest_vector(lattice_at(y, t)).norm_sq ==
          shortest_vector(lattice_at(y2, t)).norm_sq);
    (void)rng;
}

TEST_CASE("systole_ray: rational target decays to an exact event") {
    RatMatrix y(1, 1);
    y(0, 0) = Rational(3, 8);
    const auto rows = systole_ray(y, ft({1}, {1}), 8);
    REQUIRE(rows.size() == 8);
    // q = 8 kills the error; from then on the vector (0, 8 * 2^-s) shrinks
    CHECK(rows.back().norm_sq <= Rational(64, 65536) + Rational(1));
    CHECK(rows[0].norm_sq > rows.back().norm_sq);
}

TEST_CASE("systole_ray: golden truncation stays thick along the diagonal") {
    const Integer f45("1134903170"), f46("1836311903");
    RatMatrix y(1, 1);
    y(0, 0) = Rational(f45, f46);
    const auto rows = systole_ray(y, ft({1}, {1}), 20);
    for (const auto& r : rows) CHECK(r.norm_sq > Rational(1, 10));
}

TEST_CASE("systole_ray: Y = 0 decays via the tail basis vector") {
    const auto rows = systole_ray(RatMatrix(1, 1), ft({1}, {1}), 5);
    for (const auto& r : rows) {
        const Rational expect = pow_rat(Rational(2), -2 * r.s);
        CHECK(r.norm_sq == expect);
    }
}

TEST_CASE("criterion margin: equal_rows vanishes with the dual-pair witness") {
    const PolyMatrixMap F = builtin("equal_rows", {{"m", 2}, {"n", 2}});
    std::vector<RatVector> samples;
    for (long a = -1; a <= 1; ++a)
        for (long b = -1; b <= 1; ++b) samples.push_back({Rational(a), Rational(b)});
    const MarginResult res = criterion_margin(F, samples, 1, {1, 2, 3});
    CHECK(res.margin == 0);
    REQUIRE(res.argmin.has_value());
    // the minimizer is the wedge e3 ^ e4 built from the dual pair of (I, 0)
    CHECK(res.argmin->wedge.grade == 2);
    CHECK(res.argmin->wedge.coeff(subset_to_mask({3, 4})) != 0);

    const ZeroWitnessResult zw = criterion_zero_witness(F, samples, 1);
    REQUIRE(zw.witness.has_value());
    for (bool ok : zw.per_sample) CHECK(ok);
}

TEST_CASE("criterion margin: prop2x2 stays positive at height 2") {
    const PolyMatrixMap F = builtin("prop2x2");
    std::vector<RatVector> samples;
    for (long a = -2; a <= 2; ++a)
        for (long b = -2; b <= 2; ++b)
            for (long c = -2; c <= 2; ++c)
                samples.push_back({Rational(a, 2), Rational(b, 2), Rational(c, 2)});
    const MarginResult res = criterion_margin(F, samples, 2, {1, 2});
    CHECK(res.margin > 0);
    const ZeroWitnessResult zw = criterion_zero_witness(F, samples, 2, {1, 2});
    CHECK_FALSE(zw.witness.has_value());
}

TEST_CASE("margin bound from a single sample and w = e_{m+1}") {
    const PolyMatrixMap F = builtin("prop2x2");
    const std::vector<RatVector> samples{{Rational(1), Rational(1, 2), Rational(1, 3)}};
    const MarginResult res = criterion_margin(F, samples, 1, {1});
    const RatMatrix Y = evaluate(F, samples[0]);
    // || pi+ u_Y e_3 ||^2 = || first column of Y ||^2 (the head part)
    const Rational bound = Y(0, 0) * Y(0, 0) + Y(1, 0) * Y(1, 0);
    CHECK(res.margin <= bound);
}

TEST_CASE("constant map inside an integer hypersurface has a grade-m zero witness") {
    // F(x) = Y0 with det(Y0) = 0 lies in H_{I,0}
    PolyMatrixMap F(2, 2, 1);
    F.at(0, 0) = MultiPoly::constant(1, Rational(1));
    F.at(0, 1) = MultiPoly::constant(1, Rational(2));
    F.at(1, 0) = MultiPoly::constant(1, Rational(2));
    F.at(1, 1) = MultiPoly::constant(1, Rational(4));
    const std::vector<RatVector> samples{{Rational(0)}, {Rational(1)}};
    const ZeroWitnessResult zw = criterion_zero_witness(F, samples, 2, {2});
    REQUIRE(zw.witness.has_value());
    CHECK(zw.witness->wedge.grade == 2);
}
