#include <doctest.h>

#include "diophlab/exterior.hpp"
#include "diophlab/util.hpp"

using namespace diophlab;

namespace {

RatVector rv(std::initializer_list<long> xs) {
    RatVector v;
    for (long x : xs) v.emplace_back(x);
    return v;
}

ExteriorElement basis_wedge(std::size_t dim, std::initializer_list<int> subset) {
    ExteriorElement w;
    w.ambient_dim = dim;
    w.grade = subset.size();
    w.set(subset_to_mask(std::vector<int>(subset)), Rational(1));
    return w;
}

} // namespace

TEST_CASE("wedge_product basics") {
    const auto w = wedge_product({rv({1, 0}), rv({0, 1})});
    CHECK(w.coeff(subset_to_mask({1, 2})) == 1);
    CHECK(w.coords.size() == 1);

    CHECK(wedge_product({rv({1, 1}), rv({1, 1})}).is_zero());

    const auto w2 = wedge_product({rv({1, 2, 0}), rv({0, 1, 1})});
    CHECK(w2.coeff(subset_to_mask({1, 2})) == 1);
    CHECK(w2.coeff(subset_to_mask({1, 3})) == 1);
    CHECK(w2.coeff(subset_to_mask({2, 3})) == 2);
}

TEST_CASE("wedge_product is alternating") {
    Rng rng(301);
    for (int trial = 0; trial < 20; ++trial) {
        RatVector a(4), b(4);
        for (auto& x : a) x = rng.rational(5, 3);
        for (auto& x : b) x = rng.rational(5, 3);
        CHECK(wedge_product({a, b}) == -wedge_product({b, a}));
        CHECK(wedge_product({a, a}).is_zero());
    }
}

TEST_CASE("minors_map canonical order") {
    const RatVector d = minors_map(RatMatrix::identity(2));
    REQUIRE(d.size() == 5); // C(4,2)-1
    CHECK(d == RatVector{Rational(1), Rational(0), Rational(0), Rational(1), Rational(1)});
}

TEST_CASE("minors_map on a row is the identity on entries") {
    RatMatrix y(1, 3);
    y(0, 0) = Rational(2);
    y(0, 1) = Rational(-1, 2);
    y(0, 2) = Rational(7);
    const RatVector d = minors_map(y);
    CHECK(d == RatVector{Rational(2), Rational(-1, 2), Rational(7)});
}

TEST_CASE("minors_map exposes the repeated diagonal entry of the 2x2 example") {
    RatMatrix y(2, 2);
    y(0, 0) = 1;
    y(0, 1) = 2;
    y(1, 0) = 3;
    y(1, 1) = 1;
    const RatVector d = minors_map(y);
    REQUIRE(d.size() == 5);
    CHECK(d[0] == d[3]); // the two equal diagonal entries
    CHECK(d[4] == Rational(1) - Rational(6));
}

TEST_CASE("uY_action on basis vectors") {
    RatMatrix y(1, 1);
    y(0, 0) = Rational(5);
    const auto img = uY_action(y, basis_wedge(2, {2}));
    CHECK(img.coeff(subset_to_mask({1})) == 5);
    CHECK(img.coeff(subset_to_mask({2})) == 1);

    // u_0 is the identity
    RatMatrix z(2, 2);
    const auto w = wedge_product({rv({1, 2, 0, 1}), rv({0, 1, 1, 3})});
    CHECK(uY_action(z, w) == w);
}

TEST_CASE("uY_action composes additively in Y") {
    Rng rng(302);
    for (int trial = 0; trial < 10; ++trial) {
        RatMatrix y1(2, 2), y2(2, 2);
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) {
                y1(i, j) = rng.rational(3, 2);
                y2(i, j) = rng.rational(3, 2);
            }
        for (std::size_t grade = 1; grade <= 3; ++grade) {
            std::vector<RatVector> vs;
            for (std::size_t k = 0; k < grade; ++k) {
                RatVector v(4);
                for (auto& x : v) x = Rational(rng.range(-2, 2));
                vs.push_back(v);
            }
            const auto w = wedge_product(vs);
            CHECK(uY_action(y1, uY_action(y2, w)) == uY_action(y1 + y2, w));
        }
    }
}

TEST_CASE("eplus basis membership") {
    CHECK(eplus_basis_membership({1}, 2));
    CHECK(eplus_basis_membership({1, 2, 3}, 2));
    CHECK_FALSE(eplus_basis_membership({1, 3}, 2));
    CHECK(eplus_basis_membership({1, 2}, 2));
    CHECK_FALSE(eplus_basis_membership({3, 4}, 2));
}

TEST_CASE("project_Eplus basics") {
    // m = n = 1: pi+(a e1 + b e2) = a e1
    ExteriorElement w;
    w.ambient_dim = 2;
    w.grade = 1;
    w.set(subset_to_mask({1}), Rational(3));
    w.set(subset_to_mask({2}), Rational(4));
    const auto p = project_Eplus(w, 1);
    CHECK(p.coeff(subset_to_mask({1})) == 3);
    CHECK(p.coeff(subset_to_mask({2})) == 0);
    CHECK(p.norm_sq() <= w.norm_sq());
}

TEST_CASE("project_Eplus_t with t = (1,1)") {
    const RatVector t{Rational(1), Rational(1)};
    ExteriorElement e1 = basis_wedge(2, {1});
    ExteriorElement e2 = basis_wedge(2, {2});
    ExteriorElement e12 = basis_wedge(2, {1, 2});
    CHECK(project_Eplus_t(e1, t, 1) == e1);
    CHECK(project_Eplus_t(e2, t, 1).is_zero());
    CHECK(project_Eplus_t(e12, t, 1) == e12);
}

TEST_CASE("project_Eplus_t validates the cone") {
    const auto w = basis_wedge(3, {1});
    CHECK_THROWS_AS(project_Eplus_t(w, RatVector{Rational(1), Rational(1), Rational(1)}, 1),
                    InvalidFlowTuple);
    CHECK_THROWS_AS(project_Eplus_t(w, RatVector{Rational(-1), Rational(1), Rational(-2)}, 1),
                    InvalidFlowTuple);
}

TEST_CASE("E+_t projection dominates the E+ projection") {
    Rng rng(303);
    const std::size_t m = 2, n = 2;
    for (int trial = 0; trial < 40; ++trial) {
        // random t in the cone: positive entries, tail rescaled to match
        RatVector t(4);
        for (auto& x : t) x = Rational(rng.range(1, 9), rng.range(1, 4));
        const Rational head = t[0] + t[1], tail = t[2] + t[3];
        t[2] *= head / tail;
        t[3] *= head / tail;
        ExteriorElement w;
        w.ambient_dim = 4;
        w.grade = 2;
        for (SubsetMask s = 0; s < 16; ++s)
            if (popcount_mask(s) == 2) w.set(s, rng.rational(5, 3));
        CHECK(project_Eplus_t(w, t, m).norm_sq() >= project_Eplus(w, m).norm_sq());
        (void)n;
    }
}

TEST_CASE("enumerate_WZ: dimension 2, grade 1, height 1") {
    const auto wz = enumerate_WZ(2, 1, 1);
    CHECK(wz.size() == 4);
    // as a set: e1, e2, e1+e2, e1-e2 (up to sign, first nonzero positive)
    std::vector<std::pair<Rational, Rational>> got;
    for (const auto& de : wz)
        got.emplace_back(de.wedge.coeff(subset_to_mask({1})), de.wedge.coeff(subset_to_mask({2})));
    std::vector<std::pair<Rational, Rational>> expect = {
        {Rational(1), Rational(1)}, {Rational(1), Rational(0)},
        {Rational(1), Rational(-1)}, {Rational(0), Rational(1)}};
    for (const auto& e : expect)
        CHECK(std::count(got.begin(), got.end(), e) == 1);
}

TEST_CASE("enumerate_WZ: dimension 3, grade 2 contains the coordinate planes") {
    const auto wz = enumerate_WZ(3, 2, 1);
    auto contains_basis = [&](std::initializer_list<int> subset) {
        ExteriorElement target = basis_wedge(3, subset);
        for (const auto& de : wz)
            if (de.wedge == target) return true;
        return false;
    };
    CHECK(contains_basis({1, 2}));
    CHECK(contains_basis({1, 3}));
    CHECK(contains_basis({2, 3}));
    for (const auto& de : wz) CHECK(de.wedge.norm_sq() >= 1);
    CHECK_THROWS_AS(enumerate_WZ(3, 3, 1), GradeOutOfRange);
}
