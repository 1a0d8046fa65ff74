#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "diophlab/matrix.hpp"
#include "diophlab/rational.hpp"

namespace diophlab {

// Subsets of {1..dim} are carried as bitmasks (bit i-1 <-> element i).
using SubsetMask = std::uint32_t;

int popcount_mask(SubsetMask m);
std::vector<int> mask_to_subset(SubsetMask m);          // sorted, 1-based
SubsetMask subset_to_mask(const std::vector<int>& s);   // validates 1-based, distinct

// Element of the exterior algebra of R^dim, homogeneous of degree `grade`.
// Zero coefficients are never stored.
struct ExteriorElement {
    std::size_t ambient_dim = 0;
    std::size_t grade = 0;
    std::map<SubsetMask, Rational> coords;

    bool is_zero() const { return coords.empty(); }
    Rational coeff(SubsetMask m) const {
        auto it = coords.find(m);
        return it == coords.end() ? Rational(0) : it->second;
    }
    void set(SubsetMask m, const Rational& c) {
        if (c == 0) coords.erase(m); else coords[m] = c;
    }
    Rational norm_sq() const {
        Rational s(0);
        for (const auto& [m, c] : coords) s += c * c;
        return s;
    }
    bool operator==(const ExteriorElement& o) const {
        return ambient_dim == o.ambient_dim && grade == o.grade && coords == o.coords;
    }
    ExteriorElement operator-() const {
        ExteriorElement r = *this;
        for (auto& [m, c] : r.coords) c = -c;
        return r;
    }
};

// w = v_1 ^ ... ^ v_l. The coefficient at a sorted subset I is the l x l
// minor of the stacked vectors on columns I. Returns the zero element iff
// the vectors are dependent.
ExteriorElement wedge_product(const std::vector<RatVector>& vectors);

// Image of w under the grade-th exterior power of a square matrix.
ExteriorElement ext_apply(const RatMatrix& map, const ExteriorElement& w);

// u_Y = [[I_m, Y], [0, I_n]] acting on the exterior algebra of R^(m+n).
RatMatrix uY_matrix(const RatMatrix& Y);
ExteriorElement uY_action(const RatMatrix& Y, const ExteriorElement& w);

// All minors of Y, by order ascending, then lexicographically by
// (row subset, column subset). Length C(m+n, n) - 1.
RatVector minors_map(const RatMatrix& Y);

// Basis subsets spanning E^+: S inside {1..m} or S containing {1..m}.
bool eplus_basis_membership(SubsetMask s, std::size_t m);
bool eplus_basis_membership(const std::vector<int>& subset, std::size_t m);

ExteriorElement project_Eplus(const ExteriorElement& w, std::size_t m);

// Projection onto the span of basis wedges not contracted by g_t:
// keeps S iff sum of t over S∩{1..m} >= sum of t over S∩{m+1..m+n}.
// t must have m+n positive components with equal head/tail sums.
ExteriorElement project_Eplus_t(const ExteriorElement& w, const RatVector& t, std::size_t m);

bool eplus_t_keeps(SubsetMask s, const RatVector& t, std::size_t m);

struct DecomposableElement {
    std::vector<IntVector> vectors;
    ExteriorElement wedge;
};

// All nonzero wedges of `grade` integer vectors with entries in [-H, H],
// deduplicated up to sign (canonical: first nonzero coordinate positive)
// and exact coordinate equality; deterministic first-seen order.
std::vector<DecomposableElement> enumerate_WZ(std::size_t ambient_dim, std::size_t grade,
                                              long height);

// All nonzero integer vectors of the given length with entries in [-H, H],
// in lexicographic order. Shared by enumerate_WZ and the flow-module
// streaming search.
std::vector<IntVector> height_vectors(std::size_t dim, long height);

} // namespace diophlab
