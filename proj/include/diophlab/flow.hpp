#pragma once

#include <optional>
#include <vector>

#include "diophlab/exterior.hpp"
#include "diophlab/lattice.hpp"
#include "diophlab/manifold.hpp"

namespace diophlab {

// Point of the expanding cone: positive entries, head and tail sums equal.
struct FlowTuple {
    RatVector t;
    std::size_t m = 0, n = 0;

    FlowTuple(RatVector values, std::size_t m_, std::size_t n_);
    FlowTuple scaled(long s) const;
    bool is_integral() const;
};

// diag(2^{t_1},...,2^{t_m}, 2^{-t_{m+1}},...,2^{-t_{m+n}}), determinant 1.
// Exactness demands integer exponents (2^t is irrational otherwise).
RatMatrix flow_matrix(const FlowTuple& t);

// Columns of g_t u_Y: the flowed unimodular lattice.
LatticeBasis lattice_at(const RatMatrix& Y, const FlowTuple& t);

// g_t scales the basis wedge e_S by 2^(sum_{i in S, i<=m} t_i - sum_{j in S, j>m} t_j).
Rational flow_scale_exponent(SubsetMask s, const FlowTuple& t);

struct RayRow {
    long s = 0;
    Rational norm_sq;
};

// Systole squared along s * direction for s = 1..steps.
std::vector<RayRow> systole_ray(const RatMatrix& Y, const FlowTuple& direction, long steps);

struct MarginResult {
    Rational margin; // min over w of max over samples of ||pi+ (u_{F(x)} w)||^2
    std::optional<DecomposableElement> argmin;
    unsigned long long tuples_scanned = 0;
};

// Exhaustive streaming minimum over integer decomposable w built from
// vectors of height <= w_height, grades drawn from `grades`.
MarginResult criterion_margin(const PolyMatrixMap& F, const std::vector<RatVector>& samples,
                              long w_height, const std::vector<std::size_t>& grades);

struct ZeroWitnessResult {
    std::optional<DecomposableElement> witness;
    std::vector<bool> per_sample; // exact-zero flags, all true when found
    unsigned long long tuples_scanned = 0;
};

// Searches for an integer decomposable w annihilated by pi+ at every
// sample. The per-grade solution space is computed exactly first; grades
// with a trivial space are skipped without enumeration.
ZeroWitnessResult criterion_zero_witness(const PolyMatrixMap& F,
                                         const std::vector<RatVector>& samples, long w_height,
                                         const std::vector<std::size_t>& grades = {});

} // namespace diophlab
