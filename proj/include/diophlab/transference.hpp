#pragma once

#include <optional>
#include <vector>

#include "diophlab/dioph.hpp"
#include "diophlab/manifold.hpp"

namespace diophlab {

// Grid parameters for the multiplicative-to-weighted conversion:
// 1/delta integer, and both constraints
//   (1+eps) / ((1+delta')(1+eps')) - m*delta >= 1
//   1/(1+delta') + n*delta <= 1
// hold exactly.
struct DeltaChoice {
    Rational eps;
    Rational eps_prime;
    Rational delta;
    Rational delta_prime;
};

DeltaChoice choose_deltas(const Rational& eps, std::size_t m, std::size_t n);

// Dyadic-grid exponent bracket of a witness: with Q = Pi_+(q)^(1+delta'),
//   Q^{-(1+eps')(u_j+delta)} <= |err_j| < Q^{-(1+eps') u_j}
//   Q^{u_{m+i}-delta} <= |q_i| < Q^{u_{m+i}}   (u_{m+i} = 0 when q_i = 0).
struct UTuple {
    RatVector u;      // m+n entries, integer multiples of delta
    Rational u_hat;   // sum of the first m
    Rational u_tail;  // sum of the last n
    Integer pi_plus;  // Pi_+(q) of the witness
};

UTuple witness_weights(const Witness& w, std::size_t m, std::size_t n,
                       const DeltaChoice& choice);

struct ConvertedWitness {
    Witness witness;
    RatVector r;
    bool vb13_ok = false;
};

struct ConversionReport {
    char case_tag = 'b';
    std::size_t j0 = 0;     // case (a): row with the exact integrality event
    RatVector r;            // the weight tuple, head then tail
    std::size_t m = 0, n = 0;
    std::optional<DeltaChoice> choice; // present in case (b)
    std::vector<ConvertedWitness> converted;
    std::size_t skipped = 0; // witnesses with Pi_+(q) = 1 (no exponent content)
    bool all_checks_passed = false;
};

// The constructive VWMA -> r-VWA conversion: derives a u-tuple per
// witness, rounds it to the delta-grid respecting the two sum
// constraints, and returns the most frequent r (ties lexicographic).
// Witnesses with an exactly-zero row error route to case (a).
ConversionReport vwma_to_rvwa(const std::vector<Witness>& witnesses, std::size_t m,
                              std::size_t n, const Rational& eps);

// Index pair alpha = (q, p) for the transference set machinery.
struct AlphaIndex {
    IntVector q;
    IntVector p;
    bool operator==(const AlphaIndex& o) const { return q == o.q && p == o.p; }
};

// Membership of x in I_t(alpha, eps): the inhomogeneous target set at
// dyadic time t, with the weight tuple from the experiment context.
bool set_It_membership(const RatVector& x, const PolyMatrixMap& F, const InhomShift& z,
                       long t, const AlphaIndex& alpha, const Rational& eps,
                       const WeightTuple& r);

// Membership of x in H_t(alpha, eps): the homogeneous companion set.
bool set_Ht_membership(const RatVector& x, const PolyMatrixMap& F, long t,
                       const AlphaIndex& alpha, const Rational& eps, const WeightTuple& r);

struct IntersectionReport {
    std::size_t samples_checked = 0;
    std::size_t in_both = 0;
    std::size_t violations = 0;
};

// Verifies the intersection property pointwise on a sample: every x in
// I_t(alpha, psi) ∩ I_t(alpha', psi) lies in H_t(alpha - alpha', psi),
// and the difference index never degenerates to q'' = 0.
IntersectionReport intersection_check(long t, const AlphaIndex& alpha,
                                      const AlphaIndex& alpha_prime, const Rational& psi,
                                      const std::vector<RatVector>& sample_points,
                                      const PolyMatrixMap& F, const InhomShift& z,
                                      const WeightTuple& r);

// Minimal C with  mu{x in V : |f(x)| < eps} <= C (eps/||f||)^alpha mu(V)
// over a dyadic eps grid. C is reported exactly as C^b (b = den(alpha))
// plus a decimal approximation.
struct GoodFitEntry {
    Rational alpha;
    Rational c_pow_b;      // C^b, exact
    unsigned b = 1;        // denominator of alpha
    double c_approx = 0.0;
};

struct GoodEstimate {
    std::vector<GoodFitEntry> per_alpha;
    Rational sup_norm;     // ||f||_{mu,V}, exact
    std::size_t best_fit;  // index into per_alpha with the flattest fit
    bool degenerate = false; // all sampled sublevel ratios were zero
};

// The eps grid is {2^-1, ..., 2^-eps_log2_max}; the default stays well
// above the sample resolution so the counted ratio tracks the measure.
GoodEstimate good_estimate(const MultiPoly& f, const Ball& ball, const MeasureSample& mu,
                           const std::vector<Rational>& alpha_grid, unsigned eps_log2_max = 6);

// Exact check of lo <= C <= hi for a fit entry (compares b-th powers).
bool good_c_within(const GoodFitEntry& e, const Rational& lo, const Rational& hi);

struct FedererEstimate {
    Rational d_hat;       // max mu(3V)/mu(V)
    std::size_t argmax = 0;
};

FedererEstimate federer_estimate(const MeasureSample& mu, const std::vector<Ball>& family);

} // namespace diophlab
