#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "diophlab/matrix.hpp"
#include "diophlab/rational.hpp"

namespace diophlab {

// Inhomogeneous shift z (length m); empty means the homogeneous case.
struct InhomShift {
    RatVector z;
};

// Weights r = (r_1..r_m; r_{m+1}..r_{m+n}) with nonnegative entries and
// head/tail sums both equal to 1.
struct WeightTuple {
    RatVector r;
    std::size_t m = 0, n = 0;

    WeightTuple(RatVector weights, std::size_t m_, std::size_t n_);
    const Rational& row(std::size_t j) const { return r[j]; }          // 0-based
    const Rational& tail(std::size_t i) const { return r[m + i]; }     // 0-based
};

struct Witness {
    IntVector q;
    IntVector p;
    Rational Q;
    RatVector row_errors;     // |Y_j q + z_j - p_j|, exact
    bool eps_infinite = false;
    Rational eps_achieved;    // largest grid epsilon satisfying the inequality
};

struct Shell {
    long t = 0; // Q = 2^t
    bool eps_infinite = false;
    Rational eps_low, eps_high; // dyadic bracket of width 2^-10 (finite case)
    Witness witness;
};

struct ScanResult {
    std::size_t m = 0, n = 0;
    std::vector<Shell> shells;
    bool integrality_event = false; // some q != 0 made a row error exactly 0
    std::optional<Witness> integrality_witness;
};

// Rowwise nearest integer to Y q + z; exact half-integer ties round
// toward zero.
IntVector best_p(const RatMatrix& Y, const IntVector& q, const InhomShift& z);

// Geometric shells Q = 2^t <= Qmax, t >= 1. Per shell, the best witness
// over { q != 0 : ||q||^n <= Q } and the dyadic bracket of the maximal
// eps with ||Yq+z-p||^m < Q^(-1-eps). Norms are Euclidean; every
// comparison is an exact cross-multiplied rational inequality. The scan
// stops after the first shell whose best error is exactly zero.
ScanResult scan_vwa(const RatMatrix& Y, const InhomShift& z, const Integer& qmax);

// Multiplicative variant: region Pi_+(q) <= Q, objective Pi(Yq+z-p).
ScanResult scan_vwma(const RatMatrix& Y, const InhomShift& z, const Integer& qmax);

// Weighted variant: region |q_i| < Q^{r_{m+i}} (a zero tail weight forces
// q_i = 0), objective uniform eps with |Y_j q + z_j - p_j| < Q^{-(1+eps) r_j}
// for all rows with r_j > 0.
ScanResult scan_rvwa(const RatMatrix& Y, const InhomShift& z, const WeightTuple& r,
                     const Integer& qmax);

// Membership form of (vb+5) for a general Q given as base^expo: checks
// |Y_j q + z_j - p_j| < Q^{-(1+eps) r_j} and |q_i| < Q^{r_{m+i}} exactly.
bool rvwa_accepts(const RatMatrix& Y, const InhomShift& z, const WeightTuple& r,
                  const IntVector& q, const IntVector& p, const Rational& q_base,
                  const Rational& q_expo, const Rational& eps);

struct CurveRow {
    long t = 0;
    bool eps_infinite = false;
    Rational eps_low, eps_high;
    Rational running_max; // max of eps_low over shells up to t
};

// Monotone-envelope table of the scan: one row per shell, ending at the
// first infinite-epsilon shell if any.
std::vector<CurveRow> exponent_curve(const ScanResult& scan);

// Exposed for reuse by the transference module and tests: the largest
// grid point eps (multiples of 2^-10) with pred(eps) true, where pred is
// monotone decreasing. Returns {lo, hi} with pred(lo) && !pred(hi).
struct EpsBracket {
    Rational lo, hi;
};
EpsBracket bracket_eps(const std::function<bool(const Rational&)>& pred);

} // namespace diophlab
