#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "diophlab/manifold.hpp"
#include "diophlab/matrix.hpp"
#include "diophlab/util.hpp"

namespace diophlab {

// A pair (A, B) with A n x m, B n x n and rank(A|B) = n, cutting out the
// hypersurface H_{A,B} = { Y : det(AY + B) = 0 }.
struct PencilPair {
    RatMatrix A; // n x m
    RatMatrix B; // n x n

    PencilPair(RatMatrix a, RatMatrix b);
    std::size_t n() const { return A.rows(); }
    std::size_t m() const { return A.cols(); }
};

struct ZCertificate {
    IntMatrix A;
    IntMatrix B;
    long height = 0;
    std::uint64_t poly_hash = 0; // hash of the (identically zero) pencil polynomial's source
};

bool hyperplane_member(const RatMatrix& Y, const PencilPair& P);

// The pencil (D, -C) with rows of (C|D) spanning the orthocomplement of
// the column span of (A|B)^t; Y in H_{A,B} iff Y^t in H_{D,-C}.
PencilPair dual_pair(const PencilPair& P);

// det(A F(x) + B) as an exact polynomial; identically zero iff the image
// of F lies inside H_{A,B}.
MultiPoly pencil_polynomial(const PolyMatrixMap& F, const PencilPair& P);

// Six equivalent membership predicates, each computed from its own
// linear-algebra characterization.
bool elem_pred_i(const RatMatrix& Y, const PencilPair& P);
bool elem_pred_ii(const RatMatrix& Y, const PencilPair& P);
bool elem_pred_iii(const RatMatrix& Y, const PencilPair& P);
bool elem_pred_iv(const RatMatrix& Y, const PencilPair& P);
bool elem_pred_v(const RatMatrix& Y, const PencilPair& P);
bool elem_pred_vi(const RatMatrix& Y, const PencilPair& P);
std::array<bool, 6> elem_pred_all(const RatMatrix& Y, const PencilPair& P);

enum class SearchMode { Exhaustive, Randomized };

struct SearchOutcome {
    std::optional<ZCertificate> certificate;
    unsigned long long classes_tested = 0;
    unsigned long long candidates_tested = 0;
};

// Scans integer pencils with entries in [-H, H] and rank(A|B) = n for one
// whose pencil polynomial vanishes identically. Exhaustive mode
// deduplicates by the Hermite normal form of (A|B) (left GL_n(Z)
// equivalence) and returns the canonically smallest member of the first
// vanishing class: fewest nonzero entries, then nonzero positions, then
// entry values ordered by absolute value with positive first. Randomized
// mode tests `candidates` random pencils by evaluation at random points
// with exact symbolic confirmation.
SearchOutcome weak_np_failure_search(const PolyMatrixMap& F, long height, SearchMode mode,
                                     unsigned long long candidates = 0,
                                     std::uint64_t seed = 0, int threads = 1);

struct StrongNpReport {
    std::size_t rank = 0;
    std::size_t N = 0;
    bool is_strong = false;
    std::optional<IntVector> kernel; // affine relation among 1 and the minors
};

// Rank of { d(F(x_i)) - d(F(x_0)) } over Q; rank = N certifies affine
// non-degeneracy of the minors embedding on the sample.
StrongNpReport strong_np_rank(const PolyMatrixMap& F, const std::vector<RatVector>& samples);

// (e:009)-style lift: embeds a certificate for the leading mt x nt
// submatrix of F into one for F itself.
std::pair<IntMatrix, IntMatrix> lift_submatrix_certificate(const IntMatrix& At,
                                                           const IntMatrix& Bt,
                                                           std::size_t m, std::size_t n);

// Reduces a certificate for a stacked map (F1; F2) to a certificate for
// one of the factors, following the rank-splitting elimination in the
// product argument. Returns (factor index 1 or 2, pencil for that factor).
struct StackReduction {
    int factor = 0;
    RatMatrix A;
    RatMatrix B;
};
StackReduction reduce_stack_certificate(const PolyMatrixMap& F1, const PolyMatrixMap& F2,
                                        const RatMatrix& A, const RatMatrix& B);

// Randomized property battery: row/column pencils define a hyperplane or
// the empty set; strong non-planarity implies no small certificate;
// rank-r pencils achieve rank r at some sample point.
struct LemmaChecksReport {
    int trials = 0;
    int hyperplane_cases = 0;
    int empty_cases = 0;
    int strong_instances = 0;
    int rank_instances = 0;
    int violations = 0;
};
LemmaChecksReport weak_np_lemma_checks(std::uint64_t seed);

} // namespace diophlab
