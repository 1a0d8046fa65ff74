#pragma once

#include <vector>

#include "diophlab/matrix.hpp"
#include "diophlab/rational.hpp"

namespace diophlab {

// Full-rank lattice basis given by columns (exact rational coordinates).
struct LatticeBasis {
    std::size_t dimension = 0;
    std::vector<RatVector> columns;

    LatticeBasis() = default;
    LatticeBasis(std::size_t dim, std::vector<RatVector> cols);

    static LatticeBasis from_matrix(const RatMatrix& m);
    RatMatrix to_matrix() const;
};

// LLL reduction with delta = 3/4. The output generates the same lattice;
// the first vector is within 2^((dim-1)/2) of the shortest.
LatticeBasis lll_reduce(const LatticeBasis& basis);

struct ShortestVector {
    RatVector vector;   // ambient coordinates
    Rational norm_sq;
    IntVector coeffs;   // w.r.t. the input basis, sign-canonical, lex-minimal
};

// Exact shortest nonzero vector (Fincke-Pohst enumeration after LLL).
// Ties are broken by lexicographic order of the coefficient vector after
// normalizing the first nonzero coefficient to be positive.
ShortestVector shortest_vector(const LatticeBasis& basis);

} // namespace diophlab
