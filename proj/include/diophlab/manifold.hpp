#pragma once

#include <map>
#include <string>
#include <vector>

#include "diophlab/poly.hpp"

namespace diophlab {

// m x n matrix of polynomials in d variables: a polynomially parametrized
// matrix manifold x -> F(x).
struct PolyMatrixMap {
    std::size_t m = 0, n = 0, d = 0;
    std::vector<MultiPoly> entries; // row-major, size m*n

    PolyMatrixMap() = default;
    PolyMatrixMap(std::size_t m_, std::size_t n_, std::size_t d_);

    MultiPoly& at(std::size_t i, std::size_t j) { return entries[i * n + j]; }
    const MultiPoly& at(std::size_t i, std::size_t j) const { return entries[i * n + j]; }

    std::vector<MultiPoly> row(std::size_t i) const;
};

RatMatrix evaluate(const PolyMatrixMap& F, const RatVector& x);

// x -> L F(x) R with rank L = rows(L), rank R = cols(R).
PolyMatrixMap transform_LR(const PolyMatrixMap& F, const RatMatrix& L, const RatMatrix& R);

// Vertical stack (F1; F2) on disjoint variables, F1's variables first.
PolyMatrixMap stack_product(const PolyMatrixMap& F1, const PolyMatrixMap& F2);

PolyMatrixMap transpose_map(const PolyMatrixMap& F);

// Named example manifolds. Parameters: veronese{n}, matrix_veronese{m,k},
// equal_rows{m,n}; prop2x2 takes none.
PolyMatrixMap builtin(const std::string& name, const std::map<std::string, long>& params = {});

struct Ball {
    RatVector center;
    Rational radius;

    Ball(RatVector c, Rational r);
    bool contains_open(const RatVector& x) const;
    bool contains_closed(const RatVector& x) const;
};

// Finite weighted sample cloud standing in for a measure restricted to a
// ball. Weights are positive; points may touch the ball's boundary.
struct MeasureSample {
    std::vector<RatVector> points;
    RatVector weights;
    Ball domain;

    MeasureSample(std::vector<RatVector> pts, RatVector w, Ball dom);

    // Uniform midpoint grid over the inscribed cube of `dom`, per_axis
    // points per axis, all weights 1.
    static MeasureSample grid(const Ball& dom, std::size_t per_axis);

    Rational total_weight() const;
};

// Text format: first line "m n d", then m*n lines of polynomial entries
// in row-major order.
PolyMatrixMap parse_manifold(const std::string& text);
std::string manifold_to_text(const PolyMatrixMap& F);

} // namespace diophlab
