#include "diophlab/lattice.hpp"

#include "diophlab/util.hpp"

namespace diophlab {

LatticeBasis::LatticeBasis(std::size_t dim, std::vector<RatVector> cols)
    : dimension(dim), columns(std::move(cols)) {
    if (columns.size() != dimension)
        throw DimMismatch("LatticeBasis: expected a square (full) basis");
    for (const auto& c : columns)
        if (c.size() != dimension) throw DimMismatch("LatticeBasis: column length");
}

LatticeBasis LatticeBasis::from_matrix(const RatMatrix& m) {
    if (m.rows() != m.cols()) throw NotSquare("LatticeBasis: matrix not square");
    std::vector<RatVector> cols;
    cols.reserve(m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j) cols.push_back(m.col(j));
    return LatticeBasis(m.rows(), std::move(cols));
}

RatMatrix LatticeBasis::to_matrix() const {
    RatMatrix m(dimension, dimension);
    for (std::size_t j = 0; j < dimension; ++j)
        for (std::size_t i = 0; i < dimension; ++i) m(i, j) = columns[j][i];
    return m;
}

namespace {

Rational dot(const RatVector& a, const RatVector& b) {
    Rational s(0);
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

struct Gso {
    std::vector<RatVector> star;          // orthogonalized vectors
    std::vector<std::vector<Rational>> mu; // mu[k][j], j < k
    std::vector<Rational> B;              // ||b*_k||^2
};

Gso compute_gso(const std::vector<RatVector>& b) {
    const std::size_t d = b.size();
    Gso g;
    g.star.resize(d);
    g.mu.assign(d, std::vector<Rational>(d, Rational(0)));
    g.B.resize(d);
    for (std::size_t k = 0; k < d; ++k) {
        g.star[k] = b[k];
        for (std::size_t j = 0; j < k; ++j) {
            if (g.B[j] == 0) throw DependentBasis();
            g.mu[k][j] = dot(b[k], g.star[j]) / g.B[j];
            for (std::size_t i = 0; i < g.star[k].size(); ++i)
                g.star[k][i] -= g.mu[k][j] * g.star[j][i];
        }
        g.B[k] = dot(g.star[k], g.star[k]);
    }
    for (std::size_t k = 0; k < d; ++k)
        if (g.B[k] == 0) throw DependentBasis();
    return g;
}

const Rational kDelta(3, 4);

} // namespace

LatticeBasis lll_reduce(const LatticeBasis& basis) {
    std::vector<RatVector> b = basis.columns;
    const std::size_t d = b.size();
    if (d <= 1) {
        compute_gso(b);
        return basis;
    }
    Gso g = compute_gso(b);
    std::size_t k = 1;
    while (k < d) {
        for (std::size_t jj = k; jj-- > 0;) {
            const Integer q = round_half_toward_zero(g.mu[k][jj]);
            if (q != 0) {
                const Rational qr(q);
                for (std::size_t i = 0; i < d; ++i) b[k][i] -= qr * b[jj][i];
                g = compute_gso(b);
            }
        }
        if (g.B[k] >= (kDelta - g.mu[k][k - 1] * g.mu[k][k - 1]) * g.B[k - 1]) {
            ++k;
        } else {
            std::swap(b[k], b[k - 1]);
            g = compute_gso(b);
            k = (k > 1) ? k - 1 : 1;
        }
    }
    return LatticeBasis(d, std::move(b));
}

ShortestVector shortest_vector(const LatticeBasis& basis) {
    const std::size_t d = basis.dimension;
    if (d > 12) throw DimensionTooLarge("shortest_vector: dimension > 12");
    if (d == 0) throw DimMismatch("shortest_vector: empty basis");
    const LatticeBasis red = lll_reduce(basis);
    const Gso g = compute_gso(red.columns);

    // Coefficient transport back to the input basis: reduced = input * T.
    const RatMatrix t_rat = inverse_exact(basis.to_matrix()) * red.to_matrix();
    const IntMatrix T = to_integer(t_rat);

    Rational bound = dot(red.columns[0], red.columns[0]);
    for (std::size_t j = 1; j < d; ++j) {
        const Rational n = dot(red.columns[j], red.columns[j]);
        if (n < bound) bound = n;
    }

    bool have_best = false;
    Rational best_norm(0);
    IntVector best_coeffs;

    IntVector x(d, Integer(0));

    // Depth-first enumeration over levels d-1 .. 0 with exact pruning.
    std::function<void(std::size_t, const Rational&)> descend =
        [&](std::size_t level, const Rational& used) {
            const std::size_t k = level;
            Rational c(0);
            for (std::size_t j = k + 1; j < d; ++j) c -= g.mu[j][k] * Rational(x[j]);
            const Rational rem = bound - used;
            const Integer x0 = round_half_toward_zero(c);
            auto visit = [&](const Integer& xk) -> bool {
                const Rational y = Rational(xk) - c;
                const Rational cost = y * y * g.B[k];
                if (cost > rem) return false;
                x[k] = xk;
                if (k == 0) {
                    bool all_zero = true;
                    for (const auto& xi : x)
                        if (xi != 0) { all_zero = false; break; }
                    if (!all_zero) {
                        const Rational norm = used + cost;
                        IntVector coeffs = T.apply(x);
                        for (const auto& ci : coeffs) {
                            if (ci == 0) continue;
                            if (ci < 0)
                                for (auto& cc : coeffs) cc = -cc;
                            break;
                        }
                        if (!have_best || norm < best_norm ||
                            (norm == best_norm && cmp_vec(coeffs, best_coeffs) < 0)) {
                            have_best = true;
                            best_norm = norm;
                            best_coeffs = std::move(coeffs);
                            if (best_norm < bound) bound = best_norm;
                        }
                    }
                } else {
                    descend(k - 1, used + cost);
                }
                return true;
            };
            for (Integer xk = x0;; ++xk)
                if (!visit(xk)) break;
            for (Integer xk = x0 - 1;; --xk)
                if (!visit(xk)) break;
            x[k] = 0;
        };
    descend(d - 1, Rational(0));

    if (!have_best) throw Error("shortest_vector: enumeration found nothing");
    ShortestVector out;
    out.coeffs = best_coeffs;
    out.norm_sq = best_norm;
    out.vector.assign(d, Rational(0));
    const RatMatrix M = basis.to_matrix();
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) out.vector[i] += M(i, j) * Rational(best_coeffs[j]);
    return out;
}

} // namespace diophlab
