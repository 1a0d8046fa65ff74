#include "diophlab/matrix.hpp"

namespace diophlab {

RatMatrix to_rational(const IntMatrix& m) {
    RatMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rational(m(i, j));
    return r;
}

IntMatrix to_integer(const RatMatrix& m) {
    IntMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (den(m(i, j)) != 1) throw Error("to_integer: non-integer entry");
            r(i, j) = num(m(i, j));
        }
    return r;
}

namespace {

// Scales each row by the lcm of its denominators. Keeps det relations
// explicit through the returned row multipliers.
IntMatrix scale_rows(const RatMatrix& m, std::vector<Integer>* multipliers) {
    IntMatrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Integer l(1);
        for (std::size_t j = 0; j < m.cols(); ++j) l = lcm_int(l, den(m(i, j)));
        if (multipliers) multipliers->push_back(l);
        for (std::size_t j = 0; j < m.cols(); ++j) {
            const Rational& x = m(i, j);
            out(i, j) = num(x) * (l / den(x));
        }
    }
    return out;
}

} // namespace

std::size_t rank_exact(const RatMatrix& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    IntMatrix a = scale_rows(m, nullptr);
    const std::size_t rows = a.rows(), cols = a.cols();
    std::size_t rank = 0;
    Integer prev(1);
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t piv = rank;
        while (piv < rows && a(piv, col) == 0) ++piv;
        if (piv == rows) continue;
        if (piv != rank)
            for (std::size_t j = 0; j < cols; ++j) std::swap(a(piv, j), a(rank, j));
        for (std::size_t i = rank + 1; i < rows; ++i) {
            for (std::size_t j = col + 1; j < cols; ++j)
                a(i, j) = (a(i, j) * a(rank, col) - a(i, col) * a(rank, j)) / prev;
            a(i, col) = 0;
        }
        prev = a(rank, col);
        ++rank;
    }
    return rank;
}

Rational det_exact(const RatMatrix& m) {
    if (m.rows() != m.cols()) throw NotSquare("det_exact: matrix is not square");
    const std::size_t n = m.rows();
    if (n == 0) return Rational(1);
    std::vector<Integer> mult;
    IntMatrix a = scale_rows(m, &mult);
    Integer prev(1);
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        std::size_t piv = k;
        while (piv < n && a(piv, k) == 0) ++piv;
        if (piv == n) return Rational(0);
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(piv, j), a(k, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
            a(i, k) = 0;
        }
        prev = a(k, k);
    }
    Integer det_scaled = sign * a(n - 1, n - 1);
    Integer denom(1);
    for (const auto& l : mult) denom *= l;
    return Rational(det_scaled, denom);
}

std::vector<std::size_t> rref_in_place(RatMatrix& a) {
    const std::size_t rows = a.rows(), cols = a.cols();
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && a(piv, c) == 0) ++piv;
        if (piv == rows) continue;
        if (piv != r)
            for (std::size_t j = 0; j < cols; ++j) std::swap(a(piv, j), a(r, j));
        const Rational inv = Rational(1) / a(r, c);
        for (std::size_t j = c; j < cols; ++j) a(r, j) *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a(i, c) == 0) continue;
            const Rational f = a(i, c);
            for (std::size_t j = c; j < cols; ++j) a(i, j) -= f * a(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

IntVector primitive_normalize(IntVector v) {
    Integer g(0);
    for (const auto& x : v) g = gcd_int(g, x);
    if (g == 0) return v;
    for (auto& x : v) x /= g;
    for (const auto& x : v) {
        if (x == 0) continue;
        if (x < 0)
            for (auto& y : v) y = -y;
        break;
    }
    return v;
}

IntVector to_coprime_integer(const RatVector& v) {
    Integer l(1);
    for (const auto& x : v) l = lcm_int(l, den(x));
    IntVector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = num(v[i]) * (l / den(v[i]));
    return primitive_normalize(std::move(out));
}

std::vector<IntVector> nullspace_basis(const RatMatrix& m) {
    const std::size_t cols = m.cols();
    RatMatrix a = m;
    const std::vector<std::size_t> pivots = rref_in_place(a);
    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<IntVector> basis;
    for (std::size_t free_c = 0; free_c < cols; ++free_c) {
        if (is_pivot[free_c]) continue;
        RatVector v(cols, Rational(0));
        v[free_c] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a(r, free_c);
        basis.push_back(to_coprime_integer(v));
    }
    return basis;
}

RatMatrix inverse_exact(const RatMatrix& m) {
    if (m.rows() != m.cols()) throw NotSquare("inverse_exact: matrix is not square");
    const std::size_t n = m.rows();
    RatMatrix aug = hcat(m, RatMatrix::identity(n));
    const auto pivots = rref_in_place(aug);
    if (pivots.size() != n || pivots.back() != n - 1)
        throw RankDeficient("inverse_exact: singular matrix");
    RatMatrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
    return inv;
}

IntMatrix hnf_rows(const IntMatrix& m) {
    IntMatrix a = m;
    const std::size_t rows = a.rows(), cols = a.cols();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        // gcd the column below r into a single pivot by row operations
        while (true) {
            std::size_t piv = rows;
            for (std::size_t i = r; i < rows; ++i)
                if (a(i, c) != 0 && (piv == rows || abs_int(a(i, c)) < abs_int(a(piv, c))))
                    piv = i;
            if (piv == rows) break; // column is zero below r
            if (piv != r)
                for (std::size_t j = 0; j < cols; ++j) std::swap(a(piv, j), a(r, j));
            bool clean = true;
            for (std::size_t i = r + 1; i < rows; ++i) {
                if (a(i, c) == 0) continue;
                const Integer q = floor_div(a(i, c), a(r, c));
                for (std::size_t j = 0; j < cols; ++j) a(i, j) -= q * a(r, j);
                if (a(i, c) != 0) clean = false;
            }
            if (clean) break;
        }
        if (a(r, c) == 0) continue;
        if (a(r, c) < 0)
            for (std::size_t j = 0; j < cols; ++j) a(r, j) = -a(r, j);
        for (std::size_t i = 0; i < r; ++i) {
            const Integer q = floor_div(a(i, c), a(r, c));
            if (q == 0) continue;
            for (std::size_t j = 0; j < cols; ++j) a(i, j) -= q * a(r, j);
        }
        ++r;
    }
    return a;
}

} // namespace diophlab
