#include "diophlab/exterior.hpp"

#include <bit>
#include <functional>

namespace diophlab {

int popcount_mask(SubsetMask m) { return std::popcount(m); }

std::vector<int> mask_to_subset(SubsetMask m) {
    std::vector<int> s;
    for (int i = 0; m != 0; ++i, m >>= 1)
        if (m & 1u) s.push_back(i + 1);
    return s;
}

SubsetMask subset_to_mask(const std::vector<int>& s) {
    SubsetMask m = 0;
    for (int e : s) {
        if (e < 1 || e > 32) throw Error("subset element out of range");
        const SubsetMask bit = SubsetMask(1) << (e - 1);
        if (m & bit) throw Error("subset element repeated");
        m |= bit;
    }
    return m;
}

namespace {

// Sign of appending index i (0-based) to the subset `mask`: (-1)^(number
// of elements of mask above i).
int append_sign(SubsetMask mask, int i) {
    const SubsetMask above = mask >> (i + 1);
    return (std::popcount(above) % 2 == 0) ? 1 : -1;
}

ExteriorElement wedge_with_vector(const ExteriorElement& w, const RatVector& v) {
    ExteriorElement out;
    out.ambient_dim = w.ambient_dim;
    out.grade = w.grade + 1;
    for (const auto& [mask, c] : w.coords) {
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (v[i] == 0) continue;
            const SubsetMask bit = SubsetMask(1) << i;
            if (mask & bit) continue;
            const Rational add = c * v[i] * append_sign(mask, static_cast<int>(i));
            auto it = out.coords.find(mask | bit);
            if (it == out.coords.end()) {
                if (add != 0) out.coords.emplace(mask | bit, add);
            } else {
                it->second += add;
                if (it->second == 0) out.coords.erase(it);
            }
        }
    }
    return out;
}

} // namespace

ExteriorElement wedge_product(const std::vector<RatVector>& vectors) {
    if (vectors.empty()) throw LengthMismatch("wedge_product: no vectors");
    const std::size_t dim = vectors[0].size();
    if (dim == 0 || dim > 32) throw LengthMismatch("wedge_product: bad ambient dimension");
    if (vectors.size() > dim) throw LengthMismatch("wedge_product: grade exceeds dimension");
    ExteriorElement w;
    w.ambient_dim = dim;
    w.grade = 0;
    w.coords.emplace(SubsetMask(0), Rational(1));
    for (const auto& v : vectors) {
        if (v.size() != dim) throw LengthMismatch("wedge_product: vector length mismatch");
        w = wedge_with_vector(w, v);
        if (w.is_zero()) break;
    }
    w.grade = vectors.size();
    return w;
}

ExteriorElement ext_apply(const RatMatrix& map, const ExteriorElement& w) {
    if (map.rows() != map.cols() || map.rows() != w.ambient_dim)
        throw DimMismatch("ext_apply: map/element dimension mismatch");
    ExteriorElement out;
    out.ambient_dim = w.ambient_dim;
    out.grade = w.grade;
    for (const auto& [mask, c] : w.coords) {
        std::vector<RatVector> images;
        for (int e : mask_to_subset(mask)) images.push_back(map.col(e - 1));
        ExteriorElement img = wedge_product(images);
        for (const auto& [m2, c2] : img.coords) {
            auto it = out.coords.find(m2);
            const Rational add = c * c2;
            if (it == out.coords.end()) {
                if (add != 0) out.coords.emplace(m2, add);
            } else {
                it->second += add;
                if (it->second == 0) out.coords.erase(it);
            }
        }
    }
    return out;
}

RatMatrix uY_matrix(const RatMatrix& Y) {
    const std::size_t m = Y.rows(), n = Y.cols();
    RatMatrix u = RatMatrix::identity(m + n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) u(i, m + j) = Y(i, j);
    return u;
}

ExteriorElement uY_action(const RatMatrix& Y, const ExteriorElement& w) {
    if (Y.rows() + Y.cols() != w.ambient_dim)
        throw DimMismatch("uY_action: ambient dimension mismatch");
    return ext_apply(uY_matrix(Y), w);
}

namespace {

// Lexicographic k-subsets of {0..n-1}.
void for_each_subset(std::size_t n, std::size_t k,
                     const std::function<void(const std::vector<std::size_t>&)>& fn) {
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    if (k > n) return;
    while (true) {
        fn(idx);
        std::size_t i = k;
        while (i > 0) {
            --i;
            if (idx[i] != i + n - k) break;
            if (i == 0) return;
        }
        if (idx[i] == i + n - k) return;
        ++idx[i];
        for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

} // namespace

RatVector minors_map(const RatMatrix& Y) {
    const std::size_t m = Y.rows(), n = Y.cols();
    RatVector out;
    const std::size_t kmax = std::min(m, n);
    for (std::size_t k = 1; k <= kmax; ++k) {
        for_each_subset(m, k, [&](const std::vector<std::size_t>& rows) {
            for_each_subset(n, k, [&](const std::vector<std::size_t>& cols) {
                RatMatrix sub(k, k);
                for (std::size_t i = 0; i < k; ++i)
                    for (std::size_t j = 0; j < k; ++j) sub(i, j) = Y(rows[i], cols[j]);
                out.push_back(det_exact(sub));
            });
        });
    }
    return out;
}

bool eplus_basis_membership(SubsetMask s, std::size_t m) {
    const SubsetMask head = (m >= 32) ? ~SubsetMask(0) : ((SubsetMask(1) << m) - 1);
    return (s & ~head) == 0 || (s & head) == head;
}

bool eplus_basis_membership(const std::vector<int>& subset, std::size_t m) {
    return eplus_basis_membership(subset_to_mask(subset), m);
}

ExteriorElement project_Eplus(const ExteriorElement& w, std::size_t m) {
    ExteriorElement out;
    out.ambient_dim = w.ambient_dim;
    out.grade = w.grade;
    for (const auto& [mask, c] : w.coords)
        if (eplus_basis_membership(mask, m)) out.coords.emplace(mask, c);
    return out;
}

namespace {

void validate_flow_tuple(const RatVector& t, std::size_t m, std::size_t dim) {
    if (t.size() != dim || m == 0 || m >= dim)
        throw InvalidFlowTuple("flow tuple length mismatch");
    Rational head(0), tail(0);
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] <= 0) throw InvalidFlowTuple("flow tuple components must be positive");
        (i < m ? head : tail) += t[i];
    }
    if (head != tail) throw InvalidFlowTuple("flow tuple head/tail sums differ");
}

} // namespace

bool eplus_t_keeps(SubsetMask s, const RatVector& t, std::size_t m) {
    Rational head(0), tail(0);
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (s & (SubsetMask(1) << i)) (i < m ? head : tail) += t[i];
    }
    return head >= tail;
}

ExteriorElement project_Eplus_t(const ExteriorElement& w, const RatVector& t, std::size_t m) {
    validate_flow_tuple(t, m, w.ambient_dim);
    ExteriorElement out;
    out.ambient_dim = w.ambient_dim;
    out.grade = w.grade;
    for (const auto& [mask, c] : w.coords)
        if (eplus_t_keeps(mask, t, m)) out.coords.emplace(mask, c);
    return out;
}

std::vector<IntVector> height_vectors(std::size_t dim, long height) {
    if (height < 1) throw Error("height_vectors: height must be >= 1");
    std::vector<IntVector> out;
    IntVector v(dim, Integer(-height));
    while (true) {
        bool zero = true;
        for (const auto& x : v)
            if (x != 0) { zero = false; break; }
        if (!zero) out.push_back(v);
        std::size_t i = dim;
        while (i > 0) {
            --i;
            if (v[i] < height) { ++v[i]; break; }
            v[i] = -height;
            if (i == 0) return out;
        }
    }
}

std::vector<DecomposableElement> enumerate_WZ(std::size_t ambient_dim, std::size_t grade,
                                              long height) {
    if (ambient_dim < 2 || grade < 1 || grade > ambient_dim - 1)
        throw GradeOutOfRange("enumerate_WZ: grade must be in 1..dim-1");
    const std::vector<IntVector> vecs = height_vectors(ambient_dim, height);
    std::vector<DecomposableElement> out;
    std::map<std::vector<std::pair<SubsetMask, Rational>>, bool> seen;

    std::vector<std::size_t> idx(grade);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t start) {
        if (pos == grade) {
            std::vector<RatVector> rv;
            std::vector<IntVector> iv;
            for (std::size_t k = 0; k < grade; ++k) {
                RatVector r(ambient_dim);
                for (std::size_t j = 0; j < ambient_dim; ++j) r[j] = Rational(vecs[idx[k]][j]);
                rv.push_back(std::move(r));
                iv.push_back(vecs[idx[k]]);
            }
            ExteriorElement w = wedge_product(rv);
            if (w.is_zero()) return;
            // canonical sign: first (lowest-mask) nonzero coefficient positive
            if (w.coords.begin()->second < 0) w = -w;
            std::vector<std::pair<SubsetMask, Rational>> key(w.coords.begin(), w.coords.end());
            if (seen.emplace(std::move(key), true).second)
                out.push_back(DecomposableElement{std::move(iv), std::move(w)});
            return;
        }
        for (std::size_t i = start; i < vecs.size(); ++i) {
            idx[pos] = i;
            rec(pos + 1, i + 1);
        }
    };
    rec(0, 0);
    return out;
}

} // namespace diophlab
