#include "diophlab/flow.hpp"

#include <algorithm>
#include <bit>
#include <functional>

namespace diophlab {

FlowTuple::FlowTuple(RatVector values, std::size_t m_, std::size_t n_)
    : t(std::move(values)), m(m_), n(n_) {
    if (t.size() != m + n || m == 0 || n == 0)
        throw InvalidFlowTuple("flow tuple length must be m+n");
    Rational head(0), tail(0);
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] <= 0) throw InvalidFlowTuple("flow tuple components must be positive");
        (i < m ? head : tail) += t[i];
    }
    if (head != tail) throw InvalidFlowTuple("flow tuple sums differ");
}

FlowTuple FlowTuple::scaled(long s) const {
    if (s < 1) throw InvalidFlowTuple("scale must be positive");
    RatVector v = t;
    for (auto& x : v) x *= s;
    return FlowTuple(v, m, n);
}

bool FlowTuple::is_integral() const {
    for (const auto& x : t)
        if (den(x) != 1) return false;
    return true;
}

RatMatrix flow_matrix(const FlowTuple& t) {
    if (!t.is_integral())
        throw NonDyadicExponent("flow_matrix: 2^t is rational only for integer t");
    const std::size_t d = t.m + t.n;
    RatMatrix g(d, d);
    for (std::size_t i = 0; i < d; ++i) {
        const long e = num(t.t[i]).convert_to<long>();
        const Integer p = pow_int(Integer(2), e);
        g(i, i) = (i < t.m) ? Rational(p) : Rational(Integer(1), p);
    }
    return g;
}

LatticeBasis lattice_at(const RatMatrix& Y, const FlowTuple& t) {
    if (Y.rows() != t.m || Y.cols() != t.n)
        throw DimMismatch("lattice_at: Y shape does not match the flow tuple");
    return LatticeBasis::from_matrix(flow_matrix(t) * uY_matrix(Y));
}

Rational flow_scale_exponent(SubsetMask s, const FlowTuple& t) {
    Rational e(0);
    for (std::size_t i = 0; i < t.t.size(); ++i)
        if (s & (SubsetMask(1) << i)) e += (i < t.m) ? t.t[i] : -t.t[i];
    return e;
}

std::vector<RayRow> systole_ray(const RatMatrix& Y, const FlowTuple& direction, long steps) {
    std::vector<RayRow> rows;
    for (long s = 1; s <= steps; ++s) {
        const FlowTuple ts = direction.scaled(s);
        const ShortestVector sv = shortest_vector(lattice_at(Y, ts));
        rows.push_back(RayRow{s, sv.norm_sq});
    }
    return rows;
}

namespace {

// Streaming enumeration of grade-l wedges of height-bounded integer
// vectors, with incremental prefix wedges in int64 (guarded; the wedge
// coordinates of height-H vectors in dimension d are at most (d H^2)^(l/2)).
struct TupleStream {
    std::size_t dim, grade;
    long height;
    std::vector<std::vector<long long>> vecs;
    std::vector<SubsetMask> masks_by_grade; // masks of popcount == grade level in play

    TupleStream(std::size_t d, std::size_t g, long h) : dim(d), grade(g), height(h) {
        double bound = 1.0;
        for (std::size_t k = 0; k < grade; ++k)
            bound *= static_cast<double>(dim) * static_cast<double>(height) * height;
        if (bound > 1e17) throw Error("tuple stream: height too large for exact streaming");
        const auto hv = height_vectors(dim, height);
        vecs.reserve(hv.size());
        for (const auto& v : hv) {
            std::vector<long long> x(dim);
            for (std::size_t i = 0; i < dim; ++i) x[i] = v[i].convert_to<long long>();
            vecs.push_back(std::move(x));
        }
    }

    // fn(coords over masks of size `grade` in increasing mask order,
    //    tuple of vector indices); return false from fn to stop the stream.
    void run(const std::function<bool(const std::vector<long long>&,
                                      const std::vector<std::size_t>&)>& fn) {
        // masks of each grade in increasing numeric order; coords of a
        // grade-k prefix are indexed by position in masks[k]
        std::vector<std::vector<SubsetMask>> masks(grade + 1);
        for (SubsetMask s = 0; s < (SubsetMask(1) << dim); ++s) {
            const std::size_t pc = static_cast<std::size_t>(std::popcount(s));
            if (pc <= grade) masks[pc].push_back(s);
        }
        std::vector<std::vector<std::size_t>> index_of(grade + 1,
                                                       std::vector<std::size_t>(SubsetMask(1) << dim, SIZE_MAX));
        for (std::size_t k = 0; k <= grade; ++k)
            for (std::size_t p = 0; p < masks[k].size(); ++p) index_of[k][masks[k][p]] = p;

        std::vector<std::vector<long long>> w(grade + 1);
        for (std::size_t k = 0; k <= grade; ++k) w[k].assign(masks[k].size(), 0);
        w[0][0] = 1;
        std::vector<std::size_t> idx(grade);

        std::function<bool(std::size_t, std::size_t)> rec = [&](std::size_t level,
                                                                std::size_t start) -> bool {
            for (std::size_t vi = start; vi < vecs.size(); ++vi) {
                const auto& v = vecs[vi];
                auto& out = w[level + 1];
                std::fill(out.begin(), out.end(), 0);
                bool nonzero = false;
                for (std::size_t p = 0; p < masks[level].size(); ++p) {
                    const long long c = w[level][p];
                    if (c == 0) continue;
                    const SubsetMask mask = masks[level][p];
                    for (std::size_t i = 0; i < dim; ++i) {
                        if (v[i] == 0) continue;
                        const SubsetMask bit = SubsetMask(1) << i;
                        if (mask & bit) continue;
                        const SubsetMask above = mask >> (i + 1);
                        const long long sgn = (std::popcount(above) % 2 == 0) ? 1 : -1;
                        out[index_of[level + 1][mask | bit]] += sgn * c * v[i];
                    }
                }
                for (const long long c : out)
                    if (c != 0) { nonzero = true; break; }
                if (!nonzero) continue;
                idx[level] = vi;
                if (level + 1 == grade) {
                    if (!fn(out, idx)) return false;
                } else {
                    if (!rec(level + 1, vi + 1)) return false;
                }
            }
            return true;
        };
        rec(0, 0);
    }
};

// Per-sample integer form of the kept rows of pi+ after the exterior
// power of u_{F(x)}: value of ||pi+ u w||^2 at the sample is
// (sum of (P w)^2) / den_sq.
struct SampleOperator {
    std::vector<std::vector<Integer>> rows; // kept-mask rows over grade masks
    Integer den_sq;
};

std::vector<SampleOperator> sample_operators(const PolyMatrixMap& F,
                                             const std::vector<RatVector>& samples,
                                             std::size_t grade,
                                             const std::vector<SubsetMask>& grade_masks) {
    const std::size_t dim = F.m + F.n;
    std::vector<SampleOperator> ops;
    for (const auto& x : samples) {
        const RatMatrix u = uY_matrix(evaluate(F, x));
        Integer den(1);
        for (const auto& e : u.entries()) den = lcm_int(den, diophlab::den(e));
        IntMatrix M(dim, dim);
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = 0; j < dim; ++j)
                M(i, j) = num(u(i, j)) * (den / diophlab::den(u(i, j)));
        SampleOperator op;
        op.den_sq = pow_int(den, 2 * static_cast<unsigned long>(grade));
        for (SubsetMask kept = 0; kept < (SubsetMask(1) << dim); ++kept) {
            if (static_cast<std::size_t>(std::popcount(kept)) != grade) continue;
            if (!eplus_basis_membership(kept, F.m)) continue;
            // row: coefficient of e_kept in wedge of M-columns indexed by each grade mask
            std::vector<Integer> row;
            row.reserve(grade_masks.size());
            const auto kept_rows = mask_to_subset(kept);
            for (const SubsetMask gm : grade_masks) {
                const auto cols = mask_to_subset(gm);
                IntMatrix sub(grade, grade);
                for (std::size_t a = 0; a < grade; ++a)
                    for (std::size_t b = 0; b < grade; ++b)
                        sub(a, b) = M(kept_rows[a] - 1, cols[b] - 1);
                row.push_back(num(det_exact(to_rational(sub))));
            }
            op.rows.push_back(std::move(row));
        }
        ops.push_back(std::move(op));
    }
    return ops;
}

std::vector<SubsetMask> masks_of_grade(std::size_t dim, std::size_t grade) {
    std::vector<SubsetMask> out;
    for (SubsetMask s = 0; s < (SubsetMask(1) << dim); ++s)
        if (static_cast<std::size_t>(std::popcount(s)) == grade) out.push_back(s);
    return out;
}

DecomposableElement materialize(const TupleStream& stream, const std::vector<std::size_t>& idx,
                                std::size_t dim) {
    DecomposableElement de;
    std::vector<RatVector> rv;
    for (const std::size_t vi : idx) {
        IntVector v(dim);
        RatVector r(dim);
        for (std::size_t i = 0; i < dim; ++i) {
            v[i] = Integer(stream.vecs[vi][i]);
            r[i] = Rational(v[i]);
        }
        de.vectors.push_back(std::move(v));
        rv.push_back(std::move(r));
    }
    de.wedge = wedge_product(rv);
    return de;
}

std::vector<std::size_t> default_grades(std::size_t dim, const std::vector<std::size_t>& grades) {
    if (!grades.empty()) return grades;
    std::vector<std::size_t> out;
    for (std::size_t l = 1; l + 1 <= dim; ++l) out.push_back(l);
    return out;
}

} // namespace

MarginResult criterion_margin(const PolyMatrixMap& F, const std::vector<RatVector>& samples,
                              long w_height, const std::vector<std::size_t>& grades) {
    if (w_height < 1) throw Error("criterion_margin: height must be >= 1");
    if (samples.empty()) throw Error("criterion_margin: need at least one sample");
    const std::size_t dim = F.m + F.n;
    MarginResult result;
    bool have = false;
    Rational best;
    std::vector<std::size_t> best_idx;
    std::size_t best_grade = 0;

    for (const std::size_t grade : default_grades(dim, grades)) {
        if (grade < 1 || grade >= dim) throw GradeOutOfRange("criterion_margin grade");
        const auto gmasks = masks_of_grade(dim, grade);
        const auto ops = sample_operators(F, samples, grade, gmasks);
        TupleStream stream(dim, grade, w_height);
        std::vector<Integer> wbig(gmasks.size());
        stream.run([&](const std::vector<long long>& w, const std::vector<std::size_t>& idx) {
            ++result.tuples_scanned;
            for (std::size_t i = 0; i < w.size(); ++i) wbig[i] = Integer(w[i]);
            // max over samples, early exit once it reaches the current best
            bool rejected = false;
            Rational local_max(0);
            for (const auto& op : ops) {
                Integer acc(0);
                for (const auto& row : op.rows) {
                    Integer dotv(0);
                    for (std::size_t i = 0; i < row.size(); ++i)
                        if (wbig[i] != 0) dotv += row[i] * wbig[i];
                    acc += dotv * dotv;
                }
                const Rational val(acc, op.den_sq);
                if (val > local_max) local_max = val;
                if (have && local_max >= best) { rejected = true; break; }
            }
            if (!rejected && (!have || local_max < best)) {
                have = true;
                best = local_max;
                best_idx = idx;
                best_grade = grade;
            }
            return true;
        });
        if (have && best == 0) break; // margin cannot go lower
    }
    if (!have) throw Error("criterion_margin: empty decomposable set");
    result.margin = best;
    TupleStream stream(dim, best_grade, w_height);
    result.argmin = materialize(stream, best_idx, dim);
    return result;
}

ZeroWitnessResult criterion_zero_witness(const PolyMatrixMap& F,
                                         const std::vector<RatVector>& samples, long w_height,
                                         const std::vector<std::size_t>& grades) {
    if (w_height < 1) throw Error("criterion_zero_witness: height must be >= 1");
    if (samples.empty()) throw Error("criterion_zero_witness: need at least one sample");
    const std::size_t dim = F.m + F.n;
    ZeroWitnessResult result;

    for (const std::size_t grade : default_grades(dim, grades)) {
        if (grade < 1 || grade >= dim) throw GradeOutOfRange("criterion_zero_witness grade");
        const auto gmasks = masks_of_grade(dim, grade);
        const auto ops = sample_operators(F, samples, grade, gmasks);
        // Solution space of pi+ u_{F(x)} w = 0 over all samples; skip the
        // enumeration when it is trivial.
        std::size_t total_rows = 0;
        for (const auto& op : ops) total_rows += op.rows.size();
        RatMatrix stacked(total_rows, gmasks.size());
        std::size_t rr = 0;
        for (const auto& op : ops)
            for (const auto& row : op.rows) {
                for (std::size_t j = 0; j < row.size(); ++j) stacked(rr, j) = Rational(row[j]);
                ++rr;
            }
        if (nullspace_basis(stacked).empty()) continue;

        bool found = false;
        std::vector<std::size_t> hit_idx;
        TupleStream stream(dim, grade, w_height);
        std::vector<Integer> wbig(gmasks.size());
        stream.run([&](const std::vector<long long>& w, const std::vector<std::size_t>& idx) {
            ++result.tuples_scanned;
            for (std::size_t i = 0; i < w.size(); ++i) wbig[i] = Integer(w[i]);
            for (const auto& op : ops) {
                for (const auto& row : op.rows) {
                    Integer dotv(0);
                    for (std::size_t i = 0; i < row.size(); ++i)
                        if (wbig[i] != 0) dotv += row[i] * wbig[i];
                    if (dotv != 0) return true; // not annihilated; keep scanning
                }
            }
            found = true;
            hit_idx = idx;
            return false; // first witness found; stop the stream
        });
        if (found) {
            TupleStream stream2(dim, grade, w_height);
            result.witness = materialize(stream2, hit_idx, dim);
            // exact per-sample verification through the rational path
            result.per_sample.clear();
            for (const auto& x : samples) {
                const ExteriorElement img =
                    project_Eplus(uY_action(evaluate(F, x), result.witness->wedge), F.m);
                result.per_sample.push_back(img.is_zero());
            }
            return result;
        }
    }
    return result;
}

} // namespace diophlab
