#include "diophlab/nonplanarity.hpp"

#include "diophlab/exterior.hpp"

#include <algorithm>
#include <map>

namespace diophlab {

PencilPair::PencilPair(RatMatrix a, RatMatrix b) : A(std::move(a)), B(std::move(b)) {
    if (B.rows() != B.cols() || A.rows() != B.rows())
        throw DimMismatch("PencilPair: A must be n x m, B must be n x n");
    if (rank_exact(hcat(A, B)) != n())
        throw RankDeficient("PencilPair: rank(A|B) < n");
}

bool hyperplane_member(const RatMatrix& Y, const PencilPair& P) {
    if (Y.rows() != P.m() || Y.cols() != P.n())
        throw DimMismatch("hyperplane_member: Y shape does not match pencil");
    return det_exact(P.A * Y + P.B) == 0;
}

PencilPair dual_pair(const PencilPair& P) {
    const std::size_t m = P.m(), n = P.n();
    const auto basis = nullspace_basis(hcat(P.A, P.B)); // basis of W_{A,B}^perp
    if (basis.size() != m) throw Error("dual_pair: unexpected orthocomplement dimension");
    RatMatrix C(m, m), D(m, n);
    for (std::size_t k = 0; k < m; ++k) {
        for (std::size_t i = 0; i < m; ++i) C(k, i) = Rational(basis[k][i]);
        for (std::size_t j = 0; j < n; ++j) D(k, j) = Rational(basis[k][m + j]);
    }
    return PencilPair(D, -C);
}

MultiPoly pencil_polynomial(const PolyMatrixMap& F, const PencilPair& P) {
    if (P.m() != F.m || P.n() != F.n)
        throw DimMismatch("pencil_polynomial: pencil/manifold shape mismatch");
    const std::size_t n = P.n();
    std::vector<std::vector<MultiPoly>> M(n, std::vector<MultiPoly>(n, MultiPoly(F.d)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            MultiPoly acc = MultiPoly::constant(F.d, P.B(i, j));
            for (std::size_t k = 0; k < F.m; ++k)
                if (P.A(i, k) != 0) acc = acc + F.at(k, j).scaled(P.A(i, k));
            M[i][j] = std::move(acc);
        }
    return det_poly(M);
}

namespace {

// Columns of u_Y^t (A|B)^t span u_Y^t W_{A,B}.
RatMatrix transported_span(const RatMatrix& Y, const PencilPair& P) {
    return uY_matrix(Y).transpose() * hcat(P.A, P.B).transpose();
}

RatMatrix head_basis(std::size_t m, std::size_t n) {
    RatMatrix E(m + n, m);
    for (std::size_t i = 0; i < m; ++i) E(i, i) = 1;
    return E;
}

RatMatrix tail_basis(std::size_t m, std::size_t n) {
    RatMatrix E(m + n, n);
    for (std::size_t j = 0; j < n; ++j) E(m + j, j) = 1;
    return E;
}

RatMatrix perp_columns(const RatMatrix& M) {
    const auto basis = nullspace_basis(M.transpose());
    RatMatrix K(M.rows(), basis.size());
    for (std::size_t k = 0; k < basis.size(); ++k)
        for (std::size_t i = 0; i < M.rows(); ++i) K(i, k) = Rational(basis[k][i]);
    return K;
}

} // namespace

bool elem_pred_i(const RatMatrix& Y, const PencilPair& P) { return hyperplane_member(Y, P); }

bool elem_pred_ii(const RatMatrix& Y, const PencilPair& P) {
    const std::size_t m = P.m(), n = P.n();
    const RatMatrix M = transported_span(Y, P);
    RatMatrix bottom(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) bottom(i, j) = M(m + i, j);
    return rank_exact(bottom) < n;
}

bool elem_pred_iii(const RatMatrix& Y, const PencilPair& P) {
    const std::size_t m = P.m(), n = P.n();
    const RatMatrix M = transported_span(Y, P);
    return rank_exact(hcat(M, head_basis(m, n))) < n + m;
}

bool elem_pred_iv(const RatMatrix& Y, const PencilPair& P) {
    const std::size_t m = P.m(), n = P.n();
    const RatMatrix K = perp_columns(transported_span(Y, P));
    return rank_exact(hcat(K, tail_basis(m, n))) < m + n;
}

bool elem_pred_v(const RatMatrix& Y, const PencilPair& P) {
    const std::size_t m = P.m();
    const RatMatrix K = perp_columns(transported_span(Y, P));
    RatMatrix top(m, K.cols());
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < K.cols(); ++j) top(i, j) = K(i, j);
    return rank_exact(top) < m;
}

bool elem_pred_vi(const RatMatrix& Y, const PencilPair& P) {
    return hyperplane_member(Y.transpose(), dual_pair(P));
}

std::array<bool, 6> elem_pred_all(const RatMatrix& Y, const PencilPair& P) {
    return {elem_pred_i(Y, P),  elem_pred_ii(Y, P), elem_pred_iii(Y, P),
            elem_pred_iv(Y, P), elem_pred_v(Y, P),  elem_pred_vi(Y, P)};
}

namespace {

struct CandidateKey {
    std::size_t nonzeros;
    std::vector<std::size_t> positions;
    std::vector<std::pair<Integer, int>> values; // (|v|, 0 for positive / 1 for negative)

    static CandidateKey of(const std::vector<long>& entries) {
        CandidateKey k;
        k.nonzeros = 0;
        for (std::size_t i = 0; i < entries.size(); ++i) {
            if (entries[i] == 0) continue;
            ++k.nonzeros;
            k.positions.push_back(i);
            k.values.emplace_back(Integer(entries[i] < 0 ? -entries[i] : entries[i]),
                                  entries[i] < 0 ? 1 : 0);
        }
        return k;
    }

    bool operator<(const CandidateKey& o) const {
        if (nonzeros != o.nonzeros) return nonzeros < o.nonzeros;
        if (positions != o.positions) return positions < o.positions;
        return values < o.values;
    }
};

std::vector<Integer> hnf_key(const IntMatrix& m) {
    const IntMatrix h = hnf_rows(m);
    std::vector<Integer> key;
    key.reserve(h.rows() * h.cols());
    for (std::size_t i = 0; i < h.rows(); ++i)
        for (std::size_t j = 0; j < h.cols(); ++j) key.push_back(h(i, j));
    return key;
}

void split_pencil(const std::vector<long>& entries, std::size_t n, std::size_t m,
                  IntMatrix& A, IntMatrix& B) {
    A = IntMatrix(n, m);
    B = IntMatrix(n, n);
    std::size_t pos = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m; ++j) A(i, j) = entries[pos++];
        for (std::size_t j = 0; j < n; ++j) B(i, j) = entries[pos++];
    }
}

long max_abs_entry(const IntMatrix& a, const IntMatrix& b) {
    Integer h(0);
    for (const auto& x : a.entries()) h = std::max(h, abs_int(x));
    for (const auto& x : b.entries()) h = std::max(h, abs_int(x));
    return h.convert_to<long>();
}

ZCertificate make_certificate(const PolyMatrixMap& F, const IntMatrix& A, const IntMatrix& B) {
    ZCertificate cert;
    cert.A = A;
    cert.B = B;
    cert.height = max_abs_entry(A, B);
    const MultiPoly p = pencil_polynomial(F, PencilPair(to_rational(A), to_rational(B)));
    cert.poly_hash = fnv1a(p.to_string());
    return cert;
}

} // namespace

SearchOutcome weak_np_failure_search(const PolyMatrixMap& F, long height, SearchMode mode,
                                     unsigned long long candidates, std::uint64_t seed,
                                     int threads) {
    (void)threads;
    if (height < 1) throw Error("weak_np_failure_search: height must be >= 1");
    const std::size_t n = F.n, m = F.m;
    SearchOutcome out;

    if (mode == SearchMode::Exhaustive) {
        const std::size_t cells = n * (m + n);
        std::vector<long> e(cells, -height);
        std::map<std::vector<Integer>, bool> class_zero;
        bool have_best = false;
        CandidateKey best_key{};
        IntMatrix bestA, bestB;
        while (true) {
            ++out.candidates_tested;
            IntMatrix A, B;
            split_pencil(e, n, m, A, B);
            const RatMatrix AB = to_rational(hcat(A, B));
            if (rank_exact(AB) == n) {
                const auto key = hnf_key(hcat(A, B));
                auto it = class_zero.find(key);
                if (it == class_zero.end()) {
                    ++out.classes_tested;
                    const bool zero =
                        pencil_polynomial(F, PencilPair(to_rational(A), to_rational(B)))
                            .is_zero();
                    it = class_zero.emplace(key, zero).first;
                }
                if (it->second) {
                    CandidateKey ck = CandidateKey::of(e);
                    if (!have_best || ck < best_key) {
                        have_best = true;
                        best_key = std::move(ck);
                        bestA = A;
                        bestB = B;
                    }
                }
            }
            std::size_t i = cells;
            bool done = true;
            while (i > 0) {
                --i;
                if (e[i] < height) { ++e[i]; done = false; break; }
                e[i] = -height;
            }
            if (done) break;
        }
        if (have_best) out.certificate = make_certificate(F, bestA, bestB);
        return out;
    }

    // Randomized: Schwartz-Zippel point tests with exact confirmation.
    Rng rng(seed);
    unsigned maxdeg = 0;
    for (const auto& p : F.entries) maxdeg = std::max(maxdeg, p.total_degree());
    const unsigned long long degree_bound = std::max<unsigned long long>(1, n * maxdeg);
    const unsigned long long box =
        std::max<unsigned long long>(degree_bound * 2ULL * std::max(1ULL, candidates), 1024ULL);
    std::vector<RatVector> pts;
    std::vector<RatMatrix> Ys;
    for (int k = 0; k < 2; ++k) {
        RatVector x(F.d);
        for (std::size_t i = 0; i < F.d; ++i)
            x[i] = Rational(Integer(rng.range(-static_cast<long long>(box / 2),
                                              static_cast<long long>(box / 2))));
        Ys.push_back(evaluate(F, x));
        pts.push_back(std::move(x));
    }
    for (unsigned long long c = 0; c < candidates; ++c) {
        ++out.candidates_tested;
        IntMatrix A(n, m), B(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < m; ++j) A(i, j) = Integer(rng.range(-height, height));
            for (std::size_t j = 0; j < n; ++j) B(i, j) = Integer(rng.range(-height, height));
        }
        const RatMatrix Ar = to_rational(A), Br = to_rational(B);
        if (rank_exact(hcat(Ar, Br)) != n) continue;
        if (det_exact(Ar * Ys[0] + Br) != 0) continue;
        if (det_exact(Ar * Ys[1] + Br) != 0) continue;
        ++out.classes_tested;
        if (pencil_polynomial(F, PencilPair(Ar, Br)).is_zero()) {
            out.certificate = make_certificate(F, A, B);
            return out;
        }
    }
    return out;
}

StrongNpReport strong_np_rank(const PolyMatrixMap& F, const std::vector<RatVector>& samples) {
    if (samples.size() < 2) throw TooFewSamples("strong_np_rank: need at least two samples");
    StrongNpReport rep;
    // N = C(m+n, n) - 1
    const std::size_t mn = F.m + F.n;
    Integer binom(1);
    for (std::size_t i = 0; i < F.n; ++i) binom = binom * Integer(mn - i) / Integer(i + 1);
    rep.N = (binom - 1).convert_to<std::size_t>();

    const RatVector d0 = minors_map(evaluate(F, samples[0]));
    RatMatrix rowsM(samples.size() - 1, d0.size());
    for (std::size_t s = 1; s < samples.size(); ++s) {
        const RatVector ds = minors_map(evaluate(F, samples[s]));
        for (std::size_t j = 0; j < d0.size(); ++j) rowsM(s - 1, j) = ds[j] - d0[j];
    }
    rep.rank = rank_exact(rowsM);
    rep.is_strong = (rep.rank == rep.N);
    if (!rep.is_strong) {
        const auto basis = nullspace_basis(rowsM);
        if (!basis.empty()) rep.kernel = basis.front();
    }
    return rep;
}

std::pair<IntMatrix, IntMatrix> lift_submatrix_certificate(const IntMatrix& At,
                                                           const IntMatrix& Bt,
                                                           std::size_t m, std::size_t n) {
    const std::size_t nt = At.rows(), mt = At.cols();
    if (Bt.rows() != nt || Bt.cols() != nt || mt > m || nt > n)
        throw DimMismatch("lift_submatrix_certificate: shapes");
    IntMatrix A(n, m), B(n, n);
    for (std::size_t i = 0; i < nt; ++i) {
        for (std::size_t j = 0; j < mt; ++j) A(i, j) = At(i, j);
        for (std::size_t j = 0; j < nt; ++j) B(i, j) = Bt(i, j);
    }
    for (std::size_t i = nt; i < n; ++i) B(i, i) = 1;
    return {A, B};
}

namespace {

// Deterministic integer grid search for a point where `poly` is nonzero.
// Boxes grow until the per-variable degree bound guarantees a hit.
RatVector nonvanishing_point(const MultiPoly& poly) {
    if (poly.is_zero()) throw Error("nonvanishing_point: zero polynomial");
    const std::size_t d = poly.nvars();
    for (long radius = 0;; ++radius) {
        std::vector<long> v(d, -radius);
        while (true) {
            RatVector x(d);
            for (std::size_t i = 0; i < d; ++i) x[i] = Rational(Integer(v[i]));
            if (poly.eval(x) != 0) return x;
            std::size_t i = d;
            bool done = true;
            while (i > 0) {
                --i;
                if (v[i] < radius) { ++v[i]; done = false; break; }
                v[i] = -radius;
            }
            if (done) break;
        }
    }
}

} // namespace

StackReduction reduce_stack_certificate(const PolyMatrixMap& F1, const PolyMatrixMap& F2,
                                        const RatMatrix& A, const RatMatrix& B) {
    if (F1.n != F2.n) throw ColumnMismatch("reduce_stack_certificate");
    const std::size_t n = F1.n, m1 = F1.m, m2 = F2.m;
    if (A.rows() != n || A.cols() != m1 + m2 || B.rows() != n || B.cols() != n)
        throw DimMismatch("reduce_stack_certificate: pencil shape");
    const PolyMatrixMap F = stack_product(F1, F2);
    if (!pencil_polynomial(F, PencilPair(A, B)).is_zero())
        throw Error("reduce_stack_certificate: pencil is not a certificate for the stack");

    RatMatrix A1(n, m1), A2(n, m2);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m1; ++j) A1(i, j) = A(i, j);
        for (std::size_t j = 0; j < m2; ++j) A2(i, j) = A(i, m1 + j);
    }

    // Echelonize (A2|B|A1); the top r rows carry (A2'|C), the bottom rows
    // keep only their A1 part.
    RatMatrix W = hcat(hcat(A2, B), A1);
    rref_in_place(W);
    const std::size_t r = rank_exact(hcat(A2, B));
    RatMatrix A2p(r, m2), C(r, n);
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < m2; ++j) A2p(i, j) = W(i, j);
        for (std::size_t j = 0; j < n; ++j) C(i, j) = W(i, m2 + j);
    }

    // Does some x2 give rank(A2' F2(x2) + C) = r?  Decided symbolically
    // through the r x r minors of the polynomial matrix.
    std::vector<std::vector<MultiPoly>> G(r, std::vector<MultiPoly>(n, MultiPoly(F2.d)));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            MultiPoly acc = MultiPoly::constant(F2.d, C(i, j));
            for (std::size_t k = 0; k < m2; ++k)
                if (A2p(i, k) != 0) acc = acc + F2.at(k, j).scaled(A2p(i, k));
            G[i][j] = std::move(acc);
        }
    // r = 0 means A2 and B vanish; the empty minor is the constant 1 and
    // the pencil collapses onto the first factor directly.
    MultiPoly witness_minor = MultiPoly::constant(F2.d, Rational(1));
    if (r > 0) {
        witness_minor = MultiPoly(F2.d);
        std::vector<std::size_t> cols(r);
        for (std::size_t i = 0; i < r; ++i) cols[i] = i;
        // iterate r-subsets of columns
        while (true) {
            std::vector<std::vector<MultiPoly>> sub(r, std::vector<MultiPoly>(r, MultiPoly(F2.d)));
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t j = 0; j < r; ++j) sub[i][j] = G[i][cols[j]];
            MultiPoly mdet = det_poly(sub);
            if (!mdet.is_zero()) { witness_minor = std::move(mdet); break; }
            std::size_t i = r;
            bool done = true;
            while (i > 0) {
                --i;
                if (cols[i] != i + n - r) {
                    ++cols[i];
                    for (std::size_t j = i + 1; j < r; ++j) cols[j] = cols[j - 1] + 1;
                    done = false;
                    break;
                }
            }
            if (done) break;
        }
    }

    StackReduction red;
    if (!witness_minor.is_zero()) {
        // Fix x2 with full rank; then det(A1 F1 + (A2 F2(x2) + B)) vanishes
        // identically in x1.
        const RatVector x2 = nonvanishing_point(witness_minor);
        red.factor = 1;
        red.A = A1;
        red.B = A2 * evaluate(F2, x2) + B;
        return red;
    }

    // rank(A2' F2 + C) < r everywhere: any completion of (A2'|C) to rank n
    // yields a certificate for F2.
    RatMatrix stacked = hcat(A2p, C);
    std::size_t have = r;
    for (std::size_t k = 0; k < m2 + n && have < n; ++k) {
        RatMatrix e(1, m2 + n);
        e(0, k) = 1;
        RatMatrix trial = vcat(stacked, e);
        if (rank_exact(trial) > rank_exact(stacked)) {
            stacked = trial;
            ++have;
        }
    }
    RatMatrix A2s(n, m2), B2s(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m2; ++j) A2s(i, j) = stacked(i, j);
        for (std::size_t j = 0; j < n; ++j) B2s(i, j) = stacked(i, m2 + j);
    }
    red.factor = 2;
    red.A = A2s;
    red.B = B2s;
    return red;
}

LemmaChecksReport weak_np_lemma_checks(std::uint64_t seed) {
    Rng rng(seed);
    LemmaChecksReport rep;

    // (a) row and column cases: det(AY+B) = 0 is an affine condition that
    // cuts out a hyperplane or the empty set.
    for (int trial = 0; trial < 40; ++trial) {
        ++rep.trials;
        const bool row_case = (trial % 2 == 0); // m = 1 (row) vs n = 1 (column)
        const std::size_t n = row_case ? 1 + static_cast<std::size_t>(rng.range(1, 3)) : 1;
        const std::size_t m = row_case ? 1 : 1 + static_cast<std::size_t>(rng.range(1, 3));
        RatMatrix A(n, m), B(n, n);
        do {
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < m; ++j) A(i, j) = rng.rational(3, 3);
                for (std::size_t j = 0; j < n; ++j) B(i, j) = rng.rational(3, 3);
            }
        } while (rank_exact(hcat(A, B)) != n);
        const PencilPair P(A, B);
        // f(Y) = det(AY+B) should be affine in the entries of Y
        const std::size_t dimY = m * n;
        auto f = [&](const RatVector& y) {
            RatMatrix Y(m, n);
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = 0; j < n; ++j) Y(i, j) = y[i * n + j];
            return det_exact(A * Y + B);
        };
        RatVector zero(dimY, Rational(0));
        const Rational c0 = f(zero);
        RatVector coeff(dimY);
        for (std::size_t k = 0; k < dimY; ++k) {
            RatVector e = zero;
            e[k] = 1;
            coeff[k] = f(e) - c0;
        }
        bool affine = true;
        for (int probes = 0; probes < 5; ++probes) {
            RatVector y(dimY);
            for (auto& v : y) v = rng.rational(5, 4);
            Rational expect = c0;
            for (std::size_t k = 0; k < dimY; ++k) expect += coeff[k] * y[k];
            if (f(y) != expect) { affine = false; break; }
        }
        if (!affine) { ++rep.violations; continue; }
        bool all_zero = true;
        for (const auto& c : coeff)
            if (c != 0) all_zero = false;
        if (all_zero) {
            if (c0 == 0) { ++rep.violations; continue; } // would contradict rank(A|B)=n
            ++rep.empty_cases;
        } else {
            // solve f = 0 explicitly and confirm a point on the hyperplane
            std::size_t k0 = 0;
            while (coeff[k0] == 0) ++k0;
            RatVector y(dimY, Rational(0));
            y[k0] = -c0 / coeff[k0];
            if (f(y) != 0) { ++rep.violations; continue; }
            ++rep.hyperplane_cases;
        }
    }

    // (b) strong non-planarity certified by rank implies no Z-certificate
    // at small height.
    for (int trial = 0; trial < 8; ++trial) {
        ++rep.trials;
        // random 1 x 2 polynomial row (x, c2 x^2 + c3 x^3), nondegenerate
        PolyMatrixMap F(1, 2, 1);
        F.at(0, 0) = MultiPoly::variable(1, 0);
        MultiPoly q(1);
        q = MultiPoly::variable(1, 0).pow(2).scaled(Rational(rng.range(1, 3)));
        if (rng.range(0, 1) == 1)
            q = q + MultiPoly::variable(1, 0).pow(3).scaled(Rational(rng.range(1, 2)));
        F.at(0, 1) = q;
        std::vector<RatVector> samples;
        for (int s = 0; s < 8; ++s) samples.push_back({rng.rational(9, 7)});
        const StrongNpReport rep_s = strong_np_rank(F, samples);
        if (!rep_s.is_strong) continue;
        ++rep.strong_instances;
        const SearchOutcome res = weak_np_failure_search(F, 1, SearchMode::Exhaustive);
        if (res.certificate) ++rep.violations;
    }

    // (c) rank-r pencils against prop2x2 achieve rank r at some point.
    const PolyMatrixMap F = builtin("prop2x2");
    for (int trial = 0; trial < 30; ++trial) {
        ++rep.trials;
        const std::size_t r = 1 + static_cast<std::size_t>(rng.range(0, 1));
        RatMatrix A(r, 2), B(r, 2);
        do {
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t j = 0; j < 2; ++j) {
                    A(i, j) = Rational(rng.range(-2, 2));
                    B(i, j) = Rational(rng.range(-2, 2));
                }
        } while (rank_exact(hcat(A, B)) != r);
        ++rep.rank_instances;
        bool achieved = false;
        for (long g = 0; g <= 2 && !achieved; ++g) {
            std::vector<long> v(3, -g);
            while (true) {
                RatVector x{Rational(v[0]), Rational(v[1]), Rational(v[2])};
                if (rank_exact(A * evaluate(F, x) + B) == r) { achieved = true; break; }
                std::size_t i = 3;
                bool done = true;
                while (i > 0) {
                    --i;
                    if (v[i] < g) { ++v[i]; done = false; break; }
                    v[i] = -g;
                }
                if (done) break;
            }
        }
        if (!achieved) ++rep.violations;
    }
    return rep;
}

} // namespace diophlab
