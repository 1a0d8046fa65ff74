#include "diophlab/dioph.hpp"

namespace diophlab {

WeightTuple::WeightTuple(RatVector weights, std::size_t m_, std::size_t n_)
    : r(std::move(weights)), m(m_), n(n_) {
    if (r.size() != m + n) throw InvalidWeights("weight tuple length != m+n");
    Rational head(0), tail_sum(0);
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (r[i] < 0) throw InvalidWeights("weights must be nonnegative");
        (i < m ? head : tail_sum) += r[i];
    }
    if (head != 1 || tail_sum != 1)
        throw InvalidWeights("row and tail weights must each sum to 1");
}

namespace {

// Common-denominator view of (Y, z): Y_j q + z_j = (Ynum_j . q + znum_j) / L.
struct ScaledForms {
    std::size_t m, n;
    Integer L;
    IntMatrix ynum;
    IntVector znum;

    ScaledForms(const RatMatrix& Y, const InhomShift& z) : m(Y.rows()), n(Y.cols()) {
        RatVector zz = z.z;
        if (zz.empty()) zz.assign(m, Rational(0));
        if (zz.size() != m) throw DimMismatch("shift length != m");
        L = 1;
        for (const auto& e : Y.entries()) L = lcm_int(L, den(e));
        for (const auto& e : zz) L = lcm_int(L, den(e));
        ynum = IntMatrix(m, n);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < n; ++j)
                ynum(i, j) = num(Y(i, j)) * (L / den(Y(i, j)));
        znum.resize(m);
        for (std::size_t j = 0; j < m; ++j) znum[j] = num(zz[j]) * (L / den(zz[j]));
    }

    // residues res_j = v_j - p_j L with p = best_p; |res_j| <= L/2
    void residues(const IntVector& q, IntVector& p, IntVector& res) const {
        p.resize(m);
        res.resize(m);
        for (std::size_t j = 0; j < m; ++j) {
            Integer v = znum[j];
            for (std::size_t i = 0; i < n; ++i) v += ynum(j, i) * q[i];
            // nearest integer to v/L, exact halves toward zero
            const Integer f = floor_div(v, L);
            const Integer rem2 = 2 * (v - f * L);
            Integer pj;
            if (rem2 > L) pj = f + 1;
            else if (rem2 < L) pj = f;
            else pj = (v > 0) ? f : f + 1;
            p[j] = pj;
            res[j] = v - pj * L;
        }
    }
};

Witness make_witness(const ScaledForms& forms, const IntVector& q, const IntVector& p,
                     const IntVector& res, long t) {
    Witness w;
    w.q = q;
    w.p = p;
    w.Q = pow_rat(Rational(2), t);
    w.row_errors.resize(forms.m);
    for (std::size_t j = 0; j < forms.m; ++j)
        w.row_errors[j] = Rational(abs_int(res[j]), forms.L);
    return w;
}

long max_shell(const Integer& qmax) {
    if (qmax < 1) throw Error("scan: Qmax must be >= 1");
    long t = 0;
    Integer q(1);
    while (q * 2 <= qmax) {
        q *= 2;
        ++t;
    }
    return t;
}

// Odometer over [-bound_i, bound_i]^n in lexicographic order.
struct BoxIter {
    std::vector<long long> v, lo, hi;
    bool done = false;

    explicit BoxIter(const std::vector<long long>& bounds) {
        for (long long b : bounds) {
            lo.push_back(-b);
            hi.push_back(b);
        }
        v = lo;
    }
    bool next() {
        std::size_t i = v.size();
        while (i > 0) {
            --i;
            if (v[i] < hi[i]) { ++v[i]; return true; }
            v[i] = lo[i];
        }
        done = true;
        return false;
    }
};

IntVector to_intvec(const std::vector<long long>& v) {
    IntVector q(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) q[i] = Integer(v[i]);
    return q;
}

} // namespace

IntVector best_p(const RatMatrix& Y, const IntVector& q, const InhomShift& z) {
    bool zero = true;
    for (const auto& qi : q)
        if (qi != 0) zero = false;
    if (zero) throw Error("best_p: q must be nonzero");
    if (q.size() != Y.cols()) throw DimMismatch("best_p: q length != n");
    ScaledForms forms(Y, z);
    IntVector p, res;
    forms.residues(q, p, res);
    return p;
}

EpsBracket bracket_eps(const std::function<bool(const Rational&)>& pred) {
    const long grid = 1024; // 2^10
    long lo = -2 * grid;
    while (!pred(Rational(lo, grid))) lo *= 2;
    long hi = grid;
    while (pred(Rational(hi, grid))) hi *= 2;
    while (hi - lo > 1) {
        const long mid = lo + (hi - lo) / 2;
        if (pred(Rational(mid, grid))) lo = mid;
        else hi = mid;
    }
    return EpsBracket{Rational(lo, grid), Rational(hi, grid)};
}

namespace {

struct BestTracker {
    bool have = false;
    Integer score; // minimized
    IntVector q, p, res;

    void offer(const Integer& s, const IntVector& qq, const IntVector& pp, const IntVector& rr) {
        if (!have || s < score) {
            have = true;
            score = s;
            q = qq;
            p = pp;
            res = rr;
        }
    }
};

Shell finish_shell(const ScaledForms& forms, const BestTracker& best, long t,
                   const std::function<bool(const Rational&)>& pred_eps, bool zero_score) {
    if (!best.have) throw Error("scan: empty shell");
    Shell sh;
    sh.t = t;
    sh.witness = make_witness(forms, best.q, best.p, best.res, t);
    if (zero_score) {
        sh.eps_infinite = true;
        sh.witness.eps_infinite = true;
        return sh;
    }
    const EpsBracket br = bracket_eps(pred_eps);
    sh.eps_low = br.lo;
    sh.eps_high = br.hi;
    sh.witness.eps_achieved = br.lo;
    return sh;
}

} // namespace

ScanResult scan_vwa(const RatMatrix& Y, const InhomShift& z, const Integer& qmax) {
    ScaledForms forms(Y, z);
    ScanResult out;
    out.m = forms.m;
    out.n = forms.n;
    const long tmax = max_shell(qmax);
    const long n = static_cast<long>(forms.n);

    BestTracker best;
    Integer prevQ2(0); // (previous shell Q)^2, 0 before the first shell
    for (long t = 1; t <= tmax; ++t) {
        const Integer Q = pow_int(Integer(2), t);
        const Integer Q2 = Q * Q;
        // sup-norm bound: |q_i| <= floor(Q^(1/n))
        long long radius = 1;
        while (pow_int(Integer(radius + 1), n) <= Q) ++radius;
        BoxIter it(std::vector<long long>(forms.n, radius));
        IntVector p, res;
        while (!it.done) {
            const IntVector q = to_intvec(it.v);
            Integer norm2(0);
            bool qzero = true;
            for (const auto& qi : q) {
                norm2 += qi * qi;
                if (qi != 0) qzero = false;
            }
            // annulus: prevQ2 < (||q||^2)^n <= Q2
            if (!qzero) {
                const Integer norm2n = pow_int(norm2, n);
                if (norm2n <= Q2 && norm2n > prevQ2) {
                    forms.residues(q, p, res);
                    Integer score(0);
                    for (const auto& r : res) score += r * r;
                    best.offer(score, q, p, res);
                }
            }
            it.next();
        }
        prevQ2 = Q2;
        const bool zero = best.have && best.score == 0;
        const Rational errsq_m =
            zero ? Rational(0)
                 : pow_rat(Rational(best.score, forms.L * forms.L),
                           static_cast<long>(forms.m));
        auto pred = [&](const Rational& eps) {
            // ||u||^(2m) < Q^(-2(1+eps))
            return cmp_pow(errsq_m, Rational(2), Rational(-2 * t) * (1 + eps)) < 0;
        };
        out.shells.push_back(finish_shell(forms, best, t, pred, zero));
        if (zero) {
            out.integrality_event = true;
            out.integrality_witness = out.shells.back().witness;
            break;
        }
    }
    return out;
}

namespace {

// Enumerates q != 0 with Pi_+(q) <= budget in lexicographic order.
void for_each_multiplicative(std::size_t n, const Integer& budget,
                             const std::function<void(const IntVector&, const Integer&)>& fn) {
    IntVector q(n);
    std::function<void(std::size_t, Integer)> rec = [&](std::size_t pos, Integer piplus) {
        if (pos == n) {
            bool zero = true;
            for (const auto& qi : q)
                if (qi != 0) zero = false;
            if (!zero) fn(q, piplus);
            return;
        }
        // remaining coordinates each multiply Pi_+ by max(1,|q_i|)
        const Integer bound = budget / piplus;
        const long long b = bound.convert_to<long long>();
        for (long long v = -b; v <= b; ++v) {
            q[pos] = Integer(v);
            const Integer f = v < 0 ? Integer(-v) : Integer(v);
            rec(pos + 1, piplus * (f > 1 ? f : Integer(1)));
        }
    };
    rec(0, Integer(1));
}

} // namespace

ScanResult scan_vwma(const RatMatrix& Y, const InhomShift& z, const Integer& qmax) {
    ScaledForms forms(Y, z);
    ScanResult out;
    out.m = forms.m;
    out.n = forms.n;
    const long tmax = max_shell(qmax);

    BestTracker best;
    Integer prevQ(0);
    for (long t = 1; t <= tmax; ++t) {
        const Integer Q = pow_int(Integer(2), t);
        IntVector p, res;
        for_each_multiplicative(forms.n, Q, [&](const IntVector& q, const Integer& piplus) {
            if (piplus <= prevQ) return; // already seen in an earlier shell
            forms.residues(q, p, res);
            Integer score(1);
            for (const auto& r : res) score *= abs_int(r);
            best.offer(score, q, p, res);
        });
        prevQ = Q;
        const bool zero = best.have && best.score == 0;
        const Rational prod_err =
            zero ? Rational(0)
                 : Rational(best.score, pow_int(forms.L, static_cast<long>(forms.m)));
        auto pred = [&](const Rational& eps) {
            return cmp_pow(prod_err, Rational(2), Rational(-t) * (1 + eps)) < 0;
        };
        out.shells.push_back(finish_shell(forms, best, t, pred, zero));
        if (zero) {
            out.integrality_event = true;
            out.integrality_witness = out.shells.back().witness;
            break;
        }
    }
    return out;
}

ScanResult scan_rvwa(const RatMatrix& Y, const InhomShift& z, const WeightTuple& r,
                     const Integer& qmax) {
    ScaledForms forms(Y, z);
    if (r.m != forms.m || r.n != forms.n) throw InvalidWeights("weights shape mismatch");
    ScanResult out;
    out.m = forms.m;
    out.n = forms.n;
    const long tmax = max_shell(qmax);

    for (long t = 1; t <= tmax; ++t) {
        // per-coordinate bounds: largest b with b^d < 2^(t*a), r_tail = a/d
        std::vector<long long> bounds(forms.n, 0);
        for (std::size_t i = 0; i < forms.n; ++i) {
            const Rational ri = r.tail(i);
            if (ri == 0) continue; // forces q_i = 0
            const unsigned long a = (Integer(t) * num(ri)).convert_to<unsigned long>();
            const unsigned long d = den(ri).convert_to<unsigned long>();
            const Integer target = pow_int(Integer(2), a);
            // largest b with b^d < 2^(t * num), by binary search
            Integer lo(0), hi(1);
            while (pow_int(hi, d) < target) hi *= 2;
            while (hi - lo > 1) {
                const Integer mid = lo + (hi - lo) / 2;
                if (pow_int(mid, d) < target) lo = mid;
                else hi = mid;
            }
            bounds[i] = lo.convert_to<long long>();
        }
        bool have = false, inf = false;
        Rational best_lo, best_hi;
        IntVector bq, bp, bres;
        IntVector p, res;
        BoxIter it(bounds);
        while (!it.done) {
            const IntVector q = to_intvec(it.v);
            bool qzero = true;
            for (const auto& qi : q)
                if (qi != 0) qzero = false;
            if (!qzero && !inf) {
                forms.residues(q, p, res);
                // rows with r_j > 0 constrain eps; zero errors pass any eps
                std::vector<Rational> errs;
                std::vector<Rational> rws;
                bool all_zero = true;
                for (std::size_t j = 0; j < forms.m; ++j) {
                    if (r.row(j) == 0) continue;
                    if (res[j] == 0) continue;
                    all_zero = false;
                    errs.emplace_back(abs_int(res[j]), forms.L);
                    rws.push_back(r.row(j));
                }
                if (all_zero) {
                    inf = true;
                    have = true;
                    bq = q;
                    bp = p;
                    bres = res;
                } else {
                    auto pred = [&](const Rational& eps) {
                        for (std::size_t k = 0; k < errs.size(); ++k)
                            if (cmp_pow(errs[k], Rational(2), Rational(-t) * (1 + eps) * rws[k]) >= 0)
                                return false;
                        return true;
                    };
                    bool contender = !have;
                    if (have && pred(best_lo + Rational(1, 1024))) contender = true;
                    if (contender) {
                        const EpsBracket br = bracket_eps(pred);
                        if (!have || br.lo > best_lo) {
                            have = true;
                            best_lo = br.lo;
                            best_hi = br.hi;
                            bq = q;
                            bp = p;
                            bres = res;
                        }
                    }
                }
            }
            it.next();
        }
        if (!have) continue; // empty region at this shell (all-zero bounds)
        Shell sh;
        sh.t = t;
        sh.witness = make_witness(forms, bq, bp, bres, t);
        if (inf) {
            sh.eps_infinite = true;
            sh.witness.eps_infinite = true;
            out.shells.push_back(sh);
            out.integrality_event = true;
            out.integrality_witness = sh.witness;
            break;
        }
        sh.eps_low = best_lo;
        sh.eps_high = best_hi;
        sh.witness.eps_achieved = best_lo;
        out.shells.push_back(sh);
    }
    return out;
}

bool rvwa_accepts(const RatMatrix& Y, const InhomShift& z, const WeightTuple& r,
                  const IntVector& q, const IntVector& p, const Rational& q_base,
                  const Rational& q_expo, const Rational& eps) {
    ScaledForms forms(Y, z);
    if (q.size() != forms.n || p.size() != forms.m) throw DimMismatch("rvwa_accepts shapes");
    for (std::size_t j = 0; j < forms.m; ++j) {
        Integer v = forms.znum[j];
        for (std::size_t i = 0; i < forms.n; ++i) v += forms.ynum(j, i) * q[i];
        const Integer res = v - p[j] * forms.L;
        const Rational expo = -(1 + eps) * r.row(j) * q_expo;
        if (res == 0) {
            // 0 < Q^expo always
            continue;
        }
        if (cmp_pow(Rational(abs_int(res), forms.L), q_base, expo) >= 0) return false;
    }
    for (std::size_t i = 0; i < forms.n; ++i) {
        if (q[i] == 0) continue; // 0 < Q^r always
        if (cmp_pow(Rational(abs_int(q[i])), q_base, r.tail(i) * q_expo) >= 0) return false;
    }
    return true;
}

std::vector<CurveRow> exponent_curve(const ScanResult& scan) {
    if (scan.shells.empty()) throw EmptyScan("exponent_curve: no shells");
    std::vector<CurveRow> rows;
    bool have_max = false;
    Rational run_max;
    for (const auto& sh : scan.shells) {
        CurveRow row;
        row.t = sh.t;
        row.eps_infinite = sh.eps_infinite;
        if (!sh.eps_infinite) {
            row.eps_low = sh.eps_low;
            row.eps_high = sh.eps_high;
            if (!have_max || sh.eps_low > run_max) {
                run_max = sh.eps_low;
                have_max = true;
            }
            row.running_max = run_max;
        }
        rows.push_back(row);
        if (sh.eps_infinite) break;
    }
    return rows;
}

} // namespace diophlab
