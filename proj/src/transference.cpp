#include "diophlab/transference.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace diophlab {

DeltaChoice choose_deltas(const Rational& eps, std::size_t m, std::size_t n) {
    if (eps <= 0) throw Error("choose_deltas: eps must be positive");
    const Rational eps_prime = eps / 2;
    const Rational bound_r = Rational(8) * Rational(static_cast<long>(m + n)) * (1 + 1 / eps);
    const long bound = (num(bound_r) / den(bound_r)).convert_to<long>() + 1;
    const Rational mr(static_cast<long>(m)), nr(static_cast<long>(n));
    // For fixed K the admissible K' form an exact interval:
    //   constraint 1:  1 + delta' <= (1+eps) / ((1+eps')(1+m delta))
    //   constraint 2:  delta' >= n delta / (1 - n delta)
    for (long K = 1; K <= bound; ++K) {
        const Rational delta(1, K);
        if (nr * delta >= 1) continue;
        const Rational c1 = (1 + eps) / ((1 + eps_prime) * (1 + mr * delta)) - 1;
        if (c1 <= 0) continue;
        const Rational inv1 = 1 / c1; // K' >= ceil(1/c1)
        Integer kp_lo = num(inv1) / den(inv1);
        if (Rational(kp_lo) < inv1) ++kp_lo;
        if (kp_lo < 1) kp_lo = 1;
        const Rational inv2 = (1 - nr * delta) / (nr * delta); // K' <= floor(...)
        const Integer kp_hi = num(inv2) / den(inv2);
        if (kp_lo > kp_hi || kp_lo > bound) continue;
        const Rational delta_prime(Integer(1), kp_lo);
        const Rational lhs1 = (1 + eps) / ((1 + delta_prime) * (1 + eps_prime)) - mr * delta;
        const Rational lhs2 = 1 / (1 + delta_prime) + nr * delta;
        if (!(lhs1 >= 1 && lhs2 <= 1))
            throw Error("choose_deltas: interval computation out of step");
        return DeltaChoice{eps, eps_prime, delta, delta_prime};
    }
    throw SearchExhausted("choose_deltas: no (delta, delta') within the bound");
}

namespace {

Integer pi_plus_of(const IntVector& q) {
    Integer p(1);
    for (const auto& qi : q) {
        const Integer a = abs_int(qi);
        if (a > 1) p *= a;
    }
    return p;
}

Rational product_error(const Witness& w) {
    Rational p(1);
    for (const auto& e : w.row_errors) p *= e;
    return p;
}

} // namespace

UTuple witness_weights(const Witness& w, std::size_t m, std::size_t n,
                       const DeltaChoice& choice) {
    if (w.q.size() != n || w.row_errors.size() != m)
        throw DimMismatch("witness_weights: witness shape");
    for (const auto& e : w.row_errors) {
        if (e == 0) throw ZeroRowError("witness has an exact integrality event");
        if (e >= 1) throw WitnessTooWeak("row error not below 1");
    }
    const Integer piplus = pi_plus_of(w.q);
    if (piplus <= 1) throw WitnessTooWeak("Pi_+(q) = 1 carries no exponent information");
    // (e:004inhX): Pi(err) < Pi_+(q)^(-1-eps)
    if (cmp_pow(product_error(w), Rational(piplus), -(1 + choice.eps)) >= 0)
        throw WitnessTooWeak("witness does not satisfy the multiplicative inequality");

    const Rational q_expo = 1 + choice.delta_prime; // Q = piplus^(1+delta')
    const Rational base(piplus);
    UTuple out;
    out.pi_plus = piplus;
    out.u.assign(m + n, Rational(0));

    // rows: largest k >= 0 with err_j < Q^{-(1+eps') delta k}
    for (std::size_t j = 0; j < m; ++j) {
        const Rational& err = w.row_errors[j];
        auto pred = [&](long k) {
            return cmp_pow(err, base, -(1 + choice.eps_prime) * choice.delta * Rational(k) * q_expo) < 0;
        };
        if (!pred(0)) throw WitnessTooWeak("row error not below 1 at grid zero");
        long hi = 1;
        while (pred(hi)) hi *= 2;
        long lo = hi / 2;
        while (hi - lo > 1) {
            const long mid = lo + (hi - lo) / 2;
            if (pred(mid)) lo = mid;
            else hi = mid;
        }
        out.u[j] = choice.delta * Rational(lo);
        // lower bracket of (vb+6) follows from maximality
        if (cmp_pow(err, base, -(1 + choice.eps_prime) * (out.u[j] + choice.delta) * q_expo) < 0)
            throw Error("witness_weights: row bracket violated");
    }

    // tails: q_i = 0 -> u = 0; else smallest k >= 1 with |q_i| < Q^{delta k}
    for (std::size_t i = 0; i < n; ++i) {
        if (w.q[i] == 0) continue;
        const Rational qa(abs_int(w.q[i]));
        auto pred = [&](long k) {
            return cmp_pow(qa, base, choice.delta * Rational(k) * q_expo) < 0;
        };
        long hi = 1;
        while (!pred(hi)) hi *= 2;
        long lo = hi / 2;
        while (hi - lo > 1) {
            const long mid = lo + (hi - lo) / 2;
            if (pred(mid)) hi = mid;
            else lo = mid;
        }
        out.u[m + i] = choice.delta * Rational(hi);
        if (hi > 1 && pred(hi - 1)) throw Error("witness_weights: tail bracket violated");
    }

    for (std::size_t j = 0; j < m; ++j) out.u_hat += out.u[j];
    for (std::size_t i = 0; i < n; ++i) out.u_tail += out.u[m + i];

    // (vb+11) and (vb+12) are theorems here; a violation is a bug.
    if (!(out.u_tail >= 1 / (1 + choice.delta_prime) && out.u_tail <= 1))
        throw Error("witness_weights: (vb+11) violated");
    if (!(out.u_hat > 1)) throw Error("witness_weights: (vb+12) violated");
    return out;
}

namespace {

// Deterministic rounding of u to r on the delta grid: rows shrink from
// the largest component until they sum to 1, tails grow likewise.
RatVector round_weights(const UTuple& u, std::size_t m, std::size_t n, const Rational& delta) {
    RatVector r = u.u;
    Rational head = u.u_hat;
    while (head > 1) {
        std::size_t arg = 0;
        for (std::size_t j = 1; j < m; ++j)
            if (r[j] > r[arg]) arg = j;
        if (r[arg] < delta) throw NoValidRounding("row rounding underflow");
        r[arg] -= delta;
        head -= delta;
    }
    Rational tail = u.u_tail;
    while (tail < 1) {
        std::size_t arg = 0;
        for (std::size_t i = 1; i < n; ++i)
            if (r[m + i] > r[m + arg]) arg = i;
        r[m + arg] += delta;
        tail += delta;
    }
    return r;
}

bool check_vb13(const Witness& w, std::size_t m, std::size_t n, const RatVector& r,
                const DeltaChoice& choice, const Integer& piplus) {
    const Rational base(piplus);
    const Rational q_expo = 1 + choice.delta_prime;
    for (std::size_t j = 0; j < m; ++j) {
        if (w.row_errors[j] == 0) continue;
        if (cmp_pow(w.row_errors[j], base, -(1 + choice.eps_prime) * r[j] * q_expo) >= 0)
            return false;
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (w.q[i] == 0) continue;
        if (cmp_pow(Rational(abs_int(w.q[i])), base, r[m + i] * q_expo) >= 0) return false;
    }
    return true;
}

} // namespace

ConversionReport vwma_to_rvwa(const std::vector<Witness>& witnesses, std::size_t m,
                              std::size_t n, const Rational& eps) {
    if (witnesses.empty()) throw EmptyStream("vwma_to_rvwa: empty witness stream");
    ConversionReport rep;
    rep.m = m;
    rep.n = n;

    // Case (a): an exact integrality event in some row.
    for (const auto& w : witnesses) {
        for (std::size_t j = 0; j < m; ++j) {
            if (w.row_errors[j] != 0) continue;
            rep.case_tag = 'a';
            rep.j0 = j;
            rep.r.assign(m + n, Rational(0));
            rep.r[j] = 1;
            for (std::size_t i = 0; i < n; ++i) rep.r[m + i] = Rational(1, static_cast<long>(n));
            ConvertedWitness cw;
            cw.witness = w;
            cw.r = rep.r;
            // the event witness satisfies the weighted system at any large
            // dyadic Q; find the smallest shell accommodating the tail
            long t = 1;
            const WeightTuple wt(rep.r, m, n);
            auto fits = [&](long tt) {
                for (std::size_t i = 0; i < n; ++i) {
                    if (w.q[i] == 0) continue;
                    if (cmp_pow(Rational(abs_int(w.q[i])), Rational(2),
                                wt.tail(i) * Rational(tt)) >= 0)
                        return false;
                }
                for (std::size_t jj = 0; jj < m; ++jj) {
                    if (jj == j) continue;
                    if (w.row_errors[jj] >= 1) return false; // r_jj = 0 demands err < 1
                }
                return true;
            };
            while (t < 4096 && !fits(t)) ++t;
            cw.vb13_ok = fits(t);
            rep.converted.push_back(std::move(cw));
            rep.all_checks_passed = rep.converted.back().vb13_ok;
            return rep;
        }
    }

    // Case (b)
    rep.case_tag = 'b';
    const DeltaChoice choice = choose_deltas(eps, m, n);
    rep.choice = choice;
    std::map<RatVector, std::size_t> freq;
    std::vector<std::pair<RatVector, ConvertedWitness>> rounded;
    for (const auto& w : witnesses) {
        UTuple u;
        try {
            u = witness_weights(w, m, n, choice);
        } catch (const WitnessTooWeak&) {
            ++rep.skipped;
            continue;
        }
        RatVector r = round_weights(u, m, n, choice.delta);
        const WeightTuple validated(r, m, n); // asserts (vb+4)
        (void)validated;
        ConvertedWitness cw;
        cw.witness = w;
        cw.r = r;
        cw.vb13_ok = check_vb13(w, m, n, r, choice, u.pi_plus);
        ++freq[r];
        rounded.emplace_back(std::move(r), std::move(cw));
    }
    if (rounded.empty()) throw EmptyStream("vwma_to_rvwa: no witness carries exponent content");

    std::size_t best_count = 0;
    RatVector best_r;
    for (const auto& [r, count] : freq) {
        if (count > best_count) { // ties: std::map iterates lexicographically
            best_count = count;
            best_r = r;
        }
    }
    rep.r = best_r;
    rep.all_checks_passed = true;
    for (auto& [r, cw] : rounded) {
        if (r != best_r) continue;
        if (!cw.vb13_ok) rep.all_checks_passed = false;
        rep.converted.push_back(cw);
    }
    return rep;
}

namespace {

// lhs < 2^expo with lhs >= 0 exact
bool lt_pow2(const Rational& lhs, const Rational& expo) {
    if (lhs == 0) return true;
    if (lhs < 0) return true;
    return cmp_pow(lhs, Rational(2), expo) < 0;
}

} // namespace

bool set_It_membership(const RatVector& x, const PolyMatrixMap& F, const InhomShift& z,
                       long t, const AlphaIndex& alpha, const Rational& eps,
                       const WeightTuple& r) {
    if (alpha.q.size() != F.n || alpha.p.size() != F.m)
        throw DimMismatch("set_It_membership: index shape");
    bool qzero = true;
    for (const auto& qi : alpha.q)
        if (qi != 0) qzero = false;
    if (qzero) throw Error("set_It_membership: alpha requires q != 0");
    const RatMatrix Y = evaluate(F, x);
    RatVector zz = z.z;
    if (zz.empty()) zz.assign(F.m, Rational(0));
    for (std::size_t j = 0; j < F.m; ++j) {
        Rational v = zz[j] - Rational(alpha.p[j]);
        for (std::size_t i = 0; i < F.n; ++i) v += Y(j, i) * Rational(alpha.q[i]);
        // |v| < 1/2 * 2^{-(1+eps) r_j t}
        if (!lt_pow2(abs_rat(v), Rational(-1) - (1 + eps) * r.row(j) * Rational(t)))
            return false;
    }
    for (std::size_t i = 0; i < F.n; ++i) {
        if (!lt_pow2(Rational(abs_int(alpha.q[i])), r.tail(i) * Rational(t) - 1)) return false;
    }
    return true;
}

bool set_Ht_membership(const RatVector& x, const PolyMatrixMap& F, long t,
                       const AlphaIndex& alpha, const Rational& eps, const WeightTuple& r) {
    if (alpha.q.size() != F.n || alpha.p.size() != F.m)
        throw DimMismatch("set_Ht_membership: index shape");
    const RatMatrix Y = evaluate(F, x);
    for (std::size_t j = 0; j < F.m; ++j) {
        Rational v = -Rational(alpha.p[j]);
        for (std::size_t i = 0; i < F.n; ++i) v += Y(j, i) * Rational(alpha.q[i]);
        if (!lt_pow2(abs_rat(v), -(1 + eps) * r.row(j) * Rational(t))) return false;
    }
    for (std::size_t i = 0; i < F.n; ++i)
        if (!lt_pow2(Rational(abs_int(alpha.q[i])), r.tail(i) * Rational(t))) return false;
    return true;
}

IntersectionReport intersection_check(long t, const AlphaIndex& alpha,
                                      const AlphaIndex& alpha_prime, const Rational& psi,
                                      const std::vector<RatVector>& sample_points,
                                      const PolyMatrixMap& F, const InhomShift& z,
                                      const WeightTuple& r) {
    if (alpha == alpha_prime) throw Error("intersection_check: alpha and alpha' must differ");
    IntersectionReport rep;
    for (const auto& x : sample_points) {
        ++rep.samples_checked;
        if (!set_It_membership(x, F, z, t, alpha, psi, r)) continue;
        if (!set_It_membership(x, F, z, t, alpha_prime, psi, r)) continue;
        ++rep.in_both;
        AlphaIndex dd;
        dd.q.resize(F.n);
        dd.p.resize(F.m);
        bool qzero = true;
        for (std::size_t i = 0; i < F.n; ++i) {
            dd.q[i] = alpha.q[i] - alpha_prime.q[i];
            if (dd.q[i] != 0) qzero = false;
        }
        for (std::size_t j = 0; j < F.m; ++j) dd.p[j] = alpha.p[j] - alpha_prime.p[j];
        if (qzero) {
            // excluded by the integrality argument; reaching it is a violation
            ++rep.violations;
            continue;
        }
        if (!set_Ht_membership(x, F, t, dd, psi, r)) ++rep.violations;
    }
    return rep;
}

GoodEstimate good_estimate(const MultiPoly& f, const Ball& ball, const MeasureSample& mu,
                           const std::vector<Rational>& alpha_grid, unsigned eps_log2_max) {
    GoodEstimate out;
    std::vector<Rational> fvals;
    RatVector weights;
    Rational total(0);
    for (std::size_t i = 0; i < mu.points.size(); ++i) {
        if (!ball.contains_closed(mu.points[i])) continue;
        fvals.push_back(abs_rat(f.eval(mu.points[i])));
        weights.push_back(mu.weights[i]);
        total += mu.weights[i];
    }
    if (fvals.empty() || total == 0) throw ZeroFunction("good_estimate: empty restriction");
    Rational sup(0);
    for (const auto& v : fvals)
        if (v > sup) sup = v;
    if (sup == 0) throw ZeroFunction("good_estimate: f vanishes on the sample");
    out.sup_norm = sup;

    std::vector<Rational> ratios; // indexed by k-1, eps = 2^-k
    bool any_positive = false;
    for (unsigned k = 1; k <= eps_log2_max; ++k) {
        const Rational eps = pow_rat(Rational(1, 2), static_cast<long>(k));
        Rational hit(0);
        for (std::size_t i = 0; i < fvals.size(); ++i)
            if (fvals[i] < eps) hit += weights[i];
        ratios.push_back(hit / total);
        if (hit > 0) any_positive = true;
    }
    out.degenerate = !any_positive;

    double best_spread = 0.0;
    bool have_best = false;
    for (const auto& alpha : alpha_grid) {
        if (alpha <= 0) throw Error("good_estimate: alpha must be positive");
        const unsigned b = den(alpha).convert_to<unsigned>();
        const long a = num(alpha).convert_to<long>();
        GoodFitEntry e;
        e.alpha = alpha;
        e.b = b;
        // C(eps) = ratio * (sup/eps)^alpha; compare via b-th powers
        Rational best_pow(0);
        double max_c = 0.0, min_c = -1.0;
        for (unsigned k = 1; k <= eps_log2_max; ++k) {
            const Rational& ratio = ratios[k - 1];
            if (ratio == 0) continue;
            const Rational eps = pow_rat(Rational(1, 2), static_cast<long>(k));
            const Rational cb = pow_rat(ratio, b) * pow_rat(sup / eps, a);
            if (cb > best_pow) best_pow = cb;
            const double c = std::pow(cb.convert_to<double>(), 1.0 / b);
            if (c > max_c) max_c = c;
            if (min_c < 0 || c < min_c) min_c = c;
        }
        e.c_pow_b = best_pow;
        e.c_approx = best_pow == 0 ? 0.0 : std::pow(best_pow.convert_to<double>(), 1.0 / b);
        out.per_alpha.push_back(e);
        if (min_c > 0) {
            const double spread = max_c / min_c;
            if (!have_best || spread < best_spread) {
                best_spread = spread;
                out.best_fit = out.per_alpha.size() - 1;
                have_best = true;
            }
        }
    }
    return out;
}

bool good_c_within(const GoodFitEntry& e, const Rational& lo, const Rational& hi) {
    // lo <= C <= hi  <=>  lo^b <= C^b <= hi^b (all nonnegative)
    return pow_rat(lo, e.b) <= e.c_pow_b && e.c_pow_b <= pow_rat(hi, e.b);
}

FedererEstimate federer_estimate(const MeasureSample& mu, const std::vector<Ball>& family) {
    if (family.empty()) throw EmptyFamily("federer_estimate: no balls");
    FedererEstimate out;
    bool have = false;
    for (std::size_t b = 0; b < family.size(); ++b) {
        const Ball& V = family[b];
        // 3V must fit inside the domain ball
        const Rational r3 = 3 * V.radius;
        if (mu.domain.radius < r3)
            throw Error("federer_estimate: 3V exceeds the domain");
        Rational cd2(0);
        for (std::size_t i = 0; i < V.center.size(); ++i) {
            const Rational d = V.center[i] - mu.domain.center[i];
            cd2 += d * d;
        }
        const Rational slack = mu.domain.radius - r3;
        if (cd2 > slack * slack) throw Error("federer_estimate: 3V exceeds the domain");
        Rational wV(0), w3V(0);
        const Ball V3(V.center, r3);
        for (std::size_t i = 0; i < mu.points.size(); ++i) {
            if (V.contains_open(mu.points[i])) wV += mu.weights[i];
            if (V3.contains_open(mu.points[i])) w3V += mu.weights[i];
        }
        if (wV == 0) throw Error("federer_estimate: ball with zero mass (not centred in support?)");
        const Rational ratio = w3V / wV;
        if (!have || ratio > out.d_hat) {
            have = true;
            out.d_hat = ratio;
            out.argmax = b;
        }
    }
    return out;
}

} // namespace diophlab
