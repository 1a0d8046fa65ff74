#include "diophlab/manifold.hpp"

#include <sstream>

namespace diophlab {

PolyMatrixMap::PolyMatrixMap(std::size_t m_, std::size_t n_, std::size_t d_)
    : m(m_), n(n_), d(d_), entries(m_ * n_, MultiPoly(d_)) {}

std::vector<MultiPoly> PolyMatrixMap::row(std::size_t i) const {
    return std::vector<MultiPoly>(entries.begin() + i * n, entries.begin() + (i + 1) * n);
}

RatMatrix evaluate(const PolyMatrixMap& F, const RatVector& x) {
    if (x.size() != F.d) throw ArityMismatch("evaluate: point arity mismatch");
    RatMatrix Y(F.m, F.n);
    for (std::size_t i = 0; i < F.m; ++i)
        for (std::size_t j = 0; j < F.n; ++j) Y(i, j) = F.at(i, j).eval(x);
    return Y;
}

PolyMatrixMap transform_LR(const PolyMatrixMap& F, const RatMatrix& L, const RatMatrix& R) {
    if (L.cols() != F.m || R.rows() != F.n) throw DimMismatch("transform_LR shape");
    if (rank_exact(L) != L.rows()) throw RankDeficient("transform_LR: L not full row rank");
    if (rank_exact(R) != R.cols()) throw RankDeficient("transform_LR: R not full column rank");
    const std::size_t mt = L.rows(), nt = R.cols();
    PolyMatrixMap G(mt, nt, F.d);
    for (std::size_t i = 0; i < mt; ++i)
        for (std::size_t j = 0; j < nt; ++j) {
            MultiPoly acc(F.d);
            for (std::size_t a = 0; a < F.m; ++a) {
                if (L(i, a) == 0) continue;
                for (std::size_t b = 0; b < F.n; ++b) {
                    if (R(b, j) == 0) continue;
                    acc = acc + F.at(a, b).scaled(L(i, a) * R(b, j));
                }
            }
            G.at(i, j) = std::move(acc);
        }
    return G;
}

PolyMatrixMap stack_product(const PolyMatrixMap& F1, const PolyMatrixMap& F2) {
    if (F1.n != F2.n) throw ColumnMismatch("stack_product: column counts differ");
    PolyMatrixMap G(F1.m + F2.m, F1.n, F1.d + F2.d);
    for (std::size_t i = 0; i < F1.m; ++i)
        for (std::size_t j = 0; j < F1.n; ++j)
            G.at(i, j) = F1.at(i, j).shift_vars(G.d, 0);
    for (std::size_t i = 0; i < F2.m; ++i)
        for (std::size_t j = 0; j < F2.n; ++j)
            G.at(F1.m + i, j) = F2.at(i, j).shift_vars(G.d, F1.d);
    return G;
}

PolyMatrixMap transpose_map(const PolyMatrixMap& F) {
    PolyMatrixMap G(F.n, F.m, F.d);
    for (std::size_t i = 0; i < F.m; ++i)
        for (std::size_t j = 0; j < F.n; ++j) G.at(j, i) = F.at(i, j);
    return G;
}

namespace {

long param(const std::map<std::string, long>& params, const std::string& key) {
    auto it = params.find(key);
    if (it == params.end()) throw UnknownBuiltin("missing parameter '" + key + "'");
    if (it->second < 1) throw UnknownBuiltin("parameter '" + key + "' must be >= 1");
    return it->second;
}

} // namespace

PolyMatrixMap builtin(const std::string& name, const std::map<std::string, long>& params) {
    if (name == "prop2x2") {
        PolyMatrixMap F(2, 2, 3);
        F.at(0, 0) = MultiPoly::variable(3, 0);
        F.at(0, 1) = MultiPoly::variable(3, 1);
        F.at(1, 0) = MultiPoly::variable(3, 2);
        F.at(1, 1) = MultiPoly::variable(3, 0);
        return F;
    }
    if (name == "veronese") {
        const long n = param(params, "n");
        PolyMatrixMap F(1, static_cast<std::size_t>(n), 1);
        for (long j = 0; j < n; ++j)
            F.at(0, static_cast<std::size_t>(j)) =
                MultiPoly::variable(1, 0).pow(static_cast<unsigned>(j + 1));
        return F;
    }
    if (name == "equal_rows") {
        const long m = param(params, "m");
        const long n = param(params, "n");
        PolyMatrixMap F(static_cast<std::size_t>(m), static_cast<std::size_t>(n),
                        static_cast<std::size_t>(n));
        for (long i = 0; i < m; ++i)
            for (long j = 0; j < n; ++j)
                F.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) =
                    MultiPoly::variable(static_cast<std::size_t>(n), static_cast<std::size_t>(j));
        return F;
    }
    if (name == "matrix_veronese") {
        // X in Mat_{m,m} with entries as variables; blocks X, X^2, ..., X^(m*k).
        const long m = param(params, "m");
        const long k = param(params, "k");
        const std::size_t mm = static_cast<std::size_t>(m);
        const std::size_t d = mm * mm;
        const std::size_t blocks = mm * static_cast<std::size_t>(k);
        std::vector<std::vector<MultiPoly>> X(mm, std::vector<MultiPoly>(mm, MultiPoly(d)));
        for (std::size_t i = 0; i < mm; ++i)
            for (std::size_t j = 0; j < mm; ++j)
                X[i][j] = MultiPoly::variable(d, i * mm + j);
        PolyMatrixMap F(mm, mm * blocks, d);
        std::vector<std::vector<MultiPoly>> P = X;
        for (std::size_t b = 0; b < blocks; ++b) {
            for (std::size_t i = 0; i < mm; ++i)
                for (std::size_t j = 0; j < mm; ++j) F.at(i, b * mm + j) = P[i][j];
            if (b + 1 == blocks) break;
            std::vector<std::vector<MultiPoly>> Q(mm, std::vector<MultiPoly>(mm, MultiPoly(d)));
            for (std::size_t i = 0; i < mm; ++i)
                for (std::size_t j = 0; j < mm; ++j) {
                    MultiPoly acc(d);
                    for (std::size_t t = 0; t < mm; ++t) acc = acc + P[i][t] * X[t][j];
                    Q[i][j] = std::move(acc);
                }
            P = std::move(Q);
        }
        return F;
    }
    throw UnknownBuiltin("unknown builtin manifold '" + name + "'");
}

Ball::Ball(RatVector c, Rational r) : center(std::move(c)), radius(std::move(r)) {
    if (radius <= 0) throw Error("Ball: radius must be positive");
}

bool Ball::contains_open(const RatVector& x) const {
    if (x.size() != center.size()) throw DimMismatch("Ball::contains: dimension");
    Rational d2(0);
    for (std::size_t i = 0; i < x.size(); ++i) {
        const Rational di = x[i] - center[i];
        d2 += di * di;
    }
    return d2 < radius * radius;
}

bool Ball::contains_closed(const RatVector& x) const {
    if (x.size() != center.size()) throw DimMismatch("Ball::contains: dimension");
    Rational d2(0);
    for (std::size_t i = 0; i < x.size(); ++i) {
        const Rational di = x[i] - center[i];
        d2 += di * di;
    }
    return d2 <= radius * radius;
}

MeasureSample::MeasureSample(std::vector<RatVector> pts, RatVector w, Ball dom)
    : points(std::move(pts)), weights(std::move(w)), domain(std::move(dom)) {
    if (points.size() != weights.size()) throw DimMismatch("MeasureSample: sizes differ");
    if (points.empty()) throw Error("MeasureSample: empty cloud");
    for (const auto& wi : weights)
        if (wi <= 0) throw Error("MeasureSample: weights must be positive");
    for (const auto& p : points)
        if (!domain.contains_closed(p)) throw Error("MeasureSample: point outside domain ball");
}

MeasureSample MeasureSample::grid(const Ball& dom, std::size_t per_axis) {
    if (per_axis == 0) throw Error("MeasureSample::grid: need at least one point per axis");
    const std::size_t d = dom.center.size();
    // Midpoint grid on the inscribed cube [c_i - h, c_i + h], h = r/sqrt(d)
    // is awkward exactly; use h = r/d which is always inside the ball.
    const Rational h = dom.radius / Rational(static_cast<long>(d));
    std::vector<RatVector> pts;
    std::vector<std::size_t> idx(d, 0);
    while (true) {
        RatVector p(d);
        for (std::size_t i = 0; i < d; ++i) {
            const Rational u(2 * static_cast<long>(idx[i]) + 1,
                             2 * static_cast<long>(per_axis));
            p[i] = dom.center[i] - h + (2 * h) * u;
        }
        pts.push_back(std::move(p));
        std::size_t i = d;
        bool done = true;
        while (i > 0) {
            --i;
            if (++idx[i] < per_axis) { done = false; break; }
            idx[i] = 0;
        }
        if (done) break;
    }
    RatVector w(pts.size(), Rational(1));
    return MeasureSample(std::move(pts), std::move(w), dom);
}

Rational MeasureSample::total_weight() const {
    Rational s(0);
    for (const auto& w : weights) s += w;
    return s;
}

PolyMatrixMap parse_manifold(const std::string& text) {
    std::istringstream in(text);
    std::size_t m = 0, n = 0, d = 0;
    if (!(in >> m >> n >> d) || m == 0 || n == 0 || d == 0)
        throw ParseError("manifold file: expected header 'm n d'");
    std::string line;
    std::getline(in, line); // rest of header line
    PolyMatrixMap F(m, n, d);
    std::size_t count = 0;
    while (count < m * n && std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        bool blank = true;
        for (char c : line)
            if (!std::isspace(static_cast<unsigned char>(c))) { blank = false; break; }
        if (blank) continue;
        F.entries[count++] = parse_poly(line, d);
    }
    if (count != m * n)
        throw ParseError("manifold file: expected " + std::to_string(m * n) + " entries");
    return F;
}

std::string manifold_to_text(const PolyMatrixMap& F) {
    std::ostringstream os;
    os << F.m << " " << F.n << " " << F.d << "\n";
    for (const auto& e : F.entries) os << e.to_string() << "\n";
    return os.str();
}

} // namespace diophlab
