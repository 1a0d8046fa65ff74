// Batch experiment driver: exponent scans, non-planarity reports, flow
// diagnostics, the multiplicative-to-weighted transference, and goodness
// estimators. Outputs are plain CSV/JSON/JSONL, byte-deterministic for a
// fixed config and seed.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "diophlab/io.hpp"
#include "diophlab/util.hpp"

namespace fs = std::filesystem;
using namespace diophlab;

namespace {

class ResourceLimit : public Error {
public:
    explicit ResourceLimit(const std::string& what) : Error(what) {}
};

// Flat key=value config with '#' comments; CLI flags override file keys.
// Unknown keys are rejected after the command has consumed what it needs.
class Config {
public:
    void load_file(const std::string& path) {
        std::istringstream in(read_file(path));
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            const auto hash = line.find('#');
            if (hash != std::string::npos) line = line.substr(0, hash);
            const auto eq = line.find('=');
            if (eq == std::string::npos) {
                bool blank = true;
                for (char c : line)
                    if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
                if (blank) continue;
                throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
            }
            set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
        }
    }

    void set(const std::string& key, const std::string& value) { kv_[key] = value; }

    bool has(const std::string& key) const { return kv_.count(key) > 0; }

    std::string get(const std::string& key) {
        auto it = kv_.find(key);
        if (it == kv_.end()) throw ConfigError("missing config key '" + key + "'");
        used_.insert(key);
        return it->second;
    }

    std::string get_or(const std::string& key, const std::string& fallback) {
        used_.insert(key);
        auto it = kv_.find(key);
        return it == kv_.end() ? fallback : it->second;
    }

    long get_long(const std::string& key) { return std::stol(get(key)); }
    long get_long_or(const std::string& key, long fallback) {
        return has(key) ? std::stol(get(key)) : (used_.insert(key), fallback);
    }

    void reject_unknown() const {
        for (const auto& [k, v] : kv_)
            if (!used_.count(k)) throw ConfigError("unknown config key '" + k + "'");
    }

    std::string canonical() const {
        std::ostringstream os;
        for (const auto& [k, v] : kv_) os << k << "=" << v << "\n";
        return os.str();
    }

private:
    static std::string trim(const std::string& s) {
        const auto a = s.find_first_not_of(" \t\r\n");
        if (a == std::string::npos) return "";
        const auto b = s.find_last_not_of(" \t\r\n");
        return s.substr(a, b - a + 1);
    }

    std::map<std::string, std::string> kv_;
    mutable std::set<std::string> used_;
};

struct CommonArgs {
    std::string config_path;
    std::string out_dir = ".";
    std::uint64_t seed = 1;
    int threads = 0;
    std::string qmax, height, weights, shift;
};

void add_common(CLI::App* cmd, CommonArgs& a) {
    cmd->add_option("--config", a.config_path, "key = value config file");
    cmd->add_option("--out", a.out_dir, "output directory");
    cmd->add_option("--seed", a.seed, "RNG seed");
    cmd->add_option("--threads", a.threads, "worker count (default DIOPHLAB_THREADS or 1)");
    cmd->add_option("--qmax", a.qmax, "override qmax");
    cmd->add_option("--height", a.height, "override height");
    cmd->add_option("--weights", a.weights, "weights 'r1,...,rm;s1,...,sn'");
    cmd->add_option("--shift", a.shift, "inhomogeneous shift 'z1,...,zm'");
}

Config make_config(const CommonArgs& a) {
    Config cfg;
    if (!a.config_path.empty()) cfg.load_file(a.config_path);
    if (!a.qmax.empty()) cfg.set("qmax", a.qmax);
    if (!a.height.empty()) cfg.set("height", a.height);
    if (!a.weights.empty()) cfg.set("weights", a.weights);
    if (!a.shift.empty()) cfg.set("shift", a.shift);
    return cfg;
}

int resolve_threads(const CommonArgs& a) {
    if (a.threads > 0) return a.threads;
    if (const char* env = std::getenv("DIOPHLAB_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    return 1;
}

Json meta_json(const Config& cfg, const CommonArgs& a, const std::string& command) {
    Json meta;
    meta["tool"] = version_string();
    meta["command"] = command;
    meta["seed"] = a.seed;
    meta["configHash"] = hex64(fnv1a(cfg.canonical() + "seed=" + std::to_string(a.seed)));
    return meta;
}

std::string meta_line(const Json& meta) {
    return meta["tool"].get<std::string>() + " command=" + meta["command"].get<std::string>() +
           " seed=" + std::to_string(meta["seed"].get<std::uint64_t>()) +
           " config=" + meta["configHash"].get<std::string>();
}

PolyMatrixMap manifold_from_config(Config& cfg) {
    const std::string spec = cfg.get("manifold");
    if (spec.rfind("file:", 0) == 0) return parse_manifold(read_file(spec.substr(5)));
    if (spec.rfind("builtin:", 0) != 0)
        throw ConfigError("manifold must be 'builtin:NAME ...' or 'file:PATH'");
    std::istringstream in(spec.substr(8));
    std::string name;
    in >> name;
    std::map<std::string, long> params;
    std::string kv;
    while (in >> kv) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw ConfigError("builtin parameter must be k=v");
        params[kv.substr(0, eq)] = std::stol(kv.substr(eq + 1));
    }
    return builtin(name, params);
}

RatMatrix target_matrix(Config& cfg) {
    if (cfg.has("matrix")) return matrix_from_json(Json::parse(cfg.get("matrix")));
    if (cfg.has("matrix_file")) return matrix_from_json(Json::parse(read_file(cfg.get("matrix_file"))));
    const PolyMatrixMap F = manifold_from_config(cfg);
    const RatVector x = parse_ratvec(cfg.get("point"));
    return evaluate(F, x);
}

void write_out(const CommonArgs& a, const std::string& name, const std::string& content) {
    fs::create_directories(a.out_dir);
    write_file((fs::path(a.out_dir) / name).string(), content);
}

std::vector<RatVector> random_points(Rng& rng, std::size_t count, std::size_t d, long num_bound,
                                     long den_bound) {
    std::vector<RatVector> pts;
    for (std::size_t s = 0; s < count; ++s) {
        RatVector x(d);
        for (auto& xi : x) xi = rng.rational(num_bound, den_bound);
        pts.push_back(std::move(x));
    }
    return pts;
}

// Centered grid {-(k-1)/2 .. (k-1)/2} * step per axis.
std::vector<RatVector> grid_points(std::size_t d, std::size_t per_axis, const Rational& step) {
    std::vector<RatVector> pts;
    std::vector<long> idx(d, 0);
    const long k = static_cast<long>(per_axis);
    while (true) {
        RatVector x(d);
        for (std::size_t i = 0; i < d; ++i)
            x[i] = step * Rational(2 * idx[i] - (k - 1), 2);
        pts.push_back(std::move(x));
        std::size_t i = d;
        bool done = true;
        while (i > 0) {
            --i;
            if (++idx[i] < k) { done = false; break; }
            idx[i] = 0;
        }
        if (done) break;
    }
    return pts;
}

int cmd_exponent(const CommonArgs& args) {
    Config cfg = make_config(args);
    const std::string kind = cfg.get_or("kind", "vwa");
    const Integer qmax(cfg.get("qmax"));
    if (qmax > Integer(1) << 24) throw ResourceLimit("qmax above 2^24");
    const RatMatrix Y = target_matrix(cfg);
    InhomShift z;
    if (cfg.has("shift")) z.z = parse_ratvec(cfg.get("shift"));

    ScanResult scan;
    if (kind == "vwa") scan = scan_vwa(Y, z, qmax);
    else if (kind == "vwma") scan = scan_vwma(Y, z, qmax);
    else if (kind == "rvwa") scan = scan_rvwa(Y, z, parse_weights(cfg.get("weights")), qmax);
    else throw ConfigError("kind must be vwa | vwma | rvwa");
    cfg.reject_unknown();

    const Json meta = meta_json(cfg, args, "exponent");
    write_out(args, "witnesses.jsonl", scan_to_jsonl(scan, meta));
    write_out(args, "curve.csv", curve_to_csv(exponent_curve(scan), meta_line(meta)));
    return 0;
}

int cmd_nonplanar(const CommonArgs& args) {
    Config cfg = make_config(args);
    const PolyMatrixMap F = manifold_from_config(cfg);
    const long samples = cfg.get_long_or("samples", 200);
    const long height = cfg.has("height") ? cfg.get_long("height") : 1;
    const long rand_candidates = cfg.get_long_or("rand_candidates", 0);
    const long rand_height = cfg.get_long_or("rand_height", height);
    if (samples > 100000 || height > 3) throw ResourceLimit("nonplanar search limits exceeded");
    cfg.reject_unknown();

    Rng rng(args.seed);
    const auto pts = random_points(rng, static_cast<std::size_t>(samples), F.d, 9, 9);
    const StrongNpReport snp = strong_np_rank(F, pts);

    const SearchOutcome ex = weak_np_failure_search(F, height, SearchMode::Exhaustive);
    std::optional<SearchOutcome> rnd;
    if (rand_candidates > 0)
        rnd = weak_np_failure_search(F, rand_height, SearchMode::Randomized,
                                     static_cast<unsigned long long>(rand_candidates),
                                     args.seed ^ 0x5eedULL);

    Json rep;
    rep["meta"] = meta_json(cfg, args, "nonplanar");
    rep["strongRank"] = snp.rank;
    rep["N"] = snp.N;
    rep["isStrong"] = snp.is_strong;
    if (snp.kernel) rep["kernel"] = intvec_to_json(*snp.kernel);
    rep["zCertificate"] = ex.certificate ? certificate_to_json(*ex.certificate) : Json(nullptr);
    rep["status"] = ex.certificate ? "found" : "not-found";
    rep["exhaustive"] = {{"height", height},
                         {"classesTested", ex.classes_tested},
                         {"candidatesTested", ex.candidates_tested}};
    if (rnd) {
        rep["randomized"] = {{"height", rand_height},
                             {"candidatesTested", rnd->candidates_tested},
                             {"status", rnd->certificate ? "found" : "not-found"}};
        if (rnd->certificate && !ex.certificate)
            rep["zCertificate"] = certificate_to_json(*rnd->certificate);
    }
    write_out(args, "report.json", rep.dump(2) + "\n");
    return 0;
}

int cmd_flow(const CommonArgs& args) {
    Config cfg = make_config(args);
    bool did_something = false;

    Json rep;
    rep["meta"] = meta_json(cfg, args, "flow");

    if (cfg.has("direction")) {
        const std::string dtext = cfg.get("direction");
        const auto semi = dtext.find(';');
        if (semi == std::string::npos)
            throw ConfigError("direction: expected 't1,...,tm;s1,...,sn'");
        const RatVector head = parse_ratvec(dtext.substr(0, semi));
        const RatVector tail = parse_ratvec(dtext.substr(semi + 1));
        RatVector dir = head;
        dir.insert(dir.end(), tail.begin(), tail.end());
        FlowTuple direction(dir, head.size(), tail.size());
        const long steps = cfg.get_long_or("steps", 10);
        if (steps > 64) throw ResourceLimit("steps above 64");
        const RatMatrix Y = target_matrix(cfg);
        const auto rows = systole_ray(Y, direction, steps);
        write_out(args, "ray.csv", ray_to_csv(rows, meta_line(rep["meta"])));
        did_something = true;
    }

    if (cfg.has("wheight")) {
        const PolyMatrixMap F = manifold_from_config(cfg);
        const long wheight = cfg.get_long("wheight");
        if (wheight > 3) throw ResourceLimit("wheight above 3");
        std::vector<std::size_t> grades;
        if (cfg.has("grades")) {
            std::istringstream in(cfg.get("grades"));
            std::string tok;
            while (std::getline(in, tok, ',')) grades.push_back(std::stoul(tok));
        }
        const long per_axis = cfg.get_long_or("samples_per_axis", 5);
        const Rational step = rat_from_string(cfg.get_or("sample_step", "1/2"));
        const auto samples = grid_points(F.d, static_cast<std::size_t>(per_axis), step);

        const MarginResult margin = criterion_margin(F, samples, wheight, grades);
        const ZeroWitnessResult zw = criterion_zero_witness(F, samples, wheight, grades);
        rep["margin"] = rat_to_string(margin.margin);
        rep["marginDecimal"] = rat_to_decimal(margin.margin, 12);
        rep["argmin"] = exterior_to_json(margin.argmin->wedge);
        rep["tuplesScanned"] = margin.tuples_scanned;
        rep["zeroWitness"] = zw.witness ? exterior_to_json(zw.witness->wedge) : Json(nullptr);
        rep["consistent"] = (margin.margin == 0) == bool(zw.witness);
        did_something = true;
    }

    cfg.reject_unknown();
    if (!did_something) throw ConfigError("flow: provide 'direction' (ray) or 'wheight' (margin)");
    write_out(args, "flow.json", rep.dump(2) + "\n");
    return 0;
}

int cmd_transfer(const CommonArgs& args) {
    Config cfg = make_config(args);
    const std::size_t m = static_cast<std::size_t>(cfg.get_long("m"));
    const std::size_t n = static_cast<std::size_t>(cfg.get_long("n"));
    const Rational eps = rat_from_string(cfg.get("eps"));
    const auto witnesses = witnesses_from_jsonl(read_file(cfg.get("witnesses")), m, n);
    cfg.reject_unknown();

    const ConversionReport rep = vwma_to_rvwa(witnesses, m, n, eps);
    Json j = conversion_to_json(rep);
    j["meta"] = meta_json(cfg, args, "transfer");
    write_out(args, "transfer.json", j.dump(2) + "\n");
    return rep.all_checks_passed ? 0 : 4;
}

int cmd_goodness(const CommonArgs& args) {
    Config cfg = make_config(args);
    const std::size_t d = static_cast<std::size_t>(cfg.get_long_or("d", 1));
    const MultiPoly f = parse_poly(cfg.get("f"), d);
    const RatVector center =
        cfg.has("center") ? parse_ratvec(cfg.get("center")) : RatVector(d, Rational(0));
    const Rational radius = rat_from_string(cfg.get_or("radius", "1"));
    const long per_axis = cfg.get_long_or("samples_per_axis", 10000);
    if (per_axis > 2000000) throw ResourceLimit("samples_per_axis above 2e6");
    const Ball dom(center, radius);
    const MeasureSample mu = MeasureSample::grid(dom, static_cast<std::size_t>(per_axis));

    std::vector<Rational> alphas;
    for (const auto& a : parse_ratvec(cfg.get_or("alphas", "1/4,1/2,3/4,1"))) alphas.push_back(a);
    const GoodEstimate ge = good_estimate(f, dom, mu, alphas);

    const Json meta = meta_json(cfg, args, "goodness");
    std::ostringstream csv;
    csv << "# " << meta_line(meta) << "\n";
    csv << "alpha,cHat,cHatPowB,b,degenerate\n";
    for (const auto& e : ge.per_alpha)
        csv << rat_to_string(e.alpha) << "," << root_decimal(e.c_pow_b, e.b, 6) << ","
            << rat_to_string(e.c_pow_b) << "," << e.b << "," << (ge.degenerate ? 1 : 0) << "\n";

    // Federer ratio over interior balls around a stride of sample points.
    const Rational fr = rat_from_string(cfg.get_or("federer_radius", rat_to_string(radius / 8)));
    const long stride = cfg.get_long_or("federer_stride",
                                        std::max<long>(1, static_cast<long>(mu.points.size() / 64)));
    std::vector<Ball> family;
    for (std::size_t i = 0; i < mu.points.size(); i += static_cast<std::size_t>(stride)) {
        Rational cd2(0);
        for (std::size_t k = 0; k < d; ++k) {
            const Rational di = mu.points[i][k] - dom.center[k];
            cd2 += di * di;
        }
        const Rational slack = dom.radius - 3 * fr;
        if (slack <= 0) break;
        if (cd2 <= slack * slack) family.push_back(Ball(mu.points[i], fr));
    }
    cfg.reject_unknown();

    Json rep;
    rep["meta"] = meta;
    if (!family.empty()) {
        const FedererEstimate fe = federer_estimate(mu, family);
        rep["dHat"] = rat_to_string(fe.d_hat);
        rep["dHatDecimal"] = rat_to_decimal(fe.d_hat, 6);
        rep["balls"] = family.size();
    } else {
        rep["dHat"] = Json(nullptr);
    }
    rep["degenerate"] = ge.degenerate;
    rep["supNorm"] = rat_to_string(ge.sup_norm);

    write_out(args, "goodness.csv", csv.str());
    write_out(args, "federer.json", rep.dump(2) + "\n");
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact Diophantine-approximation laboratory"};
    app.require_subcommand(1);

    CommonArgs a_exp, a_np, a_flow, a_tr, a_good;
    auto* c_exp = app.add_subcommand("exponent", "VWA/VWMA/weighted exponent scans");
    add_common(c_exp, a_exp);
    auto* c_np = app.add_subcommand("nonplanar", "strong-rank and failure-over-Z reports");
    add_common(c_np, a_np);
    auto* c_flow = app.add_subcommand("flow", "systole rays and criterion margins");
    add_common(c_flow, a_flow);
    auto* c_tr = app.add_subcommand("transfer", "multiplicative-to-weighted conversion");
    add_common(c_tr, a_tr);
    auto* c_good = app.add_subcommand("goodness", "(C,alpha)-good and Federer estimators");
    add_common(c_good, a_good);

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_exp->parsed()) return cmd_exponent(a_exp);
        if (c_np->parsed()) return cmd_nonplanar(a_np);
        if (c_flow->parsed()) return cmd_flow(a_flow);
        if (c_tr->parsed()) return cmd_transfer(a_tr);
        if (c_good->parsed()) return cmd_goodness(a_good);
    } catch (const ResourceLimit& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return 3;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const InvalidWeights& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const InvalidFlowTuple& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const UnknownBuiltin& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
    return 2;
}
