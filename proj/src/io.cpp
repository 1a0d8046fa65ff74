#include "diophlab/io.hpp"

#include <fstream>
#include <sstream>

namespace diophlab {

Json matrix_to_json(const RatMatrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(rat_to_string(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

RatMatrix matrix_from_json(const Json& j) {
    if (!j.is_array() || j.empty()) throw ParseError("matrix JSON: expected array of rows");
    const std::size_t rows = j.size();
    const std::size_t cols = j[0].size();
    RatMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        if (j[i].size() != cols) throw ParseError("matrix JSON: ragged rows");
        for (std::size_t c = 0; c < cols; ++c) {
            const auto& cell = j[i][c];
            m(i, c) = cell.is_string() ? rat_from_string(cell.get<std::string>())
                                       : Rational(cell.get<long long>());
        }
    }
    return m;
}

Json intmatrix_to_json(const IntMatrix& m) { return matrix_to_json(to_rational(m)); }

Json ratvec_to_json(const RatVector& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(rat_to_string(x));
    return a;
}

RatVector ratvec_from_json(const Json& j) {
    RatVector v;
    for (const auto& cell : j)
        v.push_back(cell.is_string() ? rat_from_string(cell.get<std::string>())
                                     : Rational(cell.get<long long>()));
    return v;
}

Json intvec_to_json(const IntVector& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(x.str());
    return a;
}

IntVector intvec_from_json(const Json& j) {
    IntVector v;
    for (const auto& cell : j)
        v.push_back(cell.is_string() ? Integer(cell.get<std::string>())
                                     : Integer(cell.get<long long>()));
    return v;
}

Json exterior_to_json(const ExteriorElement& w) {
    Json list = Json::array();
    for (const auto& [mask, c] : w.coords) {
        Json item;
        item["subset"] = mask_to_subset(mask);
        item["coeff"] = rat_to_string(c);
        list.push_back(std::move(item));
    }
    return list;
}

Json witness_to_json(const Witness& w) {
    Json j;
    j["q"] = intvec_to_json(w.q);
    j["p"] = intvec_to_json(w.p);
    j["Q"] = rat_to_string(w.Q);
    Json errs = Json::array();
    for (const auto& e : w.row_errors) errs.push_back(rat_to_string(e));
    j["rowErrors"] = std::move(errs);
    return j;
}

Witness witness_from_json(const Json& j, std::size_t m, std::size_t n) {
    Witness w;
    w.q = intvec_from_json(j.at("q"));
    w.p = intvec_from_json(j.at("p"));
    w.Q = rat_from_string(j.at("Q").get<std::string>());
    for (const auto& cell : j.at("rowErrors"))
        w.row_errors.push_back(rat_from_string(cell.get<std::string>()));
    if (w.q.size() != n || w.p.size() != m || w.row_errors.size() != m)
        throw ParseError("witness JSON: shape mismatch");
    return w;
}

Json certificate_to_json(const ZCertificate& c) {
    Json j;
    j["A"] = intmatrix_to_json(c.A);
    j["B"] = intmatrix_to_json(c.B);
    j["height"] = c.height;
    j["polynomialHash"] = hex64(c.poly_hash);
    return j;
}

std::string scan_to_jsonl(const ScanResult& scan, const Json& meta) {
    std::ostringstream os;
    Json head;
    head["meta"] = meta;
    os << head.dump() << "\n";
    for (const auto& sh : scan.shells) {
        Json j = witness_to_json(sh.witness);
        if (sh.eps_infinite) {
            j["epsLow"] = "+inf";
            j["epsHigh"] = "+inf";
        } else {
            j["epsLow"] = rat_to_string(sh.eps_low);
            j["epsHigh"] = rat_to_string(sh.eps_high);
        }
        os << j.dump() << "\n";
    }
    return os.str();
}

std::vector<Witness> witnesses_from_jsonl(const std::string& text, std::size_t m,
                                          std::size_t n) {
    std::vector<Witness> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const Json j = Json::parse(line);
        if (j.contains("meta")) continue;
        out.push_back(witness_from_json(j, m, n));
    }
    return out;
}

std::string curve_to_csv(const std::vector<CurveRow>& rows, const std::string& meta_line) {
    std::ostringstream os;
    os << "# " << meta_line << "\n";
    os << "log2Q,epsLow,epsHigh,epsRunningMax,epsLowDecimal\n";
    for (const auto& r : rows) {
        if (r.eps_infinite) {
            os << r.t << ",+inf,+inf,+inf,+inf\n";
        } else {
            os << r.t << "," << rat_to_string(r.eps_low) << "," << rat_to_string(r.eps_high)
               << "," << rat_to_string(r.running_max) << "," << rat_to_decimal(r.eps_low, 6)
               << "\n";
        }
    }
    return os.str();
}

std::string ray_to_csv(const std::vector<RayRow>& rows, const std::string& meta_line) {
    std::ostringstream os;
    os << "# " << meta_line << "\n";
    os << "s,normSq,normSqDecimal\n";
    for (const auto& r : rows)
        os << r.s << "," << rat_to_string(r.norm_sq) << "," << rat_to_decimal(r.norm_sq, 12)
           << "\n";
    return os.str();
}

Json conversion_to_json(const ConversionReport& rep) {
    Json j;
    j["case"] = std::string(1, rep.case_tag);
    if (rep.case_tag == 'a') j["j0"] = rep.j0 + 1; // 1-based row in reports
    j["r"] = ratvec_to_json(rep.r);
    if (rep.choice) {
        j["delta"] = rat_to_string(rep.choice->delta);
        j["deltaPrime"] = rat_to_string(rep.choice->delta_prime);
        j["epsPrime"] = rat_to_string(rep.choice->eps_prime);
        j["eps"] = rat_to_string(rep.choice->eps);
    }
    j["skipped"] = rep.skipped;
    j["allChecksPassed"] = rep.all_checks_passed;
    Json checks = Json::array();
    for (const auto& cw : rep.converted) {
        Json c = witness_to_json(cw.witness);
        c["r"] = ratvec_to_json(cw.r);
        c["vb13"] = cw.vb13_ok;
        checks.push_back(std::move(c));
    }
    j["perWitnessChecks"] = std::move(checks);
    return j;
}

RatVector parse_ratvec(const std::string& text) {
    RatVector out;
    std::string cur;
    std::istringstream in(text);
    while (std::getline(in, cur, ',')) {
        if (cur.empty()) continue;
        out.push_back(rat_from_string(cur));
    }
    return out;
}

WeightTuple parse_weights(const std::string& text) {
    const auto semi = text.find(';');
    if (semi == std::string::npos)
        throw ParseError("weights: expected 'r1,...,rm;s1,...,sn'");
    const RatVector head = parse_ratvec(text.substr(0, semi));
    const RatVector tail = parse_ratvec(text.substr(semi + 1));
    RatVector all = head;
    all.insert(all.end(), tail.begin(), tail.end());
    return WeightTuple(all, head.size(), tail.size());
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write file: " + path);
    out << content;
}

} // namespace diophlab
