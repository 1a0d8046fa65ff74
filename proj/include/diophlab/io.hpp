#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "diophlab/dioph.hpp"
#include "diophlab/exterior.hpp"
#include "diophlab/flow.hpp"
#include "diophlab/matrix.hpp"
#include "diophlab/nonplanarity.hpp"
#include "diophlab/transference.hpp"

namespace diophlab {

using Json = nlohmann::json;

// Matrices travel as JSON arrays of row arrays of rational strings "p/q".
Json matrix_to_json(const RatMatrix& m);
RatMatrix matrix_from_json(const Json& j);
Json intmatrix_to_json(const IntMatrix& m);

Json ratvec_to_json(const RatVector& v);
RatVector ratvec_from_json(const Json& j);
Json intvec_to_json(const IntVector& v);
IntVector intvec_from_json(const Json& j);

// List of {subset: [ints], coeff: "p/q"}.
Json exterior_to_json(const ExteriorElement& w);

Json witness_to_json(const Witness& w);
Witness witness_from_json(const Json& j, std::size_t m, std::size_t n);

Json certificate_to_json(const ZCertificate& c);

// One meta record, then one record per shell.
std::string scan_to_jsonl(const ScanResult& scan, const Json& meta);
std::vector<Witness> witnesses_from_jsonl(const std::string& text, std::size_t m, std::size_t n);

std::string curve_to_csv(const std::vector<CurveRow>& rows, const std::string& meta_line);
std::string ray_to_csv(const std::vector<RayRow>& rows, const std::string& meta_line);

Json conversion_to_json(const ConversionReport& rep);

// Comma-separated rationals: "1/2,-3,7/4".
RatVector parse_ratvec(const std::string& text);
// Weight syntax "r1,...,rm;s1,...,sn".
WeightTuple parse_weights(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

} // namespace diophlab
