// JSON serialization.  Matrix wire format (bit-exact contract):
//   {"dim": d, "data": [[re, im], ...]}   row-major, length d*d
// Parsers reject wrong lengths and non-finite components.
#pragma once

#include "isosym/classify.hpp"
#include "isosym/drazin.hpp"
#include "isosym/generators.hpp"
#include "isosym/harness.hpp"

#include <json.hpp>

#include <string>

namespace isosym {

nlohmann::json matrix_to_json(const CMatrix& a);
CMatrix matrix_from_json(const nlohmann::json& j);   // throws "bad-matrix-json"

CMatrix load_matrix(const std::string& path);
void save_matrix(const std::string& path, const CMatrix& a);

nlohmann::json to_json(const ClassReport& r);
nlohmann::json to_json(const OperatorClassification& c);
nlohmann::json to_json(const DrazinDecomposition& d);
nlohmann::json to_json(const Check& c);
nlohmann::json to_json(const VerificationReport& r);
nlohmann::json to_json(const SuiteReport& r);
nlohmann::json to_json(const GenSpec& s);
nlohmann::json to_json(const SuiteConfig& c);

GenSpec genspec_from_json(const nlohmann::json& j);
SuiteConfig suite_config_from_json(const nlohmann::json& j);

} // namespace isosym
