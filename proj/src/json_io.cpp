#include "isosym/json_io.hpp"

#include <cmath>
#include <fstream>

namespace isosym {

using nlohmann::json;

json matrix_to_json(const CMatrix& a) {
    json data = json::array();
    for (const cd& z : a.data()) data.push_back({z.real(), z.imag()});
    return json{{"dim", a.dim()}, {"data", data}};
}

CMatrix matrix_from_json(const json& j) {
    if (!j.is_object() || !j.contains("dim") || !j.contains("data"))
        throw Error("bad-matrix-json", "expected object with \"dim\" and \"data\"");
    if (!j["dim"].is_number_integer())
        throw Error("bad-matrix-json", "field \"dim\" must be an integer");
    const long dim = j["dim"].get<long>();
    if (dim < 0 || dim > 4096)
        throw Error("bad-matrix-json", "field \"dim\" out of range");
    const json& data = j["data"];
    if (!data.is_array() || static_cast<long>(data.size()) != dim * dim)
        throw Error("bad-matrix-json", "field \"data\" must hold dim*dim entries");
    CMatrix m(static_cast<int>(dim));
    for (long k = 0; k < dim * dim; ++k) {
        const json& e = data[k];
        if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
            throw Error("bad-matrix-json",
                        "data[" + std::to_string(k) + "] must be [re, im]");
        const double re = e[0].get<double>();
        const double im = e[1].get<double>();
        if (!std::isfinite(re) || !std::isfinite(im))
            throw Error("bad-matrix-json",
                        "data[" + std::to_string(k) + "] is not finite");
        m.data()[k] = cd(re, im);
    }
    return m;
}

CMatrix load_matrix(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("bad-matrix-json", "cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw Error("bad-matrix-json", path + ": " + e.what());
    }
    return matrix_from_json(j);
}

void save_matrix(const std::string& path, const CMatrix& a) {
    std::ofstream out(path);
    if (!out) throw Error("bad-matrix-json", "cannot open " + path + " for writing");
    out << matrix_to_json(a).dump(2) << "\n";
}

json to_json(const ClassReport& r) {
    json j{{"class", r.class_label},
           {"residual", r.residual},
           {"scale", r.scale},
           {"verdict", r.verdict}};
    if (r.order.size() == 1)
        j["order"] = r.order[0];
    else
        j["order"] = r.order;
    if (!r.flags.empty()) j["flags"] = r.flags;
    return j;
}

json to_json(const OperatorClassification& c) {
    json reports = json::array();
    for (const auto& r : c.reports) reports.push_back(to_json(r));
    json j{{"reports", reports}};
    j["min_isometry_order"] =
        c.min_isometry_order ? json(*c.min_isometry_order) : json(nullptr);
    j["min_symmetry_order"] =
        c.min_symmetry_order ? json(*c.min_symmetry_order) : json(nullptr);
    json frontier = json::array();
    for (const auto& [m, n] : c.isosymmetry_frontier) frontier.push_back({m, n});
    j["isosymmetry_frontier"] = frontier;
    return j;
}

json to_json(const DrazinDecomposition& d) {
    return json{{"similarity", matrix_to_json(d.similarity)},
                {"core", matrix_to_json(d.core)},
                {"nilpotent", matrix_to_json(d.nilpotent)},
                {"index", d.index},
                {"drazin", matrix_to_json(d.drazin)},
                {"diagnostics", d.diagnostics}};
}

json to_json(const Check& c) {
    return json{{"label", c.label},
                {"residual", c.residual},
                {"threshold", c.threshold},
                {"pass", c.pass}};
}

json to_json(const VerificationReport& r) {
    json hy = json::array(), co = json::array(), in = json::array();
    for (const auto& c : r.hypotheses) hy.push_back(to_json(c));
    for (const auto& c : r.conclusions) co.push_back(to_json(c));
    for (const auto& c : r.informational) in.push_back(to_json(c));
    return json{{"id", r.id},
                {"seed", r.seed},
                {"dim", r.dim},
                {"hypotheses", hy},
                {"conclusions", co},
                {"informational", in},
                {"notes", r.notes},
                {"verdict", to_string(r.verdict)},
                {"runtime_ms", r.runtime_ms}};
}

json to_json(const SuiteConfig& c) {
    return json{{"seeds", c.seeds},
                {"dims", c.dims},
                {"max_order", c.max_order},
                {"suites", c.suites},
                {"atol", c.tol.atol},
                {"rtol", c.tol.rtol}};
}

json to_json(const SuiteReport& r) {
    json cells = json::array();
    for (const auto& c : r.cells) cells.push_back(to_json(c));
    return json{{"config", to_json(r.config)},
                {"cells", cells},
                {"summary", {{"pass", r.pass}, {"fail", r.fail}, {"vacuous", r.vacuous}}}};
}

json to_json(const GenSpec& s) {
    return json{{"seed", s.seed},
                {"dim", s.dim},
                {"family", s.family},
                {"params", s.params}};
}

GenSpec genspec_from_json(const json& j) {
    GenSpec s;
    s.seed = j.at("seed").get<std::uint64_t>();
    s.dim = j.at("dim").get<int>();
    s.family = j.value("family", std::string{});
    if (j.contains("params"))
        s.params = j["params"].get<std::map<std::string, int>>();
    return s;
}

SuiteConfig suite_config_from_json(const json& j) {
    SuiteConfig c;
    if (j.contains("seeds")) c.seeds = j["seeds"].get<std::vector<std::uint64_t>>();
    if (j.contains("dims")) c.dims = j["dims"].get<std::vector<int>>();
    if (j.contains("max_order")) c.max_order = j["max_order"].get<int>();
    if (j.contains("suites")) c.suites = j["suites"].get<std::vector<std::string>>();
    if (j.contains("atol")) c.tol.atol = j["atol"].get<double>();
    if (j.contains("rtol")) c.tol.rtol = j["rtol"].get<double>();
    return c;
}

} // namespace isosym
