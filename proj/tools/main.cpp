// isosym: classify operators from matrix JSON files, generate certified
// instance bundles, run the verification suites, and search minimal orders.
//
// Exit codes: 0 success / all checks passed, 1 verified failure or
// generation failure, 2 usage, configuration or parse errors.

#include "isosym/json_io.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace isosym;

namespace {

void emit(const json& j, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::ofstream out(out_path);
        if (!out) throw Error("config-error", "cannot open " + out_path + " for writing");
        out << j.dump(2) << "\n";
    }
}

int classify_exit(const std::vector<std::string>& files, const std::string& x_path,
                  int mmax, int nmax, const Tolerance& tol, const std::string& format,
                  const std::string& out_path) {
    json results = json::array();
    std::string text;
    for (const auto& file : files) {
        const CMatrix a = load_matrix(file);
        if (a.dim() > dim_limits().max_instance)
            throw Error("dim-too-large", file + ": dim " + std::to_string(a.dim()) +
                                             " exceeds cap " +
                                             std::to_string(dim_limits().max_instance));
        CMatrix x = x_path.empty() ? CMatrix::identity(a.dim()) : load_matrix(x_path);
        const OperatorClassification c = classify_operator(a, x, mmax, nmax, tol);
        json entry{{"file", file}, {"classification", to_json(c)}};
        results.push_back(entry);
        if (format == "text") {
            text += file + ":\n";
            text += "  minimal isometry order: " +
                    (c.min_isometry_order ? std::to_string(*c.min_isometry_order)
                                          : std::string("none <= ") + std::to_string(mmax)) +
                    "\n";
            text += "  minimal symmetry order: " +
                    (c.min_symmetry_order ? std::to_string(*c.min_symmetry_order)
                                          : std::string("none <= ") + std::to_string(nmax)) +
                    "\n";
            text += "  isosymmetry frontier:";
            for (const auto& [m, n] : c.isosymmetry_frontier)
                text += " (" + std::to_string(m) + "," + std::to_string(n) + ")";
            text += "\n";
        }
    }
    if (format == "text") {
        if (out_path.empty())
            std::cout << text;
        else {
            std::ofstream out(out_path);
            out << text;
        }
    } else {
        emit(results.size() == 1 ? results[0] : results, out_path);
    }
    return 0;
}

int verify_exit(const SuiteConfig& config, const std::string& format,
                const std::string& out_path) {
    const SuiteReport report = run_suite(config);
    if (format == "text") {
        std::string text;
        for (const auto& c : report.cells)
            text += c.id + " seed=" + std::to_string(c.seed) + " dim=" +
                    std::to_string(c.dim) + " -> " + to_string(c.verdict) + "\n";
        text += "pass=" + std::to_string(report.pass) + " fail=" +
                std::to_string(report.fail) + " vacuous=" + std::to_string(report.vacuous) + "\n";
        if (out_path.empty())
            std::cout << text;
        else {
            std::ofstream out(out_path);
            out << text;
        }
    } else {
        emit(to_json(report), out_path);
    }
    return report.ok() ? 0 : 1;
}

void write_bundle_matrix(json& manifest, const fs::path& dir, const std::string& name,
                         const CMatrix& m) {
    save_matrix((dir / (name + ".json")).string(), m);
    manifest["files"].push_back(name + ".json");
}

int gen_exit(const GenSpec& spec, const std::string& out_dir) {
    fs::path dir(out_dir);
    fs::create_directories(dir);
    json manifest{{"genspec", to_json(spec)}, {"files", json::array()}};
    json residuals = json::object();
    const auto copy_residuals = [&](const std::map<std::string, double>& cert) {
        for (const auto& [k, v] : cert) residuals[k] = v;
    };

    if (spec.family == "mr" || spec.family == "isonil") {
        const OperatorInstance inst = spec.family == "mr"
                                          ? mr_symmetric_instance(spec)
                                          : isometry_plus_nilpotent_instance(spec);
        write_bundle_matrix(manifest, dir, "A", inst.op);
        manifest["expected_order"] = inst.expected_order;
    } else if (spec.family == "unitary") {
        write_bundle_matrix(manifest, dir, "U", random_unitary(spec));
    } else if (spec.family == "selfadjoint") {
        write_bundle_matrix(manifest, dir, "H", random_selfadjoint(spec));
    } else if (spec.family == "commuting") {
        const int count = spec.param("count", 2);
        const auto fam = commuting_family(spec, count);
        for (size_t i = 0; i < fam.size(); ++i)
            write_bundle_matrix(manifest, dir, "C" + std::to_string(i + 1), fam[i]);
    } else if (spec.family == "jordan") {
        const cd lambda(spec.param("lambda_re", 1), spec.param("lambda_im", 0));
        write_bundle_matrix(manifest, dir, "J", jordan_block(lambda, spec.dim));
    } else if (spec.family == "prop1") {
        const Prop1Instance inst = prop1_instance(spec);
        write_bundle_matrix(manifest, dir, "A1", inst.a1);
        write_bundle_matrix(manifest, dir, "B1", inst.b1);
        write_bundle_matrix(manifest, dir, "A2", inst.a2);
        write_bundle_matrix(manifest, dir, "B2", inst.b2);
        write_bundle_matrix(manifest, dir, "S", inst.s);
        write_bundle_matrix(manifest, dir, "T", inst.t);
        write_bundle_matrix(manifest, dir, "X", inst.x);
        manifest["orders"] = {{"m", inst.m}, {"n", inst.n}, {"t", inst.tord}};
        copy_residuals(inst.certificates);
    } else if (spec.family == "thm1") {
        const Theorem1Instance inst = theorem1_instance(spec);
        write_bundle_matrix(manifest, dir, "A1", inst.a1);
        write_bundle_matrix(manifest, dir, "B1", inst.b1);
        write_bundle_matrix(manifest, dir, "A2", inst.a2);
        write_bundle_matrix(manifest, dir, "B2", inst.b2);
        write_bundle_matrix(manifest, dir, "S1", inst.s1);
        write_bundle_matrix(manifest, dir, "T1", inst.t1);
        write_bundle_matrix(manifest, dir, "S2", inst.s2);
        write_bundle_matrix(manifest, dir, "T2", inst.t2);
        write_bundle_matrix(manifest, dir, "X", inst.x);
        manifest["orders"] = {{"m1", inst.m1}, {"n1", inst.n1}, {"r1", inst.r1},
                              {"n2", inst.n2}, {"m2", inst.m2}, {"s1", inst.s1o},
                              {"r2", inst.r2}, {"s2", inst.s2o}};
        copy_residuals(inst.certificates);
    } else if (spec.family == "thm2") {
        const Theorem2Instance inst = theorem2_instance(spec);
        write_bundle_matrix(manifest, dir, "A1", inst.a1);
        write_bundle_matrix(manifest, dir, "B1", inst.b1);
        write_bundle_matrix(manifest, dir, "A2", inst.a2);
        write_bundle_matrix(manifest, dir, "B2", inst.b2);
        write_bundle_matrix(manifest, dir, "M1", inst.m1op);
        write_bundle_matrix(manifest, dir, "M2", inst.m2op);
        write_bundle_matrix(manifest, dir, "N1", inst.n1op);
        write_bundle_matrix(manifest, dir, "N2", inst.n2op);
        write_bundle_matrix(manifest, dir, "X", inst.x);
        manifest["orders"] = {{"m", inst.m},   {"n", inst.n},   {"m1", inst.m1},
                              {"n1", inst.n1}, {"m2", inst.m2}, {"n2", inst.n2}};
        copy_residuals(inst.certificates);
    } else if (spec.family == "thm3") {
        const Theorem3Instance inst = theorem3_instance(spec);
        write_bundle_matrix(manifest, dir, "A", inst.a);
        write_bundle_matrix(manifest, dir, "X", inst.x);
        manifest["orders"] = {{"m", inst.m}, {"n", inst.n}, {"p", inst.p}};
        copy_residuals(inst.certificates);
        const DrazinDecomposition dec = core_nilpotent(inst.a);
        std::ofstream side((dir / "drazin.json").string());
        side << to_json(dec).dump(2) << "\n";
        manifest["files"].push_back("drazin.json");
    } else {
        throw Error("config-error", "unknown family " + spec.family);
    }

    manifest["hypothesis_residuals"] = residuals;
    std::ofstream out((dir / "manifest.json").string());
    out << manifest.dump(2) << "\n";
    return 0;
}

int search_exit(const std::string& file, const std::string& x_path,
                const std::string& klass, int bound, const Tolerance& tol,
                const std::string& out_path) {
    const CMatrix a = load_matrix(file);
    if (a.dim() > dim_limits().max_instance)
        throw Error("dim-too-large", file + ": dim " + std::to_string(a.dim()) +
                                         " exceeds cap " +
                                         std::to_string(dim_limits().max_instance));
    const CMatrix x = x_path.empty() ? CMatrix::identity(a.dim()) : load_matrix(x_path);
    const OrderKind kind = klass == "isometry" ? OrderKind::Triangle : OrderKind::Delta;
    const MinimalOrderResult res = minimal_order(kind, adjoint(a), a, x, bound, tol);
    json j{{"kind", "minimal-order"},
           {"class", klass},
           {"bound", bound},
           {"residuals", res.residuals},
           {"warnings", res.warnings}};
    j["order"] = res.order ? json(*res.order) : json(nullptr);
    emit(j, out_path);
    if (!res.order) std::cout << "none <= " << bound << "\n";
    return 0;
}

std::map<std::string, int> parse_params(const std::string& text) {
    std::map<std::string, int> out;
    size_t pos = 0;
    while (pos < text.size()) {
        size_t comma = text.find(',', pos);
        if (comma == std::string::npos) comma = text.size();
        const std::string item = text.substr(pos, comma - pos);
        const size_t eq = item.find('=');
        if (eq == std::string::npos || eq == 0)
            throw Error("config-error", "bad --params item '" + item + "' (want key=value)");
        try {
            out[item.substr(0, eq)] = std::stoi(item.substr(eq + 1));
        } catch (const std::exception&) {
            throw Error("config-error", "bad --params value in '" + item + "'");
        }
        pos = comma + 1;
    }
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite-dimensional toolkit for elementary-operator defect transforms"};
    app.require_subcommand(1);
    app.fallthrough();

    Tolerance tol;
    std::string format = "json";
    std::string out_path;
    app.add_option("--atol", tol.atol, "absolute tolerance")->capture_default_str();
    app.add_option("--rtol", tol.rtol, "relative tolerance")->capture_default_str();
    app.add_option("--format", format, "output format")->check(CLI::IsMember({"json", "text"}));
    app.add_option("--out", out_path, "write output to this path");

    auto* check = app.add_subcommand("check", "classify operators from matrix JSON files");
    std::vector<std::string> check_files;
    std::string x_path;
    int mmax = 8, nmax = 8;
    check->add_option("files", check_files, "matrix JSON files")->required();
    check->add_option("--x", x_path, "weight matrix X (defaults to identity)");
    check->add_option("--mmax", mmax, "isometry order bound")->check(CLI::Range(1, 10));
    check->add_option("--nmax", nmax, "symmetry order bound")->check(CLI::Range(1, 10));

    auto* verify = app.add_subcommand("verify", "run verification suites");
    std::string suite = "all";
    int nseeds = 5;
    std::vector<int> dims = {2, 4, 6};
    int orders = 3;
    std::uint64_t seed0 = 1;
    verify->add_option("--suite", suite, "suite selector")
        ->check(CLI::IsMember({"lemmas", "prop1", "corollaries", "thm1", "thm2", "thm3", "all"}));
    verify->add_option("--seeds", nseeds, "number of seeds")->check(CLI::Range(1, 10000));
    verify->add_option("--seed0", seed0, "first seed value");
    verify->add_option("--dims", dims, "instance dimensions")->delimiter(',');
    verify->add_option("--orders", orders, "hypothesis order bound");

    auto* gen = app.add_subcommand("gen", "generate a certified instance bundle");
    GenSpec spec;
    std::string params_text;
    std::string gen_out = "bundle";
    gen->add_option("--family", spec.family, "instance family")->required();
    gen->add_option("--seed", spec.seed, "generator seed");
    gen->add_option("--dim", spec.dim, "instance dimension");
    gen->add_option("--params", params_text, "family parameters, e.g. n=2,p=3");
    gen->add_option("--outdir", gen_out, "bundle directory")->capture_default_str();

    auto* search = app.add_subcommand("search", "minimal-order sweep for one operator");
    std::string search_file, search_x, search_kind = "minimal-order", search_class = "isometry";
    int bound = 10;
    search->add_option("--kind", search_kind, "search kind")
        ->check(CLI::IsMember({"minimal-order"}));
    search->add_option("--class", search_class, "operator class")
        ->check(CLI::IsMember({"isometry", "symmetry"}));
    search->add_option("--bound", bound, "order bound")->check(CLI::Range(1, 20));
    search->add_option("file", search_file, "matrix JSON file")->required();
    search->add_option("--x", search_x, "weight matrix X");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        apply_dim_env();
        if (*check) return classify_exit(check_files, x_path, mmax, nmax, tol, format, out_path);
        if (*verify) {
            SuiteConfig config;
            config.suites = {suite};
            config.dims = dims;
            config.max_order = orders;
            config.tol = tol;
            config.seeds.clear();
            for (int i = 0; i < nseeds; ++i) config.seeds.push_back(seed0 + i);
            return verify_exit(config, format, out_path);
        }
        if (*gen) {
            if (!params_text.empty()) spec.params = parse_params(params_text);
            if (spec.dim == 0) spec.dim = 4;
            return gen_exit(spec, gen_out);
        }
        if (*search)
            return search_exit(search_file, search_x, search_class, bound, tol, out_path);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        const std::string& code = e.code();
        if (code == "config-error" || code == "bad-matrix-json" ||
            code == "order-too-large" || code == "dim-too-large" || code == "dim-mismatch")
            return 2;
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
