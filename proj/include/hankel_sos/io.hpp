#pragma once

// File formats: JSON input tuples, JSON certificate files, CSV sweep
// tables.  Certificate files must survive write -> read without losing a
// bit, so they rely on the JSON library's shortest-round-trip double
// printing.  Human-facing tables round to 12 significant digits instead;
// that rounding is part of the output contract, not an accident.

#include <array>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hankel_sos/certificate.hpp"
#include "hankel_sos/critical.hpp"
#include "hankel_sos/errors.hpp"
#include "hankel_sos/feasibility.hpp"
#include "hankel_sos/generating.hpp"

namespace hankel_sos {

// A parsed input tuple: the five free inner parameters plus an optional
// leading value.  Commands that need the leading value take it from here
// or from a flag; commands that search for it ignore it.
struct InputSpec {
    std::array<double, 5> params{};  // v1, v2, v3, v5, v6
    std::optional<double> v0;

    GeneratingVector generating(double lead) const {
        return GeneratingVector::from_params(lead, params[0], params[1], params[2], params[3],
                                             params[4]);
    }
};

namespace detail {

inline double require_number(const nlohmann::json& j, const std::string& key) {
    if (!j.contains(key))
        throw InvalidInputError("input JSON: missing required field \"" + key + "\"");
    const auto& v = j.at(key);
    if (!v.is_number())
        throw InvalidInputError("input JSON: field \"" + key + "\" must be a number");
    return v.get<double>();
}

inline nlohmann::json parse_json_text(const std::string& text, const std::string& what) {
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        // e.what() carries the byte position of the syntax error
        throw InvalidInputError(what + ": " + e.what());
    }
}

inline nlohmann::json read_json_file(const std::string& path, const std::string& what) {
    std::ifstream in(path);
    if (!in) throw InvalidInputError(what + ": cannot open \"" + path + "\"");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_json_text(buf.str(), what + " \"" + path + "\"");
}

}  // namespace detail

// Accepts either {"v": [13 numbers]} or {"v1": ..., ..., "v6": ...} with
// an optional "v0"; the two forms cannot be mixed.  Validation failures
// name the violated requirement.
inline InputSpec parse_input(const nlohmann::json& j) {
    if (!j.is_object()) throw InvalidInputError("input JSON: top level must be an object");

    InputSpec spec;
    if (j.contains("v")) {
        for (const auto& [key, _] : j.items())
            if (key != "v")
                throw InvalidInputError(
                    "input JSON: the 13-vector form allows no other field, found \"" + key + "\"");
        const auto& arr = j.at("v");
        if (!arr.is_array() || arr.size() != static_cast<std::size_t>(kGeneratingLen))
            throw InvalidInputError("input JSON: \"v\" must be an array of 13 numbers");
        std::array<double, kGeneratingLen> v{};
        for (int i = 0; i < kGeneratingLen; ++i) {
            if (!arr[i].is_number())
                throw InvalidInputError("input JSON: \"v\"[" + std::to_string(i) +
                                        "] must be a number");
            v[i] = arr[i].get<double>();
        }
        const GeneratingVector g = GeneratingVector::from_full(v);  // validates the invariants
        spec.params = {v[1], v[2], v[3], v[5], v[6]};
        spec.v0 = v[0];
        (void)g;
        return spec;
    }

    for (const auto& [key, _] : j.items())
        if (key != "v0" && key != "v1" && key != "v2" && key != "v3" && key != "v5" && key != "v6")
            throw InvalidInputError("input JSON: unknown field \"" + key + "\"" +
                                    (key == "v4" ? " (v4 is fixed at 1 and cannot be set)" : ""));
    spec.params = {detail::require_number(j, "v1"), detail::require_number(j, "v2"),
                   detail::require_number(j, "v3"), detail::require_number(j, "v5"),
                   detail::require_number(j, "v6")};
    if (j.contains("v0")) spec.v0 = detail::require_number(j, "v0");
    return spec;
}

inline InputSpec parse_input(const std::string& text) {
    return parse_input(detail::parse_json_text(text, "input JSON"));
}

inline InputSpec read_input(const std::string& path) {
    return parse_input(detail::read_json_file(path, "input JSON"));
}

// On-disk form of a certificate: enough to re-check the identity without
// re-running the solver, plus the solver stats that produced it.
struct CertificateFile {
    int schema_version = 1;
    std::array<double, kGeneratingLen> input{};  // full 13-vector echo, input[0] = v0
    std::array<double, kTriCount> alpha{};       // row-major upper triangle
    std::array<QuadVec, kGramDim> q{};           // q[k][j] = coefficient of u_{j+1} in q_{k+1}
    double max_coeff_residual = 0.0;
    double coeff_scale = 1.0;
    double solver_affine_residual = 0.0;
    double solver_psd_violation = 0.0;
    double solver_scale = 1.0;
    int solver_iterations = 0;

    // alpha is authoritative: the q rows are its human-readable unpacking,
    // so tampering with alpha is what verification must catch
    SosCertificate certificate() const {
        SosCertificate cert;
        std::size_t idx = 0;
        for (int k = 0; k < kGramDim; ++k)
            for (int j = k; j < kGramDim; ++j) cert.q[k][j] = alpha[idx++];
        return cert;
    }
};

inline CertificateFile make_certificate_file(const GeneratingVector& g, double v0,
                                             const SosCertificate& cert,
                                             const VerifyReport& verify,
                                             const FeasibilityReport& solve) {
    CertificateFile file;
    file.input = g.with_v0(v0).values();
    file.alpha = cert.alpha_flat();
    file.q = cert.q;
    file.max_coeff_residual = verify.max_coeff_residual;
    file.coeff_scale = verify.coeff_scale;
    file.solver_affine_residual = solve.affine_residual;
    file.solver_psd_violation = solve.psd_violation;
    file.solver_scale = solve.scale;
    file.solver_iterations = solve.iterations;
    return file;
}

inline nlohmann::json certificate_to_json(const CertificateFile& file) {
    nlohmann::json j;
    j["schema_version"] = file.schema_version;
    j["input"] = {{"v", file.input}};
    j["alpha"] = file.alpha;
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : file.q) rows.push_back(row);
    j["q"] = rows;
    j["residuals"] = {{"max_coeff_residual", file.max_coeff_residual},
                      {"coeff_scale", file.coeff_scale}};
    j["solver"] = {{"affine_residual", file.solver_affine_residual},
                   {"psd_violation", file.solver_psd_violation},
                   {"scale", file.solver_scale},
                   {"iterations", file.solver_iterations}};
    return j;
}

inline CertificateFile certificate_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("schema_version") || !j.at("schema_version").is_number_integer())
        throw InvalidInputError("certificate JSON: missing integer \"schema_version\"");
    CertificateFile file;
    file.schema_version = j.at("schema_version").get<int>();
    if (file.schema_version != 1)
        throw InvalidInputError("certificate JSON: unsupported schema_version " +
                                std::to_string(file.schema_version));
    try {
        const auto& arr = j.at("input").at("v");
        if (!arr.is_array() || arr.size() != static_cast<std::size_t>(kGeneratingLen))
            throw InvalidInputError(
                "certificate JSON: \"input.v\" must be an array of 13 numbers");
        for (int i = 0; i < kGeneratingLen; ++i) file.input[i] = arr[i].get<double>();

        const auto& alpha = j.at("alpha");
        if (!alpha.is_array() || alpha.size() != static_cast<std::size_t>(kTriCount))
            throw InvalidInputError("certificate JSON: \"alpha\" must be an array of " +
                                    std::to_string(kTriCount) + " numbers");
        for (int i = 0; i < kTriCount; ++i) file.alpha[i] = alpha[i].get<double>();

        const auto& q = j.at("q");
        if (!q.is_array() || q.size() != static_cast<std::size_t>(kGramDim))
            throw InvalidInputError("certificate JSON: \"q\" must be a list of " +
                                    std::to_string(kGramDim) + " rows");
        for (int k = 0; k < kGramDim; ++k) {
            const auto& row = q[k];
            if (!row.is_array() || row.size() != static_cast<std::size_t>(kGramDim))
                throw InvalidInputError("certificate JSON: \"q\"[" + std::to_string(k) +
                                        "] must hold " + std::to_string(kGramDim) + " numbers");
            for (int i = 0; i < kGramDim; ++i) file.q[k][i] = row[i].get<double>();
        }

        const auto& res = j.at("residuals");
        file.max_coeff_residual = res.at("max_coeff_residual").get<double>();
        file.coeff_scale = res.at("coeff_scale").get<double>();
        const auto& sol = j.at("solver");
        file.solver_affine_residual = sol.at("affine_residual").get<double>();
        file.solver_psd_violation = sol.at("psd_violation").get<double>();
        file.solver_scale = sol.at("scale").get<double>();
        file.solver_iterations = sol.at("iterations").get<int>();
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInputError(std::string("certificate JSON: malformed structure: ") + e.what());
    }
    return file;
}

inline void write_certificate(const std::string& path, const CertificateFile& file) {
    std::ofstream out(path);
    if (!out) throw InvalidInputError("certificate JSON: cannot write \"" + path + "\"");
    out << certificate_to_json(file).dump(2) << '\n';
    if (!out) throw InvalidInputError("certificate JSON: write to \"" + path + "\" failed");
}

inline CertificateFile read_certificate(const std::string& path) {
    return certificate_from_json(detail::read_json_file(path, "certificate JSON"));
}

// 12 significant digits: the table contract for every human-facing number
inline std::string format_number(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

inline std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::ostringstream out;
    out << "v1,v2,v3,v5,v6,m1_lower,m1_upper,sphere_min,status,seconds\n";
    for (const auto& row : rows) {
        for (double p : row.params) out << format_number(p) << ',';
        out << format_number(row.m1_lower) << ',' << format_number(row.m1_upper) << ','
            << format_number(row.sphere_min) << ',' << row.status << ','
            << format_number(row.seconds) << '\n';
    }
    return out.str();
}

inline void write_sweep_csv(const std::string& path, const std::vector<SweepRow>& rows) {
    std::ofstream out(path);
    if (!out) throw InvalidInputError("sweep CSV: cannot write \"" + path + "\"");
    out << sweep_csv(rows);
    if (!out) throw InvalidInputError("sweep CSV: write to \"" + path + "\" failed");
}

// Grid files for sweeps: {"grid": [[v1,v2,v3,v5,v6], ...]}
inline std::vector<std::array<double, 5>> read_grid(const std::string& path) {
    const nlohmann::json j = detail::read_json_file(path, "grid JSON");
    if (!j.is_object() || !j.contains("grid") || !j.at("grid").is_array())
        throw InvalidInputError("grid JSON: expected an object with a \"grid\" array");
    std::vector<std::array<double, 5>> grid;
    const auto& rows = j.at("grid");
    grid.reserve(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const auto& row = rows[r];
        if (!row.is_array() || row.size() != 5)
            throw InvalidInputError("grid JSON: row " + std::to_string(r) +
                                    " must hold 5 numbers (v1, v2, v3, v5, v6)");
        std::array<double, 5> vals{};
        for (int i = 0; i < 5; ++i) {
            if (!row[i].is_number())
                throw InvalidInputError("grid JSON: row " + std::to_string(r) + " entry " +
                                        std::to_string(i) + " must be a number");
            vals[i] = row[i].get<double>();
        }
        grid.push_back(vals);
    }
    return grid;
}

}  // namespace hankel_sos
