#include "vstate/io.hpp"

#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <stdexcept>

namespace vstate {

namespace {

double require_finite_number(const nlohmann::json& j, const char* field) {
    if (!j.contains(field)) {
        throw std::invalid_argument(std::string("patch JSON missing field \"") + field + "\"");
    }
    const auto& v = j.at(field);
    if (!v.is_number()) {
        throw std::invalid_argument(std::string("patch JSON field \"") + field +
                                    "\" must be a number");
    }
    const double x = v.get<double>();
    if (!std::isfinite(x)) {
        throw std::invalid_argument(std::string("patch JSON field \"") + field +
                                    "\" must be finite");
    }
    return x;
}

std::vector<double> require_number_array(const nlohmann::json& j, const char* field) {
    if (!j.contains(field)) {
        throw std::invalid_argument(std::string("patch JSON missing field \"") + field + "\"");
    }
    const auto& v = j.at(field);
    if (!v.is_array()) {
        throw std::invalid_argument(std::string("patch JSON field \"") + field +
                                    "\" must be an array");
    }
    std::vector<double> out;
    out.reserve(v.size());
    for (const auto& e : v) {
        if (!e.is_number()) {
            throw std::invalid_argument(std::string("patch JSON field \"") + field +
                                        "\" must contain only numbers");
        }
        const double x = e.get<double>();
        if (!std::isfinite(x)) {
            throw std::invalid_argument(std::string("patch JSON field \"") + field +
                                        "\" contains a non-finite value");
        }
        out.push_back(x);
    }
    return out;
}

}  // namespace

nlohmann::json patch_to_json(const PatchState& p) {
    return nlohmann::json{{"omega", p.omega},
                          {"mean_radius", p.boundary.mean_radius()},
                          {"cos", p.boundary.cos_coeffs()},
                          {"sin", p.boundary.sin_coeffs()}};
}

PatchState patch_from_json(const nlohmann::json& j) {
    const double omega = require_finite_number(j, "omega");
    const double lam = require_finite_number(j, "mean_radius");
    std::vector<double> a = require_number_array(j, "cos");
    std::vector<double> b = require_number_array(j, "sin");
    if (a.size() != b.size()) {
        throw std::invalid_argument("patch JSON fields \"cos\" and \"sin\" must have equal length");
    }
    if (!(lam > 0.0)) {
        throw std::invalid_argument("patch JSON field \"mean_radius\" must be positive");
    }
    try {
        return PatchState{FourierBoundary(lam, std::move(a), std::move(b)), omega};
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(std::string("patch JSON fields \"cos\"/\"sin\": ") + e.what());
    }
}

PatchState read_patch_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open input file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument("malformed JSON in " + path + ": " + e.what());
    }
    return patch_from_json(j);
}

void write_patch_file(const std::string& path, const PatchState& p) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << patch_to_json(p).dump(2) << "\n";
}

nlohmann::json shape_report_to_json(const ShapeReport& r) {
    return nlohmann::json{{"area", r.area},
                          {"center", {r.center[0], r.center[1]}},
                          {"sym_diff_to_unit_disk", r.sym_diff_to_unit_disk},
                          {"radial_min", r.radial_min},
                          {"radial_max", r.radial_max},
                          {"classification", to_string(r.classification)},
                          {"classification_residual", r.classification_residual}};
}

nlohmann::json scan_report_to_json(const ScanReport& r) {
    nlohmann::json trials = nlohmann::json::array();
    for (const ScanTrial& t : r.trials) {
        trials.push_back({{"index", t.index},
                          {"omega", t.omega},
                          {"sym_diff_initial", t.sym_diff_initial},
                          {"converged", t.converged},
                          {"classification",
                           t.converged ? to_string(t.classification) : "inconclusive"},
                          {"fold", t.fold},
                          {"fold_leakage", t.fold_leakage},
                          {"residual", t.residual},
                          {"center_norm", t.center_norm},
                          {"iterations", t.iterations}});
    }
    return nlohmann::json{{"delta", r.delta},
                          {"seed", r.seed},
                          {"counts",
                           {{"disk", r.disks},
                            {"ellipse", r.ellipses},
                            {"other", r.others},
                            {"inconclusive", r.inconclusive}}},
                          {"trials", std::move(trials)}};
}

std::string file_digest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return "missing";
    std::uint64_t h = 1469598103934665603ull;
    char buf[4096];
    while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
        for (std::streamsize i = 0; i < in.gcount(); ++i) {
            h ^= static_cast<unsigned char>(buf[i]);
            h *= 1099511628211ull;
        }
        if (!in) break;
    }
    char out[17];
    std::snprintf(out, sizeof(out), "%016llx", static_cast<unsigned long long>(h));
    return out;
}

std::string utc_timestamp() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_manifest(const std::string& path, const RunManifest& m) {
    nlohmann::json j{{"command", m.command},
                     {"version", kToolVersion},
                     {"parameters", m.parameters},
                     {"started_at", m.started_at},
                     {"finished_at", m.finished_at},
                     {"inputs", m.inputs},
                     {"outputs", m.outputs}};
    if (m.seeded) j["seed"] = m.seed;
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open manifest file: " + path);
    out << j.dump(2) << "\n";
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace vstate
