#pragma once

#include <cstdint>
#include <map>
#include <string>

#include <json.hpp>

#include "vstate/fourier_boundary.hpp"
#include "vstate/geometry.hpp"
#include "vstate/solver.hpp"

namespace vstate {

inline constexpr const char* kToolVersion = "0.1.0";

/// Canonical patch file format:
/// {"omega": w, "mean_radius": lam, "cos": [a_1..a_N], "sin": [b_1..b_N]}
nlohmann::json patch_to_json(const PatchState& p);
PatchState patch_from_json(const nlohmann::json& j);

PatchState read_patch_file(const std::string& path);
void write_patch_file(const std::string& path, const PatchState& p);

nlohmann::json shape_report_to_json(const ShapeReport& r);
nlohmann::json scan_report_to_json(const ScanReport& r);

/// FNV-1a 64-bit content digest, hex encoded.
std::string file_digest(const std::string& path);

std::string utc_timestamp();

/// Reproducibility sidecar written next to every output artifact.
struct RunManifest {
    std::string command;
    nlohmann::json parameters;
    std::uint64_t seed = 0;
    bool seeded = false;
    std::string started_at;
    std::string finished_at;
    std::map<std::string, std::string> inputs;   // path -> digest
    std::map<std::string, std::string> outputs;  // path -> digest
};

void write_manifest(const std::string& path, const RunManifest& m);

/// Doubles formatted with up to 17 significant digits (lossless round trip).
std::string format_double(double v);

}  // namespace vstate
