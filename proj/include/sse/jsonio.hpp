#pragma once
// JSON/CSV plumbing for the command-line driver: canonical family and
// spectrum serialization, atomic file writes, and the config fingerprint
// stamped on every report.

#include <cstdint>
#include <string>

#include "json.hpp"
#include "sse/ensemble.hpp"
#include "sse/potentials.hpp"
#include "sse/scattering.hpp"

namespace sse {

inline constexpr const char* kToolVersion = "0.1.0";

// families serialize as kind + constructor arguments; derived curve data is
// recomputed on load so a file can never carry an inconsistent family
nlohmann::json family_to_json(const PotentialFamily& f);
PotentialFamily family_from_json(const nlohmann::json& j);

// double columns only; extended-precision columns are a runtime concern and
// are rebuilt by wkb_spectrum when needed
nlohmann::json spectrum_to_json(const SpectralData& sd);
SpectralData spectrum_from_json(const nlohmann::json& j);

std::uint64_t fnv1a64(const std::string& bytes);

// {tool_version, config_hash} from the canonical dump of the config document
nlohmann::json report_header(const nlohmann::json& config);

std::string csv_number(double v);  // round-trip formatting, stable bytes

// header: x, t2..tM, re_psi, im_psi, abs_psi, formulation, precision_bits,
// residual; rows in grid order (x outer, time tuple inner)
std::string field_grid_csv(const FieldGrid& g);

// the same rows with leading window coordinates X, T
std::string window_grid_csv(const FieldGrid& g, const std::vector<double>& X,
                            const std::vector<double>& T);

// write to <path>.tmp in full, then rename over path
void write_text_atomic(const std::string& path, const std::string& content);

}  // namespace sse
