#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "risfade/montecarlo.hpp"
#include "risfade/sysmodel.hpp"

namespace risfade {
namespace config {

/// Everything an op-curve run needs. Serialized as one JSON document:
///
///   {
///     "system": { "n_elements": 16, "d1": 80, ..., "links": {
///         "direct_u1": {"family": "nakagami", "m": 2}, "bs_u2": {...},
///         "bs_ris": {...}, "ris_u1": {...} } },
///     "sweep":  { "power_points_dbm": [0, 2, ...], "trials_per_point": 200000,
///                 "master_seed": 20230611, "scheme": "ris", "user": "u1", "workers": 0 },
///     "schemes": ["ris", "conventional"],
///     "output": "op_curve.csv"
///   }
///
/// Every key is optional and falls back to its default; unknown keys are
/// rejected. Link entries accept {"family": "nakagami", "m"},
/// {"family": "alpha_mu", "alpha", "mu"} or {"family": "kappa_mu", "kappa", "mu"};
/// their scale is always normalized to unit mean power.
struct RunConfig {
    sysmodel::SystemConfig system;
    montecarlo::SweepSpec sweep;
    std::vector<sysmodel::Scheme> schemes{sysmodel::Scheme::ris_noma};
    std::string output = "op_curve.csv";

    void validate() const;
};

nlohmann::json to_json(const RunConfig& cfg);
nlohmann::json link_to_json(const fading::FadingParams& p);

/// Parses and validates. Throws sysmodel::ConfigError naming the dotted field.
RunConfig from_json(const nlohmann::json& doc);

fading::FadingParams link_from_json(const nlohmann::json& doc, const std::string& path);

/// Reads a JSON file. Parse failures are reported as ConfigError with the
/// parser's line/column diagnostic; an unreadable file throws std::runtime_error.
nlohmann::json read_json_file(const std::string& path);

/// Applies "a.b.c=value" to doc. The value is parsed as JSON when possible
/// and taken as a string otherwise. Intermediate objects are created as needed;
/// validation of the resulting document happens in from_json.
void apply_override(nlohmann::json& doc, std::string_view assignment);

}  // namespace config
}  // namespace risfade
