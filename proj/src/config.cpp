#include "risfade/config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace risfade {
namespace config {

using nlohmann::json;
using sysmodel::ConfigError;

namespace {

void reject_unknown(const json& obj, const std::string& path, const std::set<std::string>& allowed) {
    if (!obj.is_object()) throw ConfigError(path.empty() ? "<root>" : path, "must be a JSON object");
    for (const auto& [key, _] : obj.items()) {
        if (!allowed.contains(key)) {
            throw ConfigError(path.empty() ? key : path + "." + key, "unknown key");
        }
    }
}

double get_number(const json& obj, const std::string& key, const std::string& path, double fallback) {
    const auto it = obj.find(key);
    if (it == obj.end()) return fallback;
    if (it->is_string()) {
        const auto s = it->get<std::string>();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
    }
    if (!it->is_number()) throw ConfigError(path + "." + key, "must be a number");
    return it->get<double>();
}

std::uint64_t get_unsigned(const json& obj, const std::string& key, const std::string& path,
                           std::uint64_t fallback) {
    const auto it = obj.find(key);
    if (it == obj.end()) return fallback;
    if (it->is_number_unsigned()) return it->get<std::uint64_t>();
    if (it->is_number_integer()) throw ConfigError(path + "." + key, "must be nonnegative");
    if (it->is_number_float()) {
        const double v = it->get<double>();
        if (v >= 0.0 && v == std::floor(v) && v < 1.8e19) return static_cast<std::uint64_t>(v);
    }
    throw ConfigError(path + "." + key, "must be a nonnegative integer");
}

std::string get_string(const json& obj, const std::string& key, const std::string& path,
                       const std::string& fallback) {
    const auto it = obj.find(key);
    if (it == obj.end()) return fallback;
    if (!it->is_string()) throw ConfigError(path + "." + key, "must be a string");
    return it->get<std::string>();
}

json number_json(double v) {
    if (v == -std::numeric_limits<double>::infinity()) return "-inf";
    return v;
}

sysmodel::SystemConfig system_from_json(const json& doc) {
    static const std::set<std::string> keys = {
        "n_elements", "d1",        "d_ris",     "d_r1",      "d2",        "eta_n",
        "eta_l",      "pl_ref_db", "ref_distance", "alpha1_sq", "alpha2_sq", "r1_target",
        "r2_target",  "noise_dbm", "tx_power_dbm", "reflection_amplitude", "links"};
    const std::string path = "system";
    reject_unknown(doc, path, keys);
    sysmodel::SystemConfig s;
    const auto n = get_unsigned(doc, "n_elements", path, static_cast<std::uint64_t>(s.n_elements));
    if (n < 1 || n > 100000) throw ConfigError("system.n_elements", "must lie in [1, 100000]");
    s.n_elements = static_cast<int>(n);
    s.d1 = get_number(doc, "d1", path, s.d1);
    s.d_ris = get_number(doc, "d_ris", path, s.d_ris);
    s.d_r1 = get_number(doc, "d_r1", path, s.d_r1);
    s.d2 = get_number(doc, "d2", path, s.d2);
    s.eta_n = get_number(doc, "eta_n", path, s.eta_n);
    s.eta_l = get_number(doc, "eta_l", path, s.eta_l);
    s.pl_ref_db = get_number(doc, "pl_ref_db", path, s.pl_ref_db);
    s.ref_distance = get_number(doc, "ref_distance", path, s.ref_distance);
    s.alpha1_sq = get_number(doc, "alpha1_sq", path, s.alpha1_sq);
    s.alpha2_sq = get_number(doc, "alpha2_sq", path, s.alpha2_sq);
    s.r1_target = get_number(doc, "r1_target", path, s.r1_target);
    s.r2_target = get_number(doc, "r2_target", path, s.r2_target);
    s.noise_dbm = get_number(doc, "noise_dbm", path, s.noise_dbm);
    s.tx_power_dbm = get_number(doc, "tx_power_dbm", path, s.tx_power_dbm);
    s.reflection_amplitude = get_number(doc, "reflection_amplitude", path, s.reflection_amplitude);
    if (const auto it = doc.find("links"); it != doc.end()) {
        reject_unknown(*it, "system.links", {"direct_u1", "bs_u2", "bs_ris", "ris_u1"});
        const auto link = [&](const char* name, fading::FadingParams& target) {
            if (const auto l = it->find(name); l != it->end()) {
                target = link_from_json(*l, std::string("system.links.") + name);
            }
        };
        link("direct_u1", s.links.direct_u1);
        link("bs_u2", s.links.bs_u2);
        link("bs_ris", s.links.bs_ris);
        link("ris_u1", s.links.ris_u1);
    }
    return s;
}

montecarlo::SweepSpec sweep_from_json(const json& doc) {
    const std::string path = "sweep";
    reject_unknown(doc, path,
                   {"power_points_dbm", "trials_per_point", "master_seed", "scheme", "user", "workers"});
    montecarlo::SweepSpec s;
    if (const auto it = doc.find("power_points_dbm"); it != doc.end()) {
        if (!it->is_array()) throw ConfigError("sweep.power_points_dbm", "must be an array of numbers");
        s.power_points_dbm.clear();
        for (const auto& v : *it) {
            if (!v.is_number()) throw ConfigError("sweep.power_points_dbm", "must be an array of numbers");
            s.power_points_dbm.push_back(v.get<double>());
        }
    }
    s.trials_per_point = get_unsigned(doc, "trials_per_point", path, s.trials_per_point);
    s.master_seed = get_unsigned(doc, "master_seed", path, s.master_seed);
    s.scheme = montecarlo::parse_scheme(get_string(doc, "scheme", path, "ris"));
    s.user = montecarlo::parse_user(get_string(doc, "user", path, "u1"));
    s.workers = static_cast<unsigned>(get_unsigned(doc, "workers", path, 0));
    return s;
}

}  // namespace

void RunConfig::validate() const {
    system.validate();
    sweep.validate();
    if (schemes.empty()) throw ConfigError("schemes", "must name at least one scheme");
    if (output.empty()) throw ConfigError("output", "must be a non-empty path");
}

json link_to_json(const fading::FadingParams& p) {
    if (const auto* n = std::get_if<fading::NakagamiParams>(&p)) return {{"family", "nakagami"}, {"m", n->m}};
    if (const auto* a = std::get_if<fading::AlphaMuParams>(&p)) {
        return {{"family", "alpha_mu"}, {"alpha", a->alpha}, {"mu", a->mu}};
    }
    const auto& k = std::get<fading::KappaMuParams>(p);
    return {{"family", "kappa_mu"}, {"kappa", k.kappa}, {"mu", k.mu}};
}

fading::FadingParams link_from_json(const json& doc, const std::string& path) {
    if (!doc.is_object()) throw ConfigError(path, "must be a JSON object");
    const std::string family = get_string(doc, "family", path, "");
    fading::FadingParams out;
    if (family == "nakagami") {
        reject_unknown(doc, path, {"family", "m"});
        out = fading::NakagamiParams{get_number(doc, "m", path, 1.0), 1.0};
    } else if (family == "alpha_mu") {
        reject_unknown(doc, path, {"family", "alpha", "mu"});
        fading::AlphaMuParams a{get_number(doc, "alpha", path, 2.0), get_number(doc, "mu", path, 1.0), 1.0};
        out = a;
    } else if (family == "kappa_mu") {
        reject_unknown(doc, path, {"family", "kappa", "mu"});
        out = fading::KappaMuParams{get_number(doc, "kappa", path, 0.0), get_number(doc, "mu", path, 1.0), 1.0};
    } else {
        throw ConfigError(path + ".family", "must be one of nakagami, alpha_mu, kappa_mu");
    }
    try {
        fading::validate(out);
    } catch (const std::domain_error& e) {
        throw ConfigError(path, e.what());
    }
    return fading::with_unit_mean_power(out);
}

json to_json(const RunConfig& cfg) {
    const auto& s = cfg.system;
    json system = {
        {"n_elements", s.n_elements},
        {"d1", s.d1},
        {"d_ris", s.d_ris},
        {"d_r1", s.d_r1},
        {"d2", s.d2},
        {"eta_n", s.eta_n},
        {"eta_l", s.eta_l},
        {"pl_ref_db", s.pl_ref_db},
        {"ref_distance", s.ref_distance},
        {"alpha1_sq", s.alpha1_sq},
        {"alpha2_sq", s.alpha2_sq},
        {"r1_target", s.r1_target},
        {"r2_target", s.r2_target},
        {"noise_dbm", number_json(s.noise_dbm)},
        {"tx_power_dbm", s.tx_power_dbm},
        {"reflection_amplitude", s.reflection_amplitude},
        {"links",
         {{"direct_u1", link_to_json(s.links.direct_u1)},
          {"bs_u2", link_to_json(s.links.bs_u2)},
          {"bs_ris", link_to_json(s.links.bs_ris)},
          {"ris_u1", link_to_json(s.links.ris_u1)}}},
    };
    json sweep = {
        {"power_points_dbm", cfg.sweep.power_points_dbm},
        {"trials_per_point", cfg.sweep.trials_per_point},
        {"master_seed", cfg.sweep.master_seed},
        {"scheme", montecarlo::to_string(cfg.sweep.scheme)},
        {"user", montecarlo::to_string(cfg.sweep.user)},
        {"workers", cfg.sweep.workers},
    };
    json schemes = json::array();
    for (auto sc : cfg.schemes) schemes.push_back(montecarlo::to_string(sc));
    return {{"system", system}, {"sweep", sweep}, {"schemes", schemes}, {"output", cfg.output}};
}

RunConfig from_json(const json& doc) {
    reject_unknown(doc, "", {"system", "sweep", "schemes", "output"});
    RunConfig cfg;
    if (const auto it = doc.find("system"); it != doc.end()) cfg.system = system_from_json(*it);
    if (const auto it = doc.find("sweep"); it != doc.end()) cfg.sweep = sweep_from_json(*it);
    if (const auto it = doc.find("schemes"); it != doc.end()) {
        if (!it->is_array()) throw ConfigError("schemes", "must be an array of scheme names");
        cfg.schemes.clear();
        for (const auto& v : *it) {
            if (!v.is_string()) throw ConfigError("schemes", "must be an array of scheme names");
            try {
                cfg.schemes.push_back(montecarlo::parse_scheme(v.get<std::string>()));
            } catch (const ConfigError& e) {
                throw ConfigError("schemes", e.what());
            }
        }
    }
    cfg.output = get_string(doc, "output", "", cfg.output);
    cfg.validate();
    return cfg;
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("<file " + path + ">", e.what());
    }
}

void apply_override(json& doc, std::string_view assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string_view::npos || eq == 0) {
        throw ConfigError(std::string(assignment), "override must look like dotted.path=value");
    }
    const std::string path(assignment.substr(0, eq));
    const std::string text(assignment.substr(eq + 1));
    json value;
    try {
        value = json::parse(text);
    } catch (const json::parse_error&) {
        value = text;
    }
    json* node = &doc;
    std::size_t start = 0;
    for (;;) {
        const auto dot = path.find('.', start);
        const std::string key = path.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
        if (key.empty()) throw ConfigError(path, "empty path component");
        if (!node->is_object()) {
            if (!node->is_null()) throw ConfigError(path, "cannot descend into a non-object value");
            *node = json::object();
        }
        node = &(*node)[key];
        if (dot == std::string::npos) break;
        start = dot + 1;
    }
    *node = value;
}

}  // namespace config
}  // namespace risfade
