// risfade: outage-probability sweeps, distribution tables and the
// special-case identity suite.
//
// Exit codes: 0 success, 1 identity-suite failure, 2 bad configuration,
// 3 I/O error.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "risfade/config.hpp"
#include "risfade/dist_curves.hpp"
#include "risfade/montecarlo.hpp"
#include "risfade/validation.hpp"

namespace {

using namespace risfade;
using nlohmann::json;

constexpr int kExitSuiteFailure = 1;
constexpr int kExitBadConfig = 2;
constexpr int kExitIo = 3;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CommonOptions {
    std::string config_path;
    std::string out_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> trials;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
    cmd->add_option("--config", opts.config_path, "JSON configuration file");
    cmd->add_option("--out", opts.out_path, "output path");
    cmd->add_option("--seed", opts.seed, "master seed (u64)");
    cmd->add_option("--trials", opts.trials, "trials per point / samples per check");
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    return out;
}

json load_config_doc(const std::string& path) {
    if (path.empty()) return json::object();
    try {
        return config::read_json_file(path);
    } catch (const sysmodel::ConfigError&) {
        throw;
    } catch (const std::runtime_error& e) {
        throw IoError(e.what());
    }
}

// --- op-curve ----------------------------------------------------------------

struct OpCurveOptions {
    CommonOptions common;
    std::vector<std::string> overrides;
    std::string schemes;
    std::string channel;
    std::optional<double> m, alpha, kappa, mu;
    std::optional<unsigned> workers;
    std::string user;
    std::string dump_config;
};

int run_op_curve(const OpCurveOptions& o) {
    json doc = load_config_doc(o.common.config_path);
    for (const auto& ov : o.overrides) config::apply_override(doc, ov);
    if (!o.common.out_path.empty()) doc["output"] = o.common.out_path;
    if (o.common.seed) config::apply_override(doc, "sweep.master_seed=" + std::to_string(*o.common.seed));
    if (o.common.trials) config::apply_override(doc, "sweep.trials_per_point=" + std::to_string(*o.common.trials));
    if (o.workers) config::apply_override(doc, "sweep.workers=" + std::to_string(*o.workers));
    if (!o.user.empty()) doc["sweep"]["user"] = o.user;
    if (!o.schemes.empty()) {
        json list = json::array();
        std::stringstream ss(o.schemes);
        for (std::string item; std::getline(ss, item, ',');) list.push_back(item);
        doc["schemes"] = list;
    }
    if (!o.channel.empty()) {
        json link = {{"family", o.channel}};
        if (o.channel == "nakagami") {
            if (o.m) link["m"] = *o.m;
        } else {
            if (o.alpha) link["alpha"] = *o.alpha;
            if (o.kappa) link["kappa"] = *o.kappa;
            if (o.mu) link["mu"] = *o.mu;
        }
        doc["system"]["links"]["direct_u1"] = link;
    } else if (o.m || o.alpha || o.kappa || o.mu) {
        throw sysmodel::ConfigError("--channel", "shape flags require --channel");
    }

    const config::RunConfig cfg = config::from_json(doc);
    if (!o.dump_config.empty()) {
        auto out = open_output(o.dump_config);
        out << config::to_json(cfg).dump(2) << '\n';
    }

    auto out = open_output(cfg.output);
    out << "scheme,channel,power_dbm,op,ci_low,ci_high,trials,seed\n";
    out << std::setprecision(17);
    const std::string channel = fading::describe(cfg.system.links.direct_u1);
    std::cout << "seed " << cfg.sweep.master_seed << '\n';
    for (auto scheme : cfg.schemes) {
        montecarlo::SweepSpec spec = cfg.sweep;
        spec.scheme = scheme;
        for (const auto& r : montecarlo::run_sweep(cfg.system, spec)) {
            out << montecarlo::to_string(scheme) << ',' << channel << ',' << r.power_dbm << ',' << r.op_estimate
                << ',' << r.ci_low << ',' << r.ci_high << ',' << r.trials << ',' << cfg.sweep.master_seed << '\n';
        }
    }
    out.flush();
    if (!out) throw IoError("write failed for '" + cfg.output + "'");
    std::cout << cfg.output << '\n';
    return 0;
}

// --- dist-curves ------------------------------------------------------------

struct DistOptions {
    CommonOptions common;
    std::string family;
    std::string preset;
    std::optional<double> m, alpha, kappa, mu, scale;
    std::size_t points = 512;
};

fading::FadingParams dist_params(const DistOptions& o) {
    json link = json::object();
    if (!o.common.config_path.empty()) link = load_config_doc(o.common.config_path);
    if (!o.preset.empty()) {
        try {
            const auto family = fading::parse_family(o.family.empty() ? "alpha_mu" : o.family);
            return fading::preset(fading::parse_preset_name(o.preset), family).params;
        } catch (const fading::UnknownPreset& e) {
            throw sysmodel::ConfigError("--preset", e.what());
        }
    }
    if (!o.family.empty()) link["family"] = o.family;
    if (o.m) link["m"] = *o.m;
    if (o.alpha) link["alpha"] = *o.alpha;
    if (o.kappa) link["kappa"] = *o.kappa;
    if (o.mu) link["mu"] = *o.mu;
    fading::FadingParams p = config::link_from_json(link, "distribution");
    // link_from_json normalizes to unit mean power; an explicit scale replaces it
    if (o.scale) {
        if (!(*o.scale > 0.0)) throw sysmodel::ConfigError("--scale", "must be > 0");
        if (auto* n = std::get_if<fading::NakagamiParams>(&p)) n->omega = *o.scale;
        if (auto* a = std::get_if<fading::AlphaMuParams>(&p)) a->omega = *o.scale;
        if (auto* k = std::get_if<fading::KappaMuParams>(&p)) k->mean_power = *o.scale;
    }
    return p;
}

int run_dist_curves(const DistOptions& o) {
    const auto params = dist_params(o);
    const auto curve = dist::dist_curve(params, o.points);
    const std::string path = o.common.out_path.empty() ? "dist_curve.csv" : o.common.out_path;
    auto out = open_output(path);
    dist::write_csv(out, curve);
    out.flush();
    if (!out) throw IoError("write failed for '" + path + "'");
    std::cout << fading::describe(params) << " ("
              << (dist::natural_domain(params) == dist::Domain::power ? "power" : "envelope") << " domain)\n"
              << path << '\n';
    return 0;
}

// --- validate --------------------------------------------------------------

int run_validate(const CommonOptions& o) {
    validation::SuiteOptions opts;
    if (o.seed) opts.seed = *o.seed;
    if (o.trials) {
        if (*o.trials < 100) throw sysmodel::ConfigError("--trials", "need at least 100 samples");
        opts.ks_samples = static_cast<std::size_t>(*o.trials);
    }
    const auto checks = validation::run_identity_suite({}, opts);
    std::ostringstream report;
    const bool ok = validation::print_report(report, checks);
    std::cout << report.str();
    if (!o.out_path.empty()) {
        auto out = open_output(o.out_path);
        out << report.str();
        if (!out) throw IoError("write failed for '" + o.out_path + "'");
    }
    return ok ? 0 : kExitSuiteFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Generalized fading channels and RIS-aided NOMA outage simulation"};
    app.require_subcommand(1);

    OpCurveOptions op;
    auto* op_cmd = app.add_subcommand("op-curve", "Monte Carlo outage probability versus transmit power (CSV)");
    add_common(op_cmd, op.common);
    op_cmd->add_option("--set", op.overrides, "override a config field, e.g. --set system.d1=60")->take_all();
    op_cmd->add_option("--schemes", op.schemes, "comma-separated list: ris,conventional");
    op_cmd->add_option("--channel", op.channel, "direct BS->U1 fading family: nakagami | alpha_mu | kappa_mu");
    op_cmd->add_option("--m", op.m, "Nakagami m");
    op_cmd->add_option("--alpha", op.alpha, "alpha-mu alpha");
    op_cmd->add_option("--kappa", op.kappa, "kappa-mu kappa");
    op_cmd->add_option("--mu", op.mu, "alpha-mu / kappa-mu mu");
    op_cmd->add_option("--user", op.user, "u1 | u2");
    op_cmd->add_option("--workers", op.workers, "worker threads (0 = hardware concurrency)");
    op_cmd->add_option("--dump-config", op.dump_config, "write the effective configuration as JSON");

    DistOptions dist;
    auto* dist_cmd = app.add_subcommand("dist-curves", "Tabulate pdf and cdf of a fading law (CSV x,pdf,cdf)");
    add_common(dist_cmd, dist.common);
    dist_cmd->add_option("--family", dist.family, "nakagami | alpha_mu | kappa_mu");
    dist_cmd->add_option("--preset", dist.preset, "exponential | weibull | nakagami_m | rayleigh | one_sided_gaussian | rice");
    dist_cmd->add_option("--m", dist.m, "Nakagami m");
    dist_cmd->add_option("--alpha", dist.alpha, "alpha-mu alpha");
    dist_cmd->add_option("--kappa", dist.kappa, "kappa-mu kappa");
    dist_cmd->add_option("--mu", dist.mu, "alpha-mu / kappa-mu mu");
    dist_cmd->add_option("--scale", dist.scale, "omega (Nakagami, alpha-mu) or mean power (kappa-mu); default unit mean power");
    dist_cmd->add_option("--points", dist.points, "grid size")->check(CLI::Range(2, 1'000'000));

    CommonOptions val;
    auto* val_cmd = app.add_subcommand("validate", "Run the special-case identity suite");
    add_common(val_cmd, val);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitBadConfig;
    }

    try {
        if (*op_cmd) return run_op_curve(op);
        if (*dist_cmd) return run_dist_curves(dist);
        if (*val_cmd) return run_validate(val);
    } catch (const sysmodel::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitBadConfig;
    } catch (const IoError& e) {
        std::cerr << "I/O error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::domain_error& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitBadConfig;
    }
    return kExitBadConfig;
}
