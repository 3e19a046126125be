// Command-line front end: single points, sweeps, oracle audit, unit
// conversion and light-cone feature reports.

#include "lightcone/lightcone.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

using namespace lightcone;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitAudit = 3;
constexpr int kExitValidity = 4;

SweepConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    return parse_config(in);
}

void emit(const std::string& path, const std::function<void(std::ostream&)>& write) {
    if (path.empty() || path == "-") {
        write(std::cout);
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open output file '" + path + "'");
    write(out);
}

int cmd_point(double xi, double rho, double K, bool g2, double threshold) {
    const Point p = Point::from_xi(xi, rho, K);
    nlohmann::json out;
    if (p.on_boundary()) {
        out = nlohmann::json::array();
        out.push_back(to_json(evaluate_record(boundary_point(rho, K, false), Region::boundary_minus, g2, threshold)));
        out.push_back(to_json(evaluate_record(boundary_point(rho, K, true), Region::boundary_plus, g2, threshold)));
    } else {
        out = to_json(evaluate_record(p, p.region(), g2, threshold));
    }
    std::cout << out.dump(2) << '\n';
    return kExitOk;
}

int cmd_sweep(const std::string& config, const std::string& preset, const std::string& output,
              const std::string& format, bool strict) {
    SweepConfig cfg;
    if (!config.empty()) cfg = load_config(config);
    else if (preset == "fig2") cfg = fig2_preset();
    else if (preset == "fig3") cfg = fig3_preset();
    else throw ConfigError("unknown preset '" + preset + "' (expected fig2 or fig3)");
    if (!output.empty()) cfg.output_path = output;
    if (format == "csv") cfg.format = OutputFormat::csv;
    else if (format == "json") cfg.format = OutputFormat::json;
    else if (!format.empty()) throw ConfigError("format must be csv or json");

    const auto recs = run_sweep(cfg);
    emit(cfg.output_path, [&](std::ostream& os) {
        if (cfg.format == OutputFormat::csv) write_csv(os, recs);
        else write_json(os, recs);
    });
    const auto bad = std::count_if(recs.begin(), recs.end(), [](const SweepRecord& r) { return !r.validity_ok; });
    if (bad > 0) {
        std::cerr << bad << " of " << recs.size() << " records failed the validity gate\n";
        if (strict) return kExitValidity;
    }
    return kExitOk;
}

int cmd_oracle_check(const std::string& grid, const std::string& config, const std::string& json_path) {
    std::vector<Point> pts;
    if (!config.empty()) {
        const SweepConfig cfg = load_config(config);
        if (cfg.uses_time()) throw ConfigError("oracle-check configs must use an xi grid");
        const auto xis = cfg.xi_range ? cfg.xi_range->expand() : cfg.xi_values;
        for (double rho : cfg.rho_values) {
            for (double K : cfg.K_values) {
                for (double xi : xis) pts.push_back(Point::from_xi(xi, rho, K));
            }
        }
    } else if (grid == "default") {
        pts = default_audit_grid();
    } else {
        throw ConfigError("unknown grid '" + grid + "'");
    }
    const AuditReport rep = oracle_check(pts);
    write_audit_text(std::cout, rep);
    if (!json_path.empty()) emit(json_path, [&](std::ostream& os) { os << to_json(rep).dump(2) << '\n'; });
    return rep.passed() ? kExitOk : kExitAudit;
}

int cmd_units(double g_hz, double omega_hz) {
    const double K = units_to_K(g_hz, omega_hz);
    nlohmann::json out = {{"K", K}, {"K_over_K0", K / K0}};
    std::cout << out.dump(2) << '\n';
    return kExitOk;
}

int cmd_lightcone(double rho, double K, double step) {
    SweepConfig cfg;
    cfg.rho_values = {rho};
    cfg.K_values = {K};
    cfg.xi_range = Range{0.05, 2.0, step};
    auto recs = run_sweep(cfg);
    // Guarantee the boundary pair even when the grid skips xi = 1.
    if (std::none_of(recs.begin(), recs.end(), [](const auto& r) { return r.region == Region::boundary_minus; })) {
        recs.push_back(evaluate_record(boundary_point(rho, K, false), Region::boundary_minus));
        recs.push_back(evaluate_record(boundary_point(rho, K, true), Region::boundary_plus));
    }
    std::cout << to_json(detect_lightcone_feature(recs, rho, K)).dump(2) << '\n';
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Second-order dynamics of two qubits on an open transmission line"};
    app.require_subcommand(1);

    double xi = 0.0, rho = specfun::pi / 4.0, K = 0.15;
    bool g2 = false;
    double threshold = default_validity_threshold;
    auto* point = app.add_subcommand("point", "Evaluate one point and print its record as JSON");
    point->add_option("--xi", xi, "Dimensionless time v t / r")->required();
    point->add_option("--rho", rho, "Dimensionless distance Omega r / v")->capture_default_str();
    point->add_option("--K", K, "Dimensionless coupling")->capture_default_str();
    point->add_flag("--g2", g2, "Add the two-photon |G|^2 to rho33 (oracle, slow)");
    point->add_option("--threshold", threshold, "Validity threshold")->capture_default_str();

    std::string config, preset, output, format;
    bool strict = false;
    auto* sweep = app.add_subcommand("sweep", "Run a parameter sweep");
    auto* cfg_opt = sweep->add_option("--config", config, "Config file (key = value)");
    sweep->add_option("--preset", preset, "Built-in preset: fig2 or fig3")->excludes(cfg_opt);
    sweep->add_option("--output,-o", output, "Output file (default: config value or stdout)");
    sweep->add_option("--format", format, "csv or json");
    sweep->add_flag("--strict", strict, "Exit 4 if any record fails the validity gate");

    std::string grid = "default", audit_config, json_path;
    auto* audit = app.add_subcommand("oracle-check", "Compare closed forms with the quadrature oracle");
    auto* grid_opt = audit->add_option("--grid", grid, "Named point grid")->capture_default_str();
    audit->add_option("--config", audit_config, "Config file with an xi grid")->excludes(grid_opt);
    audit->add_option("--json", json_path, "Also write the report as JSON");

    double g_hz = 0.0, omega_hz = 0.0;
    auto* units = app.add_subcommand("units", "Convert g/2pi and Omega/2pi in Hz to K");
    units->add_option("--g-hz", g_hz, "Coupling g/2pi in Hz")->required();
    units->add_option("--omega-hz", omega_hz, "Qubit frequency Omega/2pi in Hz")->required();

    double lc_rho = specfun::pi / 4.0, lc_K = 0.15, lc_step = 0.005;
    auto* lc = app.add_subcommand("lightcone", "Report the concurrence jump across xi = 1");
    lc->add_option("--rho", lc_rho, "Dimensionless distance")->capture_default_str();
    lc->add_option("--K", lc_K, "Dimensionless coupling")->capture_default_str();
    lc->add_option("--xi-step", lc_step, "Grid step on [0.05, 2]")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (*point) return cmd_point(xi, rho, K, g2, threshold);
        if (*sweep) {
            if (config.empty() && preset.empty()) throw ConfigError("sweep needs --config or --preset");
            return cmd_sweep(config, preset, output, format, strict);
        }
        if (*audit) return cmd_oracle_check(grid, audit_config, json_path);
        if (*units) return cmd_units(g_hz, omega_hz);
        if (*lc) return cmd_lightcone(lc_rho, lc_K, lc_step);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const DomainError& e) {
        std::cerr << "domain error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const ConvergenceError& e) {
        std::cerr << "oracle did not converge: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return kExitOk;
}
