#pragma once
// Parameter sweeps, output writers, light-cone feature detection and the
// closed-form vs oracle audit.

#include "lightcone/amplitudes.hpp"
#include "lightcone/errors.hpp"
#include "lightcone/oracle.hpp"
#include "lightcone/parallel.hpp"
#include "lightcone/state.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <istream>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace lightcone {

// ---------------------------------------------------------------- config

struct Range {
    double min = 0.0;
    double max = 0.0;
    double step = 0.0;

    std::vector<double> expand() const {
        const double span = (max - min) / step;
        const auto n = static_cast<long>(std::floor(span + 1e-9));
        std::vector<double> out;
        out.reserve(static_cast<std::size_t>(n + 1));
        for (long i = 0; i <= n; ++i) out.push_back(min + static_cast<double>(i) * step);
        return out;
    }
};

enum class OutputFormat { csv, json };

struct SweepConfig {
    std::vector<double> rho_values;
    std::vector<double> K_values;
    std::optional<Range> xi_range;
    std::vector<double> xi_values; // explicit alternative to xi_range
    std::optional<Range> time_grid; // omega_t grid, alternative to xi
    bool include_g2 = false;
    double validity_threshold = default_validity_threshold;
    std::string output_path;
    OutputFormat format = OutputFormat::csv;

    bool uses_time() const noexcept { return time_grid.has_value(); }

    void validate() const {
        if (rho_values.empty()) throw ConfigError("config: rho_values is empty");
        if (K_values.empty()) throw ConfigError("config: K_values is empty");
        for (double r : rho_values) {
            if (!std::isfinite(r) || !(r > 0.0)) throw ConfigError("config: rho values must be > 0");
        }
        for (double k : K_values) {
            if (!std::isfinite(k) || !(k > 0.0)) throw ConfigError("config: K values must be > 0");
        }
        const int grids = (xi_range ? 1 : 0) + (xi_values.empty() ? 0 : 1) + (time_grid ? 1 : 0);
        if (grids != 1) throw ConfigError("config: give exactly one of xi range, xi_values, omega_t range");
        auto check_range = [](const Range& r, const char* what) {
            if (!std::isfinite(r.min) || !std::isfinite(r.max) || !std::isfinite(r.step)) {
                throw ConfigError(std::string("config: non-finite ") + what + " range");
            }
            if (r.min < 0.0) throw ConfigError(std::string("config: ") + what + " min must be >= 0");
            if (!(r.step > 0.0)) throw ConfigError(std::string("config: ") + what + " step must be > 0");
            if (r.max < r.min) throw ConfigError(std::string("config: ") + what + " max < min");
        };
        if (xi_range) check_range(*xi_range, "xi");
        if (time_grid) check_range(*time_grid, "omega_t");
        for (std::size_t i = 0; i < xi_values.size(); ++i) {
            if (!std::isfinite(xi_values[i]) || xi_values[i] < 0.0) {
                throw ConfigError("config: xi values must be >= 0");
            }
            if (i > 0 && !(xi_values[i] > xi_values[i - 1])) {
                throw ConfigError("config: xi_values must be strictly increasing");
            }
        }
        if (!(validity_threshold > 0.0 && validity_threshold < 1.0)) {
            throw ConfigError("config: validity_threshold must lie in (0, 1)");
        }
    }
};

namespace sweep_detail {

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(trim(cur));
    return out;
}

inline double parse_factor(const std::string& f) {
    if (f == "pi") return specfun::pi;
    if (f == "K0") return K0;
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(f, &used);
    } catch (const std::exception&) {
        throw ConfigError("config: cannot parse number '" + f + "'");
    }
    if (used != f.size()) throw ConfigError("config: cannot parse number '" + f + "'");
    return v;
}

} // namespace sweep_detail

/// Parses a scalar such as `0.15`, `pi/4`, `2*pi/3`, `1000*K0`.
inline double parse_value(const std::string& token) {
    using namespace sweep_detail;
    const std::string t = trim(token);
    if (t.empty()) throw ConfigError("config: empty value");
    const auto parts = split(t, '/');
    if (parts.size() > 2) throw ConfigError("config: at most one '/' in '" + t + "'");
    double num = 1.0;
    for (const auto& f : split(parts[0], '*')) num *= parse_factor(f);
    if (parts.size() == 2) {
        const double den = parse_factor(parts[1]);
        if (den == 0.0) throw ConfigError("config: division by zero in '" + t + "'");
        num /= den;
    }
    return num;
}

inline std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    for (const auto& item : sweep_detail::split(s, ',')) {
        if (!item.empty()) out.push_back(parse_value(item));
    }
    return out;
}

inline bool parse_bool(const std::string& s) {
    const std::string t = sweep_detail::trim(s);
    if (t == "true" || t == "1" || t == "yes") return true;
    if (t == "false" || t == "0" || t == "no") return false;
    throw ConfigError("config: expected a boolean, got '" + t + "'");
}

/// Reads `key = value` lines; `#` starts a comment. See samples/ for the schema.
inline SweepConfig parse_config(std::istream& in) {
    using sweep_detail::trim;
    SweepConfig cfg;
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        if (kv.count(key)) throw ConfigError("config: duplicate key '" + key + "'");
        kv[key] = trim(line.substr(eq + 1));
    }

    std::optional<double> xmin, xmax, xstep, tmin, tmax, tstep;
    for (const auto& [key, val] : kv) {
        if (key == "rho_values") cfg.rho_values = parse_list(val);
        else if (key == "K_values") cfg.K_values = parse_list(val);
        else if (key == "xi_values") cfg.xi_values = parse_list(val);
        else if (key == "xi_min") xmin = parse_value(val);
        else if (key == "xi_max") xmax = parse_value(val);
        else if (key == "xi_step") xstep = parse_value(val);
        else if (key == "omega_t_min") tmin = parse_value(val);
        else if (key == "omega_t_max") tmax = parse_value(val);
        else if (key == "omega_t_step") tstep = parse_value(val);
        else if (key == "include_g2") cfg.include_g2 = parse_bool(val);
        else if (key == "validity_threshold") cfg.validity_threshold = parse_value(val);
        else if (key == "output_path") cfg.output_path = val;
        else if (key == "format") {
            if (val == "csv") cfg.format = OutputFormat::csv;
            else if (val == "json") cfg.format = OutputFormat::json;
            else throw ConfigError("config: format must be csv or json");
        } else {
            throw ConfigError("config: unknown key '" + key + "'");
        }
    }
    auto take_range = [](auto& a, auto& b, auto& c, const char* what) -> std::optional<Range> {
        const int n = (a ? 1 : 0) + (b ? 1 : 0) + (c ? 1 : 0);
        if (n == 0) return std::nullopt;
        if (n != 3) throw ConfigError(std::string("config: ") + what + " range needs min, max and step");
        return Range{*a, *b, *c};
    };
    cfg.xi_range = take_range(xmin, xmax, xstep, "xi");
    cfg.time_grid = take_range(tmin, tmax, tstep, "omega_t");
    cfg.validate();
    return cfg;
}

inline SweepConfig fig2_preset() {
    SweepConfig c;
    c.rho_values = {specfun::pi / 4.0};
    c.K_values = {K0, 10.0 * K0, 100.0 * K0, 1000.0 * K0};
    c.xi_range = Range{0.05, 2.0, 0.005};
    return c;
}

inline SweepConfig fig3_preset() {
    SweepConfig c;
    c.rho_values = {specfun::pi / 6.0, specfun::pi / 4.0};
    c.K_values = {0.15};
    c.time_grid = Range{0.0, 2.0, 0.002};
    return c;
}

// ---------------------------------------------------------------- records

struct SweepRecord {
    double xi = 0.0, rho = 0.0, K = 0.0, omega_t = 0.0;
    double re_X = 0.0, im_X = 0.0, uA2 = 0.0, vB2 = 0.0, abs_rho14 = 0.0, reA = 0.0;
    double concurrence = 0.0, p_B = 0.0;
    Branch branch = Branch::none;
    Region region = Region::I;
    bool validity_ok = true;
    bool aborted = false; // state or |G|^2 could not be built; observables are NaN
    double normalized_trace = 1.0;
};

inline constexpr double boundary_snap = 1e-9;

/// One record at a point off the light cone.
inline SweepRecord evaluate_record(const Point& p, Region region, bool include_g2 = false,
                                   double threshold = default_validity_threshold) {
    SweepRecord r;
    r.xi = p.xi();
    r.rho = p.rho();
    r.K = p.K();
    r.omega_t = p.omega_t();
    r.region = region;
    const AmplitudeSet a = amplitude_set(p);
    r.re_X = a.X.real();
    r.im_X = a.X.imag();
    r.uA2 = a.uA2;
    r.vB2 = a.vB2;
    r.abs_rho14 = std::abs(a.rho14);
    r.reA = a.reA;
    auto abort_row = [&r] {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        r.concurrence = nan;
        r.p_B = nan;
        r.normalized_trace = nan;
        r.branch = Branch::none;
        r.validity_ok = false;
        r.aborted = true;
    };
    try {
        // The |G|^2 oracle cannot resolve points hugging the light cone.
        const double g2 = include_g2 ? two_photon_g_oracle(p).value : 0.0;
        const XStateDensityMatrix m = build_state(a, g2);
        const ConcurrenceResult c = concurrence_detail(m);
        r.concurrence = c.value;
        r.branch = c.branch;
        r.p_B = excitation_probability(m);
        r.normalized_trace = m.normalized_trace();
        r.validity_ok = validity(a, threshold).ok;
    } catch (const ValidityError&) {
        abort_row();
    } catch (const ConvergenceError&) {
        abort_row();
    } catch (const BoundaryError&) {
        abort_row();
    }
    return r;
}

namespace sweep_detail {

struct Task {
    Point p;
    Region region;
};

inline void push_grid_point(std::vector<Task>& tasks, const Point& p) {
    if (std::abs(p.xi() - 1.0) <= boundary_snap) {
        tasks.push_back({boundary_point(p.rho(), p.K(), false), Region::boundary_minus});
        tasks.push_back({boundary_point(p.rho(), p.K(), true), Region::boundary_plus});
    } else {
        tasks.push_back({p, p.region()});
    }
}

inline std::vector<Task> plan(const SweepConfig& cfg) {
    std::vector<Task> tasks;
    std::vector<double> grid;
    if (cfg.xi_range) grid = cfg.xi_range->expand();
    else if (cfg.time_grid) grid = cfg.time_grid->expand();
    else grid = cfg.xi_values;
    for (double rho : cfg.rho_values) {
        for (double K : cfg.K_values) {
            for (double g : grid) {
                push_grid_point(tasks, cfg.uses_time() ? Point::from_time(g, rho, K)
                                                       : Point::from_xi(g, rho, K));
            }
        }
    }
    return tasks;
}

} // namespace sweep_detail

/// Records in the order rho (outer), K, grid (inner). Points within 1e-9 of
/// xi = 1 become the pair 1 -/+ 1e-6.
inline std::vector<SweepRecord> run_sweep(const SweepConfig& cfg, unsigned threads = 0) {
    cfg.validate();
    const auto tasks = sweep_detail::plan(cfg);
    std::vector<SweepRecord> out(tasks.size());
    parallel_for(
        tasks.size(),
        [&](std::size_t i) {
            out[i] = evaluate_record(tasks[i].p, tasks[i].region, cfg.include_g2, cfg.validity_threshold);
        },
        threads);
    return out;
}

inline const char* csv_header() {
    return "xi,rho,K,omega_t,re_X,im_X,uA2,vB2,abs_rho14,reA,concurrence,p_B,branch,region,validity_ok";
}

inline std::string format_g12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

inline void write_csv(std::ostream& os, const std::vector<SweepRecord>& recs) {
    os << csv_header() << '\n';
    for (const auto& r : recs) {
        for (double v : {r.xi, r.rho, r.K, r.omega_t, r.re_X, r.im_X, r.uA2, r.vB2, r.abs_rho14, r.reA,
                         r.concurrence, r.p_B}) {
            os << format_g12(v) << ',';
        }
        os << to_string(r.branch) << ',' << to_string(r.region) << ',' << (r.validity_ok ? "true" : "false")
           << '\n';
    }
}

inline nlohmann::json to_json(const SweepRecord& r) {
    auto num = [](double v) -> nlohmann::json {
        if (std::isfinite(v)) return v;
        return nullptr;
    };
    return {{"xi", num(r.xi)},
            {"rho", num(r.rho)},
            {"K", num(r.K)},
            {"omega_t", num(r.omega_t)},
            {"re_X", num(r.re_X)},
            {"im_X", num(r.im_X)},
            {"uA2", num(r.uA2)},
            {"vB2", num(r.vB2)},
            {"abs_rho14", num(r.abs_rho14)},
            {"reA", num(r.reA)},
            {"concurrence", num(r.concurrence)},
            {"p_B", num(r.p_B)},
            {"branch", to_string(r.branch)},
            {"region", to_string(r.region)},
            {"validity_ok", r.validity_ok}};
}

inline void write_json(std::ostream& os, const std::vector<SweepRecord>& recs) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : recs) arr.push_back(to_json(r));
    os << arr.dump(2) << '\n';
}

// ---------------------------------------------------------------- units

/// K = 2 (g / Omega)^2 from g/2pi and Omega/2pi in Hz.
inline double units_to_K(double g_over_2pi, double omega_over_2pi) {
    if (!std::isfinite(g_over_2pi) || g_over_2pi < 0.0) throw DomainError("units_to_K: g must be >= 0");
    if (!std::isfinite(omega_over_2pi) || !(omega_over_2pi > 0.0)) {
        throw DomainError("units_to_K: Omega must be > 0");
    }
    const double ratio = g_over_2pi / omega_over_2pi;
    return 2.0 * ratio * ratio;
}

// ---------------------------------------------------------------- light cone

enum class Trend { nondecreasing, nonincreasing, constant, mixed, empty };

inline const char* to_string(Trend t) {
    switch (t) {
    case Trend::nondecreasing: return "nondecreasing";
    case Trend::nonincreasing: return "nonincreasing";
    case Trend::constant: return "constant";
    case Trend::mixed: return "mixed";
    case Trend::empty: return "empty";
    }
    return "?";
}

struct SideSummary {
    Trend trend = Trend::empty;
    int rises = 0;
    int falls = 0;
    double c_min = 0.0;
    double c_max = 0.0;
};

struct LightconeReport {
    double rho = 0.0, K = 0.0;
    double c_minus = 0.0, c_plus = 0.0;
    double absX_minus = 0.0, absX_plus = 0.0;
    double delta_c = 0.0;    // C(1+) - C(1-)
    double delta_absX = 0.0; // |X|(1+) - |X|(1-)
    SideSummary inside;  // xi > 1
    SideSummary outside; // xi < 1
};

namespace sweep_detail {

inline bool same(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(std::abs(a), std::abs(b)); }

inline SideSummary summarize(const std::vector<double>& c) {
    SideSummary s;
    if (c.empty()) return s;
    s.c_min = *std::min_element(c.begin(), c.end());
    s.c_max = *std::max_element(c.begin(), c.end());
    for (std::size_t i = 1; i < c.size(); ++i) {
        if (c[i] > c[i - 1]) ++s.rises;
        if (c[i] < c[i - 1]) ++s.falls;
    }
    if (s.rises == 0 && s.falls == 0) s.trend = Trend::constant;
    else if (s.falls == 0) s.trend = Trend::nondecreasing;
    else if (s.rises == 0) s.trend = Trend::nonincreasing;
    else s.trend = Trend::mixed;
    return s;
}

} // namespace sweep_detail

/// Jump of the concurrence and of |X| across xi = 1 for one (rho, K) curve.
inline LightconeReport detect_lightcone_feature(const std::vector<SweepRecord>& recs, double rho, double K) {
    using sweep_detail::same;
    LightconeReport rep;
    rep.rho = rho;
    rep.K = K;
    const SweepRecord* lo = nullptr;
    const SweepRecord* hi = nullptr;
    std::vector<std::pair<double, double>> below, above;
    for (const auto& r : recs) {
        if (!same(r.rho, rho) || !same(r.K, K)) continue;
        if (r.region == Region::boundary_minus) lo = &r;
        if (r.region == Region::boundary_plus) hi = &r;
        if (r.aborted) continue;
        if (r.region == Region::I) below.emplace_back(r.xi, r.concurrence);
        if (r.region == Region::II) above.emplace_back(r.xi, r.concurrence);
    }
    if (!lo || !hi) throw InputError("detect_lightcone_feature: no boundary-/boundary+ pair for this (rho, K)");
    rep.c_minus = lo->concurrence;
    rep.c_plus = hi->concurrence;
    rep.absX_minus = std::hypot(lo->re_X, lo->im_X);
    rep.absX_plus = std::hypot(hi->re_X, hi->im_X);
    rep.delta_c = rep.c_plus - rep.c_minus;
    rep.delta_absX = rep.absX_plus - rep.absX_minus;
    auto values = [](std::vector<std::pair<double, double>>& v) {
        std::sort(v.begin(), v.end());
        std::vector<double> c;
        for (const auto& [x, y] : v) c.push_back(y);
        return c;
    };
    rep.outside = sweep_detail::summarize(values(below));
    rep.inside = sweep_detail::summarize(values(above));
    return rep;
}

inline nlohmann::json to_json(const LightconeReport& r) {
    auto side = [](const SideSummary& s) {
        return nlohmann::json{{"trend", to_string(s.trend)},
                              {"rises", s.rises},
                              {"falls", s.falls},
                              {"c_min", s.c_min},
                              {"c_max", s.c_max}};
    };
    return {{"rho", r.rho},
            {"K", r.K},
            {"concurrence_minus", r.c_minus},
            {"concurrence_plus", r.c_plus},
            {"delta_concurrence", r.delta_c},
            {"absX_minus", r.absX_minus},
            {"absX_plus", r.absX_plus},
            {"delta_absX", r.delta_absX},
            {"outside_cone", side(r.outside)},
            {"inside_cone", side(r.inside)}};
}

// ---------------------------------------------------------------- audit

struct ClosedForms {
    std::function<cplx(const Point&)> exchange = exchange_amplitude_closed;
    std::function<cplx(const Point&)> vacuum_pair = vacuum_pair_amplitude;
    std::function<EmissionProbs(double, double)> emission = emission_probs;
    std::function<double(double, double)> reA = radiative_reA;
};

struct AuditTolerances {
    double rel = 1e-6;        // X and rho14, relative
    double abs_floor = 1e-10; // X and rho14, absolute floor
    double emission = 1e-8;   // f+-, absolute
    double reA = 1e-6;        // Re A, absolute
};

struct AuditEntry {
    double xi = 0.0, rho = 0.0, K = 0.0;
    cplx X_closed{}, X_oracle{};
    cplx rho14_closed{}, rho14_oracle{};
    double uA2_closed = 0.0, uA2_oracle = 0.0;
    double vB2_closed = 0.0, vB2_oracle = 0.0;
    double reA_closed = 0.0, reA_oracle = 0.0;
    double X_rel = 0.0, rho14_rel = 0.0;
    double X_abs = 0.0, rho14_abs = 0.0;
    double uA2_abs = 0.0, vB2_abs = 0.0, reA_abs = 0.0;
    bool X_ok = false, rho14_ok = false, emission_ok = false, reA_ok = false;
    std::string error; // oracle failure, if any
    bool ok() const { return error.empty() && X_ok && rho14_ok && emission_ok && reA_ok; }
};

struct AuditReport {
    std::vector<AuditEntry> entries;
    AuditTolerances tol;
    bool passed() const {
        return !entries.empty() &&
               std::all_of(entries.begin(), entries.end(), [](const AuditEntry& e) { return e.ok(); });
    }
};

/// rho in {pi/6, pi/4}, K = 0.15, twenty xi values on [0.1, 2) avoiding
/// [0.98, 1.02].
inline std::vector<Point> default_audit_grid() {
    std::vector<double> xis;
    for (int i = 1; i <= 9; ++i) xis.push_back(0.1 * i);
    xis.push_back(0.97);
    xis.push_back(1.03);
    for (int i = 11; i <= 19; ++i) xis.push_back(0.1 * i);
    std::vector<Point> pts;
    for (double rho : {specfun::pi / 6.0, specfun::pi / 4.0}) {
        for (double xi : xis) pts.push_back(Point::from_xi(xi, rho, 0.15));
    }
    return pts;
}

namespace sweep_detail {

inline bool within(cplx closed, cplx oracle, double rel, double floor, double& rel_out, double& abs_out) {
    abs_out = std::abs(closed - oracle);
    const double scale = std::abs(oracle);
    rel_out = scale > 0.0 ? abs_out / scale : (abs_out > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
    return abs_out <= floor || rel_out <= rel;
}

} // namespace sweep_detail

inline AuditEntry audit_point(const Point& p, const ClosedForms& cf, const AuditTolerances& tol,
                              const std::optional<RegulatorSchedule>& cross,
                              const std::optional<RegulatorSchedule>& self) {
    AuditEntry e;
    e.xi = p.xi();
    e.rho = p.rho();
    e.K = p.K();
    try {
        e.X_closed = cf.exchange(p);
        e.rho14_closed = cf.vacuum_pair(p);
        const EmissionProbs f = cf.emission(p.omega_t(), p.K());
        e.uA2_closed = f.uA2;
        e.vB2_closed = f.vB2;
        e.reA_closed = cf.reA(p.omega_t(), p.K());

        e.X_oracle = exchange_amplitude_oracle(p, cross).value;
        e.rho14_oracle = rho14_oracle(p, cross).value;
        const EmissionOracle eo = emission_prob_oracle(p, self);
        e.uA2_oracle = eo.uA2.value;
        e.vB2_oracle = eo.vB2.value;
        e.reA_oracle = reA_oracle(p.omega_t(), p.K(), self).value;
    } catch (const std::exception& ex) {
        e.error = ex.what();
        return e;
    }
    e.X_ok = sweep_detail::within(e.X_closed, e.X_oracle, tol.rel, tol.abs_floor, e.X_rel, e.X_abs);
    e.rho14_ok =
        sweep_detail::within(e.rho14_closed, e.rho14_oracle, tol.rel, tol.abs_floor, e.rho14_rel, e.rho14_abs);
    e.uA2_abs = std::abs(e.uA2_closed - e.uA2_oracle);
    e.vB2_abs = std::abs(e.vB2_closed - e.vB2_oracle);
    e.emission_ok = e.uA2_abs <= tol.emission && e.vB2_abs <= tol.emission;
    e.reA_abs = std::abs(e.reA_closed - e.reA_oracle);
    e.reA_ok = e.reA_abs <= tol.reA;
    return e;
}

/// Compares every closed form against its oracle at each point. Points on
/// the light cone are rejected up front.
inline AuditReport oracle_check(const std::vector<Point>& points, const ClosedForms& cf = {},
                                const AuditTolerances& tol = {},
                                const std::optional<RegulatorSchedule>& cross = {},
                                const std::optional<RegulatorSchedule>& self = {}, unsigned threads = 0) {
    for (const auto& p : points) {
        if (p.on_boundary()) throw InputError("oracle_check: xi == 1 is not an admissible audit point");
    }
    AuditReport rep;
    rep.tol = tol;
    rep.entries.resize(points.size());
    parallel_for(
        points.size(), [&](std::size_t i) { rep.entries[i] = audit_point(points[i], cf, tol, cross, self); },
        threads);
    return rep;
}

inline void write_audit_text(std::ostream& os, const AuditReport& rep) {
    char line[256];
    std::snprintf(line, sizeof line, "%-7s %-9s %-9s %-10s %-10s %-10s %-10s %-10s %s\n", "xi", "rho", "K",
                  "X_rel", "rho14_rel", "uA2_abs", "vB2_abs", "reA_abs", "status");
    os << line;
    for (const auto& e : rep.entries) {
        if (!e.error.empty()) {
            std::snprintf(line, sizeof line, "%-7.4g %-9.6g %-9.4g ERROR %s\n", e.xi, e.rho, e.K, e.error.c_str());
            os << line;
            continue;
        }
        std::snprintf(line, sizeof line, "%-7.4g %-9.6g %-9.4g %-10.2e %-10.2e %-10.2e %-10.2e %-10.2e %s\n", e.xi,
                      e.rho, e.K, e.X_rel, e.rho14_rel, e.uA2_abs, e.vB2_abs, e.reA_abs,
                      e.ok() ? "ok" : "FAIL");
        os << line;
    }
    const auto failed = std::count_if(rep.entries.begin(), rep.entries.end(), [](const auto& e) { return !e.ok(); });
    os << (rep.passed() ? "PASS" : "FAIL") << ": " << rep.entries.size() - static_cast<std::size_t>(failed) << "/"
       << rep.entries.size() << " points within tolerance\n";
}

inline nlohmann::json to_json(const AuditReport& rep) {
    nlohmann::json pts = nlohmann::json::array();
    auto c = [](cplx z) { return nlohmann::json::array({z.real(), z.imag()}); };
    for (const auto& e : rep.entries) {
        nlohmann::json j = {{"xi", e.xi}, {"rho", e.rho}, {"K", e.K}, {"ok", e.ok()}};
        if (!e.error.empty()) {
            j["error"] = e.error;
        } else {
            j["X"] = {{"closed", c(e.X_closed)}, {"oracle", c(e.X_oracle)}, {"rel", e.X_rel}, {"abs", e.X_abs}};
            j["rho14"] = {{"closed", c(e.rho14_closed)},
                          {"oracle", c(e.rho14_oracle)},
                          {"rel", e.rho14_rel},
                          {"abs", e.rho14_abs}};
            j["uA2"] = {{"closed", e.uA2_closed}, {"oracle", e.uA2_oracle}, {"abs", e.uA2_abs}};
            j["vB2"] = {{"closed", e.vB2_closed}, {"oracle", e.vB2_oracle}, {"abs", e.vB2_abs}};
            j["reA"] = {{"closed", e.reA_closed}, {"oracle", e.reA_oracle}, {"abs", e.reA_abs}};
        }
        pts.push_back(std::move(j));
    }
    return {{"passed", rep.passed()},
            {"tolerances",
             {{"rel", rep.tol.rel}, {"abs_floor", rep.tol.abs_floor}, {"emission", rep.tol.emission}, {"reA", rep.tol.reA}}},
            {"points", pts}};
}

} // namespace lightcone
