#pragma once
// Brute-force amplitudes straight from the time-ordered definitions.
//
// The field correlator is regulated with exp(-eps u) in frequency, which
// makes the u-integral exact:
//
//   D_eps(a, b) = 1/(eps - i(a - b))^2 + 1/(eps + i(a + b))^2,
//
// a = separation, b = time difference. The remaining double time integral is
// done by iterated adaptive quadrature at several eps, then extrapolated to
// eps -> 0. Nothing here calls the closed forms.

#include "lightcone/amplitudes.hpp"
#include "lightcone/errors.hpp"
#include "lightcone/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace lightcone {

struct RegulatorSchedule {
    std::vector<double> eps_values;
    int extrapolation_order = 0; // highest basis index used; needs order + 1 nodes
    double quad_tol = 1e-8;      // accepted extrapolation error, relative to max(|value|, K)

    static constexpr double min_eps = 1e-4;

    void validate() const {
        if (eps_values.size() < 3) throw ConfigError("RegulatorSchedule: need at least 3 eps values");
        for (std::size_t i = 0; i < eps_values.size(); ++i) {
            const double e = eps_values[i];
            if (!std::isfinite(e) || !(e > 0.0)) throw ConfigError("RegulatorSchedule: eps must be > 0");
            if (i > 0 && !(e < eps_values[i - 1])) {
                throw ConfigError("RegulatorSchedule: eps values must be strictly decreasing");
            }
        }
        if (eps_values.back() < min_eps) throw ConfigError("RegulatorSchedule: smallest eps below 1e-4");
        if (extrapolation_order < 1 ||
            static_cast<std::size_t>(extrapolation_order) + 1 > eps_values.size()) {
            throw ConfigError("RegulatorSchedule: extrapolation order needs order+1 eps values");
        }
        if (!(quad_tol > 0.0)) throw ConfigError("RegulatorSchedule: quad_tol must be > 0");
    }

    /// Geometric schedule eps_max, eps_max/2, ... with at most max_nodes
    /// entries, truncated at min_eps.
    static RegulatorSchedule geometric(double eps_max, int max_nodes, double tol = 1e-8) {
        RegulatorSchedule s;
        for (int j = 0; j < max_nodes; ++j) {
            const double e = eps_max / std::ldexp(1.0, j);
            if (e < min_eps) break;
            s.eps_values.push_back(e);
        }
        s.extrapolation_order = static_cast<int>(s.eps_values.size()) - 1;
        s.quad_tol = tol;
        return s;
    }

    /// Two-qubit kernels: the light-cone peak at sigma = rho must stay
    /// resolved, so the largest eps is tied to its distance from the ends.
    static RegulatorSchedule for_cross(double rho, double omega_t) {
        const double R = std::min(rho, std::abs(omega_t - rho));
        RegulatorSchedule s = geometric(std::min(0.1, R / 4.0), 7, 1e-8);
        if (s.eps_values.size() < 3) {
            throw BoundaryError("oracle: point too close to the light cone (|omega_t - rho| = " +
                                std::to_string(std::abs(omega_t - rho)) + ")");
        }
        return s;
    }

    /// Single-qubit kernels, peaked at sigma = 0.
    static RegulatorSchedule for_self(double omega_t) {
        return geometric(std::min(0.02, omega_t / 8.0), 7, 1e-8);
    }

    RegulatorSchedule scaled(double factor) const {
        RegulatorSchedule s = *this;
        for (double& e : s.eps_values) e *= factor;
        return s;
    }

    /// The nodes used for extrapolation: the smallest order + 1 values.
    std::vector<double> active() const {
        return {eps_values.end() - (extrapolation_order + 1), eps_values.end()};
    }
};

template <class T>
struct OracleResult {
    T value{};
    double error = 0.0; // extrapolation error estimate
};

struct EmissionOracle {
    OracleResult<double> uA2;
    OracleResult<double> vB2;
    double imag_residue = 0.0; // largest |Im| seen in the square integrals
};

/// D_eps(a, b), closed form of the damped frequency integral.
inline cplx regularized_correlator(double a, double b, double eps) {
    if (!std::isfinite(eps) || !(eps > 0.0)) throw DomainError("regularized_correlator: eps must be > 0");
    const cplx u(eps, -(a - b));
    const cplx v(eps, a + b);
    return 1.0 / (u * u) + 1.0 / (v * v);
}

namespace oracle_detail {

inline quad::Options outer_opts() { return {1e-16, 1e-13, 5000}; }
inline quad::Options inner_opts() { return {1e-16, 1e-13, 200}; }

inline std::vector<double> peak_breaks(double center, double eps) {
    std::vector<double> b;
    for (double k : {-64.0, -16.0, -4.0, -1.0, 0.0, 1.0, 4.0, 16.0, 64.0}) b.push_back(center + k * eps);
    return b;
}

inline std::vector<double> cross_breaks(double rho, double eps) {
    auto b = peak_breaks(rho, eps);
    const auto m = peak_breaks(-rho, eps);
    b.insert(b.end(), m.begin(), m.end());
    return b;
}

inline std::vector<double> self_breaks(double eps) { return peak_breaks(0.0, eps); }

inline RegulatorSchedule resolve(const std::optional<RegulatorSchedule>& s, RegulatorSchedule fallback) {
    RegulatorSchedule out = s ? *s : std::move(fallback);
    out.validate();
    return out;
}

template <class T>
OracleResult<T> finish(const RegulatorSchedule& s, const std::vector<T>& ys, quad::Basis basis,
                       double K, const char* what) {
    const auto eps = s.active();
    const std::vector<T> tail(ys.end() - static_cast<std::ptrdiff_t>(eps.size()), ys.end());
    const auto ex = quad::extrapolate_to_zero<T>(eps, tail, basis);
    const double scale = std::max(std::abs(ex.value), K);
    if (ex.error > s.quad_tol * scale) {
        throw ConvergenceError(std::string(what) + ": eps extrapolation did not settle", ex.error);
    }
    return {ex.value, ex.error};
}

template <class V>
V checked(const quad::Result<V>& r, const char* what) {
    if (!r.converged) throw ConvergenceError(std::string(what) + ": time quadrature", r.error);
    return r.value;
}

// Counterterm L_eps(T) = int_0^T s cos s / (s^2 + eps^2) ds, the log-divergent
// piece shared by both Wightman self-integrals.
inline double counterterm(double T, double eps) {
    const auto br = self_breaks(eps);
    auto r = quad::integrate([&](double s) { return s * std::cos(s) / (s * s + eps * eps); }, 0.0, T, br,
                             outer_opts());
    return checked(r, "counterterm");
}

} // namespace oracle_detail

/// X from the time-ordered double integral; both orderings of the two
/// single-qubit transitions contribute, giving 2 cos(s2 - s1).
inline OracleResult<cplx> exchange_amplitude_oracle(const Point& p,
                                                    const std::optional<RegulatorSchedule>& sched = {}) {
    using namespace oracle_detail;
    const double T = p.omega_t();
    const double rho = p.rho();
    if (T == 0.0) return {};
    if (p.on_boundary()) throw BoundaryError("exchange_amplitude_oracle: xi == 1");
    const RegulatorSchedule s = resolve(sched, RegulatorSchedule::for_cross(rho, T));
    std::vector<cplx> ys;
    for (double eps : s.active()) {
        auto f = [&](double, double sg) {
            const cplx phases = std::polar(1.0, sg) + std::polar(1.0, -sg);
            return phases * regularized_correlator(rho, sg, eps);
        };
        const auto br = cross_breaks(rho, eps);
        ys.push_back(-0.25 * checked(quad::integrate_triangle(f, T, br, outer_opts(), inner_opts()),
                                     "exchange_amplitude_oracle"));
    }
    auto r = finish(s, ys, quad::Basis::polynomial, 1.0, "exchange_amplitude_oracle");
    return {r.value * p.K(), r.error * p.K()};
}

/// rho14 over the full square, no time ordering.
inline OracleResult<cplx> rho14_oracle(const Point& p, const std::optional<RegulatorSchedule>& sched = {}) {
    using namespace oracle_detail;
    const double T = p.omega_t();
    const double rho = p.rho();
    if (T == 0.0) return {};
    if (p.on_boundary()) throw BoundaryError("rho14_oracle: xi == 1");
    const RegulatorSchedule s = resolve(sched, RegulatorSchedule::for_cross(rho, T));
    std::vector<cplx> ys;
    for (double eps : s.active()) {
        auto f = [&](double s1, double sg) {
            return std::polar(1.0, 2.0 * s1 + sg) * regularized_correlator(rho, sg, eps);
        };
        const auto br = cross_breaks(rho, eps);
        ys.push_back(-0.25 * checked(quad::integrate_square(f, T, br, outer_opts(), inner_opts()),
                                     "rho14_oracle"));
    }
    auto r = finish(s, ys, quad::Basis::polynomial, 1.0, "rho14_oracle");
    return {r.value * p.K(), r.error * p.K()};
}

/// |U_A|^2 and |V_B|^2 from the unordered (Wightman) self-correlator over
/// the square. The raw integrals diverge like log(1/eps); the counterterm
/// K L_eps is removed before extrapolation. Its sign on the B side is fixed
/// by matching the known closed forms.
inline EmissionOracle emission_prob_oracle(double omega_t, double K,
                                           const std::optional<RegulatorSchedule>& sched = {}) {
    using namespace oracle_detail;
    detail::require_nonneg(omega_t, "emission_prob_oracle: omega_t");
    detail::require_nonneg(K, "emission_prob_oracle: K");
    EmissionOracle out;
    const double T = omega_t;
    if (T == 0.0) return out;
    const RegulatorSchedule s = resolve(sched, RegulatorSchedule::for_self(T));
    std::vector<double> up, vp;
    for (double eps : s.active()) {
        const auto br = self_breaks(eps);
        auto wightman = [&](double sign) {
            auto f = [&](double, double sg) {
                return std::polar(1.0, sign * sg) * regularized_correlator(0.0, sg, eps);
            };
            return 0.25 * checked(quad::integrate_square(f, T, br, outer_opts(), inner_opts()),
                                  "emission_prob_oracle");
        };
        const cplx wa = wightman(+1.0);
        const cplx wb = wightman(-1.0);
        out.imag_residue = std::max({out.imag_residue, std::abs(wa.imag()), std::abs(wb.imag())});
        const double L = counterterm(T, eps);
        up.push_back(wa.real() - L);
        vp.push_back(L - wb.real());
    }
    const auto a = finish(s, up, quad::Basis::log_augmented, 1.0, "emission_prob_oracle (A)");
    const auto b = finish(s, vp, quad::Basis::log_augmented, 1.0, "emission_prob_oracle (B)");
    out.uA2 = {a.value * K, a.error * K};
    out.vB2 = {b.value * K, b.error * K};
    out.imag_residue *= K;
    return out;
}

inline EmissionOracle emission_prob_oracle(const Point& p, const std::optional<RegulatorSchedule>& sched = {}) {
    return emission_prob_oracle(p.omega_t(), p.K(), sched);
}

/// Re A from the time-ordered self-correlators of both qubits. Each one is
/// log-divergent; the difference Re A_A - Re A_B is finite and is what
/// enters rho22 once the common counterterm is absorbed.
inline OracleResult<double> reA_oracle(double omega_t, double K,
                                       const std::optional<RegulatorSchedule>& sched = {}) {
    using namespace oracle_detail;
    detail::require_nonneg(omega_t, "reA_oracle: omega_t");
    detail::require_nonneg(K, "reA_oracle: K");
    const double T = omega_t;
    if (T == 0.0) return {};
    const RegulatorSchedule s = resolve(sched, RegulatorSchedule::for_self(T));
    std::vector<double> ys;
    for (double eps : s.active()) {
        const auto br = self_breaks(eps);
        auto ordered = [&](double sign) {
            auto f = [&](double, double sg) {
                return std::polar(1.0, sign * sg) * regularized_correlator(0.0, sg, eps);
            };
            return -0.25 * checked(quad::integrate_triangle(f, T, br, outer_opts(), inner_opts()),
                                   "reA_oracle");
        };
        ys.push_back(ordered(+1.0).real() - ordered(-1.0).real());
    }
    const auto r = finish(s, ys, quad::Basis::log_augmented, 1.0, "reA_oracle");
    return {r.value * K, r.error * K};
}

/// |G|^2 for the two-photon amplitude. The creation parts of the two field
/// operators commute, so the amplitude is the symmetrized product of the
/// single-emission amplitudes and its norm splits into |U_A|^2 |V_B|^2 plus
/// the overlap term |rho14|^2.
inline OracleResult<double> two_photon_g_oracle(const Point& p,
                                                const std::optional<RegulatorSchedule>& cross = {},
                                                const std::optional<RegulatorSchedule>& self = {}) {
    if (p.omega_t() == 0.0) return {};
    const auto e = emission_prob_oracle(p, self);
    const auto r = rho14_oracle(p, cross);
    const double a = std::abs(r.value);
    OracleResult<double> out;
    out.value = e.uA2.value * e.vB2.value + a * a;
    out.error = e.uA2.error * e.vB2.value + e.uA2.value * e.vB2.error + 2.0 * a * r.error;
    return out;
}

} // namespace lightcone
