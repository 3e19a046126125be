#pragma once
// Closed-form second-order amplitudes of two qubits on an open line.
//
// Coordinates are dimensionless: T = Omega t = rho xi, tau_- = rho (1 - xi),
// tau_+ = rho (1 + xi). Every amplitude carries exactly one factor of K, which
// is applied last so that scaling K is exact in floating point.

#include "lightcone/errors.hpp"
#include "lightcone/specfun.hpp"

#include <cmath>
#include <complex>
#include <string>

namespace lightcone {

using cplx = std::complex<double>;

inline constexpr double K0 = 1.5e-4;
inline constexpr double boundary_delta = 1e-6;

enum class Region { I, boundary_minus, boundary_plus, II };

inline const char* to_string(Region r) {
    switch (r) {
    case Region::I: return "I";
    case Region::boundary_minus: return "boundary-";
    case Region::boundary_plus: return "boundary+";
    case Region::II: return "II";
    }
    return "?";
}

/// Evaluation coordinates. Built from either xi or Omega t; the other is
/// derived once, so two points built from the same Omega t share it bitwise.
class Point {
public:
    static Point from_xi(double xi, double rho, double K) {
        check(xi, rho, K);
        return Point(xi, rho * xi, rho, K);
    }

    static Point from_time(double omega_t, double rho, double K) {
        if (!std::isfinite(omega_t) || omega_t < 0.0) {
            throw DomainError("Point: omega_t must be finite and >= 0");
        }
        check(0.0, rho, K);
        return Point(omega_t / rho, omega_t, rho, K);
    }

    double xi() const noexcept { return xi_; }
    double rho() const noexcept { return rho_; }
    double K() const noexcept { return K_; }
    double omega_t() const noexcept { return omega_t_; }
    double tau_minus() const noexcept { return rho_ * (1.0 - xi_); }
    double tau_plus() const noexcept { return rho_ * (1.0 + xi_); }

    Region region() const noexcept {
        if (xi_ < 1.0) return Region::I;
        if (xi_ > 1.0) return Region::II;
        return Region::boundary_minus; // exactly on the cone; callers split it
    }
    bool on_boundary() const noexcept { return xi_ == 1.0; }

    Point with_K(double K) const { return from_parts(xi_, omega_t_, rho_, K); }

private:
    Point(double xi, double omega_t, double rho, double K)
        : xi_(xi), omega_t_(omega_t), rho_(rho), K_(K) {}

    static Point from_parts(double xi, double omega_t, double rho, double K) {
        check(xi, rho, K);
        return Point(xi, omega_t, rho, K);
    }

    static void check(double xi, double rho, double K) {
        if (!std::isfinite(xi) || xi < 0.0) throw DomainError("Point: xi must be finite and >= 0");
        if (!std::isfinite(rho) || !(rho > 0.0)) throw DomainError("Point: rho must be > 0");
        if (!std::isfinite(K) || K < 0.0) throw DomainError("Point: K must be finite and >= 0");
    }

    double xi_, omega_t_, rho_, K_;
};

struct AmplitudeSet {
    cplx X{};
    double uA2 = 0.0;
    double vB2 = 0.0;
    cplx rho14{};
    double reA = 0.0;
};

struct EmissionProbs {
    double uA2; // f+
    double vB2; // f-
};

namespace detail {

inline void require_nonneg(double v, const char* what) {
    if (!std::isfinite(v) || v < 0.0) throw DomainError(std::string(what) + " must be finite and >= 0");
}

inline void reject_boundary(const Point& p, const char* what) {
    if (p.on_boundary()) {
        throw BoundaryError(std::string(what) +
                            ": xi == 1 is on the light cone; use the one-sided limits");
    }
}

// X / K for xi != 1.
inline cplx exchange_unit(const Point& p) {
    using namespace specfun;
    const double r = p.rho();
    const double T = p.omega_t();
    const double tm = p.tau_minus();
    const double tp = p.tau_plus();
    const double sr = std::sin(r);
    const double cr = std::cos(r);
    const Composites at_r = composites(r);

    double v = 2.0 - 2.0 * std::cos(T);
    v -= si_shifted(tm) * (sr + tm * cr) + si_shifted(tp) * (sr + tp * cr);
    v -= ci(tm) * (cr - tm * sr) + ci(tp) * (cr - tp * sr);
    v += 2.0 * at_r.C + 2.0 * at_r.S + 2.0 * r * (at_r.CS - at_r.SC);
    double im = 0.0;
    if (p.xi() > 1.0) im = -pi * (cr - tm * sr);
    return {0.5 * v, 0.5 * im};
}

// rho14 / K for xi != 1.
inline cplx vacuum_pair_unit(const Point& p) {
    using namespace specfun;
    const double T = p.omega_t();
    const Composites at_r = composites(p.rho());
    const Composites at_m = composites(p.tau_minus());
    const Composites at_p = composites(p.tau_plus());
    const double bracket = 2.0 * std::cos(T) * (at_r.C + at_r.S) - at_m.C - at_m.S - at_p.C - at_p.S;
    return std::polar(0.5 * bracket, T);
}

} // namespace detail

/// (|U_A|^2, |V_B|^2) = (f+, f-) at Omega t.
inline EmissionProbs emission_probs(double omega_t, double K) {
    detail::require_nonneg(omega_t, "emission_probs: omega_t");
    detail::require_nonneg(K, "emission_probs: K");
    const double T = omega_t;
    const double q = std::cos(T) + T * specfun::sine_integral(T) - 1.0;
    const double plus = 0.5 * (specfun::pi * T + 2.0 * q);
    const double minus = 0.5 * (specfun::pi * T - 2.0 * q);
    return {K * plus, K * minus};
}

/// Exchange amplitude X. Throws BoundaryError at xi == 1.
inline cplx exchange_amplitude_closed(const Point& p) {
    detail::reject_boundary(p, "exchange_amplitude_closed");
    if (p.omega_t() == 0.0) return {0.0, 0.0};
    return detail::exchange_unit(p) * p.K();
}

/// rho14 = <0|S_A^+ S_B^+|0>, the untime-ordered partner of X.
inline cplx vacuum_pair_amplitude(const Point& p) {
    detail::reject_boundary(p, "vacuum_pair_amplitude");
    if (p.omega_t() == 0.0) return {0.0, 0.0};
    return detail::vacuum_pair_unit(p) * p.K();
}

/// Re A fixed by norm conservation at second order.
inline double radiative_reA(double omega_t, double K) {
    const EmissionProbs f = emission_probs(omega_t, K);
    return -(f.uA2 + f.vB2) / 2.0;
}

inline AmplitudeSet amplitude_set(const Point& p) {
    detail::reject_boundary(p, "amplitude_set");
    const EmissionProbs f = emission_probs(p.omega_t(), p.K());
    AmplitudeSet a;
    a.X = exchange_amplitude_closed(p);
    a.uA2 = f.uA2;
    a.vB2 = f.vB2;
    a.rho14 = vacuum_pair_amplitude(p);
    a.reA = -(f.uA2 + f.vB2) / 2.0;
    return a;
}

template <class T>
struct OneSided {
    T minus; // xi = 1 - delta
    T plus;  // xi = 1 + delta
};

inline Point boundary_point(double rho, double K, bool plus, double delta = boundary_delta) {
    return Point::from_xi(plus ? 1.0 + delta : 1.0 - delta, rho, K);
}

inline OneSided<cplx> exchange_amplitude_limits(double rho, double K, double delta = boundary_delta) {
    return {exchange_amplitude_closed(boundary_point(rho, K, false, delta)),
            exchange_amplitude_closed(boundary_point(rho, K, true, delta))};
}

inline OneSided<AmplitudeSet> amplitude_set_limits(double rho, double K, double delta = boundary_delta) {
    return {amplitude_set(boundary_point(rho, K, false, delta)),
            amplitude_set(boundary_point(rho, K, true, delta))};
}

} // namespace lightcone
