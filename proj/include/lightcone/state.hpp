#pragma once
// Reduced two-qubit state, concurrence, excitation probability and the
// perturbative validity gate.

#include "lightcone/amplitudes.hpp"
#include "lightcone/errors.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

namespace lightcone {

/// X-shaped density matrix in the basis |ee>, |eg>, |ge>, |gg>, unnormalized.
/// Lower coherences are the conjugates of rho14 and rho23.
struct XStateDensityMatrix {
    double rho11 = 0.0;
    double rho22 = 0.0;
    double rho33 = 0.0;
    double rho44 = 0.0;
    cplx rho14{};
    cplx rho23{};
    double c = 1.0;

    double trace() const noexcept { return rho11 + rho22 + rho33 + rho44; }
    double normalized_trace() const noexcept { return trace() / c; }
};

/// Builds the state from the amplitudes. g2 is an optional |G|^2 added to
/// rho33. Throws ValidityError when rho22 = 1 + 2 Re A is not positive.
inline XStateDensityMatrix build_state(const AmplitudeSet& a, double g2 = 0.0) {
    if (!std::isfinite(g2) || g2 < 0.0) throw DomainError("build_state: g2 must be >= 0");
    XStateDensityMatrix m;
    m.rho11 = a.vB2;
    m.rho22 = 1.0 + 2.0 * a.reA;
    if (!(m.rho22 > 0.0)) {
        throw ValidityError("build_state: rho22 = 1 + 2 Re A <= 0, coupling too strong for second order");
    }
    m.rho33 = std::norm(a.X) + g2;
    m.rho44 = a.uA2;
    m.rho14 = a.rho14;
    m.rho23 = std::conj(a.X);
    m.c = m.trace();
    return m;
}

enum class Branch { rho23, rho14, none };

inline const char* to_string(Branch b) {
    switch (b) {
    case Branch::rho23: return "rho23";
    case Branch::rho14: return "rho14";
    case Branch::none: return "none";
    }
    return "?";
}

struct ConcurrenceResult {
    double value;
    Branch branch;
    double w23; // |rho23| - sqrt(rho11 rho44)
    double w14; // |rho14| - sqrt(rho22 rho33)
};

inline ConcurrenceResult concurrence_detail(const XStateDensityMatrix& m) {
    const double w23 = std::abs(m.rho23) - std::sqrt(m.rho11 * m.rho44);
    const double w14 = std::abs(m.rho14) - std::sqrt(m.rho22 * m.rho33);
    ConcurrenceResult r{0.0, Branch::none, w23, w14};
    if (w23 > 0.0 && w23 >= w14) {
        r.branch = Branch::rho23;
        r.value = 2.0 * w23 / m.c;
    } else if (w14 > 0.0) {
        r.branch = Branch::rho14;
        r.value = 2.0 * w14 / m.c;
    }
    r.value = std::clamp(r.value, 0.0, 1.0);
    return r;
}

inline double concurrence(const XStateDensityMatrix& m) { return concurrence_detail(m).value; }

/// p_B at leading order: rho11 over the O(d^2) part of the trace. The |X|^2
/// and |G|^2 contributions to c are fourth order and would make p_B depend
/// on the separation through terms the expansion does not control.
inline double excitation_probability(const XStateDensityMatrix& m) {
    return m.rho11 / (m.rho11 + m.rho22 + m.rho44);
}

inline constexpr double default_validity_threshold = 0.5;

struct ValidityReport {
    double absX = 0.0;
    double absA = 0.0; // |Re A|; Im A is not computed
    double uA2 = 0.0;
    double vB2 = 0.0;
    double bound_x_correction = 0.0; // 2 |X|^3
    double bound_a1 = 0.0;           // 2 |A| |U_A|^2 |V_B|^2
    double bound_a2 = 0.0;           // 2 |X| |U_A|^2 |V_B|^2
    bool ok = true;
    double threshold = default_validity_threshold;
};

/// Smallness of the second-order amplitudes, plus the higher-order bounds
/// measured against the |rho23| = |X| scale they would corrupt.
inline ValidityReport validity(const AmplitudeSet& a, double threshold = default_validity_threshold) {
    if (!(threshold > 0.0 && threshold < 1.0)) throw DomainError("validity: threshold must lie in (0, 1)");
    ValidityReport r;
    r.threshold = threshold;
    r.absX = std::abs(a.X);
    r.absA = std::abs(a.reA);
    r.uA2 = a.uA2;
    r.vB2 = a.vB2;
    const double uv = a.uA2 * a.vB2;
    r.bound_x_correction = 2.0 * r.absX * r.absX * r.absX;
    r.bound_a1 = 2.0 * r.absA * uv;
    r.bound_a2 = 2.0 * r.absX * uv;
    const double largest = std::max({r.absX, r.absA, r.uA2, r.vB2});
    const double scale = threshold * r.absX;
    r.ok = largest < threshold && r.bound_x_correction <= scale && r.bound_a1 <= scale &&
           r.bound_a2 <= scale;
    return r;
}

} // namespace lightcone
