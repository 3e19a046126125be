#pragma once
// Sine and cosine integrals and the trigonometric composites built on them.
//
//   Si(x) = int_0^x sin t / t dt,   si(x) = Si(x) - pi/2,
//   Ci(x) = gamma + ln x + int_0^x (cos t - 1) / t dt.
//
// Two evaluation regimes: the Maclaurin series for |x| <= 6 and a
// continued fraction for E1(i x) beyond. Both are exposed in `detail` so
// their agreement can be checked on an overlap window.

#include "lightcone/errors.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

namespace lightcone::specfun {

inline constexpr double pi = std::numbers::pi;
inline constexpr double half_pi = std::numbers::pi / 2.0;
inline constexpr double euler_gamma = std::numbers::egamma;

// Regime switch between the power series and the continued fraction.
inline constexpr double series_cutoff = 6.0;

enum class ArgumentSign { positive, zero, negative };

struct EvalDomainFlag {
    ArgumentSign argument_sign = ArgumentSign::positive;
    const char* convention_note = "";
};

inline EvalDomainFlag classify(double x) noexcept {
    if (x > 0.0) return {ArgumentSign::positive, "canonical domain"};
    if (x < 0.0) return {ArgumentSign::negative, "real part: Ci(|x|); branch term carried by caller"};
    return {ArgumentSign::zero, "logarithmic pole"};
}

struct CiValue {
    double value;
    EvalDomainFlag flag;
};

namespace detail {

inline void require_finite(double x, const char* what) {
    if (!std::isfinite(x)) {
        throw DomainError(std::string(what) + ": non-finite argument");
    }
}

// Si(x) by its Maclaurin series; accurate to ~1e-15 for |x| <= 8.
inline double si_series(double x) noexcept {
    const double x2 = x * x;
    double term = x; // (-1)^n x^{2n+1} / (2n+1)!
    double sum = x;
    for (int n = 0; n < 200; ++n) {
        term *= -x2 / ((2.0 * n + 2.0) * (2.0 * n + 3.0));
        const double contrib = term / (2.0 * n + 3.0);
        sum += contrib;
        if (std::abs(contrib) <= 1e-17 * std::abs(sum)) break;
    }
    return sum;
}

// Ci(x) for x > 0 by its Maclaurin series.
inline double ci_series(double x) noexcept {
    const double x2 = x * x;
    double term = 1.0; // (-1)^n x^{2n} / (2n)!
    double sum = 0.0;
    for (int n = 1; n < 200; ++n) {
        term *= -x2 / ((2.0 * n - 1.0) * (2.0 * n));
        const double contrib = term / (2.0 * n);
        sum += contrib;
        if (std::abs(contrib) <= 1e-17 * (std::abs(sum) + 1.0)) break;
    }
    return euler_gamma + std::log(x) + sum;
}

struct SiCi {
    double si; // Si(x)
    double ci; // Ci(x)
};

// Modified Lentz evaluation of the continued fraction for E1(i x), x > 0.
// Converges for every x > 0, quickly once x is a few units.
inline SiCi si_ci_continued_fraction(double x) noexcept {
    constexpr double tiny = 1e-300;
    constexpr double eps = 1e-16;
    std::complex<double> b(1.0, x);
    std::complex<double> c(1.0 / tiny, 0.0);
    std::complex<double> d = 1.0 / b;
    std::complex<double> h = d;
    for (int i = 2; i < 100000; ++i) {
        const double a = -static_cast<double>(i - 1) * static_cast<double>(i - 1);
        b += 2.0;
        d = 1.0 / (a * d + b);
        c = b + a / c;
        const std::complex<double> del = c * d;
        h *= del;
        if (std::abs(del.real() - 1.0) + std::abs(del.imag()) < eps) break;
    }
    h *= std::complex<double>(std::cos(x), -std::sin(x));
    return {half_pi + h.imag(), -h.real()};
}

} // namespace detail

/// Si(x). Odd in x.
inline double sine_integral(double x) {
    detail::require_finite(x, "sine_integral");
    const double ax = std::abs(x);
    const double v = ax <= series_cutoff ? detail::si_series(ax)
                                         : detail::si_ci_continued_fraction(ax).si;
    return x < 0.0 ? -v : v;
}

/// si(x) = Si(x) - pi/2.
inline double si_shifted(double x) { return sine_integral(x) - half_pi; }

/// Ci(x). For x < 0 the value is Ci(|x|) and the flag records that the
/// imaginary branch term (i pi) was dropped. Throws PoleError at x == 0.
inline CiValue cosine_integral(double x) {
    detail::require_finite(x, "cosine_integral");
    if (x == 0.0) throw PoleError("cosine_integral: Ci has a logarithmic pole at 0");
    const double ax = std::abs(x);
    const double v = ax <= series_cutoff ? detail::ci_series(ax)
                                         : detail::si_ci_continued_fraction(ax).ci;
    return {v, classify(x)};
}

/// Shorthand when only the real-part value is needed.
inline double ci(double x) { return cosine_integral(x).value; }

struct Composites {
    double C;  // cos(x) Ci(x)
    double S;  // sin(x) si(x)
    double CS; // cos(x) si(x)
    double SC; // sin(x) Ci(x)
    EvalDomainFlag ci_flag;
};

struct SineComposites {
    double S;
    double CS;
};

/// The si-bearing composites; finite everywhere including x = 0.
inline SineComposites sine_composites(double x) {
    const double s = si_shifted(x);
    return {std::sin(x) * s, std::cos(x) * s};
}

/// All four composites. Throws PoleError at x == 0 (C and SC carry Ci).
inline Composites composites(double x) {
    const CiValue c = cosine_integral(x);
    const SineComposites sc = sine_composites(x);
    return {std::cos(x) * c.value, sc.S, sc.CS, std::sin(x) * c.value, c.flag};
}

enum class KernelKind { cos_plus, cos_minus, sin_plus, sin_minus };

/// Closed forms of int_0^inf trig(k gamma) / (k +- beta) dk for gamma, beta > 0.
/// The `_minus` kinds are principal values at k = beta.
inline double kernel_integral(double gamma, double beta, KernelKind kind) {
    detail::require_finite(gamma, "kernel_integral");
    detail::require_finite(beta, "kernel_integral");
    if (!(gamma > 0.0) || !(beta > 0.0)) {
        throw DomainError("kernel_integral: gamma and beta must be positive");
    }
    const double z = gamma * beta;
    if (z == 0.0) throw PoleError("kernel_integral: gamma * beta underflows to 0");
    const double s = std::sin(z);
    const double c = std::cos(z);
    const double sis = si_shifted(z);
    const double cin = ci(z);
    switch (kind) {
    case KernelKind::cos_plus: return -s * sis - c * cin;
    case KernelKind::cos_minus: return -s * sis - c * cin - pi * s;
    case KernelKind::sin_plus: return s * cin - c * sis;
    case KernelKind::sin_minus: return -s * cin + c * sis + pi * c;
    }
    return 0.0; // unreachable
}

} // namespace lightcone::specfun
