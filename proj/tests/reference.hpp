#pragma once
// Independent reference values shared by the unit tests and the acceptance
// binary. Nothing here calls the special-function code under test.

#include "lightcone/quadrature.hpp"
#include "lightcone/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace lightcone::reference {

using specfun::KernelKind;

// Reference power series summed in long double, independent of the library.
inline long double ref_Si(long double x) {
    long double term = x, sum = x;
    for (int n = 1; n < 400; ++n) {
        term *= -x * x / ((2.0L * n) * (2.0L * n + 1.0L));
        sum += term / (2.0L * n + 1.0L);
        if (std::fabs(term) < 1e-30L) break;
    }
    return sum;
}

inline long double ref_Ci(long double x) {
    long double term = 1.0L, sum = 0.0L;
    for (int n = 1; n < 400; ++n) {
        term *= -x * x / ((2.0L * n - 1.0L) * (2.0L * n));
        sum += term / (2.0L * n);
        if (std::fabs(term) < 1e-30L) break;
    }
    return 0.577215664901532860606512090082402431L + std::log(x) + sum;
}

// int_0^inf e^{-e x} trig(x) / (x + sgn b) dx; principal value at x = b for
// the minus kinds. After x = k gamma the integral depends on b = gamma beta only.
inline double damped_kernel(double b, KernelKind kind, double e) {
    const bool use_cos = kind == KernelKind::cos_plus || kind == KernelKind::cos_minus;
    const bool minus = kind == KernelKind::cos_minus || kind == KernelKind::sin_minus;
    auto h = [&](double x) { return std::exp(-e * x) * (use_cos ? std::cos(x) : std::sin(x)); };
    const quad::Options opt{1e-17, 1e-14, 2000};
    double total = 0.0;
    double start = 0.0;
    if (minus) {
        const double hb = h(b);
        auto sub = [&](double x) { return x == b ? 0.0 : (h(x) - hb) / (x - b); };
        const double brk[] = {b};
        total += quad::integrate(sub, 0.0, 2.0 * b, brk, opt).value;
        start = 2.0 * b;
    }
    auto g = [&](double x) { return h(x) / (minus ? x - b : x + b); };
    const double end = 45.0 / e;
    const double panel = std::numbers::pi;
    for (double a = start; a < end; a += panel) {
        total += quad::integrate(g, a, std::min(a + panel, end), {}, opt).value;
    }
    return total;
}

inline double kernel_by_quadrature(double b, KernelKind kind) {
    std::vector<double> eps, ys;
    // The damping must stay small against 1/b or the extrapolation degrades.
    const double eps_max = std::min(0.1, 1.0 / b);
    for (int j = 0; j < 8; ++j) {
        eps.push_back(eps_max / std::ldexp(1.0, j));
        ys.push_back(damped_kernel(b, kind, eps.back()));
    }
    return quad::extrapolate_to_zero<double>(eps, ys).value;
}

} // namespace lightcone::reference
