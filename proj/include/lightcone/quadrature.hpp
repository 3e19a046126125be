#pragma once
// Adaptive Gauss-Kronrod quadrature (1D and iterated 2D) and extrapolation
// to zero regulator. Value type may be double or std::complex<double>.

#include "lightcone/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <queue>
#include <span>
#include <stdexcept>
#include <type_traits>
#include <utility>
#include <vector>

namespace lightcone::quad {

struct Options {
    double abs_tol = 1e-15;
    double rel_tol = 1e-12;
    int max_intervals = 5000;
};

template <class T>
struct Result {
    T value{};
    double error = 0.0;
    long evaluations = 0;
    bool converged = true;
};

namespace detail {

inline constexpr std::array<double, 11> xgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};

inline constexpr std::array<double, 11> wgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077685894726310, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};

// 10-point Gauss weights for the odd-indexed Kronrod nodes (1, 3, ..., 9).
inline constexpr std::array<double, 5> wg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

template <class T>
double magnitude(const T& v) {
    return std::abs(v);
}

template <class T>
struct Panel {
    double a, b;
    T value;
    double error;
    double absval; // integral of |f|, sets the roundoff floor
};

template <class T, class F>
Panel<T> gk21(F& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const T fc = f(c);
    T kron = fc * wgk[10];
    T gauss{};
    double absval = magnitude(fc) * wgk[10];
    for (int j = 0; j < 10; ++j) {
        const double dx = h * xgk[j];
        const T lo = f(c - dx);
        const T hi = f(c + dx);
        const T s = lo + hi;
        kron += s * wgk[j];
        absval += (magnitude(lo) + magnitude(hi)) * wgk[j];
        if (j % 2 == 1) gauss += s * wg[j / 2];
    }
    kron *= h;
    gauss *= h;
    return {a, b, kron, magnitude(kron - gauss), absval * std::abs(h)};
}

template <class T>
struct ByError {
    bool operator()(const Panel<T>& x, const Panel<T>& y) const {
        if (x.error != y.error) return x.error < y.error;
        return x.a > y.a; // deterministic tie-break
    }
};

} // namespace detail

/// Globally adaptive GK21 on [a, b], pre-split at the given interior breakpoints.
template <class F>
auto integrate(F&& f, double a, double b, std::span<const double> breaks = {},
               const Options& opt = {}) -> Result<std::decay_t<std::invoke_result_t<F&, double>>> {
    using T = std::decay_t<std::invoke_result_t<F&, double>>;
    Result<T> out;
    if (a == b) return out;
    if (!(a < b)) throw DomainError("integrate: require a <= b");

    std::vector<double> edges{a};
    {
        std::vector<double> inner;
        for (double x : breaks) {
            if (x > a && x < b) inner.push_back(x);
        }
        std::sort(inner.begin(), inner.end());
        inner.erase(std::unique(inner.begin(), inner.end()), inner.end());
        edges.insert(edges.end(), inner.begin(), inner.end());
        edges.push_back(b);
    }

    long evals = 0;
    auto counted = [&](double x) {
        ++evals;
        return f(x);
    };

    std::priority_queue<detail::Panel<T>, std::vector<detail::Panel<T>>, detail::ByError<T>> heap;
    T total{};
    double err = 0.0;
    double absval = 0.0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        auto p = detail::gk21<T>(counted, edges[i], edges[i + 1]);
        total += p.value;
        err += p.error;
        absval += p.absval;
        heap.push(p);
    }
    // Below this the estimate is dominated by cancellation in the sum.
    auto tolerance = [&] {
        return std::max({opt.abs_tol, opt.rel_tol * detail::magnitude(total),
                         50.0 * std::numeric_limits<double>::epsilon() * absval});
    };

    std::vector<detail::Panel<T>> frozen; // panels too narrow to split further
    while (!heap.empty() && err > tolerance()) {
        if (static_cast<int>(heap.size() + frozen.size()) >= opt.max_intervals) {
            out.converged = false;
            break;
        }
        auto worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            frozen.push_back(worst);
            continue;
        }
        auto left = detail::gk21<T>(counted, worst.a, mid);
        auto right = detail::gk21<T>(counted, mid, worst.b);
        err += left.error + right.error - worst.error;
        absval += left.absval + right.absval - worst.absval;
        total += left.value + right.value - worst.value;
        heap.push(left);
        heap.push(right);
    }

    // Re-sum from scratch in a fixed order; the running totals drift.
    std::vector<detail::Panel<T>> panels = std::move(frozen);
    while (!heap.empty()) {
        panels.push_back(heap.top());
        heap.pop();
    }
    std::sort(panels.begin(), panels.end(),
              [](const auto& x, const auto& y) { return x.a < y.a; });
    T sum{};
    double esum = 0.0;
    for (const auto& p : panels) {
        sum += p.value;
        esum += p.error;
    }
    out.value = sum;
    out.error = esum;
    out.evaluations = evals;
    return out;
}

// Iterated 2D rules in the coordinates (s1, sigma = s2 - s1). The integrand
// is called as f(s1, sigma) so that sigma, where regulated kernels peak, is
// exact rather than recovered from a difference of two times.

/// Integral over the ordered triangle 0 <= s1 <= s2 <= T.
template <class F>
auto integrate_triangle(F&& f, double T, std::span<const double> sigma_breaks = {},
                        const Options& outer = {}, const Options& inner = {})
    -> Result<std::decay_t<std::invoke_result_t<F&, double, double>>> {
    using V = std::decay_t<std::invoke_result_t<F&, double, double>>;
    if (T < 0.0) throw DomainError("integrate_triangle: T must be nonnegative");
    long evals = 0;
    bool ok = true;
    auto row = [&](double sigma) -> V {
        auto r = integrate([&](double s1) { return f(s1, sigma); }, 0.0, T - sigma, {}, inner);
        evals += r.evaluations;
        ok = ok && r.converged;
        return r.value;
    };
    auto r = integrate(row, 0.0, T, sigma_breaks, outer);
    r.evaluations = evals;
    r.converged = r.converged && ok;
    return r;
}

/// Integral over the full square [0, T]^2.
template <class F>
auto integrate_square(F&& f, double T, std::span<const double> sigma_breaks = {},
                      const Options& outer = {}, const Options& inner = {})
    -> Result<std::decay_t<std::invoke_result_t<F&, double, double>>> {
    using V = std::decay_t<std::invoke_result_t<F&, double, double>>;
    if (T < 0.0) throw DomainError("integrate_square: T must be nonnegative");
    long evals = 0;
    bool ok = true;
    auto row = [&](double sigma) -> V {
        const double lo = sigma < 0.0 ? -sigma : 0.0;
        const double hi = sigma < 0.0 ? T : T - sigma;
        auto r = integrate([&](double s1) { return f(s1, sigma); }, lo, hi, {}, inner);
        evals += r.evaluations;
        ok = ok && r.converged;
        return r.value;
    };
    std::vector<double> brk(sigma_breaks.begin(), sigma_breaks.end());
    brk.push_back(0.0);
    auto r = integrate(row, -T, T, brk, outer);
    r.evaluations = evals;
    r.converged = r.converged && ok;
    return r;
}

enum class Basis {
    polynomial,    // 1, t, t^2, ...
    log_augmented, // 1, t, t log t, t^2, t^2 log t, ...
};

template <class T>
struct Extrapolated {
    T value{};
    double error = 0.0;
};

namespace detail {

inline double basis_fn(Basis basis, int k, double t) {
    if (k == 0) return 1.0;
    if (basis == Basis::polynomial) return std::pow(t, k);
    const int power = (k + 1) / 2;
    const double tp = std::pow(t, power);
    return (k % 2 == 1) ? tp : tp * std::log(t);
}

// Weights w with sum_j w_j y_j equal to the constant coefficient of the
// interpolant through (t_j, y_j) in the first t.size() basis functions.
inline std::vector<double> zero_weights(Basis basis, const std::vector<double>& t) {
    const std::size_t n = t.size();
    // Solve A^T w = e0 with A_jk = phi_k(t_j); partial pivoting.
    std::vector<long double> m(n * (n + 1));
    auto at = [&](std::size_t r, std::size_t c) -> long double& { return m[r * (n + 1) + c]; };
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t j = 0; j < n; ++j) at(k, j) = basis_fn(basis, static_cast<int>(k), t[j]);
        at(k, n) = (k == 0) ? 1.0L : 0.0L;
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::fabs(at(r, col)) > std::fabs(at(piv, col))) piv = r;
        }
        if (at(piv, col) == 0.0L) throw std::runtime_error("extrapolation: singular basis");
        if (piv != col) {
            for (std::size_t c = 0; c <= n; ++c) std::swap(at(piv, c), at(col, c));
        }
        for (std::size_t r = col + 1; r < n; ++r) {
            const long double fct = at(r, col) / at(col, col);
            for (std::size_t c = col; c <= n; ++c) at(r, c) -= fct * at(col, c);
        }
    }
    std::vector<long double> w(n);
    for (std::size_t r = n; r-- > 0;) {
        long double s = at(r, n);
        for (std::size_t c = r + 1; c < n; ++c) s -= at(r, c) * w[c];
        w[r] = s / at(r, r);
    }
    return {w.begin(), w.end()};
}

} // namespace detail

/// Extrapolate y(eps) to eps -> 0 by interpolation in the chosen basis.
/// eps must be strictly decreasing; the abscissa is scaled by eps[0].
/// The error estimate is the change when the largest eps and the highest
/// basis function are dropped.
template <class T>
Extrapolated<T> extrapolate_to_zero(std::span<const double> eps, std::span<const T> y,
                                    Basis basis = Basis::polynomial) {
    if (eps.size() != y.size()) throw std::invalid_argument("extrapolate: size mismatch");
    if (eps.size() < 2) throw std::invalid_argument("extrapolate: need at least two nodes");
    const double scale = eps[0];
    std::vector<double> t;
    for (double e : eps) t.push_back(e / scale);

    auto combine = [&](std::size_t first) {
        std::vector<double> tt(t.begin() + static_cast<std::ptrdiff_t>(first), t.end());
        const auto w = detail::zero_weights(basis, tt);
        T v{};
        for (std::size_t j = 0; j < w.size(); ++j) v += y[first + j] * w[j];
        return v;
    };
    Extrapolated<T> out;
    out.value = combine(0);
    out.error = std::abs(out.value - combine(1));
    return out;
}

} // namespace lightcone::quad
