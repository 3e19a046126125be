#include "lightcone/amplitudes.hpp"
#include "lightcone/oracle.hpp"
#include "lightcone/quadrature.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace lightcone;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST(RegularizedCorrelator, Substitution) {
    EXPECT_EQ(regularized_correlator(0.0, 0.0, 1.0), cplx(2.0, 0.0));
    EXPECT_NEAR(regularized_correlator(1.0, 0.0, 1.0).real(), 0.0, 1e-16);
    EXPECT_THROW(regularized_correlator(0.0, 0.0, 0.0), DomainError);
    EXPECT_THROW(regularized_correlator(0.0, 0.0, -1.0), DomainError);
}

TEST(RegularizedCorrelator, MatchesDampedFrequencyIntegral) {
    const double a = 0.7, b = 0.3, e = 0.1;
    auto f = [&](double u) {
        return u * std::exp(-e * u) * (std::polar(1.0, u * (a - b)) + std::polar(1.0, -u * (a + b)));
    };
    cplx sum{};
    for (double lo = 0.0; lo < 200.0 / e; lo += 10.0) sum += quad::integrate(f, lo, lo + 10.0).value;
    EXPECT_LT(std::abs(sum - regularized_correlator(a, b, e)), 1e-9);
}

TEST(RegulatorSchedule, Invariants) {
    RegulatorSchedule s{{0.1, 0.05, 0.025}, 2, 1e-8};
    EXPECT_NO_THROW(s.validate());
    EXPECT_THROW((RegulatorSchedule{{0.1, 0.05}, 1, 1e-8}).validate(), ConfigError);
    EXPECT_THROW((RegulatorSchedule{{0.1, 0.1, 0.05}, 2, 1e-8}).validate(), ConfigError);
    EXPECT_THROW((RegulatorSchedule{{0.1, 0.05, 0.00005}, 2, 1e-8}).validate(), ConfigError);
    EXPECT_THROW((RegulatorSchedule{{0.1, 0.05, 0.025}, 3, 1e-8}).validate(), ConfigError);
    EXPECT_THROW((RegulatorSchedule{{0.1, 0.05, 0.025}, 2, 0.0}).validate(), ConfigError);
}

TEST(RegulatorSchedule, AdaptedSchedulesAreValid) {
    for (double xi : {0.1, 0.5, 0.97, 1.03, 1.9}) {
        for (double rho : {kPi / 6, kPi / 4}) {
            const auto s = RegulatorSchedule::for_cross(rho, rho * xi);
            EXPECT_NO_THROW(s.validate());
            EXPECT_LE(s.eps_values.front(), 0.1);
        }
    }
    for (double T : {0.05, 0.5, 10.0}) EXPECT_NO_THROW(RegulatorSchedule::for_self(T).validate());
}

TEST(ExchangeOracle, ZeroTime) {
    const Point p = Point::from_xi(0.0, kPi / 4, 0.15);
    EXPECT_EQ(exchange_amplitude_oracle(p).value, cplx(0.0, 0.0));
    EXPECT_EQ(rho14_oracle(p).value, cplx(0.0, 0.0));
    const auto e = emission_prob_oracle(p);
    EXPECT_EQ(e.uA2.value, 0.0);
    EXPECT_EQ(e.vB2.value, 0.0);
    EXPECT_EQ(reA_oracle(0.0, 0.15).value, 0.0);
    EXPECT_EQ(two_photon_g_oracle(p).value, 0.0);
}

TEST(ExchangeOracle, RejectsBoundary) {
    const Point p = Point::from_xi(1.0, kPi / 4, 0.15);
    EXPECT_THROW(exchange_amplitude_oracle(p), BoundaryError);
    EXPECT_THROW(rho14_oracle(p), BoundaryError);
}

TEST(ExchangeOracle, StableUnderScheduleShiftAndTighterTolerance) {
    for (double xi : {0.5, 1.5}) {
        const Point p = Point::from_xi(xi, kPi / 4, 0.15);
        const auto base = RegulatorSchedule::for_cross(p.rho(), p.omega_t());
        const auto a = exchange_amplitude_oracle(p, base);
        const auto b = exchange_amplitude_oracle(p, base.scaled(0.5));
        auto tight = base;
        tight.quad_tol = base.quad_tol / 2.0;
        const auto c = exchange_amplitude_oracle(p, tight);
        const double scale = std::max(std::abs(a.value), p.K());
        EXPECT_LT(std::abs(a.value - b.value), base.quad_tol * scale);
        EXPECT_EQ(a.value, c.value);
        const auto r1 = rho14_oracle(p, base);
        const auto r2 = rho14_oracle(p, base.scaled(0.5));
        EXPECT_LT(std::abs(r1.value - r2.value), base.quad_tol * scale);
    }
}

TEST(ExchangeOracle, ConvergenceErrorCarriesResidual) {
    const Point p = Point::from_xi(0.5, kPi / 4, 0.15);
    RegulatorSchedule s{{0.4, 0.2, 0.1}, 2, 1e-14};
    try {
        exchange_amplitude_oracle(p, s);
        FAIL() << "expected ConvergenceError";
    } catch (const ConvergenceError& e) {
        EXPECT_GT(e.residual(), 0.0);
    }
}

TEST(ExchangeOracle, LinearInK) {
    const Point p = Point::from_xi(0.7, kPi / 6, 0.05);
    EXPECT_EQ(exchange_amplitude_oracle(p.with_K(0.1)).value, 2.0 * exchange_amplitude_oracle(p).value);
    EXPECT_EQ(rho14_oracle(p.with_K(0.1)).value, 2.0 * rho14_oracle(p).value);
    EXPECT_EQ(reA_oracle(p.omega_t(), 0.1).value, 2.0 * reA_oracle(p.omega_t(), 0.05).value);
}

TEST(ExchangeOracle, Deterministic) {
    const Point p = Point::from_xi(1.3, kPi / 6, 0.15);
    EXPECT_EQ(exchange_amplitude_oracle(p).value, exchange_amplitude_oracle(p).value);
}

// Emission probabilities against the known closed forms. This fixes the
// overall prefactor and the sign conventions of the whole oracle.
class Calibration : public ::testing::TestWithParam<double> {};

TEST_P(Calibration, EmissionMatchesClosedForm) {
    const double T = GetParam();
    const double K = 0.15;
    const double q = std::cos(T) + T * specfun::sine_integral(T) - 1.0;
    const double f_plus = K / 2.0 * (kPi * T + 2.0 * q);
    const double f_minus = K / 2.0 * (kPi * T - 2.0 * q);
    const auto e = emission_prob_oracle(T, K);
    EXPECT_NEAR(e.uA2.value, f_plus, 1e-8);
    EXPECT_NEAR(e.vB2.value, f_minus, 1e-8);
    EXPECT_LT(e.imag_residue, 1e-10);
    EXPECT_GE(e.uA2.value, -1e-10);
    EXPECT_GE(e.vB2.value, -1e-10);
}

INSTANTIATE_TEST_SUITE_P(OmegaT, Calibration, ::testing::Values(0.5, 1.0, 2.0, 5.0, 10.0));

TEST(ReAOracle, Unitarity) {
    for (double T : {0.3, 1.0, 2.0, 3.0, 6.0}) {
        const auto e = emission_prob_oracle(T, 0.15);
        const double reA = reA_oracle(T, 0.15).value;
        EXPECT_LT(std::abs(2.0 * reA + e.uA2.value + e.vB2.value), 2e-9) << T;
    }
}

TEST(ReAOracle, MatchesClosedFormAtThree) {
    const auto f = emission_probs(3.0, 0.15);
    EXPECT_NEAR(reA_oracle(3.0, 0.15).value, -(f.uA2 + f.vB2) / 2.0, 1e-6);
}

TEST(TwoPhotonOracle, BoundAndScaling) {
    const Point p = Point::from_xi(1.5, kPi / 4, 0.15);
    const double g2 = two_photon_g_oracle(p).value;
    const auto f = emission_probs(p.omega_t(), 0.15);
    EXPECT_GT(g2, 0.0);
    EXPECT_LT(g2, 4.0 * f.uA2 * f.vB2);
    EXPECT_EQ(two_photon_g_oracle(p.with_K(0.3)).value, 4.0 * g2);
}

TEST(RegulatorSchedule, TooCloseToTheConeIsBoundaryError) {
    EXPECT_THROW(RegulatorSchedule::for_cross(kPi / 4, kPi / 4 * 0.9995), BoundaryError);
    EXPECT_THROW(two_photon_g_oracle(Point::from_xi(0.9995, kPi / 4, 0.15)), BoundaryError);
}
