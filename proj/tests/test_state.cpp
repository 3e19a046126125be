#include "lightcone/amplitudes.hpp"
#include "lightcone/state.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace lightcone;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST(BuildState, InitialState) {
    const XStateDensityMatrix m = build_state(AmplitudeSet{});
    EXPECT_EQ(m.rho11, 0.0);
    EXPECT_EQ(m.rho22, 1.0);
    EXPECT_EQ(m.rho33, 0.0);
    EXPECT_EQ(m.rho44, 0.0);
    EXPECT_EQ(m.c, 1.0);
    EXPECT_EQ(concurrence(m), 0.0);
    EXPECT_EQ(excitation_probability(m), 0.0);
}

TEST(BuildState, Composition) {
    const AmplitudeSet a = amplitude_set(Point::from_xi(1.5, kPi / 4, 0.15));
    const XStateDensityMatrix m = build_state(a);
    EXPECT_EQ(m.rho11, a.vB2);
    EXPECT_EQ(m.rho22, 1.0 + 2.0 * a.reA);
    EXPECT_EQ(m.rho33, std::norm(a.X));
    EXPECT_EQ(m.rho44, a.uA2);
    EXPECT_EQ(m.rho14, a.rho14);
    EXPECT_EQ(m.rho23, std::conj(a.X));
    EXPECT_EQ(m.c, m.rho11 + m.rho22 + m.rho33 + m.rho44);
    EXPECT_EQ(m.normalized_trace(), 1.0);

    const XStateDensityMatrix g = build_state(a, 0.01);
    EXPECT_EQ(g.rho33, std::norm(a.X) + 0.01);
}

TEST(BuildState, StrongCouplingIsAnError) {
    AmplitudeSet a;
    a.reA = -0.5;
    EXPECT_THROW(build_state(a), ValidityError);
    EXPECT_THROW(build_state(amplitude_set(Point::from_xi(1.5, kPi / 4, 1.0))), ValidityError);
    EXPECT_THROW(build_state(AmplitudeSet{}, -1.0), DomainError);
}

TEST(Concurrence, BellStates) {
    XStateDensityMatrix m;
    m.rho22 = m.rho33 = 0.5;
    m.rho23 = 0.5;
    m.c = 1.0;
    EXPECT_DOUBLE_EQ(concurrence(m), 1.0);
    EXPECT_EQ(concurrence_detail(m).branch, Branch::rho23);

    XStateDensityMatrix n;
    n.rho11 = n.rho44 = 0.5;
    n.rho14 = 0.5;
    n.c = 1.0;
    EXPECT_DOUBLE_EQ(concurrence(n), 1.0);
    EXPECT_EQ(concurrence_detail(n).branch, Branch::rho14);
}

TEST(Concurrence, DiagonalIsSeparable) {
    XStateDensityMatrix m;
    m.rho11 = 0.1;
    m.rho22 = 0.4;
    m.rho33 = 0.3;
    m.rho44 = 0.2;
    m.c = m.trace();
    EXPECT_EQ(concurrence(m), 0.0);
    EXPECT_EQ(concurrence_detail(m).branch, Branch::none);
}

TEST(Concurrence, RangeAndTraceOnGrid) {
    for (double rho : {kPi / 6, kPi / 4}) {
        for (double K : {K0, 10 * K0, 100 * K0, 0.15}) {
            for (double xi = 0.0; xi < 2.0; xi += 0.0137) {
                const XStateDensityMatrix m = build_state(amplitude_set(Point::from_xi(xi, rho, K)));
                const double C = concurrence(m);
                EXPECT_GE(C, 0.0);
                EXPECT_LE(C, 1.0);
                EXPECT_EQ(m.normalized_trace(), 1.0);
                EXPECT_NEAR(m.rho11 / m.c + m.rho22 / m.c + m.rho33 / m.c + m.rho44 / m.c, 1.0, 4e-16);
                EXPECT_GE(m.rho11, 0.0);
                EXPECT_GE(m.rho33, 0.0);
                EXPECT_GE(m.rho44, 0.0);
            }
        }
    }
}

TEST(Concurrence, ZeroAtStart) {
    EXPECT_EQ(concurrence(build_state(amplitude_set(Point::from_xi(0.0, kPi / 4, 0.15)))), 0.0);
}

TEST(Concurrence, ExchangeBranchDominatesInsideCone) {
    // rho = pi/4, K = 0.15: the |rho23| branch carries the in-cone
    // concurrence over most of the region.
    int exchange = 0, total = 0;
    for (double xi = 1.01; xi < 2.0; xi += 0.01) {
        const auto c = concurrence_detail(build_state(amplitude_set(Point::from_xi(xi, kPi / 4, 0.15))));
        if (c.value > 0.0) {
            ++total;
            if (c.branch == Branch::rho23) ++exchange;
        }
    }
    EXPECT_GT(total, 0);
    EXPECT_EQ(exchange, total);
}

TEST(ExcitationProbability, IndependentOfSeparation) {
    for (double T = 0.0; T <= 2.0; T += 0.01) {
        const auto a = build_state(amplitude_set(Point::from_time(T, kPi / 6, 0.15)));
        const auto b = build_state(amplitude_set(Point::from_time(T, kPi / 4, 0.15)));
        EXPECT_EQ(excitation_probability(a), excitation_probability(b)) << T;
        EXPECT_EQ(a.rho11, b.rho11);
        EXPECT_EQ(a.rho22, b.rho22);
        EXPECT_EQ(a.rho44, b.rho44);
    }
}

TEST(ExcitationProbability, LeadingOrderValue) {
    const auto m = build_state(amplitude_set(Point::from_time(2.0, kPi / 4, 0.15)));
    const auto f = emission_probs(2.0, 0.15);
    EXPECT_NEAR(excitation_probability(m), f.vB2, 1e-15);
    // Differs from rho11 / c only by the fourth-order |X|^2 in c.
    EXPECT_NEAR(excitation_probability(m), m.rho11 / m.c, m.rho11 * m.rho33 * 1.01);
    EXPECT_GE(excitation_probability(m), 0.0);
    EXPECT_LT(excitation_probability(m), 1.0);
}

TEST(Validity, ZeroAmplitudes) {
    const ValidityReport r = validity(AmplitudeSet{}, 0.1);
    EXPECT_TRUE(r.ok);
    EXPECT_EQ(r.bound_x_correction, 0.0);
    EXPECT_EQ(r.bound_a1, 0.0);
    EXPECT_EQ(r.bound_a2, 0.0);
}

TEST(Validity, UltrastrongPointIsPerturbative) {
    const AmplitudeSet a = amplitude_set(Point::from_xi(1.5, kPi / 4, 0.15));
    const ValidityReport r = validity(a);
    EXPECT_TRUE(r.ok);
    EXPECT_EQ(r.threshold, default_validity_threshold);
    EXPECT_DOUBLE_EQ(r.bound_x_correction, 2.0 * std::pow(std::abs(a.X), 3));
    EXPECT_DOUBLE_EQ(r.bound_a2, 2.0 * std::abs(a.X) * a.uA2 * a.vB2);
}

TEST(Validity, LargeCouplingFails) {
    const AmplitudeSet a = amplitude_set(Point::from_xi(1.5, kPi / 4, 10.0));
    EXPECT_FALSE(validity(a).ok);
    EXPECT_FALSE(validity(a, 0.1).ok);
    EXPECT_THROW(validity(a, 0.0), DomainError);
    EXPECT_THROW(validity(a, 1.0), DomainError);
}
