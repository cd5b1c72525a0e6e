#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "floq/potential.hpp"

using namespace floq;

TEST_CASE("closed-form derivatives match the stated examples") {
    CHECK(PotentialModel::smoothed_power(2).derivative(1.0, 0) == doctest::Approx(4.0));
    CHECK(PotentialModel::harmonic().derivative(3.0, 1) == doctest::Approx(6.0));
    CHECK(PotentialModel::pure_power(2).derivative(2.0, 2) == doctest::Approx(48.0));
}

TEST_CASE("derivatives agree with central differences of the next-lower order") {
    const double h = 1e-4;
    for (const auto& p : {PotentialModel::harmonic(), PotentialModel::pure_power(2),
                          PotentialModel::smoothed_power(2),
                          PotentialModel::pure_power(3).with_correction(2, 0.7)}) {
        for (int k = 1; k <= 4; ++k) {
            for (double x : {-9.5, -3.2, -0.75, 0.6, 2.1, 8.8}) {
                const double fd = (p.derivative(x + h, k - 1) - p.derivative(x - h, k - 1)) / (2 * h);
                const double ex = p.derivative(x, k);
                const double scale = std::max(std::abs(ex), std::abs(fd));
                if (scale > 1e-8) CHECK(std::abs(fd - ex) / scale < 1e-6);
            }
        }
    }
}

TEST_CASE("unsupported derivative order is rejected") {
    CHECK_THROWS(PotentialModel::harmonic().derivative(1.0, 7));
}

TEST_CASE("correction terms are homogeneous of their degree") {
    for (double rho : {2.0, 3.0}) {
        for (double x : {0.5, 1.7, -2.3}) {
            const double vk = abs_power_derivative(2.0, 0.7, x, 0);
            const double vk_scaled = abs_power_derivative(2.0, 0.7, rho * x, 0);
            CHECK(vk_scaled == doctest::Approx(std::pow(rho, 2.0) * vk).epsilon(1e-12));
            const double w = abs_power_derivative(4.0, -1.3, x, 0);
            const double w_scaled = abs_power_derivative(4.0, -1.3, rho * x, 0);
            CHECK(w_scaled == doctest::Approx(std::pow(rho, 4.0) * w).epsilon(1e-12));
        }
    }
}

TEST_CASE("validate_assumptions passes the admitted potentials") {
    CHECK(PotentialModel::harmonic().validate_assumptions(10, 1001).all_passed());
    CHECK(PotentialModel::smoothed_power(2).validate_assumptions(10, 1001).all_passed());
    CHECK(PotentialModel::pure_power(2).validate_assumptions(10, 1001).all_passed());
}

TEST_CASE("a double-well correction fails the V' check near its critical point") {
    // V = x^4 - 2 x^2 has V'(1) = 0; locate the critical point with a
    // root-finder oracle on V' first
    auto p = PotentialModel::pure_power(2).with_correction(2, -2.0);
    double lo = 0.5, hi = 1.5;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (p.derivative(mid, 1) < 0 ? lo : hi) = mid;
    }
    const double crit = 0.5 * (lo + hi);
    CHECK(crit == doctest::Approx(1.0).epsilon(1e-10));

    const auto rep = p.validate_assumptions(10, 2001);
    CHECK_FALSE(rep.all_passed());
    bool found = false;
    for (const auto& c : rep.checks) {
        if (c.name.find("V'") != std::string::npos && !c.passed) {
            found = true;
            CHECK(std::abs(std::abs(c.worst_x) - 1.0) < 0.02);
        }
    }
    CHECK(found);
}

TEST_CASE("construction guards") {
    CHECK_THROWS(PotentialModel::pure_power(0.5));
    CHECK_THROWS(PotentialModel::harmonic().with_correction(0, 1.0));
    CHECK_THROWS(PotentialModel::pure_power(2).with_correction(3, 1.0));  // odd degree
    CHECK_THROWS(PotentialModel::pure_power(2).with_correction(4, 1.0));  // above 2l-2
    // l=1 collapses to the harmonic kind
    CHECK(PotentialModel::pure_power(1).kind() == PotentialKind::Harmonic);
}
