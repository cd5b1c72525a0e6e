#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "floq/classical.hpp"
#include "oracles.hpp"

using namespace floq;

TEST_CASE("turning points match closed forms") {
    CHECK(turning_point(PotentialModel::harmonic(), 4.0) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(turning_point(PotentialModel::pure_power(2), 16.0) == doctest::Approx(2.0).epsilon(1e-12));
    // <q>^4 = 4  <=>  q^2 = 1
    CHECK(turning_point(PotentialModel::smoothed_power(2), 4.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(turning_point(PotentialModel::smoothed_power(2), 0.5), NoOrbitError);
}

TEST_CASE("harmonic period is pi at every energy") {
    const auto p = PotentialModel::harmonic();
    for (double E : {1.0, 4.0, 100.0})
        CHECK(period(p, E) == doctest::Approx(M_PI).epsilon(1e-10));
}

TEST_CASE("quartic period matches the Beta-function oracle") {
    // T(1) = 2 int_0^1 dy / sqrt(1-y^4); oracle via tanh-sinh quadrature,
    // cross-checked against B(1/4,1/2)/4 in its Euler-integral form
    const double direct = 2.0 * oracles::de_quadrature_d(
                                    [](double y, double, double dr) {
                                        return 1.0 / std::sqrt(dr * (1.0 + y * (1.0 + y * (1.0 + y))));
                                    },
                                    0.0, 1.0);
    const double beta =
        0.5 * oracles::de_quadrature_d(
                  [](double, double dl, double dr) {
                      return std::pow(dl, -0.75) * std::pow(dr, -0.5);
                  },
                  0.0, 1.0);
    CHECK(direct == doctest::Approx(beta).epsilon(1e-9));
    CHECK(direct == doctest::Approx(2.62206).epsilon(1e-5));

    CHECK(period(PotentialModel::pure_power(2), 1.0) == doctest::Approx(direct).epsilon(1e-8));
}

TEST_CASE("quartic period scaling T(16E)/T(E) = 1/2") {
    const auto p = PotentialModel::pure_power(2);
    for (double E : {1.0, 7.3, 250.0})
        CHECK(period(p, 16.0 * E) / period(p, E) == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("period slope over E in [10,1e4] equals (1-l)/2l") {
    for (double l : {2.0, 3.0}) {
        const auto p = PotentialModel::pure_power(l);
        std::vector<double> lx, ly;
        for (double E = 10.0; E <= 1.0e4; E *= 4.0) {
            lx.push_back(std::log(E));
            ly.push_back(std::log(period(p, E)));
        }
        CHECK(std::abs(ls_slope(lx, ly) - (1.0 - l) / (2.0 * l)) < 0.02);
    }
}

TEST_CASE("flow on the harmonic oscillator follows x=cos 2t") {
    const auto p = PotentialModel::harmonic();
    const auto s = flow(p, {1.0, 0.0}, M_PI / 4.0);
    CHECK(s.x == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(std::abs(s.x) < 1e-9);
    CHECK(s.xi == doctest::Approx(-1.0).epsilon(1e-9));
}

TEST_CASE("flow returns after one period and is the identity at t=0") {
    for (const auto& p : {PotentialModel::harmonic(), PotentialModel::pure_power(2),
                          PotentialModel::smoothed_power(2)}) {
        const FlowPoint s0{1.3, 0.4};
        const double E = s0.energy(p);
        const double T = period(p, E);
        const auto s1 = flow(p, s0, T);
        CHECK(std::abs(s1.x - s0.x) < 1e-7);
        CHECK(std::abs(s1.xi - s0.xi) < 1e-7);
        const auto s2 = flow(p, s0, 0.0);
        CHECK(s2.x == s0.x);
        CHECK(s2.xi == s0.xi);
    }
}

TEST_CASE("energy conservation along the flow") {
    for (const auto& p : {PotentialModel::pure_power(2), PotentialModel::smoothed_power(3)}) {
        const FlowPoint s0{0.3, 2.1};
        const double E = s0.energy(p);
        const double T = period(p, E);
        for (double f : {0.25, 0.5, 1.0}) {
            const auto s = flow(p, s0, f * T);
            CHECK(std::abs(s.energy(p) - E) / E < 1e-9);
        }
    }
}

TEST_CASE("period via quadrature equals first return of the flow") {
    // oracle: RK4 integration until the trajectory returns to its start
    for (double l : {1.0, 2.0}) {
        const auto p = l == 1.0 ? PotentialModel::harmonic() : PotentialModel::pure_power(l);
        for (double E : {1.0, 10.0, 100.0}) {
            const double T = period(p, E);
            double x = 0.0, xi = std::sqrt(E);
            // integrate one nominal period with fine RK4 and bisect the
            // first upward crossing of x=0 near t=T
            const int steps = 40000;
            oracles::rk4_flow([&](double q) { return p.derivative(q, 1); }, x, xi, 0.98 * T, steps);
            double t_lo = 0.98 * T, t_hi = 0;
            double x_lo = x, xi_lo = xi;
            double dt = 0.04 * T / 400;
            double t = t_lo;
            for (int i = 0; i < 400; ++i) {
                double xp = x_lo, xip = xi_lo;
                oracles::rk4_flow([&](double q) { return p.derivative(q, 1); }, x_lo, xi_lo, dt, 10);
                t += dt;
                if (xp < 0 && x_lo >= 0 && xi_lo > 0) {
                    t_hi = t - dt * (x_lo) / (x_lo - xp);  // linear interpolation of crossing
                    break;
                }
                (void)xip;
            }
            REQUIRE(t_hi > 0);
            CHECK(std::abs(t_hi - T) / T < 1e-5);
        }
    }
}

TEST_CASE("time_of_flight spans half and quarter periods") {
    const auto h = PotentialModel::harmonic();
    const double E = 2.0;
    const double qm = turning_point(h, E);
    CHECK(time_of_flight(h, E, -qm, qm) == doctest::Approx(M_PI / 2).epsilon(1e-10));
    CHECK(time_of_flight(h, 1.0, 0.0, 1.0) == doctest::Approx(M_PI / 4).epsilon(1e-10));

    const auto q = PotentialModel::pure_power(2);
    CHECK(time_of_flight(q, 1.0, -1.0, 1.0) == doctest::Approx(0.5 * period(q, 1.0)).epsilon(1e-10));
    CHECK_THROWS(time_of_flight(q, 1.0, -2.0, 0.0));
}

TEST_CASE("tilde_v values and limits") {
    const auto pp = PotentialModel::pure_power(2);
    for (double y : {-0.99, -0.4, 0.0, 0.7, 1.0})
        CHECK(tilde_v(pp, 3.7, y) == doctest::Approx(1.0).epsilon(1e-13));

    const auto sp = PotentialModel::smoothed_power(2);
    CHECK(tilde_v(sp, 100.0, 0.0) == doctest::Approx(std::sqrt(1.0 / (1.0 - 0.01))).epsilon(1e-12));

    // Cauchy convergence toward the endpoint limit
    double prev = tilde_v(sp, 100.0, 1.0 - 1e-3);
    for (int k = 4; k <= 6; ++k) {
        const double cur = tilde_v(sp, 100.0, 1.0 - std::pow(10.0, -k));
        CHECK(std::abs(cur - tilde_v(sp, 100.0, 1.0)) < std::abs(prev - tilde_v(sp, 100.0, 1.0)) + 1e-12);
        prev = cur;
    }
    // closed-form limit sqrt(2 l E / (V'(q_M) q_M))
    const double qm = turning_point(sp, 100.0);
    const double lim = std::sqrt(4.0 * 100.0 / (sp.derivative(qm, 1) * qm));
    CHECK(tilde_v(sp, 100.0, 1.0) == doctest::Approx(lim).epsilon(1e-12));
}

TEST_CASE("tilde_v E-derivative bound: |d^k v/dE^k| E^k stays uniformly bounded") {
    const auto sp = PotentialModel::smoothed_power(2);
    double cap1 = 0, cap2 = 0;
    bool first_decade_done = false;
    double bound1 = 0, bound2 = 0;
    for (double E = 10.0; E <= 1.0e4 * 1.0001; E *= 1.9) {
        double q1 = 0, q2 = 0;
        for (double y = -1.0; y <= 1.0001; y += 0.125) {
            const double yy = std::min(y, 1.0);
            const double h = 1e-3 * E;
            const double vm = tilde_v(sp, E - h, yy), v0 = tilde_v(sp, E, yy),
                         vp = tilde_v(sp, E + h, yy);
            q1 = std::max(q1, std::abs((vp - vm) / (2 * h)) * E);
            q2 = std::max(q2, std::abs((vp - 2 * v0 + vm) / (h * h)) * E * E);
        }
        if (E < 100.0) {
            bound1 = std::max(bound1, q1);
            bound2 = std::max(bound2, q2);
        } else {
            first_decade_done = true;
            cap1 = std::max(cap1, q1);
            cap2 = std::max(cap2, q2);
        }
    }
    REQUIRE(first_decade_done);
    CHECK(cap1 <= 2.0 * bound1 + 1e-9);
    CHECK(cap2 <= 2.0 * bound2 + 1e-9);
}

TEST_CASE("action-angle map for the harmonic oscillator") {
    auto aa = action_angle_harmonic(0.0, 2.0);
    CHECK(aa.A == doctest::Approx(4.0));
    CHECK(aa.theta == doctest::Approx(0.0));
    aa = action_angle_harmonic(1.0, 0.0);
    CHECK(aa.A == doctest::Approx(1.0));
    CHECK(aa.theta == doctest::Approx(M_PI / 2));
    CHECK_THROWS(action_angle_harmonic(0.0, 0.0));

    // round trip on a deterministic pseudo-random sweep
    unsigned state = 12345;
    auto next = [&]() {
        state = state * 1664525u + 1013904223u;
        return 4.0 * (state / 4294967296.0) - 2.0;
    };
    for (int i = 0; i < 100; ++i) {
        const double x = next(), xi = next();
        if (x == 0 && xi == 0) continue;
        const auto v = action_angle_harmonic(x, xi);
        const auto back = from_action_angle(v.A, v.theta);
        CHECK(std::abs(back.x - x) < 1e-12);
        CHECK(std::abs(back.xi - xi) < 1e-12);
    }
}

TEST_CASE("energy slice invariants") {
    const auto p = PotentialModel::pure_power(2);
    for (double E : {10.0, 1e3, 1e5}) {
        const auto s = make_energy_slice(p, E);
        CHECK(std::abs(p(s.q_M) - E) / E < 1e-10);
        CHECK(s.T > 0);
        CHECK(s.q_bar == doctest::Approx(1.0).epsilon(1e-10));
    }
    // smoothed power: q_bar -> 1 from below as E grows
    const auto sp = PotentialModel::smoothed_power(2);
    const double qb1 = make_energy_slice(sp, 10.0).q_bar;
    const double qb2 = make_energy_slice(sp, 1e4).q_bar;
    CHECK(std::abs(qb2 - 1.0) < std::abs(qb1 - 1.0));
}
