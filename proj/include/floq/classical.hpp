#pragma once

#include "floq/potential.hpp"

namespace floq {

/// Phase-space point of h0 = xi^2 + V(x)
struct FlowPoint {
    double x = 0;
    double xi = 0;
    double energy(const PotentialModel& p) const { return xi * xi + p(x); }
};

/// Per-energy cache: turning point, period, and the scaled turning point
/// q_bar = q_M * E^(-1/2l)
struct EnergySlice {
    double E = 0;
    double q_M = 0;
    double T = 0;
    double q_bar = 0;
};

struct NoOrbitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// unique positive root of V(q)=E; relative residual <= 1e-12
double turning_point(const PotentialModel& p, double E);

/// T(E) = 2 * int_0^{q_M} dq / sqrt(E - V(q)) under the flow xdot=2xi, xidot=-V'
double period(const PotentialModel& p, double E);

EnergySlice make_energy_slice(const PotentialModel& p, double E);

/// v~(E,y) = sqrt((1-|y|^{2l}) / (1-V(q_M y)/E)); removable singularity at
/// y=+-1 resolved by a one-sided Taylor limit. Identically 1 for pure powers.
double tilde_v(const PotentialModel& p, double E, double y);

/// integrate xdot = 2 xi, xidot = -V'(x) with a 6th-order symmetric
/// composition integrator; relative energy drift <= 1e-9 per period
FlowPoint flow(const PotentialModel& p, FlowPoint start, double t);

/// t = int_{x0}^{x} dq / (2 sqrt(E-V(q))), endpoint-regularized
double time_of_flight(const PotentialModel& p, double E, double x0, double x);

/// harmonic action-angle map x = sqrt(A) sin(theta), xi = sqrt(A) cos(theta)
struct ActionAngle {
    double A = 0;
    double theta = 0;
};
ActionAngle action_angle_harmonic(double x, double xi);
FlowPoint from_action_angle(double A, double theta);

/// sqrt((1-y^2)/(1-|y|^{2l})): folds the orbit endpoint weight into the
/// y = cos(theta) substitution; finite limit 1/sqrt(l) at y = +-1
double chebyshev_weight_ratio(double y, double l);

/// Regularized quadrature context for one closed orbit of h0.
/// Every orbit integral is mapped to theta in [0,pi] via q = q_M cos(theta);
/// the endpoint weight 1/sqrt(1-|y|^{2l}) is folded into the smooth factor
/// weight(theta) = v~ * sqrt((1-y^2)/(1-|y|^{2l})) so plain Gauss panels apply.
class Orbit {
public:
    Orbit(const PotentialModel& p, double E);
    /// trusted-cache constructor: q_M and T supplied by the caller
    Orbit(const PotentialModel& p, double E, double q_M, double T);

    const PotentialModel& model() const { return *model_; }
    double E() const { return E_; }
    double q_M() const { return qM_; }
    double T() const { return T_; }

    double q(double theta) const { return qM_ * std::cos(theta); }
    /// E - V(q(y)), Taylor-stabilized near the turning points
    double energy_minus_v(double y) const;
    /// |xi| on the orbit at angle theta
    double xi(double theta) const { return std::sqrt(std::max(0.0, energy_minus_v(std::cos(theta)))); }
    /// v~ * sqrt((1-y^2)/(1-|y|^{2l})) at y = cos(theta)
    double weight(double theta) const;
    double tilde_v(double y) const;

    /// dt = time_measure * weight(theta) dtheta along a momentum branch
    double time_measure() const { return qM_ / (2.0 * sqrtE_); }

    /// time from -q_M to x along one branch
    double t_S(double x) const;
    double theta_of(double x) const;

    /// int_a^b f(theta) weight(theta) dtheta * time_measure, panel-split at pi/2
    template <typename F>
    double time_integral(const F& f, double a, double b) const {
        return time_measure() * weighted_theta_integral(f, a, b);
    }
    template <typename F>
    cplx time_integral_c(const F& f, double a, double b) const {
        return time_measure() * weighted_theta_integral_c(f, a, b);
    }

    template <typename F>
    double weighted_theta_integral(const F& f, double a, double b) const {
        auto g = [&](double th) { return f(th) * weight(th); };
        return split_integral(g, a, b);
    }
    template <typename F>
    cplx weighted_theta_integral_c(const F& f, double a, double b) const {
        auto gr = [&](double th) { return std::real(f(th)) * weight(th); };
        auto gi = [&](double th) { return std::imag(f(th)) * weight(th); };
        return {split_integral(gr, a, b), split_integral(gi, a, b)};
    }

private:
    template <typename F>
    double split_integral(const F& g, double a, double b) const {
        const double mid = M_PI / 2;
        if (a < mid && b > mid)
            return gl96().integrate(g, a, mid) + gl96().integrate(g, mid, b);
        return gl96().integrate(g, a, b);
    }

    const PotentialModel* model_;
    double E_, qM_, sqrtE_, T_;
    bool pure_;  // v~ == 1 exactly
};

}  // namespace floq
