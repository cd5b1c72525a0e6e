#include "floq/classical.hpp"

namespace floq {

double turning_point(const PotentialModel& p, double E) {
    if (!(E > p(0.0)))
        throw NoOrbitError("turning_point: E must exceed V(0), no closed orbit");
    double hi = std::max(1.0, 2.0 * std::pow(E, 1.0 / (2.0 * p.l())));
    int guard = 0;
    while (p(hi) < E) {
        hi *= 2.0;
        if (++guard > 200) throw NoOrbitError("turning_point: no bracket found");
    }
    double lo = 0.0;
    for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        (p(mid) < E ? lo : hi) = mid;
    }
    double q = 0.5 * (lo + hi);
    for (int it = 0; it < 6; ++it) {
        const double vp = p.derivative(q, 1);
        if (vp == 0.0) break;
        q -= (p(q) - E) / vp;
    }
    if (std::abs(p(q) - E) > 1e-12 * std::max(1.0, std::abs(E)))
        throw NoOrbitError("turning_point: residual tolerance not reached");
    return q;
}

namespace {

/// E - V(q_M (1-s)) by a 6-term Taylor expansion around the turning point
double taylor_energy_gap(const PotentialModel& p, double qM, double s) {
    const double u = qM * s;
    double acc = 0.0, upow = u, sign = 1.0, fact = 1.0;
    for (int k = 1; k <= 6; ++k) {
        fact *= k;
        acc += sign * p.derivative(qM, k) * upow / fact;
        upow *= u;
        sign = -sign;
    }
    return acc;
}

/// 1 - |y|^{2l} without cancellation near |y| = 1
double one_minus_pow(double absy, double twol) {
    if (absy < 0.5) return 1.0 - std::pow(absy, twol);
    return -std::expm1(twol * std::log(absy));
}

constexpr double kTaylorBand = 0.02;

}  // namespace

Orbit::Orbit(const PotentialModel& p, double E)
    : model_(&p), E_(E), sqrtE_(std::sqrt(E)), pure_(false) {
    qM_ = turning_point(p, E);
    pure_ = (p.kind() == PotentialKind::PurePower || p.kind() == PotentialKind::Harmonic) &&
            p.corrections().empty();
    T_ = 2.0 * time_measure() * weighted_theta_integral([](double) { return 1.0; }, 0.0, M_PI);
}

Orbit::Orbit(const PotentialModel& p, double E, double q_M, double T)
    : model_(&p), E_(E), qM_(q_M), sqrtE_(std::sqrt(E)), T_(T) {
    pure_ = (p.kind() == PotentialKind::PurePower || p.kind() == PotentialKind::Harmonic) &&
            p.corrections().empty();
}

double Orbit::energy_minus_v(double y) const {
    const double ay = std::abs(y);
    const double s = 1.0 - ay;
    if (s < kTaylorBand) return taylor_energy_gap(*model_, qM_, s);
    return E_ - (*model_)(qM_ * ay);
}

double Orbit::tilde_v(double y) const {
    if (pure_) return 1.0;
    const double ay = std::abs(y);
    const double s = 1.0 - ay;
    if (s == 0.0) {
        const double vp = model_->derivative(qM_, 1);
        return std::sqrt(2.0 * model_->l() * E_ / (vp * qM_));
    }
    const double num = one_minus_pow(ay, 2.0 * model_->l());
    const double den = energy_minus_v(y) / E_;
    return std::sqrt(num / den);
}

double chebyshev_weight_ratio(double y, double l) {
    const double ay = std::abs(y);
    if (ay > 1.0) throw std::domain_error("chebyshev_weight_ratio: |y| <= 1 required");
    const double s = 1.0 - ay;
    if (s == 0.0) return 1.0 / std::sqrt(l);
    return std::sqrt(s * (2.0 - s) / one_minus_pow(ay, 2.0 * l));
}

double Orbit::weight(double theta) const {
    const double y = std::cos(theta);
    return tilde_v(y) * chebyshev_weight_ratio(y, model_->l());
}

double Orbit::theta_of(double x) const {
    double c = x / qM_;
    if (c > 1.0) {
        if (c > 1.0 + 1e-9) throw std::domain_error("Orbit: x outside [-q_M, q_M]");
        c = 1.0;
    }
    if (c < -1.0) {
        if (c < -1.0 - 1e-9) throw std::domain_error("Orbit: x outside [-q_M, q_M]");
        c = -1.0;
    }
    return std::acos(c);
}

double Orbit::t_S(double x) const {
    return time_integral([](double) { return 1.0; }, theta_of(x), M_PI);
}

double period(const PotentialModel& p, double E) { return Orbit(p, E).T(); }

double tilde_v(const PotentialModel& p, double E, double y) {
    if (std::abs(y) > 1.0) throw std::domain_error("tilde_v: y in [-1,1] required");
    return Orbit(p, E).tilde_v(y);
}

EnergySlice make_energy_slice(const PotentialModel& p, double E) {
    Orbit orb(p, E);
    EnergySlice s;
    s.E = E;
    s.q_M = orb.q_M();
    s.T = orb.T();
    s.q_bar = s.q_M * std::pow(E, -1.0 / (2.0 * p.l()));
    return s;
}

double time_of_flight(const PotentialModel& p, double E, double x0, double x) {
    Orbit orb(p, E);
    if (x0 > x) throw std::domain_error("time_of_flight: x0 <= x required");
    return orb.time_integral([](double) { return 1.0; }, orb.theta_of(x), orb.theta_of(x0));
}

namespace {

void leapfrog(const PotentialModel& p, FlowPoint& s, double dt) {
    s.xi -= 0.5 * dt * p.derivative(s.x, 1);
    s.x += dt * 2.0 * s.xi;
    s.xi -= 0.5 * dt * p.derivative(s.x, 1);
}

// Yoshida 6th-order composition coefficients (solution A)
constexpr double kW1 = -1.17767998417887;
constexpr double kW2 = 0.235573213359357;
constexpr double kW3 = 0.784513610477560;
constexpr double kW0 = 1.0 - 2.0 * (kW1 + kW2 + kW3);

void yoshida6(const PotentialModel& p, FlowPoint& s, double dt) {
    for (double w : {kW3, kW2, kW1, kW0, kW1, kW2, kW3}) leapfrog(p, s, w * dt);
}

}  // namespace

FlowPoint flow(const PotentialModel& p, FlowPoint start, double t) {
    if (t == 0.0) return start;
    const double E = start.energy(p);
    double h;
    if (E > p(0.0) * 1.0000001 + 1e-12) {
        h = period(p, E) / 512.0;
    } else {
        h = 1e-3;  // near the bottom of the well the motion is slow anyway
    }
    const long n = static_cast<long>(std::ceil(std::abs(t) / h));
    if (n > 100000000L) throw std::runtime_error("flow: step-size underflow");
    const double dt = t / static_cast<double>(n);
    FlowPoint s = start;
    for (long i = 0; i < n; ++i) yoshida6(p, s, dt);
    return s;
}

ActionAngle action_angle_harmonic(double x, double xi) {
    if (x == 0.0 && xi == 0.0)
        throw std::domain_error("action_angle_harmonic: angle undefined at the origin");
    return {x * x + xi * xi, std::atan2(x, xi)};
}

FlowPoint from_action_angle(double A, double theta) {
    const double r = std::sqrt(A);
    return {r * std::sin(theta), r * std::cos(theta)};
}

}  // namespace floq
