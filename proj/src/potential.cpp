#include "floq/potential.hpp"

#include <limits>

namespace floq {

namespace {
constexpr int kMaxDerivative = 6;
}

double bracket_power_derivative(double m, double x, int k) {
    if (k < 0 || k > kMaxDerivative)
        throw std::invalid_argument("bracket_power_derivative: unsupported order");
    // V = (1+x^2)^(m/2); V^(k) = P_k(x) * (1+x^2)^(m/2-k) with
    // P_k = P_{k-1}' * (1+x^2) + (m - 2(k-1)) * x * P_{k-1}
    // P_k tracked by coefficient vector.
    std::vector<double> p{1.0};
    for (int j = 1; j <= k; ++j) {
        std::vector<double> q(p.size() + 1, 0.0);
        const double e = m - 2.0 * (j - 1);
        for (size_t a = 0; a < p.size(); ++a) {
            if (a >= 1) q[a - 1] += p[a] * static_cast<double>(a);  // P'
            q[a + 1] += p[a] * static_cast<double>(a);              // P' * x^2
            q[a + 1] += p[a] * e;                                   // e*x*P
        }
        p = std::move(q);
    }
    double poly = 0.0, xp = 1.0;
    for (double c : p) {
        poly += c * xp;
        xp *= x;
    }
    return poly * std::pow(1.0 + x * x, 0.5 * m - k);
}

double abs_power_derivative(double p, double coeff, double x, int k) {
    if (k < 0 || k > kMaxDerivative)
        throw std::invalid_argument("abs_power_derivative: unsupported order");
    double c = coeff;
    for (int j = 0; j < k; ++j) c *= (p - j);
    const double e = p - k;
    if (x == 0.0) {
        if (c == 0.0) return 0.0;
        if (e > 0.0) return 0.0;
        if (e == 0.0) return (k % 2 == 0) ? c : 0.0;
        return std::numeric_limits<double>::quiet_NaN();  // singular at the origin
    }
    const double s = (x < 0.0 && k % 2 == 1) ? -1.0 : 1.0;
    return s * c * std::pow(std::abs(x), e);
}

PotentialModel PotentialModel::harmonic() { return PotentialModel(PotentialKind::Harmonic, 1.0); }

PotentialModel PotentialModel::pure_power(double l) {
    if (l < 1.0) throw std::invalid_argument("PotentialModel: l >= 1 required");
    if (l == 1.0) return harmonic();  // l=1 is the harmonic case by assumption
    return PotentialModel(PotentialKind::PurePower, l);
}

PotentialModel PotentialModel::smoothed_power(double l) {
    if (l < 1.0) throw std::invalid_argument("PotentialModel: l >= 1 required");
    if (l == 1.0) return harmonic();
    return PotentialModel(PotentialKind::SmoothedPower, l);
}

PotentialModel PotentialModel::with_correction(double degree, double coefficient) const {
    if (kind_ == PotentialKind::Harmonic)
        throw std::invalid_argument("PotentialModel: harmonic potential admits no corrections");
    if (degree < 0 || degree > 2.0 * l_ - 2.0)
        throw std::invalid_argument("PotentialModel: correction degree must lie in [0, 2l-2]");
    if (std::abs(degree / 2.0 - std::round(degree / 2.0)) > 1e-12)
        throw std::invalid_argument("PotentialModel: correction degree must be even");
    PotentialModel out(*this);
    out.corrections_.push_back({degree, coefficient});
    return out;
}

double PotentialModel::derivative(double x, int k) const {
    if (k < 0 || k > kMaxDerivative)
        throw std::invalid_argument("PotentialModel: derivative order k <= 6 required");
    double v = 0.0;
    switch (kind_) {
        case PotentialKind::Harmonic:
            v = abs_power_derivative(2.0, 1.0, x, k);
            break;
        case PotentialKind::PurePower:
            v = abs_power_derivative(2.0 * l_, 1.0, x, k);
            break;
        case PotentialKind::SmoothedPower:
            v = bracket_power_derivative(2.0 * l_, x, k);
            break;
    }
    for (const auto& t : corrections_) v += abs_power_derivative(t.degree, t.coefficient, x, k);
    return v;
}

ValidationReport PotentialModel::validate_assumptions(double grid_extent, int n_points) const {
    if (grid_extent <= 0) throw std::invalid_argument("validate_assumptions: extent > 0 required");
    if (n_points < 16) throw std::invalid_argument("validate_assumptions: n_points >= 16 required");

    ValidationReport rep;
    AssumptionCheck sym{"symmetry V(x)=V(-x)"};
    AssumptionCheck mono{"V'(x) != 0 for x != 0"};
    AssumptionCheck growth{"V(x)/|x|^(2l) -> 1"};
    AssumptionCheck harm{"l=1 implies harmonic"};

    for (int i = 0; i < n_points; ++i) {
        const double x = -grid_extent + 2.0 * grid_extent * i / (n_points - 1);
        const double d = std::abs((*this)(x) - (*this)(-x));
        if (d > std::abs(sym.worst_value)) {
            sym.worst_value = d;
            sym.worst_x = x;
        }
        if (x != 0.0) {
            const double vp = std::abs(derivative(x, 1));
            // scale-aware zero test
            const double scale = std::abs(x) * std::pow(std::abs(x), 2.0 * l_ - 2.0) + 1.0;
            if (!mono.passed) {
                // keep first failure
            } else if (vp <= 1e-8 * scale) {
                mono.passed = false;
                mono.worst_x = x;
                mono.worst_value = vp;
            }
        }
    }
    sym.passed = sym.worst_value <= 1e-10;

    // growth: V/|x|^(2l) must drift to 1 along doubling sample points
    double prev_err = std::numeric_limits<double>::infinity();
    bool shrinking = true;
    double final_err = 0;
    for (double x : {grid_extent, 2.0 * grid_extent, 4.0 * grid_extent, 8.0 * grid_extent}) {
        const double err = std::abs((*this)(x) / std::pow(std::abs(x), 2.0 * l_) - 1.0);
        if (err > prev_err * 1.0001 + 1e-12) shrinking = false;
        prev_err = err;
        final_err = err;
        if (err > std::abs(growth.worst_value)) {
            growth.worst_value = err;
            growth.worst_x = x;
        }
    }
    growth.passed = shrinking && final_err < 0.25;

    harm.passed = !(l_ == 1.0 && kind_ != PotentialKind::Harmonic);

    rep.checks = {sym, mono, growth, harm};
    return rep;
}

}  // namespace floq
