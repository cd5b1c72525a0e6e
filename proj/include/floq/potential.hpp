#pragma once

#include "floq/numeric.hpp"

namespace floq {

/// d^k/dx^k of <x>^m = (1+x^2)^(m/2), closed form via a polynomial recurrence
double bracket_power_derivative(double m, double x, int k);

/// d^k/dx^k of |x|^p (real p), with the even-symmetry convention at x=0
double abs_power_derivative(double p, double coeff, double x, int k);

enum class PotentialKind { Harmonic, PurePower, SmoothedPower };

/// One homogeneous correction c*|x|^degree added below the leading growth
struct CorrectionTerm {
    double degree = 0;
    double coefficient = 0;
};

struct AssumptionCheck {
    std::string name;
    bool passed = true;
    double worst_x = 0;      // grid point where the check is worst
    double worst_value = 0;  // the offending quantity there
};

struct ValidationReport {
    std::vector<AssumptionCheck> checks;
    bool all_passed() const {
        for (const auto& c : checks)
            if (!c.passed) return false;
        return true;
    }
};

/// Confining even potential with derivative access and asymptotic data.
/// Kinds: harmonic V=x^2 (forced when l=1), pure power V=|x|^(2l), and the
/// smoothed power V=<x>^(2l). Optional homogeneous corrections c*|x|^deg with
/// even degree <= 2l-2 refine the growth ladder. Immutable after construction.
class PotentialModel {
public:
    static PotentialModel harmonic();
    static PotentialModel pure_power(double l);
    static PotentialModel smoothed_power(double l);

    PotentialModel with_correction(double degree, double coefficient) const;

    PotentialKind kind() const { return kind_; }
    double l() const { return l_; }
    const std::vector<CorrectionTerm>& corrections() const { return corrections_; }

    double operator()(double x) const { return derivative(x, 0); }
    /// d^k V/dx^k, closed form; k <= 6 supported
    double derivative(double x, int k) const;

    ValidationReport validate_assumptions(double grid_extent, int n_points) const;

private:
    PotentialModel(PotentialKind kind, double l) : kind_(kind), l_(l) {}
    PotentialKind kind_;
    double l_;
    std::vector<CorrectionTerm> corrections_;
};

/// spec-facing free function alias
inline double eval_derivative(const PotentialModel& p, double x, int k) {
    return p.derivative(x, k);
}

inline ValidationReport validate_assumptions(const PotentialModel& p, double grid_extent,
                                             int n_points) {
    return p.validate_assumptions(grid_extent, n_points);
}

}  // namespace floq
