#pragma once

#include <cmath>

namespace floq {

/// Smooth low-energy cutoff: eta(E)=0 for E<1, eta(E)=1 for E>2, glued by the
/// standard exp(-1/t) mollifier. The exact profile is frozen here because
/// golden values downstream depend on it.
inline double eta_cutoff(double E) {
    if (E <= 1.0) return 0.0;
    if (E >= 2.0) return 1.0;
    const double a = std::exp(-1.0 / (E - 1.0));
    const double b = std::exp(-1.0 / (2.0 - E));
    return a / (a + b);
}

/// derivative of eta_cutoff (analytic, needed by bracket computations)
inline double eta_cutoff_derivative(double E) {
    if (E <= 1.0 || E >= 2.0) return 0.0;
    const double u = E - 1.0, v = 2.0 - E;
    const double a = std::exp(-1.0 / u), b = std::exp(-1.0 / v);
    const double ap = a / (u * u), bp = -b / (v * v);
    const double s = a + b;
    return (ap * s - a * (ap + bp)) / (s * s);
}

}  // namespace floq
