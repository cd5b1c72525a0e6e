#pragma once

#include "floq/classical.hpp"
#include "floq/symbol.hpp"

namespace floq {

/// Function of the energy alone, cached on an E-grid with spline evaluation.
/// Complex-capable; the real part accessor covers the common case.
class AveragedSymbol {
public:
    AveragedSymbol() = default;
    AveragedSymbol(const VectorXd& E_nodes, const VectorXcd& values);

    const VectorXd& E_nodes() const { return E_nodes_; }
    const VectorXcd& values() const { return values_; }

    cplx operator()(double E) const;
    double real_at(double E) const { return (*this)(E).real(); }
    /// d/dE
    cplx derivative(double E) const;

    bool valid() const { return re_.valid(); }
    bool is_zero(double tol = 0.0) const;

private:
    VectorXd E_nodes_;
    VectorXcd values_;
    CubicSpline re_, im_;
};

/// orbit average of p over the closed orbit of energy E:
/// (1/T) [ int p(q, +sqrt(E-V)) dt + int p(q, -sqrt(E-V)) dt ]
double orbit_average(const std::function<double(double, double)>& p, const PotentialModel& model,
                     double E);
cplx orbit_average(const std::function<cplx(double, double)>& p, const PotentialModel& model,
                   double E);
/// static part of a sampled symbol, interpolated along the orbit
double orbit_average(const GridSymbol& g, const PotentialModel& model, double E);

/// tabulate the orbit average on an energy grid
AveragedSymbol average_on_grid(const std::function<cplx(double, double)>& p,
                               const PotentialModel& model, const VectorXd& E_nodes);

/// log-spaced energy nodes [lo, hi]
VectorXd log_energy_nodes(double lo, double hi, int n);

}  // namespace floq
