#include "floq/averaging.hpp"

namespace floq {

AveragedSymbol::AveragedSymbol(const VectorXd& E_nodes, const VectorXcd& values)
    : E_nodes_(E_nodes), values_(values) {
    VectorXd re(values.size()), im(values.size());
    for (int i = 0; i < values.size(); ++i) {
        re[i] = values[i].real();
        im[i] = values[i].imag();
    }
    re_.build(E_nodes, re);
    im_.build(E_nodes, im);
}

cplx AveragedSymbol::operator()(double E) const {
    if (!re_.valid()) return 0.0;
    return {re_(E), im_(E)};
}

cplx AveragedSymbol::derivative(double E) const {
    if (!re_.valid()) return 0.0;
    return {re_.derivative(E), im_.derivative(E)};
}

bool AveragedSymbol::is_zero(double tol) const {
    if (!re_.valid()) return true;
    return values_.cwiseAbs().maxCoeff() <= tol;
}

cplx orbit_average(const std::function<cplx(double, double)>& p, const PotentialModel& model,
                   double E) {
    Orbit orb(model, E);
    const cplx up = orb.time_integral_c([&](double th) { return p(orb.q(th), orb.xi(th)); }, 0.0, M_PI);
    const cplx dn = orb.time_integral_c([&](double th) { return p(orb.q(th), -orb.xi(th)); }, 0.0, M_PI);
    return (up + dn) / orb.T();
}

double orbit_average(const std::function<double(double, double)>& p, const PotentialModel& model,
                     double E) {
    return orbit_average(std::function<cplx(double, double)>(
                             [&](double x, double xi) { return cplx(p(x, xi), 0.0); }),
                         model, E)
        .real();
}

double orbit_average(const GridSymbol& g, const PotentialModel& model, double E) {
    return orbit_average(std::function<cplx(double, double)>(
                             [&](double x, double xi) { return g.value_at(x, xi); }),
                         model, E)
        .real();
}

AveragedSymbol average_on_grid(const std::function<cplx(double, double)>& p,
                               const PotentialModel& model, const VectorXd& E_nodes) {
    VectorXcd vals(E_nodes.size());
    for (int i = 0; i < E_nodes.size(); ++i) vals[i] = orbit_average(p, model, E_nodes[i]);
    return AveragedSymbol(E_nodes, vals);
}

VectorXd log_energy_nodes(double lo, double hi, int n) {
    if (!(hi > lo) || lo <= 0 || n < 3) throw std::invalid_argument("log_energy_nodes: bad range");
    VectorXd nodes(n);
    const double r = std::log(hi / lo);
    for (int i = 0; i < n; ++i) nodes[i] = lo * std::exp(r * i / (n - 1));
    return nodes;
}

}  // namespace floq
