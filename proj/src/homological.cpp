#include "floq/homological.hpp"

namespace floq {

namespace {

/// Cosine-series representation of samples at theta_j = j pi / M, giving
/// spectrally accurate cumulative integrals int_theta^pi G dtheta'.
template <typename Scalar>
class CosSeries {
public:
    explicit CosSeries(const std::vector<Scalar>& samples) {
        const int M = static_cast<int>(samples.size()) - 1;
        a_.resize(M + 1);
        for (int m = 0; m <= M; ++m) {
            Scalar acc = 0.5 * samples[0] + 0.5 * (m % 2 == 0 ? 1.0 : -1.0) * samples[M];
            for (int j = 1; j < M; ++j) acc += samples[j] * std::cos(m * M_PI * j / M);
            a_[m] = (2.0 / M) * acc;
        }
    }

    /// int_theta^pi G dtheta'
    Scalar integral_from(double theta) const {
        const int M = static_cast<int>(a_.size()) - 1;
        Scalar acc = 0.5 * a_[0] * (M_PI - theta);
        for (int m = 1; m < M; ++m) acc -= a_[m] * (std::sin(m * theta) / m);
        acc -= 0.5 * a_[M] * (std::sin(M * theta) / M);
        return acc;
    }

private:
    std::vector<Scalar> a_;
};

cplx fd5(const CplxFn& f, double x, double xi, bool in_x, double h) {
    auto g = [&](double d) { return in_x ? f(x + d, xi) : f(x, xi + d); };
    return (-g(2 * h) + 8.0 * g(h) - 8.0 * g(-h) + g(-2 * h)) / (12.0 * h);
}

double step_for(double v) { return 1e-2 * (1.0 + 0.25 * std::abs(v)); }

/// {h0; chi} = V'(x) d_xi chi - 2 xi d_x chi by 5-point differences
cplx bracket_h0(const CplxFn& chi, const PotentialModel& model, double x, double xi) {
    const cplx dchi_dxi = fd5(chi, x, xi, false, step_for(xi));
    const cplx dchi_dx = fd5(chi, x, xi, true, step_for(x));
    return model.derivative(x, 1) * dchi_dxi - 2.0 * xi * dchi_dx;
}

double l1_norm(const ModeIndex& k) {
    double s = 0;
    for (int c : k) s += std::abs(c);
    return s;
}

double omega_dot(const VectorXd& omega, const ModeIndex& k) {
    double s = 0;
    for (size_t d = 0; d < k.size(); ++d) s += omega[static_cast<int>(d)] * k[d];
    return s;
}

}  // namespace

ChiProblem::ChiProblem(const PotentialModel& model, CplxFn p, ChiOptions opt)
    : model_(&model), p_(std::move(p)), opt_(opt), v0_(model(0.0)) {}

ChiProblem::Row ChiProblem::make_row(double E) const {
    Orbit orb(*model_, E);
    const int M = opt_.n_theta;
    const double h = M_PI / M;
    std::vector<double> w(M + 1);
    std::vector<cplx> pup(M + 1), pdn(M + 1);
    for (int j = 0; j <= M; ++j) {
        const double th = h * j;
        w[j] = orb.weight(th);
        const double q = orb.q(th), xi = orb.xi(th);
        pup[j] = p_(q, xi);
        pdn[j] = p_(q, -xi);
    }
    auto trap = [&](auto&& f) {  // trapezoid over theta with f(j)
        auto acc = f(0) * 0.5 + f(M) * 0.5;
        for (int j = 1; j < M; ++j) acc += f(j);
        return acc * h;
    };

    Row row;
    row.E = E;
    row.q_M = orb.q_M();
    row.T = orb.T();
    const double tm = orb.time_measure();

    row.avg = (tm / row.T) * trap([&](int j) { return (pup[j] + pdn[j]) * w[j]; });
    for (int j = 0; j <= M; ++j) {
        pup[j] -= row.avg;
        pdn[j] -= row.avg;
    }

    CosSeries<double> ws(w);
    std::vector<double> tS(M + 1);
    for (int j = 0; j <= M; ++j) tS[j] = tm * ws.integral_from(h * j);

    const double halfT = 0.5 * row.T;
    row.A = (tm / row.T) *
            trap([&](int j) { return (tS[j] * pup[j] + (halfT - tS[j]) * pdn[j]) * w[j]; });
    row.Ap = (tm / row.T) *
             trap([&](int j) { return (tS[j] * pdn[j] + (halfT - tS[j]) * pup[j]) * w[j]; });
    row.B = 0.5 * tm * trap([&](int j) { return pdn[j] * w[j]; });
    row.Bp = 0.5 * tm * trap([&](int j) { return pup[j] * w[j]; });

    // orbit mean of the raw solution, subtracted to normalize
    std::vector<cplx> gup(M + 1), gdn(M + 1);
    for (int j = 0; j <= M; ++j) {
        gup[j] = pup[j] * w[j];
        gdn[j] = pdn[j] * w[j];
    }
    CosSeries<cplx> cup(gup), cdn(gdn);
    row.mean = (tm / row.T) * trap([&](int j) {
        const cplx chi_up = row.A + row.B + tm * cup.integral_from(h * j);
        const cplx chi_dn = -(row.Ap + row.Bp + tm * cdn.integral_from(h * j));
        return (chi_up + chi_dn) * w[j];
    });
    return row;
}

cplx ChiProblem::chi_from_row(const Row& row, double x, double xi) const {
    Orbit orb(*model_, row.E, row.q_M, row.T);
    const double thx = orb.theta_of(x);
    if (xi >= 0.0) {
        const cplx C = orb.time_integral_c(
            [&](double th) { return p_(orb.q(th), orb.xi(th)) - row.avg; }, thx, M_PI);
        return row.A + row.B + C - row.mean;
    }
    const cplx C = orb.time_integral_c(
        [&](double th) { return p_(orb.q(th), -orb.xi(th)) - row.avg; }, thx, M_PI);
    return -(row.Ap + row.Bp + C) - row.mean;
}

void ChiProblem::build_tables(double e_lo, double e_hi) {
    const int n = opt_.e_nodes;
    e_lo = std::max(e_lo, v0_ + 0.05);
    if (!(e_hi > e_lo)) throw std::invalid_argument("ChiProblem: empty table range");
    table_lo_ = e_lo;
    table_hi_ = e_hi;
    t_nodes_.resize(n);
    VectorXd qM(n), T(n);
    VectorXd avg_re(n), avg_im(n), A_re(n), A_im(n), B_re(n), B_im(n);
    VectorXd Ap_re(n), Ap_im(n), Bp_re(n), Bp_im(n), mn_re(n), mn_im(n);
    const double ulo = std::log(e_lo - v0_), uhi = std::log(e_hi - v0_);
    for (int i = 0; i < n; ++i) {
        const double E = v0_ + std::exp(ulo + (uhi - ulo) * i / (n - 1));
        const Row r = make_row(E);
        t_nodes_[i] = std::log(E - v0_ + 0.25);
        qM[i] = r.q_M;
        T[i] = r.T;
        avg_re[i] = r.avg.real(); avg_im[i] = r.avg.imag();
        A_re[i] = r.A.real();     A_im[i] = r.A.imag();
        B_re[i] = r.B.real();     B_im[i] = r.B.imag();
        Ap_re[i] = r.Ap.real();   Ap_im[i] = r.Ap.imag();
        Bp_re[i] = r.Bp.real();   Bp_im[i] = r.Bp.imag();
        mn_re[i] = r.mean.real(); mn_im[i] = r.mean.imag();
    }
    s_qM_.build(t_nodes_, qM);
    s_T_.build(t_nodes_, T);
    s_avg_re_.build(t_nodes_, avg_re); s_avg_im_.build(t_nodes_, avg_im);
    s_A_re_.build(t_nodes_, A_re);     s_A_im_.build(t_nodes_, A_im);
    s_B_re_.build(t_nodes_, B_re);     s_B_im_.build(t_nodes_, B_im);
    s_Ap_re_.build(t_nodes_, Ap_re);   s_Ap_im_.build(t_nodes_, Ap_im);
    s_Bp_re_.build(t_nodes_, Bp_re);   s_Bp_im_.build(t_nodes_, Bp_im);
    s_mean_re_.build(t_nodes_, mn_re); s_mean_im_.build(t_nodes_, mn_im);
    tabled_ = true;
}

cplx ChiProblem::avg_at(double E) const {
    if (E <= v0_ + 1e-12 * std::max(1.0, std::abs(v0_))) return 0.0;
    if (tabled_ && E >= table_lo_ && E <= table_hi_) {
        const double t = std::log(E - v0_ + 0.25);
        return {s_avg_re_(t), s_avg_im_(t)};
    }
    return make_row(E).avg;
}

cplx ChiProblem::chi_at(double x, double xi) const {
    const double E = xi * xi + (*model_)(x);
    if (E <= v0_ + 1e-12 * std::max(1.0, std::abs(v0_))) return 0.0;
    Row row;
    if (tabled_ && E >= table_lo_ && E <= table_hi_) {
        const double t = std::log(E - v0_ + 0.25);
        row.E = E;
        row.q_M = turning_point(*model_, E);  // exact; splines would spoil the endpoint limits
        row.T = s_T_(t);
        row.avg = {s_avg_re_(t), s_avg_im_(t)};
        row.A = {s_A_re_(t), s_A_im_(t)};
        row.B = {s_B_re_(t), s_B_im_(t)};
        row.Ap = {s_Ap_re_(t), s_Ap_im_(t)};
        row.Bp = {s_Bp_re_(t), s_Bp_im_(t)};
        row.mean = {s_mean_re_(t), s_mean_im_(t)};
    } else {
        row = make_row(E);
    }
    return chi_from_row(row, x, xi);
}

std::vector<std::pair<double, double>> validation_points(const PhaseGrid& grid,
                                                         const PotentialModel& model, double e_lo,
                                                         double e_hi, int max_points) {
    std::vector<std::pair<double, double>> all;
    for (int i = 0; i < grid.x_nodes.size(); ++i) {
        for (int j = 0; j < grid.xi_nodes.size(); ++j) {
            const double x = grid.x_nodes[i], xi = grid.xi_nodes[j];
            const double E = xi * xi + model(x);
            if (E >= e_lo && E <= e_hi) all.emplace_back(x, xi);
        }
    }
    const size_t stride = std::max<size_t>(1, all.size() / std::max(1, max_points));
    std::vector<std::pair<double, double>> pts;
    for (size_t i = 0; i < all.size(); i += stride) pts.push_back(all[i]);
    return pts;
}

namespace {

GridSymbol sample_chi(const ChiProblem& prob, const PhaseGrid& grid, double e_cap,
                      SymbolGrade grade) {
    GridSymbol chi;
    chi.x_nodes = grid.x_nodes;
    chi.xi_nodes = grid.xi_nodes;
    chi.l = grid.l;
    chi.grade = grade;
    chi.values.resize(chi.nx(), chi.nxi());
    for (int i = 0; i < chi.nx(); ++i) {
        for (int j = 0; j < chi.nxi(); ++j) {
            const double x = grid.x_nodes[i], xi = grid.xi_nodes[j];
            const double E = xi * xi + prob.model()(x);
            chi.values(i, j) = (E > e_cap) ? 0.0 : prob.chi_at(x, xi);
        }
    }
    return chi;
}

double scale_on(const CplxFn& p, const std::vector<std::pair<double, double>>& pts) {
    double s = 0;
    for (auto [x, xi] : pts) s = std::max(s, std::abs(p(x, xi)));
    return s;
}

}  // namespace

HomologicalSolution chi_autonomous(const RealFn& p, const PotentialModel& model,
                                   const PhaseGrid& grid, ChiOptions opt) {
    CplxFn pc = [p](double x, double xi) { return cplx(p(x, xi), 0.0); };
    ChiProblem prob(model, pc, opt);

    const long npts = static_cast<long>(grid.x_nodes.size()) * grid.xi_nodes.size();
    const bool splined = opt.path == ChiOptions::Path::SplinedE ||
                         (opt.path == ChiOptions::Path::Auto && npts > 4096);
    const double e_cap = std::min(opt.e_valid_max, grid.e_safe > 0 ? grid.e_safe
                                                                   : std::numeric_limits<double>::max());
    if (splined) prob.build_tables(model(0.0) + 0.05, e_cap * 1.02);

    HomologicalSolution sol;
    sol.chi = sample_chi(prob, grid, e_cap, SymbolGrade{});
    sol.mean_free = true;

    if (opt.check_residual) {
        auto pts = validation_points(grid, model, model(0.0) + 0.5, 0.5 * e_cap, 200);
        if (!pts.empty()) {
            auto chi_eval = [&](double x, double xi) { return prob.chi_at(x, xi); };
            auto avg_eval = [&](double E) { return prob.avg_at(E); };
            sol.residual_sup = residual_autonomous(pc, chi_eval, avg_eval, model, pts);
            const double tol = opt.residual_tol * std::max(scale_on(pc, pts), 1e-300);
            if (sol.residual_sup > tol)
                throw NonConvergenceError("chi_autonomous: homological residual above tolerance",
                                          sol.residual_sup, tol);
        }
    }
    return sol;
}

HomologicalSolution chi_rescaled(const RealFn& p, const PotentialModel& model,
                                 const PhaseGrid& grid, const std::function<double(double)>& f_prime,
                                 double epsilon, ChiOptions opt) {
    // the rescaled solution is the autonomous one divided by 1 + eps f'(E)
    ChiOptions inner = opt;
    inner.check_residual = false;
    HomologicalSolution base = chi_autonomous(p, model, grid, inner);

    CplxFn pc = [p](double x, double xi) { return cplx(p(x, xi), 0.0); };
    ChiProblem prob(model, pc, inner);
    const double e_cap = std::min(opt.e_valid_max, grid.e_safe > 0 ? grid.e_safe
                                                                   : std::numeric_limits<double>::max());

    HomologicalSolution sol;
    sol.chi = base.chi;
    sol.mean_free = true;
    for (int i = 0; i < sol.chi.nx(); ++i) {
        for (int j = 0; j < sol.chi.nxi(); ++j) {
            const double E = sq(grid.xi_nodes[j]) + model(grid.x_nodes[i]);
            const double d = 1.0 + epsilon * f_prime(E);
            if (std::abs(d) < 0.5)
                throw RescalingSingularError("chi_rescaled: 1 + eps f'(E) too close to zero");
            sol.chi.values(i, j) /= d;
        }
    }

    if (opt.check_residual) {
        auto pts = validation_points(grid, model, model(0.0) + 0.5, 0.5 * e_cap, 200);
        if (!pts.empty()) {
            auto chi_eval = [&](double x, double xi) {
                const double E = xi * xi + model(x);
                const double d = 1.0 + epsilon * f_prime(E);
                if (std::abs(d) < 0.5)
                    throw RescalingSingularError("chi_rescaled: 1 + eps f'(E) too close to zero");
                return prob.chi_at(x, xi) / d;
            };
            auto avg_eval = [&](double E) { return prob.avg_at(E); };
            sol.residual_sup =
                residual_rescaled(pc, chi_eval, avg_eval, model, f_prime, epsilon, pts);
            const double tol = opt.residual_tol * std::max(scale_on(pc, pts), 1e-300);
            if (sol.residual_sup > tol)
                throw NonConvergenceError("chi_rescaled: homological residual above tolerance",
                                          sol.residual_sup, tol);
        }
    }
    return sol;
}

HomologicalSolution chi_torus(const GridSymbol& p, const VectorXd& omega, double gamma,
                              double tau) {
    p.check_consistent();
    HomologicalSolution sol;
    sol.chi = p;
    sol.chi.values.setZero();  // chi_0 = 0
    sol.chi.angle_modes.clear();
    double residual = 0;
    for (const auto& [k, mode] : p.angle_modes) {
        const double dot = omega_dot(omega, k);
        const double norm = mode.cwiseAbs().maxCoeff();
        const double bound = gamma * std::pow(std::max(1.0, l1_norm(k)), -tau);
        if (norm > 0 && std::abs(dot) < bound)
            throw SmallDenominatorError("chi_torus: |omega.k| below the Diophantine bound", k, 0,
                                        std::abs(dot));
        if (dot == 0.0) continue;  // zero mode with zero denominator contributes nothing
        const MatrixXcd chik = mode / cplx(0.0, -dot);  // -i (omega.k) chi_k = p_k
        sol.chi.angle_modes[k] = chik;
        residual = std::max(residual, (cplx(0.0, -dot) * chik - mode).cwiseAbs().maxCoeff());
    }
    sol.residual_sup = residual;
    sol.mean_free = false;  // normalized by chibar = 0, not by the orbit average
    return sol;
}

HarmonicChiSolution chi_harmonic_modes(const std::map<ModeIndex, CplxFn>& p_modes,
                                       const PotentialModel& model, const PhaseGrid& grid,
                                       const VectorXd& omega, double gamma, double tau,
                                       HarmonicChiOptions opt) {
    if (model.l() != 1.0)
        throw std::invalid_argument("chi_harmonic: requires the harmonic case l = 1");
    // orbital frequency nu = 2 pi / T; T must not depend on E
    const double T1 = period(model, 1.0), T2 = period(model, 100.0);
    if (std::abs(T1 - T2) > 1e-8 * T1)
        throw std::invalid_argument("chi_harmonic: period depends on E");
    const double nu = 2.0 * M_PI / T1;

    VectorXd a_nodes = opt.a_nodes;
    if (a_nodes.size() == 0) a_nodes = log_energy_nodes(opt.a_lo, opt.a_hi, opt.n_a);
    const int nA = static_cast<int>(a_nodes.size());
    const int K0 = opt.k0_max;
    const int NT = opt.n_theta;

    HarmonicChiSolution out;
    out.chi.x_nodes = grid.x_nodes;
    out.chi.xi_nodes = grid.xi_nodes;
    out.chi.l = model.l();
    out.chi.values = MatrixXcd::Zero(out.chi.nx(), out.chi.nxi());

    VectorXcd head_vals = VectorXcd::Zero(nA);
    double scale = 0, tail_abs = 0;

    for (const auto& [k, pk] : p_modes) {
        // theta-DFT of the mode on every action ring
        MatrixXcd hat = MatrixXcd::Zero(nA, 2 * K0 + 1);
        for (int ia = 0; ia < nA; ++ia) {
            const double r = std::sqrt(a_nodes[ia]);
            std::vector<cplx> f(NT);
            for (int j = 0; j < NT; ++j) {
                const double th = 2.0 * M_PI * j / NT;
                f[j] = pk(r * std::sin(th), r * std::cos(th));
            }
            for (int k0 = -K0; k0 <= K0; ++k0) {
                cplx acc = 0;
                for (int j = 0; j < NT; ++j)
                    acc += f[j] * std::exp(cplx(0.0, -k0 * 2.0 * M_PI * j / NT));
                hat(ia, k0 + K0) = acc / static_cast<double>(NT);
            }
        }
        scale = std::max(scale, hat.cwiseAbs().maxCoeff());
        tail_abs = std::max({tail_abs, hat.col(0).cwiseAbs().maxCoeff(),
                             hat.col(2 * K0).cwiseAbs().maxCoeff()});

        const double wk = omega_dot(omega, k);
        const bool k_zero = l1_norm(k) == 0.0;
        MatrixXcd chihat = MatrixXcd::Zero(nA, 2 * K0 + 1);
        for (int k0 = -K0; k0 <= K0; ++k0) {
            if (k_zero && k0 == 0) {
                head_vals += hat.col(K0);
                continue;
            }
            const double den = wk + nu * k0;
            const double bound = gamma / (1.0 + std::pow(l1_norm(k), tau));
            const double coeff_mass = hat.col(k0 + K0).cwiseAbs().maxCoeff();
            if (std::abs(den) < bound) {
                if (coeff_mass > 1e-13 * std::max(scale, 1.0))
                    throw SmallDenominatorError(
                        "chi_harmonic: |omega.k + nu k0| below the Diophantine bound", k, k0,
                        std::abs(den));
                continue;
            }
            out.worst_margin = std::min(out.worst_margin, std::abs(den) - bound);
            chihat.col(k0 + K0) = hat.col(k0 + K0) / cplx(0.0, den);  // chi = p / (i (nu k0 + w.k))
            // retained-mode defect of {h0,chi} - chidot + p = head
            for (int ia = 0; ia < nA; ++ia) {
                const cplx defect =
                    cplx(0.0, -den) * chihat(ia, k0 + K0) + hat(ia, k0 + K0);
                out.residual = std::max(out.residual, std::abs(defect));
            }
        }

        // back-sample chi_k(x, xi) = sum_k0 spline(A) e^{i k0 theta}
        std::vector<CubicSpline> sre(2 * K0 + 1), sim(2 * K0 + 1);
        for (int c = 0; c <= 2 * K0; ++c) {
            VectorXd re(nA), im(nA);
            for (int ia = 0; ia < nA; ++ia) {
                re[ia] = chihat(ia, c).real();
                im[ia] = chihat(ia, c).imag();
            }
            sre[c].build(a_nodes, re);
            sim[c].build(a_nodes, im);
        }
        MatrixXcd chik = MatrixXcd::Zero(out.chi.nx(), out.chi.nxi());
        for (int i = 0; i < out.chi.nx(); ++i) {
            for (int j = 0; j < out.chi.nxi(); ++j) {
                const double x = grid.x_nodes[i], xi = grid.xi_nodes[j];
                const double A = x * x + xi * xi;
                if (A < a_nodes[0] || A > a_nodes[nA - 1]) continue;
                const double th = std::atan2(x, xi);
                cplx acc = 0;
                for (int k0 = -K0; k0 <= K0; ++k0) {
                    const int c = k0 + K0;
                    acc += cplx(sre[c](A), sim[c](A)) * std::exp(cplx(0.0, k0 * th));
                }
                chik(i, j) = acc;
            }
        }
        if (k_zero)
            out.chi.values = chik;
        else
            out.chi.angle_modes[k] = chik;
    }

    out.head = AveragedSymbol(a_nodes, head_vals);
    out.tail = scale > 0 ? tail_abs / scale : 0.0;
    return out;
}

HomologicalSolution chi_harmonic(const GridSymbol& p, const PotentialModel& model,
                                 const VectorXd& omega, double gamma, double tau,
                                 HarmonicChiOptions opt) {
    p.check_consistent();
    std::map<ModeIndex, CplxFn> modes;
    const int n = static_cast<int>(omega.size());
    modes[ModeIndex(n, 0)] = [&p](double x, double xi) { return p.value_at(x, xi); };
    for (const auto& [k, m] : p.angle_modes) {
        const MatrixXcd* mp = &m;
        modes[k] = [&p, mp](double x, double xi) {
            return interp2(p.x_nodes, p.xi_nodes, *mp, x, xi);
        };
    }
    PhaseGrid grid{p.x_nodes, p.xi_nodes, p.l, 0.0};
    HarmonicChiSolution rich = chi_harmonic_modes(modes, model, grid, omega, gamma, tau, opt);
    HomologicalSolution sol;
    sol.chi = std::move(rich.chi);
    sol.residual_sup = rich.residual;
    sol.mean_free = false;
    return sol;
}

double residual_autonomous(const CplxFn& p, const CplxFn& chi, const std::function<cplx(double)>& avg,
                           const PotentialModel& model,
                           const std::vector<std::pair<double, double>>& pts) {
    double sup = 0;
    for (auto [x, xi] : pts) {
        const double E = xi * xi + model(x);
        const cplx defect = p(x, xi) + bracket_h0(chi, model, x, xi) - avg(E);
        sup = std::max(sup, std::abs(defect));
    }
    return sup;
}

double residual_rescaled(const CplxFn& p, const CplxFn& chi, const std::function<cplx(double)>& avg,
                         const PotentialModel& model, const std::function<double(double)>& f_prime,
                         double epsilon, const std::vector<std::pair<double, double>>& pts) {
    double sup = 0;
    for (auto [x, xi] : pts) {
        const double E = xi * xi + model(x);
        const cplx defect =
            p(x, xi) + (1.0 + epsilon * f_prime(E)) * bracket_h0(chi, model, x, xi) - avg(E);
        sup = std::max(sup, std::abs(defect));
    }
    return sup;
}

double residual_torus(const GridSymbol& p, const GridSymbol& chi, const VectorXd& omega) {
    double sup = 0;
    for (const auto& [k, mode] : p.angle_modes) {
        if (l1_norm(k) == 0) continue;
        const double dot = omega_dot(omega, k);
        auto it = chi.angle_modes.find(k);
        MatrixXcd chik = it == chi.angle_modes.end()
                             ? MatrixXcd::Zero(mode.rows(), mode.cols())
                             : it->second;
        sup = std::max(sup, (cplx(0.0, -dot) * chik - mode).cwiseAbs().maxCoeff());
    }
    return sup;
}

double residual_check(const CplxFn& p, const CplxFn& chi, const std::function<cplx(double)>& avg,
                      const PotentialModel& model, HomologicalEquation tag,
                      const std::vector<std::pair<double, double>>& pts,
                      const std::function<double(double)>& f_prime, double epsilon) {
    switch (tag) {
        case HomologicalEquation::Autonomous:
            return residual_autonomous(p, chi, avg, model, pts);
        case HomologicalEquation::Rescaled:
            if (!f_prime) throw std::invalid_argument("residual_check: f_prime required");
            return residual_rescaled(p, chi, avg, model, f_prime, epsilon, pts);
        default:
            throw std::invalid_argument(
                "residual_check: torus/harmonic defects use the mode-algebra overloads");
    }
}

}  // namespace floq
