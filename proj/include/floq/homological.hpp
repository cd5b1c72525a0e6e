#pragma once

#include "floq/averaging.hpp"
#include "floq/cutoff.hpp"

namespace floq {

struct NonConvergenceError : std::runtime_error {
    NonConvergenceError(const std::string& msg, double residual, double tolerance)
        : std::runtime_error(msg), residual(residual), tolerance(tolerance) {}
    double residual;
    double tolerance;
};

struct SmallDenominatorError : std::runtime_error {
    SmallDenominatorError(const std::string& msg, ModeIndex k, int k0, double margin)
        : std::runtime_error(msg), k(std::move(k)), k0(k0), margin(margin) {}
    ModeIndex k;
    int k0;
    double margin;
};

struct RescalingSingularError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Solution of one homological equation, with the verified residual of the
/// defining equation as ground truth.
struct HomologicalSolution {
    GridSymbol chi;
    double residual_sup = 0;
    bool mean_free = false;
};

using CplxFn = std::function<cplx(double, double)>;
using RealFn = std::function<double(double, double)>;

struct ChiOptions {
    enum class Path { Auto, Pointwise, SplinedE };
    Path path = Path::Auto;
    int n_theta = 128;          ///< uniform theta samples for per-energy rows
    int e_nodes = 96;           ///< energy table size for the splined path
    double e_valid_max = std::numeric_limits<double>::infinity();  ///< mask grid above
    double residual_tol = 1e-4; ///< relative to the scale of p
    bool check_residual = true;
};

/// Continuous solver for p + {h; chi} = <p> along the orbits of h0 (optionally
/// rescaled by 1 + eps f'(E)). The solution is assembled from the branch
/// decomposition in (E, x): two energy-only pieces plus a cumulative orbit
/// integral, with the lower momentum branch obtained by time reversal.
/// Solutions are normalized mean-free along every orbit.
class ChiProblem {
public:
    ChiProblem(const PotentialModel& model, CplxFn p, ChiOptions opt = {});

    /// build the energy tables used by the splined evaluation path
    void build_tables(double e_lo, double e_hi);
    bool has_tables() const { return tabled_; }

    cplx chi_at(double x, double xi) const;
    cplx avg_at(double E) const;

    const PotentialModel& model() const { return *model_; }

private:
    struct Row {
        double E = 0, q_M = 0, T = 0;
        cplx avg{}, A{}, B{}, Ap{}, Bp{}, mean{};
    };
    Row make_row(double E) const;
    cplx chi_from_row(const Row& row, double x, double xi) const;

    const PotentialModel* model_;
    CplxFn p_;
    ChiOptions opt_;
    bool tabled_ = false;
    double table_lo_ = 0, table_hi_ = 0, v0_ = 0;
    VectorXd t_nodes_;  // spline abscissa: log(E - V(0) + 1/4)
    CubicSpline s_qM_, s_T_;
    CubicSpline s_avg_re_, s_avg_im_, s_A_re_, s_A_im_, s_B_re_, s_B_im_;
    CubicSpline s_Ap_re_, s_Ap_im_, s_Bp_re_, s_Bp_im_, s_mean_re_, s_mean_im_;
};

/// p + {h0; chi} = <p>
HomologicalSolution chi_autonomous(const RealFn& p, const PotentialModel& model,
                                   const PhaseGrid& grid, ChiOptions opt = {});

/// p + {h0 + eps f(h0); chi} = <p>; chi is the autonomous solution divided by
/// 1 + eps f'(E)
HomologicalSolution chi_rescaled(const RealFn& p, const PotentialModel& model,
                                 const PhaseGrid& grid, const std::function<double(double)>& f_prime,
                                 double epsilon, ChiOptions opt = {});

/// -omega . dchi/dphi = p - pbar, solved mode by mode; chi_0 = 0
HomologicalSolution chi_torus(const GridSymbol& p, const VectorXd& omega, double gamma, double tau);

struct HarmonicChiOptions {
    int k0_max = 24;       ///< retained orbit-angle modes
    int n_theta = 64;      ///< orbit-angle samples per energy
    VectorXd a_nodes;      ///< action grid; defaults to log nodes if empty
    double a_lo = 0.5, a_hi = 2000.0;
    int n_a = 96;
};

/// Rich output of the harmonic (l=1) solver of {h0,chi} - chidot + p = <pbar>
struct HarmonicChiSolution {
    GridSymbol chi;                       ///< sampled with angle_modes
    AveragedSymbol head;                  ///< overline<p> as a function of A
    double residual = 0;                  ///< retained-mode equation defect
    double tail = 0;                      ///< relative mass at the k0 cutoff
    double worst_margin = std::numeric_limits<double>::infinity();
};

HarmonicChiSolution chi_harmonic_modes(const std::map<ModeIndex, CplxFn>& p_modes,
                                       const PotentialModel& model, const PhaseGrid& grid,
                                       const VectorXd& omega, double gamma, double tau,
                                       HarmonicChiOptions opt = {});

/// spec-facing wrapper on a sampled symbol
HomologicalSolution chi_harmonic(const GridSymbol& p, const PotentialModel& model,
                                 const VectorXd& omega, double gamma, double tau,
                                 HarmonicChiOptions opt = {});

enum class HomologicalEquation { Autonomous, Rescaled, Torus, Harmonic };

/// sup-norm of the tagged equation's defect over the validation points,
/// with 5-point central differences on the continuous evaluators
double residual_autonomous(const CplxFn& p, const CplxFn& chi, const std::function<cplx(double)>& avg,
                           const PotentialModel& model,
                           const std::vector<std::pair<double, double>>& pts);
double residual_rescaled(const CplxFn& p, const CplxFn& chi, const std::function<cplx(double)>& avg,
                         const PotentialModel& model, const std::function<double(double)>& f_prime,
                         double epsilon, const std::vector<std::pair<double, double>>& pts);
/// mode-algebra defect of -omega.dchi/dphi = p - pbar
double residual_torus(const GridSymbol& p, const GridSymbol& chi, const VectorXd& omega);

/// generic dispatcher (autonomous/rescaled paths share the callable form)
double residual_check(const CplxFn& p, const CplxFn& chi, const std::function<cplx(double)>& avg,
                      const PotentialModel& model, HomologicalEquation tag,
                      const std::vector<std::pair<double, double>>& pts,
                      const std::function<double(double)>& f_prime = {}, double epsilon = 0);

/// validation points drawn from a phase grid, restricted to an energy band
std::vector<std::pair<double, double>> validation_points(const PhaseGrid& grid,
                                                         const PotentialModel& model, double e_lo,
                                                         double e_hi, int max_points = 256);

}  // namespace floq
