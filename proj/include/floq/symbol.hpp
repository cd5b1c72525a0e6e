#pragma once

#include <functional>
#include <map>

#include "floq/grid.hpp"
#include "floq/potential.hpp"

namespace floq {

/// weight lambda(x,xi) = (1 + xi^2 + |x|^{2l})^{1/2l}
inline double lambda_weight(double x, double xi, double l) {
    return std::pow(1.0 + xi * xi + std::pow(std::abs(x), 2.0 * l), 0.5 / l);
}

/// weight <x> = sqrt(1+x^2)
inline double x_weight(double x) { return std::sqrt(1.0 + x * x); }

/// Two-index grade (m1, m2): lambda-exponent and <x>-exponent
struct SymbolGrade {
    double m1 = 0;
    double m2 = 0;
    /// m1 + [m2], the coarse one-index order
    double total() const { return m1 + pos_part(m2); }
    SymbolGrade coarsened() const { return {total(), 0.0}; }
};

enum class GradeOp { ProductTermJ, Poisson, TripleBracket };

/// grade arithmetic of products, Poisson brackets and the first neglected
/// bracket remainder
SymbolGrade grade_compose(const SymbolGrade& a, const SymbolGrade& b, GradeOp op, double l,
                          int j = 0);

/// effective perturbation order: 2b1+[b2]+[b2-1]-2l+1 on the zero-average
/// branch with l>1, else b1+[b2]
double beta_tilde(double beta1, double beta2, double l, bool zero_average);

/// Frequency-mode index (Z^n); lexicographic map key
using ModeIndex = std::vector<int>;

struct ResolutionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InsufficientRangeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Symbol sampled on an (x, xi) product grid with grade annotation.
/// `values` holds the static (angle-averaged) part; phi-dependent symbols
/// carry the k != 0 Fourier coefficients in `angle_modes`.
struct GridSymbol {
    VectorXd x_nodes;
    VectorXd xi_nodes;
    MatrixXcd values;  // rows follow x_nodes, columns follow xi_nodes
    SymbolGrade grade;
    double l = 1.0;
    std::map<ModeIndex, MatrixXcd> angle_modes;

    int nx() const { return static_cast<int>(x_nodes.size()); }
    int nxi() const { return static_cast<int>(xi_nodes.size()); }
    bool has_modes() const { return !angle_modes.empty(); }

    void check_consistent() const;

    /// static part at (x, xi) by local cubic interpolation
    cplx value_at(double x, double xi) const { return interp2(x_nodes, xi_nodes, values, x, xi); }
    /// full value at (x, xi, phi)
    cplx eval_at(double x, double xi, const VectorXd& phi) const;

    /// pointwise |static| + sum_k |mode_k|, a sup-over-phi magnitude bound
    MatrixXd magnitude() const;
};

GridSymbol sample_symbol(const std::function<double(double, double)>& f, const VectorXd& x_nodes,
                         const VectorXd& xi_nodes, SymbolGrade grade, double l);

/// Discrete S^{m1,m2}_N seminorm surrogate:
/// max over grid and k1+k2<=N of |d^k1_xi d^k2_x g| / (lambda^{m1-l k1} <x>^{m2-k2}).
double class_norm_estimate(const GridSymbol& g, const SymbolGrade& grade, int N);

/// Least-squares slope of log(shell max |g|) against log(lambda) over dyadic
/// lambda-shells; estimates m1+[m2]. Each shell contributes the pair
/// (lambda at argmax, max), so exact power laws fit exactly.
double order_fit(const GridSymbol& g);

/// JSON container round-trip (node arrays, row-major x-major values, grade, l)
void save_grid_symbol(const GridSymbol& g, const std::string& path);
GridSymbol load_grid_symbol(const std::string& path);

/// Balanced phase-space grid: x-axis to x_extent, xi-axis to sqrt(V(x_extent)),
/// so every orbit with E <= e_safe stays inside the sampled rectangle.
struct PhaseGrid {
    VectorXd x_nodes;
    VectorXd xi_nodes;
    double l = 1.0;
    double e_safe = 0.0;
};

PhaseGrid make_phase_grid(const PotentialModel& p, double x_extent, int n_lin = 16, int n_log = 24);

}  // namespace floq
