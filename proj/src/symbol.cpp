#include "floq/symbol.hpp"

#include <fstream>

#include "json.hpp"

namespace floq {

SymbolGrade grade_compose(const SymbolGrade& a, const SymbolGrade& b, GradeOp op, double l, int j) {
    switch (op) {
        case GradeOp::ProductTermJ:
            if (j < 0) throw std::invalid_argument("grade_compose: j >= 0 required");
            return {a.m1 + b.m1 - l * j, a.m2 + b.m2 - j};
        case GradeOp::Poisson:
            return {a.m1 + b.m1 - l, a.m2 + b.m2 - 1.0};
        case GradeOp::TripleBracket:
            return {a.m1 + b.m1 - 3.0 * l, a.m2 + b.m2 - 3.0};
    }
    throw std::invalid_argument("grade_compose: unknown op");
}

double beta_tilde(double beta1, double beta2, double l, bool zero_average) {
    if (l < 1.0) throw std::invalid_argument("beta_tilde: l >= 1 required");
    if (zero_average && l > 1.0)
        return 2.0 * beta1 + pos_part(beta2) + pos_part(beta2 - 1.0) - 2.0 * l + 1.0;
    return beta1 + pos_part(beta2);
}

void GridSymbol::check_consistent() const {
    if (values.rows() != nx() || values.cols() != nxi())
        throw std::invalid_argument("GridSymbol: value shape does not match node counts");
    if (!values.allFinite()) throw std::invalid_argument("GridSymbol: non-finite values");
    for (const auto& [k, m] : angle_modes) {
        if (m.rows() != nx() || m.cols() != nxi())
            throw std::invalid_argument("GridSymbol: mode shape does not match node counts");
        if (!m.allFinite()) throw std::invalid_argument("GridSymbol: non-finite mode values");
    }
    for (int i = 1; i < nx(); ++i)
        if (!(x_nodes[i] > x_nodes[i - 1]))
            throw std::invalid_argument("GridSymbol: x_nodes not increasing");
    for (int i = 1; i < nxi(); ++i)
        if (!(xi_nodes[i] > xi_nodes[i - 1]))
            throw std::invalid_argument("GridSymbol: xi_nodes not increasing");
}

cplx GridSymbol::eval_at(double x, double xi, const VectorXd& phi) const {
    cplx v = value_at(x, xi);
    for (const auto& [k, m] : angle_modes) {
        double kphi = 0;
        for (size_t d = 0; d < k.size(); ++d) kphi += k[d] * phi[static_cast<int>(d)];
        v += interp2(x_nodes, xi_nodes, m, x, xi) * std::exp(cplx(0.0, kphi));
    }
    return v;
}

MatrixXd GridSymbol::magnitude() const {
    MatrixXd mag = values.cwiseAbs();
    for (const auto& [k, m] : angle_modes) mag += m.cwiseAbs();
    return mag;
}

GridSymbol sample_symbol(const std::function<double(double, double)>& f, const VectorXd& x_nodes,
                         const VectorXd& xi_nodes, SymbolGrade grade, double l) {
    GridSymbol g;
    g.x_nodes = x_nodes;
    g.xi_nodes = xi_nodes;
    g.grade = grade;
    g.l = l;
    g.values.resize(x_nodes.size(), xi_nodes.size());
    for (int i = 0; i < g.nx(); ++i)
        for (int j = 0; j < g.nxi(); ++j) g.values(i, j) = f(x_nodes[i], xi_nodes[j]);
    return g;
}

double class_norm_estimate(const GridSymbol& g, const SymbolGrade& grade, int N) {
    g.check_consistent();
    if (N < 0 || N > 4) throw ResolutionError("class_norm_estimate: N <= 4 supported");
    if (g.nx() < N + 5 || g.nxi() < N + 5)
        throw ResolutionError("class_norm_estimate: grid too coarse for requested N");

    double sup = 0.0;
    for (int k2 = 0; k2 <= N; ++k2) {      // x-derivatives
        for (int k1 = 0; k1 + k2 <= N; ++k1) {  // xi-derivatives
            // differentiate the static magnitude field: rows in x, then cols in xi
            MatrixXcd dx = g.values;
            if (k2 > 0) {
                MatrixXcd out(g.nx(), g.nxi());
                for (int j = 0; j < g.nxi(); ++j) {
                    VectorXcd col = dx.col(j);
                    for (int i = 0; i < g.nx(); ++i)
                        out(i, j) = fd_derivative(g.x_nodes, col, i, k2, k2 + 4);
                }
                dx = out;
            }
            if (k1 > 0) {
                MatrixXcd out(g.nx(), g.nxi());
                for (int i = 0; i < g.nx(); ++i) {
                    VectorXcd row = dx.row(i);
                    for (int j = 0; j < g.nxi(); ++j)
                        out(i, j) = fd_derivative(g.xi_nodes, row, j, k1, k1 + 4);
                }
                dx = out;
            }
            for (int i = 0; i < g.nx(); ++i) {
                for (int j = 0; j < g.nxi(); ++j) {
                    const double lam = lambda_weight(g.x_nodes[i], g.xi_nodes[j], g.l);
                    const double den = std::pow(lam, grade.m1 - g.l * k1) *
                                       std::pow(x_weight(g.x_nodes[i]), grade.m2 - k2);
                    sup = std::max(sup, std::abs(dx(i, j)) / den);
                }
            }
        }
    }
    return sup;
}

double order_fit(const GridSymbol& g) {
    g.check_consistent();
    const MatrixXd mag = g.magnitude();
    // dyadic shells in lambda; each shell keeps (lambda at argmax, max),
    // with ties resolved toward the smallest lambda so the pair sits on the
    // growth envelope
    std::map<int, double> shell_max;
    for (int i = 0; i < g.nx(); ++i) {
        for (int j = 0; j < g.nxi(); ++j) {
            const double lam = lambda_weight(g.x_nodes[i], g.xi_nodes[j], g.l);
            const double v = mag(i, j);
            if (v <= 0.0) continue;
            const int shell = static_cast<int>(std::floor(std::log2(lam)));
            auto it = shell_max.find(shell);
            if (it == shell_max.end() || v > it->second) shell_max[shell] = v;
        }
    }
    std::map<int, std::pair<double, double>> shells;
    for (int i = 0; i < g.nx(); ++i) {
        for (int j = 0; j < g.nxi(); ++j) {
            const double lam = lambda_weight(g.x_nodes[i], g.xi_nodes[j], g.l);
            const double v = mag(i, j);
            if (v <= 0.0) continue;
            const int shell = static_cast<int>(std::floor(std::log2(lam)));
            if (v < shell_max[shell] * (1.0 - 1e-9)) continue;
            auto it = shells.find(shell);
            if (it == shells.end() || lam < it->second.first) shells[shell] = {lam, v};
        }
    }
    if (shells.size() < 5)
        throw InsufficientRangeError("order_fit: fewer than 5 populated dyadic shells");
    // the lowest shell carries the non-asymptotic core; drop it when the
    // range allows
    if (shells.size() > 5) shells.erase(shells.begin());
    std::vector<double> lx, ly;
    for (const auto& [shell, lv] : shells) {
        lx.push_back(std::log(lv.first));
        ly.push_back(std::log(lv.second));
    }
    return ls_slope(lx, ly);
}

namespace {

nlohmann::json matrix_to_json(const MatrixXcd& m) {
    std::vector<double> re, im;
    re.reserve(m.size());
    im.reserve(m.size());
    for (int i = 0; i < m.rows(); ++i) {   // row-major, x-major
        for (int j = 0; j < m.cols(); ++j) {
            re.push_back(m(i, j).real());
            im.push_back(m(i, j).imag());
        }
    }
    return nlohmann::json{{"re", re}, {"im", im}};
}

MatrixXcd matrix_from_json(const nlohmann::json& j, int rows, int cols) {
    const auto re = j.at("re").get<std::vector<double>>();
    const auto im = j.at("im").get<std::vector<double>>();
    if (static_cast<int>(re.size()) != rows * cols || im.size() != re.size())
        throw std::runtime_error("GridSymbol: value array size mismatch");
    MatrixXcd m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int jc = 0; jc < cols; ++jc)
            m(i, jc) = cplx(re[i * cols + jc], im[i * cols + jc]);
    return m;
}

}  // namespace

void save_grid_symbol(const GridSymbol& g, const std::string& path) {
    g.check_consistent();
    nlohmann::json j;
    j["format"] = "floq.grid_symbol";
    j["version"] = 1;
    j["l"] = g.l;
    j["grade"] = {{"m1", g.grade.m1}, {"m2", g.grade.m2}};
    j["x_nodes"] = std::vector<double>(g.x_nodes.data(), g.x_nodes.data() + g.nx());
    j["xi_nodes"] = std::vector<double>(g.xi_nodes.data(), g.xi_nodes.data() + g.nxi());
    j["values"] = matrix_to_json(g.values);
    auto modes = nlohmann::json::array();
    for (const auto& [k, m] : g.angle_modes)
        modes.push_back(nlohmann::json{{"k", k}, {"coeff", matrix_to_json(m)}});
    j["angle_modes"] = modes;
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_grid_symbol: cannot open " + path);
    out << j.dump();
}

GridSymbol load_grid_symbol(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_grid_symbol: cannot open " + path);
    nlohmann::json j;
    in >> j;
    if (j.at("format").get<std::string>() != "floq.grid_symbol")
        throw std::runtime_error("load_grid_symbol: wrong container format");
    GridSymbol g;
    g.l = j.at("l").get<double>();
    g.grade.m1 = j.at("grade").at("m1").get<double>();
    g.grade.m2 = j.at("grade").at("m2").get<double>();
    const auto xs = j.at("x_nodes").get<std::vector<double>>();
    const auto xis = j.at("xi_nodes").get<std::vector<double>>();
    g.x_nodes = Eigen::Map<const VectorXd>(xs.data(), xs.size());
    g.xi_nodes = Eigen::Map<const VectorXd>(xis.data(), xis.size());
    g.values = matrix_from_json(j.at("values"), g.nx(), g.nxi());
    for (const auto& jm : j.at("angle_modes")) {
        g.angle_modes[jm.at("k").get<ModeIndex>()] =
            matrix_from_json(jm.at("coeff"), g.nx(), g.nxi());
    }
    g.check_consistent();
    return g;
}

PhaseGrid make_phase_grid(const PotentialModel& p, double x_extent, int n_lin, int n_log) {
    PhaseGrid grid;
    grid.l = p.l();
    grid.x_nodes = make_axis(x_extent, 4.0, n_lin, n_log);
    const double v_edge = p(x_extent);
    const double xi_extent = std::sqrt(v_edge);
    grid.xi_nodes = make_axis(xi_extent, std::min(4.0, xi_extent / 2.0), n_lin, n_log);
    grid.e_safe = 0.98 * v_edge;
    return grid;
}

}  // namespace floq
