#include "floq/grid.hpp"

#include <algorithm>

namespace floq {

VectorXd make_axis(double extent, double lin_cut, int n_lin, int n_log) {
    if (extent <= 0) throw std::invalid_argument("make_axis: extent must be positive");
    std::vector<double> pos;
    if (extent <= lin_cut) {
        for (int i = 1; i <= n_lin; ++i) pos.push_back(extent * i / n_lin);
    } else {
        for (int i = 1; i <= n_lin; ++i) pos.push_back(lin_cut * i / n_lin);
        const double ratio = std::log(extent / lin_cut);
        for (int i = 1; i <= n_log; ++i) pos.push_back(lin_cut * std::exp(ratio * i / n_log));
    }
    VectorXd axis(2 * static_cast<int>(pos.size()) + 1);
    const int n = static_cast<int>(pos.size());
    axis[n] = 0.0;
    for (int i = 0; i < n; ++i) {
        axis[n + 1 + i] = pos[i];
        axis[n - 1 - i] = -pos[i];
    }
    return axis;
}

VectorXd fornberg_weights(double x0, const VectorXd& nodes, int m) {
    const int n = static_cast<int>(nodes.size()) - 1;
    if (n < m) throw std::invalid_argument("fornberg_weights: not enough nodes");
    // B. Fornberg, Math. Comp. 51 (1988): recursive weight generation
    MatrixXd c = MatrixXd::Zero(n + 1, m + 1);
    double c1 = 1.0, c4 = nodes[0] - x0;
    c(0, 0) = 1.0;
    for (int i = 1; i <= n; ++i) {
        const int mn = std::min(i, m);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = nodes[i] - x0;
        for (int j = 0; j < i; ++j) {
            const double c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k)
                    c(i, k) = c1 * (k * c(i - 1, k - 1) - c5 * c(i - 1, k)) / c2;
                c(i, 0) = -c1 * c5 * c(i - 1, 0) / c2;
            }
            for (int k = mn; k >= 1; --k)
                c(j, k) = (c4 * c(j, k) - k * c(j, k - 1)) / c3;
            c(j, 0) = c4 * c(j, 0) / c3;
        }
        c1 = c2;
    }
    return c.col(m);
}

namespace {

/// centered stencil [lo, lo+width) clipped to the axis
int stencil_start(int n, int i, int width) {
    int lo = i - width / 2;
    lo = std::max(0, std::min(lo, n - width));
    return lo;
}

template <typename Vec>
auto fd_impl(const VectorXd& axis, const Vec& values, int i, int m, int width) {
    const int n = static_cast<int>(axis.size());
    if (width > n) width = n;
    if (width < m + 1) throw std::invalid_argument("fd_derivative: stencil too small");
    const int lo = stencil_start(n, i, width);
    const VectorXd w = fornberg_weights(axis[i], axis.segment(lo, width), m);
    typename Vec::Scalar acc{};
    for (int k = 0; k < width; ++k) acc += w[k] * values[lo + k];
    return acc;
}

template <typename Vec>
auto interp1_impl(const VectorXd& axis, const Vec& values, double x) {
    const int n = static_cast<int>(axis.size());
    int i = locate(axis, x);
    int lo = std::max(0, std::min(i - 1, n - 4));
    // cubic Lagrange on 4 nodes
    typename Vec::Scalar acc{};
    for (int a = 0; a < 4; ++a) {
        double w = 1.0;
        for (int b = 0; b < 4; ++b)
            if (b != a) w *= (x - axis[lo + b]) / (axis[lo + a] - axis[lo + b]);
        acc += w * values[lo + a];
    }
    return acc;
}

template <typename Mat>
auto interp2_impl(const VectorXd& xa, const VectorXd& xia, const Mat& values, double x, double xi) {
    const int nx = static_cast<int>(xa.size()), nxi = static_cast<int>(xia.size());
    const int i = std::max(0, std::min(locate(xa, x) - 1, nx - 4));
    const int j = std::max(0, std::min(locate(xia, xi) - 1, nxi - 4));
    double wx[4], wxi[4];
    for (int a = 0; a < 4; ++a) {
        wx[a] = 1.0;
        wxi[a] = 1.0;
        for (int b = 0; b < 4; ++b) {
            if (b != a) {
                wx[a] *= (x - xa[i + b]) / (xa[i + a] - xa[i + b]);
                wxi[a] *= (xi - xia[j + b]) / (xia[j + a] - xia[j + b]);
            }
        }
    }
    typename Mat::Scalar acc{};
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) acc += wx[a] * wxi[b] * values(i + a, j + b);
    return acc;
}

}  // namespace

double fd_derivative(const VectorXd& axis, const VectorXd& values, int i, int m, int width) {
    return fd_impl(axis, values, i, m, width);
}
cplx fd_derivative(const VectorXd& axis, const VectorXcd& values, int i, int m, int width) {
    return fd_impl(axis, values, i, m, width);
}

int locate(const VectorXd& axis, double x) {
    const int n = static_cast<int>(axis.size());
    if (x <= axis[0]) return 0;
    if (x >= axis[n - 1]) return n - 2;
    int lo = 0, hi = n - 1;
    while (hi - lo > 1) {
        const int mid = (lo + hi) / 2;
        (axis[mid] <= x ? lo : hi) = mid;
    }
    return lo;
}

double interp1(const VectorXd& axis, const VectorXd& values, double x) {
    return interp1_impl(axis, values, x);
}
cplx interp1(const VectorXd& axis, const VectorXcd& values, double x) {
    return interp1_impl(axis, values, x);
}

double interp2(const VectorXd& x_axis, const VectorXd& xi_axis, const MatrixXd& values,
               double x, double xi) {
    return interp2_impl(x_axis, xi_axis, values, x, xi);
}
cplx interp2(const VectorXd& x_axis, const VectorXd& xi_axis, const MatrixXcd& values,
             double x, double xi) {
    return interp2_impl(x_axis, xi_axis, values, x, xi);
}

}  // namespace floq
