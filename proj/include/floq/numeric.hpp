#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace floq {

using Eigen::VectorXd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::MatrixXcd;
using cplx = std::complex<double>;

inline double sq(double x) { return x * x; }

/// max{0,m} used throughout the grade arithmetic
inline double pos_part(double m) { return m > 0.0 ? m : 0.0; }

/// Gauss-Legendre nodes and weights on [-1,1], computed by Newton iteration
/// on the Legendre polynomial (standard Golub-Welsch-free construction).
struct GaussLegendre {
    VectorXd nodes;
    VectorXd weights;

    explicit GaussLegendre(int n) : nodes(n), weights(n) {
        if (n < 1) throw std::invalid_argument("GaussLegendre: n >= 1 required");
        const double pi = M_PI;
        for (int i = 0; i < (n + 1) / 2; ++i) {
            double x = std::cos(pi * (i + 0.75) / (n + 0.5));
            double dp = 0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = x;
                for (int k = 2; k <= n; ++k) {
                    double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (x * p1 - p0) / (x * x - 1.0);
                double dx = p1 / dp;
                x -= dx;
                if (std::abs(dx) < 1e-15) break;
            }
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            double w = 2.0 / ((1.0 - x * x) * dp * dp);
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
    }

    /// integrate f over [a,b]
    template <typename F>
    auto integrate(const F& f, double a, double b) const {
        const double c = 0.5 * (b - a), m = 0.5 * (a + b);
        auto acc = decltype(f(m)){};
        for (int i = 0; i < nodes.size(); ++i)
            acc += weights[i] * f(m + c * nodes[i]);
        return c * acc;
    }
};

/// shared quadrature rule; construction is cheap but not free, so reuse
inline const GaussLegendre& gl96() {
    static const GaussLegendre rule(96);
    return rule;
}

/// Natural cubic spline on strictly increasing nodes. Evaluation outside the
/// node range continues the boundary cubic (use with care).
class CubicSpline {
public:
    CubicSpline() = default;
    CubicSpline(const VectorXd& x, const VectorXd& y) { build(x, y); }

    void build(const VectorXd& x, const VectorXd& y) {
        const int n = static_cast<int>(x.size());
        if (n < 3) throw std::invalid_argument("CubicSpline: need >= 3 nodes");
        if (y.size() != n) throw std::invalid_argument("CubicSpline: size mismatch");
        for (int i = 1; i < n; ++i)
            if (!(x[i] > x[i - 1])) throw std::invalid_argument("CubicSpline: nodes not increasing");
        x_ = x;
        y_ = y;
        m_.resize(n);
        // solve tridiagonal system for second derivatives, natural BC
        VectorXd a(n), b(n), c(n), r(n);
        a[0] = 0; b[0] = 1; c[0] = 0; r[0] = 0;
        a[n - 1] = 0; b[n - 1] = 1; c[n - 1] = 0; r[n - 1] = 0;
        for (int i = 1; i < n - 1; ++i) {
            const double h0 = x[i] - x[i - 1], h1 = x[i + 1] - x[i];
            a[i] = h0 / 6.0;
            b[i] = (h0 + h1) / 3.0;
            c[i] = h1 / 6.0;
            r[i] = (y[i + 1] - y[i]) / h1 - (y[i] - y[i - 1]) / h0;
        }
        // Thomas algorithm
        for (int i = 1; i < n; ++i) {
            const double w = a[i] / b[i - 1];
            b[i] -= w * c[i - 1];
            r[i] -= w * r[i - 1];
        }
        m_[n - 1] = r[n - 1] / b[n - 1];
        for (int i = n - 2; i >= 0; --i) m_[i] = (r[i] - c[i] * m_[i + 1]) / b[i];
    }

    double operator()(double xq) const {
        const int i = interval(xq);
        const double h = x_[i + 1] - x_[i];
        const double A = (x_[i + 1] - xq) / h, B = (xq - x_[i]) / h;
        return A * y_[i] + B * y_[i + 1] +
               ((A * A * A - A) * m_[i] + (B * B * B - B) * m_[i + 1]) * h * h / 6.0;
    }

    double derivative(double xq) const {
        const int i = interval(xq);
        const double h = x_[i + 1] - x_[i];
        const double A = (x_[i + 1] - xq) / h, B = (xq - x_[i]) / h;
        return (y_[i + 1] - y_[i]) / h +
               ((3 * B * B - 1) * m_[i + 1] - (3 * A * A - 1) * m_[i]) * h / 6.0;
    }

    bool valid() const { return x_.size() > 0; }
    const VectorXd& nodes() const { return x_; }

private:
    int interval(double xq) const {
        const int n = static_cast<int>(x_.size());
        int lo = 0, hi = n - 1;
        if (xq <= x_[0]) return 0;
        if (xq >= x_[n - 1]) return n - 2;
        while (hi - lo > 1) {
            const int mid = (lo + hi) / 2;
            (x_[mid] <= xq ? lo : hi) = mid;
        }
        return lo;
    }
    VectorXd x_, y_, m_;
};

/// least-squares slope of y against x (both already in the desired scale)
inline double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const size_t n = x.size();
    if (n < 2 || y.size() != n) throw std::invalid_argument("ls_slope: need >= 2 points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < n; ++i) {
        sx += x[i]; sy += y[i]; sxx += x[i] * x[i]; sxy += x[i] * y[i];
    }
    const double denom = n * sxx - sx * sx;
    if (denom == 0) throw std::invalid_argument("ls_slope: degenerate abscissae");
    return (n * sxy - sx * sy) / denom;
}

struct LinearFit {
    double slope = 0;
    double intercept = 0;
    double r2 = 0;
};

inline LinearFit ls_fit(const std::vector<double>& x, const std::vector<double>& y) {
    LinearFit f;
    const size_t n = x.size();
    f.slope = ls_slope(x, y);
    double sx = 0, sy = 0;
    for (size_t i = 0; i < n; ++i) { sx += x[i]; sy += y[i]; }
    f.intercept = (sy - f.slope * sx) / n;
    double ss_res = 0, ss_tot = 0;
    const double ym = sy / n;
    for (size_t i = 0; i < n; ++i) {
        ss_res += sq(y[i] - (f.slope * x[i] + f.intercept));
        ss_tot += sq(y[i] - ym);
    }
    f.r2 = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
    return f;
}

/// FNV-1a, used to stamp configs into output headers
inline std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

/// fixed-format double for byte-reproducible CSV output
inline std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

}  // namespace floq
