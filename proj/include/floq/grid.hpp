#pragma once

#include "floq/numeric.hpp"

namespace floq {

/// Symmetric 1D axis: uniform inside [-lin_cut, lin_cut], log-spaced beyond,
/// so dyadic shells in the weight lambda stay uniformly populated.
/// Returns an odd number of strictly increasing nodes including 0.
VectorXd make_axis(double extent, double lin_cut = 4.0, int n_lin = 16, int n_log = 24);

/// Fornberg weights for the m-th derivative at point x0 from arbitrary nodes.
/// nodes.size() >= m+1 required; exact for polynomials of degree nodes.size()-1.
VectorXd fornberg_weights(double x0, const VectorXd& nodes, int m);

/// m-th derivative of sampled values at node index i, using a centered stencil
/// of `width` points clipped to the axis ends.
double fd_derivative(const VectorXd& axis, const VectorXd& values, int i, int m, int width);
cplx fd_derivative(const VectorXd& axis, const VectorXcd& values, int i, int m, int width);

/// index of the axis interval containing x (clamped to valid range)
int locate(const VectorXd& axis, double x);

/// Local cubic Lagrange interpolation on a non-uniform axis (4-point stencil).
double interp1(const VectorXd& axis, const VectorXd& values, double x);
cplx interp1(const VectorXd& axis, const VectorXcd& values, double x);

/// Separable 4x4 local cubic interpolation; rows of `values` follow x_axis.
double interp2(const VectorXd& x_axis, const VectorXd& xi_axis, const MatrixXd& values,
               double x, double xi);
cplx interp2(const VectorXd& x_axis, const VectorXd& xi_axis, const MatrixXcd& values,
             double x, double xi);

}  // namespace floq
