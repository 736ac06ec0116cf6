#pragma once
#include <Eigen/Dense>
#include <functional>
#include <limits>
#include <string>

#include "weyl/grid.hpp"
#include "weyl/spectral.hpp"

namespace weyl {

using MatrixField = std::function<Eigen::MatrixXd(WeylPoint)>;
using Matrix2Field = std::function<Eigen::Matrix2d(WeylPoint)>;
// Chart metric g(x1, x2) in coordinates (t, x1, x2, phi); components depend
// on (x1, x2) only.
using ChartMetric = std::function<Eigen::Matrix4d(double, double)>;

struct VerificationReport {
  std::string check;
  GridSpec grid{};
  double max_residual = 0.0;
  double l2_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  double order = std::numeric_limits<double>::quiet_NaN();
  int excluded = 0;

  std::string to_json() const;
  std::string to_table() const;
};

// Max-norm of the two-form coefficient of d(rho * star(M^-1 dM)) over the
// grid interior, with star(drho) = -sigma dv, star(dv) = drho. Fourth-order
// stencils on the grid nodes; singular or near-axis nodes are excluded and
// counted. estimate_order re-runs on a coarse step pair and reports the
// observed convergence order.
VerificationReport field_eq_residual(const MatrixField& M, int sigma,
                                     const GridSpec& grid, double tol = 1e-6,
                                     bool estimate_order = false);

struct BmReport {
  VerificationReport report;
  // max pointwise disagreement between the first-order form
  // phi (dX + A X) - star dX and the equivalent (phi^2+sigma) dX X^-1
  // + phi^2 A + phi star A form, from identical difference data.
  double form_agreement = 0.0;
};

// Linear-system residual for X against the connection of M at the moving
// spectral parameter tau = phi.
BmReport bm_residual(const Matrix2Field& X, const Matrix2Field& M,
                     const PhiSpec& phispec, const GridSpec& grid,
                     double tol = 1e-6, int samples = 32);

struct MonodromyReport {
  VerificationReport report;
  Eigen::MatrixXd reference;  // value at the first sampled point
};

// Checks that p -> Xt_sharp(p) * M(p) * X(p) is constant over the grid,
// relative to the norm of the reference value.
MonodromyReport monodromy_constancy(const MatrixField& Xt_sharp,
                                    const MatrixField& M, const MatrixField& X,
                                    const GridSpec& grid, double tol = 1e-8,
                                    int samples = 24);

struct CurvatureScalars {
  double kretschmann;
  double ricci;
};

// Nested finite differences: metric -> Christoffels -> Riemann -> scalars.
CurvatureScalars curvature_scalars(const ChartMetric& g, double x1, double x2,
                                   double h = 1e-3);

// Interior solution in the spherical chart (r, theta), 0 < r < 2m:
// (2m/r - 1) dt^2 - (2m/r - 1)^-1 dr^2 + r^2 (dtheta^2 + sin^2 dphi^2).
ChartMetric interior_schwarzschild_chart(double m);
// The alternative extension across r = m(1 + cos theta) written in the same
// chart; agrees with the interior solution on that surface but carries a
// transverse curvature jump.
ChartMetric jump_extension_chart(double m);

struct JumpReport {
  double continuity;       // max |gII - gI| on the tangent basis of Sigma
  double ell_norm;         // |g(l, l)| along Sigma
  double ell_transversality;  // max |l . dF + 1|
  double max_jump_norm;    // largest jump component on the tangent basis
  double max_model_dev;    // deviation from -(m/r^2) dt^2 + (r^2/m) dphi^2
  Eigen::Matrix3d jump;    // basis {d_t, d_theta - m sin(theta) d_r, d_phi}
  bool pass;               // continuity + null/transversality checks
};

// Half Lie derivative along l = -1/2 d_r - 1/(2 sqrt((2m-r) r)) d_theta of
// (gII - gI), restricted to the tangent space of r = m(1 + cos theta).
JumpReport extrinsic_jump(const ChartMetric& gI, const ChartMetric& gII,
                          double m, int n = 20, double tol = 1e-8);

// Residual of d(rho M2^-1 M1^-1 (star dM1) M2) over the grid.
VerificationReport product_solution_predicate(const MatrixField& M1,
                                              const MatrixField& M2, int sigma,
                                              const GridSpec& grid,
                                              double tol = 1e-6,
                                              int samples = 24);

}  // namespace weyl
