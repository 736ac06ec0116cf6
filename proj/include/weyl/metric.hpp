#pragma once
#include <Eigen/Dense>
#include <functional>
#include <string>

#include "weyl/grid.hpp"
#include "weyl/spectral.hpp"

namespace weyl {

using ScalarField = std::function<double(WeylPoint)>;

// ds2^2 choice inside the 4d line element: form_A = sigma*drho^2 + dv^2,
// form_B = drho^2 + sigma*dv^2.
enum class TwoDSig { form_A, form_B };

struct Metric4Patch {
  ScalarField Delta;
  ScalarField psi;  // null means 0
  ScalarField B;    // null means 0
  int sigma = 1;
  TwoDSig sig2 = TwoDSig::form_A;
  std::function<bool(WeylPoint)> domain;  // null means rho > 0

  bool in_domain(WeylPoint p) const {
    return p.rho > 0.0 && (!domain || domain(p));
  }
  // 4-metric components in coordinates (t, rho, v, phi).
  Eigen::Matrix4d components(WeylPoint p) const;
};

// Builds the patch and samples 100 pseudo-random domain points checking
// Delta > 0 and Lorentzian determinant. Throws
// std::domain_error("signature violation").
Metric4Patch assemble_patch(ScalarField Delta, ScalarField psi, ScalarField B,
                            int sigma, TwoDSig sig2,
                            std::function<bool(WeylPoint)> domain,
                            GridSpec sample_window);

struct ConformalFactorField {
  Field2D psi;
  double max_closure_residual;
};

// psi from d(psi) with d(rho)-component rho/2*((dlnDelta/drho)^2 -
// sigma*(dlnDelta/dv)^2) and dv-component rho*(dlnDelta/drho)(dlnDelta/dv),
// integrated from the anchor along the anchor row and then columns.
// Throws std::runtime_error("non-closed one-form") if the Richardson
// closure residual exceeds 1e-7.
ConformalFactorField integrate_psi(const ScalarField& Delta, int sigma,
                                   const GridSpec& grid, WeylPoint anchor,
                                   double anchor_value);

double integrate_psi_at(const ScalarField& Delta, int sigma, WeylPoint anchor,
                        double anchor_value, WeylPoint target);

double psi_closure_residual(const ScalarField& Delta, int sigma, WeylPoint p,
                            double h = 1e-3);

// Chart map (x1, x2) -> (rho, v) with analytic Jacobian; t_scale rescales the
// time coordinate (t = t_scale * t_chart) and negate_2d applies the
// ds2^2 -> -ds2^2 flip that accompanies some of the gluing maps.
struct CoordinateMap {
  std::string name;
  std::function<WeylPoint(double, double)> fwd;
  std::function<Eigen::Matrix2d(double, double)> jac;  // d(rho,v)/d(x1,x2)
  double t_scale = 1.0;
  bool negate_2d = false;
};

CoordinateMap map_sph_exterior(double m);   // (r,theta), Schwarzschild exterior
CoordinateMap map_hyp_interior(double m);   // (r,vartheta), hyperbolic chart
CoordinateMap map_sph_negative(double m);   // (r,theta), negative-mass chart
CoordinateMap map_rindler(double m);        // (zt, rt)
CoordinateMap map_aiii(double m);           // (r, z), r space-like target
CoordinateMap map_aiii_timelike(double m);  // (r, z), r time-like target
CoordinateMap map_kasner100_a(double m);    // (zt, rt), v = (zt^2+rt^2)/(4m)
CoordinateMap map_kasner100_b(double m);    // (zt, rt), v = (zt^2+rt^2)/2
CoordinateMap map_quad(int region, double m);  // (r,theta), region 1..4

// Pulled-back 4-metric components in chart coordinates (t, x1, x2, phi).
Eigen::Matrix4d apply_map(const Metric4Patch& patch, const CoordinateMap& map,
                          double x1, double x2);

// Jacobian-sign constancy over the sample window; throws
// std::runtime_error("fold detected").
void check_map_orientation(const CoordinateMap& map, double x1a, double x1b,
                           double x2a, double x2b, int n = 12);

bool check_affine_conditions(double a, double b, double c, double d, int sigma);

// Point maps between the four triangles of the quadrangle
// 0 < rho < 2m, -m < v < m.
WeylPoint quad_B_inv(double m, WeylPoint p);  // II -> I
WeylPoint quad_C_inv(double m, WeylPoint p);  // III -> I
WeylPoint quad_D_inv(double m, WeylPoint p);  // IV -> I
int quad_region(double m, WeylPoint p);       // 1..4

// Delta on the quadrangle. variant 0: continuous extension; variants 1..3:
// the alternatives with a transverse extrinsic-curvature jump.
double extend_interior_delta(double m, WeylPoint p, int variant = 0);

void write_patch_csv(const Metric4Patch& patch, const GridSpec& grid,
                     const std::string& path);

}  // namespace weyl
