#pragma once
#include <Eigen/Dense>

#include "weyl/monodromy.hpp"
#include "weyl/spectral.hpp"

namespace weyl {

// Which integration constant to use for the emd psi: zero_at_degenerate makes
// psi vanish when the two rescaled charges coincide; h_limit_regular keeps the
// defining equations finite as h1, h2 -> 0.
enum class EmdPsiConstant { zero_at_degenerate, h_limit_regular };

struct EmdForms {
  double g, m1, m2, m3;
  double chi1, chi2, chi3;
  double e2S1, e2S2;      // e^{2*Sigma_1}, e^{2*Sigma_2}
  double Delta;
  double e_minus_2Phi;    // scalar field e^{-2*Phi}
  bool degenerate;        // rescaled charges equal (constant scalar field)
};

// Rescaled charges.
inline double emd_Qt(const MonodromySpec& s) { return s.Q / s.h1; }
inline double emd_Pt(const MonodromySpec& s) { return s.P / s.h2; }

// Closed forms of the 3x3 coset solution. Throws
// std::domain_error("domain boundary") when e^{2*Sigma_2} <= 0.
EmdForms emd_closed_forms(const MonodromySpec& spec, WeylPoint p);

// e^{2*Sigma_2} alone, finite everywhere (used to scan for the domain
// boundary when Q*P < 0).
double emd_sigma2(const MonodromySpec& spec, WeylPoint p);

// Coset representative M(rho, v) = g * [[m1, m2, -1], [-m2, m3, 0],
// [-1, 0, 0]], det = 1.
Eigen::Matrix3d emd_coset(const MonodromySpec& spec, WeylPoint p);

double emd_psi(const MonodromySpec& spec, WeylPoint p,
               EmdPsiConstant c1 = EmdPsiConstant::zero_at_degenerate);

double emd_B(const MonodromySpec& spec, WeylPoint p);

// Partial sum of the A_phi series through the given order (0..2) in
// Jt = Pt - Qt.
double emd_a_phi(const MonodromySpec& spec, WeylPoint p, int order);

}  // namespace weyl
