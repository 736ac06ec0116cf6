#pragma once
#include <complex>

namespace weyl {

using cplx = std::complex<double>;

struct Signature {
  int sigma;  // +1 or -1
};

struct WeylPoint {
  double rho;  // > 0
  double v;
};

// One branch of phi_omega(rho, v) = (-sigma*(omega - v) +- sqrt((omega-v)^2 +
// sigma*rho^2)) / rho, with the square-root branch fixed by (sigma, omega)
// relative to the base point.
struct PhiSpec {
  cplx omega;
  int sign;  // +1 or -1, the +- choice above
  int sigma;
  WeylPoint base_point;
};

// iota_sigma(tau) = -sigma/tau. Throws std::domain_error on tau = 0.
cplx involution(cplx tau, int sigma);

// u = v + sigma*(rho/2)*(sigma - tau^2)/tau. Throws on tau = 0.
cplx spectral_u(cplx tau, WeylPoint p, int sigma);

// Branch points W_{rho,v} = { v +- sqrt(-sigma)*rho }.
bool in_excluded_set(cplx omega, WeylPoint p, int sigma, double tol = 1e-10);

// sqrt with branch cut chosen so arg of the result lies in [0, pi)
// (i.e. the argument of z is taken in [0, 2*pi)).
cplx sqrt_branch_02pi(cplx z);

// Evaluate phi at p. Throws std::domain_error("branch point") when omega is
// in W at p.
cplx phi_eval(const PhiSpec& spec, WeylPoint p);

struct PhiDiffResidual {
  double deriv_dev;  // max |FD partials - closed-form coefficients|
  double closure;    // FD closure residual of rho * (star dphi) / phi
};

// Closed-form partials from dphi = (phi/rho)[ (sigma-phi^2)/(sigma+phi^2) drho
// + 2*sigma*phi/(sigma+phi^2) dv ].
cplx phi_drho_closed(cplx phi, WeylPoint p, int sigma);
cplx phi_dv_closed(cplx phi, WeylPoint p, int sigma);

PhiDiffResidual phi_differential_check(const PhiSpec& spec, WeylPoint p,
                                       double h);

}  // namespace weyl
