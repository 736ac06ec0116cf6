#include "weyl/spectral.hpp"

#include <cmath>
#include <stdexcept>

namespace weyl {

cplx involution(cplx tau, int sigma) {
  if (tau == cplx(0.0)) throw std::domain_error("involution undefined at origin");
  return -static_cast<double>(sigma) / tau;
}

cplx spectral_u(cplx tau, WeylPoint p, int sigma) {
  if (tau == cplx(0.0)) throw std::domain_error("spectral_u undefined at origin");
  double s = sigma;
  return cplx(p.v) + s * (p.rho / 2.0) * (s - tau * tau) / tau;
}

bool in_excluded_set(cplx omega, WeylPoint p, int sigma, double tol) {
  cplx root = std::sqrt(cplx(-static_cast<double>(sigma))) * p.rho;
  return std::abs(omega - (cplx(p.v) + root)) < tol ||
         std::abs(omega - (cplx(p.v) - root)) < tol;
}

cplx sqrt_branch_02pi(cplx z) {
  cplx w = std::sqrt(z);
  if (std::arg(z) < 0.0) w = -w;
  return w;
}

namespace {

bool use_principal_branch(const PhiSpec& spec) {
  constexpr double cut_tol = 1e-12;
  double wr = std::real(spec.omega), wi = std::imag(spec.omega);
  double rho0 = spec.base_point.rho, v0 = spec.base_point.v;
  if (spec.sigma == 1) {
    bool special = std::abs(wr - v0) <= cut_tol && std::abs(wi) > rho0;
    return !special;
  }
  bool special = std::abs(wi) <= cut_tol && std::abs(wr - v0) > rho0;
  return special;
}

}  // namespace

cplx phi_eval(const PhiSpec& spec, WeylPoint p) {
  if (in_excluded_set(spec.omega, p, spec.sigma)) {
    throw std::domain_error("branch point");
  }
  double s = spec.sigma;
  cplx d = spec.omega - cplx(p.v);
  cplx rad = d * d + s * p.rho * p.rho;
  cplx root = use_principal_branch(spec) ? std::sqrt(rad) : sqrt_branch_02pi(rad);
  return (-s * d + static_cast<double>(spec.sign) * root) / p.rho;
}

cplx phi_drho_closed(cplx phi, WeylPoint p, int sigma) {
  double s = sigma;
  return (phi / p.rho) * (s - phi * phi) / (s + phi * phi);
}

cplx phi_dv_closed(cplx phi, WeylPoint p, int sigma) {
  double s = sigma;
  return (phi / p.rho) * 2.0 * s * phi / (s + phi * phi);
}

PhiDiffResidual phi_differential_check(const PhiSpec& spec, WeylPoint p,
                                       double h) {
  auto phi_at = [&](double rho, double v) {
    return phi_eval(spec, WeylPoint{rho, v});
  };
  cplx phi = phi_at(p.rho, p.v);
  cplx fd_r = (phi_at(p.rho + h, p.v) - phi_at(p.rho - h, p.v)) / (2.0 * h);
  cplx fd_v = (phi_at(p.rho, p.v + h) - phi_at(p.rho, p.v - h)) / (2.0 * h);
  double dev = std::max(std::abs(fd_r - phi_drho_closed(phi, p, spec.sigma)),
                        std::abs(fd_v - phi_dv_closed(phi, p, spec.sigma)));

  // one-form rho * (star dphi)/phi = F1 drho + F2 dv with
  // F1 = rho*phi_v/phi, F2 = -sigma*rho*phi_rho/phi; closure = d(F2)/drho -
  // d(F1)/dv.
  double s = spec.sigma;
  auto F1 = [&](double rho, double v) {
    WeylPoint q{rho, v};
    cplx f = phi_at(rho, v);
    return rho * phi_dv_closed(f, q, spec.sigma) / f;
  };
  auto F2 = [&](double rho, double v) {
    WeylPoint q{rho, v};
    cplx f = phi_at(rho, v);
    return -s * rho * phi_drho_closed(f, q, spec.sigma) / f;
  };
  cplx closure = (F2(p.rho + h, p.v) - F2(p.rho - h, p.v)) / (2.0 * h) -
                 (F1(p.rho, p.v + h) - F1(p.rho, p.v - h)) / (2.0 * h);
  return PhiDiffResidual{dev, std::abs(closure)};
}

}  // namespace weyl
