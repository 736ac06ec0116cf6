#include "weyl/emd.hpp"

#include <cmath>
#include <stdexcept>

namespace weyl {

namespace {

struct Taus {
  double t0p, t0m;  // interior / exterior simple points from the bare pole
  double tQp, tQm;
  double tPp, tPm;
  double r0, rQ, rP;
};

Taus emd_taus(const MonodromySpec& s, WeylPoint p) {
  double Qt = emd_Qt(s), Pt = emd_Pt(s);
  Taus t;
  t.r0 = std::hypot(p.rho, p.v);
  t.rQ = std::hypot(p.rho, p.v + Qt);
  t.rP = std::hypot(p.rho, p.v + Pt);
  t.t0p = (p.v - t.r0) / p.rho;
  t.t0m = (p.v + t.r0) / p.rho;
  t.tQp = (p.v + Qt - t.rQ) / p.rho;
  t.tQm = (p.v + Qt + t.rQ) / p.rho;
  t.tPp = (p.v + Pt - t.rP) / p.rho;
  t.tPm = (p.v + Pt + t.rP) / p.rho;
  return t;
}

struct RawForms {
  double g, m1, m2, m3, e2S1, e2S2;
};

RawForms emd_raw(const MonodromySpec& s, WeylPoint p) {
  double Qt = emd_Qt(s), Pt = emd_Pt(s);
  Taus t = emd_taus(s, p);
  RawForms r;
  r.g = std::cbrt((s.h2 / s.h1) * (t.tPm / t.tQm));
  double d00 = p.rho * (t.t0p - t.t0m);  // = -2*sqrt(rho^2+v^2)
  r.m1 = s.h1 * s.h2 * (1.0 - 2.0 * Qt / d00) * (1.0 - 2.0 * Pt / d00) -
         2.0 * s.h1 * s.h2 * (t.tQp - t.tPp) * (t.t0p - t.tPm) *
             (t.t0p - t.tQp) / (t.tQp * (t.t0p - t.t0m) * (t.t0p - t.t0m));
  r.m2 = std::sqrt(2.0) * s.h1 * (1.0 - 2.0 * Qt / d00) -
         std::sqrt(2.0) * s.h1 * (t.tQp - t.tPp) * (t.t0p - t.tQp) /
             (t.tQp * (t.t0p - t.t0m));
  r.m3 = -(s.h1 / s.h2) * (t.tQm / t.tPm);
  r.e2S1 = r.m1 * r.g;
  r.e2S2 = (r.m3 + r.m2 * r.m2 / r.m1) * r.g;
  return r;
}

}  // namespace

double emd_sigma2(const MonodromySpec& spec, WeylPoint p) {
  return emd_raw(spec, p).e2S2;
}

EmdForms emd_closed_forms(const MonodromySpec& spec, WeylPoint p) {
  spec.check();
  RawForms r = emd_raw(spec, p);
  if (r.e2S2 <= 0.0) throw std::domain_error("domain boundary");
  EmdForms f;
  f.g = r.g;
  f.m1 = r.m1;
  f.m2 = r.m2;
  f.m3 = r.m3;
  f.e2S1 = r.e2S1;
  f.e2S2 = r.e2S2;
  double denom = r.m1 * r.m3 + r.m2 * r.m2;
  f.chi1 = -r.m2 / denom;
  f.chi2 = r.m2 / r.m1;
  f.chi3 = -1.0 / r.m1;
  double d2inv = r.g * r.g * r.g * r.m1 * denom;
  f.Delta = 1.0 / std::sqrt(d2inv);
  f.e_minus_2Phi =
      std::pow(r.g, 1.5) * std::pow(r.m3 + r.m2 * r.m2 / r.m1, 1.5);
  f.degenerate = std::abs(emd_Pt(spec) - emd_Qt(spec)) < 1e-14;
  return f;
}

Eigen::Matrix3d emd_coset(const MonodromySpec& spec, WeylPoint p) {
  RawForms r = emd_raw(spec, p);
  Eigen::Matrix3d M;
  M << r.m1, r.m2, -1.0, -r.m2, r.m3, 0.0, -1.0, 0.0, 0.0;
  return r.g * M;
}

double emd_psi(const MonodromySpec& spec, WeylPoint p, EmdPsiConstant c1) {
  double Qt = emd_Qt(spec), Pt = emd_Pt(spec);
  double rQ2 = p.rho * p.rho + (p.v + Qt) * (p.v + Qt);
  double rP2 = p.rho * p.rho + (p.v + Pt) * (p.v + Pt);
  double core = p.rho * p.rho + (Pt + p.v) * (Qt + p.v) +
                std::sqrt(rP2) * std::sqrt(rQ2);
  double psi = (1.0 / 9.0) * std::log(core * core / (4.0 * rP2 * rQ2));
  if (c1 == EmdPsiConstant::h_limit_regular)
    psi += (4.0 / 9.0) * std::log(2.0 * Pt * Qt / (Qt - Pt));
  return psi;
}

double emd_B(const MonodromySpec& spec, WeylPoint p) {
  double Qt = emd_Qt(spec), Pt = emd_Pt(spec);
  double r0 = std::hypot(p.rho, p.v);
  double rQ = std::hypot(p.rho, p.v + Qt);
  double rP = std::hypot(p.rho, p.v + Pt);
  return spec.h1 * spec.h2 * (Qt * rP - Pt * rQ) * (p.v - r0) / (r0 * r0) +
         spec.h1 * spec.h2 * (Qt - Pt);
}

double emd_a_phi(const MonodromySpec& spec, WeylPoint p, int order) {
  if (order < 0 || order > 2) throw std::invalid_argument("order");
  double Qt = emd_Qt(spec), Pt = emd_Pt(spec);
  double Jt = Pt - Qt;
  double h2 = spec.h2;
  double rho = p.rho, v = p.v;
  double r0 = std::hypot(rho, v);
  double rQ = std::hypot(rho, v + Qt);

  double a0 = std::sqrt(2.0) * h2 * Qt * v / r0;
  double acc = a0;
  if (order >= 1) {
    double a1 = (h2 / std::sqrt(2.0)) *
                (v / r0 + (v - r0) * rQ / (r0 * r0 + Qt * r0) -
                 2.0 * Qt / (Qt + r0));
    acc += a1 * Jt;
  }
  if (order >= 2) {
    double a2 =
        (h2 / (2.0 * std::sqrt(2.0))) *
        (2.0 * v * v * (Qt + 4.0 * v - rQ) / (Qt * Qt * (Qt + 2.0 * v) * r0) -
         4.0 * ((Qt + v) * (Qt + v) + Qt * rQ) /
             ((Qt + r0) * (Qt + r0) * (Qt + r0)) -
         (4.0 * (2.0 * Qt * Qt + v * v) + (Qt - v) * rQ) /
             (Qt * Qt * (Qt + r0)) +
         2.0 * (-2.0 * v * v + (3.0 * Qt + v) * (2.0 * Qt + rQ)) /
             (Qt * (Qt + r0) * (Qt + r0)) -
         (Qt + v) *
             ((Qt + 2.0 * v - r0) * rQ - 2.0 * (Qt + v) * r0) /
             (Qt * (Qt + 2.0 * v) * (rho * rho + (Qt + v) * (Qt + v))));
    acc += a2 * Jt * Jt / 2.0;
  }
  return acc;
}

}  // namespace weyl
