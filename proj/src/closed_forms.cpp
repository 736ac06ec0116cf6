#include "weyl/closed_forms.hpp"

#include <cmath>
#include <stdexcept>

namespace weyl::closed {

namespace {

void radii_eps1(int sigma, double m, WeylPoint p, double& a, double& b) {
  if (sigma == 1) {
    a = std::hypot(p.v - m, p.rho);  // sqrt((v-m)^2 + rho^2)
    b = std::hypot(p.v + m, p.rho);  // sqrt((v+m)^2 + rho^2)
    return;
  }
  double ra = (m - p.v) * (m - p.v) - p.rho * p.rho;
  double rb = (m + p.v) * (m + p.v) - p.rho * p.rho;
  double snap = 1e-12 * m * m;  // absorb roundoff on the boundary lines
  if (ra < 0.0 && ra > -snap) ra = 0.0;
  if (rb < 0.0 && rb > -snap) rb = 0.0;
  if (ra < 0.0 || rb < 0.0) throw std::domain_error("inadmissible region");
  a = std::sqrt(ra);  // sqrt((m-v)^2 - rho^2)
  b = std::sqrt(rb);  // sqrt((m+v)^2 - rho^2)
}

}  // namespace

double delta_eps1(int sigma, int cls, double m, WeylPoint p) {
  double a, b;
  radii_eps1(sigma, m, p, a, b);
  double rho = p.rho, v = p.v;
  double d;
  if (sigma == 1) {
    switch (cls) {
      case 1: d = (v - m + a) / (v + m + b); break;
      case 2: d = (v - m - a) * (v + m - b) / (rho * rho); break;
      case 3: d = (v + m + b) / (v - m + a); break;
      case 4: d = rho * rho / ((v - m - a) * (v + m - b)); break;
      default: throw std::invalid_argument("cls");
    }
  } else {
    switch (cls) {
      case 1: d = (m + v - b) / (m - v + a); break;
      case 2: d = (m - v + a) * (m + v - b) / (rho * rho); break;
      case 3: d = (m - v + a) / (m + v - b); break;
      case 4: d = rho * rho / ((m - v + a) * (m + v - b)); break;
      default: throw std::invalid_argument("cls");
    }
  }
  return d;
}

double psi_eps1(int sigma, int cls, double m, WeylPoint p) {
  double a, b;
  radii_eps1(sigma, m, p, a, b);
  double rho = p.rho, v = p.v;
  if (sigma == 1) {
    double q = (v * v + rho * rho - m * m) / (a * b);
    if (cls == 1 || cls == 3) return std::log(0.5 * q + 0.5);
    return std::log(-0.5 * q + 0.5);
  }
  double q = (m * m - v * v + rho * rho) / (a * b);
  if (cls == 1 || cls == 3) return std::log(0.5 * std::abs(q - 1.0));
  return std::log(0.5 * std::abs(q + 1.0));
}

double kretschmann_eps1(int sigma, int cls, double m, WeylPoint p) {
  double a, b;
  radii_eps1(sigma, m, p, a, b);
  double den;
  if (sigma == 1) {
    switch (cls) {
      case 1: den = 2.0 * m + a + b; break;
      case 2: den = 2.0 * m + b - a; break;
      case 3: den = 2.0 * m - a - b; break;
      case 4: den = 2.0 * m + a - b; break;
      default: throw std::invalid_argument("cls");
    }
  } else {
    switch (cls) {
      case 1: den = 2.0 * m + b + a; break;
      case 2: den = 2.0 * m + b - a; break;
      case 3: den = 2.0 * m - a - b; break;
      case 4: den = 2.0 * m + a - b; break;
      default: throw std::invalid_argument("cls");
    }
  }
  return 48.0 * m * m * std::pow(2.0 / den, 6);
}

double delta_eps0(int sigma, int cls, double m, WeylPoint p) {
  double r;
  if (sigma == 1) {
    r = std::hypot(p.v, p.rho);
  } else {
    double rad = p.v * p.v - p.rho * p.rho;
    if (rad <= 0.0) throw std::domain_error("inadmissible region");
    r = std::sqrt(rad);
  }
  if (cls == 1) return std::abs(p.v + r) / (2.0 * m);
  if (cls == 2) return std::abs(p.v - r) / (2.0 * m);
  throw std::invalid_argument("cls");
}

double psi_eps0(int sigma, int cls, double m, WeylPoint p) {
  double r;
  if (sigma == 1) {
    r = std::hypot(p.v, p.rho);
  } else {
    double rad = p.v * p.v - p.rho * p.rho;
    if (rad <= 0.0) throw std::domain_error("inadmissible region");
    r = std::sqrt(rad);
  }
  double num = cls == 1 ? std::abs(p.v + r) : std::abs(p.v - r);
  return std::log(num / (2.0 * r));
}

double psi_kasner(WeylPoint p) { return std::log(9.0) + 8.0 * std::log(p.rho); }

}  // namespace weyl::closed
