#include "weyl/rational.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace weyl {

Polynomial::Polynomial(std::vector<cplx> coeffs) : c(std::move(coeffs)) {
  if (c.empty()) c.push_back(cplx(0.0));
  trim();
}

bool Polynomial::is_zero() const {
  return c.size() == 1 && c[0] == cplx(0.0);
}

void Polynomial::trim(double tol) {
  while (c.size() > 1 && std::abs(c.back()) <= tol) c.pop_back();
}

cplx Polynomial::eval(cplx tau) const {
  cplx acc(0.0);
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * tau + *it;
  return acc;
}

Polynomial Polynomial::from_roots(const std::vector<cplx>& roots, cplx lead) {
  Polynomial p(std::vector<cplx>{lead});
  for (cplx r : roots) {
    Polynomial f(std::vector<cplx>{-r, cplx(1.0)});
    p = p * f;
  }
  return p;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  if (is_zero() || o.is_zero()) return Polynomial();
  std::vector<cplx> out(c.size() + o.c.size() - 1, cplx(0.0));
  for (size_t i = 0; i < c.size(); ++i)
    for (size_t j = 0; j < o.c.size(); ++j) out[i + j] += c[i] * o.c[j];
  return Polynomial(std::move(out));
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  std::vector<cplx> out(std::max(c.size(), o.c.size()), cplx(0.0));
  for (size_t i = 0; i < c.size(); ++i) out[i] += c[i];
  for (size_t i = 0; i < o.c.size(); ++i) out[i] += o.c[i];
  return Polynomial(std::move(out));
}

Polynomial Polynomial::scaled(cplx k) const {
  std::vector<cplx> out = c;
  for (auto& x : out) x *= k;
  return Polynomial(std::move(out));
}

std::vector<cplx> poly_roots(const Polynomial& p) {
  int n = p.degree();
  if (p.is_zero() || n < 1) throw std::domain_error("degenerate");
  if (n == 1) return {-p.c[0] / p.c[1]};
  if (n == 2) {
    cplx a = p.c[2], b = p.c[1], c0 = p.c[0];
    cplx d = std::sqrt(b * b - 4.0 * a * c0);
    // pick the sign that avoids cancellation in -b -/+ d
    cplx q = (std::real(std::conj(b) * d) >= 0.0) ? -(b + d) * 0.5
                                                  : -(b - d) * 0.5;
    if (q == cplx(0.0)) return {cplx(0.0), cplx(0.0)};
    return {q / a, c0 / q};
  }
  // companion matrix for degree >= 3
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) comp(i, n - 1) = -p.c[i] / p.c[n];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
  std::vector<cplx> roots(n);
  for (int i = 0; i < n; ++i) roots[i] = es.eigenvalues()[i];
  return roots;
}

RationalFunction RationalFunction::constant(cplx k) {
  RationalFunction f;
  f.num = Polynomial(std::vector<cplx>{k});
  f.den = Polynomial(std::vector<cplx>{cplx(1.0)});
  return f;
}

RationalFunction RationalFunction::from_factored(cplx k, std::vector<cplx> zs,
                                                 std::vector<cplx> ps) {
  RationalFunction f;
  f.num = Polynomial::from_roots(zs, k);
  f.den = Polynomial::from_roots(ps, 1.0);
  f.zeros = std::move(zs);
  f.poles = std::move(ps);
  return f;
}

RationalFunction RationalFunction::from_polys(Polynomial n, Polynomial d,
                                              double cancel_tol) {
  if (d.is_zero()) throw std::domain_error("zero denominator");
  RationalFunction f;
  std::vector<cplx> zs, ps;
  if (n.degree() >= 1 && !n.is_zero()) zs = poly_roots(n);
  if (d.degree() >= 1) ps = poly_roots(d);
  // cancel common zero/pole pairs
  for (auto zit = zs.begin(); zit != zs.end();) {
    auto pit = std::find_if(ps.begin(), ps.end(), [&](cplx p) {
      return std::abs(p - *zit) < cancel_tol;
    });
    if (pit != ps.end()) {
      ps.erase(pit);
      zit = zs.erase(zit);
    } else {
      ++zit;
    }
  }
  cplx lead = n.is_zero() ? cplx(0.0) : n.lead() / d.lead();
  f.num = n.is_zero() ? Polynomial() : Polynomial::from_roots(zs, lead);
  f.den = Polynomial::from_roots(ps, 1.0);
  f.zeros = std::move(zs);
  f.poles = std::move(ps);
  return f;
}

RationalFunction RationalFunction::operator*(const RationalFunction& o) const {
  RationalFunction f;
  f.num = num * o.num;
  f.den = den * o.den;
  f.zeros = zeros;
  f.zeros.insert(f.zeros.end(), o.zeros.begin(), o.zeros.end());
  f.poles = poles;
  f.poles.insert(f.poles.end(), o.poles.begin(), o.poles.end());
  return f;
}

RationalFunction RationalFunction::inverse() const {
  RationalFunction f;
  f.num = den;
  f.den = num;
  f.zeros = poles;
  f.poles = zeros;
  return f;
}

cplx rat_eval(const RationalFunction& f, cplx tau) {
  for (cplx p : f.poles)
    if (std::abs(tau - p) < 1e-14) throw std::domain_error("pole evaluation");
  return f.num.eval(tau) / f.den.eval(tau);
}

RationalFunction spectral_pullback(const RationalFunction& g, double rho,
                                   double v, int sigma) {
  // u(tau) = N(tau)/tau with N = -(sigma*rho/2) tau^2 + v tau + rho/2
  Polynomial N(std::vector<cplx>{cplx(rho / 2.0), cplx(v),
                                 cplx(-sigma * rho / 2.0)});
  int dp = g.num.degree();
  int dq = g.den.degree();
  int m = std::max(dp, dq);
  auto lift = [&](const Polynomial& poly) {
    Polynomial acc;
    Polynomial Nk(std::vector<cplx>{cplx(1.0)});
    for (int k = 0; k <= poly.degree(); ++k) {
      if (k > 0) Nk = Nk * N;
      std::vector<cplx> taupow(m - k + 1, cplx(0.0));
      taupow[m - k] = poly.c[k];
      acc = acc + (Nk * Polynomial(std::move(taupow)));
    }
    return acc;
  };
  return RationalFunction::from_polys(lift(g.num), lift(g.den));
}

}  // namespace weyl
