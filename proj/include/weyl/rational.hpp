#pragma once
#include <complex>
#include <vector>

namespace weyl {

using cplx = std::complex<double>;

// Dense polynomial in tau, coefficients in ascending degree.
struct Polynomial {
  std::vector<cplx> c;

  Polynomial() : c{cplx(0.0, 0.0)} {}
  explicit Polynomial(std::vector<cplx> coeffs);
  static Polynomial from_roots(const std::vector<cplx>& roots, cplx lead = 1.0);

  int degree() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const;
  cplx lead() const { return c.back(); }
  cplx eval(cplx tau) const;
  void trim(double tol = 0.0);

  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator+(const Polynomial& o) const;
  Polynomial scaled(cplx k) const;
};

// Roots with multiplicity. Throws std::domain_error("degenerate") on the
// zero polynomial or degree 0.
std::vector<cplx> poly_roots(const Polynomial& p);

// Quotient of polynomials with explicit zero/pole multisets (kept in sync
// with the coefficient data after common-factor cancellation).
struct RationalFunction {
  Polynomial num;
  Polynomial den;
  std::vector<cplx> zeros;
  std::vector<cplx> poles;

  static RationalFunction constant(cplx k);
  static RationalFunction from_factored(cplx k, std::vector<cplx> zeros,
                                        std::vector<cplx> poles);
  static RationalFunction from_polys(Polynomial num, Polynomial den,
                                     double cancel_tol = 1e-10);

  // Ratio of leading coefficients (num over den).
  cplx lead_ratio() const { return num.lead() / den.lead(); }
  // Value at tau -> infinity (0, finite, or inf encoded as the limit of
  // lead_ratio * tau^(deg num - deg den); callers check degree_diff first).
  int degree_diff() const { return num.degree() - den.degree(); }

  RationalFunction operator*(const RationalFunction& o) const;
  RationalFunction inverse() const;
};

// Throws std::domain_error("pole evaluation") if tau is within 1e-14 of a pole.
cplx rat_eval(const RationalFunction& f, cplx tau);

// Substitute u = v + sigma*(rho/2)*(sigma - tau^2)/tau into a rational
// function of u, returning a rational function of tau.
RationalFunction spectral_pullback(const RationalFunction& g_in_u, double rho,
                                   double v, int sigma);

}  // namespace weyl
