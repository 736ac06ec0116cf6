#pragma once
#include <Eigen/Dense>
#include <array>
#include <functional>

#include "weyl/contour.hpp"
#include "weyl/monodromy.hpp"
#include "weyl/rational.hpp"
#include "weyl/spectral.hpp"

namespace weyl {

struct FactorPair {
  RationalFunction m_plus;   // zeros/poles all exterior-side
  RationalFunction m_minus;  // zeros/poles all interior-side
  cplx norm_check;           // m_plus(0), must be 1
};

struct DiagFactorization {
  FactorPair entry1;  // factorization of the (1,1) entry
  FactorPair entry2;  // the (2,2) entry (reciprocal of entry 1)
  double Delta;       // M = diag(Delta, 1/Delta), after the sign convention
  bool sign_flipped;  // overall monodromy sign was flipped to make Delta > 0
};

// The (1,1) entry of the diag_eps monodromy pulled back through the spectral
// curve at p.
RationalFunction diag_entry_pullback(const MonodromySpec& spec, WeylPoint p);

// Canonical factorization of the diagonal family with respect to the
// assignment cc. Throws std::domain_error("inadmissible region") /
// ("fixed-point collision").
DiagFactorization canonical_factor_diag(const MonodromySpec& spec,
                                        const ContourClass& cc, WeylPoint p);

// Constant matrix [[ct1*c1 - ct3*c3, ct1*c2 - ct3*c4],
//                  [c3*ct4 - c1*ct2, ct4*c4 - ct2*c2]].
Eigen::Matrix2d kasner_monodromy(const std::array<double, 4>& c,
                                 const std::array<double, 4>& ct);

// Paper constants c1 = ct1 = (2w)^2, c4 = ct4 = (2w)^-2, others zero.
std::array<double, 4> kasner_paper_constants(double omega);

struct KasnerFactorization {
  double M11;            // M = diag(M11, 1/M11)
  RationalFunction X11;  // X = diag(X11, 1/X11), X(0) = I
  double tau1, tau1t;    // simple points, tau1 * tau1t = 1
};

enum class KasnerMode { meromorphic, canonical };

// sigma = -1 family; requires |v| > rho. canonical places tau1t exterior.
KasnerFactorization kasner_factor(KasnerMode mode, WeylPoint p);

// diag(K rho^alpha phi^beta, 1/(K rho^alpha phi^beta)) evaluated pointwise;
// phi must be real-valued on the region. Throws std::domain_error otherwise.
std::function<Eigen::Matrix2d(WeylPoint)> solution_family_multiplier(
    double alpha, int beta, double K, const PhiSpec& phispec);

}  // namespace weyl
