#pragma once
#include "weyl/spectral.hpp"

namespace weyl::closed {

// Exact Delta / psi / Kretschmann profiles of the four contour classes of the
// eps=1 diagonal family. cls is 1..4; sigma=-1 formulas are the region-I
// (rho < m - |v|) expressions.
double delta_eps1(int sigma, int cls, double m, WeylPoint p);
double psi_eps1(int sigma, int cls, double m, WeylPoint p);
double kretschmann_eps1(int sigma, int cls, double m, WeylPoint p);

// eps=0 diagonal family, cls in {1,2}; sigma=-1 valid on v > rho.
double delta_eps0(int sigma, int cls, double m, WeylPoint p);
double psi_eps0(int sigma, int cls, double m, WeylPoint p);

// Kasner solution M = diag(rho^4, rho^-4): psi with e^psi = 9 rho^8.
double psi_kasner(WeylPoint p);

}  // namespace weyl::closed
