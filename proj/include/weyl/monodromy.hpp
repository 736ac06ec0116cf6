#pragma once
#include <stdexcept>

namespace weyl {

enum class Family { diag_eps, kasner, emd3 };

// Parameters of one monodromy family. Unused fields keep their defaults.
struct MonodromySpec {
  Family family = Family::diag_eps;
  int eps = 1;        // diag_eps: 0 or 1
  double m = 1.0;     // diag_eps mass, > 0
  int sigma = 1;      // +1 or -1
  double omega = 1.0; // kasner spectral parameter
  double h1 = 1.0, h2 = 1.0, Q = 1.0, P = 1.0;  // emd3

  void check() const {
    if (sigma != 1 && sigma != -1) throw std::invalid_argument("sigma must be +-1");
    if (family == Family::diag_eps) {
      if (m <= 0.0) throw std::invalid_argument("m must be positive");
      if (eps != 0 && eps != 1) throw std::invalid_argument("eps must be 0 or 1");
    }
    if (family == Family::emd3 && (h1 <= 0.0 || h2 <= 0.0))
      throw std::invalid_argument("h1, h2 must be positive");
  }
};

}  // namespace weyl
