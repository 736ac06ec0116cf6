#pragma once
#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "weyl/monodromy.hpp"
#include "weyl/spectral.hpp"

namespace weyl {

enum class Side { interior, exterior };

struct LabeledPoint {
  std::string name;
  cplx value;
  Side side;
};

// Inside/outside assignment of the labeled spectral points for one choice of
// iota_sigma-invariant contour.
struct ContourClass {
  int sigma;
  std::vector<LabeledPoint> assignment;
};

// Closed polyline of tau samples (first point repeated at the end).
struct SampledContour {
  std::vector<cplx> points;
};

// Fixed points of iota_sigma: {+-i} for sigma=1, {+-1} for sigma=-1.
cplx fixed_point(int sigma);

// Discrete winding number of the polyline around w. Throws
// std::domain_error("on-contour") if w is within 1e-8 of a segment and
// std::runtime_error("insufficient sampling") if the estimate is farther
// than 0.25 from an integer.
int winding_number(const SampledContour& c, cplx w);

SampledContour circle_contour(double radius, int n = 256);

struct ContourWitness {
  bool ok = false;
  SampledContour curve;
  std::vector<std::string> violations;
};

// Construct an iota_sigma-invariant simple closed curve through the fixed
// points that realizes the assignment (all labeled values must be real).
// The half-curve is a serpentine through equivariantly chosen real-axis
// crossings inside a fundamental domain of iota_sigma (the right half-plane
// for sigma = 1, the unit disk for sigma = -1); the other half is its
// involution image, so invariance is exact.
ContourWitness realize_contour(const ContourClass& cc, int target_samples = 1024);

// Empty result means ok; otherwise the violated constraint identifiers
// ("orbit parity", "fixed-point collision", "degenerate point", witness
// failures).
std::vector<std::string> validate_class(const ContourClass& cc,
                                        bool build_witness = true);

std::function<bool(WeylPoint)> admissible_region(const MonodromySpec& spec,
                                                 const ContourClass& cc);

// Labeled spectral points of the diag_eps family at p (tau1/tau2 for eps=1,
// tau0/tau0t for eps=0), real on the admissible region.
struct DiagPoints {
  double tau1;  // tau1 (eps=1) or tau0 (eps=0)
  double tau2;  // tau2 (eps=1) or tau0t (eps=0)
};
DiagPoints diag_points(const MonodromySpec& spec, WeylPoint p);

// Contour class for the diag_eps family, cls in {1,2,3,4} matching the four
// interior/exterior assignments (1: both in; 2: tau1 out, tau2 in; 3: both
// out; 4: tau1 in, tau2 out). For eps=0, cls 1 puts tau0 in / tau0t out and
// cls 2 the reverse.
ContourClass make_diag_class(const MonodromySpec& spec, int cls, WeylPoint p);

// Write the samples as CSV (header "re,im").
void write_contour_csv(const SampledContour& c, const std::string& path);

}  // namespace weyl
