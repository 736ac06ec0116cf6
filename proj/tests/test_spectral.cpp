#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <complex>

#include "doctest.h"
#include "weyl/spectral.hpp"

using namespace weyl;
using namespace std::complex_literals;

TEST_CASE("involution and its fixed points") {
  CHECK(std::abs(involution(1.0i, 1) - 1.0i) < 1e-15);
  CHECK(std::abs(involution(-1.0i, 1) + 1.0i) < 1e-15);
  CHECK(std::abs(involution(1.0, -1) - 1.0) < 1e-15);
  CHECK(std::abs(involution(-1.0, -1) + 1.0) < 1e-15);
  cplx tau = 0.7 - 0.2i;
  CHECK(std::abs(involution(involution(tau, -1), -1) - tau) < 1e-15);
  CHECK_THROWS_AS(involution(0.0, 1), std::domain_error);
}

TEST_CASE("spectral curve value") {
  CHECK(std::abs(spectral_u(1.0i, {1.0, 3.0}, 1) - (3.0 - 1.0i)) < 1e-15);
  // fixed points map to the branch points v -+ sqrt(-sigma) rho
  WeylPoint p{2.0, -0.5};
  CHECK(std::abs(spectral_u(1.0, p, -1) - (p.v + p.rho)) < 1e-15);
  CHECK(std::abs(spectral_u(-1.0, p, -1) - (p.v - p.rho)) < 1e-15);
  // invariance under the involution
  cplx tau = 0.3 + 1.1i;
  for (int sg : {1, -1})
    CHECK(std::abs(spectral_u(tau, p, sg) -
                   spectral_u(involution(tau, sg), p, sg)) < 1e-13);
}

TEST_CASE("excluded set") {
  WeylPoint p{1.5, 0.25};
  CHECK(in_excluded_set(cplx(0.25, 1.5), p, 1));
  CHECK(in_excluded_set(cplx(0.25, -1.5), p, 1));
  CHECK(in_excluded_set(cplx(0.25 + 1.5, 0.0), p, -1));
  CHECK_FALSE(in_excluded_set(cplx(2.0, 0.0), p, 1));
}

TEST_CASE("square root with arg in [0, 2pi)") {
  CHECK(std::abs(sqrt_branch_02pi(-1.0) - 1.0i) < 1e-15);
  CHECK(std::abs(sqrt_branch_02pi(4.0) - 2.0) < 1e-15);
  // below the cut: result flips to the upper half-plane
  cplx z = 1.0 - 1e-3i;
  CHECK(sqrt_branch_02pi(z).imag() >= 0.0);
  CHECK(std::abs(sqrt_branch_02pi(z) * sqrt_branch_02pi(z) - z) < 1e-12);
}

TEST_CASE("phi solves the spectral relation and its differential") {
  for (int sg : {1, -1}) {
    WeylPoint base = sg == 1 ? WeylPoint{1.5, 0.0} : WeylPoint{0.5, 2.0};
    PhiSpec spec{cplx(sg == 1 ? 9.0 : 7.0, 0.0), 1, sg, base};
    WeylPoint p = sg == 1 ? WeylPoint{1.3, 0.2} : WeylPoint{0.45, 2.2};
    cplx phi = phi_eval(spec, p);
    CHECK(std::abs(spectral_u(phi, p, sg) - spec.omega) < 1e-12);

    PhiSpec other = spec;
    other.sign = -1;
    cplx phi2 = phi_eval(other, p);
    // the two branches are the two roots of the same quadratic
    CHECK(std::abs(phi * phi2 + double(sg)) < 1e-12);

    auto res = phi_differential_check(spec, p, 1e-5);
    CHECK(res.deriv_dev < 1e-7);
    CHECK(res.closure < 1e-7);
  }
}

TEST_CASE("phi throws on branch points") {
  WeylPoint p{1.0, 0.5};
  PhiSpec spec{cplx(0.5, 1.0), 1, 1, p};
  CHECK_THROWS_AS(phi_eval(spec, p), std::domain_error);
}
