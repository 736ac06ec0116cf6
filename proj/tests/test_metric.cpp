#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstdio>

#include "doctest.h"
#include "weyl/closed_forms.hpp"
#include "weyl/metric.hpp"

using namespace weyl;

static ScalarField schw_delta() {
  return [](WeylPoint p) { return closed::delta_eps1(1, 1, 1.0, p); };
}
static ScalarField schw_psi() {
  return [](WeylPoint p) { return closed::psi_eps1(1, 1, 1.0, p); };
}

TEST_CASE("patch components follow the stationary ansatz") {
  Metric4Patch patch;
  patch.Delta = [](WeylPoint) { return 2.0; };
  patch.psi = [](WeylPoint) { return 0.5; };
  patch.B = [](WeylPoint) { return 0.25; };
  patch.sigma = 1;
  patch.sig2 = TwoDSig::form_A;
  WeylPoint p{1.5, 0.3};
  Eigen::Matrix4d g = patch.components(p);
  CHECK(g(0, 0) == doctest::Approx(-2.0));
  CHECK(g(0, 3) == doctest::Approx(-2.0 * 0.25));
  CHECK(g(3, 3) == doctest::Approx(-2.0 * 0.0625 + p.rho * p.rho / 2.0));
  CHECK(g(1, 1) == doctest::Approx(std::exp(0.5) / 2.0));
  CHECK(g(1, 1) == doctest::Approx(g(2, 2)));
  CHECK(g(1, 2) == 0.0);

  patch.sigma = -1;
  g = patch.components(p);
  CHECK(g(0, 0) == doctest::Approx(2.0));   // -sigma * Delta
  CHECK(g(1, 1) == doctest::Approx(-std::exp(0.5) / 2.0));  // form_A flips drho^2
  CHECK(g(2, 2) == doctest::Approx(std::exp(0.5) / 2.0));
  patch.sig2 = TwoDSig::form_B;
  g = patch.components(p);
  CHECK(g(1, 1) == doctest::Approx(std::exp(0.5) / 2.0));
  CHECK(g(2, 2) == doctest::Approx(-std::exp(0.5) / 2.0));
}

TEST_CASE("signature is enforced at assembly") {
  GridSpec win{0.5, 2.0, -0.5, 0.5, 32, 32};
  CHECK_THROWS_WITH_AS(
      assemble_patch([](WeylPoint) { return -1.0; }, nullptr, nullptr, 1,
                     TwoDSig::form_A, nullptr, win),
      "signature violation", std::domain_error);
  auto ok = assemble_patch(schw_delta(), schw_psi(), nullptr, 1,
                           TwoDSig::form_A, nullptr, win);
  CHECK(ok.in_domain({1.0, 0.0}));
  CHECK_FALSE(ok.in_domain({-1.0, 0.0}));
}

TEST_CASE("conformal factor integration matches the closed form") {
  GridSpec g{0.6, 2.0, -0.6, 0.6, 57, 57};
  WeylPoint anchor{g.rho(28), g.v(28)};
  auto cf = integrate_psi(schw_delta(), 1, g, anchor,
                          closed::psi_eps1(1, 1, 1.0, anchor));
  CHECK(cf.max_closure_residual < 1e-7);
  double worst = 0.0;
  for (int j = 0; j < g.nv; j += 7)
    for (int i = 0; i < g.nr; i += 7) {
      WeylPoint p{g.rho(i), g.v(j)};
      worst = std::max(worst,
                       std::abs(cf.psi.at(i, j) - closed::psi_eps1(1, 1, 1.0, p)));
    }
  CHECK(worst < 1e-7);

  double single = integrate_psi_at(schw_delta(), 1, anchor,
                                   closed::psi_eps1(1, 1, 1.0, anchor),
                                   {1.7, -0.4});
  CHECK(single ==
        doctest::Approx(closed::psi_eps1(1, 1, 1.0, {1.7, -0.4})).epsilon(1e-7));

  // a profile that solves nothing has a non-closed one-form
  ScalarField bogus = [](WeylPoint p) { return p.rho * (1.0 + 0.1 * std::sin(p.v)); };
  CHECK(std::abs(psi_closure_residual(bogus, 1, {1.2, 0.2})) > 1e-4);
  CHECK_THROWS_WITH_AS(integrate_psi(bogus, 1, g, anchor, 0.0),
                       "non-closed one-form", std::runtime_error);
}

TEST_CASE("chart maps carry consistent jacobians") {
  double m = 1.0;
  struct Probe {
    CoordinateMap map;
    double x1, x2;
  };
  Probe probes[] = {
      {map_sph_exterior(m), 3.0, 1.1},   {map_hyp_interior(m), 0.6, 0.8},
      {map_sph_negative(m), 2.0, 0.9},   {map_rindler(m), 1.3, 0.7},
      {map_aiii(m), 1.1, 0.5},           {map_aiii_timelike(m), 1.2, 0.4},
      {map_kasner100_a(m), 1.6, 0.5},    {map_kasner100_b(m), 1.4, 0.6},
      {map_quad(1, m), 0.8, 1.2},        {map_quad(3, m), 0.8, 1.2},
  };
  for (const auto& pr : probes) {
    CAPTURE(pr.map.name);
    const double h = 1e-6;
    Eigen::Matrix2d J = pr.map.jac(pr.x1, pr.x2);
    WeylPoint pa = pr.map.fwd(pr.x1 + h, pr.x2), pb = pr.map.fwd(pr.x1 - h, pr.x2);
    WeylPoint pc = pr.map.fwd(pr.x1, pr.x2 + h), pd = pr.map.fwd(pr.x1, pr.x2 - h);
    CHECK(J(0, 0) == doctest::Approx((pa.rho - pb.rho) / (2 * h)).epsilon(1e-6));
    CHECK(J(1, 0) == doctest::Approx((pa.v - pb.v) / (2 * h)).epsilon(1e-6));
    CHECK(J(0, 1) == doctest::Approx((pc.rho - pd.rho) / (2 * h)).epsilon(1e-6));
    CHECK(J(1, 1) == doctest::Approx((pc.v - pd.v) / (2 * h)).epsilon(1e-6));
  }
}

TEST_CASE("pulled-back exterior metric") {
  GridSpec win{0.5, 4.0, -1.5, 1.5, 32, 32};
  auto patch = assemble_patch(schw_delta(), schw_psi(), nullptr, 1,
                              TwoDSig::form_A, nullptr, win);
  auto cm = map_sph_exterior(1.0);
  Eigen::Matrix4d g = apply_map(patch, cm, 3.0, M_PI / 2.0);
  CHECK(g(0, 0) == doctest::Approx(-1.0 / 3.0).epsilon(1e-12));
  CHECK(g(1, 1) == doctest::Approx(3.0).epsilon(1e-10));
  CHECK(g(2, 2) == doctest::Approx(9.0).epsilon(1e-10));
  CHECK(g(3, 3) == doctest::Approx(9.0).epsilon(1e-10));
  CHECK(std::abs(g(1, 2)) < 1e-10);
  check_map_orientation(cm, 2.5, 6.0, 0.3, 2.8);

  CoordinateMap folded{"folded",
                       [](double a, double b) { return WeylPoint{a * a + 0.1, b}; },
                       [](double a, double) {
                         Eigen::Matrix2d j;
                         j << 2.0 * a, 0.0, 0.0, 1.0;
                         return j;
                       }};
  CHECK_THROWS_WITH_AS(check_map_orientation(folded, -1.0, 1.0, 0.0, 1.0),
                       "fold detected", std::runtime_error);
}

TEST_CASE("affine gluing conditions") {
  CHECK(check_affine_conditions(1.0, 0.0, 0.0, 1.0, 1));
  CHECK(check_affine_conditions(0.0, 1.0, 1.0, 0.0, 1));
  CHECK(check_affine_conditions(0.0, 1.0, -1.0, 0.0, -1));
  CHECK_FALSE(check_affine_conditions(1.0, 1.0, 0.0, 1.0, 1));
}

TEST_CASE("quadrangle region bookkeeping") {
  double m = 1.0;
  CHECK(quad_region(m, {0.3, 0.0}) == 1);
  CHECK(quad_region(m, {0.9, 0.5}) == 2);
  CHECK(quad_region(m, {1.7, 0.0}) == 3);
  CHECK(quad_region(m, {0.9, -0.5}) == 4);
  // the gluing point maps land back in region I
  WeylPoint pII{0.9, 0.5};
  CHECK(quad_region(m, quad_B_inv(m, pII)) == 1);
  CHECK(quad_region(m, quad_C_inv(m, {1.7, 0.0})) == 1);
  CHECK(quad_region(m, quad_D_inv(m, {0.9, -0.5})) == 1);
}

TEST_CASE("extended interior profile is continuous") {
  // evaluate both triangle formulas directly on the internal lines; dyadic
  // coordinates keep the degenerate radicand at exactly zero
  double m = 1.0;
  for (double t : {0.125, 0.25, 0.375, 0.5, 0.625, 0.75, 0.875}) {
    WeylPoint on_ab{t * m, m - t * m};   // I|II
    WeylPoint on_ad{t * m, t * m - m};   // I|IV
    WeylPoint on_bc{m + t * m, t * m};   // II|III
    WeylPoint on_cd{m + t * m, -t * m};  // III|IV
    CHECK(closed::delta_eps1(-1, 1, m, on_ab) ==
          doctest::Approx(closed::delta_eps1(-1, 2, m, quad_B_inv(m, on_ab)))
              .epsilon(1e-12));
    CHECK(closed::delta_eps1(-1, 1, m, on_ad) ==
          doctest::Approx(closed::delta_eps1(-1, 4, m, quad_D_inv(m, on_ad)))
              .epsilon(1e-12));
    CHECK(closed::delta_eps1(-1, 2, m, quad_B_inv(m, on_bc)) ==
          doctest::Approx(closed::delta_eps1(-1, 3, m, quad_C_inv(m, on_bc)))
              .epsilon(1e-12));
    CHECK(closed::delta_eps1(-1, 3, m, quad_C_inv(m, on_cd)) ==
          doctest::Approx(closed::delta_eps1(-1, 4, m, quad_D_inv(m, on_cd)))
              .epsilon(1e-12));
  }
}

TEST_CASE("extended interior profile reduces to the interior exponent") {
  // spherical pullbacks: each quadrangle triangle carries its own branch of
  // the curves r = m(1 +- cos th), and the extension equals 2m/r - 1 there
  double m = 1.0;
  auto sph = [&](double r, double th) {
    double s = std::sqrt(2.0 * m * r - r * r);
    return WeylPoint{s * std::sin(th), (r - m) * std::cos(th)};
  };
  auto in_band = [&](double r, double th, int region) {
    double u = r / m - 1.0, c = std::cos(th);
    switch (region) {
      case 1: return u > std::abs(c);   // outer band
      case 2: return c > std::abs(u);   // polar band, th < pi/2
      case 3: return -u > std::abs(c);  // inner band
      default: return -c > std::abs(u); // polar band, th > pi/2
    }
  };
  for (int region = 1; region <= 4; ++region)
    for (double r = 0.1; r < 2.0; r += 0.13)
      for (double th = 0.2; th < M_PI; th += 0.25) {
        if (!in_band(r, th, region)) continue;
        double got = closed::delta_eps1(-1, region, m, sph(r, th));
        CHECK(got == doctest::Approx(2.0 * m / r - 1.0).epsilon(1e-10));
      }
}

TEST_CASE("alternative extensions differ away from triangle I") {
  double m = 1.0;
  WeylPoint p2{0.5, 0.8};   // triangle II
  WeylPoint p3{1.7, 0.05};  // triangle III
  double base2 = extend_interior_delta(m, p2);
  double base3 = extend_interior_delta(m, p3);
  CHECK(std::abs(extend_interior_delta(m, p2, 1) - base2) > 1e-3);
  CHECK(std::abs(extend_interior_delta(m, p3, 2) - base3) > 1e-3);
  CHECK(std::abs(extend_interior_delta(m, p3, 3) - base3) > 1e-3);
  // all variants agree on triangle I
  WeylPoint p1{0.4, 0.1};
  for (int v = 1; v <= 3; ++v)
    CHECK(extend_interior_delta(m, p1, v) ==
          doctest::Approx(extend_interior_delta(m, p1)).epsilon(1e-14));
}

TEST_CASE("patch csv serialization") {
  GridSpec g{0.8, 1.2, -0.1, 0.1, 3, 3};
  auto patch = assemble_patch(schw_delta(), schw_psi(), nullptr, 1,
                              TwoDSig::form_A, nullptr, g);
  const char* path = "/tmp/test_metric_patch.csv";
  write_patch_csv(patch, g, path);
  FILE* f = fopen(path, "r");
  REQUIRE(f);
  char line[512];
  REQUIRE(fgets(line, sizeof line, f));
  CHECK(std::string(line) ==
        "rho,v,Delta,psi,B,g_tt,g_rr,g_vv,g_phiphi,g_tphi\n");
  int rows = 0;
  double rho, v, Delta;
  while (fgets(line, sizeof line, f)) {
    if (sscanf(line, "%lf,%lf,%lf", &rho, &v, &Delta) == 3) ++rows;
  }
  fclose(f);
  CHECK(rows == 9);
}
