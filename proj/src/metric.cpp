#include "weyl/metric.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "weyl/closed_forms.hpp"

namespace weyl {

Eigen::Matrix4d Metric4Patch::components(WeylPoint p) const {
  double D = Delta(p);
  double ps = psi ? psi(p) : 0.0;
  double b = B ? B(p) : 0.0;
  double s = sigma;
  double e = std::exp(ps) / D;
  Eigen::Matrix4d g = Eigen::Matrix4d::Zero();
  g(0, 0) = -s * D;
  g(0, 3) = g(3, 0) = -s * D * b;
  g(3, 3) = -s * D * b * b + p.rho * p.rho / D;
  g(1, 1) = sig2 == TwoDSig::form_A ? s * e : e;
  g(2, 2) = sig2 == TwoDSig::form_A ? e : s * e;
  return g;
}

Metric4Patch assemble_patch(ScalarField Delta, ScalarField psi, ScalarField B,
                            int sigma, TwoDSig sig2,
                            std::function<bool(WeylPoint)> domain,
                            GridSpec w) {
  Metric4Patch patch{std::move(Delta), std::move(psi), std::move(B), sigma,
                     sig2, std::move(domain)};
  uint64_t state = 0x9e3779b97f4a7c15ull;
  auto next01 = [&]() {
    state = state * 6364136223846793005ull + 1442695040888963407ull;
    return double(state >> 11) / double(1ull << 53);
  };
  int checked = 0, tries = 0;
  while (checked < 100 && tries < 10000) {
    ++tries;
    WeylPoint p{w.rho0 + next01() * (w.rho1 - w.rho0),
                w.v0 + next01() * (w.v1 - w.v0)};
    if (!patch.in_domain(p)) continue;
    ++checked;
    double D = patch.Delta(p);
    if (!(D > 0.0) || !std::isfinite(D))
      throw std::domain_error("signature violation");
    Eigen::Matrix4d g = patch.components(p);
    if (!(g.determinant() < 0.0))
      throw std::domain_error("signature violation");
  }
  return patch;
}

namespace {

// 4th-order central differences of ln(Delta).
double dln(const ScalarField& f, WeylPoint p, bool wrt_rho, double h = 1e-4) {
  auto at = [&](double d) {
    WeylPoint q = p;
    (wrt_rho ? q.rho : q.v) += d;
    return std::log(f(q));
  };
  return (-at(2 * h) + 8.0 * at(h) - 8.0 * at(-h) + at(-2 * h)) / (12.0 * h);
}

struct PsiRhs {
  const ScalarField& Delta;
  int sigma;
  double drho(WeylPoint p) const {
    double a = dln(Delta, p, true), b = dln(Delta, p, false);
    return 0.5 * p.rho * (a * a - sigma * b * b);
  }
  double dv(WeylPoint p) const {
    return p.rho * dln(Delta, p, true) * dln(Delta, p, false);
  }
};

double simpson(const std::function<double(double)>& f, double a, double b,
               int nsub) {
  if (nsub % 2) ++nsub;
  double h = (b - a) / nsub;
  double acc = f(a) + f(b);
  for (int k = 1; k < nsub; ++k) acc += f(a + k * h) * (k % 2 ? 4.0 : 2.0);
  return acc * h / 3.0;
}

int subdiv(double len) {
  int n = static_cast<int>(std::ceil(std::abs(len) / 0.005));
  return std::max(8, n + (n % 2));
}

}  // namespace

double psi_closure_residual(const ScalarField& Delta, int sigma, WeylPoint p,
                            double h) {
  PsiRhs rhs{Delta, sigma};
  auto res = [&](double hh) {
    double dPdv = (rhs.drho({p.rho, p.v + hh}) - rhs.drho({p.rho, p.v - hh})) /
                  (2.0 * hh);
    double dQdr = (rhs.dv({p.rho + hh, p.v}) - rhs.dv({p.rho - hh, p.v})) /
                  (2.0 * hh);
    return dPdv - dQdr;
  };
  double r1 = res(h), r2 = res(h / 2.0);
  return std::abs((4.0 * r2 - r1) / 3.0);
}

double integrate_psi_at(const ScalarField& Delta, int sigma, WeylPoint anchor,
                        double anchor_value, WeylPoint target) {
  PsiRhs rhs{Delta, sigma};
  double acc = anchor_value;
  if (target.rho != anchor.rho) {
    acc += simpson(
        [&](double r) { return rhs.drho({r, anchor.v}); }, anchor.rho,
        target.rho, subdiv(target.rho - anchor.rho));
  }
  if (target.v != anchor.v) {
    acc += simpson([&](double vv) { return rhs.dv({target.rho, vv}); },
                   anchor.v, target.v, subdiv(target.v - anchor.v));
  }
  return acc;
}

ConformalFactorField integrate_psi(const ScalarField& Delta, int sigma,
                                   const GridSpec& grid, WeylPoint anchor,
                                   double anchor_value) {
  PsiRhs rhs{Delta, sigma};
  ConformalFactorField out{Field2D(grid), 0.0};

  for (WeylPoint p :
       {WeylPoint{grid.rho(grid.nr / 4), grid.v(grid.nv / 4)},
        WeylPoint{grid.rho(grid.nr / 2), grid.v(grid.nv / 2)},
        WeylPoint{grid.rho(3 * grid.nr / 4), grid.v(3 * grid.nv / 4)}}) {
    out.max_closure_residual =
        std::max(out.max_closure_residual, psi_closure_residual(Delta, sigma, p));
  }
  if (out.max_closure_residual > 1e-7)
    throw std::runtime_error("non-closed one-form");

  // cumulative along the row v = anchor.v
  std::vector<double> row(grid.nr);
  for (int i = 0; i < grid.nr; ++i) {
    double r = grid.rho(i);
    double prev_r = i == 0 ? anchor.rho : grid.rho(i - 1);
    double base = i == 0 ? anchor_value : row[i - 1];
    row[i] = base + simpson([&](double rr) { return rhs.drho({rr, anchor.v}); },
                            prev_r, r, subdiv(r - prev_r));
  }
  // cumulative along each column, starting at (rho_i, anchor.v)
  parallel_for(grid.nr, [&](int i) {
    double r = grid.rho(i);
    double start = row[i] + simpson(
                                [&](double vv) { return rhs.dv({r, vv}); },
                                anchor.v, grid.v(0), subdiv(grid.v(0) - anchor.v));
    out.psi.at(i, 0) = start;
    for (int j = 1; j < grid.nv; ++j) {
      out.psi.at(i, j) =
          out.psi.at(i, j - 1) +
          simpson([&](double vv) { return rhs.dv({r, vv}); }, grid.v(j - 1),
                  grid.v(j), subdiv(grid.dv()));
    }
  });
  return out;
}

namespace {

CoordinateMap make_map(std::string name,
                       std::function<WeylPoint(double, double)> fwd,
                       std::function<Eigen::Matrix2d(double, double)> jac,
                       double t_scale = 1.0, bool negate_2d = false) {
  return CoordinateMap{std::move(name), std::move(fwd), std::move(jac), t_scale,
                       negate_2d};
}

}  // namespace

CoordinateMap map_sph_exterior(double m) {
  return make_map(
      "sph_exterior",
      [m](double r, double th) {
        return WeylPoint{std::sqrt(r * r - 2 * m * r) * std::sin(th),
                         (r - m) * std::cos(th)};
      },
      [m](double r, double th) {
        double s = std::sqrt(r * r - 2 * m * r);
        Eigen::Matrix2d J;
        J << (r - m) / s * std::sin(th), s * std::cos(th), std::cos(th),
            -(r - m) * std::sin(th);
        return J;
      });
}

CoordinateMap map_hyp_interior(double m) {
  return make_map(
      "hyp_interior",
      [m](double r, double th) {
        return WeylPoint{std::sqrt(2 * m * r - r * r) * std::sinh(th),
                         (r - m) * std::cosh(th)};
      },
      [m](double r, double th) {
        double s = std::sqrt(2 * m * r - r * r);
        Eigen::Matrix2d J;
        J << (m - r) / s * std::sinh(th), s * std::cosh(th), std::cosh(th),
            (r - m) * std::sinh(th);
        return J;
      });
}

CoordinateMap map_sph_negative(double m) {
  return make_map(
      "sph_negative",
      [m](double r, double th) {
        return WeylPoint{std::sqrt(r * r + 2 * m * r) * std::sin(th),
                         (r + m) * std::cos(th)};
      },
      [m](double r, double th) {
        double s = std::sqrt(r * r + 2 * m * r);
        Eigen::Matrix2d J;
        J << (r + m) / s * std::sin(th), s * std::cos(th), std::cos(th),
            -(r + m) * std::sin(th);
        return J;
      });
}

CoordinateMap map_rindler(double m) {
  return make_map(
      "rindler",
      [m](double zt, double rt) {
        return WeylPoint{zt * rt / (2 * m), (zt * zt - rt * rt) / (4 * m)};
      },
      [m](double zt, double rt) {
        Eigen::Matrix2d J;
        J << rt / (2 * m), zt / (2 * m), zt / (2 * m), -rt / (2 * m);
        return J;
      },
      2 * m);
}

CoordinateMap map_aiii(double m) {
  return make_map(
      "aiii",
      [m](double r, double z) {
        return WeylPoint{std::sqrt(m) * z * std::sqrt(r),
                         r - 0.25 * m * z * z};
      },
      [m](double r, double z) {
        Eigen::Matrix2d J;
        J << std::sqrt(m) * z / (2 * std::sqrt(r)), std::sqrt(m) * std::sqrt(r),
            1.0, -0.5 * m * z;
        return J;
      });
}

CoordinateMap map_aiii_timelike(double m) {
  return make_map(
      "aiii_timelike",
      [m](double r, double z) {
        return WeylPoint{std::sqrt(m) * z * std::sqrt(r),
                         r + 0.25 * m * z * z};
      },
      [m](double r, double z) {
        Eigen::Matrix2d J;
        J << std::sqrt(m) * z / (2 * std::sqrt(r)), std::sqrt(m) * std::sqrt(r),
            1.0, 0.5 * m * z;
        return J;
      });
}

CoordinateMap map_kasner100_a(double m) {
  return make_map(
      "kasner100_a",
      [m](double zt, double rt) {
        return WeylPoint{zt * rt / (2 * m), (zt * zt + rt * rt) / (4 * m)};
      },
      [m](double zt, double rt) {
        Eigen::Matrix2d J;
        J << rt / (2 * m), zt / (2 * m), zt / (2 * m), rt / (2 * m);
        return J;
      },
      2 * m);
}

CoordinateMap map_kasner100_b(double m) {
  return make_map(
      "kasner100_b",
      [m](double zt, double rt) {
        return WeylPoint{zt * rt / (2 * m), (zt * zt + rt * rt) / 2};
      },
      [m](double zt, double rt) {
        Eigen::Matrix2d J;
        J << rt / (2 * m), zt / (2 * m), zt, rt;
        return J;
      },
      2 * m);
}

CoordinateMap map_quad(int region, double m) {
  auto s = [m](double r) { return std::sqrt(2 * m * r - r * r); };
  auto sp = [m](double r) { return (m - r) / std::sqrt(2 * m * r - r * r); };
  switch (region) {
    case 1:
      return make_map(
          "quad_I",
          [=](double r, double th) {
            return WeylPoint{s(r) * std::sin(th), (r - m) * std::cos(th)};
          },
          [=](double r, double th) {
            Eigen::Matrix2d J;
            J << sp(r) * std::sin(th), s(r) * std::cos(th), std::cos(th),
                -(r - m) * std::sin(th);
            return J;
          });
    case 2:
      return make_map(
          "quad_II",
          [=](double r, double th) {
            return WeylPoint{m - (r - m) * std::cos(th),
                             m - s(r) * std::sin(th)};
          },
          [=](double r, double th) {
            Eigen::Matrix2d J;
            J << -std::cos(th), (r - m) * std::sin(th), -sp(r) * std::sin(th),
                -s(r) * std::cos(th);
            return J;
          },
          1.0, true);
    case 3:
      return make_map(
          "quad_III",
          [=](double r, double th) {
            return WeylPoint{2 * m - s(r) * std::sin(th),
                             (m - r) * std::cos(th)};
          },
          [=](double r, double th) {
            Eigen::Matrix2d J;
            J << -sp(r) * std::sin(th), -s(r) * std::cos(th), -std::cos(th),
                -(m - r) * std::sin(th);
            return J;
          });
    case 4:
      return make_map(
          "quad_IV",
          [=](double r, double th) {
            return WeylPoint{m + (r - m) * std::cos(th),
                             -m + s(r) * std::sin(th)};
          },
          [=](double r, double th) {
            Eigen::Matrix2d J;
            J << std::cos(th), -(r - m) * std::sin(th), sp(r) * std::sin(th),
                s(r) * std::cos(th);
            return J;
          },
          1.0, true);
    default:
      throw std::invalid_argument("region");
  }
}

Eigen::Matrix4d apply_map(const Metric4Patch& patch, const CoordinateMap& map,
                          double x1, double x2) {
  WeylPoint p = map.fwd(x1, x2);
  Eigen::Matrix4d g = patch.components(p);
  Eigen::Matrix2d g2 = Eigen::Matrix2d::Zero();
  g2(0, 0) = g(1, 1);
  g2(1, 1) = g(2, 2);
  if (map.negate_2d) g2 = -g2;
  Eigen::Matrix2d J = map.jac(x1, x2);
  Eigen::Matrix2d h2 = J.transpose() * g2 * J;
  Eigen::Matrix4d out = Eigen::Matrix4d::Zero();
  out(0, 0) = map.t_scale * map.t_scale * g(0, 0);
  out(0, 3) = out(3, 0) = map.t_scale * g(0, 3);
  out(3, 3) = g(3, 3);
  out(1, 1) = h2(0, 0);
  out(1, 2) = out(2, 1) = h2(0, 1);
  out(2, 2) = h2(1, 1);
  return out;
}

void check_map_orientation(const CoordinateMap& map, double x1a, double x1b,
                           double x2a, double x2b, int n) {
  double sign = 0.0;
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= n; ++j) {
      double x1 = x1a + (x1b - x1a) * i / n;
      double x2 = x2a + (x2b - x2a) * j / n;
      double det = map.jac(x1, x2).determinant();
      if (det == 0.0) throw std::runtime_error("fold detected");
      double s = det > 0.0 ? 1.0 : -1.0;
      if (sign == 0.0) sign = s;
      if (s != sign) throw std::runtime_error("fold detected");
    }
  }
}

bool check_affine_conditions(double a, double b, double c, double d,
                             int sigma) {
  if (a * d - b * c == 0.0) return false;
  double s = sigma;
  return s * a * a + b * b == s * d * d + c * c && a * c == -s * b * d;
}

WeylPoint quad_B_inv(double m, WeylPoint p) { return {m - p.v, m - p.rho}; }
WeylPoint quad_C_inv(double m, WeylPoint p) { return {2 * m - p.rho, -p.v}; }
WeylPoint quad_D_inv(double m, WeylPoint p) { return {p.v + m, p.rho - m}; }

int quad_region(double m, WeylPoint p) {
  if (p.rho <= m - std::abs(p.v)) return 1;
  if (p.rho >= m + std::abs(p.v)) return 3;
  return p.v > 0.0 ? 2 : 4;
}

double extend_interior_delta(double m, WeylPoint p, int variant) {
  static const int table[4][4] = {
      {1, 2, 3, 4},  // continuous extension
      {1, 1, 1, 1},
      {1, 1, 4, 4},
      {1, 2, 2, 1},
  };
  if (variant < 0 || variant > 3) throw std::invalid_argument("variant");
  int region = quad_region(m, p);
  WeylPoint q = p;
  if (region == 2) q = quad_B_inv(m, p);
  if (region == 3) q = quad_C_inv(m, p);
  if (region == 4) q = quad_D_inv(m, p);
  return closed::delta_eps1(-1, table[variant][region - 1], m, q);
}

void write_patch_csv(const Metric4Patch& patch, const GridSpec& grid,
                     const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw std::runtime_error("cannot open " + path);
  std::fprintf(f, "rho,v,Delta,psi,B,g_tt,g_rr,g_vv,g_phiphi,g_tphi\n");
  for (int j = 0; j < grid.nv; ++j) {
    for (int i = 0; i < grid.nr; ++i) {
      WeylPoint p{grid.rho(i), grid.v(j)};
      if (!patch.in_domain(p)) continue;
      Eigen::Matrix4d g = patch.components(p);
      std::fprintf(f,
                   "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,"
                   "%.17g\n",
                   p.rho, p.v, patch.Delta(p), patch.psi ? patch.psi(p) : 0.0,
                   patch.B ? patch.B(p) : 0.0, g(0, 0), g(1, 1), g(2, 2),
                   g(3, 3), g(0, 3));
    }
  }
  std::fclose(f);
}

}  // namespace weyl
