#include "weyl/verify.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <nlohmann/json.hpp>
#include <vector>

namespace weyl {

namespace {

template <typename F>
auto central4(const F& f, double h) {
  using R = decltype(f(0.0));
  R p2 = f(2 * h), p1 = f(h), m1 = f(-h), m2 = f(-2 * h);
  return R((8.0 * (p1 - m1) - (p2 - m2)) / (12.0 * h));
}

struct Tally {
  double mx = 0.0, sq = 0.0;
  long n = 0;
  int excluded = 0;

  void add(double r) {
    mx = std::max(mx, r);
    sq += r * r;
    ++n;
  }
  void merge(const Tally& o) {
    mx = std::max(mx, o.mx);
    sq += o.sq;
    n += o.n;
    excluded += o.excluded;
  }
  double l2() const { return n ? std::sqrt(sq / n) : 0.0; }
};

Tally field_eq_tally(const MatrixField& M, int sigma, const GridSpec& g,
                     double ho, double hi) {
  // G1 = -sigma rho A_rho, G2 = rho A_v with A = M^-1 dM
  auto G = [&](WeylPoint p, bool wr) -> Eigen::MatrixXd {
    Eigen::MatrixXd d = central4(
        [&](double dd) {
          WeylPoint q = p;
          (wr ? q.rho : q.v) += dd;
          return M(q);
        },
        hi);
    Eigen::MatrixXd a = M(p).inverse() * d;
    return wr ? Eigen::MatrixXd(-double(sigma) * p.rho * a)
              : Eigen::MatrixXd(p.rho * a);
  };
  std::vector<Tally> rows(g.nv);
  parallel_for(g.nv, [&](int j) {
    for (int i = 0; i < g.nr; ++i) {
      WeylPoint p{g.rho(i), g.v(j)};
      if (p.rho < std::max(2.0 * g.drho(), 2.0 * ho + 3.0 * hi)) {
        rows[j].excluded++;
        continue;
      }
      try {
        Eigen::MatrixXd r =
            central4(
                [&](double d) { return G({p.rho + d, p.v}, true); }, ho) -
            central4(
                [&](double d) { return G({p.rho, p.v + d}, false); }, ho);
        if (!r.allFinite()) {
          rows[j].excluded++;
          continue;
        }
        rows[j].add(r.cwiseAbs().maxCoeff());
      } catch (const std::exception&) {
        rows[j].excluded++;
      }
    }
  });
  Tally t;
  for (auto& r : rows) t.merge(r);
  return t;
}

}  // namespace

VerificationReport field_eq_residual(const MatrixField& M, int sigma,
                                     const GridSpec& grid, double tol,
                                     bool estimate_order) {
  Tally t = field_eq_tally(M, sigma, grid, 5e-3, 1e-4);
  VerificationReport rep;
  rep.check = "field_eq";
  rep.grid = grid;
  rep.max_residual = t.mx;
  rep.l2_residual = t.l2();
  rep.tolerance = tol;
  rep.pass = t.n > 0 && t.mx < tol;
  rep.excluded = t.excluded;
  if (estimate_order) {
    GridSpec coarse = grid;
    coarse.nr = coarse.nv = 13;
    double rc = field_eq_tally(M, sigma, coarse, 0.1, 2e-3).mx;
    double rf = field_eq_tally(M, sigma, coarse, 0.05, 1e-3).mx;
    if (rc > 0.0 && rf > 0.0) rep.order = std::log2(rc / rf);
  }
  return rep;
}

BmReport bm_residual(const Matrix2Field& X, const Matrix2Field& M,
                     const PhiSpec& phispec, const GridSpec& grid, double tol,
                     int samples) {
  BmReport out;
  Tally t;
  double agree = 0.0;
  const double h = 3e-4;
  for (int a = 0; a < samples; ++a) {
    for (int b = 0; b < samples; ++b) {
      WeylPoint p{grid.rho0 + (a + 0.5) * (grid.rho1 - grid.rho0) / samples,
                  grid.v0 + (b + 0.5) * (grid.v1 - grid.v0) / samples};
      if (p.rho < 3.0 * h) {
        t.excluded++;
        continue;
      }
      double f;
      try {
        cplx phi = phi_eval(phispec, p);
        if (std::abs(phi.imag()) > 1e-8 * (1.0 + std::abs(phi))) {
          t.excluded++;
          continue;
        }
        f = phi.real();
      } catch (const std::exception&) {
        t.excluded++;
        continue;
      }
      if (std::abs(f * f + phispec.sigma) < 1e-6) {
        t.excluded++;
        continue;
      }
      auto dX = [&](bool wr) {
        return central4(
            [&](double d) {
              WeylPoint q = p;
              (wr ? q.rho : q.v) += d;
              return X(q);
            },
            h);
      };
      auto dM = [&](bool wr) {
        return central4(
            [&](double d) {
              WeylPoint q = p;
              (wr ? q.rho : q.v) += d;
              return M(q);
            },
            h);
      };
      Eigen::Matrix2d Xp = X(p), Minv = M(p).inverse();
      Eigen::Matrix2d dXr = dX(true), dXv = dX(false);
      Eigen::Matrix2d Ar = Minv * dM(true), Av = Minv * dM(false);
      double s = phispec.sigma;

      Eigen::Matrix2d Lr = f * (dXr + Ar * Xp) - dXv;
      Eigen::Matrix2d Lv = f * (dXv + Av * Xp) + s * dXr;
      Eigen::Matrix2d Xinv = Xp.inverse();
      Eigen::Matrix2d Rr = (f * f + s) * dXr * Xinv + f * f * Ar + f * Av;
      Eigen::Matrix2d Rv = (f * f + s) * dXv * Xinv + f * f * Av - s * f * Ar;

      agree = std::max(
          agree,
          std::max(
              (Rr - (f * Lr + Lv) * Xinv).cwiseAbs().maxCoeff(),
              (Rv - (f * Lv - s * Lr) * Xinv).cwiseAbs().maxCoeff()));
      t.add(std::max({Lr.cwiseAbs().maxCoeff(), Lv.cwiseAbs().maxCoeff(),
                      Rr.cwiseAbs().maxCoeff(), Rv.cwiseAbs().maxCoeff()}));
    }
  }
  out.report.check = "bm_linear_system";
  out.report.grid = grid;
  out.report.max_residual = t.mx;
  out.report.l2_residual = t.l2();
  out.report.tolerance = tol;
  out.report.pass = t.n > 0 && t.mx < tol;
  out.report.excluded = t.excluded;
  out.form_agreement = agree;
  return out;
}

MonodromyReport monodromy_constancy(const MatrixField& Xt_sharp,
                                    const MatrixField& M, const MatrixField& X,
                                    const GridSpec& grid, double tol,
                                    int samples) {
  MonodromyReport out;
  Tally t;
  double refnorm = 1.0;
  bool have_ref = false;
  for (int a = 0; a < samples; ++a) {
    for (int b = 0; b < samples; ++b) {
      WeylPoint p{grid.rho0 + (a + 0.5) * (grid.rho1 - grid.rho0) / samples,
                  grid.v0 + (b + 0.5) * (grid.v1 - grid.v0) / samples};
      Eigen::MatrixXd cal;
      try {
        cal = Xt_sharp(p) * M(p) * X(p);
      } catch (const std::exception&) {
        t.excluded++;
        continue;
      }
      if (!have_ref) {
        out.reference = cal;
        refnorm = std::max(cal.norm(), 1e-300);
        have_ref = true;
        continue;
      }
      t.add((cal - out.reference).norm() / refnorm);
    }
  }
  out.report.check = "monodromy_constancy";
  out.report.grid = grid;
  out.report.max_residual = t.mx;
  out.report.l2_residual = t.l2();
  out.report.tolerance = tol;
  out.report.pass = have_ref && t.mx < tol;
  out.report.excluded = t.excluded;
  return out;
}

namespace {

using Gamma = std::array<std::array<std::array<double, 4>, 4>, 4>;

Gamma christoffel(const ChartMetric& g, double x1, double x2, double h) {
  Eigen::Matrix4d g0 = g(x1, x2);
  Eigen::Matrix4d gi = g0.inverse();
  Eigen::Matrix4d dg[4];
  dg[0].setZero();
  dg[3].setZero();
  dg[1] = central4([&](double d) { return g(x1 + d, x2); }, h);
  dg[2] = central4([&](double d) { return g(x1, x2 + d); }, h);
  Gamma G{};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c) {
        double acc = 0.0;
        for (int d = 0; d < 4; ++d)
          acc += gi(a, d) * (dg[b](d, c) + dg[c](d, b) - dg[d](b, c));
        G[a][b][c] = 0.5 * acc;
      }
  return G;
}

}  // namespace

CurvatureScalars curvature_scalars(const ChartMetric& g, double x1, double x2,
                                   double h) {
  Gamma G0 = christoffel(g, x1, x2, h);
  // dG[c][a][b][d] = partial_c Gamma^a_{bd}, c in {1, 2}
  std::array<Gamma, 4> dG{};
  auto diff_gamma = [&](int dir) {
    Gamma out{};
    Gamma Gp2 = christoffel(g, x1 + (dir == 1 ? 2 * h : 0),
                            x2 + (dir == 2 ? 2 * h : 0), h);
    Gamma Gp1 = christoffel(g, x1 + (dir == 1 ? h : 0),
                            x2 + (dir == 2 ? h : 0), h);
    Gamma Gm1 = christoffel(g, x1 - (dir == 1 ? h : 0),
                            x2 - (dir == 2 ? h : 0), h);
    Gamma Gm2 = christoffel(g, x1 - (dir == 1 ? 2 * h : 0),
                            x2 - (dir == 2 ? 2 * h : 0), h);
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        for (int c = 0; c < 4; ++c)
          out[a][b][c] = (-Gp2[a][b][c] + 8.0 * Gp1[a][b][c] -
                          8.0 * Gm1[a][b][c] + Gm2[a][b][c]) /
                         (12.0 * h);
    return out;
  };
  dG[1] = diff_gamma(1);
  dG[2] = diff_gamma(2);

  // R^a_{bcd} = d_c G^a_{db} - d_d G^a_{cb} + G^a_{ce} G^e_{db} - G^a_{de}
  // G^e_{cb}
  double R[4][4][4][4];
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d) {
          double acc = dG[c][a][d][b] - dG[d][a][c][b];
          for (int e = 0; e < 4; ++e)
            acc += G0[a][c][e] * G0[e][d][b] - G0[a][d][e] * G0[e][c][b];
          R[a][b][c][d] = acc;
        }

  Eigen::Matrix4d gm = g(x1, x2);
  Eigen::Matrix4d gi = gm.inverse();
  Eigen::Matrix4d ric = Eigen::Matrix4d::Zero();
  for (int b = 0; b < 4; ++b)
    for (int d = 0; d < 4; ++d)
      for (int a = 0; a < 4; ++a) ric(b, d) += R[a][b][a][d];
  double rs = 0.0;
  for (int b = 0; b < 4; ++b)
    for (int d = 0; d < 4; ++d) rs += gi(b, d) * ric(b, d);

  // fully lowered and fully raised copies for the quadratic invariant
  double Rl[4][4][4][4], Ru[4][4][4][4];
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d) {
          double acc = 0.0;
          for (int e = 0; e < 4; ++e) acc += gm(a, e) * R[e][b][c][d];
          Rl[a][b][c][d] = acc;
        }
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d) {
          double acc = 0.0;
          for (int e = 0; e < 4; ++e) acc += gi(b, e) * R[a][e][c][d];
          Ru[a][b][c][d] = acc;
        }
  double Ru2[4][4][4][4];
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d) {
          double acc = 0.0;
          for (int e = 0; e < 4; ++e) acc += gi(c, e) * Ru[a][b][e][d];
          Ru2[a][b][c][d] = acc;
        }
  double K = 0.0;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d) {
          double acc = 0.0;
          for (int e = 0; e < 4; ++e) acc += gi(d, e) * Ru2[a][b][c][e];
          K += Rl[a][b][c][d] * acc;
        }
  return {K, rs};
}

ChartMetric interior_schwarzschild_chart(double m) {
  return [m](double r, double th) {
    double f = 2.0 * m / r - 1.0;
    Eigen::Matrix4d g = Eigen::Matrix4d::Zero();
    g(0, 0) = f;
    g(1, 1) = -1.0 / f;
    g(2, 2) = r * r;
    g(3, 3) = r * r * std::sin(th) * std::sin(th);
    return g;
  };
}

ChartMetric jump_extension_chart(double m) {
  return [m](double r, double th) {
    double c = std::cos(th / 2.0);
    double c4 = c * c * c * c;
    double t = std::tan(th / 2.0);
    Eigen::Matrix4d g = Eigen::Matrix4d::Zero();
    g(0, 0) = t * t;
    g(1, 1) = -4.0 * m * m * c4 / (r * (2.0 * m - r));
    g(2, 2) = 4.0 * m * m * c4;
    g(3, 3) = 4.0 * c4 * r * (2.0 * m - r);
    return g;
  };
}

JumpReport extrinsic_jump(const ChartMetric& gI, const ChartMetric& gII,
                          double m, int n, double tol) {
  JumpReport out{};
  out.jump.setZero();
  const double h = 1e-4 * (1.0 + m);
  for (int k = 0; k < n; ++k) {
    double th = 0.15 + k * (M_PI / 2.0 - 0.3) / (n - 1);
    double r = m * (1.0 + std::cos(th));
    double s = std::sqrt((2.0 * m - r) * r);
    double l1 = -0.5;                        // l^r
    double l2 = -1.0 / (2.0 * s);            // l^theta
    double dl2 = 0.5 * (m - r) / (s * s * s);  // d l^theta / dr

    auto half_lie = [&](const ChartMetric& g) {
      Eigen::Matrix4d dgr = central4([&](double d) { return g(r + d, th); }, h);
      Eigen::Matrix4d dgt = central4([&](double d) { return g(r, th + d); }, h);
      Eigen::Matrix4d g0 = g(r, th);
      Eigen::Matrix4d L = l1 * dgr + l2 * dgt;
      for (int a = 0; a < 4; ++a) {
        L(1, a) += g0(2, a) * dl2;
        L(a, 1) += g0(a, 2) * dl2;
      }
      return Eigen::Matrix4d(0.5 * L);
    };

    Eigen::Matrix4d D = half_lie(gII) - half_lie(gI);
    Eigen::Matrix4d C = gII(r, th) - gI(r, th);

    Eigen::Matrix<double, 4, 3> E;
    E.setZero();
    E(0, 0) = 1.0;
    E(1, 1) = -m * std::sin(th);
    E(2, 1) = 1.0;
    E(3, 2) = 1.0;
    Eigen::Matrix3d J = E.transpose() * D * E;
    Eigen::Matrix3d Ct = E.transpose() * C * E;
    out.continuity = std::max(out.continuity, Ct.cwiseAbs().maxCoeff());
    out.max_jump_norm = std::max(out.max_jump_norm, J.cwiseAbs().maxCoeff());

    Eigen::Matrix3d model = Eigen::Matrix3d::Zero();
    model(0, 0) = -m / (r * r);
    model(2, 2) = r * r / m;
    out.max_model_dev =
        std::max(out.max_model_dev, (J - model).cwiseAbs().maxCoeff());
    out.jump = J;

    Eigen::Matrix4d g0 = gI(r, th);
    double ln = std::abs(g0(1, 1) * l1 * l1 + 2.0 * g0(1, 2) * l1 * l2 +
                         g0(2, 2) * l2 * l2);
    out.ell_norm = std::max(out.ell_norm, ln);
    double ldf = l1 * 1.0 + l2 * m * std::sin(th);
    out.ell_transversality =
        std::max(out.ell_transversality, std::abs(ldf + 1.0));
  }
  out.pass = out.continuity < tol && out.ell_norm < tol &&
             out.ell_transversality < tol;
  return out;
}

VerificationReport product_solution_predicate(const MatrixField& M1,
                                              const MatrixField& M2, int sigma,
                                              const GridSpec& grid, double tol,
                                              int samples) {
  const double hi = 1e-4, ho = 1e-2;
  auto P = [&](WeylPoint p) -> Eigen::MatrixXd {
    Eigen::MatrixXd d = central4(
        [&](double dd) { return M1({p.rho, p.v + dd}); }, hi);
    return p.rho * M2(p).inverse() * M1(p).inverse() * d * M2(p);
  };
  auto Q = [&](WeylPoint p) -> Eigen::MatrixXd {
    Eigen::MatrixXd d = central4(
        [&](double dd) { return M1({p.rho + dd, p.v}); }, hi);
    return -double(sigma) * p.rho * M2(p).inverse() * M1(p).inverse() * d *
           M2(p);
  };
  Tally t;
  for (int a = 0; a < samples; ++a) {
    for (int b = 0; b < samples; ++b) {
      WeylPoint p{grid.rho0 + (a + 0.5) * (grid.rho1 - grid.rho0) / samples,
                  grid.v0 + (b + 0.5) * (grid.v1 - grid.v0) / samples};
      if (p.rho < 2.0 * ho + 3.0 * hi) {
        t.excluded++;
        continue;
      }
      try {
        Eigen::MatrixXd r =
            central4([&](double d) { return Q({p.rho + d, p.v}); }, ho) -
            central4([&](double d) { return P({p.rho, p.v + d}); }, ho);
        t.add(r.cwiseAbs().maxCoeff());
      } catch (const std::exception&) {
        t.excluded++;
      }
    }
  }
  VerificationReport rep;
  rep.check = "product_criterion";
  rep.grid = grid;
  rep.max_residual = t.mx;
  rep.l2_residual = t.l2();
  rep.tolerance = tol;
  rep.pass = t.n > 0 && t.mx < tol;
  rep.excluded = t.excluded;
  return rep;
}

std::string VerificationReport::to_json() const {
  nlohmann::json j;
  j["check"] = check;
  j["grid"] = {{"rho0", grid.rho0}, {"rho1", grid.rho1}, {"v0", grid.v0},
               {"v1", grid.v1},     {"nr", grid.nr},     {"nv", grid.nv}};
  j["max_residual"] = max_residual;
  j["l2_residual"] = l2_residual;
  j["tolerance"] = tolerance;
  j["pass"] = pass;
  if (std::isfinite(order)) j["order"] = order;
  j["excluded"] = excluded;
  return j.dump();
}

std::string VerificationReport::to_table() const {
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "%-22s max=%.3e l2=%.3e tol=%.1e excl=%d %s", check.c_str(),
                max_residual, l2_residual, tolerance, excluded,
                pass ? "pass" : "FAIL");
  return buf;
}

}  // namespace weyl
