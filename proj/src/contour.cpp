#include "weyl/contour.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace weyl {

cplx fixed_point(int sigma) {
  return sigma == 1 ? cplx(0.0, 1.0) : cplx(1.0, 0.0);
}

namespace {

double dist_point_segment(cplx w, cplx a, cplx b) {
  cplx ab = b - a;
  double L2 = std::norm(ab);
  if (L2 == 0.0) return std::abs(w - a);
  double t = std::clamp(
      (std::real(w - a) * std::real(ab) + std::imag(w - a) * std::imag(ab)) / L2,
      0.0, 1.0);
  return std::abs(w - (a + t * ab));
}

double dist_to_polyline(const SampledContour& c, cplx w) {
  double d = 1e300;
  for (size_t k = 0; k + 1 < c.points.size(); ++k)
    d = std::min(d, dist_point_segment(w, c.points[k], c.points[k + 1]));
  return d;
}

}  // namespace

int winding_number(const SampledContour& c, cplx w) {
  if (c.points.size() < 3) throw std::runtime_error("insufficient sampling");
  double total = 0.0;
  for (size_t k = 0; k + 1 < c.points.size(); ++k) {
    cplx a = c.points[k], b = c.points[k + 1];
    if (dist_point_segment(w, a, b) < 1e-8)
      throw std::domain_error("on-contour");
    total += std::arg((b - w) / (a - w));
  }
  double est = total / (2.0 * M_PI);
  double nearest = std::round(est);
  if (std::abs(est - nearest) > 0.25)
    throw std::runtime_error("insufficient sampling");
  return static_cast<int>(nearest);
}

SampledContour circle_contour(double radius, int n) {
  SampledContour c;
  c.points.reserve(n + 1);
  for (int k = 0; k < n; ++k) {
    double th = 2.0 * M_PI * k / n;
    c.points.push_back(radius * cplx(std::cos(th), std::sin(th)));
  }
  c.points.push_back(c.points.front());
  return c;
}

namespace {

// Serpentine segment pieces: flattened half-ellipse bumps over real chords
// and straight connectors, sampled densely.
void sample_bump(std::vector<cplx>& out, double a, double b, double h,
                 int side, int n) {
  double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  for (int k = 1; k <= n; ++k) {
    double t = double(k) / n;
    out.emplace_back(mid - half * std::cos(M_PI * t),
                     side * h * std::sin(M_PI * t));
  }
}

void sample_line(std::vector<cplx>& out, cplx a, cplx b, int n) {
  for (int k = 1; k <= n; ++k) out.push_back(a + (b - a) * (double(k) / n));
}

}  // namespace

ContourWitness realize_contour(const ContourClass& cc, int target_samples) {
  ContourWitness w;
  const int sigma = cc.sigma;

  struct Pt {
    double x;
    bool in;
  };
  std::vector<Pt> pts{{0.0, true}};
  for (const auto& lp : cc.assignment) {
    if (std::abs(lp.value.imag()) > 1e-9) {
      w.violations.push_back("non-real labeled point");
      return w;
    }
    double x = lp.value.real();
    if (std::abs(x) < 1e-10) {
      w.violations.push_back("degenerate point");
      return w;
    }
    bool in = lp.side == Side::interior;
    pts.push_back({x, in});
    pts.push_back({involution(x, sigma).real(), !in});
  }
  std::sort(pts.begin(), pts.end(),
            [](const Pt& a, const Pt& b) { return a.x < b.x; });
  std::vector<Pt> uniq;
  for (const Pt& p : pts) {
    if (!uniq.empty() && std::abs(p.x - uniq.back().x) < 1e-12) {
      if (p.in != uniq.back().in) {
        w.violations.push_back("orbit parity");
        return w;
      }
      continue;
    }
    uniq.push_back(p);
  }

  auto inv = [sigma](double x) { return -double(sigma) / x; };
  std::vector<double> crossings;
  auto add_pair = [&](double c) {
    crossings.push_back(c);
    crossings.push_back(inv(c));
  };
  const int n = static_cast<int>(uniq.size());
  for (int k = -1; k < n; ++k) {
    bool left = k >= 0 && uniq[k].in;
    bool right = k + 1 < n && uniq[k + 1].in;
    if (left == right) continue;
    double a = k >= 0 ? uniq[k].x : -1e300;
    double b = k + 1 < n ? uniq[k + 1].x : 1e300;
    if (sigma == -1) {
      if (a < 1.0 && 1.0 < b)
        crossings.push_back(1.0);
      else if (a < -1.0 && -1.0 < b)
        crossings.push_back(-1.0);
      else if (std::abs(a) < 1.0 && std::abs(b) < 1.0)
        add_pair(0.5 * (a + b));
      // remaining intervals are covered by their unit-disk partners
    } else {
      if (k + 1 >= n)
        add_pair(0.5 * inv(a));  // right-unbounded: pick in the partner
      else if (a >= 0.0)
        add_pair(0.5 * (a + b));
      // negative-side intervals are covered by their positive partners
    }
  }
  std::sort(crossings.begin(), crossings.end());

  std::vector<cplx> half;  // curve inside the fundamental domain
  if (sigma == -1) {
    // nodes inside the closed unit disk, from -1 to 1
    std::vector<double> nodes{-1.0};
    for (double c : crossings)
      if (std::abs(c) < 1.0) nodes.push_back(c);
    nodes.push_back(1.0);
    bool has_m1 = false, has_p1 = false;
    for (double c : crossings) {
      if (c == -1.0) has_m1 = true;
      if (c == 1.0) has_p1 = true;
    }
    if (!has_m1 || !has_p1) {
      w.violations.push_back("fixed point not on curve");
      return w;
    }
    half.emplace_back(-1.0, 0.0);
    int per = std::max(
        8, target_samples / (2 * std::max<int>(1, int(nodes.size()) - 1)));
    for (size_t k = 0; k + 1 < nodes.size(); ++k) {
      double wdt = nodes[k + 1] - nodes[k];
      sample_bump(half, nodes[k], nodes[k + 1], std::min(0.5 * wdt, 0.25),
                  k % 2 ? -1 : 1, per);
    }
  } else {
    // weave from i to -i through the right half-plane
    std::vector<double> pos;
    for (double c : crossings)
      if (c > 0.0) pos.push_back(c);
    if (pos.size() % 2 == 0) {
      w.violations.push_back("crossing parity");
      return w;
    }
    const size_t q = pos.size();
    int per = std::max(8, target_samples / (2 * int(q + 1)));
    half.emplace_back(0.0, 1.0);
    sample_line(half, cplx(0.0, 1.0), cplx(pos[0], 0.0), per);
    for (size_t k = 0; k + 1 < q; ++k) {
      double wdt = pos[k + 1] - pos[k];
      double h = std::min(0.5 * wdt, 0.2);
      if (k % 2 == 0)  // lower-side bump: stay above the closing connector
        h = std::min(h, 0.45 * (pos[q - 1] - pos[k + 1]) / pos[q - 1] + 1e-12);
      sample_bump(half, pos[k], pos[k + 1], h, k % 2 ? 1 : -1, per);
    }
    sample_line(half, cplx(pos[q - 1], 0.0), cplx(0.0, -1.0), per);
  }

  std::vector<cplx> full = half;
  for (size_t k = half.size(); k-- > 0;) {
    cplx im = involution(half[k], sigma);
    if (std::abs(im - full.back()) > 1e-12 && std::abs(im - full.front()) > 0.0)
      full.push_back(im);
  }
  full.push_back(full.front());
  w.curve.points = std::move(full);

  int w0;
  try {
    w0 = winding_number(w.curve, cplx(0.0));
  } catch (const std::exception&) {
    w.violations.push_back("witness winding ambiguous at origin");
    return w;
  }
  if (w0 == -1) {
    std::reverse(w.curve.points.begin(), w.curve.points.end());
    w0 = 1;
  }
  if (w0 != 1) {
    w.violations.push_back("witness does not encircle origin");
    return w;
  }

  double seg = 0.0;
  for (size_t k = 0; k + 1 < w.curve.points.size(); ++k)
    seg = std::max(seg, std::abs(w.curve.points[k + 1] - w.curve.points[k]));
  for (cplx f : {fixed_point(cc.sigma), -fixed_point(cc.sigma)}) {
    if (dist_to_polyline(w.curve, f) > 2.0 * seg) {
      w.violations.push_back("witness misses fixed point");
      return w;
    }
  }

  for (const auto& lp : cc.assignment) {
    int want = lp.side == Side::interior ? 1 : 0;
    try {
      if (winding_number(w.curve, lp.value) != want) {
        w.violations.push_back("witness separation: " + lp.name);
        return w;
      }
    } catch (const std::exception&) {
      w.violations.push_back("witness separation ambiguous: " + lp.name);
      return w;
    }
  }

  w.ok = true;
  return w;
}

std::vector<std::string> validate_class(const ContourClass& cc,
                                        bool build_witness) {
  std::vector<std::string> out;
  const double fp_tol = 1e-10;
  for (const auto& lp : cc.assignment) {
    if (std::abs(lp.value) < fp_tol) {
      out.push_back("degenerate point");
      continue;
    }
    for (cplx f : {fixed_point(cc.sigma), -fixed_point(cc.sigma)}) {
      if (std::abs(lp.value - f) < fp_tol) out.push_back("fixed-point collision");
    }
  }
  for (size_t i = 0; i < cc.assignment.size(); ++i) {
    for (size_t j = i + 1; j < cc.assignment.size(); ++j) {
      const auto& a = cc.assignment[i];
      const auto& b = cc.assignment[j];
      if (std::abs(a.value) < fp_tol || std::abs(b.value) < fp_tol) continue;
      if (std::abs(involution(a.value, cc.sigma) - b.value) < 1e-9 &&
          a.side == b.side) {
        out.push_back("orbit parity");
      }
    }
  }
  if (!out.empty() || !build_witness) return out;
  ContourWitness w = realize_contour(cc);
  if (!w.ok)
    out.insert(out.end(), w.violations.begin(), w.violations.end());
  return out;
}

DiagPoints diag_points(const MonodromySpec& spec, WeylPoint p) {
  spec.check();
  double m = spec.m, rho = p.rho, v = p.v;
  if (spec.family == Family::kasner || (spec.family == Family::diag_eps && spec.eps == 0)) {
    if (spec.sigma == 1) {
      double r0 = std::hypot(v, rho);
      return DiagPoints{(v - r0) / rho, (v + r0) / rho};
    }
    double rad = v * v - rho * rho;
    if (rad <= 0.0) throw std::domain_error("inadmissible region");
    double r0 = std::sqrt(rad);
    return DiagPoints{(-v + r0) / rho, -(v + r0) / rho};
  }
  if (spec.sigma == 1) {
    double s1 = std::hypot(v - m, rho);
    double s2 = std::hypot(v + m, rho);
    return DiagPoints{(v - m - s1) / rho, (v + m - s2) / rho};
  }
  double a = (m - v) * (m - v) - rho * rho;
  double b = (m + v) * (m + v) - rho * rho;
  if (a <= 0.0 || b <= 0.0) throw std::domain_error("inadmissible region");
  return DiagPoints{(m - v + std::sqrt(a)) / rho, (-(m + v) + std::sqrt(b)) / rho};
}

ContourClass make_diag_class(const MonodromySpec& spec, int cls, WeylPoint p) {
  if (cls < 1 || cls > 4 || (spec.eps == 0 && cls > 2))
    throw std::invalid_argument("unknown contour class");
  DiagPoints d = diag_points(spec, p);
  ContourClass cc;
  cc.sigma = spec.sigma;
  bool first_in = (cls == 1 || cls == 4);
  bool second_in = (cls == 1 || cls == 2);
  const char* n1 = spec.eps == 1 ? "tau1" : "tau0";
  const char* n2 = spec.eps == 1 ? "tau2" : "tau0t";
  if (spec.eps == 0) {
    first_in = (cls == 1);
    second_in = (cls == 2);
  }
  cc.assignment.push_back({n1, cplx(d.tau1), first_in ? Side::interior : Side::exterior});
  cc.assignment.push_back({n2, cplx(d.tau2), second_in ? Side::interior : Side::exterior});
  return cc;
}

std::function<bool(WeylPoint)> admissible_region(const MonodromySpec& spec,
                                                 const ContourClass&) {
  spec.check();
  if (spec.family == Family::emd3) {
    return [](WeylPoint p) { return p.rho > 0.0; };
  }
  if (spec.family == Family::kasner ||
      (spec.family == Family::diag_eps && spec.eps == 0)) {
    if (spec.sigma == 1)
      return [](WeylPoint p) { return p.rho > 0.0; };
    return [](WeylPoint p) { return p.rho > 0.0 && p.v * p.v > p.rho * p.rho; };
  }
  if (spec.sigma == 1) return [](WeylPoint p) { return p.rho > 0.0; };
  double m = spec.m;
  return [m](WeylPoint p) {
    return p.rho > 0.0 && (m - p.v) * (m - p.v) > p.rho * p.rho &&
           (m + p.v) * (m + p.v) > p.rho * p.rho;
  };
}

void write_contour_csv(const SampledContour& c, const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw std::runtime_error("cannot open " + path);
  std::fprintf(f, "re,im\n");
  for (cplx z : c.points)
    std::fprintf(f, "%.17g,%.17g\n", std::real(z), std::imag(z));
  std::fclose(f);
}

}  // namespace weyl
