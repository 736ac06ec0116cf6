#include "weyl/factorization.hpp"

#include <cmath>
#include <stdexcept>

#include "weyl/closed_forms.hpp"

namespace weyl {

RationalFunction diag_entry_pullback(const MonodromySpec& spec, WeylPoint p) {
  spec.check();
  double s = spec.sigma, m = spec.m;
  RationalFunction g;
  if (spec.eps == 1) {
    // sigma*(u - m)/(u + m)
    g.num = Polynomial({cplx(-s * m), cplx(s)});
    g.den = Polynomial({cplx(m), cplx(1.0)});
  } else {
    // sigma*u/m
    g.num = Polynomial({cplx(0.0), cplx(s / m)});
    g.den = Polynomial({cplx(1.0)});
  }
  return spectral_pullback(g, p.rho, p.v, spec.sigma);
}

namespace {

struct Partition {
  std::vector<cplx> z_int, z_ext, p_int, p_ext;
};

FactorPair factor_scalar(const RationalFunction& entry,
                         const std::function<bool(cplx)>& is_interior,
                         Partition* part_out = nullptr) {
  Partition part;
  for (cplx z : entry.zeros)
    (is_interior(z) ? part.z_int : part.z_ext).push_back(z);
  for (cplx q : entry.poles)
    (is_interior(q) ? part.p_int : part.p_ext).push_back(q);
  if (part.z_int.size() != part.p_int.size())
    throw std::runtime_error("assignment admits no canonical factorization");

  cplx kp(1.0);
  for (cplx q : part.p_ext) kp *= -q;
  for (cplx z : part.z_ext) kp /= -z;
  cplx km = entry.lead_ratio() / kp;

  FactorPair fp;
  fp.m_plus = RationalFunction::from_factored(kp, part.z_ext, part.p_ext);
  fp.m_minus = RationalFunction::from_factored(km, part.z_int, part.p_int);
  fp.norm_check = rat_eval(fp.m_plus, cplx(0.0));
  if (part_out) *part_out = part;
  return fp;
}

}  // namespace

DiagFactorization canonical_factor_diag(const MonodromySpec& spec,
                                        const ContourClass& cc, WeylPoint p) {
  spec.check();
  DiagPoints d = diag_points(spec, p);  // throws "inadmissible region"
  for (double t : {d.tau1, d.tau2}) {
    for (cplx f : {fixed_point(spec.sigma), -fixed_point(spec.sigma)})
      if (std::abs(cplx(t) - f) < 1e-10)
        throw std::domain_error("fixed-point collision");
  }
  auto bad = validate_class(cc, false);
  if (!bad.empty()) throw std::domain_error(bad.front());

  std::vector<cplx> interior{cplx(0.0)};
  for (const auto& lp : cc.assignment) {
    interior.push_back(lp.side == Side::interior
                           ? lp.value
                           : involution(lp.value, cc.sigma));
  }
  auto is_interior = [&](cplx z) {
    for (cplx w : interior)
      if (std::abs(z - w) < 1e-8 * std::max(1.0, std::abs(z))) return true;
    return false;
  };

  RationalFunction entry = diag_entry_pullback(spec, p);
  DiagFactorization out;
  out.entry1 = factor_scalar(entry, is_interior);

  cplx km = out.entry1.m_minus.lead_ratio();
  if (std::abs(std::imag(km)) > 1e-9 * std::abs(km))
    throw std::runtime_error("non-real factorization constant");
  double delta_raw = std::real(km);
  out.sign_flipped = delta_raw < 0.0;
  if (out.sign_flipped) {
    out.entry1.m_minus.num = out.entry1.m_minus.num.scaled(-1.0);
  }
  out.Delta = std::abs(delta_raw);

  out.entry2.m_plus = out.entry1.m_plus.inverse();
  out.entry2.m_minus = out.entry1.m_minus.inverse();
  out.entry2.norm_check = rat_eval(out.entry2.m_plus, cplx(0.0));
  return out;
}

Eigen::Matrix2d kasner_monodromy(const std::array<double, 4>& c,
                                 const std::array<double, 4>& ct) {
  Eigen::Matrix2d m;
  m << ct[0] * c[0] - ct[2] * c[2], ct[0] * c[1] - ct[2] * c[3],
      c[2] * ct[3] - c[0] * ct[1], ct[3] * c[3] - ct[1] * c[1];
  return m;
}

std::array<double, 4> kasner_paper_constants(double omega) {
  double w2 = (2.0 * omega) * (2.0 * omega);
  return {w2, 0.0, 0.0, 1.0 / w2};
}

KasnerFactorization kasner_factor(KasnerMode mode, WeylPoint p) {
  double rho = p.rho, v = p.v;
  double rad = v * v - rho * rho;
  if (rad < 0.0) throw std::domain_error("inadmissible region");
  if (rad == 0.0) throw std::domain_error("fixed-point collision");
  double r = std::sqrt(rad);
  KasnerFactorization out;
  out.tau1 = (-v + r) / rho;
  out.tau1t = (-v - r) / rho;
  if (mode == KasnerMode::meromorphic) {
    out.M11 = std::pow(rho, 4);
    out.X11 = RationalFunction::from_factored(
        1.0, {out.tau1, out.tau1, out.tau1t, out.tau1t}, {});
  } else {
    out.M11 = std::pow(rho * out.tau1t, 4);
    out.X11 = RationalFunction::from_factored(
        1.0 / std::pow(out.tau1t, 4),
        {out.tau1t, out.tau1t, out.tau1t, out.tau1t}, {});
  }
  return out;
}

std::function<Eigen::Matrix2d(WeylPoint)> solution_family_multiplier(
    double alpha, int beta, double K, const PhiSpec& phispec) {
  if (K == 0.0) throw std::invalid_argument("K must be nonzero");
  return [=](WeylPoint p) {
    cplx phi = phi_eval(phispec, p);
    if (std::abs(std::imag(phi)) > 1e-10 * std::max(1.0, std::abs(phi)))
      throw std::domain_error("phi not real on region");
    double f = K * std::pow(p.rho, alpha) * std::pow(std::real(phi), beta);
    Eigen::Matrix2d m;
    m << f, 0.0, 0.0, 1.0 / f;
    return m;
  };
}

}  // namespace weyl
