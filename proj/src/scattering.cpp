#include "bicgrate/scattering.hpp"

#include <cmath>

namespace bicgrate {

namespace {

// Incidence from below, exp(i(kx x + kz z)). `cfg.a` may be negative here:
// the mirror map used for incidence from above produces a shift of -a.
ScatteringSolution solve_upward(const ArrayConfig& cfg, const BlochPoint& pt,
                                const ScatterOptions& opts) {
  check_threshold(pt, opts.sums.guard);
  const double k = pt.k(), kx = pt.kx();
  if (!(k > std::abs(kx))) throw std::invalid_argument("scattering needs channel 0 open");
  const double a = cfg.a, h = cfg.h;
  const double s = kTwoPi * delta0(k, cfg);

  StarSum st = star_sum(pt, cfg.R, opts.sums);
  ExpSums ex = exp_sums(pt, a, 2.0 * h, opts.sums);
  std::vector<int> open = open_channels(pt);
  double inv = 0.0;
  cplx op_plus, op_minus;
  for (int m : open) {
    double kz = std::sqrt(-pt.gap(m));
    double p = pt.lateral(m);
    inv += 1.0 / kz;
    op_plus += std::exp(kI * (a * p + 2.0 * h * kz)) / kz;
    op_minus += std::exp(kI * (-a * p + 2.0 * h * kz)) / kz;
  }
  cplx rot = std::exp(kI * (a * kx));
  cplx phi_plus = op_plus - kI * rot * cplx(ex.c, ex.s);
  cplx phi_minus = op_minus - kI * std::conj(rot) * cplx(ex.c, -ex.s);

  cplx A11 = kI + s * cplx(inv, st.value);
  cplx A12 = s * phi_plus, A21 = s * phi_minus;
  cplx det = A11 * A11 - A12 * A21;
  double norm2 = 2.0 * std::norm(A11) + std::norm(A12) + std::norm(A21);
  if (std::abs(det) < opts.det_guard * norm2)
    throw SingularSystem("scattering system is singular at a bound state");

  const double kz0 = std::sqrt(-pt.gap(0));
  cplx r1 = kI * std::exp(kI * (a * kx + h * kz0));
  cplx r2 = kI * std::exp(-kI * (h * kz0));

  ScatteringSolution sol;
  sol.cfg = cfg;
  sol.k = k;
  sol.kx = kx;
  sol.e_right = (r1 * A11 - A12 * r2) / det;
  sol.e_left = (A11 * r2 - A21 * r1) / det;
  sol.det_abs = std::abs(det);
  sol.terms = std::max(st.terms, ex.terms);

  double flux = 0.0;
  for (int m : open) {
    double kz = std::sqrt(-pt.gap(m));
    double p = pt.lateral(m);
    cplx c = kI * s / kz;
    cplx T = c * (sol.e_right * std::exp(-kI * (a * p + h * kz)) +
                  sol.e_left * std::exp(kI * (h * kz)));
    cplx R = c * (sol.e_right * std::exp(-kI * (a * p - h * kz)) +
                  sol.e_left * std::exp(-kI * (h * kz)));
    sol.trans[m] = T;
    sol.refl[m] = R;
    cplx through = (m == 0 ? 1.0 : 0.0) + T;
    flux += kz / kz0 * (std::norm(R) + std::norm(through));
  }
  sol.flux_error = flux - 1.0;
  return sol;
}

}  // namespace

ScatteringSolution solve(const ArrayConfig& cfg, const BlochPoint& pt, Incidence direction,
                         const ScatterOptions& opts) {
  cfg.validate();
  if (direction == Incidence::FromBelow) return solve_upward(cfg, pt, opts);
  // z -> -z followed by x -> x - a maps the array onto itself with shift -a
  // and the downward wave onto an upward one of amplitude exp(i a kx).
  ArrayConfig mirror = cfg;
  mirror.a = -cfg.a;
  ScatteringSolution m = solve_upward(mirror, pt, opts);
  const cplx phase = std::exp(kI * (cfg.a * pt.kx()));
  ScatteringSolution sol = m;
  sol.cfg = cfg;
  sol.direction = Incidence::FromAbove;
  sol.e_left = phase * m.e_right;
  sol.e_right = phase * m.e_left;
  for (auto& [ch, v] : sol.refl) v = phase * std::exp(-kI * (cfg.a * pt.lateral(ch))) * m.refl[ch];
  for (auto& [ch, v] : sol.trans)
    v = phase * std::exp(-kI * (cfg.a * pt.lateral(ch))) * m.trans[ch];
  return sol;
}

double specular(const ArrayConfig& cfg, const BlochPoint& pt) {
  return std::norm(solve(cfg, pt).refl.at(0));
}

cplx reflection_closed_form(const ArrayConfig& cfg, const BlochPoint& pt) {
  if (cfg.a != 0.0) throw std::invalid_argument("closed form needs a = 0");
  if (open_channels(pt).size() != 1) throw std::invalid_argument("closed form needs one open channel");
  PsiHK p = psi_hk_I(cfg, pt);
  double kz = std::sqrt(-pt.gap(0));
  double c = std::cos(cfg.h * kz), s = std::sin(cfg.h * kz);
  return -c * c / (c * c + 0.5 * kI * kz * p.plus) + s * s / (s * s + 0.5 * kI * kz * p.minus);
}

Resonance resonance_at(const ArrayConfig& cfg_in, double kx_in, double h, Family family) {
  ArrayConfig cfg = cfg_in;
  cfg.h = h;
  double kx = std::abs(reduce_kx(kx_in));
  auto psi = [&](double k) {
    PsiHK p = psi_hk_I(cfg, BlochPoint(k, kx));
    return family == Family::Plus ? p.plus : p.minus;
  };
  auto root = root_below_threshold(psi, kx, kTwoPi - kx);
  if (!root) throw NoRoot("no resonance on Psi^" + to_string(family) + " at this h");
  Resonance r;
  r.h = h;
  r.k_r = root->k;
  r.family = family;
  BlochPoint pt(r.k_r, kx);
  PsiHK p = psi_hk_I(cfg, pt);
  double kz = std::sqrt(-pt.gap(0));
  double w = family == Family::Plus ? std::cos(h * kz) : std::sin(h * kz);
  double d = family == Family::Plus ? p.plus_dk : p.minus_dk;
  r.gamma = -2.0 * w * w / (kz * d);
  double step = 1e-6 * r.k_r;
  double d_fd = (psi(r.k_r + step) - psi(r.k_r - step)) / (2.0 * step);
  r.gamma_fd = -2.0 * w * w / (kz * d_fd);
  return r;
}

CriticalPoint critical_point(const ArrayConfig& cfg_in, double kx, int index) {
  if (index < 1 || index % 2 == 0) throw std::invalid_argument("critical point index must be odd");
  ArrayConfig cfg = cfg_in;
  cfg.a = 0.0;
  BoundStateRecord rec = solve_continuum_I(cfg, 0.0, kx, index);
  cfg.h = rec.h;
  BlochPoint pt(rec.k, rec.kx);
  PsiHK p = psi_hk_I(cfg, pt);
  CriticalPoint cp;
  cp.index = index;
  cp.kx = rec.kx;
  cp.h = rec.h;
  cp.k = rec.k;
  cp.kz = std::sqrt(-pt.gap(0));
  cp.delta0 = delta0(rec.k, cfg);
  cp.psi_minus = p.minus;
  cp.dpsi_plus_dk = p.plus_dk;
  cp.dpsi_plus_dh = p.plus_dh;
  cp.dpsi_minus_dk = p.minus_dk;
  return cp;
}

namespace {
double index_sign(const CriticalPoint& cp) { return ((cp.index + 1) / 2) % 2 ? -1.0 : 1.0; }
}  // namespace

cplx reflection_principal_part(const CriticalPoint& cp, double dh, double dk) {
  double xi = index_sign(cp) * (cp.h * cp.k / cp.kz * dk + cp.kz * dh);
  double eta = 0.5 * cp.kz * (cp.dpsi_plus_dk * dk + cp.dpsi_plus_dh * dh);
  return 1.0 / (1.0 + 0.5 * kI * cp.kz * cp.psi_minus) - xi * xi / (xi * xi + kI * eta);
}

cplx amplification_constant(const CriticalPoint& cp) {
  double tilt = 1.0 - cp.h * cp.k / (cp.kz * cp.kz) * cp.dpsi_plus_dh / cp.dpsi_plus_dk;
  // the decoupled limit fixes the prefactor to i kz / (4 pi delta0)
  return kI * index_sign(cp) / (2.0 * kTwoPi * cp.delta0 * tilt);
}

std::vector<AmplificationPoint> amplification_sweep(const ArrayConfig& cfg_in, double kx, int index,
                                                    const std::vector<double>& delta_h) {
  ArrayConfig cfg = cfg_in;
  cfg.a = 0.0;
  CriticalPoint cp = critical_point(cfg, kx, index);
  cplx C = amplification_constant(cp);
  std::vector<AmplificationPoint> out;
  for (double dh : delta_h) {
    if (dh == 0.0) throw std::invalid_argument("delta h must be nonzero");
    Resonance res = resonance_at(cfg, cp.kx, cp.h + dh, Family::Plus);
    ArrayConfig c = cfg;
    c.h = cp.h + dh;
    ScatteringSolution sol = solve(c, BlochPoint(res.k_r, cp.kx));
    AmplificationPoint p;
    p.dh = dh;
    p.k = res.k_r;
    p.field = sol.e_right;
    p.gamma = res.gamma;
    p.predicted = C / dh;
    out.push_back(p);
  }
  return out;
}

}  // namespace bicgrate
