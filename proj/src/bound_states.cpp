#include "bicgrate/bound_states.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <mutex>

#include <boost/math/tools/minima.hpp>

#include "bicgrate/numerics.hpp"

namespace bicgrate {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double inv_source(double k, const ArrayConfig& cfg) {
  return 1.0 / (kTwoPi * delta0(k, cfg));
}

// d/dk of 1/(2 pi delta0(k)) = -1/(pi delta0 k)
double inv_source_dk(double k, const ArrayConfig& cfg) {
  return -1.0 / (kPi * delta0(k, cfg) * k);
}

bool near(double x, double y) { return std::abs(x - y) < 1e-12; }

double open_decoupling(const BlochPoint& pt, double a, double h, cplx ratio) {
  double worst = 0.0;
  for (int m : open_channels(pt)) {
    double kz = std::sqrt(-pt.gap(m));
    double p = pt.lateral(m);
    cplx up = std::exp(kI * (h * kz)) + std::exp(-kI * (a * p + h * kz)) * ratio;
    cplx dn = std::exp(-kI * (h * kz)) + std::exp(-kI * (a * p - h * kz)) * ratio;
    worst = std::max({worst, std::abs(up), std::abs(dn)});
  }
  return worst;
}

BoundStateRecord base_record(const ArrayConfig& cfg, double kx, double k, RegionTag region,
                             Family fam) {
  BoundStateRecord r;
  r.region = region;
  r.family = fam;
  r.kx = kx;
  r.k = k;
  r.h = cfg.h;
  r.a = cfg.a;
  r.R = cfg.R;
  r.eps_c = cfg.eps_c;
  return r;
}

// Fill determinant residual, null-vector ratio check, symmetry tag and the
// open-channel decoupling residual.
void finish_record(BoundStateRecord& r) {
  BlochPoint pt(r.k, r.kx);
  LatticeSums s = evaluate(pt, r.config());
  r.residual_delta = std::abs(determinant(s));
  cplx nv = null_vector_ratio(s);
  r.symmetry = classify_symmetry(r.field_ratio, r.a, r.kx);
  r.residuals.emplace_back("delta", r.residual_delta);
  r.residuals.emplace_back("ratio_mismatch", std::abs(nv - r.field_ratio));
  r.residuals.emplace_back("decoupling", open_decoupling(pt, r.a, r.h, r.field_ratio));
}

}  // namespace

// Root of a function of k that decreases across (k_lo, P), parametrised by
// q = sqrt(P^2 - k^2) of the channel whose threshold is P.
std::optional<ThresholdRoot> root_below_threshold(const std::function<double(double)>& psi,
                                                  double k_lo, double P) {
  double qmax = std::sqrt((P - k_lo) * (P + k_lo));
  auto kq = [P](double q) { return std::sqrt((P - q) * (P + q)); };
  auto F = [&](double q) {
    try {
      return psi(kq(q));
    } catch (const ThresholdSingularity&) {
      return kNaN;
    }
  };
  std::vector<double> grid = log_refined_grid(0.0, qmax, 48, 36, 1e-13);
  std::vector<double> vals(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) vals[i] = F(grid[i]);
  auto changes = sign_changes(vals);
  if (changes.empty()) return std::nullopt;
  std::size_t i = changes.front();
  std::size_t j = i + 1;
  while (j < vals.size() && !std::isfinite(vals[j])) ++j;
  auto br = bisect(F, grid[i], grid[j], vals[i], vals[j]);
  ThresholdRoot r;
  r.q = br.x;
  r.k = kq(br.x);
  r.f = br.fx;
  r.sign_changes = static_cast<int>(changes.size());
  return r;
}

std::string to_string(Symmetry s) {
  switch (s) {
    case Symmetry::Symmetric: return "symmetric";
    case Symmetry::SkewSymmetric: return "skew-symmetric";
    default: return "unclassified";
  }
}

std::string to_string(Family f) { return f == Family::Plus ? "plus" : "minus"; }

double BoundStateRecord::residual(const std::string& name) const {
  for (const auto& [key, v] : residuals)
    if (key == name) return v;
  throw std::out_of_range("no residual named " + name);
}

cplx null_vector_ratio(const LatticeSums& s) {
  // rows (phi0, phi+) and (phi-, phi0); use the better conditioned one
  if (std::abs(s.phi0) + std::abs(s.phi_plus) >= std::abs(s.phi_minus) + std::abs(s.phi0)) {
    if (std::abs(s.phi0) >= std::abs(s.phi_plus)) return -s.phi_plus / s.phi0;
  }
  return -s.phi0 / s.phi_minus;
}

Symmetry classify_symmetry(cplx ratio, double a, double kx) {
  if (!(near(a, 0.0) || near(a, 0.5))) return Symmetry::Unclassified;
  cplx v = ratio * std::exp(-kI * (a * kx));
  if (std::abs(v.imag()) > 1e-6 * std::abs(v)) return Symmetry::Unclassified;
  return v.real() > 0.0 ? Symmetry::Symmetric : Symmetry::SkewSymmetric;
}

// ─────────────────────────────────────────────────────────────────────────────
// Below the continuum
// ─────────────────────────────────────────────────────────────────────────────

PsiPair psi_pm_below(const ArrayConfig& cfg, const BlochPoint& pt, const SumOptions& opts) {
  AuxSums aux = phi_aux(pt, cfg, opts);
  double mod = std::hypot(aux.phi_c, aux.phi_s);
  return {aux.phi_star - mod, aux.phi_star + mod};
}

double k_plus_approx(double kx, const ArrayConfig& cfg) {
  double d = delta0(kx, cfg);
  return kx - 8.0 * kPi * kPi * d * d / kx;
}

BoundStateRecord solve_below(const ArrayConfig& cfg, double kx_in, Family fam) {
  cfg.validate();
  double kx = std::abs(reduce_kx(kx_in));
  if (!(kx > 0.0)) throw std::invalid_argument("solve_below: kx must lie in (0, pi]");
  auto psi = [&](double k) {
    PsiPair p = psi_pm_below(cfg, BlochPoint(k, kx));
    return fam == Family::Plus ? p.plus : p.minus;
  };
  auto root = root_below_threshold(psi, 0.0, kx);
  if (!root) throw NoBracket("no sign change of Psi^" + to_string(fam) + " on (0, kx)");
  auto r = base_record(cfg, kx, root->k, RegionTag{}, fam);
  if (fam == Family::Plus) r.approx_k = k_plus_approx(kx, cfg);
  BlochPoint pt(r.k, kx);
  AuxSums aux = phi_aux(pt, cfg);
  double phase = std::atan2(aux.phi_s, aux.phi_c);
  double sgn = fam == Family::Plus ? 1.0 : -1.0;
  r.field_ratio = sgn * std::exp(kI * (phase + cfg.a * kx));
  r.residuals.emplace_back("psi", std::abs(root->f));
  finish_record(r);
  return r;
}

std::vector<BoundStateRecord> find_below(const ArrayConfig& cfg, double kx) {
  std::vector<BoundStateRecord> out;
  out.push_back(solve_below(cfg, kx, Family::Plus));
  try {
    out.push_back(solve_below(cfg, kx, Family::Minus));
  } catch (const NoBracket&) {
  }
  return out;
}

// ─────────────────────────────────────────────────────────────────────────────
// Continuum I
// ─────────────────────────────────────────────────────────────────────────────

PsiHK psi_hk_I(const ArrayConfig& cfg, const BlochPoint& pt, const SumOptions& opts) {
  check_threshold(pt, opts.guard);
  const double k = pt.k();
  double kz = std::sqrt(-pt.gap(0));
  StarSum st = star_sum(pt, cfg.R, opts);
  ExpSums ex = exp_sums(pt, cfg.a, 2.0 * cfg.h, opts);
  double star = inv_source(k, cfg) + st.value;
  double star_dk = inv_source_dk(k, cfg) + st.dk;
  double h = cfg.h;
  double sn = std::sin(2.0 * h * kz), cs = std::cos(2.0 * h * kz);
  double t = sn / kz - ex.c;
  double t_dk = (k / kz) * (2.0 * h * cs / kz - sn / (kz * kz)) - ex.c_dk;
  double t_dh = 2.0 * cs - 2.0 * ex.c_dL;
  PsiHK p;
  p.plus = star + t;
  p.minus = star - t;
  p.plus_dk = star_dk + t_dk;
  p.minus_dk = star_dk - t_dk;
  p.plus_dh = t_dh;
  p.minus_dh = -t_dh;
  return p;
}

bool in_set_L(double a, double kx) {
  return near(reduce_kx(kx), 0.0) || near(a, 0.0) || near(a, 0.5);
}

namespace {

struct PsiN {
  double value;
  double dk;
};

// Psi = 1/(2 pi delta0) + star + sigma * sum cos(2 pi a m) e^{-n pi q/K}/q,
// K the z-wavenumber of the reference open channel.
PsiN psi_n_generic(int n, double k, double kx, double a, const ArrayConfig& cfg, int ref,
                   double sigma) {
  BlochPoint pt(k, kx);
  check_threshold(pt, 1e-9);
  double K2 = -pt.gap(ref);
  double K = std::sqrt(K2);
  double L = n * kPi / K;
  StarSum st = star_sum(pt, cfg.R);
  ExpSums ex = exp_sums(pt, a, L);
  PsiN out;
  out.value = inv_source(k, cfg) + st.value + sigma * ex.c;
  out.dk = inv_source_dk(k, cfg) + st.dk + sigma * (ex.c_dk - ex.c_dL * L * k / K2);
  return out;
}

}  // namespace

double psi_n_I(int n, double k, double kx, double a, const ArrayConfig& cfg) {
  return psi_n_generic(n, k, kx, a, cfg, 0, (n % 2) ? -1.0 : 1.0).value;
}

double dpsi_n_I_dk(int n, double k, double kx, double a, const ArrayConfig& cfg) {
  return psi_n_generic(n, k, kx, a, cfg, 0, (n % 2) ? -1.0 : 1.0).dk;
}

std::optional<double> k_n_I_approx(int n, double kx, double a, const ArrayConfig& cfg) {
  double s = ((n % 2) ? -1.0 : 1.0) * std::cos(kTwoPi * a);
  if (near(s, 1.0)) return std::nullopt;
  double P = kTwoPi - std::abs(kx);
  double d = delta0(P, cfg);
  double v = P * P - 4.0 * kPi * kPi * (1.0 - s) * (1.0 - s) * d * d;
  if (v <= 0.0) return std::nullopt;
  return std::sqrt(v);
}

BoundStateRecord solve_continuum_I(const ArrayConfig& cfg_in, double a, double kx_in, int n) {
  if (n < 1) throw std::invalid_argument("n must be positive");
  double kx = std::abs(reduce_kx(kx_in));
  if (!(kx < kPi)) throw std::invalid_argument("continuum I needs kx in [0, pi)");
  if (!in_set_L(a, kx)) throw std::invalid_argument("(a, kx) outside the set L");
  ArrayConfig cfg = cfg_in;
  cfg.a = a;
  auto psi = [&](double k) { return psi_n_I(n, k, kx, a, cfg); };
  auto root = root_below_threshold(psi, kx, kTwoPi - kx);
  if (!root)
    throw NoRoot("Psi_" + std::to_string(n) + " has no root on (kx, 2pi - kx)");
  double kz = std::sqrt((root->k - kx) * (root->k + kx));
  cfg.h = n * kPi / (2.0 * kz);
  Family fam = (n % 2) ? Family::Plus : Family::Minus;
  auto r = base_record(cfg, kx, root->k, RegionTag{RegionTag::Kind::Continuum, 1}, fam);
  r.n = n;
  r.approx_k = k_n_I_approx(n, kx, a, cfg);
  if (r.approx_k) {
    double kza = std::sqrt(*r.approx_k * *r.approx_k - kx * kx);
    r.approx_h = n * kPi / (2.0 * kza);
  }
  r.field_ratio = ((n % 2) ? 1.0 : -1.0) * std::exp(kI * (a * kx));
  r.residuals.emplace_back("psi", std::abs(root->f));
  r.residuals.emplace_back("sin_2hkz", std::abs(std::sin(2.0 * r.h * kz)));
  BlochPoint pt(r.k, kx);
  r.residuals.emplace_back("phi_s", std::abs(phi_aux(pt, cfg).phi_s));
  finish_record(r);
  return r;
}

std::vector<BoundStateRecord> find_continuum_I(const ArrayConfig& cfg, double a, double kx,
                                               int n_max) {
  ArrayConfig c = cfg;
  c.a = a;
  ExistenceGate gate = existence_gate_I(std::abs(reduce_kx(kx)), c);
  if (!gate.holds) throw GateFailed("continuum I series condition", gate.lhs, gate.rhs);
  std::vector<BoundStateRecord> out;
  for (int n = 1; n <= n_max; ++n) {
    try {
      out.push_back(solve_continuum_I(c, a, kx, n));
    } catch (const NoRoot&) {
    }
  }
  return out;
}

// ─────────────────────────────────────────────────────────────────────────────
// Existence gates
// ─────────────────────────────────────────────────────────────────────────────

namespace {

double series_sum(const std::function<double(double)>& f, int M = 64) {
  double s = 0.0;
  for (int m = 1; m < M; ++m) s += f(m);
  return s + euler_maclaurin_tail(f, M);
}

GateConstants compute_gate_constants() {
  using boost::math::tools::brent_find_minima;
  GateConstants g;
  auto g1 = [](double t) {
    double sp = std::sqrt(1 + t), sm = std::sqrt(1 - t);
    return (1 + sp + sm) / (sp * (1 + std::sqrt(1 - t * t)) * (2 + sp + sm));
  };
  auto g2 = [](double t) {
    double r = std::sqrt(3 - t), st = std::sqrt(t);
    return (2 - t) * (2 - t) / r * (r / (1 + st) - st / (std::sqrt(2.0) + r));
  };
  auto best = [](auto f) {
    auto [t, v] = brent_find_minima(f, 0.0, 1.0, 50);
    for (double edge : {0.0, 1.0})
      if (f(edge) < v) {
        t = edge;
        v = f(edge);
      }
    return std::pair<double, double>(t, v);
  };
  auto [t1, v1] = best(g1);
  auto [t2, v2] = best(g2);
  g.t1 = t1;
  g.C1 = std::pow(kPi, 0.75) * std::sqrt(2.0) / std::sqrt(v1);
  g.t2 = t2;
  g.C2 = std::pow(2.0, 1.25) * std::pow(kPi, -0.75) / std::sqrt(v2);
  g.s = series_sum([](double m) {
    return 1.0 / std::sqrt(m * (m + 1)) - 0.5 * (1.0 / (m + 1) + 1.0 / (m + 2));
  });
  return g;
}

}  // namespace

const GateConstants& gate_constants() {
  static const GateConstants g = compute_gate_constants();
  return g;
}

ExistenceGate existence_gate_I(double kx, const ArrayConfig& cfg) {
  ExistenceGate g;
  g.kind = ExistenceGate::Kind::ContinuumI;
  kx = std::abs(reduce_kx(kx));
  double rs = cfg.R * std::sqrt(cfg.eps_c - 1.0);
  double tail_const = (0.5 - std::log(kTwoPi * cfg.R)) / kPi;
  if (kx == 0.0) {
    g.lhs = std::numeric_limits<double>::infinity();
    g.rhs = tail_const;
    g.holds = true;
    g.precheck = true;
    g.precheck_lhs = rs;
    g.precheck_rhs = std::numeric_limits<double>::infinity();
    return g;
  }
  g.lhs = 2.0 / (kPi * cfg.R * cfg.R * (cfg.eps_c - 1.0) * kx * kx);
  g.rhs = series_sum([kx](double m) {
            double a = 4 * kPi * kPi * m * m, b = 4 * kPi * m * kx;
            return 1.0 / std::sqrt(a - b) + 1.0 / std::sqrt(a + b) - 1.0 / (kPi * m);
          }) +
          tail_const;
  g.holds = g.lhs > g.rhs;
  g.precheck_lhs = rs;
  g.precheck_rhs = gate_constants().C1 * std::pow(kPi - kx, 0.25) / (kx * kx);
  g.precheck = g.precheck_lhs < g.precheck_rhs;
  return g;
}

ExistenceGate existence_gate_II(double kx, const ArrayConfig& cfg) {
  ExistenceGate g;
  g.kind = ExistenceGate::Kind::ContinuumII;
  kx = std::abs(reduce_kx(kx));
  if (!(kx > 0.0)) throw std::invalid_argument("continuum II gate needs kx in (0, pi]");
  double P = kTwoPi - kx;
  g.lhs = 2.0 / (kPi * cfg.R * cfg.R * (cfg.eps_c - 1.0) * P * P);
  double s = gate_constants().s;
  g.rhs = series_sum([kx, P](double m) {
            double u = kTwoPi * m + kx, v = kTwoPi * (m + 1) - kx;
            return 1.0 / std::sqrt((u - P) * (u + P)) + 1.0 / std::sqrt((v - P) * (v + P)) -
                   1.0 / (kPi * std::sqrt(m * (m + 1)));
          }) +
          (s - 0.75 - std::log(kTwoPi * cfg.R)) / kPi;
  g.holds = g.lhs > g.rhs;
  g.precheck_lhs = cfg.R * std::sqrt(cfg.eps_c - 1.0);
  g.precheck_rhs = kx >= kPi ? std::numeric_limits<double>::infinity()
                             : gate_constants().C2 * std::pow(kx, 0.25) / std::sqrt(kPi - kx);
  g.precheck = g.precheck_lhs < g.precheck_rhs;
  return g;
}

// ─────────────────────────────────────────────────────────────────────────────
// Continuum II
// ─────────────────────────────────────────────────────────────────────────────

Family family_II(int n, double a) {
  bool odd = n % 2;
  if (near(a, 0.0)) return odd ? Family::Plus : Family::Minus;
  if (near(a, 0.5)) return odd ? Family::Minus : Family::Plus;
  throw std::invalid_argument("continuum II requires a in {0, 1/2}");
}

namespace {

double sigma_II(int n, double a) {
  family_II(n, a);  // validates a
  return ((n % 2) ? -1.0 : 1.0) * std::cos(kTwoPi * a);
}

}  // namespace

double psi_n_II(int n, double k, double kx, double a, const ArrayConfig& cfg) {
  return psi_n_generic(n, k, kx, a, cfg, -1, sigma_II(n, a)).value;
}

double dpsi_n_II_dk(int n, double k, double kx, double a, const ArrayConfig& cfg) {
  return psi_n_generic(n, k, kx, a, cfg, -1, sigma_II(n, a)).dk;
}

double psi_infinity(double k, double kx, const ArrayConfig& cfg) {
  BlochPoint pt(k, kx);
  check_threshold(pt, 1e-9);
  return inv_source(k, cfg) + star_sum(pt, cfg.R).value;
}

double dpsi_infinity_dk(double k, double kx, const ArrayConfig& cfg) {
  BlochPoint pt(k, kx);
  check_threshold(pt, 1e-9);
  return inv_source_dk(k, cfg) + star_sum(pt, cfg.R).dk;
}

double k_n_II(int n, double kx_in, double a, const ArrayConfig& cfg) {
  double kx = std::abs(reduce_kx(kx_in));
  if (!(kx > 0.0)) throw std::invalid_argument("continuum II needs kx in (0, pi]");
  auto psi = [&](double k) { return psi_n_II(n, k, kx, a, cfg); };
  auto root = root_below_threshold(psi, kTwoPi - kx, kTwoPi + kx);
  if (!root) throw NoRoot("Psi_" + std::to_string(n) + " has no root on (2pi - kx, 2pi + kx)");
  return root->k;
}

double k_infinity(double kx_in, const ArrayConfig& cfg) {
  double kx = std::abs(reduce_kx(kx_in));
  auto psi = [&](double k) { return psi_infinity(k, kx, cfg); };
  auto root = root_below_threshold(psi, kTwoPi - kx, kTwoPi + kx);
  if (!root) throw NoRoot("Psi_infinity has no root");
  return root->k;
}

double k_odd_II_approx(double kx, const ArrayConfig& cfg) {
  double P = kTwoPi + std::abs(kx);
  double d = delta0(P, cfg);
  return P - 8.0 * kPi * kPi * d * d / P;
}

double phi_n(int n, double kx, double a, const ArrayConfig& cfg) {
  double k = k_n_II(n, kx, a, cfg);
  double P = kTwoPi - kx;
  return n * kPi * std::sqrt(((k - kx) * (k + kx)) / ((k - P) * (k + P)));
}

double phi_infinity(double kx, const ArrayConfig& cfg) {
  double k = k_infinity(kx, cfg);
  double P = kTwoPi - kx;
  return std::sqrt(((k - kx) * (k + kx)) / ((k - P) * (k + P)));
}

double kx_nl_approx(int n, int l, const ArrayConfig& cfg) {
  double r = double(l) / n;
  double r2 = r * r;
  double u = std::pow(cfg.R, 4) * (cfg.eps_c - 1.0) * (cfg.eps_c - 1.0);
  return kPi / (2 * r2 - 1) +
         std::pow(kPi, 5) * (r2 - 1) * std::pow(4 * r2 - 1, 4) / (4 * std::pow(2 * r2 - 1, 5)) * u;
}

bool parity_allows(int n, int l, double a) {
  // plus branch: cos(2h kz0) = -1 (l odd); minus branch: +1 (l even)
  Family f = family_II(n, a);
  return (f == Family::Plus) == (l % 2 != 0);
}

std::vector<std::pair<int, double>> phi_crossings(int n, double a, const ArrayConfig& cfg,
                                                  double lo, double hi, int grid, int l_min,
                                                  int l_max) {
  std::vector<double> xs(grid);
  for (int i = 0; i < grid; ++i) xs[i] = lo + (hi - lo) * (i + 0.5) / grid;
  std::vector<double> phi(grid, kNaN);
  parallel_for(grid, [&](std::size_t i) {
    try {
      phi[i] = phi_n(n, xs[i], a, cfg) / kPi;
    } catch (const Error&) {
    }
  });
  std::vector<std::pair<int, double>> out;
  for (int i = 0; i + 1 < grid; ++i) {
    if (!std::isfinite(phi[i]) || !std::isfinite(phi[i + 1])) continue;
    double p0 = phi[i], p1 = phi[i + 1];
    int lo_l = static_cast<int>(std::ceil(std::min(p0, p1)));
    int hi_l = static_cast<int>(std::floor(std::max(p0, p1)));
    for (int l = std::max(lo_l, l_min); l <= std::min(hi_l, l_max); ++l) {
      if (double(l) == p1 && i + 2 < grid) continue;  // counted in the next cell
      auto f = [&](double kx) { return phi_n(n, kx, a, cfg) / kPi - l; };
      auto br = bisect(f, xs[i], xs[i + 1], p0 - l, p1 - l);
      out.emplace_back(l, br.x);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

BoundStateRecord make_record_II(const ArrayConfig& cfg_in, double a, int n, int l, double kx) {
  ArrayConfig cfg = cfg_in;
  cfg.a = a;
  double k = k_n_II(n, kx, a, cfg);
  double P = kTwoPi - kx;
  double kz1 = std::sqrt((k - P) * (k + P));
  double kz0 = std::sqrt((k - kx) * (k + kx));
  cfg.h = n * kPi / (2.0 * kz1);
  auto r = base_record(cfg, kx, k, RegionTag{RegionTag::Kind::Continuum, 2}, family_II(n, a));
  r.n = n;
  r.l = l;
  if (n % 2) {
    r.approx_k = k_odd_II_approx(kx, cfg);
    double P1 = *r.approx_k;
    r.approx_h = n * kPi / (2.0 * std::sqrt((P1 - P) * (P1 + P)));
  }
  double sgn = ((n % 2) ? 1.0 : -1.0) * (near(a, 0.5) ? -1.0 : 1.0);
  r.field_ratio = sgn * std::exp(kI * (a * kx));
  BlochPoint pt(k, kx);
  AuxSums aux = phi_aux(pt, cfg);
  double psp = aux.phi_star - aux.phi_c, psm = aux.phi_star + aux.phi_c;
  double c2a = std::cos(kTwoPi * a);
  double c0 = std::cos(2 * cfg.h * kz0), c1 = std::cos(2 * cfg.h * kz1);
  double e1 = 2.0 * (1.0 - c2a * c0 * c1) / (kz0 * kz1) - psp * psm;
  double e2 = psp * ((1 - c0) / kz0 + (1 - c2a * c1) / kz1) +
              psm * ((1 + c0) / kz0 + (1 + c2a * c1) / kz1);
  r.residuals.emplace_back("psi", std::abs(r.family == Family::Plus ? psp : psm));
  r.residuals.emplace_back("system_eq1", std::abs(e1));
  r.residuals.emplace_back("system_eq2", std::abs(e2));
  r.residuals.emplace_back("sin_2hkz0", std::abs(std::sin(2 * cfg.h * kz0)));
  r.residuals.emplace_back("sin_2hkz1", std::abs(std::sin(2 * cfg.h * kz1)));
  finish_record(r);
  return r;
}

std::vector<BoundStateRecord> find_continuum_II(const ArrayConfig& cfg_in, double a, int n_max,
                                                int l_max, const ContinuumIIOptions& opt) {
  ArrayConfig cfg = cfg_in;
  cfg.a = a;
  family_II(1, a);
  ExistenceGate edge = existence_gate_II(kPi, cfg);
  if (!edge.holds) throw GateFailed("continuum II series condition", edge.lhs, edge.rhs);
  std::vector<BoundStateRecord> out;
  for (int n = 1; n <= n_max; ++n) {
    if (opt.include_zone_edge && near(a, 0.0) && n <= l_max) {
      try {
        out.push_back(make_record_II(cfg, a, n, n, kPi));
      } catch (const NoRoot&) {
      }
    }
    auto cross = phi_crossings(n, a, cfg, 0.0, kPi, opt.grid, n + 1, l_max);
    for (auto [l, kx] : cross) {
      if (!parity_allows(n, l, a)) continue;
      out.push_back(make_record_II(cfg, a, n, l, kx));
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    return std::tie(*x.n, *x.l, x.kx) < std::tie(*y.n, *y.l, y.kx);
  });
  return out;
}

std::vector<double> enumerate_kx_II(int n, double alpha, double beta, const ArrayConfig& cfg,
                                    double a, int grid) {
  if (!(0.0 < alpha && alpha < beta && beta < kPi))
    throw std::invalid_argument("enumerate_kx_II needs 0 < alpha < beta < pi");
  auto cross = phi_crossings(n, a, cfg, alpha, beta, grid, n + 1, std::numeric_limits<int>::max());
  std::vector<double> out;
  for (auto [l, kx] : cross) out.push_back(kx);
  std::sort(out.begin(), out.end());
  return out;
}

// ─────────────────────────────────────────────────────────────────────────────
// Diophantine families
// ─────────────────────────────────────────────────────────────────────────────

DiophantineTuple diophantine_point(const std::vector<int>& n) {
  if (n.size() < 3) throw std::invalid_argument("need at least three integers");
  double n0 = n[0], n1 = n[1], n2 = n[2];
  double D = 2 * n0 * n0 - n1 * n1 - n2 * n2;
  if (D == 0.0) throw DegenerateTriple("2 n0^2 = n1^2 + n2^2");
  DiophantineTuple t;
  t.n = n;
  t.kx = (n1 * n1 - n2 * n2) * kPi / D;
  t.h = std::sqrt(std::abs(D)) / (4.0 * std::sqrt(2.0));
  double A = n1 * n1 + n2 * n2 - 4 * n0 * n0;
  t.k = kPi * std::sqrt(A * A - 4 * n1 * n1 * n2 * n2) / std::abs(D);
  t.open_count = static_cast<int>(open_channels(BlochPoint(t.k, t.kx)).size());
  return t;
}

cplx curve_constant(const DiophantineTuple& t, double a) {
  BlochPoint pt(t.k, t.kx);
  // phi0 = i X / pi + rest, with rest independent of R and eps_c
  ArrayConfig cfg{0.1, 2.0, a, t.h};
  LatticeSums s = evaluate(pt, cfg);
  double X_cfg = 2.0 / (t.k * t.k * cfg.R * cfg.R * (cfg.eps_c - 1.0)) + std::log(kTwoPi * cfg.R);
  cplx rest = s.phi0 - kI * X_cfg / kPi;
  cplx root = std::sqrt(s.phi_plus * s.phi_minus);
  cplx best;
  double best_im = std::numeric_limits<double>::infinity();
  for (double sg : {1.0, -1.0}) {
    cplx X = (sg * root - rest) * kPi / kI;
    if (std::abs(X.imag()) < best_im) {
      best_im = std::abs(X.imag());
      best = X;
    }
  }
  return best;
}

std::optional<double> eps_on_curve(double C, double k, double R) {
  double rem = C - std::log(kTwoPi * R);
  if (!(rem > 0.0)) return std::nullopt;
  return 1.0 + 2.0 / (k * k * R * R * rem);
}

std::vector<DiophantineTuple> diophantine_N(int channel_count, int search_bound) {
  if (channel_count != 3 && channel_count != 4)
    throw std::invalid_argument("channel_count must be 3 or 4");
  if (search_bound < 2) throw std::invalid_argument("search_bound must be >= 2");
  std::vector<DiophantineTuple> out;
  auto finish = [&](DiophantineTuple t) {
    if (t.open_count != channel_count) return;
    double best = std::numeric_limits<double>::infinity();
    for (double a : {0.0, 0.5}) {
      cplx X = curve_constant(t, a);
      if (std::abs(X.imag()) < best) {
        best = std::abs(X.imag());
        t.a = a;
        t.C_curve = X.real();
        t.C_imag = X.imag();
      }
    }
    t.parity_ok = best < 1e-8 * std::max(1.0, std::abs(t.C_curve));
    out.push_back(t);
  };
  const int B = search_bound;
  for (int n0 = 1; n0 <= B; ++n0)
    for (int n1 = 1; n1 <= n0; ++n1)
      for (int n2 = 1; n2 <= n1; ++n2) {
        if (2 * n0 * n0 == n1 * n1 + n2 * n2) continue;
        if (2 * n0 * n0 - n1 * n1 - n2 * n2 < 0) continue;
        if (channel_count == 3) {
          if (!(n0 > n1)) continue;
          finish(diophantine_point({n0, n1, n2}));
        } else {
          if (!(n1 > n2)) continue;
          for (int n3 = 1; n3 <= n2; ++n3) {
            if (3 * n1 * n1 + n2 * n2 != 3 * n0 * n0 + n3 * n3) continue;
            finish(diophantine_point({n0, n1, n2, n3}));
          }
        }
      }
  return out;
}

}  // namespace bicgrate
