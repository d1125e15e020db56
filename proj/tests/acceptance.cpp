// Acceptance checks. `acceptance` runs all of them; `acceptance --criterion N`
// runs one. Each prints a single PASS/FAIL line followed by indented details.
#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bicgrate/fields.hpp"
#include "bicgrate/oracles.hpp"
#include "support.hpp"

using namespace bicgrate;
using testing::rel;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  // Records a sub-check; the criterion passes only if all sub-checks do.
  void check(bool ok, const std::string& what) {
    pass = pass && ok;
    notes.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
  }
  void info(const std::string& what) { notes.push_back("     " + what); }
};

std::string num(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const ArrayConfig kBase{0.1, 1.5, 0.0, 1.0};

// Smallest |k_z| over the channels near the spectral point.
double threshold_distance(double k, double kx) {
  BlochPoint pt(k, kx);
  double d = 1e300;
  for (int m = -4; m <= 4; ++m) d = std::min(d, std::sqrt(std::abs(pt.gap(m))));
  return d;
}

// ── 1 ──────────────────────────────────────────────────────────────────────
Outcome lattice_identities() {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  double worst_a = 0.0, worst_b = 0.0, worst_res = 0.0;
  for (int i = 0; i < 5; ++i) {
    double k, kx;
    do {
      k = 0.8 + 6.0 * U(rng);
      kx = kPi * (2.0 * U(rng) - 1.0);
    } while (threshold_distance(k, kx) < 0.5);
    double x = U(rng), z = 0.1 + 1.2 * U(rng);
    auto direct = oracles::hankel_sum_direct(BlochPoint(k, kx), x, z);
    cplx channel = line_source_sum(k, kx, x, z);
    worst_a = std::max(worst_a, std::abs(direct.extrapolated - channel));
    worst_res = std::max(worst_res, direct.residual);
  }
  for (int i = 0; i < 10; ++i) {
    double k, kx;
    do {
      k = 0.8 + 6.0 * U(rng);
      kx = kPi * (2.0 * U(rng) - 1.0);
    } while (threshold_distance(k, kx) < 0.5);
    BlochPoint pt(k, kx);
    auto diag = oracles::hankel_diag_direct(pt);
    cplx pred = testing::phi0_from_diagonal(diag.extrapolated, k, kBase.R, kBase.eps_c);
    worst_b = std::max(worst_b, std::abs(pred - phi0(pt, kBase)));
    worst_res = std::max(worst_res, diag.residual);
  }
  double t = seconds_since(t0);
  o.check(worst_a < 1e-6, "spatial sum vs channel form at 5 points: max gap " + num(worst_a, 3));
  o.check(worst_b < 1e-6, "diagonal sum vs phi0 at 10 points: max gap " + num(worst_b, 3));
  o.info("largest extrapolation residual " + num(worst_res, 3));
  o.check(t < 30.0, "runtime " + num(t, 3) + " s");
  return o;
}

// ── 2 ──────────────────────────────────────────────────────────────────────
Outcome below_continuum() {
  Outcome o;
  auto r = solve_below(kBase, kPi, Family::Plus);
  double gap = rel(r.k, *r.approx_k);
  o.check(r.residual("psi") < 1e-10, "|Psi+(k+)| = " + num(r.residual("psi"), 3));
  o.check(gap < 1e-3, "k+ = " + num(r.k, 8) + " vs leading order " + num(*r.approx_k, 8) +
                          ", relative gap " + num(gap, 3) + " (limit 1e-3)");
  std::vector<double> gaps;
  for (double R : {0.1, 0.05, 0.025}) {
    ArrayConfig c = kBase;
    c.R = R;
    auto rr = solve_below(c, kPi, Family::Plus);
    gaps.push_back(std::abs(rr.k - *rr.approx_k) / kPi);
    o.info("R = " + num(R) + ": gap/kx = " + num(gaps.back(), 4));
  }
  for (std::size_t i = 1; i < gaps.size(); ++i)
    o.check(gaps[i - 1] / gaps[i] >= 4.0, "halving R shrinks the gap by " + num(gaps[i - 1] / gaps[i], 4));
  return o;
}

// ── 3 ──────────────────────────────────────────────────────────────────────
Outcome continuum_one() {
  Outcome o;
  double d2 = std::pow(delta0(kTwoPi, kBase), 2);
  double k_pred = kTwoPi - 4.0 * kPi * d2, h_unit = 0.25 * (1.0 + 2.0 * d2);
  auto recs = find_continuum_I(kBase, 0.0, 0.0, 4);
  for (int n = 1; n <= 4; ++n) {
    auto it = std::find_if(recs.begin(), recs.end(), [&](const auto& r) { return r.n == n; });
    if (it == recs.end()) {
      o.check(false, "n = " + std::to_string(n) + ": no record");
      continue;
    }
    const auto& r = *it;
    std::string tag = "n = " + std::to_string(n) + ": ";
    o.check(rel(r.h, n * h_unit) < 1e-2,
            tag + "h = " + num(r.h, 7) + " vs " + num(n * h_unit, 7) + " (" + num(100 * rel(r.h, n * h_unit), 3) + "%)");
    o.check(rel(r.k, k_pred) < 1e-3,
            tag + "k = " + num(r.k, 7) + " vs " + num(k_pred, 7) + " (" + num(100 * rel(r.k, k_pred), 3) + "%)");
    o.check(r.residual_delta < 1e-8 && r.residual("decoupling") < 1e-8,
            tag + "|Delta| = " + num(r.residual_delta, 3) + ", decoupling " + num(r.residual("decoupling"), 3));

    auto src = source_of(r);
    double sign = n % 2 ? 1.0 : -1.0, parity = 0.0;
    for (double x : {0.1, 0.37, 0.5, 0.8})
      for (double z : {0.07, 0.3, r.h + 0.4})
        parity = std::max(parity, std::abs(field_at(src, x, z) - sign * field_at(src, x, -z)));
    o.check(parity < 1e-9, tag + (n % 2 ? "even" : "odd") + " in z, residual " + num(parity, 3));

    auto g = bound_field(r, GridSpec{0.0, 1.0, 0.0, 0.0, 128, 256});
    double best = 0.0, bx = 0.0, bz = 0.0;
    for (int i = 0; i < int(g.xs.size()); ++i)
      for (int j = 0; j < int(g.zs.size()); ++j)
        if (!g.is_inside(i, j) && std::abs(g.at(i, j)) > best) {
          best = std::abs(g.at(i, j));
          bx = g.xs[i];
          bz = g.zs[j];
        }
    double dist = std::min(std::hypot(std::remainder(bx, 1.0), bz + r.h),
                           std::hypot(std::remainder(bx - r.a, 1.0), bz - r.h));
    o.check(dist < 2.0 * r.R, tag + "max |E| = " + num(best, 4) + " at (" + num(bx, 3) + ", " + num(bz, 3) +
                                  "), " + num(dist, 3) + " from the nearest axis");
  }
  return o;
}

// ── 4 ──────────────────────────────────────────────────────────────────────
Outcome gates() {
  Outcome o;
  const auto& g = gate_constants();
  o.check(std::abs(g.C1 - 5.846) <= 1e-3, "continuum I constant " + num(g.C1, 7) + " at t = " + num(g.t1, 5));
  o.check(std::abs(g.C2 - 2.016) <= 1e-3, "continuum II constant " + num(g.C2, 7) + " at t = " + num(g.t2, 5));
  o.check(std::abs(g.s - 0.691) <= 1e-3, "s = " + num(g.s, 7));
  return o;
}

// ── 5 ──────────────────────────────────────────────────────────────────────
Outcome flux() {
  Outcome o;
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  std::array<double, 2> worst{0.0, 0.0};
  int solved = 0;
  for (int i = 0; i < 1000; ++i) {
    int region = i % 2;
    ArrayConfig cfg{0.02 + 0.25 * U(rng), 1.0 + 6.0 * U(rng), 0.5 * U(rng), 0.0};
    cfg.h = cfg.R + 0.05 + 2.0 * U(rng);
    double kx = 0.02 + (kPi - 0.04) * U(rng), k;
    if (region == 0)
      k = kx + (kTwoPi - 2.0 * kx) * (0.005 + 0.99 * U(rng));
    else
      k = kTwoPi - kx + 2.0 * kx * (0.005 + 0.99 * U(rng));
    auto dir = (i / 2) % 2 ? Incidence::FromAbove : Incidence::FromBelow;
    auto s = solve(cfg, BlochPoint(k, kx), dir);
    worst[region] = std::max(worst[region], std::abs(s.flux_error));
    ++solved;
  }
  o.info(std::to_string(solved) + " solves");
  o.check(worst[0] < 1e-10, "continuum I: max |flux error| " + num(worst[0], 3));
  o.check(worst[1] < 1e-10, "continuum II: max |flux error| " + num(worst[1], 3));
  return o;
}

// ── 6 ──────────────────────────────────────────────────────────────────────

// Least-squares fit of A w^2 / ((k - k0)^2 + w^2) + B. Returns w.
double lorentzian_half_width(const std::vector<double>& k, const std::vector<double>& y) {
  std::size_t imax = std::max_element(y.begin(), y.end()) - y.begin();
  double ymin = *std::min_element(y.begin(), y.end());
  // parabola through the peak and its neighbours for the initial centre
  double k0 = k[imax];
  if (imax > 0 && imax + 1 < k.size()) {
    double y0 = y[imax - 1], y1 = y[imax], y2 = y[imax + 1], step = k[imax + 1] - k[imax];
    double den = y0 - 2 * y1 + y2;
    if (den != 0.0) k0 += 0.5 * step * (y0 - y2) / den;
  }
  double half = 0.5 * (y[imax] + ymin), w = 0.0;
  for (std::size_t i = imax; i < k.size(); ++i)
    if (y[i] < half) {
      w = k[i] - k0;
      break;
    }
  if (w <= 0.0) w = (k.back() - k.front()) / 10;
  std::array<double, 4> p{y[imax] - ymin, k0, w, ymin};
  auto model = [](const std::array<double, 4>& q, double x, std::array<double, 4>* grad) {
    double d = x - q[1], den = d * d + q[2] * q[2], L = q[2] * q[2] / den;
    if (grad) {
      (*grad)[0] = L;
      (*grad)[1] = q[0] * 2.0 * d * q[2] * q[2] / (den * den);
      (*grad)[2] = q[0] * 2.0 * q[2] * d * d / (den * den);
      (*grad)[3] = 1.0;
    }
    return q[0] * L + q[3];
  };
  double lambda = 1e-3;
  auto cost = [&](const std::array<double, 4>& q) {
    double c = 0.0;
    for (std::size_t i = 0; i < k.size(); ++i) c += std::pow(model(q, k[i], nullptr) - y[i], 2);
    return c;
  };
  for (int it = 0; it < 50; ++it) {
    double JtJ[4][4] = {}, Jtr[4] = {};
    for (std::size_t i = 0; i < k.size(); ++i) {
      std::array<double, 4> g;
      double r = y[i] - model(p, k[i], &g);
      for (int a = 0; a < 4; ++a) {
        Jtr[a] += g[a] * r;
        for (int b = 0; b < 4; ++b) JtJ[a][b] += g[a] * g[b];
      }
    }
    for (int a = 0; a < 4; ++a) JtJ[a][a] *= 1.0 + lambda;
    // Gaussian elimination with partial pivoting
    double M[4][5];
    for (int a = 0; a < 4; ++a) {
      for (int b = 0; b < 4; ++b) M[a][b] = JtJ[a][b];
      M[a][4] = Jtr[a];
    }
    for (int c = 0; c < 4; ++c) {
      int piv = c;
      for (int r = c + 1; r < 4; ++r)
        if (std::abs(M[r][c]) > std::abs(M[piv][c])) piv = r;
      std::swap(M[c], M[piv]);
      for (int r = c + 1; r < 4; ++r) {
        double f = M[r][c] / M[c][c];
        for (int b = c; b < 5; ++b) M[r][b] -= f * M[c][b];
      }
    }
    std::array<double, 4> step{};
    for (int c = 3; c >= 0; --c) {
      double s = M[c][4];
      for (int b = c + 1; b < 4; ++b) s -= M[c][b] * step[b];
      step[c] = s / M[c][c];
    }
    std::array<double, 4> trial = p;
    for (int a = 0; a < 4; ++a) trial[a] += step[a];
    if (cost(trial) < cost(p)) {
      p = trial;
      lambda *= 0.3;
    } else {
      lambda *= 10.0;
    }
  }
  return std::abs(p[2]);
}

Outcome breit_wigner() {
  Outcome o;
  const double kx = kPi / 5;
  auto cp = critical_point(kBase, kx, 1);
  o.info("bound state at h1 = " + num(cp.h, 8) + ", k1 = " + num(cp.k, 8));
  for (double dh : {-0.02, 0.02}) {
    ArrayConfig cfg = kBase;
    cfg.h = cp.h + dh;
    auto res = resonance_at(cfg, kx, cfg.h, Family::Plus);
    double top = kTwoPi - kx;
    double span = std::min(8.0 * res.gamma, 0.95 * (top - res.k_r) + 4.0 * res.gamma);
    std::vector<double> ks, ys;
    for (int i = 0; i <= 400; ++i) {
      double k = res.k_r - span + 2.0 * span * i / 400;
      if (k >= top - 1e-9) break;
      ks.push_back(k);
      ys.push_back(specular(cfg, BlochPoint(k, kx)));
    }
    double w = lorentzian_half_width(ks, ys);
    o.check(rel(w, res.gamma) < 0.05, "dh = " + num(dh) + ": fitted half-width " + num(w, 6) + " vs Gamma " +
                                          num(res.gamma, 6) + " (" + num(100 * rel(w, res.gamma), 3) + "%)");
  }
  for (double side : {-1.0, 1.0}) {
    double prev = 1e300;
    bool mono = true;
    std::string trail;
    for (int j = 0; j <= 10; ++j) {
      double dh = side * std::pow(10.0, -2.0 - j / 10.0);
      ArrayConfig cfg = kBase;
      cfg.h = cp.h + dh;
      double g = resonance_at(cfg, kx, cfg.h, Family::Plus).gamma;
      mono = mono && g < prev && g > 0.0;
      prev = g;
      if (j == 0 || j == 10) trail += (trail.empty() ? "" : " -> ") + num(g, 4);
    }
    o.check(mono && prev < 1e-3, std::string(side < 0 ? "below" : "above") +
                                     " h1, |dh| from 1e-2 to 1e-3: Gamma " + trail + (mono ? ", monotone" : ", not monotone"));
  }
  return o;
}

// ── 7 ──────────────────────────────────────────────────────────────────────
Outcome amplification() {
  Outcome o;
  const double kx = kPi / 5;
  std::vector<double> dhs;
  for (int j = 0; j <= 8; ++j) {
    double d = std::pow(10.0, -4.0 + j * 0.25);
    dhs.push_back(d);
    dhs.push_back(-d);
  }
  auto sweep = amplification_sweep(kBase, kx, 1, dhs);
  for (double side : {1.0, -1.0}) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (const auto& p : sweep) {
      if (p.dh * side < 0) continue;
      double x = std::log(std::abs(p.dh)), y = std::log(std::abs(p.field));
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
      ++n;
    }
    double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    o.check(std::abs(slope + 1.0) <= 0.1, std::string(side > 0 ? "dh > 0" : "dh < 0") + ": log-log slope " + num(slope, 6));
  }
  auto cp = critical_point(kBase, kx, 1);
  double worst = 0.0;
  const double grid[] = {-1e-3, -5e-4, -1e-4, 0.0, 1e-4, 5e-4, 1e-3};
  for (double dh : grid) {
    for (double dk : grid) {
      if (dh == 0.0 && dk == 0.0) continue;
      ArrayConfig c = kBase;
      c.h = cp.h + dh;
      cplx exact;
      try {
        exact = solve(c, BlochPoint(cp.k + dk, kx)).refl.at(0);
      } catch (const SingularSystem&) {
        continue;
      }
      worst = std::max(worst, std::abs(exact - reflection_principal_part(cp, dh, dk)) / std::abs(exact));
    }
  }
  o.check(worst < 0.05, "principal part of R0 vs exact, |dh|,|dk| <= 1e-3: max relative error " + num(worst, 3));
  return o;
}

// ── 8 ──────────────────────────────────────────────────────────────────────
Outcome continuum_two() {
  Outcome o;
  const double target = 1.2483;
  auto recs = find_continuum_II(kBase, 0.0, 3, 8);
  bool listed = std::any_of(recs.begin(), recs.end(), [](const auto& r) { return r.n == 3 && r.l == 4; });
  o.check(listed, "(n, l) = (3, 4) among the a = 0 records");
  auto cr = phi_crossings(3, 0.0, kBase, 0.0, kPi, 2048, 4, 4);
  if (cr.empty()) {
    o.check(false, "no crossing phi_3 = 4 pi");
  } else {
    double kx = cr[0].second;
    o.check(rel(kx, target) < 0.02, "crossing phi_3 = 4 pi at kx = " + num(kx, 7) + " (" +
                                        num(100 * rel(kx, target), 3) + "% from " + num(target) + ")");
    auto r = make_record_II(kBase, 0.0, 3, 4, kx);
    double worst = std::max({r.residual_delta, r.residual("system_eq1"), r.residual("system_eq2")});
    o.check(worst < 1e-8, "a = 0 system residuals: |Delta| " + num(r.residual_delta, 3) + ", eq1 " +
                              num(r.residual("system_eq1"), 3) + ", eq2 " + num(r.residual("system_eq2"), 3));
    auto half = phi_crossings(3, 0.5, kBase, 0.0, kPi, 2048, 4, 4);
    if (!half.empty()) {
      ArrayConfig c = kBase;
      c.a = 0.5;
      auto rh = make_record_II(c, 0.5, 3, 4, half[0].second);
      o.info("for reference, a = 1/2: kx = " + num(half[0].second, 7) + ", |Delta| " + num(rh.residual_delta, 3));
    }
  }
  double slope = phi_infinity(0.5, kBase) - phi_infinity(1.5, kBase);
  std::string trend;
  double last = 0.0;
  for (int N : {5, 9, 13, 17, 21}) {
    last = double(enumerate_kx_II(N, 0.5, 1.5, kBase, 0.0).size()) / N;
    trend += (trend.empty() ? "" : ", ") + num(last, 4);
  }
  o.check(rel(last, slope) < 0.1, "count/N for N = 5..21: " + trend + " vs " + num(slope, 5) + " (" +
                                      num(100 * rel(last, slope), 3) + "% at N = 21)");
  return o;
}

// ── 9 ──────────────────────────────────────────────────────────────────────
Outcome monotonicity() {
  Outcome o;
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int family = 1; family <= 2; ++family) {
    int negative = 0;
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      double a = U(rng) < 0.5 ? 0.0 : 0.5;
      int n = 1 + int(6 * U(rng));
      double kx, lo, hi;
      if (family == 1) {
        kx = 3.0 * U(rng);
        lo = kx;
        hi = kTwoPi - kx;
      } else {
        kx = 0.2 + 2.9 * U(rng);
        lo = kTwoPi - kx;
        hi = kTwoPi + kx;
      }
      double k = lo + (hi - lo) * (0.02 + 0.96 * U(rng));
      double step = 1e-3 * std::min(k - lo, hi - k);
      std::function<double(double)> f;
      double d;
      if (family == 1) {
        f = [&](double kk) { return psi_n_I(n, kk, kx, a, kBase); };
        d = dpsi_n_I_dk(n, k, kx, a, kBase);
      } else {
        f = [&](double kk) { return psi_n_II(n, kk, kx, a, kBase); };
        d = dpsi_n_II_dk(n, k, kx, a, kBase);
      }
      if (d < 0.0) ++negative;
      worst = std::max(worst, rel(oracles::fd_derivative(f, k, step), d));
    }
    std::string tag = family == 1 ? "continuum I: " : "continuum II: ";
    o.check(negative == 100, tag + std::to_string(negative) + "/100 points with dPsi/dk < 0");
    o.check(worst < 1e-6, tag + "analytic vs finite difference, max relative gap " + num(worst, 3));
  }
  double worst_ratio = 0.0;
  for (int i = 0; i < 20; ++i) {
    double kx = 0.05 + 3.0 * U(rng), h = 0.15 + 0.85 * U(rng);
    BlochPoint pt(0.99 * kx, kx);
    for (int m = 1; m <= 50; ++m) {
      double r = c_sequence(pt, h, m + 1) / c_sequence(pt, h, m) / std::exp(-4.0 * kPi * h);
      worst_ratio = std::max(worst_ratio, r);
    }
  }
  o.check(worst_ratio <= 1.0 + 1e-12, "c_{m+1}/c_m over e^{-4 pi h}, m <= 50: max " + num(worst_ratio, 6));
  return o;
}

// ── 10 ─────────────────────────────────────────────────────────────────────
Outcome diophantine() {
  Outcome o;
  auto t = diophantine_point({3, 2, 1});
  BlochPoint pt(t.k, t.kx);
  int brute = 0;
  for (int m = -10; m <= 10; ++m)
    if (std::pow(t.kx + kTwoPi * m, 2) <= t.k * t.k) ++brute;
  o.check(brute == 3 && classify(pt).open_count == 3,
          "(3,2,1): kx = " + num(t.kx, 7) + ", h = " + num(t.h, 7) + ", k = " + num(t.k, 7) + ", " +
              std::to_string(brute) + " open channels");
  auto q = diophantine_point({2, 2, 1, 1});
  bool rule = 3 * q.n[1] * q.n[1] + q.n[2] * q.n[2] == 3 * q.n[0] * q.n[0] + q.n[3] * q.n[3];
  o.check(rule && q.open_count == 4, "(2,2,1,1): 3 n1^2 + n2^2 = 3 n0^2 + n3^2 holds, " +
                                         std::to_string(q.open_count) + " open channels");

  auto attempt = [&](const DiophantineTuple& tt, double& delta, std::string& msg) {
    cplx C0 = curve_constant(tt, 0.0), C5 = curve_constant(tt, 0.5);
    double a = std::abs(C0.imag()) <= std::abs(C5.imag()) ? 0.0 : 0.5;
    cplx C = a == 0.0 ? C0 : C5;
    msg = "C = " + num(C.real(), 6) + (C.imag() < 0 ? " - " : " + ") + num(std::abs(C.imag()), 3) + "i at a = " + num(a);
    delta = 1e300;
    auto eps = eps_on_curve(C.real(), tt.k, kBase.R);
    if (!eps) {
      msg += ", no eps_c > 1 on the curve";
      return;
    }
    ArrayConfig cfg{kBase.R, *eps, a, tt.h};
    delta = std::abs(determinant(evaluate(BlochPoint(tt.k, tt.kx), cfg)));
    msg += ", eps_c = " + num(*eps, 7) + ", |Delta| = " + num(delta, 3);
  };
  double delta;
  std::string msg;
  attempt(t, delta, msg);
  o.check(delta < 1e-8, "(3,2,1) on its curve at R = 0.1: " + msg);
  auto control = diophantine_point({3, 1, 1});
  attempt(control, delta, msg);
  o.info("control (3,1,1): " + msg);
  return o;
}

struct Criterion {
  const char* title;
  std::function<Outcome()> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> list = {
      {"lattice-sum identities against direct Hankel sums", lattice_identities},
      {"bound state below the continuum", below_continuum},
      {"continuum I records at kx = 0", continuum_one},
      {"existence gate constants", gates},
      {"flux conservation", flux},
      {"Breit-Wigner width", breit_wigner},
      {"near-field amplification", amplification},
      {"continuum II records and density", continuum_two},
      {"monotonicity", monotonicity},
      {"three and four open channels", diophantine},
  };
  return list;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance checks"};
  int only = 0;
  app.add_option("--criterion", only, "run a single criterion (1-10)")->check(CLI::Range(1, 10));
  CLI11_PARSE(app, argc, argv);

  bool all_pass = true;
  const auto& list = criteria();
  for (int i = 1; i <= int(list.size()); ++i) {
    if (only && i != only) continue;
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = list[i - 1].run();
    } catch (const std::exception& e) {
      o.check(false, std::string("exception: ") + e.what());
    }
    std::printf("criterion %d: %s  %s  (%.1f s)\n", i, o.pass ? "PASS" : "FAIL", list[i - 1].title,
                seconds_since(t0));
    for (const auto& n : o.notes) std::printf("    %s\n", n.c_str());
    std::fflush(stdout);
    all_pass = all_pass && o.pass;
  }
  return all_pass ? 0 : 1;
}
