#include "bicgrate/lattice_sums.hpp"

#include <algorithm>
#include <cmath>

namespace bicgrate {

void ArrayConfig::validate() const {
  if (!(R > 0.0 && R < 0.5)) throw std::invalid_argument("R must lie in (0, 1/2)");
  if (!(eps_c >= 1.0)) throw std::invalid_argument("eps_c must be >= 1");
  if (!(a >= 0.0 && a <= 0.5)) throw std::invalid_argument("a must lie in [0, 1/2]");
  if (!(h > R)) throw std::invalid_argument("h must exceed R");
}

double delta0(double k, double R, double eps_c) {
  double t = 0.5 * k * R;
  return t * t * (eps_c - 1.0);
}

double delta0(double k, const ArrayConfig& cfg) { return delta0(k, cfg.R, cfg.eps_c); }

void check_threshold(const BlochPoint& pt, double guard) {
  int reach = static_cast<int>(std::ceil(pt.k() / kTwoPi)) + 1;
  for (int m = -reach; m <= reach; ++m) {
    double g = pt.gap(m);
    double kz = std::sqrt(std::abs(g));
    if (kz < guard) throw ThresholdSingularity(m, kz);
  }
}

namespace {

inline double qz(double p, double k) { return std::sqrt((p - k) * (p + k)); }

// Tail of the pair sum f(x) = 1/(pi(x+1)) - 1/q(2 pi x + kx) - 1/q(2 pi x - kx)
// over m >= M, plus the tail of its k-derivative g(x) = sum_s k/q_s^3.
struct Tail {
  double f = 0.0, f_err = 0.0;
  double g = 0.0;
};

Tail star_tail(double k, double kx, int M) {
  Tail t;
  double x = M;
  double integral = 0.0, fM = 1.0 / (kPi * (x + 1.0));
  double d1 = -1.0 / (kPi * (x + 1.0) * (x + 1.0));
  double d3 = -6.0 / (kPi * std::pow(x + 1.0, 4));
  double gint = 0.0, gM = 0.0, g1 = 0.0;
  for (int s : {1, -1}) {
    double p = kTwoPi * x + s * kx;
    double q = qz(p, k);
    integral += std::log1p((2.0 * s * kx - 2.0 * kTwoPi - k * k / (p + q)) /
                           (2.0 * kTwoPi * (x + 1.0))) /
                kTwoPi;
    fM -= 1.0 / q;
    d1 += kTwoPi * p / (q * q * q);
    d3 += 8.0 * kPi * kPi * kPi * p * (15.0 * p * p - 9.0 * q * q) / std::pow(q, 7);
    gint += k / (kTwoPi * q * (p + q));
    gM += k / (q * q * q);
    g1 += -3.0 * k * kTwoPi * p / std::pow(q, 5);
  }
  t.f = integral + 0.5 * fM - d1 / 12.0 + d3 / 720.0;
  double ratio = d1 != 0.0 ? std::abs(d3 / d1) : 0.0;
  t.f_err = std::abs(d3) * ratio / 30240.0 + 1e-16 * std::abs(integral);
  t.g = gint + 0.5 * gM - g1 / 12.0;
  return t;
}

}  // namespace

StarSum star_sum(const BlochPoint& pt, double R, const SumOptions& opts) {
  const double k = pt.k(), kx = pt.kx();
  int reach = static_cast<int>(std::ceil(k / kTwoPi)) + 1;
  int M = 48 + reach;
  Tail tail;
  for (;;) {
    tail = star_tail(k, kx, M);
    if (tail.f_err < opts.tol || M > (1 << 20)) break;
    M *= 2;
  }
  StarSum out;
  double sum = std::log(kTwoPi * R) / kPi;
  double dk = 0.0;
  for (int m = -(M - 1); m <= M - 1; ++m) {
    double reg = 1.0 / (kTwoPi * (std::abs(m) + 1));
    double g = pt.gap(m);
    if (g <= 0.0) {
      sum += reg;
    } else {
      double q = std::sqrt(g);
      sum += reg - 1.0 / q;
      dk -= k / (q * q * q);
    }
  }
  out.value = sum + tail.f;
  out.dk = dk - tail.g;
  out.err = tail.f_err;
  out.terms = M;
  return out;
}

ExpSums exp_sums(const BlochPoint& pt, double a, double L, const SumOptions& opts) {
  if (!(L > 0.0)) throw std::invalid_argument("exp_sums: separation must be positive");
  const double k = pt.k();
  ExpSums out;
  const double geom = 1.0 / (-std::expm1(-kTwoPi * L));
  double err = 0.0;
  for (int side : {1, -1}) {
    double side_err = 0.0;
    for (int j = (side == 1 ? 0 : 1);; ++j) {
      int m = side * j;
      double g = pt.gap(m);
      if (g <= 0.0) continue;
      double q = std::sqrt(g);
      double e = std::exp(-L * q);
      double w = e / q;
      double cm = std::cos(kTwoPi * a * m), sm = std::sin(kTwoPi * a * m);
      double dk = k * e * (1.0 + L * q) / (q * q * q);
      out.c += cm * w;
      out.s += sm * w;
      out.c_dk += cm * dk;
      out.s_dk += sm * dk;
      out.c_dL -= cm * e;
      out.s_dL -= sm * e;
      out.terms = std::max(out.terms, j);
      // remaining terms of this side are bounded geometrically
      double p_next = std::abs(pt.lateral(m + side));
      double q_next = qz(p_next, k);
      side_err = std::exp(-L * q_next) * geom * std::max(1.0 / q_next, 1.0);
      if (side_err < 0.1 * opts.tol || j > 100000000) break;
    }
    err += side_err;
  }
  out.err = err;
  return out;
}

namespace {

struct OpenSums {
  double inv = 0.0;  // sum over open channels of 1/kz
  cplx plus, minus;  // open-channel parts of phi_{+-}
};

OpenSums open_sums(const BlochPoint& pt, double a, double L) {
  OpenSums o;
  for (int m : open_channels(pt)) {
    double kz = std::sqrt(-pt.gap(m));
    double p = pt.lateral(m);
    o.inv += 1.0 / kz;
    o.plus += std::exp(kI * (a * p + L * kz)) / kz;
    o.minus += std::exp(kI * (-a * p + L * kz)) / kz;
  }
  return o;
}

}  // namespace

LatticeSums evaluate(const BlochPoint& pt, const ArrayConfig& cfg, const SumOptions& opts) {
  check_threshold(pt, opts.guard);
  LatticeSums s;
  s.delta0 = delta0(pt.k(), cfg);
  StarSum st = star_sum(pt, cfg.R, opts);
  ExpSums ex = exp_sums(pt, cfg.a, 2.0 * cfg.h, opts);
  OpenSums op = open_sums(pt, cfg.a, 2.0 * cfg.h);
  s.phi_star = st.value + 1.0 / (kTwoPi * s.delta0);
  s.phi_c = ex.c;
  s.phi_s = ex.s;
  s.phi0 = cplx(op.inv, s.phi_star);
  cplx rot = std::exp(kI * (cfg.a * pt.kx()));
  s.phi_plus = op.plus - kI * rot * cplx(ex.c, ex.s);
  s.phi_minus = op.minus - kI * std::conj(rot) * cplx(ex.c, -ex.s);
  s.trunc_error = st.err + ex.err;
  s.terms = std::max(st.terms, ex.terms);
  return s;
}

cplx phi0(const BlochPoint& pt, const ArrayConfig& cfg, const SumOptions& opts) {
  check_threshold(pt, opts.guard);
  StarSum st = star_sum(pt, cfg.R, opts);
  OpenSums op = open_sums(pt, 0.0, 0.0);
  return cplx(op.inv, st.value + 1.0 / (kTwoPi * delta0(pt.k(), cfg)));
}

cplx phi_pm(const BlochPoint& pt, const ArrayConfig& cfg, int sign, const SumOptions& opts) {
  check_threshold(pt, opts.guard);
  double a = sign >= 0 ? cfg.a : -cfg.a;
  ExpSums ex = exp_sums(pt, a, 2.0 * cfg.h, opts);
  OpenSums op = open_sums(pt, a, 2.0 * cfg.h);
  return op.plus - kI * std::exp(kI * (a * pt.kx())) * cplx(ex.c, ex.s);
}

AuxSums phi_aux(const BlochPoint& pt, const ArrayConfig& cfg, const SumOptions& opts) {
  check_threshold(pt, opts.guard);
  StarSum st = star_sum(pt, cfg.R, opts);
  ExpSums ex = exp_sums(pt, cfg.a, 2.0 * cfg.h, opts);
  return {st.value + 1.0 / (kTwoPi * delta0(pt.k(), cfg)), ex.c, ex.s};
}

double c_sequence(const BlochPoint& pt, double h, int m) {
  if (m < 1) throw std::invalid_argument("c_sequence: m must be >= 1");
  double gm = pt.gap(-m), gp = pt.gap(m);
  if (gm <= 0.0 || gp <= 0.0) throw std::invalid_argument("c_sequence: channels +-m must be closed");
  double qm = std::sqrt(gm), qp = std::sqrt(gp);
  return std::exp(-2.0 * h * qm) / qm - std::exp(-2.0 * h * qp) / qp;
}

cplx determinant(const LatticeSums& s) { return s.phi0 * s.phi0 - s.phi_plus * s.phi_minus; }

}  // namespace bicgrate
