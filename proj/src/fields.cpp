#include "bicgrate/fields.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bicgrate/numerics.hpp"

namespace bicgrate {

namespace {

constexpr double kNearLine = 1e-3;
constexpr int kKummerTerms = 40000;

cplx channel_term(double k, double kx, int m, double x, double az) {
  double p = kx + kTwoPi * m;
  double g = (std::abs(p) - k) * (std::abs(p) + k);
  if (g < 0.0) {
    double kz = std::sqrt(-g);
    return std::exp(kI * (x * p + az * kz)) / kz;
  }
  double q = std::sqrt(g);  // kz = i q
  return -kI * std::exp(kI * (x * p)) * (std::exp(-az * q) / q);
}

cplx direct_sum(double k, double kx, double x, double az, double tol) {
  cplx sum = channel_term(k, kx, 0, x, az);
  int reach = static_cast<int>(std::ceil(k / kTwoPi)) + 1;
  for (int j = 1;; ++j) {
    cplx t = channel_term(k, kx, j, x, az) + channel_term(k, kx, -j, x, az);
    sum += t;
    if (j > reach) {
      double q = kTwoPi * j - std::abs(kx) - k;
      if (std::exp(-az * q) / q < tol * 1e-2) break;
    }
  }
  return sum;
}

// Closed-channel tail for |z| near 0: for m = s j, j >= 1,
//   e^{i x p} e^{-|z| q}/(i q) ~ -i e^{i x kx - s |z| kx} w^j (b1/j + b2/j^2)
// with w = exp(2 pi (i s x - |z|)).
cplx kummer_sum(double k, double kx, double x, double az) {
  int reach = static_cast<int>(std::ceil(k / kTwoPi)) + 1;
  cplx sum = channel_term(k, kx, 0, x, az);
  for (int s : {1, -1}) {
    cplx pref = -kI * std::exp(kI * (x * kx)) * std::exp(-s * az * kx);
    cplx w = std::exp(kTwoPi * cplx(-az, s * x));
    double b1 = 1.0 / kTwoPi;
    double b2 = -s * kx / (4.0 * kPi * kPi) + az * k * k / (8.0 * kPi * kPi);
    cplx model = -b1 * std::log(1.0 - w) + b2 * dilog(w);
    cplx rest = 0.0, wj = 1.0;
    for (int j = 1; j <= kKummerTerms; ++j) {
      wj *= w;
      cplx exact = channel_term(k, kx, s * j, x, az);
      if (j <= reach) {
        sum += exact;
        rest -= pref * wj * (b1 / j + b2 / (double(j) * j));
      } else {
        rest += exact - pref * wj * (b1 / j + b2 / (double(j) * j));
      }
    }
    sum += rest + pref * model;
  }
  return sum;
}

}  // namespace

cplx line_source_sum(double k, double kx, double x, double z, double tol) {
  double az = std::abs(z);
  if (az >= kNearLine) return direct_sum(k, kx, x, az, tol);
  return kummer_sum(k, kx, x, az);
}

bool inside_scatterer(const ArrayConfig& cfg, double x, double z) {
  auto near_axis = [&](double xc, double zc) {
    double dx = std::remainder(x - xc, 1.0);
    double dz = z - zc;
    return dx * dx + dz * dz < cfg.R * cfg.R;
  };
  return near_axis(0.0, -cfg.h) || near_axis(cfg.a, cfg.h);
}

FieldSource source_of(const BoundStateRecord& rec) {
  FieldSource s;
  s.cfg = rec.config();
  s.k = rec.k;
  s.kx = rec.kx;
  s.e_left = 1.0;
  s.e_right = rec.field_ratio;
  s.incident = 0.0;
  return s;
}

FieldSource source_of(const ScatteringSolution& sol) {
  FieldSource s;
  s.cfg = sol.cfg;
  s.k = sol.k;
  s.kx = sol.kx;
  s.e_left = sol.e_left;
  s.e_right = sol.e_right;
  s.incident = 1.0;
  s.incident_dir = sol.direction == Incidence::FromBelow ? 1.0 : -1.0;
  return s;
}

namespace {

cplx field_unchecked(const FieldSource& src, double x, double z) {
  const ArrayConfig& c = src.cfg;
  double kz0 = std::sqrt((src.k - src.kx) * (src.k + src.kx));
  cplx inc = 0.0;
  if (src.incident != 0.0)
    inc = src.incident * std::exp(kI * (src.kx * x + src.incident_dir * kz0 * z));
  cplx upper = line_source_sum(src.k, src.kx, x - c.a, z - c.h);
  cplx lower = line_source_sum(src.k, src.kx, x, z + c.h);
  return inc + kI * (kTwoPi * delta0(src.k, c)) * (src.e_right * upper + src.e_left * lower);
}

}  // namespace

cplx field_at(const FieldSource& src, double x, double z) {
  if (inside_scatterer(src.cfg, x, z)) throw InsideScatterer("point lies inside a cylinder");
  return field_unchecked(src, x, z);
}

cplx on_cylinder_limit(const FieldSource& src, bool upper, double rho) {
  double xc = upper ? src.cfg.a : 0.0;
  double zc = upper ? src.cfg.h : -src.cfg.h;
  cplx self = upper ? src.e_right : src.e_left;
  double d0 = delta0(src.k, src.cfg);
  cplx avg = 0.5 * (field_unchecked(src, xc + rho, zc) + field_unchecked(src, xc - rho, zc));
  return avg + 2.0 * d0 * self * (std::log(rho / src.cfg.R) + 0.5);
}

std::size_t FieldGrid::inside_count() const {
  return static_cast<std::size_t>(std::count(inside.begin(), inside.end(), 1));
}

double FieldGrid::max_abs() const {
  double m = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i)
    if (!inside[i]) m = std::max(m, std::abs(values[i]));
  return m;
}

namespace {

FieldGrid fill(const FieldSource& src, const GridSpec& spec_in) {
  GridSpec spec = spec_in;
  if (spec.z0 == 0.0 && spec.z1 == 0.0) {
    spec.z0 = -src.cfg.h - 2.0;
    spec.z1 = src.cfg.h + 2.0;
  }
  if (spec.nx < 1 || spec.nz < 1) throw std::invalid_argument("grid needs positive sizes");
  FieldGrid g;
  g.spec = spec;
  g.source = src;
  int dx = spec.x_endpoint ? std::max(1, spec.nx - 1) : spec.nx;
  for (int i = 0; i < spec.nx; ++i) g.xs.push_back(spec.x0 + (spec.x1 - spec.x0) * i / dx);
  for (int j = 0; j < spec.nz; ++j)
    g.zs.push_back(spec.nz == 1 ? spec.z0 : spec.z0 + (spec.z1 - spec.z0) * j / (spec.nz - 1));
  std::size_t nz = g.zs.size();
  g.values.assign(g.xs.size() * nz, cplx(std::numeric_limits<double>::quiet_NaN(), 0.0));
  g.inside.assign(g.values.size(), 0);
  parallel_for(g.xs.size(), [&](std::size_t i) {
    for (std::size_t j = 0; j < nz; ++j) {
      std::size_t idx = i * nz + j;
      if (inside_scatterer(src.cfg, g.xs[i], g.zs[j])) {
        g.inside[idx] = 1;
        g.values[idx] = cplx(std::numeric_limits<double>::quiet_NaN(),
                             std::numeric_limits<double>::quiet_NaN());
      } else {
        g.values[idx] = field_unchecked(src, g.xs[i], g.zs[j]);
      }
    }
  });
  return g;
}

}  // namespace

FieldGrid bound_field(const BoundStateRecord& rec, const GridSpec& spec) {
  FieldGrid g = fill(source_of(rec), spec);
  g.record = rec;
  return g;
}

FieldGrid scattering_field(const ScatteringSolution& sol, const GridSpec& spec) {
  FieldGrid g = fill(source_of(sol), spec);
  g.solution = sol;
  return g;
}

double bloch_residual(const FieldGrid& g) {
  double worst = 0.0;
  cplx shift = std::exp(kI * g.source.kx);
  std::size_t nz = g.zs.size();
  for (std::size_t i = 0; i < g.xs.size(); ++i) {
    for (std::size_t i2 = i + 1; i2 < g.xs.size(); ++i2) {
      if (std::abs(g.xs[i2] - g.xs[i] - 1.0) > 1e-12) continue;
      for (std::size_t j = 0; j < nz; ++j) {
        if (g.inside[i * nz + j] || g.inside[i2 * nz + j]) continue;
        worst = std::max(worst, std::abs(g.values[i2 * nz + j] - shift * g.values[i * nz + j]));
      }
    }
  }
  return worst;
}

}  // namespace bicgrate
