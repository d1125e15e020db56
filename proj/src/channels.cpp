#include "bicgrate/channels.hpp"

#include <algorithm>
#include <cmath>

namespace bicgrate {

ThresholdSingularity::ThresholdSingularity(int channel, double kz_abs)
    : Error("channel " + std::to_string(channel) +
            " is at a diffraction threshold (|k_z| = " + std::to_string(kz_abs) + ")"),
      channel_(channel),
      kz_abs_(kz_abs) {}

GateFailed::GateFailed(std::string which, double lhs, double rhs)
    : Error("existence gate " + which + " failed: lhs " + std::to_string(lhs) +
            " <= rhs " + std::to_string(rhs)),
      which_(std::move(which)),
      lhs_(lhs),
      rhs_(rhs) {}

double reduce_kx(double kx) {
  double r = std::remainder(kx, kTwoPi);  // in [-pi, pi]
  if (r <= -kPi) r += kTwoPi;
  return r;
}

BlochPoint::BlochPoint(double k, double kx) : k_(k), kx_(reduce_kx(kx)) {
  if (!(k > 0.0) || !std::isfinite(k) || !std::isfinite(kx)) {
    throw std::invalid_argument("BlochPoint requires finite k > 0 and finite kx");
  }
}

double BlochPoint::gap(int m) const {
  double p = std::abs(lateral(m));
  return (p - k_) * (p + k_);
}

ChannelWavenumber channel_wavenumber(const BlochPoint& pt, int m) {
  ChannelWavenumber c;
  c.m = m;
  double g = pt.gap(m);
  if (g <= 0.0) {
    c.is_open = true;
    c.value = cplx(std::sqrt(-g), 0.0);
  } else {
    c.q = std::sqrt(g);
    c.value = cplx(0.0, c.q);
  }
  return c;
}

std::vector<int> open_channels(const BlochPoint& pt) {
  std::vector<int> out;
  int reach = static_cast<int>(std::ceil(pt.k() / kTwoPi)) + 1;
  for (int m = -reach; m <= reach; ++m) {
    if (pt.gap(m) <= 0.0) out.push_back(m);
  }
  return out;
}

std::vector<Threshold> thresholds(double kx, int n_max) {
  if (n_max < 0) throw std::invalid_argument("thresholds: n_max must be >= 0");
  double ax = std::abs(reduce_kx(kx));
  std::vector<Threshold> out;
  out.push_back({0, ax * ax});
  for (int n = 1; n <= n_max; ++n) {
    double lo = kTwoPi * n - ax;
    double hi = kTwoPi * n + ax;
    out.push_back({-n, lo * lo});
    out.push_back({n, hi * hi});
  }
  return out;
}

RegionTag classify(const BlochPoint& pt) {
  auto open = open_channels(pt);
  if (open.empty()) return {RegionTag::Kind::BelowContinuum, 0};
  return {RegionTag::Kind::Continuum, static_cast<int>(open.size())};
}

std::string region_name(const RegionTag& tag) {
  if (tag.below()) return "below";
  return "continuum-" + std::to_string(tag.open_count);
}

}  // namespace bicgrate
