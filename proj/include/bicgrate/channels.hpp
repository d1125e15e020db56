// Diffraction-channel bookkeeping on the spectral cylinder.
//
// All lengths are in units of the array period, so the reciprocal lattice
// vector is 2*pi and channel m carries the lateral wavenumber kx + 2*pi*m.
#pragma once

#include <vector>

#include "bicgrate/common.hpp"

namespace bicgrate {

/// Reduce a Bloch wavenumber to (-pi, pi].
double reduce_kx(double kx);

/// Spectral point (k, kx). kx is reduced to (-pi, pi] on construction.
class BlochPoint {
 public:
  BlochPoint(double k, double kx);

  double k() const { return k_; }
  double kx() const { return kx_; }
  double energy() const { return k_ * k_; }

  /// Lateral wavenumber kx + 2*pi*m of channel m.
  double lateral(int m) const { return kx_ + kTwoPi * m; }

  /// (kx + 2 pi m)^2 - k^2, factored to keep precision near thresholds.
  /// Negative for open channels, positive for closed ones.
  double gap(int m) const;

 private:
  double k_;
  double kx_;
};

struct ChannelWavenumber {
  int m = 0;
  cplx value;          // k_z,m; i*q for a closed channel
  bool is_open = false;
  double q = 0.0;      // decay rate, zero for open channels
};

ChannelWavenumber channel_wavenumber(const BlochPoint& pt, int m);

/// Sorted list of open channels (threshold points count as open).
std::vector<int> open_channels(const BlochPoint& pt);

struct Threshold {
  int order = 0;        // signed channel label: 0, -1, +1, -2, +2, ...
  double energy = 0.0;  // (2 pi n +/- |[kx]|)^2
};

/// Thresholds E_0 <= E_-1 <= E_1 <= E_-2 <= ... up to |order| = n_max.
std::vector<Threshold> thresholds(double kx, int n_max);

struct RegionTag {
  enum class Kind { BelowContinuum, Continuum };
  Kind kind = Kind::BelowContinuum;
  int open_count = 0;

  bool below() const { return kind == Kind::BelowContinuum; }
  friend bool operator==(const RegionTag&, const RegionTag&) = default;
};

RegionTag classify(const BlochPoint& pt);

/// Human-readable region label: "below", "continuum-1", "continuum-2", ...
std::string region_name(const RegionTag& tag);

}  // namespace bicgrate
