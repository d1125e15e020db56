// Shared constants, scalar aliases and the error hierarchy.
#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace bicgrate {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kEulerGamma = std::numbers::egamma;
inline constexpr cplx kI{0.0, 1.0};

// ─────────────────────────────────────────────────────────────────────────────
// Errors
// ─────────────────────────────────────────────────────────────────────────────

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A channel sum touched a diffraction threshold (|k_z,m| below the guard).
class ThresholdSingularity : public Error {
 public:
  ThresholdSingularity(int channel, double kz_abs);
  int channel() const { return channel_; }
  double kz_abs() const { return kz_abs_; }

 private:
  int channel_;
  double kz_abs_;
};

/// No sign change of the target function on the searched interval.
class NoBracket : public Error {
 public:
  using Error::Error;
};

/// A bound-state family has no root in its spectral interval.
class NoRoot : public Error {
 public:
  using Error::Error;
};

/// The existence inequality for R, eps_c failed.
class GateFailed : public Error {
 public:
  GateFailed(std::string which, double lhs, double rhs);
  const std::string& which() const { return which_; }
  double lhs() const { return lhs_; }
  double rhs() const { return rhs_; }

 private:
  std::string which_;
  double lhs_;
  double rhs_;
};

/// The driven 2x2 system is (numerically) singular: a bound state sits here.
class SingularSystem : public Error {
 public:
  using Error::Error;
};

class InsideScatterer : public Error {
 public:
  using Error::Error;
};

class DegenerateTriple : public Error {
 public:
  using Error::Error;
};

class ExtrapolationDiverged : public Error {
 public:
  using Error::Error;
};

}  // namespace bicgrate
