// Helpers shared by the test programs.
#pragma once

#include <cmath>

#include "bicgrate/lattice_sums.hpp"
#include "bicgrate/oracles.hpp"

namespace bicgrate::testing {

/// Phi0 predicted from the diagonal Hankel sum D = (1/2) sum_{m != 0} e^{i m kx} H0(k|m|).
inline cplx phi0_from_diagonal(cplx D, double k, double R, double eps_c) {
  double d0 = delta0(k, R, eps_c);
  return kI / (kTwoPi * d0) + D + 0.5 + (kI / kPi) * (kEulerGamma + std::log(k * R / 2.0) - 0.5);
}

inline double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace bicgrate::testing
