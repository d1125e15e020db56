// Brute-force validators. The Hankel lattice sums are summed in real space
// with a small absorption k -> k(1 + i eta) and extrapolated to eta = 0; no
// channel-sum code is shared with lattice_sums.
#pragma once

#include <functional>
#include <vector>

#include "bicgrate/channels.hpp"

namespace bicgrate::oracles {

/// H0^(1)(z) for Re z > 0, Im z >= 0.
cplx hankel0(cplx z);

struct RegularizedSum {
  std::vector<double> eta;
  std::vector<cplx> values;
  cplx extrapolated;
  double residual = 0.0;  // gap between the two highest-order extrapolants
  int max_terms = 0;
};

std::vector<double> default_eta_levels();

/// Five halving levels starting at min(1e-2, 0.02 d^2 / k^2), d the smallest
/// |k_z| near the point, so that k^2 eta stays small against every channel gap.
std::vector<double> eta_levels_for(const BlochPoint& pt);

/// (1/2) sum_m e^{i m kx} H0(k |r - m e_x|) with r = (x, z) off the lattice.
/// An empty `eta` selects eta_levels_for(pt).
RegularizedSum hankel_sum_direct(const BlochPoint& pt, double x, double z,
                                 const std::vector<double>& eta = {},
                                 double max_residual = 1e-6);

/// (1/2) sum_{m != 0} e^{i m kx} H0(k |m|).
RegularizedSum hankel_diag_direct(const BlochPoint& pt,
                                  const std::vector<double>& eta = {},
                                  double max_residual = 1e-6);

/// Centred five-point derivative.
double fd_derivative(const std::function<double(double)>& f, double x, double step);

}  // namespace bicgrate::oracles
