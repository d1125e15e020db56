// Channel (spectral) forms of the lattice sums of the double array.
//
//   phi0      = sum_m (1/kz_m - 1/(2 pi i (|m|+1))) + (i/2pi)(1/delta0 + 2 ln(2 pi R))
//   phi_{+-}  = sum_m exp(i(+-a p_m + 2h kz_m)) / kz_m,   p_m = kx + 2 pi m
//   phi_star  = Im phi0
//   phi_c/s   = sum over closed m of exp(-2h q_m)/q_m * cos/sin(2 pi a m)
//
// The algebraic sum in phi_star is summed directly for |m| < M and the rest
// is taken from an Euler-Maclaurin tail with a closed-form integral; the
// exponential sums are cut with a geometric tail bound.
#pragma once

#include "bicgrate/channels.hpp"

namespace bicgrate {

struct ArrayConfig {
  double R = 0.1;      // cylinder radius
  double eps_c = 1.5;  // dielectric constant; 1 is accepted as the decoupled limit
  double a = 0.0;      // shift of the upper array, [0, 1/2]
  double h = 1.0;      // half distance between the arrays

  /// Throws std::invalid_argument on 0<R<1/2, eps_c>=1, 0<=a<=1/2, h>R violations.
  void validate() const;
};

struct SumOptions {
  double tol = 1e-12;    // absolute truncation tolerance
  double guard = 1e-9;   // |kz_m| below this is a threshold singularity
};

struct LatticeSums {
  cplx phi0;
  cplx phi_plus;
  cplx phi_minus;
  double phi_star = 0.0;
  double phi_c = 0.0;
  double phi_s = 0.0;
  double delta0 = 0.0;
  double trunc_error = 0.0;
  int terms = 0;  // largest |m| summed directly
};

double delta0(double k, double R, double eps_c);
double delta0(double k, const ArrayConfig& cfg);

/// Im phi0 without the 1/(2 pi delta0) term, and its k-derivative at fixed kx.
struct StarSum {
  double value = 0.0;
  double dk = 0.0;
  double err = 0.0;
  int terms = 0;
};
StarSum star_sum(const BlochPoint& pt, double R, const SumOptions& opts = {});

/// Closed-channel exponential sums with separation L (L = 2h for phi_c/s):
///   c = sum cos(2 pi a m) e^{-L q}/q,  s = sum sin(2 pi a m) e^{-L q}/q
/// together with d/dk at fixed L and d/dL.
struct ExpSums {
  double c = 0.0, s = 0.0;
  double c_dk = 0.0, s_dk = 0.0;
  double c_dL = 0.0, s_dL = 0.0;
  double err = 0.0;
  int terms = 0;
};
ExpSums exp_sums(const BlochPoint& pt, double a, double L, const SumOptions& opts = {});

/// Throws ThresholdSingularity if an open or closed channel is within the guard.
void check_threshold(const BlochPoint& pt, double guard);

cplx phi0(const BlochPoint& pt, const ArrayConfig& cfg, const SumOptions& opts = {});
cplx phi_pm(const BlochPoint& pt, const ArrayConfig& cfg, int sign,
            const SumOptions& opts = {});

struct AuxSums {
  double phi_star = 0.0;
  double phi_c = 0.0;
  double phi_s = 0.0;
};
AuxSums phi_aux(const BlochPoint& pt, const ArrayConfig& cfg, const SumOptions& opts = {});

LatticeSums evaluate(const BlochPoint& pt, const ArrayConfig& cfg, const SumOptions& opts = {});

/// c_m = e^{-2h q_{-m}}/q_{-m} - e^{-2h q_m}/q_m  (channels +-m closed, m >= 1)
double c_sequence(const BlochPoint& pt, double h, int m);

/// phi0^2 - phi_plus phi_minus
cplx determinant(const LatticeSums& s);

}  // namespace bicgrate
