// Plane-wave scattering by the double array in the zero-radius limit.
//
// The two on-cylinder fields solve a 2x2 system whose matrix is the lattice
// sum matrix of the homogeneous problem; it is scaled by 2 pi delta0 so that
// the decoupled limit eps_c -> 1 is exact. Channel amplitudes follow from the
// mode expansion of the scattered field above and below the arrays.
#pragma once

#include <map>
#include <vector>

#include "bicgrate/bound_states.hpp"

namespace bicgrate {

enum class Incidence { FromBelow, FromAbove };

struct ScatteringSolution {
  ArrayConfig cfg;
  double k = 0.0;
  double kx = 0.0;
  Incidence direction = Incidence::FromBelow;
  cplx e_left;   // field on the cylinder at (0, -h)
  cplx e_right;  // field on the cylinder at (a, h)
  std::map<int, cplx> refl;
  std::map<int, cplx> trans;
  double flux_error = 0.0;
  double det_abs = 0.0;  // |det| of the scaled system
  int terms = 0;
};

struct ScatterOptions {
  SumOptions sums;
  double det_guard = 1e-8;  // relative to the squared Frobenius norm
};

/// SingularSystem when the scaled determinant is below the guard.
ScatteringSolution solve(const ArrayConfig& cfg, const BlochPoint& pt,
                         Incidence direction = Incidence::FromBelow,
                         const ScatterOptions& opts = {});

/// |R_0|^2.
double specular(const ArrayConfig& cfg, const BlochPoint& pt);

/// Closed form of R_0 for a = 0 and one open channel, from Psi^{+-}(h, k).
cplx reflection_closed_form(const ArrayConfig& cfg, const BlochPoint& pt);

struct Resonance {
  double h = 0.0;
  double k_r = 0.0;
  double gamma = 0.0;     // half-width from the analytic derivative
  double gamma_fd = 0.0;  // same with a centred difference
  Family family = Family::Plus;
};

/// Resonance on Psi^{family}(h, .) = 0 nearest the threshold 2 pi - kx
/// (one open channel). NoRoot when Psi has no sign change.
Resonance resonance_at(const ArrayConfig& cfg, double kx, double h, Family family);

/// Data at a bound state of odd index N = 2n - 1 used by the principal parts.
struct CriticalPoint {
  int index = 1;
  double kx = 0.0;
  double h = 0.0;
  double k = 0.0;
  double kz = 0.0;
  double delta0 = 0.0;
  double psi_minus = 0.0;
  double dpsi_plus_dk = 0.0;
  double dpsi_plus_dh = 0.0;
  double dpsi_minus_dk = 0.0;
};

/// Critical point (h_N, k_N) for a = 0 and odd N.
CriticalPoint critical_point(const ArrayConfig& cfg, double kx, int index);

/// Principal part of R_0 at (h_N + dh, k_N + dk).
cplx reflection_principal_part(const CriticalPoint& cp, double dh, double dk);

/// Leading term of the on-cylinder field along Psi^+ = 0: C / dh.
cplx amplification_constant(const CriticalPoint& cp);

struct AmplificationPoint {
  double dh = 0.0;
  double k = 0.0;
  cplx field;       // E on the cylinder at (0, h)
  double gamma = 0.0;
  cplx predicted;   // principal-part value C / dh
};

/// Walk along Psi^+ = 0 through the bound state of odd index N at a = 0.
std::vector<AmplificationPoint> amplification_sweep(const ArrayConfig& cfg, double kx, int index,
                                                    const std::vector<double>& delta_h);

}  // namespace bicgrate
