// Field maps of bound states and of scattering solutions.
//
// Off the cylinders the field is the incident wave plus two line-source
// sums S(x, z) = sum_m exp(i(x p_m + |z| kz_m)) / kz_m, one per array. Away
// from the source lines the sum converges exponentially. Close to a line the
// closed-channel tail is subtracted analytically (log and dilogarithm) and
// the O(m^-3) remainder is summed directly.
#pragma once

#include <optional>
#include <vector>

#include "bicgrate/scattering.hpp"

namespace bicgrate {

struct GridSpec {
  double x0 = 0.0, x1 = 1.0;
  double z0 = 0.0, z1 = 0.0;  // both zero: [-h - 2, h + 2]
  int nx = 256, nz = 512;
  bool x_endpoint = false;  // false samples [x0, x1), as one period
};

/// Everything needed to evaluate the field at a point.
struct FieldSource {
  ArrayConfig cfg;
  double k = 0.0;
  double kx = 0.0;
  cplx e_right;   // on (a, h)
  cplx e_left;    // on (0, -h)
  cplx incident;  // amplitude of the incident plane wave, 0 for bound states
  double incident_dir = 1.0;  // +1 upward, -1 downward
};

FieldSource source_of(const BoundStateRecord& rec);
FieldSource source_of(const ScatteringSolution& sol);

/// Line-source sum S(x, z) with tolerance tol.
cplx line_source_sum(double k, double kx, double x, double z, double tol = 1e-13);

bool inside_scatterer(const ArrayConfig& cfg, double x, double z);

/// Field at (x, z); InsideScatterer within R of a cylinder axis.
cplx field_at(const FieldSource& src, double x, double z);

/// Two-sided radial estimate of the field on the cylinder at (a, h) (upper)
/// or (0, -h) (lower) from samples at distance rho along the x axis, with the
/// logarithmic self term removed.
cplx on_cylinder_limit(const FieldSource& src, bool upper, double rho);

struct FieldGrid {
  GridSpec spec;
  std::vector<double> xs, zs;
  std::vector<cplx> values;   // row-major, z fastest: values[i * nz + j]
  std::vector<char> inside;   // 1 where the sample lies in a cylinder
  FieldSource source;
  std::optional<BoundStateRecord> record;
  std::optional<ScatteringSolution> solution;

  cplx at(int i, int j) const { return values[std::size_t(i) * zs.size() + j]; }
  bool is_inside(int i, int j) const { return inside[std::size_t(i) * zs.size() + j] != 0; }
  std::size_t inside_count() const;
  double max_abs() const;
};

FieldGrid bound_field(const BoundStateRecord& rec, const GridSpec& spec = {});
FieldGrid scattering_field(const ScatteringSolution& sol, const GridSpec& spec = {});

/// Largest |E(x + 1, z) - e^{i kx} E(x, z)| over sample pairs one period apart.
double bloch_residual(const FieldGrid& g);

}  // namespace bicgrate
