// Bound states of the double array below and inside the radiation continuum.
//
// Every search reduces to a real function of k that is monotone between two
// diffraction thresholds. Roots are bracketed on a grid that is refined
// geometrically towards the thresholds and then bisected in the decay rate q
// of the upper threshold channel, where the function is regular.
#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bicgrate/lattice_sums.hpp"

namespace bicgrate {

enum class Symmetry { Symmetric, SkewSymmetric, Unclassified };
std::string to_string(Symmetry s);

enum class Family { Plus, Minus };
std::string to_string(Family f);

struct BoundStateRecord {
  RegionTag region;
  std::optional<int> n;  // family index (continuum I and II)
  std::optional<int> l;  // quantisation index of kx (continuum II)
  Family family = Family::Plus;
  double kx = 0.0;
  double k = 0.0;
  double h = 0.0;
  double a = 0.0;
  double R = 0.0;
  double eps_c = 0.0;
  double residual_delta = 0.0;
  Symmetry symmetry = Symmetry::Unclassified;
  std::optional<double> approx_k;
  std::optional<double> approx_h;
  cplx field_ratio;  // E(a, h) / E(0, -h) from the closed form
  std::vector<std::pair<std::string, double>> residuals;

  ArrayConfig config() const { return {R, eps_c, a, h}; }
  double residual(const std::string& name) const;
};

/// Root of f(k) on (k_lo, P) closest to the threshold P. The search runs in
/// q = sqrt(P^2 - k^2); samples that hit a threshold are skipped.
struct ThresholdRoot {
  double k = 0.0;
  double q = 0.0;
  double f = 0.0;
  int sign_changes = 0;
};
std::optional<ThresholdRoot> root_below_threshold(const std::function<double(double)>& f,
                                                  double k_lo, double P);

/// E(a,h)/E(0,-h) from the null vector of the homogeneous 2x2 system.
cplx null_vector_ratio(const LatticeSums& s);

/// Symmetric / skew tag from a field ratio; Unclassified unless a is 0 or 1/2.
Symmetry classify_symmetry(cplx ratio, double a, double kx);

// ─────────────────────────────────────────────────────────────────────────────
// Below the continuum
// ─────────────────────────────────────────────────────────────────────────────

struct PsiPair {
  double plus = 0.0;
  double minus = 0.0;
};

/// Psi^{+-} = phi_star -+ sqrt(phi_c^2 + phi_s^2); all channels closed.
PsiPair psi_pm_below(const ArrayConfig& cfg, const BlochPoint& pt, const SumOptions& opts = {});

/// Leading-order k^+ = kx - 8 pi^2 delta0(kx)^2 / kx.
double k_plus_approx(double kx, const ArrayConfig& cfg);

/// Root of Psi^{family} on (0, kx). NoBracket when there is no sign change.
BoundStateRecord solve_below(const ArrayConfig& cfg, double kx, Family family);

/// k^+ always; k^- when Psi^- changes sign on (0, kx).
std::vector<BoundStateRecord> find_below(const ArrayConfig& cfg, double kx);

// ─────────────────────────────────────────────────────────────────────────────
// Continuum I (channel 0 open)
// ─────────────────────────────────────────────────────────────────────────────

/// Psi^{+-}(h, k) with the sin(2 h kz)/kz term, and derivatives in k and h.
struct PsiHK {
  double plus = 0.0, minus = 0.0;
  double plus_dk = 0.0, minus_dk = 0.0;
  double plus_dh = 0.0, minus_dh = 0.0;
};
PsiHK psi_hk_I(const ArrayConfig& cfg, const BlochPoint& pt, const SumOptions& opts = {});

/// (a, kx) in the set where phi_s vanishes identically: kx = 0 or a in {0, 1/2}.
bool in_set_L(double a, double kx);

double psi_n_I(int n, double k, double kx, double a, const ArrayConfig& cfg);
double dpsi_n_I_dk(int n, double k, double kx, double a, const ArrayConfig& cfg);

/// Perturbative k_n, valid when (-1)^n cos(2 pi a) != 1.
std::optional<double> k_n_I_approx(int n, double kx, double a, const ArrayConfig& cfg);

/// Unique root of Psi_n on (kx, 2 pi - kx); NoRoot if the limits do not bracket.
BoundStateRecord solve_continuum_I(const ArrayConfig& cfg, double a, double kx, int n);

/// Records for n = 1..n_max that have a root. GateFailed if the gate fails.
std::vector<BoundStateRecord> find_continuum_I(const ArrayConfig& cfg, double a, double kx,
                                               int n_max);

// ─────────────────────────────────────────────────────────────────────────────
// Existence gates
// ─────────────────────────────────────────────────────────────────────────────

struct ExistenceGate {
  enum class Kind { ContinuumI, ContinuumII };
  Kind kind = Kind::ContinuumI;
  bool holds = false;   // full-series condition
  double lhs = 0.0;
  double rhs = 0.0;
  bool precheck = false;  // closed-form sufficient bound
  double precheck_lhs = 0.0;
  double precheck_rhs = 0.0;
};

struct GateConstants {
  double C1 = 0.0, t1 = 0.0;  // continuum I constant and minimiser
  double C2 = 0.0, t2 = 0.0;  // continuum II constant and minimiser
  double s = 0.0;
};

/// Recomputed by 1-D minimisation and series summation.
const GateConstants& gate_constants();

ExistenceGate existence_gate_I(double kx, const ArrayConfig& cfg);
ExistenceGate existence_gate_II(double kx, const ArrayConfig& cfg);

// ─────────────────────────────────────────────────────────────────────────────
// Continuum II (channels 0 and -1 open)
// ─────────────────────────────────────────────────────────────────────────────

/// Which branch Psi_n is for given (n, a).
Family family_II(int n, double a);

double psi_n_II(int n, double k, double kx, double a, const ArrayConfig& cfg);
double dpsi_n_II_dk(int n, double k, double kx, double a, const ArrayConfig& cfg);
double psi_infinity(double k, double kx, const ArrayConfig& cfg);
double dpsi_infinity_dk(double k, double kx, const ArrayConfig& cfg);

/// k_n(kx): root of Psi_n on (2 pi - kx, 2 pi + kx). NoRoot when absent.
double k_n_II(int n, double kx, double a, const ArrayConfig& cfg);
/// k_infinity(kx): root of Psi_infinity.
double k_infinity(double kx, const ArrayConfig& cfg);
/// Leading-order k_n for odd n.
double k_odd_II_approx(double kx, const ArrayConfig& cfg);

/// phi_n(kx) = n pi sqrt((k_n^2 - kx^2)/(k_n^2 - (2 pi - kx)^2)); NoRoot if k_n is absent.
double phi_n(int n, double kx, double a, const ArrayConfig& cfg);
double phi_infinity(double kx, const ArrayConfig& cfg);

/// Leading-order k_x^{n,l} for odd n, including the R^4 correction.
double kx_nl_approx(int n, int l, const ArrayConfig& cfg);

/// Points kx in (lo, hi) with phi_n(kx) = l pi, regardless of parity.
/// The grid has `grid` nodes; crossings are refined by bisection.
std::vector<std::pair<int, double>> phi_crossings(int n, double a, const ArrayConfig& cfg,
                                                  double lo, double hi, int grid,
                                                  int l_min, int l_max);

/// True when (n, l) satisfies the cos(2 h kz) = +-1 pattern of the branch.
bool parity_allows(int n, int l, double a);

/// Build a continuum II record at (n, kx) without any parity filter.
BoundStateRecord make_record_II(const ArrayConfig& cfg, double a, int n, int l, double kx);

struct ContinuumIIOptions {
  int grid = 2048;
  bool include_zone_edge = true;  // l = n at kx = pi when a = 0
};

std::vector<BoundStateRecord> find_continuum_II(const ArrayConfig& cfg, double a, int n_max,
                                                int l_max, const ContinuumIIOptions& opt = {});

/// All k_x^{n,l} in (alpha, beta) for odd n.
std::vector<double> enumerate_kx_II(int n, double alpha, double beta, const ArrayConfig& cfg,
                                    double a, int grid = 256);

// ─────────────────────────────────────────────────────────────────────────────
// Three and four open channels
// ─────────────────────────────────────────────────────────────────────────────

struct DiophantineTuple {
  std::vector<int> n;  // (n0, n1, n2[, n3])
  double kx = 0.0;
  double h = 0.0;
  double k = 0.0;
  int open_count = 0;
  double a = 0.0;       // shift giving the most nearly real curve constant
  double C_curve = 0.0; // real part of 2/(k^2 R^2 (eps-1)) + ln(2 pi R) at Delta = 0
  double C_imag = 0.0;  // imaginary part; zero for a genuine bound-state curve
  bool parity_ok = false;
};

/// Throws DegenerateTriple when 2 n0^2 = n1^2 + n2^2.
DiophantineTuple diophantine_point(const std::vector<int>& n);

/// Curve constant X with Delta = 0 for the point of `t` at shift a; complex
/// in general.
cplx curve_constant(const DiophantineTuple& t, double a);

/// (R, eps_c) on the curve for a given R; nullopt if no eps_c > 1 exists.
std::optional<double> eps_on_curve(double C, double k, double R);

std::vector<DiophantineTuple> diophantine_N(int channel_count, int search_bound);

}  // namespace bicgrate
