#include "bicgrate/oracles.hpp"

#include <cmath>

#include <boost/math/special_functions/bessel.hpp>

#include "bicgrate/numerics.hpp"

namespace bicgrate::oracles {

namespace {

cplx hankel0_asymptotic(cplx z) {
  // sum_k i^k a_k / z^k, a_k = prod_{j<=k} (-(2j-1)^2) / (k! 8^k)
  cplx sum = 1.0, term = 1.0;
  double prev = 1.0;
  for (int k = 1; k < 60; ++k) {
    double c = -double((2 * k - 1) * (2 * k - 1)) / (8.0 * k);
    term *= kI * c / z;
    double mag = std::abs(term);
    if (mag > prev) break;  // asymptotic series has started to diverge
    sum += term;
    prev = mag;
    if (mag < 1e-17) break;
  }
  return std::sqrt(2.0 / (kPi * z)) * std::exp(kI * (z - kPi / 4.0)) * sum;
}

// Ascending series of J0 and Y0; used for small |z| where the Taylor
// expansion below would need Y_n at small argument.
cplx hankel0_series(cplx z) {
  cplx w = 0.25 * z * z, t = 1.0, j0 = 1.0, ysum = 0.0;
  double harmonic = 0.0;
  for (int k = 1; k < 80; ++k) {
    t *= -w / double(k * k);
    harmonic += 1.0 / k;
    j0 += t;
    ysum -= harmonic * t;
    if (std::abs(t) * harmonic < 1e-18 * std::abs(j0)) break;
  }
  cplx y0 = (2.0 / kPi) * ((std::log(0.5 * z) + kEulerGamma) * j0 + ysum);
  return j0 + kI * y0;
}

// Taylor expansion about the real point x:
//   H0(x + i y) = sum_n (i y)^n / n! * 2^-n sum_j (-1)^j C(n,j) H_{2j-n}(x)
cplx hankel0_taylor(double x, double y) {
  constexpr int N = 30;
  std::vector<cplx> H(N + 1);
  for (int n = 0; n <= N; ++n)
    H[n] = cplx(boost::math::cyl_bessel_j(n, x), boost::math::cyl_neumann(n, x));
  auto Hs = [&](int nu) { return nu >= 0 ? H[nu] : ((-nu) % 2 ? -H[-nu] : H[-nu]); };
  cplx sum = 0.0, pw = 1.0;
  double binom_scale = 1.0;
  for (int n = 0; n <= N; ++n) {
    if (n > 0) {
      pw *= kI * y / double(n);
      binom_scale *= 0.5;
    }
    cplx d = 0.0;
    double c = 1.0;
    for (int j = 0; j <= n; ++j) {
      d += (j % 2 ? -c : c) * Hs(2 * j - n);
      c = c * (n - j) / (j + 1);
    }
    cplx term = pw * binom_scale * d;
    sum += term;
    if (n > 2 && std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

RegularizedSum extrapolate(const std::vector<double>& eta,
                           const std::function<cplx(double, int&)>& at, double max_residual) {
  if (eta.size() < 2) throw std::invalid_argument("need at least two eta levels");
  RegularizedSum r;
  r.eta = eta;
  for (double e : eta) {
    int terms = 0;
    r.values.push_back(at(e, terms));
    r.max_terms = std::max(r.max_terms, terms);
  }
  std::size_t n = eta.size();
  r.extrapolated = neville_at_zero(eta, r.values);
  std::vector<double> lo(eta.begin(), eta.end() - 1), hi(eta.begin() + 1, eta.end());
  std::vector<cplx> vlo(r.values.begin(), r.values.end() - 1),
      vhi(r.values.begin() + 1, r.values.end());
  r.residual = n > 2 ? std::abs(neville_at_zero(lo, vlo) - neville_at_zero(hi, vhi))
                     : std::abs(r.values[1] - r.values[0]);
  if (!(r.residual < max_residual))
    throw ExtrapolationDiverged("eta extrapolation residual " + std::to_string(r.residual));
  return r;
}

// Smallest index beyond which e^{-eta k m} sqrt(2/(pi k m)) < 1e-15.
int cutoff(double k, double eta) {
  double m = 35.0 / (eta * k);
  while (m > 1.0 && std::exp(-eta * k * m) * std::sqrt(2.0 / (kPi * k * m)) < 1e-15) m *= 0.9;
  return static_cast<int>(std::ceil(m / 0.9)) + 1;
}

}  // namespace

cplx hankel0(cplx z) {
  if (!(z.real() > 0.0) || z.imag() < 0.0)
    throw std::domain_error("hankel0: need Re z > 0 and Im z >= 0");
  if (std::abs(z) >= 17.0) return hankel0_asymptotic(z);
  if (std::abs(z) < 8.0) return hankel0_series(z);
  return hankel0_taylor(z.real(), z.imag());
}

std::vector<double> default_eta_levels() {
  std::vector<double> e;
  for (int j = 0; j < 5; ++j) e.push_back(1e-2 * std::ldexp(1.0, -j));
  return e;
}

std::vector<double> eta_levels_for(const BlochPoint& pt) {
  double d2 = 1e300;
  for (int m = -4; m <= 4; ++m) d2 = std::min(d2, std::abs(pt.gap(m)));
  double e0 = std::min(1e-2, 0.02 * d2 / (pt.k() * pt.k()));
  std::vector<double> e;
  for (int j = 0; j < 5; ++j) e.push_back(e0 * std::ldexp(1.0, -j));
  return e;
}

RegularizedSum hankel_sum_direct(const BlochPoint& pt, double x, double z,
                                 const std::vector<double>& eta_in, double max_residual) {
  const std::vector<double>& eta = eta_in.empty() ? eta_levels_for(pt) : eta_in;
  const double k = pt.k(), kx = pt.kx();
  if (std::abs(z) < 1e-12 && std::abs(std::remainder(x, 1.0)) < 1e-12)
    throw std::invalid_argument("hankel_sum_direct: point on the lattice");
  auto at = [&](double e, int& terms) {
    cplx kt = k * cplx(1.0, e);
    int M = cutoff(k, e);
    terms = M;
    cplx sum = 0.0;
    for (int m = -M; m <= M; ++m) {
      double rho = std::hypot(x - m, z);
      sum += std::exp(kI * (m * kx)) * hankel0(kt * rho);
    }
    return 0.5 * sum;
  };
  return extrapolate(eta, at, max_residual);
}

RegularizedSum hankel_diag_direct(const BlochPoint& pt, const std::vector<double>& eta_in,
                                  double max_residual) {
  const std::vector<double>& eta = eta_in.empty() ? eta_levels_for(pt) : eta_in;
  const double k = pt.k(), kx = pt.kx();
  auto at = [&](double e, int& terms) {
    cplx kt = k * cplx(1.0, e);
    int M = cutoff(k, e);
    terms = M;
    cplx sum = 0.0;
    for (int m = 1; m <= M; ++m) sum += 2.0 * std::cos(m * kx) * hankel0(kt * double(m));
    return 0.5 * sum;
  };
  return extrapolate(eta, at, max_residual);
}

double fd_derivative(const std::function<double(double)>& f, double x, double step) {
  if (!(step > 0.0)) throw std::invalid_argument("fd_derivative: step must be positive");
  return (f(x - 2 * step) - 8 * f(x - step) + 8 * f(x + step) - f(x + 2 * step)) / (12 * step);
}

}  // namespace bicgrate::oracles
