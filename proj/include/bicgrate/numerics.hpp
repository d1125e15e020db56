// Small numerical kernels shared by the solver modules.
#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "bicgrate/common.hpp"

namespace bicgrate {

/// Sum_{m >= M} f(m) for a smooth, algebraically decaying f, by
/// Euler-Maclaurin: the integral from M to infinity (Gauss-Legendre after
/// x = M/t) plus end corrections. `err` receives an estimate of the
/// neglected remainder.
double euler_maclaurin_tail(const std::function<double(double)>& f, double M,
                            double* err = nullptr);

struct BisectResult {
  double x = 0.0;
  double fx = 0.0;
  int iterations = 0;
};

/// Bisection on [lo, hi] with f(lo), f(hi) of opposite sign. Runs until the
/// interval is below xtol or cannot shrink further; returns the endpoint
/// with the smaller |f|.
BisectResult bisect(const std::function<double(double)>& f, double lo, double hi,
                    double flo, double fhi, double xtol = 0.0);

/// Consecutive grid nodes (i, i+1) where f changes sign. Non-finite samples
/// are skipped.
std::vector<std::size_t> sign_changes(const std::vector<double>& values);

/// Grid on (lo, hi) that is geometric towards both ends: useful when the
/// function diverges at the endpoints of its interval.
std::vector<double> log_refined_grid(double lo, double hi, int n_inner, int n_edge,
                                     double min_rel = 1e-15);

/// Value at x = 0 of the interpolating polynomial through (xs, ys)
/// (Neville). Used for eta -> 0 extrapolation.
cplx neville_at_zero(const std::vector<double>& xs, const std::vector<cplx>& ys);

/// Dilogarithm Li2(w) for |w| <= 1.
cplx dilog(cplx w);

/// Worker count: BICGRATE_THREADS if set and positive, else hardware
/// concurrency (at least 1).
unsigned worker_count();

/// Run body(i) for i in [0, n) on worker_count() threads. Each index is
/// processed exactly once; results must be written to index-addressed
/// storage so the output does not depend on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace bicgrate
