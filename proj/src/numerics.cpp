#include "bicgrate/numerics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/special_functions/bernoulli.hpp>

namespace bicgrate {

double euler_maclaurin_tail(const std::function<double(double)>& f, double M, double* err) {
  using boost::math::quadrature::gauss;
  // x = M / t maps [M, inf) onto (0, 1]; f ~ x^-2 gives a bounded integrand.
  auto g = [&](double t) {
    if (t <= 0.0) return 0.0;
    double x = M / t;
    return f(x) * M / (t * t);
  };
  double integral = gauss<double, 30>::integrate(g, 0.0, 1.0);

  const double s = 0.125;
  double f0 = f(M);
  double fp1 = f(M + s), fm1 = f(M - s), fp2 = f(M + 2 * s), fm2 = f(M - 2 * s);
  double d1 = (fm2 - 8 * fm1 + 8 * fp1 - fp2) / (12 * s);
  double d3 = (fp2 - 2 * fp1 + 2 * fm1 - fm2) / (2 * s * s * s);

  double tail = integral + 0.5 * f0 - d1 / 12.0 + d3 / 720.0;
  if (err) {
    double ratio = (d1 != 0.0) ? std::abs(d3 / d1) : 0.0;
    *err = std::abs(d3) * ratio / 30240.0 + 1e-16 * (std::abs(integral) + std::abs(f0));
  }
  return tail;
}

BisectResult bisect(const std::function<double(double)>& f, double lo, double hi,
                    double flo, double fhi, double xtol) {
  if (!(flo * fhi <= 0.0)) throw NoBracket("bisect: endpoints do not bracket a root");
  BisectResult r;
  if (flo == 0.0) return {lo, 0.0, 0};
  if (fhi == 0.0) return {hi, 0.0, 0};
  for (int it = 0; it < 400; ++it) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi || (hi - lo) <= xtol) break;
    double fm = f(mid);
    ++r.iterations;
    if (fm == 0.0) return {mid, 0.0, r.iterations};
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
      fhi = fm;
    }
  }
  if (std::abs(flo) <= std::abs(fhi)) {
    r.x = lo;
    r.fx = flo;
  } else {
    r.x = hi;
    r.fx = fhi;
  }
  return r;
}

std::vector<std::size_t> sign_changes(const std::vector<double>& values) {
  std::vector<std::size_t> out;
  std::size_t last = values.size();
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) continue;
    if (last < values.size() && (values[last] < 0.0) != (values[i] < 0.0)) {
      // report the pair of finite neighbours straddling the change
      out.push_back(last);
    }
    last = i;
  }
  return out;
}

std::vector<double> log_refined_grid(double lo, double hi, int n_inner, int n_edge,
                                     double min_rel) {
  std::vector<double> g;
  double w = hi - lo;
  for (int i = 1; i < n_inner; ++i) g.push_back(lo + w * i / n_inner);
  double top = std::log(1.0 / n_inner);
  double bot = std::log(min_rel);
  for (int j = 0; j < n_edge; ++j) {
    double t = std::exp(bot + (top - bot) * j / std::max(1, n_edge - 1));
    g.push_back(lo + w * t);
    g.push_back(hi - w * t);
  }
  std::sort(g.begin(), g.end());
  g.erase(std::remove_if(g.begin(), g.end(), [&](double x) { return !(x > lo && x < hi); }),
          g.end());
  g.erase(std::unique(g.begin(), g.end()), g.end());
  return g;
}

cplx neville_at_zero(const std::vector<double>& xs, const std::vector<cplx>& ys) {
  std::vector<cplx> p(ys);
  std::size_t n = xs.size();
  for (std::size_t lev = 1; lev < n; ++lev) {
    for (std::size_t i = 0; i + lev < n; ++i) {
      double xi = xs[i], xj = xs[i + lev];
      p[i] = (xj * p[i] - xi * p[i + 1]) / (xj - xi);
    }
  }
  return p[0];
}

namespace {

cplx dilog_series(cplx w) {
  cplx sum = 0.0, pw = w;
  for (int k = 1; k < 200; ++k) {
    cplx term = pw / double(k * k);
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    pw *= w;
  }
  return sum;
}

// Li2(e^mu) = zeta(2) + mu (1 - log(-mu)) + sum_{k>=2} zeta(2-k) mu^k / k!,  |mu| < 2 pi.
cplx dilog_log_series(cplx mu) {
  const double zeta2 = kPi * kPi / 6.0;
  cplx sum = zeta2;
  if (std::abs(mu) > 0.0) sum += mu * (1.0 - std::log(-mu));
  // k = 2: zeta(0) = -1/2
  cplx pw = mu * mu / 2.0;  // mu^k / k!
  sum += -0.5 * pw;
  for (int k = 3; k < 120; k += 2) {
    pw *= mu / double(k);
    // zeta(2-k) = -B_{k-1} / (k-1) with k-1 even
    double z = -boost::math::bernoulli_b2n<double>((k - 1) / 2) / double(k - 1);
    cplx term = z * pw;
    sum += term;
    if (std::abs(term) < 1e-18) break;
    pw *= mu / double(k + 1);
  }
  return sum;
}

}  // namespace

cplx dilog(cplx w) {
  if (std::abs(w) > 1.0 + 1e-12) throw std::domain_error("dilog: |w| > 1");
  if (std::abs(w) < 0.5) return dilog_series(w);
  return dilog_log_series(std::log(w));
}

unsigned worker_count() {
  if (const char* env = std::getenv("BICGRATE_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  unsigned workers = std::min<std::size_t>(worker_count(), std::max<std::size_t>(n, 1));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto run = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < workers; ++t) pool.emplace_back(run);
  run();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace bicgrate
