#include "dppln/numerics.hpp"
#include "dppln/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <thread>

namespace dppln::numerics {

namespace {

double simpson_step(const std::function<double(double)>& f, double a, double fa,
                    double b, double fb, double m, double fm, double whole,
                    double tol, int depth, int max_depth) {
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double h = b - a;
  const double left = h / 12.0 * (fa + 4.0 * flm + fm);
  const double right = h / 12.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth >= max_depth || std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return simpson_step(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth + 1, max_depth) +
         simpson_step(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth + 1, max_depth);
}

} // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double rel_tol, double abs_tol, int max_depth) {
  if (a == b) return 0.0;
  const double fa = f(a), fb = f(b);
  const double m = 0.5 * (a + b), fm = f(m);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  const double tol = std::max(abs_tol, rel_tol * std::abs(whole));
  // guard against a zero first estimate of an integrand that is not zero
  const double floor_tol = std::max(tol, 1e-300);
  return simpson_step(f, a, fa, b, fb, m, fm, whole, floor_tol, 0, max_depth);
}

std::pair<double, double> golden_section_max(const std::function<double(double)>& f,
                                             double lo, double hi, double xtol) {
  constexpr double inv_phi = 0.6180339887498949;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > xtol) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  const double x = 0.5 * (a + b);
  return {x, f(x)};
}

double bisect_root(const std::function<double(double)>& f, double lo, double hi,
                   double xtol, double ftol) {
  double flo = f(lo), fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0))
    throw Error("bisect_root: endpoints do not bracket a sign change");
  while (hi - lo > xtol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) return mid; // bracket at floating-point resolution
    const double fmid = f(mid);
    if (fmid == 0.0 || (ftol > 0.0 && std::abs(fmid) < ftol)) return mid;
    if ((fmid > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double central_diff_step_halving(const std::function<double(double)>& f, double x,
                                 double h0, double rel_tol, int max_halvings) {
  double h = h0;
  double prev = (f(x + h) - f(x - h)) / (2.0 * h);
  for (int i = 0; i < max_halvings; ++i) {
    h *= 0.5;
    const double cur = (f(x + h) - f(x - h)) / (2.0 * h);
    const double scale = std::max(std::abs(cur), std::abs(prev));
    if (scale == 0.0) return 0.0; // derivative of a constant
    if (std::abs(cur - prev) <= rel_tol * scale) return cur;
    prev = cur;
  }
  throw NonConvergence("central_diff_step_halving: no convergence after max halvings");
}

const std::vector<std::pair<double, double>>& gauss_hermite(int n) {
  static std::map<int, std::vector<std::pair<double, double>>> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  // Newton iteration on physicists' Hermite polynomials (Golub-Welsch
  // would need an eigensolver; the recurrence is enough here).
  std::vector<std::pair<double, double>> nodes(n);
  const double pi_quarter = 0.7511255444649425; // pi^{-1/4}
  double z = 0.0;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    if (i == 0)
      z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
    else if (i == 1)
      z -= 1.14 * std::pow(n, 0.426) / z;
    else if (i == 2)
      z = 1.86 * z - 0.86 * nodes[0].first;
    else if (i == 3)
      z = 1.91 * z - 0.91 * nodes[1].first;
    else
      z = 2.0 * z - nodes[i - 2].first;

    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = pi_quarter, p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = z * std::sqrt(2.0 / (j + 1.0)) * p2 - std::sqrt(double(j) / (j + 1.0)) * p3;
      }
      pp = std::sqrt(2.0 * n) * p2;
      const double dz = p1 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    nodes[i] = {z, 2.0 / (pp * pp)};
    nodes[n - 1 - i] = {-z, 2.0 / (pp * pp)};
  }
  if (n % 2 == 1) nodes[n / 2].first = 0.0;
  std::sort(nodes.begin(), nodes.end());
  return cache.emplace(n, std::move(nodes)).first->second;
}

namespace {

// Dormand-Prince 5(4) tableau
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// embedded 4th-order weights
constexpr double e1 = 5179.0 / 57600, e3 = 7571.0 / 16695, e4 = 393.0 / 640,
                 e5 = -92097.0 / 339200, e6 = 187.0 / 2100, e7 = 1.0 / 40;

Complex2 axpy(const Complex2& y, double h, std::initializer_list<std::pair<double, const Complex2*>> terms) {
  Complex2 out = y;
  for (const auto& [coeff, k] : terms) {
    out[0] += h * coeff * (*k)[0];
    out[1] += h * coeff * (*k)[1];
  }
  return out;
}

// One adaptive integration pass from x0 to x1 (x1 > x0 assumed by callers).
Complex2 dopri5_span(const Rhs2& rhs, double x0, double x1, Complex2 y,
                     double rel_tol, double abs_tol) {
  if (x1 == x0) return y;
  const double span = x1 - x0;
  double x = x0;
  double h = span / 64.0;
  Complex2 k1, k2, k3, k4, k5, k6, k7;
  rhs(x, y, k1);
  int rejected_in_a_row = 0;
  while (x < x1) {
    h = std::min(h, x1 - x);
    if (h < 1e-14 * span)
      throw IntegratorFailure("dopri5: step size underflow");
    Complex2 yt;
    yt = axpy(y, h, {{a21, &k1}});
    rhs(x + c2 * h, yt, k2);
    yt = axpy(y, h, {{a31, &k1}, {a32, &k2}});
    rhs(x + c3 * h, yt, k3);
    yt = axpy(y, h, {{a41, &k1}, {a42, &k2}, {a43, &k3}});
    rhs(x + c4 * h, yt, k4);
    yt = axpy(y, h, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}});
    rhs(x + c5 * h, yt, k5);
    yt = axpy(y, h, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}});
    rhs(x + h, yt, k6);
    const Complex2 y5 = axpy(y, h, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
    rhs(x + h, y5, k7);
    const Complex2 y4 = axpy(y, h, {{e1, &k1}, {e3, &k3}, {e4, &k4}, {e5, &k5}, {e6, &k6}, {e7, &k7}});

    double err = 0.0;
    for (int i = 0; i < 2; ++i) {
      const double sc = abs_tol + rel_tol * std::max(std::abs(y[i]), std::abs(y5[i]));
      const double d = std::abs(y5[i] - y4[i]);
      err = std::max(err, d / sc);
    }
    if (err <= 1.0) {
      x += h;
      y = y5;
      k1 = k7; // FSAL
      rejected_in_a_row = 0;
    } else {
      ++rejected_in_a_row;
      if (rejected_in_a_row > 60)
        throw IntegratorFailure("dopri5: repeated step rejection");
    }
    const double factor = (err > 0.0) ? 0.9 * std::pow(err, -0.2) : 5.0;
    h *= std::clamp(factor, 0.1, 5.0);
  }
  return y;
}

} // namespace

Complex2 dopri5_integrate(const Rhs2& rhs, double x0, double x1, Complex2 y0,
                          double rel_tol, double abs_tol) {
  return dopri5_span(rhs, x0, x1, y0, rel_tol, abs_tol);
}

std::vector<Complex2> dopri5_integrate_samples(const Rhs2& rhs, double x0, Complex2 y0,
                                               const std::vector<double>& xs,
                                               double rel_tol, double abs_tol) {
  std::vector<Complex2> out;
  out.reserve(xs.size());
  double x = x0;
  Complex2 y = y0;
  for (double xi : xs) {
    y = dopri5_span(rhs, x, xi, y, rel_tol, abs_tol);
    x = xi;
    out.push_back(y);
  }
  return out;
}

void parallel_for(std::size_t n, int n_threads, const std::function<void(std::size_t)>& body) {
  if (n == 0) return;
  const int workers = std::max(1, std::min<int>(n_threads, int(n)));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::exception_ptr first_error;
  std::mutex err_mtx;
  for (int t = 0; t < workers; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = t; i < n; i += workers) body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mtx);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

} // namespace dppln::numerics
