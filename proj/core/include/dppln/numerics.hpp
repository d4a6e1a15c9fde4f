#pragma once

#include <array>
#include <complex>
#include <functional>
#include <utility>
#include <vector>

namespace dppln::numerics {

/// Adaptive Simpson quadrature of f over [a, b].
/// Recursion stops when the local 15-point error estimate is below
/// max(abs_tol, rel_tol * |whole integral estimate|) scaled to the interval.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double rel_tol = 1e-9, double abs_tol = 0.0, int max_depth = 48);

/// Maximize a unimodal function on [lo, hi] by golden-section search.
/// Returns (argmax, max). xtol is an absolute tolerance on the argument.
std::pair<double, double> golden_section_max(const std::function<double(double)>& f,
                                             double lo, double hi, double xtol);

/// Find a root of f in [lo, hi] by bisection; f(lo) and f(hi) must have
/// opposite signs. Stops when the bracket is below xtol or |f| < ftol.
double bisect_root(const std::function<double(double)>& f, double lo, double hi,
                   double xtol, double ftol = 0.0);

/// Central finite difference df/dx with successive step halving from h0
/// until the relative change between halvings drops below rel_tol.
/// Throws NonConvergence after max_halvings.
double central_diff_step_halving(const std::function<double(double)>& f, double x,
                                 double h0, double rel_tol = 1e-6, int max_halvings = 20);

/// Nodes and weights for n-point Gauss-Hermite quadrature
/// (integral of exp(-t^2) g(t) dt over the real line).
/// Computed once per n by Newton iteration on the Hermite recurrence.
const std::vector<std::pair<double, double>>& gauss_hermite(int n);

/// State type of the coupled-amplitude ODE used by the eo module.
using Complex2 = std::array<std::complex<double>, 2>;
using Rhs2 = std::function<void(double x, const Complex2& y, Complex2& dydx)>;

/// Dormand-Prince 5(4) adaptive integrator for a two-component complex ODE.
/// Throws IntegratorFailure on step-size underflow.
Complex2 dopri5_integrate(const Rhs2& rhs, double x0, double x1, Complex2 y0,
                          double rel_tol = 1e-10, double abs_tol = 1e-14);

/// Same integration split at the requested sample positions; returns the
/// state at each x in xs (ascending, within [x0, max(xs)]).
std::vector<Complex2> dopri5_integrate_samples(const Rhs2& rhs, double x0, Complex2 y0,
                                               const std::vector<double>& xs,
                                               double rel_tol = 1e-10, double abs_tol = 1e-14);

/// Run body(i) for i in [0, n) on up to n_threads threads. Each index is
/// independent; results must be written to disjoint slots by the caller so
/// the outcome does not depend on scheduling.
void parallel_for(std::size_t n, int n_threads, const std::function<void(std::size_t)>& body);

} // namespace dppln::numerics
