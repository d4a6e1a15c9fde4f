#include "dppln/biphoton.hpp"
#include "dppln/errors.hpp"
#include "dppln/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace dppln::biphoton {

using std::numbers::pi;

std::complex<double> h_eval(double x) {
  const double u = 0.5 * x;
  double s;
  if (std::abs(u) < 1e-6) {
    s = 1.0 - u * u / 6.0; // sin(u)/u
  } else {
    s = std::sin(u) / u;
  }
  return std::polar(s, -u);
}

const char* to_string(Branch b) {
  switch (b) {
    case Branch::OE: return "oe";
    case Branch::EO: return "eo";
    case Branch::OO: return "oo";
    case Branch::EE: return "ee";
  }
  return "?";
}

ProcessExpansions ProcessExpansions::from_beta_primes(double bp_so, double bp_se,
                                                      double bp_io, double bp_ie) {
  ProcessExpansions e;
  e.oeo.walk_off_s_per_m = -(bp_so - bp_ie);
  e.eoo.walk_off_s_per_m = -(bp_se - bp_io);
  e.oe.walk_off_s_per_m = bp_so - bp_se;
  e.eo.walk_off_s_per_m = -(bp_so - bp_se);
  return e;
}

std::vector<double> default_nu_grid(const ProcessExpansions& expansions, double length_m,
                                    int n_points, double zeros) {
  if (n_points < 3 || length_m <= 0.0)
    throw Error("default_nu_grid: need n_points >= 3 and a positive length");
  double min_slope = 0.0;
  for (const auto* e : {&expansions.oeo, &expansions.eoo, &expansions.oe, &expansions.eo}) {
    const double s = std::abs(e->walk_off_s_per_m);
    if (s > 0.0 && (min_slope == 0.0 || s < min_slope)) min_slope = s;
  }
  if (min_slope == 0.0)
    throw Error("default_nu_grid: all walk-offs vanish; provide an explicit grid");
  // sinc zeros of the widest factor sit at multiples of 2 pi / (L |D|)
  const double half_width = zeros * 2.0 * pi / (length_m * min_slope);
  std::vector<double> nu(n_points);
  const double h = 2.0 * half_width / (n_points - 1);
  for (int i = 0; i < n_points; ++i) nu[i] = -half_width + h * i;
  if (n_points % 2 == 1) nu[n_points / 2] = 0.0;
  return nu;
}

namespace {

void check_grid(const std::vector<double>& nu) {
  if (nu.size() < 3) throw Error("spectrum: grid needs at least 3 points");
  const double span = nu.back() - nu.front();
  if (!(span > 0.0) || std::abs(nu.front() + nu.back()) > 1e-9 * span)
    throw Error("spectrum: grid must be symmetric about 0");
}

std::function<std::complex<double>(double)> branch_amplitude(Branch branch, double length_m,
                                                             const ProcessExpansions& ex) {
  const DetuningExpansion oeo = ex.oeo, eoo = ex.eoo, oe = ex.oe, eo = ex.eo;
  switch (branch) {
    case Branch::OE:
      return [=](double nu) { return h_eval(length_m * oeo.mismatch_rad_per_m(nu)); };
    case Branch::EO:
      return [=](double nu) { return h_eval(length_m * eoo.mismatch_rad_per_m(nu)); };
    case Branch::OO:
      return [=](double nu) {
        return h_eval(length_m * eo.mismatch_rad_per_m(nu)) *
               h_eval(length_m * eoo.mismatch_rad_per_m(nu));
      };
    case Branch::EE:
      return [=](double nu) {
        return h_eval(length_m * oe.mismatch_rad_per_m(nu)) *
               h_eval(length_m * oeo.mismatch_rad_per_m(nu));
      };
  }
  throw Error("spectrum: unknown branch");
}

double trapezoid(const std::vector<double>& x, const std::vector<double>& y) {
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i)
    acc += 0.5 * (y[i] + y[i + 1]) * (x[i + 1] - x[i]);
  return acc;
}

} // namespace

BiphotonSpectrum spectrum(Branch branch, double length_m, const ProcessExpansions& expansions,
                          const std::vector<double>& nu_grid) {
  if (!(length_m > 0.0)) throw Error("spectrum: length must be positive");
  check_grid(nu_grid);
  auto amp = branch_amplitude(branch, length_m, expansions);

  BiphotonSpectrum spec;
  spec.branch = branch;
  spec.length_m = length_m;
  spec.nu_rad_per_s = nu_grid;
  spec.amplitude_sq.resize(nu_grid.size());
  spec.evaluate_unnormalized = [amp](double nu) { return std::norm(amp(nu)); };
  double peak = 0.0;
  for (std::size_t i = 0; i < nu_grid.size(); ++i) {
    spec.amplitude_sq[i] = std::norm(amp(nu_grid[i]));
    peak = std::max(peak, spec.amplitude_sq[i]);
  }
  if (!(peak > 0.0)) throw Error("spectrum: vanishing amplitude over the whole grid");
  spec.peak = peak;
  for (double& v : spec.amplitude_sq) v /= peak;
  return spec;
}

double fwhm_nm(const BiphotonSpectrum& spec, double lambda_center_um) {
  const auto& nu = spec.nu_rad_per_s;
  const auto& s = spec.amplitude_sq;
  const auto peak_it = std::max_element(s.begin(), s.end());
  const std::size_t ip = std::size_t(peak_it - s.begin());
  if (ip == 0 || ip + 1 == s.size())
    throw GridTooNarrow("fwhm: spectrum peak is not interior to the grid");

  auto crossing = [&](bool right) {
    const std::ptrdiff_t step = right ? +1 : -1;
    std::ptrdiff_t i = std::ptrdiff_t(ip);
    while (true) {
      const std::ptrdiff_t next = i + step;
      if (next < 0 || next >= std::ptrdiff_t(s.size()))
        throw GridTooNarrow("fwhm: half maximum not bracketed by the grid");
      if (s[next] <= 0.5 && s[i] > 0.5) break;
      i = next;
    }
    const double a = nu[i], b = nu[i + step];
    if (spec.evaluate_unnormalized) {
      const double half = 0.5 * spec.peak;
      auto f = [&](double v) { return spec.evaluate_unnormalized(v) - half; };
      return numerics::bisect_root(f, std::min(a, b), std::max(a, b),
                                   1e-12 * (std::abs(a) + std::abs(b) + 1.0));
    }
    // data-only spectrum: linear interpolation between the grid points
    const double t = (0.5 - s[i]) / (s[i + step] - s[i]);
    return a + t * (b - a);
  };

  const double nu_left = crossing(false);
  const double nu_right = crossing(true);
  const double d_nu = nu_right - nu_left;
  const double c = 2.99792458e8;
  const double lambda_m = lambda_center_um * 1e-6;
  return lambda_m * lambda_m * d_nu / (2.0 * pi * c) * 1e9;
}

std::vector<double> hom_dip(const BiphotonSpectrum& spec, const std::vector<double>& tau_s) {
  const auto& nu = spec.nu_rad_per_s;
  const auto& s = spec.amplitude_sq;
  // tail condition: the outermost 1% of samples on each side must be
  // below 1e-6 of the (unit) peak
  const std::size_t n_edge = std::max<std::size_t>(4, s.size() / 100);
  double tail = 0.0;
  for (std::size_t i = 0; i < n_edge; ++i)
    tail = std::max({tail, s[i], s[s.size() - 1 - i]});
  if (tail > 1e-6)
    throw GridTooNarrow("hom_dip: spectrum tail exceeds 1e-6 of the peak; widen the grid");

  const double denom = trapezoid(nu, s);
  std::vector<double> rc(tau_s.size());
  std::vector<double> integrand(nu.size());
  for (std::size_t k = 0; k < tau_s.size(); ++k) {
    const double tau = tau_s[k];
    for (std::size_t i = 0; i < nu.size(); ++i)
      integrand[i] = s[i] * std::cos(nu[i] * tau);
    const double v = trapezoid(nu, integrand) / denom;
    rc[k] = 1.0 - 0.5 * v;
  }
  return rc;
}

namespace {

std::complex<double> weight_integral(const std::vector<double>& nu,
                                     const std::function<std::complex<double>(double)>& f) {
  std::complex<double> acc = 0.0;
  std::complex<double> prev = f(nu.front());
  for (std::size_t i = 0; i + 1 < nu.size(); ++i) {
    const std::complex<double> next = f(nu[i + 1]);
    acc += 0.5 * (prev + next) * (nu[i + 1] - nu[i]);
    prev = next;
  }
  return acc;
}

} // namespace

StateCoefficients state_coefficients(const StateInputs& in) {
  if (!(in.length_m > 0.0)) throw Error("state_coefficients: length must be positive");
  check_grid(in.nu_grid);
  if (!(in.eo_conversion_efficiency > 0.0 && in.eo_conversion_efficiency <= 1.0))
    throw Error("state_coefficients: conversion efficiency must be in (0, 1]");

  StateCoefficients out;
  out.p_oe = in.p_oe;
  out.p_eo = in.p_eo;
  out.p_oo = in.p_oo;
  out.p_ee = in.p_ee;
  out.provenance = in.provenance;

  const double L = in.length_m;
  const auto& ex = in.expansions;
  auto amp_oe = [&](double nu) { return in.p_oe * h_eval(L * ex.oeo.mismatch_rad_per_m(nu)); };
  auto amp_eo = [&](double nu) { return in.p_eo * h_eval(L * ex.eoo.mismatch_rad_per_m(nu)); };
  auto amp_oo = [&](double nu) {
    return in.p_oo * h_eval(L * ex.eo.mismatch_rad_per_m(nu)) *
           h_eval(L * ex.eoo.mismatch_rad_per_m(nu));
  };
  auto amp_ee = [&](double nu) {
    return in.p_ee * h_eval(L * ex.oe.mismatch_rad_per_m(nu)) *
           h_eval(L * ex.oeo.mismatch_rad_per_m(nu));
  };

  const bool field_on = in.applied_field_v_per_m != 0.0;
  out.branch = field_on ? ActiveBranch::Parallel : ActiveBranch::Orthogonal;

  // Eq.-style gate: exactly one branch carries weight
  const double lam_oe = std::norm(weight_integral(in.nu_grid, amp_oe));
  const double lam_eo = std::norm(weight_integral(in.nu_grid, amp_eo));
  if (!field_on) {
    out.lambda_oe = lam_oe;
    out.lambda_eo = lam_eo;
    const double total = lam_oe + lam_eo;
    out.p_signal_first = total > 0.0 ? lam_oe / total : 0.0;
    return out;
  }

  out.lambda_oo = std::norm(weight_integral(in.nu_grid, amp_oo));
  out.lambda_ee = std::norm(weight_integral(in.nu_grid, amp_ee));
  const double total_p = out.lambda_oo + out.lambda_ee;
  double p_o = total_p > 0.0 ? out.lambda_oo / total_p : 0.0;
  if (in.eo_conversion_efficiency < 1.0) {
    // imperfect switch: the unconverted share keeps the orthogonal
    // branch's signal-polarization distribution (oe keeps an o signal)
    const double total_o = lam_oe + lam_eo;
    const double p_o_orth = total_o > 0.0 ? lam_oe / total_o : 0.0;
    const double eta = in.eo_conversion_efficiency;
    p_o = eta * p_o + (1.0 - eta) * p_o_orth;
  }
  out.p_signal_first = p_o;
  return out;
}

double entropy_from_weights(double lambda_a, double lambda_b) {
  if (lambda_a < 0.0 || lambda_b < 0.0)
    throw Error("entropy: weights must be nonnegative");
  const double total = lambda_a + lambda_b;
  if (!(total > 0.0)) throw DegenerateState("entropy: both branch weights vanish");
  const double p = lambda_a / total;
  auto term = [](double q) { return q > 0.0 ? -q * std::log2(q) : 0.0; };
  return term(p) + term(1.0 - p);
}

double entropy(const StateCoefficients& c) {
  if (c.branch == ActiveBranch::Orthogonal)
    return entropy_from_weights(c.lambda_oe, c.lambda_eo);
  if (!(c.lambda_oo + c.lambda_ee > 0.0))
    throw DegenerateState("entropy: both branch weights vanish");
  // p_signal_first already folds the optional conversion impurity in
  return entropy_from_weights(c.p_signal_first, 1.0 - c.p_signal_first);
}

} // namespace dppln::biphoton
