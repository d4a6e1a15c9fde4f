#include "dppln/eo.hpp"
#include "dppln/errors.hpp"
#include "dppln/numerics.hpp"

#include <cmath>
#include <numbers>

namespace dppln::eo {

using std::numbers::pi;

void EOSetting::validate() const {
  if (kappa_rad_per_m < 0.0)
    throw Error("EO setting: kappa must be >= 0 (phase belongs to the amplitudes)");
  if (!(length_m > 0.0))
    throw Error("EO setting: length must be positive");
}

double coupling_coefficient(double lambda_s_um, double n_o, double n_e,
                            double gamma51_pm_per_v, double e_a_v_per_m, double g_eff,
                            double f_eo) {
  if (!(lambda_s_um > 0.0 && n_o > 0.0 && n_e > 0.0))
    throw Error("coupling_coefficient: wavelength and indices must be positive");
  const double lambda_m = lambda_s_um / material::microns_per_meter;
  const double gamma51_m_per_v = gamma51_pm_per_v * 1e-12;
  return pi * n_o * n_o * n_e * n_e * gamma51_m_per_v * e_a_v_per_m * std::abs(g_eff) * f_eo /
         (lambda_m * std::sqrt(n_o * n_e));
}

namespace {

numerics::Rhs2 coupled_rhs(const EOSetting& s) {
  const double kappa = s.kappa_rad_per_m;
  const double delta = s.delta_rad_per_m;
  return [kappa, delta](double x, const numerics::Complex2& y, numerics::Complex2& dydx) {
    const std::complex<double> j(0.0, 1.0);
    const std::complex<double> phase = std::exp(j * (delta * x));
    dydx[0] = j * kappa * y[1] * phase;
    dydx[1] = j * kappa * y[0] * std::conj(phase);
  };
}

// detuned two-level conversion: |A_e(L)|^2 = (kappa^2/Omega^2) sin^2(Omega L)
double two_level_eta(double kappa, double delta, double length) {
  if (kappa == 0.0) return 0.0;
  const double omega = std::sqrt(kappa * kappa + 0.25 * delta * delta);
  const double s = std::sin(omega * length);
  return kappa * kappa / (omega * omega) * s * s;
}

} // namespace

FieldAmplitudes propagate(const EOSetting& setting, const FieldAmplitudes& initial,
                          double rel_tol) {
  setting.validate();
  if (!(initial.power() > 0.0))
    throw Error("propagate: initial amplitudes must carry power");
  if (setting.kappa_rad_per_m == 0.0) return initial; // decoupled
  const numerics::Complex2 y0{initial.a_o, initial.a_e};
  const auto y = numerics::dopri5_integrate(coupled_rhs(setting), 0.0, setting.length_m, y0,
                                            rel_tol, 1e-14);
  return {y[0], y[1]};
}

std::vector<TracePoint> propagate_trace(const EOSetting& setting, const FieldAmplitudes& initial,
                                        int n_samples, double rel_tol) {
  setting.validate();
  if (n_samples < 2) throw Error("propagate_trace: need at least 2 samples");
  std::vector<double> xs(n_samples);
  for (int i = 0; i < n_samples; ++i)
    xs[i] = setting.length_m * double(i) / double(n_samples - 1);
  const numerics::Complex2 y0{initial.a_o, initial.a_e};
  const auto states = numerics::dopri5_integrate_samples(coupled_rhs(setting), 0.0, y0, xs,
                                                         rel_tol, 1e-14);
  std::vector<TracePoint> trace(n_samples);
  for (int i = 0; i < n_samples; ++i)
    trace[i] = {xs[i], std::norm(states[i][0]), std::norm(states[i][1])};
  return trace;
}

double conversion_efficiency(const FieldAmplitudes& out, Polarization converted_pol) {
  const double total = out.power();
  if (!(total > 0.0)) throw ZeroPower("conversion_efficiency: zero total power");
  const double converted = (converted_pol == Polarization::E) ? std::norm(out.a_e)
                                                              : std::norm(out.a_o);
  return converted / total;
}

double field_for_target(double eta_target, double length_m, double delta_rad_per_m,
                        double kappa_per_field, double rel_tol) {
  if (!(eta_target > 0.0 && eta_target < 1.0))
    throw Error("field_for_target: target efficiency must be in (0,1)");
  if (!(length_m > 0.0 && kappa_per_field > 0.0))
    throw Error("field_for_target: length and kappa slope must be positive");

  auto eta_of_field = [&](double e) {
    return two_level_eta(kappa_per_field * e, delta_rad_per_m, length_m);
  };

  // Scan the field in steps fine enough to resolve the sin^2(Omega L)
  // oscillation, stop at the first local maximum of eta(E).
  const double delta_half = 0.5 * std::abs(delta_rad_per_m);
  const double e_scale = (0.5 * pi / length_m) / kappa_per_field; // kappa L = pi/2
  const double omega0_l = delta_half * length_m;
  const int n_scan = std::max(200, int(40.0 * (omega0_l / pi + 1.0)));
  const double e_step = 4.0 * e_scale / n_scan;

  double e_prev = 0.0, eta_prev = 0.0;
  double e_peak = 0.0;
  bool found_peak = false;
  for (int i = 1; i <= 4 * n_scan; ++i) {
    const double e = i * e_step;
    const double eta = eta_of_field(e);
    if (eta < eta_prev) {
      // bracket [e - 2 step, e] holds the first local maximum
      const double lo = std::max(0.0, e - 2.0 * e_step);
      e_peak = numerics::golden_section_max(eta_of_field, lo, e, rel_tol * e_scale * 0.1).first;
      found_peak = true;
      break;
    }
    e_prev = e;
    eta_prev = eta;
  }
  if (!found_peak) e_peak = e_prev;

  const double eta_peak = eta_of_field(e_peak);
  if (eta_peak < eta_target)
    throw Unreachable("field_for_target: conversion ceiling on the first maximum is below the target");

  // smallest field: first sign change of eta - target along the scan, refined
  auto gap = [&](double e) { return eta_of_field(e) - eta_target; };
  double lo = 0.0;
  double hi = e_peak;
  const double fine = e_peak / 512.0;
  for (double e = fine; e < e_peak; e += fine) {
    if (gap(e) >= 0.0) {
      hi = e;
      break;
    }
    lo = e;
  }
  return numerics::bisect_root(gap, lo, hi, rel_tol * std::max(hi, e_scale * 1e-6));
}

} // namespace dppln::eo
