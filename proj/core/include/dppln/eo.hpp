#pragma once

#include "dppln/material.hpp"

#include <complex>
#include <vector>

namespace dppln::eo {

/// One propagation problem of the signal's O/E amplitudes:
///   dA_o/dx = i kappa A_e exp(+i delta x)
///   dA_e/dx = i kappa A_o exp(-i delta x)
/// kappa >= 0 (any coupling phase is absorbed into the amplitudes); delta
/// is the residual mismatch of the EO order.
struct EOSetting {
  double kappa_rad_per_m = 0.0;
  double delta_rad_per_m = 0.0;
  double length_m = 0.0;
  double applied_field_v_per_m = 0.0; // informational; kappa already includes it

  void validate() const;
};

struct FieldAmplitudes {
  std::complex<double> a_o{0.0, 0.0};
  std::complex<double> a_e{0.0, 0.0};

  double power() const { return std::norm(a_o) + std::norm(a_e); }
};

/// kappa = pi n_o^2 n_e^2 gamma51 E_a |G_eff| F_EO / (lambda_s sqrt(n_o n_e)),
/// in rad/m; linear in the applied field and in the effective Fourier
/// coefficient.
double coupling_coefficient(double lambda_s_um, double n_o, double n_e,
                            double gamma51_pm_per_v, double e_a_v_per_m, double g_eff,
                            double f_eo);

/// Adaptive RK integration of the coupled amplitudes from 0 to L.
/// Total power is conserved to integrator tolerance.
FieldAmplitudes propagate(const EOSetting& setting, const FieldAmplitudes& initial,
                          double rel_tol = 1e-10);

struct TracePoint {
  double x_m = 0.0;
  double p_o = 0.0;
  double p_e = 0.0;
};

/// Same integration sampled at n_samples equidistant positions (for
/// eta(x) traces).
std::vector<TracePoint> propagate_trace(const EOSetting& setting, const FieldAmplitudes& initial,
                                        int n_samples, double rel_tol = 1e-10);

/// Fraction of the total output power in the requested polarization.
/// Throws ZeroPower on zero total power.
double conversion_efficiency(const FieldAmplitudes& out, Polarization converted_pol);

/// Smallest applied field reaching eta >= eta_target on the first
/// conversion maximum, for kappa = kappa_per_field * E_a. Bracketing plus
/// bisection on the detuned two-level efficiency; 1e-3 relative tolerance
/// on the field. Throws Unreachable when the detuned ceiling is below the
/// target.
double field_for_target(double eta_target, double length_m, double delta_rad_per_m,
                        double kappa_per_field, double rel_tol = 1e-3);

} // namespace dppln::eo
