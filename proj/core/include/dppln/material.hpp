#pragma once

#include <string>

namespace dppln {

enum class Polarization { O, E };

inline const char* to_string(Polarization p) { return p == Polarization::O ? "O" : "E"; }

namespace material {

/// Coefficients of one polarization of the temperature-dependent Sellmeier
/// form  n^2 = a1 + (a2 + b1*F)/(lam^2 - (a3 + b2*F)^2) + b3*F - a4*lam^2,
/// with F = (T - t0)*(T + t0 + 546), lam in um and T in deg C.
struct SellmeierCoefficients {
  double a1 = 0.0;
  double a2 = 0.0;
  double a3 = 0.0;
  double a4 = 0.0;
  double b1 = 0.0;
  double b2 = 0.0;
  double b3 = 0.0;
};

struct SellmeierModel {
  SellmeierCoefficients ordinary;
  SellmeierCoefficients extraordinary;
  double t0_c = 24.5;
  // validity window
  double lambda_min_um = 0.4;
  double lambda_max_um = 4.0;
  double temp_min_c = -20.0;
  double temp_max_c = 250.0;
  std::string citation;

  /// Congruent LiNbO3, Edwards & Lawrence, Opt. Quantum Electron. 16, 373 (1984).
  static SellmeierModel edwards_lawrence_1984();

  /// Dispersionless test model with fixed indices (a1 = n^2, all else zero).
  static SellmeierModel constant_index(double n_o, double n_e);

  /// n_sigma(lambda, T). Throws OutOfValidityRange outside the window.
  double index(Polarization pol, double lambda_um, double temp_c) const;

  /// dn/dlambda in 1/um. The Sellmeier form above has an analytic
  /// derivative, which is what this evaluates (no finite differences).
  double index_derivative(Polarization pol, double lambda_um, double temp_c) const;

  /// Group index n - lambda * dn/dlambda.
  double group_index(Polarization pol, double lambda_um, double temp_c) const;

  bool in_validity_window(double lambda_um, double temp_c) const;
};

/// Tensor constants and the physical constants of the run's unit system
/// (SI: meters, seconds, volts; wavelengths are passed around in um and
/// converted explicitly at the few places that need SI).
struct MaterialConstants {
  double d31_pm_per_v = 4.6;     // nonlinear coefficient
  double gamma51_pm_per_v = 32.6; // electro-optic coefficient
  double c_m_per_s = 2.99792458e8;
  double eps0_f_per_m = 8.8541878128e-12;
  double hbar_j_s = 1.054571817e-34;

  void validate() const; // all strictly positive
};

constexpr double microns_per_meter = 1e6;

} // namespace material
} // namespace dppln
