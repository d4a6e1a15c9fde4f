#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

namespace dppln::biphoton {

/// Phase-matching amplitude h(x) = exp(-i x / 2) * sinc(x / 2), with the
/// unnormalized sinc(u) = sin(u)/u and h(0) = 1 by continuity.
std::complex<double> h_eval(double x);

/// Polarization branches of the source: OE/EO are the orthogonal pairs
/// (field off), OO/EE the parallel pairs (field on).
enum class Branch { OE, EO, OO, EE };

const char* to_string(Branch b);

/// First-order detuning expansion of one process, Delta-beta(nu) = D * nu
/// with the walk-off D in s/m. An optional full-dispersion evaluator
/// overrides the linearization.
struct DetuningExpansion {
  double walk_off_s_per_m = 0.0;
  std::function<double(double)> full; // nu (rad/s) -> Delta-beta (rad/m)

  double mismatch_rad_per_m(double nu) const {
    return full ? full(nu) : walk_off_s_per_m * nu;
  }
};

/// The four processes feeding the spectra. Sign conventions:
///   D(oeo) = -(b'_so - b'_ie),  D(eoo) = -(b'_se - b'_io),
///   D(oe)  =   b'_so - b'_se,   D(eo)  = -D(oe),
/// with the b' dispersion parameters in s/m.
struct ProcessExpansions {
  DetuningExpansion oeo;
  DetuningExpansion eoo;
  DetuningExpansion oe;
  DetuningExpansion eo;

  static ProcessExpansions from_beta_primes(double bp_so, double bp_se, double bp_io,
                                            double bp_ie);
};

/// Normalized squared phase-matching amplitude over a detuning grid.
/// The unnormalized evaluator is kept so half-max crossings can be
/// refined off-grid.
struct BiphotonSpectrum {
  Branch branch = Branch::OE;
  double length_m = 0.0;
  std::vector<double> nu_rad_per_s;
  std::vector<double> amplitude_sq; // peak-normalized to 1
  std::function<double(double)> evaluate_unnormalized;
  double peak = 0.0;
};

/// Symmetric grid of n_points spanning +-zeros sinc zeros of the widest
/// h factor (the process with the smallest nonzero |walk-off|).
std::vector<double> default_nu_grid(const ProcessExpansions& expansions, double length_m,
                                    int n_points = 4001, double zeros = 8.0);

/// Branch spectra: OE -> |h(L db_oeo)|^2, EO -> |h(L db_eoo)|^2,
/// OO -> |h(L db_eo) h(L db_eoo)|^2, EE -> |h(L db_oe) h(L db_oeo)|^2
/// (parallel branches carry the SPDC and the EO factor).
BiphotonSpectrum spectrum(Branch branch, double length_m, const ProcessExpansions& expansions,
                          const std::vector<double>& nu_grid);

/// Full width at half maximum, converted to nm at lambda_center via
/// d(lambda) = lambda^2 d(nu) / (2 pi c). Crossings are bisected between
/// grid points on the spectrum's own evaluator. Throws GridTooNarrow when
/// a half-max crossing is not bracketed by the grid.
double fwhm_nm(const BiphotonSpectrum& spec, double lambda_center_um);

/// Anticorrelation dip R_C(tau) = 1 - V(tau)/2 with
/// V = integral(S cos(nu tau)) / integral(S), trapezoidal on the grid.
/// The 50:50 beamsplitter normalization fixes R_C(0) = 1/2. Throws
/// GridTooNarrow unless the spectrum tail is below 1e-6 of its peak.
std::vector<double> hom_dip(const BiphotonSpectrum& spec, const std::vector<double>& tau_s);

struct PrefactorEntry {
  std::string name;
  double value = 0.0;
};

/// Everything state_coefficients needs, assembled by the caller. The P
/// prefactors are in arbitrary units (absolute pair rates are out of
/// scope); only ratios reach the observable outputs. The provenance list
/// records every factor that entered them.
struct StateInputs {
  std::complex<double> p_oe{0.0, 0.0};
  std::complex<double> p_eo{0.0, 0.0};
  std::complex<double> p_oo{0.0, 0.0};
  std::complex<double> p_ee{0.0, 0.0};
  ProcessExpansions expansions;
  double length_m = 0.0;
  std::vector<double> nu_grid;
  double applied_field_v_per_m = 0.0; // 0 selects the orthogonal branch
  double eo_conversion_efficiency = 1.0; // < 1 mixes the unconverted branch in
  std::vector<PrefactorEntry> provenance;
};

enum class ActiveBranch { Orthogonal, Parallel };

/// The four complex amplitudes and the integrated weights
/// lambda_xy = |integral of P_xy * (h product) d nu|^2 feeding the
/// entanglement entropy. The inactive branch's weights are zero (the
/// field gate is an ideal two-state switch).
struct StateCoefficients {
  std::complex<double> p_oe{0.0, 0.0};
  std::complex<double> p_eo{0.0, 0.0};
  std::complex<double> p_oo{0.0, 0.0};
  std::complex<double> p_ee{0.0, 0.0};
  double lambda_oe = 0.0;
  double lambda_eo = 0.0;
  double lambda_oo = 0.0;
  double lambda_ee = 0.0;
  ActiveBranch branch = ActiveBranch::Orthogonal;
  // signal-polarization probability of the active pair, after the optional
  // conversion-impurity mixing
  double p_signal_first = 0.0; // weight share of (oe|oo), i.e. the o-signal slot
  std::vector<PrefactorEntry> provenance;
};

StateCoefficients state_coefficients(const StateInputs& inputs);

/// Binary von Neumann entropy of the active pair, in bits; 0 log 0 = 0.
/// Throws DegenerateState when both active weights vanish.
double entropy(const StateCoefficients& coeffs);

/// Entropy of an explicit weight pair (used by sweeps and oracles).
double entropy_from_weights(double lambda_a, double lambda_b);

} // namespace dppln::biphoton
