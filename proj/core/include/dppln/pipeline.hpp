#pragma once

#include "dppln/biphoton.hpp"
#include "dppln/config.hpp"
#include "dppln/eo.hpp"
#include "dppln/io.hpp"

#include <filesystem>
#include <memory>

namespace dppln::cli {

inline constexpr const char* toolkit_version = "0.1.0";

enum class Command { Design, Map, Spectrum, Dip, Eo, Entropy, Validate };

/// Command name -> enum; throws SchemaError for unknown names.
Command parse_command(const std::string& name);

struct ExecuteOptions {
  std::string out_dir;   // empty: use config.output.directory
  int threads = 0;       // 0: pick a small default
  bool use_cache = true;
  std::string cache_dir; // empty: $DPPLN_CACHE_DIR, else <out>/cache
};

/// One fully assembled design point: solver, poling periods (solved or
/// given), mismatches and residuals, and on request the dispersion
/// parameters and transverse overlaps the quantum layer needs.
struct DesignContext {
  material::SellmeierModel sellmeier;
  material::MaterialConstants constants;
  waveguide::WaveguideGeometry geometry;
  std::shared_ptr<waveguide::ModeSolver> solver;
  WavesSection waves;
  double idler_um = 0.0;
  qpm::MismatchTriple mismatch;
  grating::PolingDesign poling;
  bool periods_solved = false;
  double residual1 = 0.0, residual2 = 0.0, residual3 = 0.0; // rad/um
  qpm::OrderAssignment orders;

  waveguide::GuidedMode pump_o, signal_o, signal_e, idler_o, idler_e;

  bool has_dispersion = false;
  double beta_prime_so = 0.0, beta_prime_se = 0.0; // s/m
  double beta_prime_io = 0.0, beta_prime_ie = 0.0;

  bool has_overlaps = false;
  double f_spdc_oe = 0.0; // 3-mode overlap pump*signal_o*idler_e, 1/um
  double f_spdc_eo = 0.0; // 3-mode overlap pump*signal_e*idler_o, 1/um
  double f_eo = 0.0;      // 2-mode overlap signal_o*signal_e, dimensionless

  double g_spdc1 = 0.0, g_spdc2 = 0.0, g_eo = 0.0; // effective Fourier coefficients
  double omega_s = 0.0, omega_i = 0.0;             // rad/s

  biphoton::ProcessExpansions expansions() const;
};

DesignContext build_design_context(const RunConfig& cfg, bool need_dispersion,
                                   bool need_overlaps);

/// Effective Fourier coefficient of an assigned order: its own G plus
/// every coincident order found within the search cutoff.
double effective_g_for_order(const qpm::OrderPair& order, const grating::PolingDesign& design,
                             int cutoff);

/// Assemble the P prefactors (arbitrary units, provenance recorded), the
/// detuning expansions and the nu grid for state_coefficients.
biphoton::StateInputs make_state_inputs(const DesignContext& ctx, const RunConfig& cfg,
                                        double e_a_v_per_m,
                                        double eo_conversion_efficiency = 1.0);

/// EO propagation setting at the design point: kappa from the coupling
/// formula (or the config override), delta from the config override or
/// the design residual r3.
eo::EOSetting make_eo_setting(const DesignContext& ctx, const RunConfig& cfg,
                              double e_a_v_per_m);

struct ExecutionResult {
  io::OutputManifest manifest;
  bool ok = true;      // false when a validate run has failing checks
  std::string summary; // one-line outcome for the console
};

/// Run one command against a validated config; writes every artifact plus
/// manifest.json under the output directory. Reruns with an identical
/// config produce byte-identical CSV/JSON artifacts (the manifest's
/// timestamp is the one exception).
ExecutionResult execute(Command cmd, const RunConfig& cfg, const ExecuteOptions& opts = {});

/// Persisted mode cache: entries keyed by (geometry digest, pol, lambda,
/// T) with bit-exact payloads and a per-entry digest. A corrupt file or
/// entry is treated as a miss; entries of other geometries are kept on
/// save and skipped on load.
std::size_t save_mode_cache(const std::filesystem::path& file,
                            const waveguide::ModeSolver& solver);
std::size_t load_mode_cache(const std::filesystem::path& file,
                            const waveguide::ModeSolver& solver);

/// Full command-line front end; returns the process exit status
/// (0 success, 2 schema error, 3 computation error, 4 I/O error).
int run_cli(int argc, const char* const* argv);

} // namespace dppln::cli
