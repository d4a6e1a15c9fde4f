#pragma once

#include "dppln/grating.hpp"
#include "dppln/material.hpp"
#include "dppln/qpm.hpp"
#include "dppln/waveguide.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace dppln::cli {

struct MaterialSection {
  std::string sellmeier = "edwards_lawrence_1984"; // or "constant_index"
  std::optional<double> constant_n_o;              // required for constant_index
  std::optional<double> constant_n_e;
  double d31_pm_per_v = 4.6;
  double gamma51_pm_per_v = 32.6;

  material::SellmeierModel build_model() const;
  material::MaterialConstants build_constants() const;
};

struct PolingSection {
  bool solve = false;                      // exactly one of solve / periods
  std::optional<double> period1_um;
  std::optional<double> period2_um;
  double duty1 = 0.5;
  double duty2 = 0.5;
  double length_cm = 5.0;
  qpm::OrderAssignment orders;
  int coincidence_cutoff = 1; // 1 recovers the single-order treatment
};

struct WavesSection {
  double pump_um = 0.7335;
  double signal_um = 1.6568;
  double temperature_c = 25.0;
};

struct EoSection {
  std::optional<double> field_v_per_m;     // exactly one of field / target
  std::optional<double> target_efficiency; // solve the field for this eta
  double length_cm = 3.0;
  std::optional<double> kappa_rad_per_m;   // calibration override of the kappa formula
  std::optional<double> delta_rad_per_m;   // override of the design residual r3
  bool apply_impurity = false;             // mix the unconverted branch into the parallel state
  int trace_samples = 201;
};

struct MapSection {
  qpm::MapAxes axes = qpm::MapAxes::PumpSignal;
  qpm::AxisSpec axis1;
  qpm::AxisSpec axis2;
};

struct SweepSection {
  std::string axis; // "geometry_scale" | "field_v_per_m" | "length_cm"
  double min = 0.0;
  double max = 0.0;
  int steps = 0;
};

struct SpectrumSection {
  int points = 4001;
  double zeros = 8.0;
};

struct DipSection {
  int points = 801;
  double tau_span_factor = 1.5; // tau range as a multiple of the widest L|D|
};

struct OutputSection {
  std::string directory = "out";
  std::vector<std::string> formats = {"csv", "json", "svg"};
};

struct RunConfig {
  MaterialSection material;
  waveguide::WaveguideGeometry geometry;
  PolingSection poling;
  WavesSection waves;
  EoSection eo;
  std::optional<MapSection> map;
  std::optional<SweepSection> sweep;
  SpectrumSection spectrum;
  DipSection dip;
  OutputSection output;
  std::string raw_json; // canonical parsed text, used for the config digest
};

/// Parse + validate a config document. Unknown keys are rejected with the
/// offending field path; defaults fill everything optional. Throws
/// SchemaError / IOError.
RunConfig load_config(const std::filesystem::path& path);
RunConfig parse_config(const std::string& json_text);

/// The shipped example document (the dual-period design point of the
/// default run: 0.7335/1.6568 um at 25 C, duty 0.5, solve the periods).
std::string example_config_json();

} // namespace dppln::cli
