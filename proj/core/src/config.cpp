#include "dppln/config.hpp"
#include "dppln/errors.hpp"
#include "dppln/io.hpp"

#include <json.hpp>

#include <set>

namespace dppln::cli {

using nlohmann::json;

material::SellmeierModel MaterialSection::build_model() const {
  if (sellmeier == "edwards_lawrence_1984")
    return material::SellmeierModel::edwards_lawrence_1984();
  if (sellmeier == "constant_index") {
    if (!constant_n_o || !constant_n_e)
      throw SchemaError("material: constant_index needs n_o and n_e");
    return material::SellmeierModel::constant_index(*constant_n_o, *constant_n_e);
  }
  throw SchemaError("material.sellmeier: unknown model '" + sellmeier + "'");
}

material::MaterialConstants MaterialSection::build_constants() const {
  material::MaterialConstants c;
  c.d31_pm_per_v = d31_pm_per_v;
  c.gamma51_pm_per_v = gamma51_pm_per_v;
  c.validate();
  return c;
}

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw SchemaError(path + ": " + what);
}

void require_keys(const json& obj, const std::string& path, const std::set<std::string>& allowed) {
  if (!obj.is_object()) fail(path, "must be an object");
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) fail(path + "." + key, "unknown key");
  }
}

double get_number(const json& obj, const std::string& path, const std::string& key,
                  double fallback, bool required = false) {
  if (!obj.contains(key)) {
    if (required) fail(path, "missing required key '" + key + "'");
    return fallback;
  }
  const auto& v = obj.at(key);
  if (!v.is_number()) fail(path + "." + key, "must be a number");
  return v.get<double>();
}

int get_int(const json& obj, const std::string& path, const std::string& key, int fallback) {
  if (!obj.contains(key)) return fallback;
  const auto& v = obj.at(key);
  if (!v.is_number_integer()) fail(path + "." + key, "must be an integer");
  return v.get<int>();
}

std::string get_string(const json& obj, const std::string& path, const std::string& key,
                       const std::string& fallback) {
  if (!obj.contains(key)) return fallback;
  const auto& v = obj.at(key);
  if (!v.is_string()) fail(path + "." + key, "must be a string");
  return v.get<std::string>();
}

qpm::OrderPair get_order_pair(const json& v, const std::string& path) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number_integer() || !v[1].is_number_integer())
    fail(path, "must be an [m, n] integer pair");
  return {v[0].get<int>(), v[1].get<int>()};
}

MaterialSection parse_material(const json& j) {
  MaterialSection s;
  if (j.is_null()) return s;
  require_keys(j, "material", {"sellmeier", "n_o", "n_e", "d31_pm_per_v", "gamma51_pm_per_v"});
  s.sellmeier = get_string(j, "material", "sellmeier", s.sellmeier);
  if (j.contains("n_o")) s.constant_n_o = get_number(j, "material", "n_o", 0.0);
  if (j.contains("n_e")) s.constant_n_e = get_number(j, "material", "n_e", 0.0);
  s.d31_pm_per_v = get_number(j, "material", "d31_pm_per_v", s.d31_pm_per_v);
  s.gamma51_pm_per_v = get_number(j, "material", "gamma51_pm_per_v", s.gamma51_pm_per_v);
  if (!(s.d31_pm_per_v > 0.0) || !(s.gamma51_pm_per_v > 0.0))
    fail("material", "tensor constants must be positive");
  s.build_model();
  return s;
}

waveguide::WaveguideGeometry parse_geometry(const json& j) {
  waveguide::WaveguideGeometry g;
  if (j.is_null()) return g;
  require_keys(j, "geometry", {"width_um", "depth_um", "delta_n_max", "lateral_diffusion_um"});
  g.width_um = get_number(j, "geometry", "width_um", g.width_um);
  g.depth_um = get_number(j, "geometry", "depth_um", g.depth_um);
  g.delta_n_max = get_number(j, "geometry", "delta_n_max", g.delta_n_max);
  g.lateral_diffusion_um = get_number(j, "geometry", "lateral_diffusion_um", 0.0);
  try {
    g.validate();
  } catch (const Error& e) {
    fail("geometry", e.what());
  }
  return g;
}

PolingSection parse_poling(const json& j) {
  PolingSection s;
  if (j.is_null()) {
    s.solve = true;
    return s;
  }
  require_keys(j, "poling", {"solve", "periods_um", "duty1", "duty2", "length_cm", "orders",
                             "coincidence_cutoff"});
  const bool has_solve = j.contains("solve") && j.at("solve").is_boolean() && j.at("solve").get<bool>();
  if (j.contains("solve") && !j.at("solve").is_boolean()) fail("poling.solve", "must be a boolean");
  const bool has_periods = j.contains("periods_um");
  if (has_solve == has_periods)
    fail("poling", "exactly one of 'solve: true' or 'periods_um' must be given");
  s.solve = has_solve;
  if (has_periods) {
    const auto& p = j.at("periods_um");
    if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
      fail("poling.periods_um", "must be a [period1, period2] pair in um");
    s.period1_um = p[0].get<double>();
    s.period2_um = p[1].get<double>();
    if (!(*s.period1_um > 0.0) || !(*s.period2_um > *s.period1_um))
      fail("poling.periods_um", "need 0 < period1 < period2");
  }
  s.duty1 = get_number(j, "poling", "duty1", s.duty1);
  s.duty2 = get_number(j, "poling", "duty2", s.duty2);
  s.length_cm = get_number(j, "poling", "length_cm", s.length_cm);
  if (!(s.duty1 > 0.0 && s.duty1 < 1.0 && s.duty2 > 0.0 && s.duty2 < 1.0))
    fail("poling", "duty cycles must be in (0,1)");
  if (!(s.length_cm > 0.0)) fail("poling.length_cm", "must be positive");
  if (j.contains("orders")) {
    const auto& o = j.at("orders");
    require_keys(o, "poling.orders", {"spdc1", "spdc2", "eo"});
    if (o.contains("spdc1")) s.orders.spdc1 = get_order_pair(o.at("spdc1"), "poling.orders.spdc1");
    if (o.contains("spdc2")) s.orders.spdc2 = get_order_pair(o.at("spdc2"), "poling.orders.spdc2");
    if (o.contains("eo")) s.orders.eo = get_order_pair(o.at("eo"), "poling.orders.eo");
  }
  s.coincidence_cutoff = get_int(j, "poling", "coincidence_cutoff", s.coincidence_cutoff);
  if (s.coincidence_cutoff < 1) fail("poling.coincidence_cutoff", "must be >= 1");
  return s;
}

WavesSection parse_waves(const json& root) {
  if (!root.contains("waves")) fail("waves", "missing required section");
  const auto& j = root.at("waves");
  require_keys(j, "waves", {"pump_um", "signal_um", "temperature_c"});
  WavesSection s;
  s.pump_um = get_number(j, "waves", "pump_um", s.pump_um, true);
  s.signal_um = get_number(j, "waves", "signal_um", s.signal_um, true);
  s.temperature_c = get_number(j, "waves", "temperature_c", s.temperature_c);
  if (!(s.pump_um > 0.0) || !(s.signal_um > s.pump_um))
    fail("waves", "need signal_um > pump_um > 0");
  return s;
}

EoSection parse_eo(const json& j) {
  EoSection s;
  if (j.is_null()) return s;
  require_keys(j, "eo", {"field_v_per_m", "target_efficiency", "length_cm", "kappa_rad_per_m",
                         "trace_samples"});
  if (j.contains("field_v_per_m")) s.field_v_per_m = get_number(j, "eo", "field_v_per_m", 0.0);
  if (j.contains("target_efficiency"))
    s.target_efficiency = get_number(j, "eo", "target_efficiency", 0.0);
  if (s.field_v_per_m && s.target_efficiency)
    fail("eo", "give either field_v_per_m or target_efficiency, not both");
  if (s.target_efficiency && !(*s.target_efficiency > 0.0 && *s.target_efficiency < 1.0))
    fail("eo.target_efficiency", "must be in (0,1)");
  s.length_cm = get_number(j, "eo", "length_cm", s.length_cm);
  if (!(s.length_cm > 0.0)) fail("eo.length_cm", "must be positive");
  if (j.contains("kappa_rad_per_m")) {
    s.kappa_rad_per_m = get_number(j, "eo", "kappa_rad_per_m", 0.0);
    if (!(*s.kappa_rad_per_m >= 0.0)) fail("eo.kappa_rad_per_m", "must be >= 0");
  }
  s.trace_samples = get_int(j, "eo", "trace_samples", s.trace_samples);
  if (s.trace_samples < 2) fail("eo.trace_samples", "must be >= 2");
  return s;
}

qpm::AxisSpec parse_axis(const json& j, const std::string& path) {
  require_keys(j, path, {"min", "max", "steps"});
  qpm::AxisSpec a;
  a.min = get_number(j, path, "min", 0.0, true);
  a.max = get_number(j, path, "max", 0.0, true);
  a.steps = get_int(j, path, "steps", 0);
  if (!(a.max > a.min)) fail(path, "axis range must have max > min (zero-width sweep rejected)");
  if (a.steps < 2) fail(path + ".steps", "must be >= 2");
  return a;
}

MapSection parse_map(const json& j) {
  require_keys(j, "map", {"axes", "axis1", "axis2"});
  MapSection s;
  const std::string axes = get_string(j, "map", "axes", "pump_signal");
  if (axes == "pump_signal")
    s.axes = qpm::MapAxes::PumpSignal;
  else if (axes == "signal_temperature")
    s.axes = qpm::MapAxes::SignalTemperature;
  else
    fail("map.axes", "must be 'pump_signal' or 'signal_temperature'");
  if (!j.contains("axis1") || !j.contains("axis2")) fail("map", "needs axis1 and axis2");
  s.axis1 = parse_axis(j.at("axis1"), "map.axis1");
  s.axis2 = parse_axis(j.at("axis2"), "map.axis2");
  return s;
}

SweepSection parse_sweep(const json& j) {
  require_keys(j, "sweep", {"axis", "min", "max", "steps"});
  SweepSection s;
  s.axis = get_string(j, "sweep", "axis", "");
  if (s.axis != "geometry_scale" && s.axis != "field_v_per_m" && s.axis != "length_cm")
    fail("sweep.axis", "must be one of geometry_scale, field_v_per_m, length_cm");
  s.min = get_number(j, "sweep", "min", 0.0, true);
  s.max = get_number(j, "sweep", "max", 0.0, true);
  s.steps = get_int(j, "sweep", "steps", 0);
  if (!(s.max > s.min)) fail("sweep", "range must have max > min (zero-width sweep rejected)");
  if (s.steps < 2) fail("sweep.steps", "must be >= 2");
  return s;
}

SpectrumSection parse_spectrum(const json& j) {
  SpectrumSection s;
  if (j.is_null()) return s;
  require_keys(j, "spectrum", {"points", "zeros"});
  s.points = get_int(j, "spectrum", "points", s.points);
  s.zeros = get_number(j, "spectrum", "zeros", s.zeros);
  if (s.points < 101) fail("spectrum.points", "must be >= 101");
  if (!(s.zeros >= 1.0)) fail("spectrum.zeros", "must be >= 1");
  return s;
}

DipSection parse_dip(const json& j) {
  DipSection s;
  if (j.is_null()) return s;
  require_keys(j, "dip", {"points", "tau_span_factor"});
  s.points = get_int(j, "dip", "points", s.points);
  s.tau_span_factor = get_number(j, "dip", "tau_span_factor", s.tau_span_factor);
  if (s.points < 11) fail("dip.points", "must be >= 11");
  if (!(s.tau_span_factor > 0.0)) fail("dip.tau_span_factor", "must be positive");
  return s;
}

OutputSection parse_output(const json& j) {
  OutputSection s;
  if (j.is_null()) return s;
  require_keys(j, "output", {"directory", "formats"});
  s.directory = get_string(j, "output", "directory", s.directory);
  if (j.contains("formats")) {
    const auto& f = j.at("formats");
    if (!f.is_array()) fail("output.formats", "must be an array");
    s.formats.clear();
    for (const auto& v : f) {
      if (!v.is_string()) fail("output.formats", "entries must be strings");
      const std::string fmt = v.get<std::string>();
      if (fmt != "csv" && fmt != "json" && fmt != "svg")
        fail("output.formats", "unknown format '" + fmt + "'");
      s.formats.push_back(fmt);
    }
  }
  return s;
}

} // namespace

RunConfig parse_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("config is not valid JSON: ") + e.what());
  }
  require_keys(root, "config", {"schema", "material", "geometry", "poling", "waves", "eo", "map",
                                "sweep", "spectrum", "dip", "output"});
  const std::string schema = get_string(root, "config", "schema", "");
  if (schema != "dppln-config/1")
    fail("config.schema", "expected 'dppln-config/1'");

  auto section = [&](const char* name) { return root.contains(name) ? root.at(name) : json(); };

  RunConfig cfg;
  cfg.material = parse_material(section("material"));
  cfg.geometry = parse_geometry(section("geometry"));
  cfg.poling = parse_poling(section("poling"));
  cfg.waves = parse_waves(root);
  cfg.eo = parse_eo(section("eo"));
  if (root.contains("map")) cfg.map = parse_map(root.at("map"));
  if (root.contains("sweep")) cfg.sweep = parse_sweep(root.at("sweep"));
  cfg.spectrum = parse_spectrum(section("spectrum"));
  cfg.dip = parse_dip(section("dip"));
  cfg.output = parse_output(section("output"));
  cfg.raw_json = root.dump(2);
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  return parse_config(io::read_file(path));
}

std::string example_config_json() {
  return R"({
  "schema": "dppln-config/1",
  "material": {
    "sellmeier": "edwards_lawrence_1984",
    "d31_pm_per_v": 4.6,
    "gamma51_pm_per_v": 32.6
  },
  "geometry": {
    "width_um": 10.0,
    "depth_um": 10.0,
    "delta_n_max": 0.003
  },
  "poling": {
    "solve": true,
    "duty1": 0.5,
    "duty2": 0.5,
    "length_cm": 5.0,
    "orders": { "spdc1": [3, 1], "spdc2": [3, -1], "eo": [1, 1] },
    "coincidence_cutoff": 1
  },
  "waves": {
    "pump_um": 0.7335,
    "signal_um": 1.6568,
    "temperature_c": 25.0
  },
  "eo": {
    "field_v_per_m": 450000.0,
    "length_cm": 3.0
  },
  "output": {
    "directory": "out",
    "formats": ["csv", "json", "svg"]
  }
}
)";
}

} // namespace dppln::cli
