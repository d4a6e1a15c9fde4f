#include "dppln/qpm.hpp"
#include "dppln/errors.hpp"
#include "dppln/grating.hpp"
#include "dppln/numerics.hpp"

#include <cmath>
#include <sstream>

namespace dppln::qpm {

double idler_wavelength(double pump_um, double signal_um) {
  if (!(pump_um > 0.0) || !(signal_um > pump_um)) {
    std::ostringstream os;
    os << "idler_wavelength: need signal > pump > 0, got pump = " << pump_um
       << " um, signal = " << signal_um << " um";
    throw NonPhysical(os.str());
  }
  return 1.0 / (1.0 / pump_um - 1.0 / signal_um);
}

MismatchTriple mismatches(const waveguide::ModeSolver& solver, double pump_um,
                          double signal_um, double temp_c) {
  const double idler_um = idler_wavelength(pump_um, signal_um);
  using waveguide::propagation_constant;
  const double beta_po = propagation_constant(solver.solve(Polarization::O, pump_um, temp_c));
  const double beta_so = propagation_constant(solver.solve(Polarization::O, signal_um, temp_c));
  const double beta_se = propagation_constant(solver.solve(Polarization::E, signal_um, temp_c));
  const double beta_io = propagation_constant(solver.solve(Polarization::O, idler_um, temp_c));
  const double beta_ie = propagation_constant(solver.solve(Polarization::E, idler_um, temp_c));
  MismatchTriple out;
  out.d1 = beta_po - beta_so - beta_ie;
  out.d2 = beta_po - beta_se - beta_io;
  out.d3 = beta_so - beta_se;
  return out;
}

SolvedPeriods solve_periods(double d1, double d2, OrderPair o1, OrderPair o2) {
  const double det = double(o1.m) * o2.n - double(o1.n) * o2.m;
  if (det == 0.0) {
    std::ostringstream os;
    os << "solve_periods: orders (" << o1.m << "," << o1.n << ") and (" << o2.m << ","
       << o2.n << ") are linearly dependent";
    throw SingularOrders(os.str());
  }
  // Cramer solve for u = 2 pi / period1, v = 2 pi / period2
  const double u = (d1 * o2.n - d2 * o1.n) / det;
  const double v = (d2 * o1.m - d1 * o2.m) / det;
  if (!(u > 0.0) || !(v > 0.0))
    throw NegativePeriod("solve_periods: mismatches and orders give a non-positive period");
  SolvedPeriods periods;
  periods.period1_um = 2.0 * std::numbers::pi / u;
  periods.period2_um = 2.0 * std::numbers::pi / v;
  return periods;
}

PhaseMatchSolution solve_design(const waveguide::ModeSolver& solver, double pump_um,
                                double signal_um, double temp_c, const OrderAssignment& orders) {
  const MismatchTriple d = mismatches(solver, pump_um, signal_um, temp_c);
  const SolvedPeriods periods = solve_periods(d.d1, d.d2, orders.spdc1, orders.spdc2);

  PhaseMatchSolution sol;
  sol.pump_um = pump_um;
  sol.signal_um = signal_um;
  sol.idler_um = idler_wavelength(pump_um, signal_um);
  sol.temp_c = temp_c;
  sol.period1_um = periods.period1_um;
  sol.period2_um = periods.period2_um;
  sol.orders = orders;
  sol.residual1 = grating::reciprocal_vector(orders.spdc1.m, orders.spdc1.n,
                                             periods.period1_um, periods.period2_um) - d.d1;
  sol.residual2 = grating::reciprocal_vector(orders.spdc2.m, orders.spdc2.n,
                                             periods.period1_um, periods.period2_um) - d.d2;
  sol.residual3 = d.d3 - grating::reciprocal_vector(orders.eo.m, orders.eo.n,
                                                    periods.period1_um, periods.period2_um);
  if (std::abs(sol.residual1) > 1e-9 || std::abs(sol.residual2) > 1e-9)
    throw Error("solve_design: period solve failed its residual contract");
  return sol;
}

namespace {

double map_cell(const waveguide::ModeSolver& solver, MapAxes axes, double a1, double a2,
                double fixed_value, const OrderAssignment& orders) {
  const double pump = (axes == MapAxes::PumpSignal) ? a1 : fixed_value;
  const double signal = (axes == MapAxes::PumpSignal) ? a2 : a1;
  const double temp = (axes == MapAxes::PumpSignal) ? fixed_value : a2;
  const MismatchTriple d = mismatches(solver, pump, signal, temp);
  const SolvedPeriods periods = solve_periods(d.d1, d.d2, orders.spdc1, orders.spdc2);
  return d.d3 - grating::reciprocal_vector(orders.eo.m, orders.eo.n, periods.period1_um,
                                           periods.period2_um);
}

std::vector<double> linspace(const AxisSpec& spec) {
  if (spec.steps < 1 || !(spec.max > spec.min))
    throw Error("delta_map: axis needs steps >= 1 and max > min");
  std::vector<double> v(spec.steps);
  if (spec.steps == 1) {
    v[0] = spec.min;
    return v;
  }
  const double h = (spec.max - spec.min) / (spec.steps - 1);
  for (int i = 0; i < spec.steps; ++i) v[i] = spec.min + h * i;
  return v;
}

} // namespace

DeltaMap delta_map(const waveguide::ModeSolver& solver, MapAxes axes, AxisSpec axis1,
                   AxisSpec axis2, double fixed_value, const OrderAssignment& orders,
                   int n_threads) {
  DeltaMap map;
  map.axes = axes;
  map.axis1 = linspace(axis1);
  map.axis2 = linspace(axis2);
  const std::size_t n1 = map.axis1.size(), n2 = map.axis2.size();
  map.delta.assign(n1 * n2, 0.0);
  map.valid.assign(n1 * n2, 0);
  map.evaluate = [&solver, axes, fixed_value, orders](double a1, double a2) {
    return map_cell(solver, axes, a1, a2, fixed_value, orders);
  };

  numerics::parallel_for(n1 * n2, n_threads, [&](std::size_t idx) {
    const double a1 = map.axis1[idx / n2];
    const double a2 = map.axis2[idx % n2];
    try {
      map.delta[idx] = map_cell(solver, axes, a1, a2, fixed_value, orders);
      map.valid[idx] = 1;
    } catch (const Error&) {
      // missing mode or degenerate solve: mark the cell, keep the map
      map.valid[idx] = 0;
    }
  });
  return map;
}

std::vector<LocusPoint> matching_locus(const DeltaMap& map) {
  std::vector<LocusPoint> locus;
  const int n2 = int(map.axis2.size());
  for (int i1 = 0; i1 < int(map.axis1.size()); ++i1) {
    const double a1 = map.axis1[i1];
    for (int i2 = 0; i2 + 1 < n2; ++i2) {
      if (!map.is_valid(i1, i2) || !map.is_valid(i1, i2 + 1)) continue;
      const double f0 = map.at(i1, i2), f1 = map.at(i1, i2 + 1);
      if (f0 == 0.0) {
        locus.push_back({a1, map.axis2[i2]});
        continue;
      }
      if ((f0 > 0.0) == (f1 > 0.0)) continue;
      auto f = [&](double a2) { return map.evaluate(a1, a2); };
      const double a2_root = numerics::bisect_root(f, map.axis2[i2], map.axis2[i2 + 1],
                                                   0.0 /*xtol: run to ftol*/, 1e-8);
      locus.push_back({a1, a2_root});
    }
  }
  if (locus.empty())
    throw EmptyLocus("matching_locus: the map has no Delta = 0 crossing");
  return locus;
}

} // namespace dppln::qpm
