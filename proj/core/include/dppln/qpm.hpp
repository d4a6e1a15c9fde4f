#pragma once

#include "dppln/waveguide.hpp"

#include <functional>
#include <vector>

namespace dppln::qpm {

struct OrderPair {
  int m = 0;
  int n = 0;
};

/// (m, n) assignments for the two SPDC processes and the EO interaction.
struct OrderAssignment {
  OrderPair spdc1{3, 1};
  OrderPair spdc2{3, -1};
  OrderPair eo{1, 1};
};

/// 1/lambda_i = 1/lambda_p - 1/lambda_s. Throws NonPhysical when the
/// signal is not redder than the pump.
double idler_wavelength(double pump_um, double signal_um);

/// The three phase mismatches, in rad/um:
///   d1 = beta_po - beta_so - beta_ie   (SPDC o -> o + e)
///   d2 = beta_po - beta_se - beta_io   (SPDC o -> e + o)
///   d3 = beta_so - beta_se             (EO o <-> e at the signal)
struct MismatchTriple {
  double d1 = 0.0;
  double d2 = 0.0;
  double d3 = 0.0;
};

MismatchTriple mismatches(const waveguide::ModeSolver& solver, double pump_um,
                          double signal_um, double temp_c);

struct SolvedPeriods {
  double period1_um = 0.0;
  double period2_um = 0.0;
};

/// Exact 2x2 linear solve of K_{m1,n1} = d1, K_{m2,n2} = d2 for the two
/// periods. Throws SingularOrders for a singular order matrix and
/// NegativePeriod when the solve gives a non-positive (or divergent)
/// period.
SolvedPeriods solve_periods(double d1, double d2, OrderPair o1, OrderPair o2);

/// Wavelength triple, solved periods and residual mismatches of one
/// design point. r1, r2 are below 1e-9 rad/um by construction; r3 is the
/// leftover EO mismatch d3 - K_eo (the Delta of the Fig.-2-style maps).
struct PhaseMatchSolution {
  double pump_um = 0.0;
  double signal_um = 0.0;
  double idler_um = 0.0;
  double temp_c = 0.0;
  double period1_um = 0.0;
  double period2_um = 0.0;
  double residual1 = 0.0;
  double residual2 = 0.0;
  double residual3 = 0.0;
  OrderAssignment orders;
};

PhaseMatchSolution solve_design(const waveguide::ModeSolver& solver, double pump_um,
                                double signal_um, double temp_c,
                                const OrderAssignment& orders = {});

enum class MapAxes { PumpSignal, SignalTemperature };

struct AxisSpec {
  double min = 0.0;
  double max = 0.0;
  int steps = 0;
};

/// Delta(axis1, axis2) landscape. Cells where a mode is missing are
/// flagged invalid instead of aborting the map. The evaluator recomputes
/// Delta at off-grid points (used by locus refinement); it references the
/// solver the map was built from.
struct DeltaMap {
  MapAxes axes = MapAxes::PumpSignal;
  std::vector<double> axis1;
  std::vector<double> axis2;
  std::vector<double> delta; // row-major, axis1-major
  std::vector<char> valid;
  std::function<double(double, double)> evaluate;

  double at(int i1, int i2) const { return delta[std::size_t(i1) * axis2.size() + i2]; }
  bool is_valid(int i1, int i2) const { return valid[std::size_t(i1) * axis2.size() + i2] != 0; }
};

/// Per cell: solve the two periods from d1, d2 at the assigned orders,
/// then Delta = d3 - K_eo(period1, period2). fixed_value is the held
/// parameter of the axes pair (T for PumpSignal, pump wavelength for
/// SignalTemperature). Cells are independent; results do not depend on
/// evaluation order.
DeltaMap delta_map(const waveguide::ModeSolver& solver, MapAxes axes, AxisSpec axis1,
                   AxisSpec axis2, double fixed_value, const OrderAssignment& orders = {},
                   int n_threads = 1);

struct LocusPoint {
  double axis1 = 0.0;
  double axis2 = 0.0;
};

/// Zero crossings of the map, one bisection-refined point per sign change
/// per axis1 column, |Delta| < 1e-8 rad/um. Throws EmptyLocus if the map
/// has no sign change.
std::vector<LocusPoint> matching_locus(const DeltaMap& map);

} // namespace dppln::qpm
