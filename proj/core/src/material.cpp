#include "dppln/material.hpp"
#include "dppln/errors.hpp"

#include <cmath>
#include <sstream>

namespace dppln::material {

SellmeierModel SellmeierModel::edwards_lawrence_1984() {
  SellmeierModel m;
  m.ordinary = {4.9048, 0.11775, 0.21802, 0.027153, 2.2314e-8, -2.9671e-8, 2.1429e-8};
  m.extraordinary = {4.5820, 0.09921, 0.21090, 0.021940, 5.2716e-8, -4.9143e-8, 2.2971e-7};
  m.t0_c = 24.5;
  m.lambda_min_um = 0.4;
  m.lambda_max_um = 4.0;
  m.temp_min_c = -20.0;
  m.temp_max_c = 250.0;
  m.citation = "G. J. Edwards and M. Lawrence, Opt. Quantum Electron. 16, 373 (1984)";
  return m;
}

SellmeierModel SellmeierModel::constant_index(double n_o, double n_e) {
  SellmeierModel m;
  m.ordinary.a1 = n_o * n_o;
  m.extraordinary.a1 = n_e * n_e;
  m.lambda_min_um = 1e-3;
  m.lambda_max_um = 1e3;
  m.temp_min_c = -273.0;
  m.temp_max_c = 1e4;
  m.citation = "constant-index test model";
  return m;
}

bool SellmeierModel::in_validity_window(double lambda_um, double temp_c) const {
  return lambda_um >= lambda_min_um && lambda_um <= lambda_max_um &&
         temp_c >= temp_min_c && temp_c <= temp_max_c;
}

namespace {

void check_window(const SellmeierModel& m, double lambda_um, double temp_c) {
  if (!m.in_validity_window(lambda_um, temp_c)) {
    std::ostringstream os;
    os << "Sellmeier model queried outside its validity window: lambda = " << lambda_um
       << " um (window [" << m.lambda_min_um << ", " << m.lambda_max_um << "]), T = "
       << temp_c << " C (window [" << m.temp_min_c << ", " << m.temp_max_c << "])";
    throw OutOfValidityRange(os.str());
  }
}

double temperature_factor(const SellmeierModel& m, double temp_c) {
  return (temp_c - m.t0_c) * (temp_c + m.t0_c + 546.0);
}

double n_squared(const SellmeierCoefficients& c, double lambda_um, double f) {
  const double l2 = lambda_um * lambda_um;
  const double pole = c.a3 + c.b2 * f;
  return c.a1 + (c.a2 + c.b1 * f) / (l2 - pole * pole) + c.b3 * f - c.a4 * l2;
}

double dn_squared_dlambda(const SellmeierCoefficients& c, double lambda_um, double f) {
  const double l2 = lambda_um * lambda_um;
  const double pole = c.a3 + c.b2 * f;
  const double den = l2 - pole * pole;
  return -(c.a2 + c.b1 * f) * 2.0 * lambda_um / (den * den) - 2.0 * c.a4 * lambda_um;
}

} // namespace

double SellmeierModel::index(Polarization pol, double lambda_um, double temp_c) const {
  check_window(*this, lambda_um, temp_c);
  const double f = temperature_factor(*this, temp_c);
  const auto& c = (pol == Polarization::O) ? ordinary : extraordinary;
  const double n2 = n_squared(c, lambda_um, f);
  if (!(n2 > 1.0))
    throw OutOfValidityRange("Sellmeier model evaluated to a non-physical index");
  return std::sqrt(n2);
}

double SellmeierModel::index_derivative(Polarization pol, double lambda_um, double temp_c) const {
  check_window(*this, lambda_um, temp_c);
  const double f = temperature_factor(*this, temp_c);
  const auto& c = (pol == Polarization::O) ? ordinary : extraordinary;
  return dn_squared_dlambda(c, lambda_um, f) / (2.0 * index(pol, lambda_um, temp_c));
}

double SellmeierModel::group_index(Polarization pol, double lambda_um, double temp_c) const {
  return index(pol, lambda_um, temp_c) - lambda_um * index_derivative(pol, lambda_um, temp_c);
}

void MaterialConstants::validate() const {
  if (!(d31_pm_per_v > 0.0 && gamma51_pm_per_v > 0.0 && c_m_per_s > 0.0 &&
        eps0_f_per_m > 0.0 && hbar_j_s > 0.0))
    throw Error("material constants must all be strictly positive");
}

} // namespace dppln::material
