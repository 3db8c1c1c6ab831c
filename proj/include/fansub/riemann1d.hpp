#pragma once

#include "fansub/core.hpp"

namespace fansub {

// Self-similar 1D solution made of two shocks and (generically) a contact:
// middle pressure/velocity, the two middle densities, and the wave speeds.
struct TwoShockFan {
  double p_M = 0.0;
  double v_M = 0.0;
  double rho_Mminus = 0.0;
  double rho_Mplus = 0.0;
  double sigma_minus = 0.0;
  double sigma_plus = 0.0;
  double contact_speed = 0.0;
  bool has_contact = false;
};

// Strict velocity-jump threshold: the data produce a two-shock pattern
// iff v+2 - v-2 < threshold. (Zero when the pressures are equal.)
double two_shock_jump_threshold(const RiemannData& data, const GasModel& gas);

bool is_two_shock(const RiemannData& data, const GasModel& gas);

// Residual of the scalar middle-pressure equation at a trial p; strictly
// decreasing in p, with its unique root above max(p-, p+) for two-shock data.
double p_m_equation(double p, const RiemannData& data, const GasModel& gas);

// Root of p_m_equation. Throws NotTwoShock / NoBracket.
double solve_p_m(const RiemannData& data, const GasModel& gas);

// Full wave fan from the middle pressure. Throws NotTwoShock.
TwoShockFan solve_two_shock_fan(const RiemannData& data, const GasModel& gas);

// The six jump equalities (mass / momentum / energy at each shock),
// evaluated raw and relative to 1 + the largest additive term.
std::map<std::string, double> shock_jump_residuals(const TwoShockFan& fan,
                                                   const RiemannData& data,
                                                   const GasModel& gas,
                                                   bool relative = true);

}  // namespace fansub
