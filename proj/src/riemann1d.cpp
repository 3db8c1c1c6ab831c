#include "fansub/riemann1d.hpp"

#include <algorithm>
#include <cmath>

namespace fansub {

namespace {

// (p - p0) / sqrt(rho0 (p0 + (2 c_v + 1) p)) — the shock branch of the wave
// curve through (rho0, p0), scaled so the jump equation reads
// -sqrt(2 c_v) (phi_- + phi_+) = v+2 - v-2.
double phi(double p, double rho0, double p0, double cv) {
  return (p - p0) / std::sqrt(rho0 * (p0 + (2.0 * cv + 1.0) * p));
}

}  // namespace

double two_shock_jump_threshold(const RiemannData& data, const GasModel& gas) {
  require_valid(data);
  require_valid(gas);
  const double cv = gas.c_v;
  const auto& l = data.left;
  const auto& r = data.right;
  if (l.p <= r.p)
    return -(r.p - l.p) * std::sqrt(2.0 * cv / (l.rho * (l.p + (2.0 * cv + 1.0) * r.p)));
  return -(l.p - r.p) * std::sqrt(2.0 * cv / (r.rho * (r.p + (2.0 * cv + 1.0) * l.p)));
}

bool is_two_shock(const RiemannData& data, const GasModel& gas) {
  const double jump = data.right.v2 - data.left.v2;
  return jump < two_shock_jump_threshold(data, gas);
}

double p_m_equation(double p, const RiemannData& data, const GasModel& gas) {
  const double cv = gas.c_v;
  return -std::sqrt(2.0 * cv) *
             (phi(p, data.left.rho, data.left.p, cv) + phi(p, data.right.rho, data.right.p, cv)) -
         (data.right.v2 - data.left.v2);
}

double solve_p_m(const RiemannData& data, const GasModel& gas) {
  if (!is_two_shock(data, gas))
    throw DomainError(ErrorCode::NotTwoShock,
                      "data do not satisfy the strict two-shock velocity-jump condition");

  const double lo0 = std::max(data.left.p, data.right.p);
  // f(lo0) > 0 for two-shock data; expand the upper end until the sign flips.
  double hi = 2.0 * lo0;
  int doublings = 0;
  while (p_m_equation(hi, data, gas) > 0.0) {
    hi *= 2.0;
    if (++doublings > 200)
      throw DomainError(ErrorCode::NoBracket, "upper bracket expansion exceeded 200 doublings");
  }

  // Bisection with a clamped secant proposal: guaranteed bracket shrinkage,
  // near-secant convergence once the root is localized.
  double lo = lo0;
  double flo = p_m_equation(lo, data, gas);
  double fhi = p_m_equation(hi, data, gas);
  double mid = 0.5 * (lo + hi);
  for (int it = 0; it < 200 && hi - lo > 1e-13 * (1.0 + mid); ++it) {
    mid = 0.5 * (lo + hi);
    if (fhi != flo) {
      const double sec = (lo * fhi - hi * flo) / (fhi - flo);
      // Keep the proposal strictly interior so the bracket always shrinks.
      const double guard = 0.01 * (hi - lo);
      if (sec > lo + guard && sec < hi - guard) mid = sec;
    }
    const double fmid = p_m_equation(mid, data, gas);
    if (fmid == 0.0) return mid;
    if (fmid > 0.0) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
      fhi = fmid;
    }
  }
  return 0.5 * (lo + hi);
}

TwoShockFan solve_two_shock_fan(const RiemannData& data, const GasModel& gas) {
  const double cv = gas.c_v;
  const auto& l = data.left;
  const auto& r = data.right;
  const double pM = solve_p_m(data, gas);

  TwoShockFan fan;
  fan.p_M = pM;
  fan.v_M = l.v2 - std::sqrt(2.0 * cv) * phi(pM, l.rho, l.p, cv);
  fan.rho_Mminus = l.rho * (l.p + (2.0 * cv + 1.0) * pM) / (pM + (2.0 * cv + 1.0) * l.p);
  fan.rho_Mplus = r.rho * (r.p + (2.0 * cv + 1.0) * pM) / (pM + (2.0 * cv + 1.0) * r.p);
  fan.sigma_minus = (l.rho * l.v2 - fan.rho_Mminus * fan.v_M) / (l.rho - fan.rho_Mminus);
  fan.sigma_plus = (r.rho * r.v2 - fan.rho_Mplus * fan.v_M) / (r.rho - fan.rho_Mplus);
  fan.contact_speed = fan.v_M;
  fan.has_contact =
      std::abs(fan.rho_Mminus - fan.rho_Mplus) > 1e-10 * (fan.rho_Mminus + fan.rho_Mplus);
  return fan;
}

namespace {

// residual = sigma [q] - [F]; scale = 1 + max |term|.
double jump_residual(double sigma, double q_out, double q_in, double f_out, double f_in,
                     bool relative) {
  const double raw = sigma * (q_out - q_in) - (f_out - f_in);
  if (!relative) return raw;
  const double scale =
      1.0 + std::max({std::abs(sigma * q_out), std::abs(sigma * q_in), std::abs(f_out),
                      std::abs(f_in)});
  return raw / scale;
}

}  // namespace

std::map<std::string, double> shock_jump_residuals(const TwoShockFan& fan,
                                                   const RiemannData& data, const GasModel& gas,
                                                   bool relative) {
  const double cv = gas.c_v;
  const auto& l = data.left;
  const auto& r = data.right;
  std::map<std::string, double> out;

  const double eL = 0.5 * l.rho * l.v2 * l.v2 + cv * l.p;
  const double eMm = 0.5 * fan.rho_Mminus * fan.v_M * fan.v_M + cv * fan.p_M;
  const double eR = 0.5 * r.rho * r.v2 * r.v2 + cv * r.p;
  const double eMp = 0.5 * fan.rho_Mplus * fan.v_M * fan.v_M + cv * fan.p_M;

  out["left_mass"] = jump_residual(fan.sigma_minus, l.rho, fan.rho_Mminus, l.rho * l.v2,
                                   fan.rho_Mminus * fan.v_M, relative);
  out["left_momentum"] =
      jump_residual(fan.sigma_minus, l.rho * l.v2, fan.rho_Mminus * fan.v_M,
                    l.rho * l.v2 * l.v2 + l.p,
                    fan.rho_Mminus * fan.v_M * fan.v_M + fan.p_M, relative);
  out["left_energy"] = jump_residual(fan.sigma_minus, eL, eMm, (eL + l.p) * l.v2,
                                     (eMm + fan.p_M) * fan.v_M, relative);
  out["right_mass"] = jump_residual(fan.sigma_plus, fan.rho_Mplus, r.rho,
                                    fan.rho_Mplus * fan.v_M, r.rho * r.v2, relative);
  out["right_momentum"] =
      jump_residual(fan.sigma_plus, fan.rho_Mplus * fan.v_M, r.rho * r.v2,
                    fan.rho_Mplus * fan.v_M * fan.v_M + fan.p_M,
                    r.rho * r.v2 * r.v2 + r.p, relative);
  out["right_energy"] = jump_residual(fan.sigma_plus, eMp, eR, (eMp + fan.p_M) * fan.v_M,
                                      (eR + r.p) * r.v2, relative);
  return out;
}

}  // namespace fansub
