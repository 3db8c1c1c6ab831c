#include "fansub/fan_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>

namespace fansub {

namespace {

// A residual assembled from explicit additive terms so that the relative
// form can be normalized by the largest term actually present.
double combine(std::initializer_list<double> terms, bool relative) {
  double sum = 0.0;
  double largest = 0.0;
  for (double t : terms) {
    sum += t;
    largest = std::max(largest, std::abs(t));
  }
  return relative ? sum / (1.0 + largest) : sum;
}

double adm_scale(std::initializer_list<double> terms) {
  double largest = 0.0;
  for (double t : terms) largest = std::max(largest, std::abs(t));
  return 1.0 + largest;
}

}  // namespace

bool well_formed(const SubsolutionCandidate& cand) {
  if (cand.n != 1 && cand.n != 2) return false;
  if (static_cast<int>(cand.regions.size()) != cand.n) return false;
  if (static_cast<int>(cand.mu.size()) != cand.n + 1) return false;
  for (double m : cand.mu)
    if (!std::isfinite(m)) return false;
  for (const auto& r : cand.regions) {
    // rho and p must support the entropy logarithms; the sign of C is a
    // margin outcome (sc1 > 0 forces C > 0), not a shape requirement.
    if (!(std::isfinite(r.rho) && r.rho > 0.0)) return false;
    if (!(std::isfinite(r.p) && r.p > 0.0)) return false;
    if (!std::isfinite(r.C)) return false;
    if (!std::isfinite(r.alpha) || !std::isfinite(r.beta) || !std::isfinite(r.gamma) ||
        !std::isfinite(r.delta))
      return false;
  }
  return true;
}

std::map<std::string, double> rh_residuals(const SubsolutionCandidate& cand,
                                           const RiemannData& data, const GasModel& gas,
                                           bool relative) {
  const double cv = gas.c_v;
  const auto& l = data.left;
  const auto& r = data.right;
  const MiddleRegion& a = cand.regions.front();
  const MiddleRegion& b = cand.regions.back();
  const double mu0 = cand.mu.front();
  const double muN = cand.mu.back();

  std::map<std::string, double> out;

  // Left interface: outer = left initial state, inner = first region.
  out["rhl1"] = combine({mu0 * l.rho, -mu0 * a.rho, -l.rho * l.v2, a.rho * a.beta}, relative);
  out["rhl2"] = combine({-mu0 * a.rho * a.alpha, a.rho * a.delta}, relative);
  out["rhl3"] = combine({mu0 * l.rho * l.v2, -mu0 * a.rho * a.beta, -l.rho * l.v2 * l.v2,
                         a.rho * (a.C / 2 - a.gamma), -l.p, a.p},
                        relative);
  out["rhl4"] =
      combine({mu0 * (l.rho * l.v2 * l.v2 / 2 + cv * l.p), -mu0 * (a.rho * a.C / 2 + cv * a.p),
               -(l.rho * l.v2 * l.v2 / 2 + (cv + 1) * l.p) * l.v2,
               (a.rho * a.C / 2 + (cv + 1) * a.p) * a.beta},
              relative);

  // Right interface: inner = last region, outer = right initial state.
  out["rhr1"] = combine({muN * b.rho, -muN * r.rho, -b.rho * b.beta, r.rho * r.v2}, relative);
  out["rhr2"] = combine({muN * b.rho * b.alpha, -b.rho * b.delta}, relative);
  out["rhr3"] = combine({muN * b.rho * b.beta, -muN * r.rho * r.v2,
                         -b.rho * (b.C / 2 - b.gamma), r.rho * r.v2 * r.v2, -b.p, r.p},
                        relative);
  out["rhr4"] =
      combine({muN * (b.rho * b.C / 2 + cv * b.p), -muN * (r.rho * r.v2 * r.v2 / 2 + cv * r.p),
               -(b.rho * b.C / 2 + (cv + 1) * b.p) * b.beta,
               (r.rho * r.v2 * r.v2 / 2 + (cv + 1) * r.p) * r.v2},
              relative);

  if (cand.n == 2) {
    const double mu1 = cand.mu[1];
    out["rhm1"] = combine({mu1 * a.rho, -mu1 * b.rho, -a.rho * a.beta, b.rho * b.beta}, relative);
    out["rhm2"] = combine({mu1 * a.rho * a.alpha, -mu1 * b.rho * b.alpha, -a.rho * a.delta,
                           b.rho * b.delta},
                          relative);
    out["rhm3"] = combine({mu1 * a.rho * a.beta, -mu1 * b.rho * b.beta,
                           -a.rho * (a.C / 2 - a.gamma), b.rho * (b.C / 2 - b.gamma), -a.p, b.p},
                          relative);
    out["rhm4"] =
        combine({mu1 * (a.rho * a.C / 2 + cv * a.p), -mu1 * (b.rho * b.C / 2 + cv * b.p),
                 -(a.rho * a.C / 2 + (cv + 1) * a.p) * a.beta,
                 (b.rho * b.C / 2 + (cv + 1) * b.p) * b.beta},
                relative);
  }
  return out;
}

std::map<std::string, double> subsolution_margins(const SubsolutionCandidate& cand) {
  std::map<std::string, double> out;
  for (int i = 0; i < cand.n; ++i) {
    const MiddleRegion& reg = cand.regions[i];
    const std::string idx = std::to_string(i + 1);
    out["sc1_" + idx] = reg.C - reg.alpha * reg.alpha - reg.beta * reg.beta;
    out["sc2_" + idx] = (reg.C / 2 - reg.alpha * reg.alpha + reg.gamma) *
                            (reg.C / 2 - reg.beta * reg.beta - reg.gamma) -
                        (reg.delta - reg.alpha * reg.beta) * (reg.delta - reg.alpha * reg.beta);
  }
  return out;
}

std::map<std::string, double> admissibility_margins(const SubsolutionCandidate& cand,
                                                    const RiemannData& data,
                                                    const GasModel& gas) {
  const MiddleRegion& a = cand.regions.front();
  const MiddleRegion& b = cand.regions.back();
  const double L1 = entropy_density(gas, a.rho, a.p);
  const double LN = entropy_density(gas, b.rho, b.p);
  const double Lm = entropy_density(data.left, gas);
  const double Lp = entropy_density(data.right, gas);
  const double vm = data.left.v2;
  const double vp = data.right.v2;

  std::map<std::string, double> out;
  out["adml"] = (L1 * a.beta - Lm * vm) - cand.mu.front() * (L1 - Lm);
  out["admr"] = (Lp * vp - LN * b.beta) - cand.mu.back() * (Lp - LN);
  if (cand.n == 2)
    out["admm"] = (LN * b.beta - L1 * a.beta) - cand.mu[1] * (LN - L1);
  return out;
}

std::map<std::string, double> order_margins(const SubsolutionCandidate& cand) {
  std::map<std::string, double> out;
  for (int i = 0; i < cand.n; ++i)
    out["order" + std::to_string(i) + std::to_string(i + 1)] = cand.mu[i + 1] - cand.mu[i];
  return out;
}

VerificationReport verify(const SubsolutionCandidate& cand, const RiemannData& data,
                          const GasModel& gas, double tol) {
  VerificationReport rep;
  rep.tolerance_used = tol;
  if (!well_formed(cand) || !valid(data) || !valid(gas) || !(tol > 0.0)) {
    rep.passed = false;
    return rep;
  }

  rep.equality_residuals = rh_residuals(cand, data, gas, false);
  rep.equality_residuals_rel = rh_residuals(cand, data, gas, true);

  const auto order = order_margins(cand);
  const auto sc = subsolution_margins(cand);
  const auto adm = admissibility_margins(cand, data, gas);
  rep.inequality_margins.insert(order.begin(), order.end());
  rep.inequality_margins.insert(sc.begin(), sc.end());
  rep.inequality_margins.insert(adm.begin(), adm.end());

  bool ok = true;
  for (const auto& [name, r] : rep.equality_residuals_rel)
    if (!(std::abs(r) <= tol)) ok = false;
  for (const auto& [name, m] : order)
    if (!(m > 0.0)) ok = false;
  for (const auto& [name, m] : sc)
    if (!(m > 0.0)) ok = false;

  // Entropy slacks are only forced non-strictly; allow a relative tolerance
  // band below zero, scaled per inequality like the equality residuals.
  const MiddleRegion& a = cand.regions.front();
  const MiddleRegion& b = cand.regions.back();
  const double L1 = entropy_density(gas, a.rho, a.p);
  const double LN = entropy_density(gas, b.rho, b.p);
  const double Lm = entropy_density(data.left, gas);
  const double Lp = entropy_density(data.right, gas);
  const double sl = adm_scale({L1 * a.beta, Lm * data.left.v2, cand.mu.front() * L1,
                               cand.mu.front() * Lm});
  const double sr = adm_scale({Lp * data.right.v2, LN * b.beta, cand.mu.back() * Lp,
                               cand.mu.back() * LN});
  if (!(adm.at("adml") >= -tol * sl)) ok = false;
  if (!(adm.at("admr") >= -tol * sr)) ok = false;
  if (cand.n == 2) {
    const double smid =
        adm_scale({LN * b.beta, L1 * a.beta, cand.mu[1] * LN, cand.mu[1] * L1});
    if (!(adm.at("admm") >= -tol * smid)) ok = false;
  }

  rep.admissibility_strict = true;
  for (const auto& [name, m] : adm)
    if (!(m > 0.0)) rep.admissibility_strict = false;

  rep.passed = ok;
  return rep;
}

SubsolutionCandidate degenerate_candidate(const TwoShockFan& fan) {
  SubsolutionCandidate cand;
  cand.n = 2;
  cand.mu = {fan.sigma_minus, fan.v_M, fan.sigma_plus};
  const double vM = fan.v_M;
  MiddleRegion left{fan.rho_Mminus, 0.0, vM, -(vM * vM) / 2, 0.0, vM * vM, fan.p_M};
  MiddleRegion right{fan.rho_Mplus, 0.0, vM, -(vM * vM) / 2, 0.0, vM * vM, fan.p_M};
  cand.regions = {left, right};
  return cand;
}

}  // namespace fansub
