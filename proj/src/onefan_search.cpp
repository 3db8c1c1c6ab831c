#include "fansub/onefan_search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fansub {

namespace {

// Relative width of the band around rho- == rho+ inside which the
// equal-density closed forms replace the generic ones.
constexpr double kEqualDensityBand = 1e-12;

bool equal_density(const RiemannData& d) {
  return std::abs(d.left.rho - d.right.rho) <=
         kEqualDensityBand * (d.left.rho + d.right.rho);
}

double anchor_velocity(const RiemannData& d, OneFanCase kase) {
  return kase == OneFanCase::CaseI ? d.left.v2 : d.right.v2;
}

// Entropy comparison between the middle region and the stronger outer
// state, as the literal power-form difference. Falls back to a sign-correct
// stand-in from log space when the powers overflow.
double ad12_margin(const OneFanState& st, const RiemannData& d, const GasModel& gas) {
  const double cv = gas.c_v;
  if (!(st.p1 > 0.0)) return -1e30;
  const double lhs = std::pow(st.p1, cv);
  const double rhs = std::pow(st.rho1, cv + 1.0) *
                     std::max(std::pow(d.left.p, cv) / std::pow(d.left.rho, cv + 1.0),
                              std::pow(d.right.p, cv) / std::pow(d.right.rho, cv + 1.0));
  if (std::isfinite(lhs) && std::isfinite(rhs)) return lhs - rhs;
  const double la = cv * std::log(st.p1);
  const double lb = (cv + 1.0) * std::log(st.rho1) +
                    std::max(entropy(d.left, gas), entropy(d.right, gas));
  const double gap = la - lb;
  return (gap > 0.0 ? 1.0 : -1.0) * std::exp(std::min(std::abs(gap), 640.0));
}

ThresholdScanRow scan_row(const RiemannData& data, const GasModel& gas, double rho1,
                          const OneFanConfig& cfg) {
  ThresholdScanRow row;
  row.rho1 = rho1;
  try {
    row.u_bar = threshold_u(data, gas, rho1, cfg).u_bar;
    row.ok = true;
  } catch (const DomainError&) {
    row.u_bar = std::numeric_limits<double>::quiet_NaN();
    row.ok = false;
  }
  return row;
}

}  // namespace

OneFanInvariants invariants(const RiemannData& d) {
  const double rm = d.left.rho, vm = d.left.v2;
  const double rp = d.right.rho, vp = d.right.v2;
  OneFanInvariants out;
  out.R = rm - rp;
  out.A_mom = rm * vm - rp * vp;
  out.H = rm * vm * vm - rp * vp * vp + d.left.p - d.right.p;
  out.u = vm - vp;
  out.B_disc = out.A_mom * out.A_mom - out.R * out.H;
  return out;
}

OneFanCase case_of(const RiemannData& d) {
  require_valid(d);
  if (equal_density(d)) {
    if (d.left.p == d.right.p)
      throw DomainError(ErrorCode::ExcludedCase,
                        "equal densities and equal pressures admit no single fan");
    return d.left.p > d.right.p ? OneFanCase::CaseI : OneFanCase::CaseII;
  }
  return d.left.rho < d.right.rho ? OneFanCase::CaseI : OneFanCase::CaseII;
}

double min_rho1(const RiemannData& d, const GasModel& gas) {
  require_valid(d);
  require_valid(gas);
  const double cv = gas.c_v;
  const double rm = d.left.rho, rp = d.right.rho;
  if (equal_density(d)) return (2.0 * cv + 1.0) * rp;
  if (rm < rp)
    return ((2.0 * cv + 1.0) * rm + rp) / 2 +
           std::sqrt(rp * rp + (4.0 * cv * cv - 1.0) * rp * rm) / 2;
  return (rm + (2.0 * cv + 1.0) * rp) / 2 +
         std::sqrt(rm * rm + (4.0 * cv * cv - 1.0) * rp * rm) / 2;
}

void mu_pair(const RiemannData& d, double rho1, double& mu0, double& mu1) {
  require_valid(d);
  const double rm = d.left.rho, vm = d.left.v2;
  const double rp = d.right.rho, vp = d.right.v2;
  const OneFanInvariants inv = invariants(d);

  if (equal_density(d)) {
    if (inv.u == 0.0)
      throw DomainError(ErrorCode::DegenerateData,
                        "equal-density speeds need a nonzero velocity jump");
    if (!(rho1 > rp))
      throw DomainError(ErrorCode::InfeasibleRho1,
                        "middle density must exceed the outer ones",
                        {{"rho1", rho1}, {"rho_plus", rp}});
    const double shared = (d.left.p - d.right.p) / (rp * inv.u) + vm + vp;
    mu0 = 0.5 * (-rp * inv.u / (rho1 - rp) + shared);
    mu1 = 0.5 * (+rp * inv.u / (rho1 - rp) + shared);
    return;
  }

  if (!(rho1 > rm && rho1 > rp))
    throw DomainError(ErrorCode::InfeasibleRho1,
                      "middle density must exceed the outer ones",
                      {{"rho1", rho1}, {"rho_minus", rm}, {"rho_plus", rp}});
  if (!(inv.B_disc > 0.0))
    throw DomainError(ErrorCode::NonpositiveDiscriminant,
                      "moment discriminant must be positive", {{"B_disc", inv.B_disc}});
  mu0 = (inv.A_mom - std::sqrt(inv.B_disc * (rho1 - rp) / (rho1 - rm))) / inv.R;
  mu1 = (inv.A_mom - std::sqrt(inv.B_disc * (rho1 - rm) / (rho1 - rp))) / inv.R;
}

OneFanState middle_state(const RiemannData& d, const GasModel& gas, double rho1,
                         bool force_excluded) {
  require_valid(d);
  require_valid(gas);

  OneFanState st;
  st.inv = invariants(d);
  st.r_zero = equal_density(d);
  st.rho1 = rho1;
  if (force_excluded && st.r_zero && d.left.p == d.right.p)
    st.kase = OneFanCase::CaseI;  // non-admissible anyway: eps1 comes out zero
  else
    st.kase = case_of(d);

  mu_pair(d, rho1, st.mu0, st.mu1);

  const double rm = d.left.rho, vm = d.left.v2, pm = d.left.p;
  const double rp = d.right.rho, vp = d.right.v2, pp_ = d.right.p;
  const double cv = gas.c_v;

  st.beta = (rm * vm + st.mu0 * (rho1 - rm)) / rho1;
  st.beta_alt = (rp * vp + st.mu1 * (rho1 - rp)) / rho1;

  const double beta_band = 1e-12 * (1.0 + std::abs(st.inv.u));
  if (std::abs(st.beta - vm) <= beta_band || std::abs(vp - st.beta) <= beta_band)
    throw DomainError(ErrorCode::DegenerateBeta,
                      "mean transverse velocity coincides with an outer velocity",
                      {{"beta", st.beta}});

  st.X = rp * rm * (pm - pp_) + (2.0 * cv + 1.0) * rho1 * (rm * pp_ - rp * pm);
  st.Y = (st.beta + vm) / (st.beta - vm) * rp * (rm - rho1) -
         (vp + st.beta) / (vp - st.beta) * rm * (rho1 - rp);
  // Stable pressure-moment form; identical to pp + rp vp^2 - rho1 beta^2
  // + mu1^2 (rho1 - rp) through the right-jump identity for beta.
  st.Z = pp_ + (rho1 - rp) * rp / rho1 * (vp - st.mu1) * (vp - st.mu1);

  const double den_scale = 1.0 + std::abs(st.Y) + rho1 * std::abs(st.inv.R);
  if (st.r_zero) {
    if (std::abs(st.Y) <= 1e-14 * den_scale)
      throw DomainError(ErrorCode::SingularY, "projection coefficient Y vanished",
                        {{"Y", st.Y}});
    st.p1 = st.Z - st.X / st.Y;
    st.eps1 = st.X / (rho1 * st.Y);
  } else {
    const double den = st.Y + rho1 * st.inv.R;
    if (std::abs(den) <= 1e-14 * den_scale)
      throw DomainError(ErrorCode::SingularY, "pressure denominator Y + rho1 R vanished",
                        {{"Y", st.Y}, {"denominator", den}});
    st.p1 = (st.Y * st.Z - st.X) / den;
    st.eps1 = (rho1 * st.inv.R * st.Z + st.X) / (rho1 * den);
  }
  st.eps2 = ((rho1 - rp) * (st.p1 + pp_) + 2.0 * cv * (rho1 * pp_ - rp * st.p1)) /
                (rho1 * rp) +
            ((vp + st.beta) / (vp - st.beta) * (rho1 - rp) / rp - 1.0) * st.eps1;
  return st;
}

std::map<std::string, double> feasibility_margins(const OneFanState& st,
                                                  const RiemannData& d,
                                                  const GasModel& gas) {
  std::map<std::string, double> m;
  m["order01"] = st.mu1 - st.mu0;
  m["vm_minus_mu0"] = d.left.v2 - st.mu0;
  m["mu1_minus_vp"] = st.mu1 - d.right.v2;
  m["p1"] = st.p1;
  m["eps1"] = st.eps1;
  m["eps2"] = st.eps2;
  m["ad12"] = ad12_margin(st, d, gas);
  if (st.r_zero)
    m["ysign"] = st.kase == OneFanCase::CaseI ? -st.Y : st.Y;
  else if (st.inv.R < 0.0)
    m["ysign"] = std::min(-st.Y, -(st.Y + st.rho1 * st.inv.R));
  else
    m["ysign"] = std::min(st.Y, st.Y + st.rho1 * st.inv.R);
  return m;
}

bool feasible(const RiemannData& d, const GasModel& gas, double rho1) {
  try {
    const OneFanState st = middle_state(d, gas, rho1);
    for (const auto& [name, v] : feasibility_margins(st, d, gas))
      if (!(v > 0.0)) return false;
    return true;
  } catch (const DomainError& e) {
    if (e.code() == ErrorCode::BadInput) throw;
    return false;
  }
}

SubsolutionCandidate build_candidate(const OneFanState& st, const RiemannData& d,
                                     const GasModel& gas) {
  const auto m = feasibility_margins(st, d, gas);
  for (const auto& [name, v] : m)
    if (!(v > 0.0))
      throw DomainError(ErrorCode::Infeasible,
                        "construction margins are not all positive", m);

  const double C = st.beta * st.beta + st.eps1 + st.eps2;
  SubsolutionCandidate cand;
  cand.n = 1;
  cand.mu = {st.mu0, st.mu1};
  cand.regions = {MiddleRegion{st.rho1, 0.0, st.beta,
                               C / 2 - st.beta * st.beta - st.eps1, 0.0, C, st.p1}};
  return cand;
}

ThresholdResult threshold_u(const RiemannData& data, const GasModel& gas, double rho1,
                            const OneFanConfig& cfg) {
  require_valid(data);
  require_valid(gas);
  const OneFanCase kase = case_of(data);
  const double mr = min_rho1(data, gas);
  if (!(rho1 >= mr))
    throw DomainError(ErrorCode::InfeasibleRho1,
                      "middle density below the feasibility minimum",
                      {{"rho1", rho1}, {"min_rho1", mr}});

  const double anchor = anchor_velocity(data, kase);
  const auto with_jump = [&](double u) {
    RiemannData d = data;
    if (kase == OneFanCase::CaseI) {
      d.left.v2 = anchor;
      d.right.v2 = anchor - u;
    } else {
      d.right.v2 = anchor;
      d.left.v2 = anchor + u;
    }
    return d;
  };
  const auto feas = [&](double u) { return feasible(with_jump(u), gas, rho1); };

  double u = 1e-3;
  const int max_restarts = 200;
  for (int attempt = 0; attempt < max_restarts; ++attempt) {
    while (!feas(u)) {
      u *= 2.0;
      if (u > cfg.u_cap)
        throw DomainError(ErrorCode::BudgetExhausted,
                          "no feasible velocity jump below the cap",
                          {{"u_cap", cfg.u_cap}, {"rho1", rho1}});
    }
    double lo = u / 2.0, hi = u;
    for (int it = 0; it < 200 && hi - lo > 1e-12 * (1.0 + hi); ++it) {
      const double mid = std::sqrt(lo * hi);
      if (feas(mid))
        hi = mid;
      else
        lo = mid;
    }
    bool confirmed = true;
    for (int i = 1; i <= cfg.confirm_count; ++i) {
      const double uc = hi * std::ldexp(1.0, i);
      if (uc > cfg.u_cap)
        throw DomainError(ErrorCode::BudgetExhausted,
                          "confirmation points exceed the cap",
                          {{"u_cap", cfg.u_cap}, {"u_bar", hi}});
      if (!feas(uc)) {
        confirmed = false;
        u = uc;  // restart the doubling scan above the failed confirmation
        break;
      }
    }
    if (confirmed) {
      ThresholdResult out;
      out.u_bar = hi;
      out.rho1 = rho1;
      const RiemannData at_bar = with_jump(hi);
      out.margins_at_u_bar =
          feasibility_margins(middle_state(at_bar, gas, rho1), at_bar, gas);
      return out;
    }
  }
  throw DomainError(ErrorCode::BudgetExhausted,
                    "threshold confirmation did not stabilize", {{"rho1", rho1}});
}

std::vector<ThresholdScanRow> threshold_scan_serial(const RiemannData& data,
                                                    const GasModel& gas,
                                                    const std::vector<double>& rho1_values,
                                                    const OneFanConfig& cfg) {
  require_valid(data);
  require_valid(gas);
  case_of(data);  // surface ExcludedCase before the batch
  std::vector<ThresholdScanRow> rows(rho1_values.size());
  for (size_t i = 0; i < rho1_values.size(); ++i)
    rows[i] = scan_row(data, gas, rho1_values[i], cfg);
  return rows;
}

std::vector<ThresholdScanRow> threshold_scan(const RiemannData& data, const GasModel& gas,
                                             const std::vector<double>& rho1_values,
                                             const OneFanConfig& cfg) {
  if (!cfg.parallel) return threshold_scan_serial(data, gas, rho1_values, cfg);
  require_valid(data);
  require_valid(gas);
  case_of(data);
  const int n = static_cast<int>(rho1_values.size());
  std::vector<ThresholdScanRow> rows(rho1_values.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (int i = 0; i < n; ++i) rows[static_cast<size_t>(i)] = scan_row(data, gas, rho1_values[static_cast<size_t>(i)], cfg);
  return rows;
}

OneFanResult build_result(const RiemannData& data, const GasModel& gas, double rho1,
                          double tol) {
  OneFanResult out;
  out.state = middle_state(data, gas, rho1);
  out.margins = feasibility_margins(out.state, data, gas);
  out.candidate = build_candidate(out.state, data, gas);
  out.report = verify(out.candidate, data, gas, tol);

  const double w = anchor_velocity(data, out.state.kase);
  out.anchor_shift = w;
  RiemannData anchored = data;
  anchored.left.v2 -= w;
  anchored.right.v2 -= w;
  out.anchor_state = middle_state(anchored, gas, rho1);
  out.anchor_margins = feasibility_margins(out.anchor_state, anchored, gas);
  return out;
}

}  // namespace fansub
