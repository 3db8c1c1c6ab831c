#include "fansub/twofan_search.hpp"

#include <cmath>
#include <limits>

namespace fansub {

namespace {

// Interface speeds at offset eps without throwing: false when the offset
// leaves the admissible window (middle densities past the outer ones,
// nonpositive discriminant, vanishing A).
bool try_mu(const TwoShockFan& fan, const RiemannData& data, double eps, double& mu0,
            double& mu1, double& mu2) {
  const double rm = data.left.rho, vm = data.left.v2;
  const double rp = data.right.rho, vp = data.right.v2;
  const double r1 = fan.rho_Mminus + eps;
  const double r2 = fan.rho_Mplus - eps;
  if (!(r1 - rm > 0.0) || !(r2 - rp > 0.0)) return false;
  double A, B, D;
  eval_abd(fan, data, eps, A, B, D);
  if (!(B > 0.0) || A == 0.0) return false;
  const double u = vm - vp;
  mu0 = (D + rm * rp * r2 * u - std::sqrt(r1 * r1 * (r2 - rp) / (r1 - rm) * B)) / A;
  mu1 = (D - std::sqrt((r1 - rm) * (r2 - rp) * B)) / A;
  mu2 = (D + rm * rp * r1 * u - std::sqrt(r2 * r2 * (r1 - rm) / (r2 - rp) * B)) / A;
  return std::isfinite(mu0) && std::isfinite(mu1) && std::isfinite(mu2);
}

bool cell_margins_nothrow(const TwoShockFan& fan, const RiemannData& data, const GasModel& gas,
                          double eps, double delta, std::map<std::string, double>& out) {
  double mu0, mu1, mu2;
  if (!try_mu(fan, data, eps, mu0, mu1, mu2)) return false;
  const double p1 = fan.p_M - delta;
  if (!(p1 > 0.0)) return false;

  double C1, C2, g1, g2;
  c_gamma(fan, data, gas, eps, delta, C1, C2, g1, g2);

  const double r1 = fan.rho_Mminus + eps;
  const double r2 = fan.rho_Mplus - eps;
  const double L1 = entropy_density(gas, r1, p1);
  const double L2 = entropy_density(gas, r2, p1);
  const double Lm = entropy_density(data.left, gas);
  const double Lp = entropy_density(data.right, gas);
  const double vm = data.left.v2;
  const double vp = data.right.v2;

  out["order01"] = mu1 - mu0;
  out["order12"] = mu2 - mu1;
  out["tr1"] = C1 - mu1 * mu1;
  out["tr2"] = C2 - mu1 * mu1;
  out["ev1_1"] = C1 / 2 + g1;
  out["ev2_1"] = C1 / 2 - mu1 * mu1 - g1;
  out["ev1_2"] = C2 / 2 + g2;
  out["ev2_2"] = C2 / 2 - mu1 * mu1 - g2;
  out["adml"] = (L1 * mu1 - Lm * vm) - mu0 * (L1 - Lm);
  out["admr"] = (Lp * vp - L2 * mu1) - mu2 * (Lp - L2);
  return true;
}

TwoFanScanRow make_row(const TwoShockFan& fan, const RiemannData& data, const GasModel& gas,
                       int j, int k, double eps_cap, double margin_floor) {
  TwoFanScanRow row;
  row.j = j;
  row.k = k;
  row.delta = fan.p_M * std::ldexp(1.0, -j);
  row.eps = eps_cap * std::ldexp(1.0, -k);
  std::map<std::string, double> m;
  if (cell_margins_nothrow(fan, data, gas, row.eps, row.delta, m)) {
    row.order01 = m["order01"];
    row.order12 = m["order12"];
    row.tr1 = m["tr1"];
    row.tr2 = m["tr2"];
    row.ev1_1 = m["ev1_1"];
    row.ev2_1 = m["ev2_1"];
    row.ev1_2 = m["ev1_2"];
    row.ev2_2 = m["ev2_2"];
    row.adml = m["adml"];
    row.admr = m["admr"];
    row.feasible = true;
    for (const auto& [name, v] : m)
      if (!(v > margin_floor)) row.feasible = false;
  } else {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    row.order01 = row.order12 = row.tr1 = row.tr2 = nan;
    row.ev1_1 = row.ev2_1 = row.ev1_2 = row.ev2_2 = row.adml = row.admr = nan;
    row.feasible = false;
  }
  return row;
}

void check_preconditions(const RiemannData& data, const GasModel& gas) {
  require_valid(gas);
  require_valid(data);
  if (!(gas.c_v > 0.5))
    throw DomainError(ErrorCode::HeatCapacityTooSmall,
                      "the perturbation family needs c_v > 1/2", {{"c_v", gas.c_v}});
}

}  // namespace

TwoShockFan shift_fan(const TwoShockFan& fan, double w) {
  TwoShockFan out = fan;
  out.v_M -= w;
  out.sigma_minus -= w;
  out.sigma_plus -= w;
  out.contact_speed -= w;
  return out;
}

std::pair<RiemannData, double> shift_to_rest_frame(const RiemannData& data,
                                                   const TwoShockFan& fan) {
  const double w = fan.v_M;
  RiemannData shifted = data;
  shifted.left.v2 -= w;
  shifted.right.v2 -= w;
  return {shifted, w};
}

void eval_abd(const TwoShockFan& fan, const RiemannData& data, double eps, double& A,
              double& B, double& D) {
  const double rm = data.left.rho, vm = data.left.v2, pm = data.left.p;
  const double rp = data.right.rho, vp = data.right.v2, pp_ = data.right.p;
  const double r1 = fan.rho_Mminus + eps;
  const double r2 = fan.rho_Mplus - eps;
  A = rm * r1 * (r2 - rp) - rp * r2 * (r1 - rm);
  B = rm * rp * r1 * r2 * (vm - vp) * (vm - vp) - (pm - pp_) * A;
  D = vm * rm * r1 * (r2 - rp) - vp * rp * r2 * (r1 - rm);
}

void mu_speeds(const TwoShockFan& fan, const RiemannData& data, double eps, double& mu0,
               double& mu1, double& mu2) {
  if (!try_mu(fan, data, eps, mu0, mu1, mu2))
    throw DomainError(ErrorCode::DegenerateData,
                      "interface speeds are undefined at this density offset",
                      {{"eps", eps}});
}

double eps_max(const TwoShockFan& fan, const RiemannData& data, const GasModel& gas) {
  (void)gas;
  const double rm = data.left.rho;
  const double rp = data.right.rho;
  const double rMm = fan.rho_Mminus;
  const double rMp = fan.rho_Mplus;

  double cap = rMp - rp;
  if (!(cap > 0.0))
    throw DomainError(ErrorCode::DegenerateData, "no density-offset headroom above rho+",
                      {{"rho_Mplus", rMp}, {"rho_plus", rp}});

  // A(eps) is the quadratic (rp - rm) eps^2 + lin eps + A0; a root inside
  // (0, cap) caps the window because the speeds blow up there.
  const double a2 = rp - rm;
  const double lin = -(2.0 * rm * rp + (rm - rp) * (rMm - rMp));
  const double A0 = rm * rMm * (rMp - rp) - rp * rMp * (rMm - rm);
  double roots[2];
  int nroots = 0;
  if (a2 == 0.0) {
    if (lin != 0.0) roots[nroots++] = -A0 / lin;
  } else {
    const double disc = lin * lin - 4.0 * a2 * A0;
    if (disc >= 0.0) {
      const double sq = std::sqrt(disc);
      roots[nroots++] = (-lin - sq) / (2.0 * a2);
      roots[nroots++] = (-lin + sq) / (2.0 * a2);
    }
  }
  for (int i = 0; i < nroots; ++i)
    if (roots[i] > 0.0 && roots[i] < cap) cap = roots[i];

  // Inside the remaining window, B > 0 and the speed ordering can still
  // fail; scan interior samples and bisect onto the first failure.
  const auto usable = [&](double e) {
    double mu0, mu1, mu2;
    return try_mu(fan, data, e, mu0, mu1, mu2) && mu0 < mu1 && mu1 < mu2;
  };
  const int nscan = 512;
  double first_bad = -1.0;
  for (int i = 1; i < nscan; ++i) {
    const double e = cap * i / nscan;
    if (!usable(e)) {
      first_bad = e;
      break;
    }
  }
  if (first_bad >= 0.0) {
    double lo = first_bad - cap / nscan;
    double hi = first_bad;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (usable(mid))
        lo = mid;
      else
        hi = mid;
    }
    cap = lo;
  }

  const double out = 0.999 * cap;
  if (!(out > 1e-14))
    throw DomainError(ErrorCode::DegenerateData, "usable density-offset window collapsed",
                      {{"eps_cap", cap}});
  return out;
}

void c_gamma(const TwoShockFan& fan, const RiemannData& data, const GasModel& gas, double eps,
             double delta, double& C1, double& C2, double& gamma1, double& gamma2) {
  const double cv = gas.c_v;
  const double rm = data.left.rho, vm = data.left.v2, pm = data.left.p;
  const double rp = data.right.rho, vp = data.right.v2, pp_ = data.right.p;
  const double pM = fan.p_M;
  const double r1 = fan.rho_Mminus + eps;
  const double r2 = fan.rho_Mplus - eps;

  double mu0, mu1, mu2;
  mu_speeds(fan, data, eps, mu0, mu1, mu2);

  C1 = 2.0 / (r1 * (mu0 - mu1)) *
       (-mu0 * (cv * (pM - delta - pm) - 0.5 * rm * vm * vm) +
        mu1 * (cv + 1.0) * (pM - delta) - (0.5 * rm * vm * vm + (cv + 1.0) * pm) * vm);
  C2 = 2.0 / (r2 * (mu2 - mu1)) *
       (-mu2 * (cv * (pM - delta - pp_) - 0.5 * rp * vp * vp) +
        mu1 * (cv + 1.0) * (pM - delta) - (0.5 * rp * vp * vp + (cv + 1.0) * pp_) * vp);
  gamma1 = (r1 * C1 / 2 - rm * vm * vm + pM - delta - pm - mu0 * (r1 * mu1 - rm * vm)) / r1;
  gamma2 = (r2 * C2 / 2 - rp * vp * vp + pM - delta - pp_ - mu2 * (r2 * mu1 - rp * vp)) / r2;
}

std::map<std::string, double> cell_margins(const TwoShockFan& fan, const RiemannData& data,
                                           const GasModel& gas, double eps, double delta) {
  std::map<std::string, double> out;
  if (!cell_margins_nothrow(fan, data, gas, eps, delta, out))
    throw DomainError(ErrorCode::DegenerateData,
                      "margins are undefined at this grid cell", {{"eps", eps}, {"delta", delta}});
  return out;
}

SubsolutionCandidate assemble_candidate(const TwoShockFan& fan, const RiemannData& data,
                                        const GasModel& gas, double eps, double delta) {
  double mu0, mu1, mu2;
  mu_speeds(fan, data, eps, mu0, mu1, mu2);
  double C1, C2, g1, g2;
  c_gamma(fan, data, gas, eps, delta, C1, C2, g1, g2);

  const double p1 = fan.p_M - delta;
  SubsolutionCandidate cand;
  cand.n = 2;
  cand.mu = {mu0, mu1, mu2};
  cand.regions = {MiddleRegion{fan.rho_Mminus + eps, 0.0, mu1, g1, 0.0, C1, p1},
                  MiddleRegion{fan.rho_Mplus - eps, 0.0, mu1, g2, 0.0, C2, p1}};
  return cand;
}

TwoFanResult search(const RiemannData& data, const GasModel& gas, const TwoFanConfig& cfg) {
  check_preconditions(data, gas);
  if (cfg.max_j < 1 || cfg.max_k < 0)
    throw DomainError(ErrorCode::BadInput, "grid depths must satisfy max_j >= 1, max_k >= 0");

  const TwoShockFan fan0 = solve_two_shock_fan(data, gas);
  TwoFanResult out;
  auto [rest, w] = shift_to_rest_frame(data, fan0);
  out.shift = w;
  out.rest_data = rest;
  out.rest_fan = shift_fan(fan0, w);

  const double em = eps_max(out.rest_fan, rest, gas);

  // Walk (j, k) lexicographically and take the first cell whose margins all
  // clear the floor; the cells are cheap closed forms, so the walk is serial
  // and early-exits.
  int hit_j = -1, hit_k = -1;
  double best_min = -std::numeric_limits<double>::infinity();
  int best_j = -1, best_k = -1;
  std::map<std::string, double> margins;
  for (int j = 1; j <= cfg.max_j && hit_j < 0; ++j) {
    const double delta = out.rest_fan.p_M * std::ldexp(1.0, -j);
    for (int k = 0; k <= cfg.max_k; ++k) {
      const double eps = em * std::ldexp(1.0, -k);
      std::map<std::string, double> m;
      if (!cell_margins_nothrow(out.rest_fan, rest, gas, eps, delta, m)) continue;
      double mn = std::numeric_limits<double>::infinity();
      for (const auto& [name, v] : m) mn = std::min(mn, v);
      if (mn > best_min) {
        best_min = mn;
        best_j = j;
        best_k = k;
      }
      if (mn > cfg.margin_floor) {
        hit_j = j;
        hit_k = k;
        margins = m;
        break;
      }
    }
  }
  if (hit_j < 0)
    throw DomainError(ErrorCode::SearchExhausted,
                      "no grid cell cleared the margin floor",
                      {{"best_min_margin", best_min},
                       {"best_j", static_cast<double>(best_j)},
                       {"best_k", static_cast<double>(best_k)},
                       {"margin_floor", cfg.margin_floor}});

  out.j = hit_j;
  out.k = hit_k;
  const double delta = out.rest_fan.p_M * std::ldexp(1.0, -hit_j);
  const double eps = em * std::ldexp(1.0, -hit_k);

  TwoFanCoefficients& c = out.coeffs;
  c.eps = eps;
  c.delta = delta;
  c.eps_max = em;
  eval_abd(out.rest_fan, rest, eps, c.A_eps, c.B_eps, c.D_eps);
  mu_speeds(out.rest_fan, rest, eps, c.mu0, c.mu1, c.mu2);
  c_gamma(out.rest_fan, rest, gas, eps, delta, c.C1, c.C2, c.gamma1, c.gamma2);

  out.certificate = assemble_candidate(out.rest_fan, rest, gas, eps, delta);
  out.certificate_margins = margins;
  out.certificate_report = verify(out.certificate, rest, gas, cfg.tol);

  // Same grid cell, evaluated with the input-frame velocities. eps_max and
  // the cell margins' gate live in the rest frame; this candidate satisfies
  // the jump equalities in the input frame, with its own (frame-dependent)
  // wedge margins reported as found.
  out.candidate = assemble_candidate(fan0, data, gas, eps, delta);
  out.report = verify(out.candidate, data, gas, cfg.tol);
  return out;
}

std::vector<TwoFanScanRow> scan_grid_serial(const RiemannData& data, const GasModel& gas,
                                            const TwoFanConfig& cfg) {
  check_preconditions(data, gas);
  const TwoShockFan fan0 = solve_two_shock_fan(data, gas);
  auto [rest, w] = shift_to_rest_frame(data, fan0);
  const TwoShockFan fan = shift_fan(fan0, w);
  const double em = eps_max(fan, rest, gas);

  std::vector<TwoFanScanRow> rows(static_cast<size_t>(cfg.max_j) * (cfg.max_k + 1));
  for (int j = 1; j <= cfg.max_j; ++j)
    for (int k = 0; k <= cfg.max_k; ++k)
      rows[static_cast<size_t>(j - 1) * (cfg.max_k + 1) + k] =
          make_row(fan, rest, gas, j, k, em, cfg.margin_floor);
  return rows;
}

std::vector<TwoFanScanRow> scan_grid(const RiemannData& data, const GasModel& gas,
                                     const TwoFanConfig& cfg) {
  if (!cfg.parallel) return scan_grid_serial(data, gas, cfg);
  check_preconditions(data, gas);
  const TwoShockFan fan0 = solve_two_shock_fan(data, gas);
  auto [rest, w] = shift_to_rest_frame(data, fan0);
  const TwoShockFan fan = shift_fan(fan0, w);
  const double em = eps_max(fan, rest, gas);

  const int nk = cfg.max_k + 1;
  const int ncells = cfg.max_j * nk;
  std::vector<TwoFanScanRow> rows(static_cast<size_t>(ncells));
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (int idx = 0; idx < ncells; ++idx) {
    const int j = 1 + idx / nk;
    const int k = idx % nk;
    rows[static_cast<size_t>(idx)] = make_row(fan, rest, gas, j, k, em, cfg.margin_floor);
  }
  return rows;
}

}  // namespace fansub
