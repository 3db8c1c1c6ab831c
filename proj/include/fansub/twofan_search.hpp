#pragma once

#include <utility>
#include <vector>

#include "fansub/fan_algebra.hpp"

namespace fansub {

struct TwoFanConfig {
  int max_j = 64;                // pressure-offset grid depth, delta = p_M 2^-j
  int max_k = 64;                // density-offset grid depth, eps = eps_max 2^-k
  double margin_floor = 1e-12;   // accepted cells need every margin above this
  double tol = 1e-9;             // verification tolerance
  bool parallel = true;          // evaluate grid cells with OpenMP
};

// Closed-form pieces evaluated at one (eps, delta) cell.
struct TwoFanCoefficients {
  double eps = 0.0, delta = 0.0;
  double A_eps = 0.0, B_eps = 0.0, D_eps = 0.0;
  double mu0 = 0.0, mu1 = 0.0, mu2 = 0.0;
  double C1 = 0.0, C2 = 0.0, gamma1 = 0.0, gamma2 = 0.0;
  double eps_max = 0.0;
};

struct TwoFanResult {
  double shift = 0.0;           // velocity removed to reach the contact rest frame
  RiemannData rest_data;        // data in that frame
  TwoShockFan rest_fan;         // its wave fan (v_M == 0 by construction)
  TwoFanCoefficients coeffs;    // accepted cell, rest frame
  int j = 0, k = 0;             // accepted grid indices
  // Certificate: the candidate in the rest frame, where the feasibility
  // margins are gated; boost-invariant up to data rounding.
  SubsolutionCandidate certificate;
  std::map<std::string, double> certificate_margins;
  VerificationReport certificate_report;
  // The same construction evaluated directly with the input-frame
  // velocities: satisfies every jump equality in that frame, but its wedge
  // margins are frame-dependent and may be weaker than the certificate's.
  SubsolutionCandidate candidate;
  VerificationReport report;
};

// One margin row of a grid scan (CSV export).
struct TwoFanScanRow {
  int j = 0, k = 0;
  double eps = 0.0, delta = 0.0;
  double order01 = 0.0, order12 = 0.0;
  double tr1 = 0.0, tr2 = 0.0;            // C_i - mu1^2
  double ev1_1 = 0.0, ev2_1 = 0.0;        // diagonal factors, region 1
  double ev1_2 = 0.0, ev2_2 = 0.0;        // diagonal factors, region 2
  double adml = 0.0, admr = 0.0;
  bool feasible = false;
};

// Remove the contact speed from both velocities; returns shifted data and
// the shift. The shifted fan is produced by subtracting the shift from the
// wave speeds rather than re-solving.
std::pair<RiemannData, double> shift_to_rest_frame(const RiemannData& data,
                                                   const TwoShockFan& fan);
TwoShockFan shift_fan(const TwoShockFan& fan, double w);

// The three auxiliary polynomials of the perturbation family.
void eval_abd(const TwoShockFan& fan, const RiemannData& data, double eps, double& A,
              double& B, double& D);

// Largest admissible density offset: keeps B > 0, the middle densities on
// the correct side of the outer ones, A nonzero, and the interface speeds
// ordered, with a 0.999 safety shrink. Throws DegenerateData.
double eps_max(const TwoShockFan& fan, const RiemannData& data, const GasModel& gas);

// Interface speeds at offset eps (requires B(eps) > 0, A(eps) != 0).
void mu_speeds(const TwoShockFan& fan, const RiemannData& data, double eps, double& mu0,
               double& mu1, double& mu2);

// Energy constants and fluctuation entries at offsets (eps, delta).
void c_gamma(const TwoShockFan& fan, const RiemannData& data, const GasModel& gas, double eps,
             double delta, double& C1, double& C2, double& gamma1, double& gamma2);

// The ten feasibility margins gated by the search at one cell.
std::map<std::string, double> cell_margins(const TwoShockFan& fan, const RiemannData& data,
                                           const GasModel& gas, double eps, double delta);

// Assemble the candidate at (eps, delta) in the frame of fan/data.
SubsolutionCandidate assemble_candidate(const TwoShockFan& fan, const RiemannData& data,
                                        const GasModel& gas, double eps, double delta);

// Full search: shift to the rest frame, walk the (delta, eps) grid in
// lexicographic (j, k) order, accept the first cell whose margins all clear
// the floor, and report both the rest-frame certificate and the input-frame
// candidate. Throws HeatCapacityTooSmall / NotTwoShock / DegenerateData /
// SearchExhausted.
TwoFanResult search(const RiemannData& data, const GasModel& gas, const TwoFanConfig& cfg = {});

// Margin table over the whole grid in row-major (j, k) order. scan_grid
// evaluates cells with OpenMP when available and cfg.parallel is set;
// scan_grid_serial is the plain-loop reference the tests and the benchmark
// compare against. Both produce identical rows.
std::vector<TwoFanScanRow> scan_grid(const RiemannData& data, const GasModel& gas,
                                     const TwoFanConfig& cfg = {});
std::vector<TwoFanScanRow> scan_grid_serial(const RiemannData& data, const GasModel& gas,
                                            const TwoFanConfig& cfg = {});

}  // namespace fansub
