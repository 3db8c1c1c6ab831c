#pragma once

#include <vector>

#include "fansub/fan_algebra.hpp"

namespace fansub {

// Which outer state anchors the single-fan construction: CaseI fixes the
// left velocity and opens the jump by lowering the right one, CaseII the
// mirror image. Dispatch: rho- < rho+ (or equal densities with p- > p+)
// selects CaseI; the mirror selects CaseII; fully symmetric data admit no
// single-fan construction at all.
enum class OneFanCase { CaseI, CaseII };

struct OneFanConfig {
  double u_cap = 1e12;     // abort threshold scans past this velocity jump
  int confirm_count = 8;   // feasibility re-checks at u_bar * 2^i
  double tol = 1e-9;       // verification tolerance
  bool parallel = true;    // evaluate threshold scans with OpenMP
};

// Jump invariants of the outer pair (frame-dependent through the moments).
struct OneFanInvariants {
  double R = 0.0;       // rho- - rho+
  double A_mom = 0.0;   // rho- v- - rho+ v+
  double H = 0.0;       // rho- v-^2 - rho+ v+^2 + p- - p+
  double u = 0.0;       // v- - v+
  double B_disc = 0.0;  // A_mom^2 - R H
};

// Closed-form middle state of the single fan at a chosen middle density.
struct OneFanState {
  OneFanInvariants inv;
  OneFanCase kase = OneFanCase::CaseI;
  bool r_zero = false;
  double rho1 = 0.0;
  double mu0 = 0.0, mu1 = 0.0;
  double beta = 0.0;      // from the left jump condition
  double beta_alt = 0.0;  // from the right one; equal up to rounding
  double X = 0.0, Y = 0.0, Z = 0.0;
  double p1 = 0.0;
  double eps1 = 0.0, eps2 = 0.0;
};

struct ThresholdResult {
  double u_bar = 0.0;
  double rho1 = 0.0;
  std::map<std::string, double> margins_at_u_bar;
};

struct ThresholdScanRow {
  double rho1 = 0.0;
  double u_bar = 0.0;
  bool ok = false;  // false rows carry NaN u_bar (threshold unattainable)
};

// Everything the CLI reports for one construction: the state and candidate
// in the caller's frame, plus the same construction re-derived in the frame
// where the anchor velocity vanishes (that block is boost-invariant).
struct OneFanResult {
  OneFanState state;
  std::map<std::string, double> margins;
  SubsolutionCandidate candidate;
  VerificationReport report;
  double anchor_shift = 0.0;
  OneFanState anchor_state;
  std::map<std::string, double> anchor_margins;
};

OneFanInvariants invariants(const RiemannData& data);

// Throws ExcludedCase when both density and pressure agree across the jump.
OneFanCase case_of(const RiemannData& data);

// Smallest admissible middle density for the given outer densities and c_v.
double min_rho1(const RiemannData& data, const GasModel& gas);

// The two interface speeds at middle density rho1 (the equal-density branch
// is selected by a relative band on rho- - rho+). Throws InfeasibleRho1 /
// NonpositiveDiscriminant / DegenerateData; never ExcludedCase.
void mu_pair(const RiemannData& data, double rho1, double& mu0, double& mu1);

// Full middle state. Throws like mu_pair plus DegenerateBeta / SingularY,
// and ExcludedCase unless force_excluded (which evaluates the closed forms
// anyway; they return eps1 == 0, so no admissible fan).
OneFanState middle_state(const RiemannData& data, const GasModel& gas, double rho1,
                         bool force_excluded = false);

// The eight feasibility margins: order01, vm_minus_mu0, mu1_minus_vp, p1,
// eps1, eps2, ad12 (entropy comparison in literal power form), ysign.
std::map<std::string, double> feasibility_margins(const OneFanState& st,
                                                  const RiemannData& data,
                                                  const GasModel& gas);

// True when the construction exists and every margin is strictly positive;
// domain failures (including the excluded case) count as infeasible rather
// than throwing. Invalid inputs still throw BadInput.
bool feasible(const RiemannData& data, const GasModel& gas, double rho1);

// Candidate assembly at a feasible state. Throws Infeasible otherwise, with
// the margins in the error details.
SubsolutionCandidate build_candidate(const OneFanState& st, const RiemannData& data,
                                     const GasModel& gas);

// Certified feasibility onset in the velocity jump u at fixed rho1: the
// anchor velocity is kept from `data` (left for CaseI, right for CaseII)
// and the other velocity is opened to width u. Doubling scan from 1e-3,
// geometric bisection onto the onset, then confirmation at u_bar * 2^i for
// i = 1..confirm_count; a failed confirmation restarts the scan above the
// failure. Throws InfeasibleRho1 (rho1 below min_rho1), ExcludedCase, or
// BudgetExhausted (scan passed u_cap).
ThresholdResult threshold_u(const RiemannData& data, const GasModel& gas, double rho1,
                            const OneFanConfig& cfg = {});

// threshold_u over a batch of middle densities; rows keep input order.
// scan_serial is the plain-loop reference; the OpenMP version must produce
// identical rows. Rows whose threshold search fails carry ok = false.
std::vector<ThresholdScanRow> threshold_scan(const RiemannData& data, const GasModel& gas,
                                             const std::vector<double>& rho1_values,
                                             const OneFanConfig& cfg = {});
std::vector<ThresholdScanRow> threshold_scan_serial(const RiemannData& data,
                                                    const GasModel& gas,
                                                    const std::vector<double>& rho1_values,
                                                    const OneFanConfig& cfg = {});

// State + margins + candidate + verification in the caller's frame, plus
// the anchor-frame block. Throws Infeasible when the margins fail.
OneFanResult build_result(const RiemannData& data, const GasModel& gas, double rho1,
                          double tol = 1e-9);

}  // namespace fansub
