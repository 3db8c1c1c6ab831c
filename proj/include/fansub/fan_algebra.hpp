#pragma once

#include <vector>

#include "fansub/core.hpp"
#include "fansub/riemann1d.hpp"

namespace fansub {

// One wedge of a fan candidate: density, mean velocity (alpha, beta), the
// traceless symmetric fluctuation matrix [[gamma, delta], [delta, -gamma]],
// the kinetic-energy density bound C, and the pressure.
struct MiddleRegion {
  double rho = 1.0;
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double delta = 0.0;
  double C = 1.0;
  double p = 1.0;
};

// An N-fan candidate: N+1 strictly increasing interface speeds and N regions.
struct SubsolutionCandidate {
  int n = 0;
  std::vector<double> mu;
  std::vector<MiddleRegion> regions;
};

struct VerificationReport {
  std::map<std::string, double> equality_residuals;      // raw LHS - RHS
  std::map<std::string, double> equality_residuals_rel;  // raw / (1 + max |term|)
  std::map<std::string, double> inequality_margins;      // order gaps, sc, adm (raw)
  bool passed = false;
  // True when the entropy inequalities hold strictly (margin > 0), not just
  // within tolerance; the jump conditions only force them non-strictly.
  bool admissibility_strict = false;
  double tolerance_used = 0.0;
};

bool well_formed(const SubsolutionCandidate& cand);

// Rankine-Hugoniot residuals of every interface equation, keyed
// rhl1..rhl4 (left), rhr1..rhr4 (right), and rhm1..rhm4 (middle, n = 2).
std::map<std::string, double> rh_residuals(const SubsolutionCandidate& cand,
                                           const RiemannData& data, const GasModel& gas,
                                           bool relative = false);

// Wedge interior conditions, keyed sc1_i (trace form C - alpha^2 - beta^2)
// and sc2_i (determinant form) for i = 1..n.
std::map<std::string, double> subsolution_margins(const SubsolutionCandidate& cand);

// Entropy-inequality slacks (RHS - LHS), keyed adml / admr / admm.
std::map<std::string, double> admissibility_margins(const SubsolutionCandidate& cand,
                                                    const RiemannData& data,
                                                    const GasModel& gas);

// Interface speed-ordering gaps, keyed order01 (and order12 for n = 2).
std::map<std::string, double> order_margins(const SubsolutionCandidate& cand);

// Full check: equalities within tol (relative), ordering and wedge conditions
// strictly positive, entropy slacks >= -tol relative. Failure is a report
// outcome, never an exception.
VerificationReport verify(const SubsolutionCandidate& cand, const RiemannData& data,
                          const GasModel& gas, double tol = 1e-9);

// The exact 1D wave fan recast as a (non-strict) 2-fan candidate: saturates
// both wedge conditions, so verify() reports it as failed.
SubsolutionCandidate degenerate_candidate(const TwoShockFan& fan);

}  // namespace fansub
