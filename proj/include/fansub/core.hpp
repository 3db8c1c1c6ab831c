#pragma once

#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

namespace fansub {

// Ideal-gas model: a single dimensionless heat-capacity constant.
struct GasModel {
  double c_v = 1.0;
};

// Primitive state (rho, v, p) with a planar 2D velocity.
struct PrimitiveState {
  double rho = 1.0;
  double v1 = 0.0;
  double v2 = 0.0;
  double p = 1.0;
};

// Planar Riemann data: one jump, left/right states. The whole construction
// assumes the normal velocity components vanish (v1 == 0 on both sides).
struct RiemannData {
  PrimitiveState left;
  PrimitiveState right;
};

enum class ErrorCode {
  BadInput,
  NotTwoShock,
  NoBracket,
  DegenerateData,
  HeatCapacityTooSmall,
  SearchExhausted,
  InfeasibleRho1,
  NonpositiveDiscriminant,
  DegenerateBeta,
  SingularY,
  ExcludedCase,
  Infeasible,
  BudgetExhausted,
};

const char* error_code_string(ErrorCode code);

// Domain failure carrying a stable machine-readable code plus optional
// numeric details (e.g. best margins seen by an exhausted search).
class DomainError : public std::runtime_error {
 public:
  DomainError(ErrorCode code, std::string message,
              std::map<std::string, double> details = {})
      : std::runtime_error(std::move(message)),
        code_(code),
        details_(std::move(details)) {}

  ErrorCode code() const { return code_; }
  const char* code_string() const { return error_code_string(code_); }
  const std::map<std::string, double>& details() const { return details_; }

 private:
  ErrorCode code_;
  std::map<std::string, double> details_;
};

inline bool valid(const GasModel& gas) {
  return std::isfinite(gas.c_v) && gas.c_v > 0.0;
}

inline bool valid(const PrimitiveState& s) {
  return std::isfinite(s.rho) && s.rho > 0.0 && std::isfinite(s.p) && s.p > 0.0 &&
         std::isfinite(s.v1) && std::isfinite(s.v2);
}

inline bool valid(const RiemannData& d) {
  return valid(d.left) && valid(d.right) && d.left.v1 == 0.0 && d.right.v1 == 0.0;
}

inline void require_valid(const GasModel& gas) {
  if (!valid(gas)) throw DomainError(ErrorCode::BadInput, "gas model requires c_v > 0");
}

inline void require_valid(const RiemannData& d) {
  if (!valid(d))
    throw DomainError(ErrorCode::BadInput,
                      "states require rho > 0, p > 0, finite v, and v1 == 0");
}

// e = c_v p / rho
inline double internal_energy(const PrimitiveState& s, const GasModel& gas) {
  return gas.c_v * s.p / s.rho;
}

// s = c_v log p - (c_v + 1) log rho
inline double entropy(const GasModel& gas, double rho, double p) {
  return gas.c_v * std::log(p) - (gas.c_v + 1.0) * std::log(rho);
}

inline double entropy(const PrimitiveState& s, const GasModel& gas) {
  return entropy(gas, s.rho, s.p);
}

// L = rho s(rho, p)
inline double entropy_density(const GasModel& gas, double rho, double p) {
  return rho * entropy(gas, rho, p);
}

inline double entropy_density(const PrimitiveState& s, const GasModel& gas) {
  return s.rho * entropy(s, gas);
}

inline double temperature(const PrimitiveState& s) { return s.p / s.rho; }

}  // namespace fansub
