#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "fansub/riemann1d.hpp"

using namespace fansub;

namespace {

RiemannData symmetric_data() {
  RiemannData d;
  d.left = {1.0, 0.0, 1.0, 1.0};
  d.right = {1.0, 0.0, -1.0, 1.0};
  return d;
}

RiemannData asym_data() {
  RiemannData d;
  d.left = {1.0, 0.0, 2.0, 1.5};
  d.right = {2.0, 0.0, -1.0, 0.5};
  return d;
}

RiemannData mirror(const RiemannData& d) {
  RiemannData m;
  m.left = d.right;
  m.right = d.left;
  m.left.v2 = -m.left.v2;
  m.right.v2 = -m.right.v2;
  return m;
}

double rel_err(double x, double ref) { return std::abs(x - ref) / (1.0 + std::abs(ref)); }

}  // namespace

TEST_CASE("symmetric colliding jets: closed-form middle state") {
  // With unit densities and pressures and opposing unit velocities at
  // c_v = 1, the middle-pressure equation reduces to a quadratic with root
  // (7 + sqrt(41)) / 4.
  const GasModel gas{1.0};
  const auto d = symmetric_data();
  REQUIRE(is_two_shock(d, gas));
  const auto fan = solve_two_shock_fan(d, gas);

  const double pM_exact = (7.0 + std::sqrt(41.0)) / 4.0;
  CHECK(rel_err(fan.p_M, pM_exact) < 1e-12);
  CHECK(std::abs(fan.v_M) < 1e-12);
  CHECK(rel_err(fan.rho_Mminus, 1.74031242374328486865) < 1e-12);
  CHECK(rel_err(fan.rho_Mplus, 1.74031242374328486865) < 1e-12);
  CHECK(rel_err(fan.sigma_minus, -1.35078105935821217162) < 1e-12);
  CHECK(rel_err(fan.sigma_plus, 1.35078105935821217162) < 1e-12);

  // Equal middle densities: no contact discontinuity.
  CHECK(!fan.has_contact);
  CHECK(fan.contact_speed == fan.v_M);
}

TEST_CASE("asymmetric data: frozen middle state") {
  const GasModel gas{1.4};
  const auto d = asym_data();
  const auto fan = solve_two_shock_fan(d, gas);
  CHECK(rel_err(fan.v_M, 0.39557393901587372679) < 1e-12);
  CHECK(rel_err(fan.p_M, 6.3565134329981186321) < 1e-12);
  CHECK(rel_err(fan.rho_Mminus, 2.1278747946464345068) < 1e-12);
  CHECK(rel_err(fan.rho_Mplus, 5.9721942549883740374) < 1e-12);
  CHECK(rel_err(fan.sigma_minus, -1.0269474867662147564) < 1e-12);
  CHECK(rel_err(fan.sigma_plus, 1.0982454849823276475) < 1e-12);
  CHECK(fan.has_contact);
}

TEST_CASE("two-shock jump threshold") {
  RiemannData d;
  d.left = {1.0, 0.0, 0.0, 1.5};
  d.right = {2.0, 0.0, 0.0, 0.5};
  CHECK(rel_err(two_shock_jump_threshold(d, GasModel{1.0}), -0.44721359549995793928) <
        1e-13);
  CHECK(rel_err(two_shock_jump_threshold(d, GasModel{1.4}), -0.47519096331149146318) <
        1e-13);

  // Equal pressures: the threshold is exactly zero.
  RiemannData eq;
  eq.left = {1.0, 0.0, 0.0, 1.0};
  eq.right = {3.0, 0.0, 0.0, 1.0};
  CHECK(two_shock_jump_threshold(eq, GasModel{1.0}) == 0.0);
}

TEST_CASE("two-shock classification is strict at the threshold") {
  const GasModel gas{1.0};
  RiemannData d;
  d.left = {1.0, 0.0, 0.0, 1.5};
  d.right = {2.0, 0.0, 0.0, 0.5};
  const double thr = two_shock_jump_threshold(d, gas);

  d.right.v2 = thr;  // jump == threshold: not past it
  CHECK(!is_two_shock(d, gas));
  d.right.v2 = thr - 1e-6;
  CHECK(is_two_shock(d, gas));
  d.right.v2 = thr + 1e-6;
  CHECK(!is_two_shock(d, gas));
}

TEST_CASE("solver throws on data without a two-shock pattern") {
  const GasModel gas{1.0};
  RiemannData d;
  d.left = {1.0, 0.0, 0.0, 1.0};
  d.right = {1.0, 0.0, 0.5, 1.0};  // opening jump
  CHECK(!is_two_shock(d, gas));
  bool threw = false;
  try {
    solve_two_shock_fan(d, gas);
  } catch (const DomainError& e) {
    threw = true;
    CHECK(e.code() == ErrorCode::NotTwoShock);
  }
  CHECK(threw);
}

TEST_CASE("mirror symmetry of the wave fan") {
  const GasModel gas{1.4};
  const auto d = asym_data();
  const auto fan = solve_two_shock_fan(d, gas);
  const auto fan_m = solve_two_shock_fan(mirror(d), gas);
  CHECK(rel_err(fan_m.p_M, fan.p_M) < 1e-12);
  CHECK(rel_err(fan_m.v_M, -fan.v_M) < 1e-12);
  CHECK(rel_err(fan_m.rho_Mminus, fan.rho_Mplus) < 1e-12);
  CHECK(rel_err(fan_m.rho_Mplus, fan.rho_Mminus) < 1e-12);
  CHECK(rel_err(fan_m.sigma_minus, -fan.sigma_plus) < 1e-12);
  CHECK(rel_err(fan_m.sigma_plus, -fan.sigma_minus) < 1e-12);
}

TEST_CASE("jump residuals vanish on randomized two-shock data") {
  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const GasModel gas{0.5 + 2.5 * unit(rng)};
    RiemannData d;
    d.left = {0.1 + 5.0 * unit(rng), 0.0, 2.0 * unit(rng) - 1.0, 0.1 + 5.0 * unit(rng)};
    d.right = {0.1 + 5.0 * unit(rng), 0.0, 0.0, 0.1 + 5.0 * unit(rng)};
    const double thr = two_shock_jump_threshold(d, gas);
    d.right.v2 = d.left.v2 + thr - (0.05 + 4.0 * unit(rng));
    REQUIRE(is_two_shock(d, gas));

    const auto fan = solve_two_shock_fan(d, gas);
    for (const auto& [key, res] : shock_jump_residuals(fan, d, gas)) {
      INFO(key, " trial ", trial);
      CHECK(std::abs(res) < 5e-12);
    }
    CHECK(fan.p_M > std::max(d.left.p, d.right.p));
    CHECK(fan.rho_Mminus > d.left.rho);
    CHECK(fan.rho_Mplus > d.right.rho);
    CHECK(fan.sigma_minus < fan.v_M);
    CHECK(fan.v_M < fan.sigma_plus);
  }
}

TEST_CASE("middle pressure approaches max(p-, p+) as the jump closes on the threshold") {
  const GasModel gas{1.0};
  RiemannData d;
  d.left = {1.0, 0.0, 0.0, 1.5};
  d.right = {2.0, 0.0, 0.0, 0.5};
  const double thr = two_shock_jump_threshold(d, gas);
  double prev_gap = 1e300;
  for (double back : {1e-2, 1e-4, 1e-6, 1e-8}) {
    d.right.v2 = thr - back;
    const auto fan = solve_two_shock_fan(d, gas);
    const double gap = fan.p_M - std::max(d.left.p, d.right.p);
    CHECK(gap > 0.0);
    CHECK(gap < prev_gap);
    prev_gap = gap;
  }
  CHECK(prev_gap < 1e-3);
}

TEST_CASE("middle-pressure equation is strictly decreasing at the root") {
  const GasModel gas{1.4};
  const auto d = asym_data();
  const double pM = solve_p_m(d, gas);
  const double h = 1e-6 * pM;
  CHECK(p_m_equation(pM - h, d, gas) > 0.0);
  CHECK(p_m_equation(pM + h, d, gas) < 0.0);
}
