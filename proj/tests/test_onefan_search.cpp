#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "fansub/onefan_search.hpp"

using namespace fansub;

namespace {

// The three density layouts, anchor velocity zero, c_v = 1.
RiemannData rneg_data(double u) {  // rho- < rho+: left velocity anchored
  RiemannData d;
  d.left = {1.0, 0.0, 0.0, 1.0};
  d.right = {2.0, 0.0, -u, 1.0};
  return d;
}

RiemannData rpos_data(double u) {  // rho- > rho+: right velocity anchored
  RiemannData d;
  d.left = {2.0, 0.0, u, 1.0};
  d.right = {1.0, 0.0, 0.0, 1.0};
  return d;
}

RiemannData rzero_data(double u) {  // equal densities, p- > p+
  RiemannData d;
  d.left = {1.0, 0.0, 0.0, 2.0};
  d.right = {1.0, 0.0, -u, 1.0};
  return d;
}

double rel_err(double x, double ref) { return std::abs(x - ref) / (1.0 + std::abs(ref)); }

constexpr double kMinRho1Contrast = 4.081138830084189666;  // layouts 1:2 and 2:1, c_v = 1
constexpr double kUStarRneg = 8.1841544738540888767;
constexpr double kUStarRzero = 8.9917447468371569954;

}  // namespace

TEST_CASE("jump invariants and the discriminant identity") {
  const auto inv = invariants(rneg_data(2.0));
  CHECK(inv.R == -1.0);
  CHECK(inv.u == 2.0);

  RiemannData sym;
  sym.left = {1.0, 0.0, 1.0, 1.0};
  sym.right = {1.0, 0.0, -1.0, 1.0};
  const auto si = invariants(sym);
  CHECK(si.R == 0.0);
  CHECK(si.A_mom == 2.0);
  CHECK(si.H == 0.0);
  CHECK(si.u == 2.0);
  CHECK(si.B_disc == 4.0);

  std::mt19937 rng(99);
  std::uniform_real_distribution<double> pos(0.2, 5.0);
  std::uniform_real_distribution<double> vel(-4.0, 4.0);
  for (int trial = 0; trial < 200; ++trial) {
    RiemannData d;
    d.left = {pos(rng), 0.0, vel(rng), pos(rng)};
    d.right = {pos(rng), 0.0, vel(rng), pos(rng)};
    const auto i = invariants(d);
    const double alt =
        d.left.rho * d.right.rho * i.u * i.u - i.R * (d.left.p - d.right.p);
    const double scale =
        1.0 + std::abs(d.left.rho * d.right.rho * i.u * i.u) + std::abs(i.R) * 10.0;
    CHECK(std::abs(i.B_disc - alt) < 1e-13 * scale);
  }
}

TEST_CASE("case dispatch and the excluded layout") {
  CHECK(case_of(rneg_data(2.0)) == OneFanCase::CaseI);
  CHECK(case_of(rpos_data(2.0)) == OneFanCase::CaseII);
  CHECK(case_of(rzero_data(2.0)) == OneFanCase::CaseI);

  RiemannData flipped;  // equal densities, p- < p+
  flipped.left = {1.0, 0.0, 0.0, 1.0};
  flipped.right = {1.0, 0.0, -2.0, 3.0};
  CHECK(case_of(flipped) == OneFanCase::CaseII);

  RiemannData same;
  same.left = {1.0, 0.0, 1.0, 1.0};
  same.right = {1.0, 0.0, -1.0, 1.0};
  bool threw = false;
  try {
    case_of(same);
  } catch (const DomainError& e) {
    threw = true;
    CHECK(e.code() == ErrorCode::ExcludedCase);
  }
  CHECK(threw);

  // Forcing the evaluation shows why the layout is excluded: the
  // pressure-jump numerator vanishes identically, so eps1 = 0 and the
  // wedge condition can never be strict. (An antisymmetric velocity pair
  // additionally zeroes Y itself; probe with an asymmetric one.)
  RiemannData skew = same;
  skew.left.v2 = 2.0;
  const auto st = middle_state(skew, GasModel{1.0}, 4.0, true);
  CHECK(std::abs(st.eps1) <= 1e-12);
}

TEST_CASE("minimum middle density in the three layouts") {
  const GasModel gas{1.0};
  CHECK(rel_err(min_rho1(rneg_data(2.0), gas), kMinRho1Contrast) < 1e-14);
  CHECK(rel_err(min_rho1(rpos_data(2.0), gas), kMinRho1Contrast) < 1e-14);
  CHECK(min_rho1(rzero_data(2.0), gas) == 3.0);
}

TEST_CASE("interface speeds: equal-density closed form") {
  RiemannData d;
  d.left = {1.0, 0.0, 1.0, 1.0};
  d.right = {1.0, 0.0, -1.0, 1.0};
  double mu0 = 0.0, mu1 = 0.0;
  mu_pair(d, 4.0, mu0, mu1);
  CHECK(std::abs(mu0 + 1.0 / 3.0) < 1e-14);
  CHECK(std::abs(mu1 - 1.0 / 3.0) < 1e-14);
  CHECK(mu0 < mu1);
}

TEST_CASE("interface speed preconditions") {
  // Below the density ordering bound.
  double a, b;
  CHECK_THROWS_AS(mu_pair(rneg_data(3.0), 1.5, a, b), DomainError);
  bool threw = false;
  try {
    mu_pair(rneg_data(3.0), 1.5, a, b);
  } catch (const DomainError& e) {
    threw = true;
    CHECK(e.code() == ErrorCode::InfeasibleRho1);
  }
  CHECK(threw);
}

TEST_CASE("contrast layout, light side left: frozen threshold and state") {
  const GasModel gas{1.0};
  const double rho1 = 1.25 * min_rho1(rneg_data(1.0), gas);
  CHECK(rel_err(rho1, 5.1014235376052370825) < 1e-13);

  const auto thr = threshold_u(rneg_data(0.0), gas, rho1);
  CHECK(rel_err(thr.u_bar, kUStarRneg) < 1e-9);
  for (const auto& [key, m] : thr.margins_at_u_bar) {
    INFO(key);
    CHECK(m > 0.0);
  }

  // Middle state at twice the threshold (frozen reference).
  const auto st = middle_state(rneg_data(2.0 * kUStarRneg), gas, rho1);
  CHECK(rel_err(st.mu0, -12.607161764914916793) < 1e-12);
  CHECK(rel_err(st.mu1, -6.1167692446968010692) < 1e-12);
  CHECK(rel_err(st.beta, -10.135859064407697027) < 1e-12);
  CHECK(rel_err(st.p1, 103.40874163073070229) < 1e-12);
  CHECK(rel_err(st.eps1, 4.9742337670219021274) < 1e-12);
  CHECK(rel_err(st.eps2, 20.025347212671316316) < 1e-12);
  CHECK(rel_err(st.X, -15.304270612815711248) < 1e-12);
  CHECK(rel_err(st.Y, -21.391986507790954063) < 1e-12);
  CHECK(rel_err(st.Z, 128.78441485136699893) < 1e-12);
  CHECK(std::abs(st.beta - st.beta_alt) < 1e-10 * (1.0 + std::abs(st.beta)));

  const auto m = feasibility_margins(st, rneg_data(2.0 * kUStarRneg), gas);
  for (const auto& [key, v] : m) {
    INFO(key);
    CHECK(v > 0.0);
  }

  const auto cand = build_candidate(st, rneg_data(2.0 * kUStarRneg), gas);
  const auto rep = verify(cand, rneg_data(2.0 * kUStarRneg), gas);
  CHECK(rep.passed);
}

TEST_CASE("contrast layout, light side right: mirrored frozen state") {
  const GasModel gas{1.0};
  const double rho1 = 1.25 * min_rho1(rpos_data(1.0), gas);

  const auto thr = threshold_u(rpos_data(0.0), gas, rho1);
  CHECK(rel_err(thr.u_bar, kUStarRneg) < 1e-9);

  const auto st = middle_state(rpos_data(2.0 * kUStarRneg), gas, rho1);
  CHECK(rel_err(st.mu0, 6.1167692446968010692) < 1e-12);
  CHECK(rel_err(st.mu1, 12.607161764914916793) < 1e-12);
  CHECK(rel_err(st.beta, 10.135859064407697027) < 1e-12);
  CHECK(rel_err(st.p1, 103.40874163073070229) < 1e-12);
  CHECK(rel_err(st.eps1, 4.9742337670219021274) < 1e-12);
  CHECK(rel_err(st.eps2, 20.025347212671316316) < 1e-12);
  CHECK(rel_err(st.X, 15.304270612815711248) < 1e-12);
  CHECK(rel_err(st.Y, 21.391986507790954063) < 1e-12);
  CHECK(rel_err(st.Z, 128.78441485136699893) < 1e-12);

  const auto rep =
      verify(build_candidate(st, rpos_data(2.0 * kUStarRneg), gas),
             rpos_data(2.0 * kUStarRneg), gas);
  CHECK(rep.passed);
}

TEST_CASE("equal densities, pressure drop: frozen threshold and state") {
  const GasModel gas{1.0};
  const double rho1 = 1.25 * min_rho1(rzero_data(1.0), gas);
  CHECK(rho1 == 3.75);

  const auto thr = threshold_u(rzero_data(0.0), gas, rho1);
  CHECK(rel_err(thr.u_bar, kUStarRzero) < 1e-9);

  const auto st = middle_state(rzero_data(2.0 * kUStarRzero), gas, rho1);
  CHECK(st.r_zero);
  CHECK(rel_err(st.mu0, -12.233666828976949524) < 1e-12);
  CHECK(rel_err(st.mu1, -5.6942161040044717089) < 1e-12);
  CHECK(rel_err(st.beta, -8.9713556745830963174) < 1e-12);
  CHECK(rel_err(st.p1, 110.81864521739523820) < 1e-12);
  CHECK(rel_err(st.eps1, 0.24904829592162976042) < 1e-12);
  CHECK(rel_err(st.eps2, 26.696464600439602705) < 1e-12);
  CHECK(st.X == -10.25);
  CHECK(rel_err(st.Y, -10.975113574731929158) < 1e-12);
  CHECK(rel_err(st.Z, 111.75257632710134980) < 1e-12);

  const auto rep =
      verify(build_candidate(st, rzero_data(2.0 * kUStarRzero), gas),
             rzero_data(2.0 * kUStarRzero), gas);
  CHECK(rep.passed);
}

TEST_CASE("equal densities at a wider middle density") {
  // Same layout, rho1 = 4: independent frozen threshold.
  const GasModel gas{1.0};
  const auto thr = threshold_u(rzero_data(0.0), gas, 4.0);
  CHECK(rel_err(thr.u_bar, 9.7090634168715106460) < 1e-9);
}

TEST_CASE("feasibility is an outcome, not an exception") {
  const GasModel gas{1.0};
  const double rho1 = 1.25 * kMinRho1Contrast;
  CHECK(!feasible(rneg_data(1.0), gas, rho1));     // jump far too small
  CHECK(feasible(rneg_data(20.0), gas, rho1));     // comfortably past onset
  CHECK(!feasible(rneg_data(20.0), gas, 1.2));     // middle density too small
  RiemannData same;
  same.left = {1.0, 0.0, 1.0, 1.0};
  same.right = {1.0, 0.0, -1.0, 1.0};
  CHECK(!feasible(same, gas, 4.0));                // excluded layout
}

TEST_CASE("candidate assembly refuses infeasible states") {
  const GasModel gas{1.0};
  const double rho1 = 1.25 * kMinRho1Contrast;
  const auto st = middle_state(rneg_data(1.0), gas, rho1);
  bool threw = false;
  try {
    build_candidate(st, rneg_data(1.0), gas);
  } catch (const DomainError& e) {
    threw = true;
    CHECK(e.code() == ErrorCode::Infeasible);
    CHECK(e.details().size() == 8);
    CHECK(e.details().count("eps2") == 1);
    CHECK(e.details().count("ad12") == 1);
  }
  CHECK(threw);
}

TEST_CASE("threshold scan: parallel kernel matches the serial reference") {
  const GasModel gas{1.0};
  const double mr = kMinRho1Contrast;
  const std::vector<double> rho1s = {0.9 * mr, 1.05 * mr, 1.25 * mr, 2.0 * mr, 4.0 * mr};

  OneFanConfig cfg;
  cfg.parallel = true;
  const auto par = threshold_scan(rneg_data(0.0), gas, rho1s, cfg);
  const auto ser = threshold_scan_serial(rneg_data(0.0), gas, rho1s, cfg);
  REQUIRE(par.size() == rho1s.size());
  REQUIRE(ser.size() == rho1s.size());

  for (size_t i = 0; i < rho1s.size(); ++i) {
    CHECK(par[i].rho1 == ser[i].rho1);
    CHECK(par[i].ok == ser[i].ok);
    CHECK((par[i].u_bar == ser[i].u_bar ||
           (std::isnan(par[i].u_bar) && std::isnan(ser[i].u_bar))));
  }

  // Below the minimum middle density the threshold does not exist.
  CHECK(!par[0].ok);
  CHECK(std::isnan(par[0].u_bar));
  for (size_t i = 1; i < rho1s.size(); ++i) {
    CHECK(par[i].ok);
    CHECK(par[i].u_bar > 0.0);
  }
}

TEST_CASE("threshold search failure modes") {
  const GasModel gas{1.0};
  bool threw = false;
  try {
    threshold_u(rneg_data(0.0), gas, 0.9 * kMinRho1Contrast);
  } catch (const DomainError& e) {
    threw = true;
    CHECK(e.code() == ErrorCode::InfeasibleRho1);
  }
  CHECK(threw);

  RiemannData same;
  same.left = {1.0, 0.0, 0.0, 1.0};
  same.right = {1.0, 0.0, 0.0, 1.0};
  CHECK_THROWS_AS(threshold_u(same, gas, 4.0), DomainError);
}

TEST_CASE("full result carries a boost-invariant anchor block") {
  const GasModel gas{1.0};
  const double rho1 = 1.25 * kMinRho1Contrast;
  const double u = 2.0 * kUStarRneg;

  const auto base = build_result(rneg_data(u), gas, rho1);
  CHECK(base.report.passed);
  CHECK(base.anchor_shift == 0.0);  // anchor velocity already zero

  RiemannData boosted = rneg_data(u);
  boosted.left.v2 += 0.7;
  boosted.right.v2 += 0.7;
  const auto moved = build_result(boosted, gas, rho1);
  CHECK(moved.report.passed);
  CHECK(rel_err(moved.anchor_shift, 0.7) < 1e-14);

  // Speeds shift with the frame...
  CHECK(std::abs(moved.state.mu0 - (base.state.mu0 + 0.7)) < 1e-12);
  CHECK(std::abs(moved.state.mu1 - (base.state.mu1 + 0.7)) < 1e-12);
  CHECK(std::abs(moved.state.beta - (base.state.beta + 0.7)) < 1e-12);
  CHECK(std::abs(moved.candidate.mu[0] - (base.candidate.mu[0] + 0.7)) < 1e-12);

  // ...while the anchor-frame block does not move.
  CHECK(std::abs(moved.anchor_state.p1 - base.anchor_state.p1) < 1e-9);
  CHECK(std::abs(moved.anchor_state.eps1 - base.anchor_state.eps1) < 1e-9);
  CHECK(std::abs(moved.anchor_state.eps2 - base.anchor_state.eps2) < 1e-9);
  for (const auto& [key, m] : moved.anchor_margins) {
    INFO(key);
    CHECK(std::abs(m - base.anchor_margins.at(key)) < 1e-9);
  }
}

TEST_CASE("feasibility margins expose the eight gate quantities") {
  const GasModel gas{1.0};
  const double rho1 = 1.25 * kMinRho1Contrast;
  const auto d = rneg_data(2.0 * kUStarRneg);
  const auto m = feasibility_margins(middle_state(d, gas, rho1), d, gas);
  for (const char* key : {"order01", "vm_minus_mu0", "mu1_minus_vp", "p1", "eps1", "eps2",
                          "ad12", "ysign"}) {
    INFO(key);
    CHECK(m.count(key) == 1);
  }
  CHECK(m.size() == 8);
}
