#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fansub/json_io.hpp"

namespace {

using namespace fansub;

struct CommonOpts {
  std::string input = "-";
  std::string output = "-";
  std::optional<double> c_v;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--input", o.input, "input JSON path, or - for stdin")
      ->capture_default_str();
  cmd->add_option("--output", o.output, "output path, or - for stdout")
      ->capture_default_str();
  cmd->add_option("--c-v", o.c_v, "override the heat capacity c_v from the input");
}

std::string read_input(const std::string& path) {
  std::ostringstream ss;
  if (path == "-") {
    ss << std::cin.rdbuf();
  } else {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open input file: " + path);
    ss << f.rdbuf();
  }
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    if (!std::cout) throw std::runtime_error("failed writing to stdout");
    return;
  }
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open output file: " + path);
  f << text;
  if (!f) throw std::runtime_error("failed writing output file: " + path);
}

RiemannInput load_riemann(const CommonOpts& o) {
  const nlohmann::json j = nlohmann::json::parse(read_input(o.input));
  RiemannInput in;
  in.data.left = parse_primitive_state(j.at("left"));
  in.data.right = parse_primitive_state(j.at("right"));
  in.gas.c_v = o.c_v ? *o.c_v : j.at("c_v").get<double>();
  return in;
}

std::vector<double> geometric_grid(double lo, double hi, int count) {
  std::vector<double> out;
  out.reserve(static_cast<size_t>(count));
  if (count == 1) {
    out.push_back(lo);
    return out;
  }
  const double ratio = std::log(hi / lo) / (count - 1);
  for (int i = 0; i < count; ++i) out.push_back(lo * std::exp(ratio * i));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "fan subsolution construction and verification for the planar compressible "
      "Euler Riemann problem"};
  app.require_subcommand(1);

  CommonOpts solve_o, verify_o, two_o, one_o, thr_o, scan_o;
  std::optional<double> verify_tol;
  TwoFanConfig two_cfg;
  bool two_scan = false;
  std::optional<double> one_rho1, thr_rho1;
  double one_tol = 1e-9;
  OneFanConfig thr_cfg;
  std::optional<double> scan_rho1_min, scan_rho1_max;
  int scan_count = 25;

  auto* solve = app.add_subcommand(
      "solve-riemann", "solve the 1D Riemann problem in the two-shock regime");
  add_common(solve, solve_o);

  auto* verify_cmd = app.add_subcommand(
      "verify", "check a fan candidate against data: jump equalities, interface "
                "ordering, wedge conditions, entropy slacks");
  add_common(verify_cmd, verify_o);
  verify_cmd->add_option("--tol", verify_tol, "verification tolerance (overrides the input)");

  auto* two = app.add_subcommand(
      "search-2fan", "build an admissible 2-fan subsolution by perturbing the "
                     "two-shock wave fan on a dyadic offset grid");
  add_common(two, two_o);
  two->add_option("--max-j", two_cfg.max_j, "pressure-offset grid depth")
      ->check(CLI::Range(1, 200))
      ->capture_default_str();
  two->add_option("--max-k", two_cfg.max_k, "density-offset grid depth")
      ->check(CLI::Range(0, 200))
      ->capture_default_str();
  two->add_option("--margin-floor", two_cfg.margin_floor,
                  "accept cells whose margins all exceed this floor")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  two->add_option("--tol", two_cfg.tol, "verification tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  two->add_flag("--scan", two_scan,
                "emit the full (j, k) margin table as CSV instead of searching");

  auto* one = app.add_subcommand(
      "search-1fan", "build an admissible single-fan subsolution at a chosen "
                     "middle density (default 1.25 * the feasibility minimum)");
  add_common(one, one_o);
  one->add_option("--rho1", one_rho1, "middle density")->check(CLI::PositiveNumber);
  one->add_option("--tol", one_tol, "verification tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  auto* thr = app.add_subcommand(
      "threshold-u", "certified feasibility onset of the single fan in the "
                     "velocity jump u at fixed middle density");
  add_common(thr, thr_o);
  thr->add_option("--rho1", thr_rho1,
                  "middle density (default 1.25 * the feasibility minimum)")
      ->check(CLI::PositiveNumber);
  thr->add_option("--u-cap", thr_cfg.u_cap, "abort the scan past this jump")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  thr->add_option("--confirm", thr_cfg.confirm_count,
                  "feasibility re-checks at u_bar * 2^i")
      ->check(CLI::Range(0, 64))
      ->capture_default_str();

  auto* scan = app.add_subcommand(
      "threshold-scan", "threshold-u over a geometric grid of middle densities, "
                        "emitted as CSV (rho1, u_bar)");
  add_common(scan, scan_o);
  scan->add_option("--rho1-min", scan_rho1_min,
                   "grid start (default 1.02 * the feasibility minimum)")
      ->check(CLI::PositiveNumber);
  scan->add_option("--rho1-max", scan_rho1_max,
                   "grid end (default 8 * the feasibility minimum)")
      ->check(CLI::PositiveNumber);
  scan->add_option("--rho1-count", scan_count, "grid size")
      ->check(CLI::Range(1, 100000))
      ->capture_default_str();
  scan->add_option("--u-cap", thr_cfg.u_cap, "abort each scan past this jump")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  scan->add_option("--confirm", thr_cfg.confirm_count,
                   "feasibility re-checks at u_bar * 2^i")
      ->check(CLI::Range(0, 64))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (solve->parsed()) {
      const RiemannInput in = load_riemann(solve_o);
      const TwoShockFan fan = solve_two_shock_fan(in.data, in.gas);
      nlohmann::ordered_json out;
      out["fan"] = fan_to_json(fan);
      out["jump_residuals"] = [&] {
        nlohmann::ordered_json r = nlohmann::ordered_json::object();
        for (const auto& [k, v] : shock_jump_residuals(fan, in.data, in.gas)) r[k] = v;
        return r;
      }();
      write_output(solve_o.output, dump_json(out) + "\n");
    } else if (verify_cmd->parsed()) {
      const nlohmann::json j = nlohmann::json::parse(read_input(verify_o.input));
      VerifyRequest req = parse_verify_request(j);
      if (verify_o.c_v) req.gas.c_v = *verify_o.c_v;
      if (verify_tol) req.tol = *verify_tol;
      const VerificationReport rep = verify(req.candidate, req.data, req.gas, req.tol);
      write_output(verify_o.output, dump_json(report_to_json(rep)) + "\n");
    } else if (two->parsed()) {
      const RiemannInput in = load_riemann(two_o);
      if (two_scan) {
        write_output(two_o.output, twofan_scan_csv(scan_grid(in.data, in.gas, two_cfg)));
      } else {
        const TwoFanResult res = search(in.data, in.gas, two_cfg);
        write_output(two_o.output, dump_json(twofan_result_to_json(res, in.gas)) + "\n");
      }
    } else if (one->parsed()) {
      const RiemannInput in = load_riemann(one_o);
      const double rho1 = one_rho1 ? *one_rho1 : 1.25 * min_rho1(in.data, in.gas);
      const OneFanResult res = build_result(in.data, in.gas, rho1, one_tol);
      write_output(one_o.output, dump_json(onefan_result_to_json(res)) + "\n");
    } else if (thr->parsed()) {
      const RiemannInput in = load_riemann(thr_o);
      const double rho1 = thr_rho1 ? *thr_rho1 : 1.25 * min_rho1(in.data, in.gas);
      const ThresholdResult res = threshold_u(in.data, in.gas, rho1, thr_cfg);
      write_output(thr_o.output, dump_json(threshold_result_to_json(res)) + "\n");
    } else if (scan->parsed()) {
      const RiemannInput in = load_riemann(scan_o);
      const double mr = min_rho1(in.data, in.gas);
      const double lo = scan_rho1_min ? *scan_rho1_min : 1.02 * mr;
      const double hi = scan_rho1_max ? *scan_rho1_max : 8.0 * mr;
      if (!(lo > 0.0) || !(hi >= lo))
        throw DomainError(ErrorCode::BadInput, "need 0 < rho1-min <= rho1-max",
                          {{"rho1_min", lo}, {"rho1_max", hi}});
      const auto rows = threshold_scan(in.data, in.gas, geometric_grid(lo, hi, scan_count),
                                       thr_cfg);
      write_output(scan_o.output, threshold_scan_csv(rows));
    }
  } catch (const DomainError& e) {
    std::cerr << dump_json(error_to_json(e)) << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
