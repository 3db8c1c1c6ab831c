#include "fansub/json_io.hpp"

#include <cmath>
#include <cstdio>

namespace fansub {

const char* error_code_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::BadInput: return "bad_input";
    case ErrorCode::NotTwoShock: return "not_two_shock";
    case ErrorCode::NoBracket: return "no_bracket";
    case ErrorCode::DegenerateData: return "degenerate_data";
    case ErrorCode::HeatCapacityTooSmall: return "heat_capacity_too_small";
    case ErrorCode::SearchExhausted: return "search_exhausted";
    case ErrorCode::InfeasibleRho1: return "infeasible_rho1";
    case ErrorCode::NonpositiveDiscriminant: return "nonpositive_discriminant";
    case ErrorCode::DegenerateBeta: return "degenerate_beta";
    case ErrorCode::SingularY: return "singular_y";
    case ErrorCode::ExcludedCase: return "excluded_case";
    case ErrorCode::Infeasible: return "infeasible";
    case ErrorCode::BudgetExhausted: return "budget_exhausted";
  }
  return "unknown";
}

// ------------------------------------------------------------------ parsing

PrimitiveState parse_primitive_state(const nlohmann::json& j) {
  PrimitiveState s;
  s.rho = j.at("rho").get<double>();
  s.v1 = j.value("v1", 0.0);
  s.v2 = j.at("v2").get<double>();
  s.p = j.at("p").get<double>();
  return s;
}

RiemannInput parse_riemann_input(const nlohmann::json& j) {
  RiemannInput in;
  in.data.left = parse_primitive_state(j.at("left"));
  in.data.right = parse_primitive_state(j.at("right"));
  in.gas.c_v = j.at("c_v").get<double>();
  return in;
}

SubsolutionCandidate parse_candidate(const nlohmann::json& j) {
  SubsolutionCandidate cand;
  cand.n = j.at("n").get<int>();
  for (const auto& m : j.at("mu")) cand.mu.push_back(m.get<double>());
  for (const auto& r : j.at("regions")) {
    MiddleRegion reg;
    reg.rho = r.at("rho").get<double>();
    reg.alpha = r.at("alpha").get<double>();
    reg.beta = r.at("beta").get<double>();
    reg.gamma = r.at("gamma").get<double>();
    reg.delta = r.at("delta").get<double>();
    reg.C = r.at("C").get<double>();
    reg.p = r.at("p").get<double>();
    cand.regions.push_back(reg);
  }
  return cand;
}

VerifyRequest parse_verify_request(const nlohmann::json& j) {
  VerifyRequest req;
  const RiemannInput in = parse_riemann_input(j.at("data"));
  req.data = in.data;
  req.gas = in.gas;
  req.candidate = parse_candidate(j.at("candidate"));
  req.tol = j.value("tol", 1e-9);
  return req;
}

// -------------------------------------------------------------- serializing

namespace {

nlohmann::ordered_json map_to_json(const std::map<std::string, double>& m) {
  nlohmann::ordered_json out = nlohmann::ordered_json::object();
  for (const auto& [k, v] : m) out[k] = v;
  return out;
}

void dump_value(const nlohmann::ordered_json& j, std::string& out, int depth) {
  const std::string pad(static_cast<size_t>(depth) * 2, ' ');
  const std::string pad_in(static_cast<size_t>(depth + 1) * 2, ' ');
  switch (j.type()) {
    case nlohmann::ordered_json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad_in + nlohmann::json(it.key()).dump() + ": ";
        dump_value(it.value(), out, depth + 1);
      }
      out += "\n" + pad + "}";
      return;
    }
    case nlohmann::ordered_json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      bool first = true;
      for (const auto& el : j) {
        if (!first) out += ",\n";
        first = false;
        out += pad_in;
        dump_value(el, out, depth + 1);
      }
      out += "\n" + pad + "]";
      return;
    }
    case nlohmann::ordered_json::value_t::number_float: {
      const double x = j.get<double>();
      if (!std::isfinite(x)) {
        out += "null";
        return;
      }
      out += format_double(x);
      return;
    }
    default:
      out += j.dump();  // integers, booleans, strings (escaped), null
      return;
  }
}

}  // namespace

std::string format_double(double x) {
  if (x == 0.0) return "0";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string dump_json(const nlohmann::ordered_json& j) {
  std::string out;
  dump_value(j, out, 0);
  return out;
}

nlohmann::ordered_json state_to_json(const PrimitiveState& s) {
  nlohmann::ordered_json j;
  j["rho"] = s.rho;
  j["v1"] = s.v1;
  j["v2"] = s.v2;
  j["p"] = s.p;
  return j;
}

nlohmann::ordered_json data_to_json(const RiemannData& d, const GasModel& gas) {
  nlohmann::ordered_json j;
  j["left"] = state_to_json(d.left);
  j["right"] = state_to_json(d.right);
  j["c_v"] = gas.c_v;
  return j;
}

nlohmann::ordered_json fan_to_json(const TwoShockFan& fan) {
  nlohmann::ordered_json j;
  j["p_M"] = fan.p_M;
  j["v_M"] = fan.v_M;
  j["rho_M_minus"] = fan.rho_Mminus;
  j["rho_M_plus"] = fan.rho_Mplus;
  j["sigma_minus"] = fan.sigma_minus;
  j["sigma_plus"] = fan.sigma_plus;
  j["contact_speed"] = fan.contact_speed;
  j["has_contact"] = fan.has_contact;
  return j;
}

nlohmann::ordered_json candidate_to_json(const SubsolutionCandidate& cand) {
  nlohmann::ordered_json j;
  j["n"] = cand.n;
  j["mu"] = cand.mu;
  nlohmann::ordered_json regions = nlohmann::ordered_json::array();
  for (const auto& r : cand.regions) {
    nlohmann::ordered_json reg;
    reg["rho"] = r.rho;
    reg["alpha"] = r.alpha;
    reg["beta"] = r.beta;
    reg["gamma"] = r.gamma;
    reg["delta"] = r.delta;
    reg["C"] = r.C;
    reg["p"] = r.p;
    regions.push_back(reg);
  }
  j["regions"] = regions;
  return j;
}

nlohmann::ordered_json report_to_json(const VerificationReport& rep) {
  nlohmann::ordered_json j;
  j["passed"] = rep.passed;
  j["admissibility_strict"] = rep.admissibility_strict;
  j["tolerance"] = rep.tolerance_used;
  j["equality_residuals"] = map_to_json(rep.equality_residuals);
  j["equality_residuals_rel"] = map_to_json(rep.equality_residuals_rel);
  j["inequality_margins"] = map_to_json(rep.inequality_margins);
  return j;
}

nlohmann::ordered_json twofan_result_to_json(const TwoFanResult& res, const GasModel& gas) {
  nlohmann::ordered_json j;
  j["shift"] = res.shift;
  j["rest_data"] = data_to_json(res.rest_data, gas);
  j["rest_fan"] = fan_to_json(res.rest_fan);
  nlohmann::ordered_json grid;
  grid["j"] = res.j;
  grid["k"] = res.k;
  grid["eps"] = res.coeffs.eps;
  grid["delta"] = res.coeffs.delta;
  grid["eps_max"] = res.coeffs.eps_max;
  j["grid"] = grid;
  nlohmann::ordered_json co;
  co["A"] = res.coeffs.A_eps;
  co["B"] = res.coeffs.B_eps;
  co["D"] = res.coeffs.D_eps;
  co["mu0"] = res.coeffs.mu0;
  co["mu1"] = res.coeffs.mu1;
  co["mu2"] = res.coeffs.mu2;
  co["C1"] = res.coeffs.C1;
  co["C2"] = res.coeffs.C2;
  co["gamma1"] = res.coeffs.gamma1;
  co["gamma2"] = res.coeffs.gamma2;
  j["coefficients"] = co;
  j["certificate"] = candidate_to_json(res.certificate);
  j["certificate_margins"] = map_to_json(res.certificate_margins);
  j["certificate_report"] = report_to_json(res.certificate_report);
  j["candidate"] = candidate_to_json(res.candidate);
  j["report"] = report_to_json(res.report);
  return j;
}

nlohmann::ordered_json onefan_state_to_json(const OneFanState& st) {
  nlohmann::ordered_json j;
  j["case"] = st.kase == OneFanCase::CaseI ? "i" : "ii";
  j["equal_density"] = st.r_zero;
  j["rho1"] = st.rho1;
  j["R"] = st.inv.R;
  j["A_mom"] = st.inv.A_mom;
  j["H"] = st.inv.H;
  j["u"] = st.inv.u;
  j["B_disc"] = st.inv.B_disc;
  j["mu0"] = st.mu0;
  j["mu1"] = st.mu1;
  j["beta"] = st.beta;
  j["beta_alt"] = st.beta_alt;
  j["X"] = st.X;
  j["Y"] = st.Y;
  j["Z"] = st.Z;
  j["p1"] = st.p1;
  j["eps1"] = st.eps1;
  j["eps2"] = st.eps2;
  return j;
}

nlohmann::ordered_json onefan_result_to_json(const OneFanResult& res) {
  nlohmann::ordered_json j;
  j["state"] = onefan_state_to_json(res.state);
  j["margins"] = map_to_json(res.margins);
  j["candidate"] = candidate_to_json(res.candidate);
  j["report"] = report_to_json(res.report);
  j["anchor_shift"] = res.anchor_shift;
  j["anchor_state"] = onefan_state_to_json(res.anchor_state);
  j["anchor_margins"] = map_to_json(res.anchor_margins);
  return j;
}

nlohmann::ordered_json threshold_result_to_json(const ThresholdResult& res) {
  nlohmann::ordered_json j;
  j["u_bar"] = res.u_bar;
  j["rho1"] = res.rho1;
  j["margins_at_u_bar"] = map_to_json(res.margins_at_u_bar);
  return j;
}

nlohmann::ordered_json error_to_json(const DomainError& err) {
  nlohmann::ordered_json j;
  j["error"] = err.code_string();
  j["message"] = err.what();
  j["details"] = map_to_json(err.details());
  return j;
}

std::string twofan_scan_csv(const std::vector<TwoFanScanRow>& rows) {
  std::string out =
      "j,k,eps,delta,order01,order12,tr1,tr2,ev1_1,ev2_1,ev1_2,ev2_2,adml,admr,feasible\n";
  for (const auto& r : rows) {
    out += std::to_string(r.j) + "," + std::to_string(r.k) + "," + format_double(r.eps) +
           "," + format_double(r.delta) + "," + format_double(r.order01) + "," +
           format_double(r.order12) + "," + format_double(r.tr1) + "," +
           format_double(r.tr2) + "," + format_double(r.ev1_1) + "," +
           format_double(r.ev2_1) + "," + format_double(r.ev1_2) + "," +
           format_double(r.ev2_2) + "," + format_double(r.adml) + "," +
           format_double(r.admr) + "," + (r.feasible ? "1" : "0") + "\n";
  }
  return out;
}

std::string threshold_scan_csv(const std::vector<ThresholdScanRow>& rows) {
  std::string out = "rho1,u_bar\n";
  for (const auto& r : rows)
    out += format_double(r.rho1) + "," + format_double(r.u_bar) + "\n";
  return out;
}

}  // namespace fansub
