#include "doplab/report.hpp"

#include <sstream>

namespace doplab {

namespace {

std::string status_of(const VerificationReport& r) {
  if (!r.applicable) return "not applicable";
  return r.passed ? "passed" : "failed";
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

Json params_to_json(const OperatorParams<Real>& params) {
  Json j;
  j["m"] = params.m;
  j["omega"] = to_decimal(params.omega);
  j["n"] = params.N;
  return j;
}

Json report_to_json(const VerificationReport& report) {
  Json j;
  j["identity"] = report.identity;
  j["params"] = params_to_json(report.params);
  j["max_residual"] = to_decimal(report.max_residual);
  j["tolerance"] = to_decimal(report.tolerance);
  j["gamma"] = report.truncation_bound;
  j["tail_bound"] = to_decimal(report.tail_bound);
  j["passed"] = report.passed;
  j["applicable"] = report.applicable;
  j["status"] = status_of(report);
  j["notes"] = report.notes;
  return j;
}

std::string reports_to_csv(const std::vector<VerificationReport>& reports) {
  std::ostringstream os;
  os << "identity,m,omega,n,max_residual,tolerance,gamma,status\n";
  for (const auto& r : reports) {
    os << csv_field(r.identity) << ',' << r.params.m << ',' << to_decimal(r.params.omega) << ',' << r.params.N << ','
       << to_decimal(r.max_residual) << ',' << to_decimal(r.tolerance) << ',' << r.truncation_bound << ','
       << csv_field(status_of(r)) << '\n';
  }
  return os.str();
}

Json operator_to_json(const DiscreteOperator<Real>& op, long long beta_max, unsigned precision_bits) {
  Json meta;
  meta["m"] = op.params.m;
  meta["omega"] = to_decimal(op.params.omega);
  meta["N"] = op.params.N;
  meta["h"] = to_decimal(op.params.h());
  meta["precision_bits"] = precision_bits;
  Json roots = Json::array();
  for (const Real& l : op.lambdas) roots.push_back(to_decimal(l));
  Json amps = Json::array();
  for (const Real& a : op.amps) amps.push_back(to_decimal(a));
  meta["roots"] = roots;
  meta["amps"] = amps;
  meta["C"] = to_decimal(op.c_const);
  meta["p_lead"] = to_decimal(op.p_lead);
  meta["scale"] = to_decimal(op.scale);

  Json table = Json::array();
  for (long long b = 0; b <= beta_max; ++b) {
    Json row;
    row["beta"] = b;
    row["value"] = to_decimal(dm_value(op, b));
    table.push_back(row);
  }
  Json j;
  j["metadata"] = meta;
  j["table"] = table;
  return j;
}

std::string operator_table_csv(const DiscreteOperator<Real>& op, long long beta_max) {
  std::ostringstream os;
  os << "beta,value\n";
  for (long long b = 0; b <= beta_max; ++b) os << b << ',' << to_decimal(dm_value(op, b)) << '\n';
  return os.str();
}

std::string coefficients_csv(const std::vector<std::string>& coeffs) {
  std::ostringstream os;
  os << "s,coefficient\n";
  for (std::size_t s = 0; s < coeffs.size(); ++s) os << s << ',' << coeffs[s] << '\n';
  return os.str();
}

std::vector<std::string> coefficient_strings(const Poly<Real>& p) {
  std::vector<std::string> out;
  for (int s = 0; s <= p.degree(); ++s) out.push_back(to_decimal(p[s]));
  return out;
}

std::vector<std::string> coefficient_strings(const EFPoly& e) {
  std::vector<std::string> out;
  for (const auto& c : e.coeffs) out.push_back(c.str());
  return out;
}

}  // namespace doplab
