#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "doplab/discrete_operator.hpp"
#include "doplab/euler_frobenius.hpp"
#include "doplab/verify.hpp"

namespace doplab {

using Json = nlohmann::ordered_json;

// Every Real is written as a decimal string carrying all working digits.

Json params_to_json(const OperatorParams<Real>& params);

/// {identity, params:{m,omega,n}, max_residual, tolerance, gamma, passed,
///  applicable, status, notes}
Json report_to_json(const VerificationReport& report);

/// identity,m,omega,n,max_residual,tolerance,gamma,status
std::string reports_to_csv(const std::vector<VerificationReport>& reports);

/// {metadata:{m, omega, N, h, precision_bits, roots, amps, C, p_lead, scale},
///  table:[{beta, value}]} for β = 0..beta_max.
Json operator_to_json(const DiscreteOperator<Real>& op, long long beta_max, unsigned precision_bits);

/// beta,value
std::string operator_table_csv(const DiscreteOperator<Real>& op, long long beta_max);

/// s,coefficient
std::string coefficients_csv(const std::vector<std::string>& coeffs);

std::vector<std::string> coefficient_strings(const Poly<Real>& p);
std::vector<std::string> coefficient_strings(const EFPoly& e);

}  // namespace doplab
