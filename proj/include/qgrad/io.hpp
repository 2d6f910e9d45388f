#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "qgrad/analysis.hpp"
#include "qgrad/matrices.hpp"
#include "qgrad/polylog.hpp"
#include "qgrad/solver1d.hpp"
#include "qgrad/spectral.hpp"
#include "qgrad/state.hpp"

namespace qgrad {

using Json = nlohmann::ordered_json;

// "%.17g"; every artifact float goes through this.
std::string format_double(double x);
// JSON text with floats at 17 significant digits; non-finite values become null.
std::string dump_json(const Json& j, int indent = 2);

Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

GasStatistics statistics_from_json(const Json& j);

Json to_json(const EquilibriumParams& eq);
EquilibriumParams equilibrium_from_json(const Json& j);
Json to_json(const MomentState13& s);
MomentState13 state13_from_json(const Json& j);
Json to_json(const MomentState5& s);
MomentState5 state5_from_json(const Json& j);
Json to_json(const PolylogSet& li);
Json to_json(const HyperbolicityVerdict& v);
Json to_json(const NSFReport& r);
Json to_json(const LinearizationReport& r);
Json to_json(const AppendixCoeffs& c);
Json to_json(const SimConfig& c);
SimConfig sim_config_from_json(const Json& j);
Json grid_metadata(const RegionGrid& grid);

// Row-major CSV with a header of variable names.
std::string matrix_csv(const Eigen::MatrixXd& A, const std::vector<std::string>& names);
// x, y, class_code, boundary; x fastest.
std::string region_csv(const RegionGrid& grid);
// z, branch_id, lambda_hat.
std::string sweep_csv(const std::vector<SweepRow>& rows);
// x, rho, u1, p11, q1, p.
std::string snapshot_csv(const SimState& state, const SimConfig& config);
std::string ledger_csv(const std::vector<LedgerRow>& ledger);

}  // namespace qgrad
