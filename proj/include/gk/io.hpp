#pragma once

#include <string>

#include <Eigen/Core>
#include <json.hpp>

#include "gk/gap.hpp"
#include "gk/rank_reduction.hpp"
#include "gk/rounding.hpp"
#include "gk/solver.hpp"

namespace gk {

// Key order is part of the output contract (schema-stable CLI output).
using Json = nlohmann::ordered_json;

// 17 significant digits: enough to round-trip any double exactly.
std::string format_real(double v);

// Matrix text format: line 1 is n, then n lines of n whitespace-separated
// reals. Errors name the offending file and line.
Eigen::MatrixXd read_matrix(const std::string& path);
void write_matrix(const std::string& path, const Eigen::MatrixXd& m);

Json solution_to_json(const FactoredSolution& sol);
FactoredSolution solution_from_json(const Json& j);

Json report_to_json(const RankReductionReport& report);
Json summary_to_json(const RoundingSummary& summary);
Json sign_vector_to_json(const SignVector& sv);
Json gap_record_to_json(const GapRecord& rec);

std::string gap_csv_header();
std::string gap_record_csv(const GapRecord& rec);

}  // namespace gk
