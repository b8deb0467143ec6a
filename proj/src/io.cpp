#include "gk/io.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "gk/errors.hpp"

namespace gk {

namespace {

std::string at(const std::string& path, int line) {
  return path + ":" + std::to_string(line) + ": ";
}

}  // namespace

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

Eigen::MatrixXd read_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);

  std::string line;
  if (!std::getline(in, line)) throw ParseError(at(path, 1) + "expected dimension, got empty file");
  std::istringstream head(line);
  long long n = 0;
  if (!(head >> n)) throw ParseError(at(path, 1) + "expected integer dimension");
  std::string extra;
  if (head >> extra) throw ParseError(at(path, 1) + "unexpected token '" + extra + "' after dimension");
  if (n < 1) throw ParseError(at(path, 1) + "dimension must be positive, got " + std::to_string(n));
  if (n > 100000) throw ParseError(at(path, 1) + "dimension " + std::to_string(n) + " is too large");

  Eigen::MatrixXd m(n, n);
  int line_no = 1;
  for (int i = 0; i < n; ++i) {
    if (!std::getline(in, line)) {
      std::ostringstream msg;
      msg << at(path, line_no + 1) << "expected row " << i + 1 << " of " << n
          << ", got end of file";
      throw ParseError(msg.str());
    }
    ++line_no;
    std::istringstream row(line);
    for (int j = 0; j < n; ++j) {
      double v = 0.0;
      if (!(row >> v)) {
        std::ostringstream msg;
        msg << at(path, line_no) << "expected " << n << " values, found " << j;
        throw ParseError(msg.str());
      }
      m(i, j) = v;
    }
    if (row >> extra) {
      std::ostringstream msg;
      msg << at(path, line_no) << "unexpected token '" << extra << "' after " << n << " values";
      throw ParseError(msg.str());
    }
  }
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") != std::string::npos)
      throw ParseError(at(path, line_no) + "unexpected content after the matrix");
  }
  return m;
}

void write_matrix(const std::string& path, const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    std::ostringstream msg;
    msg << "expected a nonempty square matrix, got " << m.rows() << "x" << m.cols();
    throw NotSquareError(msg.str());
  }
  std::ofstream out(path);
  if (!out) throw InputError("cannot open " + path + " for writing");
  out << m.rows() << "\n";
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) {
      if (j > 0) out << ' ';
      out << format_real(m(i, j));
    }
    out << "\n";
  }
  if (!out) throw InputError("failed while writing " + path);
}

Json solution_to_json(const FactoredSolution& sol) {
  Json j;
  j["n"] = sol.n();
  j["k"] = sol.k();
  if (std::isnan(sol.objective))
    j["objective"] = nullptr;  // explicit: NaN has no JSON number form
  else
    j["objective"] = sol.objective;
  j["feasibility_residual"] = feasibility_residual(sol);
  j["subunit"] = sol.subunit;
  Json rows = Json::array();
  for (int i = 0; i < sol.n(); ++i) {
    Json row = Json::array();
    for (int c = 0; c < sol.k(); ++c) row.push_back(sol.x(i, c));
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  j["solver"] = {{"sweeps", sol.stats.sweeps},
                 {"converged", sol.stats.converged},
                 {"seed", sol.stats.seed}};
  return j;
}

FactoredSolution solution_from_json(const Json& j) {
  try {
    const int n = j.at("n").get<int>();
    const int k = j.at("k").get<int>();
    if (n < 1 || k < 1) throw ParseError("solution dimensions must be positive");
    const Json& rows = j.at("rows");
    if (static_cast<int>(rows.size()) != n) {
      std::ostringstream msg;
      msg << "expected " << n << " rows, got " << rows.size();
      throw ParseError(msg.str());
    }
    FactoredSolution sol;
    sol.x.resize(n, k);
    for (int i = 0; i < n; ++i) {
      const Json& row = rows.at(i);
      if (static_cast<int>(row.size()) != k) {
        std::ostringstream msg;
        msg << "row " << i << " has " << row.size() << " entries, expected " << k;
        throw ParseError(msg.str());
      }
      for (int c = 0; c < k; ++c) sol.x(i, c) = row.at(c).get<double>();
    }
    const Json& obj = j.at("objective");
    sol.objective = obj.is_null() ? std::numeric_limits<double>::quiet_NaN() : obj.get<double>();
    sol.subunit = j.value("subunit", false);
    if (j.contains("solver")) {
      const Json& meta = j.at("solver");
      sol.stats.sweeps = meta.value("sweeps", 0);
      sol.stats.converged = meta.value("converged", true);
      sol.stats.seed = meta.value("seed", std::uint64_t{0});
    }
    return sol;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad solution JSON: ") + e.what());
  }
}

Json report_to_json(const RankReductionReport& report) {
  return Json{{"rank_before", report.rank_before},
              {"rank_after", report.rank_after},
              {"steps", report.steps},
              {"objective_before", report.objective_before},
              {"objective_after", report.objective_after},
              {"objective_drift", report.objective_drift},
              {"diag_drift", report.diag_drift},
              {"subunit", report.subunit},
              {"rank_detection_ambiguous", report.rank_detection_ambiguous}};
}

Json sign_vector_to_json(const SignVector& sv) {
  Json x = Json::array();
  for (int i = 0; i < sv.x.size(); ++i) x.push_back(sv.x(i));
  return Json{{"value", sv.value}, {"x", std::move(x)}};
}

Json summary_to_json(const RoundingSummary& summary) {
  return Json{{"trials", summary.trials},
              {"mean_value", summary.mean_value},
              {"std_error", summary.std_error},
              {"best", sign_vector_to_json(summary.best)},
              {"guaranteed_ratio", summary.guaranteed_ratio},
              {"achieved_ratio", summary.achieved_ratio},
              {"bound_applicable", summary.bound_applicable}};
}

Json gap_record_to_json(const GapRecord& rec) {
  return Json{{"p", rec.p},
              {"n", rec.n},
              {"seed", rec.seed},
              {"sdp_value", rec.sdp_value},
              {"discrete_value", rec.discrete_value},
              {"ratio", rec.ratio},
              {"method", rec.method}};
}

std::string gap_csv_header() { return "p,n,seed,sdp_value,discrete_value,ratio,method"; }

std::string gap_record_csv(const GapRecord& rec) {
  std::ostringstream out;
  out << rec.p << ',' << rec.n << ',' << rec.seed << ',' << format_real(rec.sdp_value) << ','
      << format_real(rec.discrete_value) << ',' << format_real(rec.ratio) << ',' << rec.method;
  return out.str();
}

}  // namespace gk
