#pragma once

#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <string>

#include <Eigen/Core>

#include "gk/rng.hpp"
#include "gk/solver.hpp"

namespace gktest {

// Factor with rows drawn uniformly on the sphere.
inline gk::FactoredSolution random_unit_rows(int n, int k, std::uint64_t seed) {
  gk::Rng rng(seed);
  gk::FactoredSolution sol;
  sol.x.resize(n, k);
  for (int i = 0; i < n; ++i) sol.x.row(i) = rng.unit_vector(k).transpose();
  return sol;
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  out << content;
}

struct CliResult {
  int code = -1;
  std::string out;
};

// Runs the gkopt binary with the given arguments, capturing stdout.
// Redirect stderr within `args` if a test needs it.
inline CliResult run_cli(const std::string& args) {
  CliResult result;
#ifdef GK_CLI_PATH
  const std::string cmd = std::string(GK_CLI_PATH) + " " + args;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return result;
  char buf[4096];
  size_t got = 0;
  while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) result.out.append(buf, got);
  const int status = pclose(pipe);
  if (WIFEXITED(status)) result.code = WEXITSTATUS(status);
#else
  (void)args;
#endif
  return result;
}

}  // namespace gktest
