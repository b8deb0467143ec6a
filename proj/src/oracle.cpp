#include "gk/oracle.hpp"

#include <bit>
#include <cstdint>
#include <sstream>

#include "gk/errors.hpp"

namespace gk {

namespace {

// +1 before -1, entrywise.
bool lex_smaller(const Signs& a, const Signs& b) {
  for (int i = 0; i < a.size(); ++i) {
    if (a(i) == b(i)) continue;
    return a(i) == 1;
  }
  return false;
}

double exact_value(const Eigen::MatrixXd& a, const Signs& x) {
  const Eigen::VectorXd xd = x.cast<double>();
  return (a * xd).dot(xd);
}

}  // namespace

SignVector brute_force_max(const ProblemInstance& inst, int n_limit) {
  const int n = inst.n();
  if (n > n_limit) {
    std::ostringstream msg;
    msg << "n = " << n << " exceeds the enumeration limit " << n_limit;
    throw TooLargeError(msg.str());
  }
  if (n > 63) throw TooLargeError("enumeration index would overflow 64 bits");

  const Eigen::MatrixXd& a = inst.a();
  Signs x = Signs::Constant(n, 1);
  Eigen::VectorXd s = a.rowwise().sum();  // s = A x for the all-ones start
  double value = s.sum();

  SignVector best{x, value};

  // Gray code over coordinates 2..n: one sign flip per visited vector, with
  // value and s = A x maintained incrementally. The running value can drift
  // over millions of flips, so accepted candidates are re-evaluated exactly.
  const std::uint64_t steps = n >= 1 ? (std::uint64_t{1} << (n - 1)) : 1;
  for (std::uint64_t t = 1; t < steps; ++t) {
    const int i = std::countr_zero(t) + 1;
    value += -4.0 * x(i) * s(i) + 4.0 * a(i, i);
    s -= 2.0 * x(i) * a.col(i);
    x(i) = -x(i);

    if (value > best.value) {
      const double exact = exact_value(a, x);
      if (exact > best.value || (exact == best.value && lex_smaller(x, best.x))) {
        best.x = x;
        best.value = exact;
      }
    } else if (value == best.value && lex_smaller(x, best.x)) {
      const double exact = exact_value(a, x);
      if (exact >= best.value) {
        best.x = x;
        best.value = exact;
      }
    }
  }
  return best;
}

}  // namespace gk
