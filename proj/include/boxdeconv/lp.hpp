#pragma once

#include <optional>

#include "boxdeconv/linalg.hpp"

namespace boxdeconv {

/// maximize c.x  subject to  a x = b,  0 <= x <= upper  (upper[j] absent means unbounded).
struct LinearProgram {
  RationalMatrix a;
  RationalVector b;
  RationalVector c;
  std::vector<std::optional<Rational>> upper;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Rational value;
  RationalVector x;
};

/// Exact two-phase simplex over the rationals with Bland's rule.
LpResult solve_lp(const LinearProgram& lp);

/// Convenience: is {a x = b, 0 <= x <= upper} nonempty?
bool feasible(const LinearProgram& lp);

}  // namespace boxdeconv
