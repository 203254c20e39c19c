#include "boxdeconv/lp.hpp"

#include "boxdeconv/errors.hpp"

namespace boxdeconv {

namespace {

// Dense tableau in canonical form: basis[i] is the basic column of row i.
struct Tableau {
  RationalMatrix t;  // rows x (cols + 1), last column is the rhs
  std::vector<std::size_t> basis;
  std::size_t cols = 0;

  void pivot(std::size_t r, std::size_t c) {
    Rational inv = 1 / t[r][c];
    for (auto& x : t[r]) x *= inv;
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (i == r || sgn(t[i][c]) == 0) continue;
      Rational f = t[i][c];
      for (std::size_t j = 0; j <= cols; ++j)
        if (sgn(t[r][j]) != 0) t[i][j] -= f * t[r][j];
    }
    basis[r] = c;
  }

  // Maximizes obj.x over the columns allowed; returns false when unbounded.
  bool optimize(const RationalVector& obj, const std::vector<bool>& allowed) {
    for (;;) {
      // reduced cost of column j: obj_j - sum_i obj_{basis i} t[i][j]
      std::size_t enter = cols;
      for (std::size_t j = 0; j < cols && enter == cols; ++j) {
        if (!allowed[j]) continue;
        Rational rc = obj[j];
        for (std::size_t i = 0; i < t.size(); ++i)
          if (sgn(t[i][j]) != 0) rc -= obj[basis[i]] * t[i][j];
        if (sgn(rc) > 0) enter = j;
      }
      if (enter == cols) return true;
      std::size_t leave = t.size();
      Rational best;
      for (std::size_t i = 0; i < t.size(); ++i) {
        if (sgn(t[i][enter]) <= 0) continue;
        Rational ratio = t[i][cols] / t[i][enter];
        if (leave == t.size() || ratio < best || (ratio == best && basis[i] < basis[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == t.size()) return false;
      pivot(leave, enter);
    }
  }
};

}  // namespace

LpResult solve_lp(const LinearProgram& lp) {
  const std::size_t n = lp.c.size();
  if (lp.a.size() != lp.b.size()) fail(ErrorCode::Internal, "lp: row count mismatch");
  std::vector<std::size_t> bounded;
  for (std::size_t j = 0; j < n && j < lp.upper.size(); ++j)
    if (lp.upper[j]) bounded.push_back(j);

  // columns: original n, one slack per bounded variable, one artificial per row
  const std::size_t rows = lp.a.size() + bounded.size();
  const std::size_t structural = n + bounded.size();
  const std::size_t cols = structural + rows;

  Tableau tab;
  tab.cols = cols;
  tab.t.assign(rows, RationalVector(cols + 1));
  tab.basis.resize(rows);
  for (std::size_t i = 0; i < lp.a.size(); ++i) {
    for (std::size_t j = 0; j < n; ++j) tab.t[i][j] = lp.a[i][j];
    tab.t[i][cols] = lp.b[i];
  }
  for (std::size_t k = 0; k < bounded.size(); ++k) {
    std::size_t i = lp.a.size() + k;
    tab.t[i][bounded[k]] = 1;
    tab.t[i][n + k] = 1;
    tab.t[i][cols] = *lp.upper[bounded[k]];
  }
  for (std::size_t i = 0; i < rows; ++i) {
    if (sgn(tab.t[i][cols]) < 0)
      for (auto& x : tab.t[i]) x = -x;
    tab.t[i][structural + i] = 1;
    tab.basis[i] = structural + i;
  }

  // phase one: drive the artificials to zero
  RationalVector phase1(cols);
  for (std::size_t i = 0; i < rows; ++i) phase1[structural + i] = -1;
  std::vector<bool> all(cols, true);
  tab.optimize(phase1, all);
  Rational infeas = 0;
  for (std::size_t i = 0; i < rows; ++i)
    if (tab.basis[i] >= structural) infeas += tab.t[i][cols];
  LpResult result;
  if (sgn(infeas) != 0) {
    result.status = LpStatus::Infeasible;
    return result;
  }
  // pivot remaining (zero-valued) artificials out of the basis where possible
  std::vector<std::size_t> redundant;
  for (std::size_t i = 0; i < rows; ++i) {
    if (tab.basis[i] < structural) continue;
    std::size_t c = structural;
    for (std::size_t j = 0; j < structural; ++j)
      if (sgn(tab.t[i][j]) != 0) {
        c = j;
        break;
      }
    if (c == structural)
      redundant.push_back(i);
    else
      tab.pivot(i, c);
  }
  for (auto it = redundant.rbegin(); it != redundant.rend(); ++it) {
    tab.t.erase(tab.t.begin() + static_cast<long>(*it));
    tab.basis.erase(tab.basis.begin() + static_cast<long>(*it));
  }

  RationalVector phase2(cols);
  for (std::size_t j = 0; j < n; ++j) phase2[j] = lp.c[j];
  std::vector<bool> allowed(cols, false);
  for (std::size_t j = 0; j < structural; ++j) allowed[j] = true;
  if (!tab.optimize(phase2, allowed)) {
    result.status = LpStatus::Unbounded;
    return result;
  }
  result.status = LpStatus::Optimal;
  result.x.assign(n, Rational(0));
  for (std::size_t i = 0; i < tab.t.size(); ++i)
    if (tab.basis[i] < n) result.x[tab.basis[i]] = tab.t[i][cols];
  result.value = dot(lp.c, result.x);
  return result;
}

bool feasible(const LinearProgram& lp) {
  LinearProgram copy = lp;
  copy.c.assign(lp.c.size(), Rational(0));
  return solve_lp(copy).status != LpStatus::Infeasible;
}

}  // namespace boxdeconv
