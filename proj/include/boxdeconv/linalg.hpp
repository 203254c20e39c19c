#pragma once

#include <optional>
#include <vector>

#include "boxdeconv/rational.hpp"

namespace boxdeconv {

// Dense matrices are stored row-major as a vector of rows.
using RationalMatrix = std::vector<RationalVector>;
using IntMatrix = std::vector<IntVector>;

RationalMatrix to_rational(const IntMatrix& m);
IntMatrix transpose(const IntMatrix& m);
RationalMatrix transpose(const RationalMatrix& m);

/// Reduced row echelon form in place; returns the pivot columns.
std::vector<std::size_t> rref(RationalMatrix& m);

std::size_t rank(const RationalMatrix& m);
std::size_t rank(const IntMatrix& m);

Rational determinant(RationalMatrix m);
long long determinant(const IntMatrix& m);

/// Unique solution of the square system a x = b, or nullopt when a is singular.
std::optional<RationalVector> solve(const RationalMatrix& a, const RationalVector& b);

/// Basis of {x : m x = 0}.
RationalMatrix nullspace(const RationalMatrix& m);

/// Scales a nonzero rational vector to a primitive integer vector whose first
/// nonzero coordinate is positive.
IntVector primitive(const RationalVector& v);

long long gcd_of(const IntVector& v);

struct SmithForm {
  IntMatrix u;               // unimodular, rows x rows
  IntMatrix v;               // unimodular, cols x cols
  std::vector<long long> diagonal;  // u * a * v = diag(diagonal), padded with zeros
};

/// Smith normal form of an integer matrix.
SmithForm smith_normal_form(const IntMatrix& a);

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b);

}  // namespace boxdeconv
