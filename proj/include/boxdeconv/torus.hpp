#pragma once

#include <vector>

#include "boxdeconv/core.hpp"
#include "boxdeconv/cyclotomic.hpp"

namespace boxdeconv {

/// s in U/2 pi Gamma, stored as u in [0,1)^d with s^lambda = exp(2 pi i u.lambda).
struct TorusPoint {
  RationalVector angle;

  TorusPoint() = default;
  explicit TorusPoint(RationalVector u);  // reduces mod 1

  static TorusPoint identity(std::size_t dim) { return TorusPoint(RationalVector(dim)); }
  bool is_identity() const;
  /// Least common denominator of the angle coordinates.
  long order() const;

  friend bool operator==(const TorusPoint& a, const TorusPoint& b) { return a.angle == b.angle; }
  friend bool operator<(const TorusPoint& a, const TorusPoint& b) { return a.angle < b.angle; }
};

/// Indices k with s^{alpha_k} = 1.
std::vector<std::size_t> phi_s_indices(const DirectionList& phi, const TorusPoint& s);
DirectionList phi_s(const DirectionList& phi, const TorusPoint& s);

std::vector<TorusPoint> vertex_set(const DirectionList& phi);

/// u.lambda mod 1.
Rational character_angle(const TorusPoint& s, const IntVector& lambda);
/// s^lambda as an exact root of unity.
Cyclotomic character(const TorusPoint& s, const IntVector& lambda);
std::complex<double> character_numeric(const TorusPoint& s, const IntVector& lambda);

}  // namespace boxdeconv
