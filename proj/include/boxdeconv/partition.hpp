#pragma once

#include <cstdint>

#include "boxdeconv/deconv.hpp"

namespace boxdeconv {

/// Connected component of the complement of the walls, in the positive sense:
/// a witness and its sign vector over walls(phi).
struct Chamber {
  RationalVector witness;
  std::vector<int> signs;
  friend bool operator==(const Chamber& a, const Chamber& b) { return a.signs == b.signs; }
};

/// Number of p >= 0 in Z^N with sum p_k alpha_k = nu.
Integer partition_count(const DirectionList& phi, const IntVector& nu);

/// sum over those p of exp(i p.y).
std::complex<double> partition_trace(const DirectionList& phi, const ParameterList& y, const IntVector& nu);

/// T(phi, y)(v) = sum_{p >= 0} exp(i p.y) B(phi, y)(v - sum p_k alpha_k).
Value multispline_eval(const DirectionList& phi, const ParameterList& y, const RationalVector& v);

/// Is v on the boundary of a cone generated by a sublist of phi?
bool on_cone_boundary(const DirectionList& phi, const RationalVector& v);

Chamber chamber_of(const DirectionList& phi, const RationalVector& v);

/// Does nu + Z(phi) meet the chamber in an open set?
bool chamber_covers(const DirectionList& phi, const Chamber& tau, const IntVector& nu);

Value partition_via_todd(const DirectionList& phi, const ParameterList& y, const IntVector& nu, const Chamber& tau);

}  // namespace boxdeconv
