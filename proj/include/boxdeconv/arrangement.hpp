#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "boxdeconv/core.hpp"

namespace boxdeconv {

struct Wall {
  IntVector normal;  // primitive, first nonzero coordinate positive
  friend bool operator==(const Wall&, const Wall&) = default;
  friend auto operator<=>(const Wall&, const Wall&) = default;
};

/// Connected component of the Phi-regular set, keyed by its slab indices.
struct Alcove {
  RationalVector witness;
  std::vector<long long> slabs;  // floor(n . witness) per wall, in walls() order
  friend bool operator==(const Alcove& a, const Alcove& b) { return a.slabs == b.slabs; }
};

/// Distinct hyperplanes spanned by elements of phi, sorted by normal. Cached per list.
const std::vector<Wall>& walls(const DirectionList& phi);

bool is_regular(const DirectionList& phi, const RationalVector& v);
bool is_generic(const DirectionList& phi, const RationalVector& eps);
Alcove alcove_of(const DirectionList& phi, const RationalVector& v);

/// Is v in the closure of the alcove?
bool alcove_closure_contains(const DirectionList& phi, const Alcove& c, const RationalVector& v);

/// Smallest t > 0 with v + t eps on an affine wall.
std::optional<Rational> first_crossing(const DirectionList& phi, const RationalVector& v, const RationalVector& eps);

/// v + (t*/2) eps, a regular point of the alcove touched by v on the eps side.
RationalVector limit_point(const DirectionList& phi, const RationalVector& v, const RationalVector& eps);

inline constexpr int kGenericSearchBudget = 20000;

/// Deterministic seeded search for a generic direction, optionally inside the
/// tangent cone of Z(phi) at cone->point.
RationalVector generic_direction(const DirectionList& phi, std::uint64_t seed,
                                 const std::optional<Representation>& cone = std::nullopt);

}  // namespace boxdeconv
