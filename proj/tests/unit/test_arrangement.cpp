#include <doctest.h>

#include <random>
#include <set>

#include "boxdeconv/arrangement.hpp"
#include "boxdeconv/errors.hpp"
#include "oracles.hpp"

using namespace boxdeconv;
using oracle::q;

namespace {

IntVector normalized(IntVector n) {
  long long g = 0;
  for (long long x : n) g = std::gcd(g, std::llabs(x));
  for (auto& x : n) x /= g;
  for (long long x : n)
    if (x != 0) {
      if (x < 0)
        for (auto& y : n) y = -y;
      break;
    }
  return n;
}

// Normals from perpendiculars (d = 2) or cross products of independent pairs (d = 3).
std::vector<IntVector> wall_normals(const DirectionList& phi) {
  std::set<IntVector> out;
  const auto& v = phi.vectors();
  if (phi.dim() == 1) out.insert({1});
  if (phi.dim() == 2)
    for (const auto& a : v)
      if (a[0] != 0 || a[1] != 0) out.insert(normalized({-a[1], a[0]}));
  if (phi.dim() == 3)
    for (const auto& a : v)
      for (const auto& b : v) {
        IntVector c{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
        if (c != IntVector{0, 0, 0}) out.insert(normalized(c));
      }
  return {out.begin(), out.end()};
}

const std::vector<DirectionList>& fixtures() {
  static const std::vector<DirectionList> lists{
      DirectionList(1, {{1}, {2}}),
      DirectionList(1, {{1}, {-1}, {3}}),
      DirectionList(2, {{1, 0}, {0, 1}, {1, 1}}),
      DirectionList(2, {{1, 0}, {0, 1}, {1, 1}, {1, 2}}),
      DirectionList(2, {{2, 1}, {1, -1}, {0, 3}}),
      DirectionList(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}}),
      DirectionList(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 0}, {0, 1, 1}}),
  };
  return lists;
}

RationalVector random_point(std::mt19937_64& rng, std::size_t dim) {
  std::uniform_int_distribution<long long> num(-300, 300);
  RationalVector v(dim);
  for (auto& x : v) x = q(num(rng), 97);
  return v;
}

}  // namespace

TEST_CASE("walls are the hyperplanes spanned by sublists") {
  for (const auto& phi : fixtures()) {
    std::vector<IntVector> got;
    for (const auto& w : walls(phi)) got.push_back(w.normal);
    CHECK(got == wall_normals(phi));
  }
}

TEST_CASE("regularity, alcoves and closures") {
  std::mt19937_64 rng(8);
  for (const auto& phi : fixtures()) {
    auto normals = wall_normals(phi);
    for (int k = 0; k < 50; ++k) {
      RationalVector v = random_point(rng, phi.dim());
      bool regular = true;
      for (const auto& n : normals) regular = regular && !is_integer(dot(n, v));
      CHECK(is_regular(phi, v) == regular);
      if (!regular) {
        CHECK_THROWS_AS(alcove_of(phi, v), Error);
        continue;
      }
      Alcove c = alcove_of(phi, v);
      for (std::size_t j = 0; j < normals.size(); ++j) CHECK(c.slabs[j] == floor_to_int(dot(normals[j], v)));
      CHECK(is_regular(phi, c.witness));
      CHECK(alcove_of(phi, c.witness) == c);
      CHECK(alcove_closure_contains(phi, c, v));
      RationalVector far = v;
      far[0] += 1;
      CHECK_FALSE(alcove_closure_contains(phi, c, far));
    }
  }
  DirectionList a2(2, {{1, 0}, {0, 1}, {1, 1}});
  CHECK_FALSE(is_regular(a2, {q(1, 2), q(1, 2)}));  // x1 - x2 = 0
  CHECK(is_regular(a2, {q(1, 3), q(1, 4)}));
  // vertices and edges of the alcove belong to its closure
  Alcove c = alcove_of(a2, {q(1, 3), q(1, 4)});
  CHECK(alcove_closure_contains(a2, c, {q(0), q(0)}));
  CHECK(alcove_closure_contains(a2, c, {q(1), q(1)}));
  CHECK(alcove_closure_contains(a2, c, {q(1, 2), q(0)}));
  CHECK_FALSE(alcove_closure_contains(a2, c, {q(0), q(1, 2)}));
}

TEST_CASE("first crossing and limit point") {
  std::mt19937_64 rng(9);
  for (const auto& phi : fixtures()) {
    auto normals = wall_normals(phi);
    for (int k = 0; k < 40; ++k) {
      RationalVector v = random_point(rng, phi.dim());
      RationalVector eps = random_point(rng, phi.dim());
      if (!is_generic(phi, eps)) {
        CHECK_THROWS_AS(first_crossing(phi, v, eps), Error);
        continue;
      }
      std::optional<Rational> best;
      for (const auto& n : normals) {
        Rational nv = dot(n, v), ne = dot(n, eps);
        if (sgn(ne) == 0) continue;
        long long target = sgn(ne) > 0 ? floor_to_int(nv) + 1 : ceil_to_int(nv) - 1;
        Rational t = (q(target) - nv) / ne;
        if (!best || t < *best) best = t;
      }
      auto got = first_crossing(phi, v, eps);
      REQUIRE(got.has_value() == best.has_value());
      if (!best) continue;
      CHECK(*got == *best);
      RationalVector w = limit_point(phi, v, eps);
      CHECK(w == v + (*best / 2) * eps);
      CHECK(is_regular(phi, w));
    }
  }
  DirectionList phi(1, {{1}, {2}});
  CHECK(*first_crossing(phi, {q(1, 4)}, {q(1)}) == q(3, 4));
  CHECK(*first_crossing(phi, {q(0)}, {q(-1)}) == 1);
  CHECK(limit_point(phi, {q(2)}, {q(1, 2)}) == RationalVector{q(5, 2)});
}

TEST_CASE("generic directions") {
  for (const auto& phi : fixtures()) {
    auto eps = generic_direction(phi, 42);
    CHECK(is_generic(phi, eps));
    for (const auto& n : wall_normals(phi)) CHECK(sgn(dot(n, eps)) != 0);
    CHECK(generic_direction(phi, 42) == eps);
    // inside the tangent cone at a vertex of the zonotope
    auto vertex = make_representation(phi, RationalVector(phi.size(), Rational(0)));
    auto inward = generic_direction(phi, 7, vertex);
    CHECK(is_generic(phi, inward));
    CHECK(tangent_cone_contains(phi, vertex, inward));
  }
  DirectionList a2(2, {{1, 0}, {0, 1}, {1, 1}});
  CHECK_FALSE(is_generic(a2, {q(1), q(1)}));
  CHECK_FALSE(is_generic(a2, {q(0), q(1)}));
  CHECK(is_generic(a2, {q(2), q(1)}));
}
