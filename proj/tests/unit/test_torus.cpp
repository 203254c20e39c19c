#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "boxdeconv/torus.hpp"
#include "oracles.hpp"

using namespace boxdeconv;
using oracle::q;

namespace {

// Every vertex s has s.alpha in Z on a basis, so s lies on the grid (1/D) Z^d with D the lcm
// of the basis determinants. Keep grid points whose integral directions span.
std::set<RationalVector> brute_vertex_set(const DirectionList& phi) {
  const std::size_t d = phi.dim(), n = phi.size();
  long long lcm = 1;
  std::vector<std::size_t> pick(d);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t depth) {
    if (depth == d) {
      IntMatrix m;
      for (std::size_t i : pick) m.push_back(phi[i]);
      long long det = std::llabs(determinant(m));
      if (det != 0) lcm = std::lcm(lcm, det);
      return;
    }
    for (std::size_t i = start; i < n; ++i) {
      pick[depth] = i;
      rec(i + 1, depth + 1);
    }
  };
  rec(0, 0);
  std::set<RationalVector> out;
  for (const auto& g : oracle::cube(d, 0, lcm - 1)) {
    RationalVector s(d);
    for (std::size_t j = 0; j < d; ++j) s[j] = q(g[j], lcm);
    IntMatrix integral;
    for (const auto& a : phi.vectors())
      if (is_integer(dot(a, s))) integral.push_back(a);
    if (!integral.empty() && rank(integral) == d) out.insert(s);
  }
  return out;
}

}  // namespace

TEST_CASE("vertex sets match a grid search") {
  const std::vector<DirectionList> lists{
      DirectionList(1, {{1}, {2}}),
      DirectionList(1, {{2}, {3}}),
      DirectionList(1, {{1}, {1}, {2}}),
      DirectionList(1, {{2}}),
      DirectionList(1, {{4}, {-6}}),
      DirectionList(2, {{2, 0}, {0, 2}}),
      DirectionList(2, {{1, 0}, {0, 1}, {1, 1}, {1, 2}}),
      DirectionList(2, {{1, 0}, {1, 2}}),
      DirectionList(2, {{1, 1}, {1, -1}}),
      DirectionList(2, {{1, 0}, {0, 1}, {1, 1}}),
      DirectionList(2, {{3, 1}, {1, 2}, {0, 1}}),
      DirectionList(3, {{1, 1, 0}, {0, 1, 1}, {1, 0, 1}}),
  };
  for (const auto& phi : lists) {
    std::set<RationalVector> got;
    for (const auto& s : vertex_set(phi)) got.insert(s.angle);
    CHECK(got == brute_vertex_set(phi));
  }
  // unimodular lists have the identity only
  auto v = vertex_set(DirectionList(2, {{1, 0}, {0, 1}, {1, 1}}));
  REQUIRE(v.size() == 1);
  CHECK(v[0].is_identity());
}

TEST_CASE("torus points and characters") {
  TorusPoint s({q(5, 4), q(-1, 3)});
  CHECK(s.angle == RationalVector{q(1, 4), q(2, 3)});
  CHECK(s.order() == 12);
  CHECK_FALSE(s.is_identity());
  CHECK(TorusPoint({q(2), q(-1)}).is_identity());
  CHECK(TorusPoint::identity(3).order() == 1);
  CHECK(character_angle(s, {1, 1}) == q(11, 12));
  CHECK(character_angle(s, {4, 3}) == 0);
  for (const IntVector& lambda : {IntVector{0, 0}, IntVector{1, 0}, IntVector{1, 1}, IntVector{-3, 7}}) {
    double angle = 2 * std::numbers::pi * (0.25 * lambda[0] + (2.0 / 3) * lambda[1]);
    std::complex<double> want = std::polar(1.0, angle);
    CHECK(std::abs(character(s, lambda).to_complex() - want) < 1e-12);
    CHECK(std::abs(character_numeric(s, lambda) - want) < 1e-12);
  }
  CHECK(character(TorusPoint({q(1, 2)}), {1}) == Cyclotomic(-1));
}

TEST_CASE("integral sublists") {
  DirectionList phi(2, {{1, 0}, {0, 1}, {1, 1}, {1, 2}});
  TorusPoint s({q(0), q(1, 2)});
  CHECK(phi_s_indices(phi, s) == std::vector<std::size_t>{0, 3});
  CHECK(phi_s(phi, s).vectors() == IntMatrix{{1, 0}, {1, 2}});
  CHECK(phi_s_indices(phi, TorusPoint::identity(2)).size() == 4);
  DirectionList p(1, {{1}, {2}});
  CHECK(phi_s(p, TorusPoint({q(1, 2)})).vectors() == IntMatrix{{2}});
}
