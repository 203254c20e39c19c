#include "boxdeconv/arrangement.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <random>
#include <set>

#include "boxdeconv/errors.hpp"

namespace boxdeconv {

namespace {

std::vector<Wall> compute_walls(const DirectionList& phi) {
  const std::size_t d = phi.dim(), n = phi.size();
  std::set<Wall> found;
  if (d == 1) return {Wall{IntVector{1}}};
  // walk all (d-1)-subsets
  std::vector<std::size_t> idx(d - 1);
  for (std::size_t i = 0; i < d - 1; ++i) idx[i] = i;
  if (n < d - 1) return {};
  for (;;) {
    RationalMatrix rows;
    for (auto k : idx) rows.push_back(to_rational(phi[k]));
    if (rank(rows) == d - 1) {
      auto ns = nullspace(rows);
      found.insert(Wall{primitive(ns.front())});
    }
    std::size_t i = d - 1;
    while (i > 0 && idx[i - 1] == n - (d - 1) + (i - 1)) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < d - 1; ++j) idx[j] = idx[j - 1] + 1;
  }
  return {found.begin(), found.end()};
}

}  // namespace

const std::vector<Wall>& walls(const DirectionList& phi) {
  phi.require_spanning();
  static std::mutex mu;
  static std::map<DirectionList, std::vector<Wall>> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(phi);
  if (it == cache.end()) it = cache.emplace(phi, compute_walls(phi)).first;
  return it->second;
}

bool is_regular(const DirectionList& phi, const RationalVector& v) {
  for (const auto& w : walls(phi))
    if (is_integer(dot(w.normal, v))) return false;
  return true;
}

bool is_generic(const DirectionList& phi, const RationalVector& eps) {
  for (const auto& w : walls(phi))
    if (sgn(dot(w.normal, eps)) == 0) return false;
  return true;
}

Alcove alcove_of(const DirectionList& phi, const RationalVector& v) {
  if (!is_regular(phi, v)) fail(ErrorCode::NotRegular, "point lies on an affine wall");
  Alcove c;
  c.witness = v;
  for (const auto& w : walls(phi)) c.slabs.push_back(floor_to_int(dot(w.normal, v)));
  return c;
}

bool alcove_closure_contains(const DirectionList& phi, const Alcove& c, const RationalVector& v) {
  const auto& ws = walls(phi);
  for (std::size_t i = 0; i < ws.size(); ++i) {
    Rational x = dot(ws[i].normal, v);
    if (x < to_q(c.slabs[i]) || x > to_q(c.slabs[i] + 1)) return false;
  }
  return true;
}

std::optional<Rational> first_crossing(const DirectionList& phi, const RationalVector& v, const RationalVector& eps) {
  if (!is_generic(phi, eps)) fail(ErrorCode::NotGeneric, "direction lies on a wall");
  std::optional<Rational> best;
  for (const auto& w : walls(phi)) {
    Rational nv = dot(w.normal, v), ne = dot(w.normal, eps);
    Rational target;
    if (sgn(ne) > 0)
      target = to_q(floor_to_int(nv) + 1);
    else
      target = is_integer(nv) ? Rational(nv - 1) : to_q(floor_to_int(nv));
    Rational t = (target - nv) / ne;
    if (!best || t < *best) best = t;
  }
  return best;
}

RationalVector limit_point(const DirectionList& phi, const RationalVector& v, const RationalVector& eps) {
  auto t = first_crossing(phi, v, eps);
  if (!t) fail(ErrorCode::Internal, "no wall crossing found");
  Rational half = *t / 2;
  return v + half * eps;
}

RationalVector generic_direction(const DirectionList& phi, std::uint64_t seed, const std::optional<Representation>& cone) {
  phi.require_spanning();
  const std::size_t d = phi.dim(), n = phi.size();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> weight(1, 6), num(-9, 9), den(1, 7), coin(0, 3);

  std::vector<RationalVector> generators;
  if (cone) {
    if (!zonotope_contains(phi, cone->point)) fail(ErrorCode::PointOutsideZonotope, "cone anchor is not in Z(Phi)");
    for (std::size_t k = 0; k < n; ++k) {
      RationalVector a = to_rational(phi[k]);
      if (cone->entries[k] < 1) generators.push_back(a);
      if (cone->entries[k] > 0) generators.push_back(Rational(-1) * a);
    }
  }
  auto accept = [&](const RationalVector& eps) {
    bool nonzero = std::any_of(eps.begin(), eps.end(), [](const Rational& q) { return sgn(q) != 0; });
    if (!nonzero || !is_generic(phi, eps)) return false;
    return !cone || tangent_cone_contains(phi, *cone, eps);
  };
  auto random_vector = [&] {
    RationalVector eps(d);
    for (auto& x : eps) x = make_rational(num(rng), den(rng));
    for (auto& x : eps) x.canonicalize();
    return eps;
  };

  if (!generators.empty()) {
    RationalVector sum(d);
    for (const auto& g : generators) sum = sum + g;
    if (accept(sum)) return sum;
  }
  for (int attempt = 0; attempt < kGenericSearchBudget; ++attempt) {
    RationalVector eps(d);
    if (!generators.empty() && coin(rng) != 0) {
      for (const auto& g : generators) eps = eps + Rational(weight(rng)) * g;
      if (coin(rng) == 0) {
        RationalVector noise = random_vector();
        eps = eps + make_rational(1, 16) * noise;
      }
    } else {
      eps = random_vector();
    }
    if (accept(eps)) return eps;
  }
  fail(ErrorCode::SearchExhausted, "no generic direction after " + std::to_string(kGenericSearchBudget) + " candidates");
}

}  // namespace boxdeconv
