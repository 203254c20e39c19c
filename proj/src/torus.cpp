#include "boxdeconv/torus.hpp"

#include <cmath>
#include <numbers>
#include <set>

#include "boxdeconv/errors.hpp"

namespace boxdeconv {

namespace {

Rational mod1(const Rational& q) { return q - to_q(floor_to_int(q)); }

}  // namespace

TorusPoint::TorusPoint(RationalVector u) : angle(std::move(u)) {
  for (auto& x : angle) x = mod1(x);
}

bool TorusPoint::is_identity() const {
  for (const auto& x : angle)
    if (sgn(x) != 0) return false;
  return true;
}

long TorusPoint::order() const {
  Integer l = 1;
  for (const auto& x : angle) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  return l.get_si();
}

std::vector<std::size_t> phi_s_indices(const DirectionList& phi, const TorusPoint& s) {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < phi.size(); ++k)
    if (is_integer(dot(phi[k], s.angle))) out.push_back(k);
  return out;
}

DirectionList phi_s(const DirectionList& phi, const TorusPoint& s) { return phi.sublist(phi_s_indices(phi, s)); }

std::vector<TorusPoint> vertex_set(const DirectionList& phi) {
  phi.require_spanning();
  const std::size_t d = phi.dim(), n = phi.size();
  std::set<TorusPoint> found;
  std::vector<std::size_t> idx(d);
  for (std::size_t i = 0; i < d; ++i) idx[i] = i;
  for (;;) {
    IntMatrix m;
    for (auto k : idx) m.push_back(phi[k]);
    if (rank(m) == d) {
      // M u in Z^d  <=>  u = V D^{-1} k  with  U M V = D
      SmithForm snf = smith_normal_form(m);
      long long total = 1;
      for (auto e : snf.diagonal) total *= e;
      for (long long flat = 0; flat < total; ++flat) {
        std::vector<long long> k(d);
        long long rest = flat;
        for (std::size_t j = 0; j < d; ++j) {
          k[j] = rest % snf.diagonal[j];
          rest /= snf.diagonal[j];
        }
        RationalVector u(d);
        for (std::size_t i = 0; i < d; ++i)
          for (std::size_t j = 0; j < d; ++j)
            u[i] += make_rational(static_cast<long>(snf.v[i][j] * k[j]), static_cast<long>(snf.diagonal[j]));
        for (auto& x : u) x.canonicalize();
        TorusPoint s(u);
        if (!found.count(s) && phi_s(phi, s).spans()) found.insert(s);
      }
    }
    std::size_t i = d;
    while (i > 0 && idx[i - 1] == n - d + (i - 1)) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < d; ++j) idx[j] = idx[j - 1] + 1;
  }
  return {found.begin(), found.end()};
}

Rational character_angle(const TorusPoint& s, const IntVector& lambda) { return mod1(dot(lambda, s.angle)); }

Cyclotomic character(const TorusPoint& s, const IntVector& lambda) {
  return Cyclotomic::root_of_unity(character_angle(s, lambda));
}

std::complex<double> character_numeric(const TorusPoint& s, const IntVector& lambda) {
  return std::polar(1.0, 2 * std::numbers::pi * character_angle(s, lambda).get_d());
}

}  // namespace boxdeconv
