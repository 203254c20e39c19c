#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "boxdeconv/arrangement.hpp"
#include "boxdeconv/errors.hpp"
#include "boxdeconv/series.hpp"
#include "boxdeconv/torus.hpp"
#include "oracles.hpp"

using namespace boxdeconv;
using oracle::q;
using cd = std::complex<double>;

namespace {

const cd I(0, 1);

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Internal;
}

// l! / (2 pi i) * contour integral of 1/(e^z u - 1) / z^{l+1} on |z| = radius
cd beta_by_contour(cd u, int l, double radius) {
  const int m = 512;
  cd sum = 0;
  for (int j = 0; j < m; ++j) {
    cd z = std::polar(radius, 2 * std::numbers::pi * j / m);
    sum += 1.0 / (std::exp(z) * u - 1.0) / std::pow(z, l);
  }
  double fact = std::tgamma(l + 1.0);
  return fact * sum / static_cast<double>(m);
}

// Closed generating function of one Todd factor at symbol value w.
cd todd_factor(cd u, cd y, cd w, bool trivial) {
  cd z = -w + I * y;
  if (trivial) return std::abs(z) < 1e-300 ? cd(1) : z / (std::exp(z) - 1.0);
  return 1.0 / (std::exp(z) * u - 1.0);
}

}  // namespace

TEST_CASE("Bernoulli numbers") {
  auto b = bernoulli(12);
  const RationalVector known{q(1),  q(-1, 2), q(1, 6), q(0), q(-1, 30), q(0),        q(1, 42),
                             q(0),  q(-1, 30), q(0),   q(5, 66), q(0), q(-691, 2730)};
  CHECK(b == known);
}

TEST_CASE("beta coefficients") {
  for (cd u : {cd(-1, 0), cd(0, 1), std::polar(1.0, 2.0), cd(0.5, 0.3), std::polar(1.0, 0.3)}) {
    auto beta = beta_coeffs(u, 10);
    REQUIRE(beta.size() == 11);
    double radius = 0.5 * std::abs(std::log(u));
    for (int l = 0; l <= 10; ++l) {
      CAPTURE(l);
      cd want = beta_by_contour(u, l, radius);
      CHECK(std::abs(beta[static_cast<std::size_t>(l)] - want) < 1e-9 * (1 + std::abs(want)));
    }
  }
  for (const auto& angle : {q(1, 2), q(1, 3), q(3, 4), q(5, 6)}) {
    auto u = Cyclotomic::root_of_unity(angle);
    auto exact = beta_coeffs(u, 8);
    auto numeric = beta_coeffs(u.to_complex(), 8);
    for (std::size_t l = 0; l <= 8; ++l) CHECK(std::abs(exact[l].to_complex() - numeric[l]) < 1e-10);
  }
  // 1/(e^z u - 1) at z = 0
  CHECK(beta_coeffs(Cyclotomic(-1), 0)[0] == Cyclotomic(q(-1, 2)));
  CHECK(code_of([] { beta_coeffs(cd(1, 0), 4); }) == ErrorCode::ResonantParameter);
  CHECK(code_of([] { beta_coeffs(cd(1 + 1e-14, 0), 4); }) == ErrorCode::ResonantParameter);
  CHECK(code_of([] { beta_coeffs(Cyclotomic(1), 4); }) == ErrorCode::ResonantParameter);
}

TEST_CASE("Todd operators agree with their generating functions") {
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> small(-0.05, 0.05);
  const std::vector<DirectionList> lists{DirectionList(1, {{1}, {2}}), DirectionList(1, {{2}, {3}, {1}}),
                                         DirectionList(2, {{1, 0}, {0, 1}, {1, 1}, {1, 2}}),
                                         DirectionList(2, {{2, 0}, {0, 2}, {1, 1}})};
  const int L = 14;
  for (const auto& phi : lists) {
    for (const auto& s : vertex_set(phi)) {
      ParameterList y(phi.size());
      for (auto& v : y) v = cd(small(rng), small(rng));
      auto numeric = todd_operator(phi, s, y, L);
      auto exact = todd_operator(phi, s, L).poly.cast<cd>();
      auto rep = make_representation(phi, RationalVector(phi.size(), q(1, 3)));
      auto translated = todd_operator_translated(phi, s, y, rep, L);
      for (int trial = 0; trial < 5; ++trial) {
        std::vector<cd> w(phi.size() + 1);
        for (auto& v : w) v = cd(small(rng), small(rng));
        cd want = 1, want0 = 1;
        for (std::size_t k = 0; k < phi.size(); ++k) {
          bool trivial = is_integer(dot(phi[k], s.angle));
          cd u = character_numeric(s, phi[k]);
          want *= todd_factor(u, y[k], w[k], trivial);
          want0 *= todd_factor(u, 0, w[k], trivial);
        }
        std::vector<cd> wn(w.begin(), w.end() - 1);
        CHECK(std::abs(numeric.poly.evaluate(wn) - want) < 1e-10 * std::abs(want));
        CHECK(std::abs(exact.evaluate(wn) - want0) < 1e-10 * std::abs(want0));
        cd ry = 0;
        for (std::size_t k = 0; k < phi.size(); ++k) ry += y[k] / 3.0;
        CHECK(std::abs(translated.poly.evaluate(w) - want * std::exp(-w.back() + I * ry)) < 1e-10 * std::abs(want));
      }
    }
  }
}

TEST_CASE("Todd operator for a single unit direction") {
  DirectionList phi(1, {{1}});
  auto op = todd_operator(phi, TorusPoint::identity(1), 4);
  // d/(1 - e^{-d}) = 1 + d/2 + d^2/12 - d^4/720
  auto partials = to_partials(op, phi);
  CHECK(partials.coefficient({0}) == Cyclotomic(1));
  CHECK(partials.coefficient({1}) == Cyclotomic(q(1, 2)));
  CHECK(partials.coefficient({2}) == Cyclotomic(q(1, 12)));
  CHECK(partials.coefficient({3}) == Cyclotomic(0));
  CHECK(partials.coefficient({4}) == Cyclotomic(q(-1, 720)));
}

TEST_CASE("symbols rewrite as coordinate partials") {
  DirectionList phi(2, {{1, 0}, {0, 1}, {1, 2}});
  ExactOperator op;
  op.poly = Polynomial<Cyclotomic>::variable(3, 2) * Polynomial<Cyclotomic>::variable(3, 0);  // d_{a3} d_{a1}
  auto p = to_partials(op, phi);
  // (d1 + 2 d2) d1
  CHECK(p.coefficient({2, 0}) == Cyclotomic(1));
  CHECK(p.coefficient({1, 1}) == Cyclotomic(2));
  CHECK(p.terms().size() == 2);
  ExactOperator shifted;
  shifted.translated = true;
  shifted.shift = {q(1, 2), q(-1)};
  shifted.poly = Polynomial<Cyclotomic>::variable(4, 3);  // d_r
  auto pr = to_partials(shifted, phi);
  CHECK(pr.coefficient({1, 0}) == Cyclotomic(q(1, 2)));
  CHECK(pr.coefficient({0, 1}) == Cyclotomic(-1));
}

TEST_CASE("operators applied to local pieces") {
  DirectionList phi(1, {{1}, {2}});
  ExactOperator op;
  op.poly = Polynomial<Cyclotomic>::constant(2, Cyclotomic(1)) + Polynomial<Cyclotomic>::variable(2, 0);
  auto piece = local_polynomial(phi, alcove_of(phi, {q(1, 2)}));  // t/2
  CHECK(apply_operator(op, phi, piece, {q(1, 2)}) == Cyclotomic(q(3, 4)));
  CHECK(apply_operator(op, phi, piece, {q(0)}) == Cyclotomic(q(1, 2)));  // closure
  op.poly = Polynomial<Cyclotomic>::variable(2, 1);  // d_2 = 2 d
  CHECK(apply_operator(op, phi, piece, {q(1, 4)}) == Cyclotomic(1));
  CHECK(code_of([&] { apply_operator(op, phi, piece, {q(3, 2)}); }) == ErrorCode::PointOutsideAlcove);

  // on (1,2): B([1,2], y)(v) = exp(i y2 v / 2) (1 - exp(-i kappa / 2)) / (i kappa), kappa = y2 - 2 y1
  cd y1(0.03, 0.01), y2(-0.07, 0.02);
  cd kappa = y2 - 2.0 * y1;
  auto f = [&](double v) { return std::exp(I * y2 * v / 2.0) * (1.0 - std::exp(-I * kappa / 2.0)) / (I * kappa); };
  auto sampler = local_sampler(phi, {y1, y2}, alcove_of(phi, {q(3, 2)}));
  NumericOperator nop;
  nop.poly = Polynomial<cd>::constant(2, 1) + Polynomial<cd>::variable(2, 0);
  for (auto at : {q(5, 4), q(1), q(2), q(3, 2)}) {
    double v = at.get_d();
    CHECK(std::abs(apply_operator(nop, phi, sampler, {at}) - (1.0 + I * y2 / 2.0) * f(v)) < 1e-8);
  }
  nop.poly = Polynomial<cd>::variable(2, 1) * Polynomial<cd>::variable(2, 1);  // 4 d^2
  CHECK(std::abs(apply_operator(nop, phi, sampler, {q(7, 4)}) - 4.0 * std::pow(I * y2 / 2.0, 2) * f(1.75)) < 1e-8);
}

TEST_CASE("inscribed cube of an alcove") {
  DirectionList a2(2, {{1, 0}, {0, 1}, {1, 1}});
  // triangle x2 > 0, x1 < 1, x1 > x2: the largest square is [1/2,1] x [0,1/2]
  Box box = alcove_box(a2, {q(2, 3), q(1, 3)});
  CHECK(std::abs(box.half[0] - 0.25) < 1e-15);
  CHECK(std::abs(box.half[1] - 0.25) < 1e-15);
  CHECK(std::abs(box.center[0] - 0.75) < 1e-15);
  CHECK(std::abs(box.center[1] - 0.25) < 1e-15);
  DirectionList p(1, {{1}, {2}});
  Box seg = alcove_box(p, {q(5, 4)});
  CHECK(std::abs(seg.center[0] - 1.5) < 1e-15);
  CHECK(std::abs(seg.half[0] - 0.5) < 1e-15);
}

TEST_CASE("truncation order") {
  DirectionList phi(2, {{1, 0}, {0, 1}, {1, 1}, {1, 2}});
  CHECK(truncation_order(phi, ParameterList(4)) == 2);
  CHECK(truncation_order(DirectionList(1, {{1}, {1}, {2}}), ParameterList(3)) == 2);
  int small = truncation_order(phi, {cd(0.01, 0), 0, 0, 0});
  int large = truncation_order(phi, {cd(0.09, 0), 0, 0, 0});
  CHECK(small >= 2);
  CHECK(large >= small);
  CHECK(large <= series_config().l_max);
  CHECK(code_of([&] { truncation_order(phi, {cd(0.2, 0), 0, 0, 0}); }) == ErrorCode::ParameterTooLarge);
  CHECK(code_of([&] { todd_operator(phi, TorusPoint::identity(2), {0, cd(0, 0.5), 0, 0}, 3); }) ==
        ErrorCode::ParameterTooLarge);
}

TEST_CASE("resonance guard in the Todd factor") {
  // s = 1/2 on [1]: u = -1, and y = pi makes exp(iy) u = 1
  auto saved = series_config();
  series_config().y_max = 10;
  DirectionList phi(1, {{1}, {2}});
  CHECK(code_of([&] { todd_operator(phi, TorusPoint({q(1, 2)}), {cd(std::numbers::pi, 0), 0}, 2); }) ==
        ErrorCode::ResonantParameter);
  series_config() = saved;
}

TEST_CASE("fractional Fourier partial sums converge") {
  for (double x : {0.3, -1.1, 2.5})
    for (double v : {0.37, 2.37, -0.6}) {
      auto [coarse, target] = fractional_fourier_check(x, v, 200);
      auto [fine, target2] = fractional_fourier_check(x, v, 20000);
      double frac = v - std::floor(v);
      CHECK(std::abs(target - std::exp(I * frac * x)) < 1e-15);
      CHECK(target == target2);
      CHECK(std::abs(fine - target) < 1e-3);
      CHECK(std::abs(fine - target) < std::abs(coarse - target));
    }
}
