#include "boxdeconv/boxspline.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "boxdeconv/errors.hpp"

namespace boxdeconv {

namespace {

bool outside_box(const IntVector& lo, const IntVector& hi, const RationalVector& v) {
  for (std::size_t j = 0; j < v.size(); ++j)
    if (v[j] <= Rational(static_cast<long>(lo[j])) || v[j] >= Rational(static_cast<long>(hi[j]))) return true;
  return false;
}

bool outside_box(const IntVector& lo, const IntVector& hi, const std::vector<double>& v) {
  for (std::size_t j = 0; j < v.size(); ++j)
    if (v[j] < static_cast<double>(lo[j]) - 1e-12 || v[j] > static_cast<double>(hi[j]) + 1e-12) return true;
  return false;
}

}  // namespace

const RationalVector& open_newton_cotes(std::size_t n) {
  static std::mutex mu;
  static std::map<std::size_t, RationalVector> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  RationalMatrix vander(n, RationalVector(n));
  RationalVector moments(n);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < n; ++j) {
      Rational x = make_rational(static_cast<long long>(j + 1), static_cast<long long>(n + 1));
      Rational p = 1;
      for (std::size_t e = 0; e < k; ++e) p *= x;
      vander[k][j] = p;
    }
    moments[k] = make_rational(1, static_cast<long>(k + 1));
  }
  auto w = solve(vander, moments);
  if (!w) fail(ErrorCode::Internal, "singular Newton-Cotes system");
  return cache.emplace(n, *w).first->second;
}

const std::pair<std::vector<double>, std::vector<double>>& gauss_legendre(std::size_t n) {
  static std::mutex mu;
  static std::map<std::size_t, std::pair<std::vector<double>, std::vector<double>>> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<double> x(n), w(n);
  for (std::size_t i = 0; i < n; ++i) {
    // Newton on P_n from the Chebyshev-like initial guess
    double z = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
    double dp = 0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1, p1 = z;
      for (std::size_t k = 2; k <= n; ++k) {
        double pk = ((2.0 * static_cast<double>(k) - 1) * z * p1 - (static_cast<double>(k) - 1) * p0) / static_cast<double>(k);
        p0 = p1;
        p1 = pk;
      }
      if (n == 1) p0 = 1, p1 = z;
      dp = static_cast<double>(n) * (z * p1 - p0) / (z * z - 1);
      double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    x[i] = 0.5 * (1 - z);
    w[i] = 1.0 / ((1 - z * z) * dp * dp);  // 2/((1-z^2)P'^2) scaled to [0,1]
  }
  return cache.emplace(n, std::make_pair(x, w)).first->second;
}

std::shared_ptr<const BoxSpline> BoxSpline::get(const DirectionList& phi) {
  static std::mutex mu;
  static std::map<DirectionList, std::shared_ptr<const BoxSpline>> registry;
  {
    std::lock_guard lock(mu);
    auto it = registry.find(phi);
    if (it != registry.end()) return it->second;
  }
  auto spline = std::make_shared<const BoxSpline>(phi);
  std::lock_guard lock(mu);
  return registry.emplace(phi, spline).first->second;
}

BoxSpline::BoxSpline(DirectionList phi) : phi_(std::move(phi)) {
  phi_.require_spanning();
  const std::size_t d = phi_.dim();
  std::vector<std::size_t> ids(phi_.size());
  for (std::size_t k = 0; k < ids.size(); ++k) ids[k] = k;
  for (;;) {
    Level level;
    level.ids = ids;
    for (auto k : ids) level.vectors.push_back(phi_[k]);
    auto sub = phi_.sublist(ids);
    std::tie(level.lo, level.hi) = zonotope_bounds(sub);
    if (ids.size() == d) {
      levels_.push_back(std::move(level));
      break;
    }
    // peel the last direction whose removal keeps the list spanning
    std::size_t pos = ids.size();
    for (std::size_t p = ids.size(); p-- > 0;) {
      std::vector<std::size_t> rest = ids;
      rest.erase(rest.begin() + static_cast<long>(p));
      if (phi_.sublist(rest).spans()) {
        pos = p;
        break;
      }
    }
    if (pos == ids.size()) fail(ErrorCode::Internal, "peeling failed");
    std::swap(level.ids[pos], level.ids.back());
    std::swap(level.vectors[pos], level.vectors.back());
    ids = level.ids;
    ids.pop_back();
    for (const auto& w : walls(phi_.sublist(ids))) level.sub_walls.push_back(w.normal);
    levels_.push_back(std::move(level));
  }
  // base basis: columns are the remaining directions
  const auto& base = levels_.back().vectors;
  RationalMatrix m(d, RationalVector(d));
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t k = 0; k < d; ++k) m[j][k] = Rational(static_cast<long>(base[k][j]));
  Rational det = determinant(m);
  base_weight_ = 1 / abs(det);
  base_inverse_.assign(d, RationalVector(d));
  for (std::size_t j = 0; j < d; ++j) {
    RationalVector e(d);
    e[j] = 1;
    auto col = solve(m, e);
    for (std::size_t k = 0; k < d; ++k) base_inverse_[k][j] = (*col)[k];
  }
  base_inverse_d_.assign(d, std::vector<double>(d));
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t j = 0; j < d; ++j) base_inverse_d_[k][j] = base_inverse_[k][j].get_d();
}

Rational BoxSpline::eval_level(std::size_t level, const RationalVector& v) const {
  const Level& lv = levels_[level];
  if (outside_box(lv.lo, lv.hi, v)) return 0;
  const std::size_t d = phi_.dim();
  if (level + 1 == levels_.size()) {
    for (std::size_t k = 0; k < d; ++k) {
      Rational t = dot(base_inverse_[k], v);
      if (sgn(t) <= 0 || t >= 1) return 0;
    }
    return base_weight_;
  }
  const IntVector& alpha = lv.vectors.back();
  std::vector<Rational> cuts{Rational(0), Rational(1)};
  for (const auto& n : lv.sub_walls) {
    long long na = dot(n, alpha);
    if (na == 0) continue;
    Rational a = dot(n, v);
    Rational lo = na > 0 ? Rational(a - to_q(na)) : a, hi = na > 0 ? a : Rational(a - to_q(na));
    for (long long m = floor_to_int(lo) + 1; m < ceil_to_int(hi); ++m) {
      Rational t = (a - to_q(m)) / to_q(na);
      cuts.push_back(t);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  const std::size_t nodes = lv.ids.size() - d;
  const RationalVector& weights = open_newton_cotes(nodes);
  const RationalVector a = to_rational(alpha);
  Rational sum = 0;
  for (std::size_t p = 0; p + 1 < cuts.size(); ++p) {
    Rational len = cuts[p + 1] - cuts[p];
    Rational piece = 0;
    for (std::size_t j = 0; j < nodes; ++j) {
      Rational t = cuts[p] + len * make_rational(static_cast<long>(j + 1), static_cast<long>(nodes + 1));
      Rational val = eval_level(level + 1, v - t * a);
      if (sgn(val) != 0) piece += weights[j] * val;
    }
    sum += len * piece;
  }
  return sum;
}

std::complex<double> BoxSpline::eval_level_numeric(std::size_t level, const ParameterList& y,
                                                   const std::vector<double>& v) const {
  const Level& lv = levels_[level];
  if (outside_box(lv.lo, lv.hi, v)) return 0;
  const std::size_t d = phi_.dim();
  if (level + 1 == levels_.size()) {
    std::complex<double> phase = 0;
    for (std::size_t k = 0; k < d; ++k) {
      double t = 0;
      for (std::size_t j = 0; j < d; ++j) t += base_inverse_d_[k][j] * v[j];
      if (t <= 0 || t >= 1) return 0;
      phase += t * y[lv.ids[k]];
    }
    return std::exp(std::complex<double>(0, 1) * phase) * base_weight_.get_d();
  }
  const IntVector& alpha = lv.vectors.back();
  const std::complex<double> yk = y[lv.ids.back()];
  std::vector<double> cuts{0.0, 1.0};
  for (const auto& n : lv.sub_walls) {
    double na = 0, a = 0;
    for (std::size_t j = 0; j < d; ++j) {
      na += static_cast<double>(n[j] * alpha[j]);
      a += static_cast<double>(n[j]) * v[j];
    }
    if (na == 0) continue;
    double lo = std::min(a, a - na), hi = std::max(a, a - na);
    for (double m = std::floor(lo) + 1; m < hi; m += 1) {
      double t = (a - m) / na;
      if (t > 0 && t < 1) cuts.push_back(t);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  const auto& [x, w] = gauss_legendre(std::max<std::size_t>(16, lv.ids.size() + 2));
  std::complex<double> sum = 0;
  std::vector<double> pt(d);
  for (std::size_t p = 0; p + 1 < cuts.size(); ++p) {
    double len = cuts[p + 1] - cuts[p];
    if (len <= 1e-15) continue;
    for (std::size_t j = 0; j < x.size(); ++j) {
      double t = cuts[p] + len * x[j];
      for (std::size_t i = 0; i < d; ++i) pt[i] = v[i] - t * static_cast<double>(alpha[i]);
      auto val = eval_level_numeric(level + 1, y, pt);
      if (val != 0.0) sum += len * w[j] * std::exp(std::complex<double>(0, 1) * (t * yk)) * val;
    }
  }
  return sum;
}

Rational BoxSpline::eval_exact(const RationalVector& v) const { return eval_level(0, v); }

std::complex<double> BoxSpline::eval_numeric(const ParameterList& y, const std::vector<double>& v) const {
  return eval_level_numeric(0, y, v);
}

RationalPolynomial tensor_interpolate(const std::vector<RationalVector>& nodes, const RationalVector& values) {
  const std::size_t d = nodes.size();
  // 1-D Lagrange basis polynomials, coefficient lists with constant term first
  std::vector<std::vector<RationalVector>> basis(d);
  for (std::size_t j = 0; j < d; ++j) {
    const auto& xs = nodes[j];
    for (std::size_t k = 0; k < xs.size(); ++k) {
      RationalVector poly{Rational(1)};
      Rational denom = 1;
      for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i == k) continue;
        RationalVector next(poly.size() + 1);
        for (std::size_t e = 0; e < poly.size(); ++e) {
          next[e + 1] += poly[e];
          next[e] -= poly[e] * xs[i];
        }
        poly = std::move(next);
        denom *= xs[k] - xs[i];
      }
      for (auto& c : poly) c /= denom;
      basis[j].push_back(std::move(poly));
    }
  }
  RationalPolynomial out(d);
  std::vector<std::size_t> idx(d, 0);
  for (std::size_t flat = 0; flat < values.size(); ++flat) {
    if (sgn(values[flat]) != 0) {
      RationalPolynomial term = RationalPolynomial::constant(d, values[flat]);
      for (std::size_t j = 0; j < d; ++j) {
        RationalPolynomial axis(d);
        const auto& p = basis[j][idx[j]];
        for (std::size_t e = 0; e < p.size(); ++e) {
          Exponent ex(d, 0);
          ex[j] = static_cast<int>(e);
          axis.add_term(ex, p[e]);
        }
        term = term * axis;
      }
      out += term;
    }
    for (std::size_t j = d; j-- > 0;) {
      if (++idx[j] < nodes[j].size()) break;
      idx[j] = 0;
    }
  }
  return out;
}

RationalPolynomial BoxSpline::interpolate(const Alcove& c) const {
  const std::size_t d = phi_.dim();
  const RationalVector& w = c.witness;
  if (!zonotope_contains(phi_, w)) return RationalPolynomial(d);
  // half-width keeping the grid strictly inside the alcove
  Rational delta;
  bool first = true;
  for (const auto& wall : walls(phi_)) {
    Rational x = dot(wall.normal, w);
    Rational frac = x - to_q(floor_to_int(x));
    Rational dist = std::min(frac, Rational(1 - frac));
    long long l1 = 0;
    for (auto a : wall.normal) l1 += std::llabs(a);
    Rational cand = dist / to_q(2 * l1);
    if (first || cand < delta) delta = cand;
    first = false;
  }
  const int degree = static_cast<int>(phi_.size() - d);
  std::vector<RationalVector> nodes(d);
  for (std::size_t j = 0; j < d; ++j) {
    if (degree == 0) {
      nodes[j].push_back(w[j]);
      continue;
    }
    for (int k = 0; k <= degree; ++k)
      nodes[j].push_back(w[j] + delta * (Rational(-1) + make_rational(2 * k, degree)));
  }
  RationalVector values;
  std::vector<std::size_t> idx(d, 0);
  const std::size_t total = static_cast<std::size_t>(std::pow(degree + 1, d));
  for (std::size_t flat = 0; flat < total; ++flat) {
    RationalVector pt(d);
    for (std::size_t j = 0; j < d; ++j) pt[j] = nodes[j][idx[j]];
    values.push_back(eval_level(0, pt));
    for (std::size_t j = d; j-- > 0;) {
      if (++idx[j] < nodes[j].size()) break;
      idx[j] = 0;
    }
  }
  RationalPolynomial poly = tensor_interpolate(nodes, values);
  if (poly.total_degree() > degree) fail(ErrorCode::Internal, "local piece exceeds the degree bound");
  std::mt19937_64 rng(0x5eedULL + static_cast<std::uint64_t>(c.slabs.empty() ? 0 : c.slabs[0]));
  std::uniform_int_distribution<int> u(-97, 97);
  for (int check = 0; check < 5; ++check) {
    RationalVector pt(d);
    for (std::size_t j = 0; j < d; ++j) pt[j] = w[j] + delta * make_rational(u(rng), 98);
    if (poly.evaluate(pt) != eval_level(0, pt)) fail(ErrorCode::Internal, "local polynomial self-check failed");
  }
  return poly;
}

const RationalPolynomial& BoxSpline::local_polynomial(const Alcove& c) const {
  {
    std::lock_guard lock(mu_);
    auto it = cache_.find(c.slabs);
    if (it != cache_.end()) return it->second;
  }
  RationalPolynomial poly = interpolate(c);
  std::lock_guard lock(mu_);
  return cache_.emplace(c.slabs, std::move(poly)).first->second;
}

Rational eval_exact(const DirectionList& phi, const RationalVector& v) {
  phi.require_spanning();
  if (!is_regular(phi, v)) fail(ErrorCode::NotRegular, "evaluation point lies on an affine wall");
  return BoxSpline::get(phi)->eval_exact(v);
}

std::complex<double> eval(const DirectionList& phi, const ParameterList& y, const RationalVector& v) {
  phi.require_spanning();
  if (y.size() != phi.size()) fail(ErrorCode::DimensionMismatch, "parameter list length differs from N");
  if (!is_regular(phi, v)) fail(ErrorCode::NotRegular, "evaluation point lies on an affine wall");
  return BoxSpline::get(phi)->eval_numeric(y, to_double(v));
}

std::complex<double> eval_translated(const DirectionList& phi, const ParameterList& y, const Representation& rrep,
                                     const RationalVector& v) {
  phi.require_spanning();
  RationalVector shifted = v + rrep.point;
  if (!is_regular(phi, shifted)) fail(ErrorCode::NotRegularShifted, "v + r lies on an affine wall");
  std::complex<double> ry = 0;
  for (std::size_t k = 0; k < y.size(); ++k) ry += rrep.entries[k].get_d() * y[k];
  return std::exp(std::complex<double>(0, -1) * ry) * eval(phi, y, shifted);
}

PiecewiseLocalPiece local_polynomial(const DirectionList& phi, const Alcove& c) {
  phi.require_spanning();
  PiecewiseLocalPiece piece;
  piece.alcove = c;
  piece.kind = PiecewiseLocalPiece::Kind::ExactPolynomial;
  piece.poly = BoxSpline::get(phi)->local_polynomial(c);
  return piece;
}

PiecewiseLocalPiece local_sampler(const DirectionList& phi, const ParameterList& y, const Alcove& c) {
  phi.require_spanning();
  PiecewiseLocalPiece piece;
  piece.alcove = c;
  piece.kind = PiecewiseLocalPiece::Kind::NumericSampler;
  piece.y = y;
  auto spline = BoxSpline::get(phi);
  piece.sampler = [spline, y](const std::vector<double>& x) { return spline->eval_numeric(y, x); };
  return piece;
}

}  // namespace boxdeconv
