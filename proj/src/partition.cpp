#include "boxdeconv/partition.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <random>

#include "boxdeconv/arrangement.hpp"
#include "boxdeconv/boxspline.hpp"
#include "boxdeconv/errors.hpp"
#include "boxdeconv/exppoly.hpp"
#include "boxdeconv/lp.hpp"
#include "boxdeconv/series.hpp"
#include "boxdeconv/torus.hpp"

namespace boxdeconv {

namespace {

void require_salient(const DirectionList& phi) {
  if (!phi.salient()) fail(ErrorCode::NotSalient, "directions do not lie in an open half-space");
}

// h with h.alpha_k >= 1 for all k, minimizing |h|_1.
const RationalVector& positive_functional(const DirectionList& phi) {
  static std::mutex mu;
  static std::map<DirectionList, RationalVector> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(phi);
  if (it != cache.end()) return it->second;
  const std::size_t d = phi.dim(), n = phi.size();
  LinearProgram lp;
  lp.c.assign(2 * d + n, Rational(0));
  for (std::size_t j = 0; j < 2 * d; ++j) lp.c[j] = -1;
  for (std::size_t k = 0; k < n; ++k) {
    RationalVector row(2 * d + n);
    for (std::size_t j = 0; j < d; ++j) {
      row[j] = to_q(phi[k][j]);
      row[d + j] = -to_q(phi[k][j]);
    }
    row[2 * d + k] = -1;
    lp.a.push_back(row);
    lp.b.push_back(Rational(1));
  }
  LpResult res = solve_lp(lp);
  if (res.status != LpStatus::Optimal) fail(ErrorCode::NotSalient, "no positive functional");
  RationalVector h(d);
  for (std::size_t j = 0; j < d; ++j) h[j] = res.x[j] - res.x[d + j];
  return cache.emplace(phi, h).first->second;
}

// Visits every p >= 0 with target - sum p_k alpha_k inside [lo, hi] (closed, componentwise).
template <class T>
class Enumerator {
 public:
  using Visit = std::function<void(const IntVector&, const std::vector<T>&)>;

  Enumerator(const DirectionList& phi, std::vector<T> lo, std::vector<T> hi, T slack)
      : phi_(phi), lo_(std::move(lo)), hi_(std::move(hi)), slack_(slack) {
    const RationalVector& hq = positive_functional(phi);
    for (const auto& x : hq) h_.push_back(convert(x));
    for (std::size_t k = 0; k < phi.size(); ++k) {
      T hk = 0;
      for (std::size_t j = 0; j < phi.dim(); ++j) hk += h_[j] * T(static_cast<long>(phi[k][j]));
      ha_.push_back(hk);
    }
    floor_h_ = 0;
    for (std::size_t j = 0; j < phi.dim(); ++j) floor_h_ += h_[j] > 0 ? h_[j] * lo_[j] : h_[j] * hi_[j];
  }

  void run(const std::vector<T>& target, const Visit& visit) {
    T budget = 0;
    for (std::size_t j = 0; j < target.size(); ++j) budget += h_[j] * target[j];
    budget -= floor_h_;
    if (budget < -slack_) return;
    IntVector p(phi_.size(), 0);
    std::vector<T> rest = target;
    descend(0, budget, p, rest, visit);
  }

 private:
  static T convert(const Rational& x) {
    if constexpr (std::is_same_v<T, double>)
      return x.get_d();
    else
      return x;
  }

  bool inside(const std::vector<T>& rest) const {
    for (std::size_t j = 0; j < rest.size(); ++j)
      if (rest[j] < lo_[j] - slack_ || rest[j] > hi_[j] + slack_) return false;
    return true;
  }

  void descend(std::size_t k, T budget, IntVector& p, std::vector<T>& rest, const Visit& visit) {
    if (k == phi_.size()) {
      if (inside(rest)) visit(p, rest);
      return;
    }
    const IntVector& a = phi_[k];
    for (long m = 0;; ++m) {
      T used = ha_[k] * T(m);
      if (used > budget + slack_) break;
      p[k] = m;
      std::vector<T> next = rest;
      for (std::size_t j = 0; j < next.size(); ++j) next[j] -= T(static_cast<long>(a[j]) * m);
      descend(k + 1, budget - used, p, next, visit);
    }
    p[k] = 0;
  }

  const DirectionList& phi_;
  std::vector<T> lo_, hi_;
  T slack_;
  std::vector<T> h_, ha_;
  T floor_h_;
};

// Half-width of the largest cube around w on which every wall keeps its sign.
Rational chamber_margin(const DirectionList& phi, const RationalVector& w) {
  Rational best = -1;
  for (const auto& wall : walls(phi)) {
    Rational nw = dot(wall.normal, w);
    long l1 = 0;
    for (auto c : wall.normal) l1 += std::labs(static_cast<long>(c));
    Rational m = abs(nw) / to_q(l1);
    if (best < 0 || m < best) best = m;
  }
  return best;
}

// Exact local polynomial of T(phi(s)) on the chamber, by interpolation of multispline values.
RationalPolynomial chamber_polynomial(const DirectionList& sub, const DirectionList& phi, const Chamber& tau) {
  const std::size_t d = phi.dim();
  const long D = static_cast<long>(sub.size() - d);
  const Rational margin = chamber_margin(phi, tau.witness);
  std::mt19937_64 rng(0x5eed);
  std::uniform_int_distribution<long> jitter(1, 96);
  for (int attempt = 0; attempt < 64; ++attempt) {
    RationalVector center = tau.witness;
    Rational delta = margin / 4;
    if (attempt > 0) {
      for (auto& c : center) c += margin * make_rational(jitter(rng), 1024);
      delta = margin * make_rational(jitter(rng), 512);
    }
    std::vector<RationalVector> nodes(d);
    for (std::size_t j = 0; j < d; ++j)
      for (long k = 0; k <= D; ++k)
        nodes[j].push_back(D == 0 ? center[j] : center[j] + delta * (make_rational(2 * k, D) - 1));
    std::vector<RationalVector> points(1, RationalVector{});
    for (std::size_t j = 0; j < d; ++j) {
      std::vector<RationalVector> grown;
      for (const auto& pt : points)
        for (const auto& x : nodes[j]) {
          RationalVector q = pt;
          q.push_back(x);
          grown.push_back(std::move(q));
        }
      points = std::move(grown);
    }
    bool regular = true;
    for (const auto& pt : points) regular = regular && is_regular(sub, pt);
    if (!regular) continue;
    RationalVector values;
    for (const auto& pt : points) values.push_back(*multispline_eval(sub, {}, pt).exact_value.to_rational());
    RationalPolynomial poly = tensor_interpolate(nodes, values);
    RationalVector probe = center;
    for (auto& c : probe) c += margin * make_rational(jitter(rng), 211);
    if (!is_regular(sub, probe)) return poly;
    if (poly.evaluate(probe) == *multispline_eval(sub, {}, probe).exact_value.to_rational()) return poly;
    fail(ErrorCode::Internal, "chamber interpolation failed its self-check");
  }
  fail(ErrorCode::SearchExhausted, "no regular interpolation grid inside the chamber");
}

const Polynomial<Cyclotomic>& exact_applied(const DirectionList& phi, const Chamber& tau, const TorusPoint& s) {
  static std::mutex mu;
  static std::map<std::tuple<DirectionList, std::vector<int>, RationalVector>, Polynomial<Cyclotomic>> cache;
  auto key = std::make_tuple(phi, tau.signs, s.angle);
  {
    std::lock_guard lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  DirectionList sub = phi_s(phi, s);
  RationalPolynomial t = chamber_polynomial(sub, phi, tau);
  const int L = static_cast<int>(phi.size() - phi.dim());
  auto applied = apply_partials(to_partials(todd_operator(phi, s, L), phi), t.cast<Cyclotomic>());
  if ((phi.size() - sub.size()) % 2 == 1) applied = applied.scaled(Cyclotomic(-1));
  std::lock_guard lock(mu);
  return cache.emplace(key, std::move(applied)).first->second;
}

using FitKey = std::tuple<DirectionList, std::vector<std::pair<double, double>>, std::vector<int>, RationalVector>;

const ExpPolyFit& numeric_fit(const DirectionList& phi, const ParameterList& y, const Chamber& tau,
                              const TorusPoint& s) {
  static std::mutex mu;
  static std::map<FitKey, std::unique_ptr<ExpPolyFit>> cache;
  std::vector<std::pair<double, double>> ykey;
  for (const auto& z : y) ykey.emplace_back(z.real(), z.imag());
  FitKey key{phi, ykey, tau.signs, s.angle};
  {
    std::lock_guard lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return *it->second;
  }
  auto inside = phi_s_indices(phi, s);
  DirectionList sub = phi.sublist(inside);
  ParameterList y0;
  for (auto k : inside) y0.push_back(y[k]);
  // a cube well inside the chamber cone, away from the apex
  const double scale = 8, margin = chamber_margin(phi, tau.witness).get_d();
  Box box;
  for (const auto& c : tau.witness) box.center.push_back(c.get_d() * scale);
  box.half.assign(phi.dim(), 0.9 * margin * scale);
  auto spline = BoxSpline::get(sub);
  auto [lo, hi] = zonotope_bounds(sub);
  std::vector<double> lod(lo.begin(), lo.end()), hid(hi.begin(), hi.end());
  Sampler sample = [&](const std::vector<double>& x) {
    std::complex<double> sum = 0;
    Enumerator<double>(sub, lod, hid, 1e-9).run(x, [&](const IntVector& p, const std::vector<double>& rest) {
      std::complex<double> py = 0;
      for (std::size_t k = 0; k < p.size(); ++k) py += static_cast<double>(p[k]) * y0[k];
      sum += std::exp(std::complex<double>(0, 1) * py) * spline->eval_numeric(y0, rest);
    });
    return sum;
  };
  auto fit = std::make_unique<ExpPolyFit>(sub, y0, box, sample, series_config().fit_tolerance);
  std::lock_guard lock(mu);
  return *cache.emplace(key, std::move(fit)).first->second;
}

}  // namespace

Integer partition_count(const DirectionList& phi, const IntVector& nu) {
  require_salient(phi);
  if (nu.size() != phi.dim()) fail(ErrorCode::DimensionMismatch, "nu has the wrong dimension");
  RationalVector zero(phi.dim());
  Integer count = 0;
  Enumerator<Rational>(phi, zero, zero, Rational(0)).run(to_rational(nu), [&](const IntVector&, const RationalVector&) {
    ++count;
  });
  return count;
}

std::complex<double> partition_trace(const DirectionList& phi, const ParameterList& y, const IntVector& nu) {
  require_salient(phi);
  if (nu.size() != phi.dim()) fail(ErrorCode::DimensionMismatch, "nu has the wrong dimension");
  if (!y.empty() && y.size() != phi.size()) fail(ErrorCode::DimensionMismatch, "parameter list length differs from N");
  RationalVector zero(phi.dim());
  std::complex<double> sum = 0;
  const std::complex<double> i(0, 1);
  Enumerator<Rational>(phi, zero, zero, Rational(0)).run(to_rational(nu), [&](const IntVector& p, const RationalVector&) {
    std::complex<double> py = 0;
    for (std::size_t k = 0; k < p.size() && !y.empty(); ++k) py += static_cast<double>(p[k]) * y[k];
    sum += std::exp(i * py);
  });
  return sum;
}

Value multispline_eval(const DirectionList& phi, const ParameterList& y, const RationalVector& v) {
  require_salient(phi);
  phi.require_spanning();
  if (!y.empty() && y.size() != phi.size()) fail(ErrorCode::DimensionMismatch, "parameter list length differs from N");
  if (!is_regular(phi, v)) fail(ErrorCode::NotRegular, "point lies on an affine wall");
  auto spline = BoxSpline::get(phi);
  auto [lo, hi] = zonotope_bounds(phi);
  Enumerator<Rational> en(phi, to_rational(lo), to_rational(hi), Rational(0));
  if (y.empty() || is_zero(y)) {
    Rational sum = 0;
    en.run(v, [&](const IntVector&, const RationalVector& rest) { sum += spline->eval_exact(rest); });
    return Value::from_exact(Cyclotomic(sum));
  }
  std::complex<double> sum = 0;
  const std::complex<double> i(0, 1);
  en.run(v, [&](const IntVector& p, const RationalVector& rest) {
    std::complex<double> py = 0;
    for (std::size_t k = 0; k < p.size(); ++k) py += static_cast<double>(p[k]) * y[k];
    sum += std::exp(i * py) * spline->eval_numeric(y, to_double(rest));
  });
  return Value::from_numeric(sum);
}

bool on_cone_boundary(const DirectionList& phi, const RationalVector& v) {
  bool all_zero = true;
  for (const auto& x : v) all_zero = all_zero && sgn(x) == 0;
  if (all_zero) return true;
  for (const auto& wall : walls(phi)) {
    if (sgn(dot(wall.normal, v)) != 0) continue;
    std::vector<std::size_t> in_wall;
    for (std::size_t k = 0; k < phi.size(); ++k)
      if (dot(wall.normal, phi[k]) == 0) in_wall.push_back(k);
    if (cone_contains(phi.sublist(in_wall), v)) return true;
  }
  return false;
}

Chamber chamber_of(const DirectionList& phi, const RationalVector& v) {
  phi.require_spanning();
  if (v.size() != phi.dim()) fail(ErrorCode::DimensionMismatch, "point has the wrong dimension");
  if (on_cone_boundary(phi, v)) fail(ErrorCode::OnConeBoundary, "point lies on the boundary of a cone of a sublist");
  const auto& ws = walls(phi);
  RationalVector w = v;
  bool on_wall = false;
  for (const auto& wall : ws) on_wall = on_wall || sgn(dot(wall.normal, v)) == 0;
  if (on_wall) {
    RationalVector eps = generic_direction(phi, 0);
    std::optional<Rational> first;
    for (const auto& wall : ws) {
      Rational nv = dot(wall.normal, v), ne = dot(wall.normal, eps);
      if (sgn(nv) == 0 || sgn(nv) == sgn(ne)) continue;
      Rational t = -nv / ne;
      if (!first || t < *first) first = t;
    }
    Rational step = first ? *first / 2 : Rational(1);
    for (std::size_t j = 0; j < w.size(); ++j) w[j] += step * eps[j];
  }
  Chamber tau;
  tau.witness = w;
  for (const auto& wall : ws) tau.signs.push_back(sgn(dot(wall.normal, w)));
  return tau;
}

bool chamber_covers(const DirectionList& phi, const Chamber& tau, const IntVector& nu) {
  const auto& ws = walls(phi);
  const std::size_t n = phi.size(), w = ws.size();
  // columns: t (n), delta, slacks (w)
  LinearProgram lp;
  lp.c.assign(n + 1 + w, Rational(0));
  lp.c[n] = 1;
  lp.upper.assign(n + 1 + w, std::nullopt);
  for (std::size_t k = 0; k <= n; ++k) lp.upper[k] = Rational(1);
  for (std::size_t i = 0; i < w; ++i) {
    const Rational sign = tau.signs[i];
    RationalVector row(n + 1 + w);
    for (std::size_t k = 0; k < n; ++k) row[k] = sign * to_q(dot(ws[i].normal, phi[k]));
    row[n] = -1;
    row[n + 1 + i] = -1;
    lp.a.push_back(row);
    lp.b.push_back(-sign * to_q(dot(ws[i].normal, nu)));
  }
  LpResult res = solve_lp(lp);
  return res.status == LpStatus::Optimal && sgn(res.value) > 0;
}

Value partition_via_todd(const DirectionList& phi, const ParameterList& y, const IntVector& nu, const Chamber& tau) {
  require_salient(phi);
  phi.require_spanning();
  if (!y.empty() && y.size() != phi.size()) fail(ErrorCode::DimensionMismatch, "parameter list length differs from N");
  if (tau.signs.size() != walls(phi).size()) fail(ErrorCode::DimensionMismatch, "chamber does not belong to phi");
  if (!chamber_covers(phi, tau, nu)) fail(ErrorCode::NuNotCovered, "nu is not in tau - Z(phi)");
  IntVector minus(nu.size());
  for (std::size_t j = 0; j < nu.size(); ++j) minus[j] = -nu[j];
  if (y.empty() || is_zero(y)) {
    Cyclotomic total(0);
    for (const auto& s : vertex_set(phi)) {
      Cyclotomic v = exact_applied(phi, tau, s).evaluate(to_rational(nu));
      if (!v.is_zero()) total += character(s, minus) * v;
    }
    return Value::from_exact(total);
  }
  const int L = truncation_order(phi, y);
  const std::vector<double> at = to_double(to_rational(nu));
  std::complex<double> total = 0;
  for (const auto& s : vertex_set(phi)) {
    auto op = to_partials(todd_operator(phi, s, y, L), phi);
    std::complex<double> v = numeric_fit(phi, y, tau, s).apply(op, at);
    if ((phi.size() - phi_s_indices(phi, s).size()) % 2 == 1) v = -v;
    total += character_numeric(s, minus) * v;
  }
  return Value::from_numeric(total);
}

}  // namespace boxdeconv
