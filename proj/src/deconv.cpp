#include "boxdeconv/deconv.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <tuple>

#include "boxdeconv/errors.hpp"
#include "boxdeconv/lp.hpp"

namespace boxdeconv {

namespace {

// Data of b(phi, s, y) = prod_{k outside}(s^a e^{iy} delta_a - 1) * b(phi(s), y0).
struct VertexPart {
  TorusPoint s;
  std::vector<std::size_t> inside, outside;
  DirectionList sub;
  std::shared_ptr<const BoxSpline> spline;
  IntVector lo, hi;
  // one entry per subset K of `outside`
  std::vector<IntVector> shift;              // alpha_K
  std::vector<int> sign;                     // (-1)^{|outside| - |K|}
  std::vector<std::vector<std::size_t>> members;  // K
};

VertexPart make_part(const DirectionList& phi, const TorusPoint& s) {
  VertexPart part;
  part.s = s;
  part.inside = phi_s_indices(phi, s);
  for (std::size_t k = 0, j = 0; k < phi.size(); ++k) {
    if (j < part.inside.size() && part.inside[j] == k)
      ++j;
    else
      part.outside.push_back(k);
  }
  part.sub = phi.sublist(part.inside);
  if (part.inside.empty() || !part.sub.spans()) fail(ErrorCode::NotSpanningSub, "phi(s) does not span");
  part.spline = BoxSpline::get(part.sub);
  std::tie(part.lo, part.hi) = zonotope_bounds(part.sub);
  const std::size_t m = part.outside.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
    IntVector a(phi.dim(), 0);
    std::vector<std::size_t> mem;
    for (std::size_t b = 0; b < m; ++b)
      if (mask >> b & 1) {
        a = a + phi[part.outside[b]];
        mem.push_back(part.outside[b]);
      }
    part.shift.push_back(a);
    part.sign.push_back((m - mem.size()) % 2 == 0 ? 1 : -1);
    part.members.push_back(std::move(mem));
  }
  return part;
}

const std::vector<VertexPart>& vertex_parts(const DirectionList& phi) {
  static std::mutex mu;
  static std::map<DirectionList, std::vector<VertexPart>> cache;
  {
    std::lock_guard lock(mu);
    auto it = cache.find(phi);
    if (it != cache.end()) return it->second;
  }
  std::vector<VertexPart> parts;
  for (const auto& s : vertex_set(phi)) parts.push_back(make_part(phi, s));
  std::lock_guard lock(mu);
  return cache.emplace(phi, std::move(parts)).first->second;
}

bool outside_bounds(const IntVector& lo, const IntVector& hi, const RationalVector& x) {
  for (std::size_t j = 0; j < x.size(); ++j)
    if (x[j] <= to_q(lo[j]) || x[j] >= to_q(hi[j])) return true;
  return false;
}

// Exact operator applied to every local polynomial of b(phi(s)), memoized per alcove.
class AppliedPieces {
 public:
  AppliedPieces(const VertexPart& part, Polynomial<Cyclotomic> op) : part_(part), op_(std::move(op)) {}

  const Polynomial<Cyclotomic>& get(const RationalVector& x) const {
    Alcove c = alcove_of(part_.sub, x);
    {
      std::lock_guard lock(mu_);
      auto it = cache_.find(c.slabs);
      if (it != cache_.end()) return it->second;
    }
    auto applied = apply_partials(op_, part_.spline->local_polynomial(c));
    std::lock_guard lock(mu_);
    return cache_.emplace(c.slabs, std::move(applied)).first->second;
  }

 private:
  const VertexPart& part_;
  Polynomial<Cyclotomic> op_;
  mutable std::mutex mu_;
  mutable std::map<std::vector<long long>, Polynomial<Cyclotomic>> cache_;
};

using AppliedKey = std::tuple<DirectionList, RationalVector, int, bool, RationalVector>;

const AppliedPieces& applied_pieces(const DirectionList& phi, const VertexPart& part, int L,
                                    const Representation* r) {
  static std::mutex mu;
  static std::map<AppliedKey, std::unique_ptr<AppliedPieces>> cache;
  AppliedKey key{phi, part.s.angle, L, r != nullptr, r ? r->entries : RationalVector{}};
  {
    std::lock_guard lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return *it->second;
  }
  ExactOperator op = r ? todd_operator_translated(phi, part.s, *r, L) : todd_operator(phi, part.s, L);
  auto pieces = std::make_unique<AppliedPieces>(part, to_partials(op, phi));
  std::lock_guard lock(mu);
  return *cache.emplace(key, std::move(pieces)).first->second;
}

// (D P(s, 0, f)^c)(at) where c is the phi-alcove of the witness.
Cyclotomic exact_piece_value(const VertexPart& part, const AppliedPieces& ap, const LatticeFunction& f,
                             const RationalVector& witness, const RationalVector& at) {
  Cyclotomic total(0);
  for (const auto& [xi, fx] : f.values()) {
    const Cyclotomic fxi = Cyclotomic::gaussian(fx);
    for (std::size_t k = 0; k < part.shift.size(); ++k) {
      IntVector offset = xi + part.shift[k];
      RationalVector x = witness - offset;
      if (outside_bounds(part.lo, part.hi, x)) continue;
      const auto& dp = ap.get(x);
      if (dp.is_zero()) continue;
      Cyclotomic val = dp.evaluate(at - offset);
      if (val.is_zero()) continue;
      Cyclotomic c = fxi * character(part.s, offset) * val;
      total += part.sign[k] > 0 ? c : -c;
    }
  }
  return total;
}

ParameterList restrict_to(const ParameterList& y, const std::vector<std::size_t>& idx) {
  ParameterList out;
  for (auto k : idx) out.push_back(y[k]);
  return out;
}

// Sampler of the local analytic piece of P(s, y, f) near a box.
Sampler numeric_piece_sampler(const VertexPart& part, const ParameterList& y, const LatticeFunction& f, const Box& box) {
  struct Term {
    std::complex<double> coef;
    std::vector<double> offset;
  };
  std::vector<Term> terms;
  const std::complex<double> i(0, 1);
  const std::size_t d = box.center.size();
  for (const auto& [xi, fx] : f.values()) {
    for (std::size_t k = 0; k < part.shift.size(); ++k) {
      IntVector offset = xi + part.shift[k];
      bool meets = true;
      for (std::size_t j = 0; j < d && meets; ++j) {
        double lo = box.center[j] - box.half[j] - static_cast<double>(offset[j]);
        double hi = box.center[j] + box.half[j] - static_cast<double>(offset[j]);
        meets = hi > static_cast<double>(part.lo[j]) && lo < static_cast<double>(part.hi[j]);
      }
      if (!meets) continue;
      std::complex<double> c = fx.to_complex() * character_numeric(part.s, offset) * static_cast<double>(part.sign[k]);
      for (auto m : part.members[k]) c *= std::exp(i * y[m]);
      std::vector<double> off(d);
      for (std::size_t j = 0; j < d; ++j) off[j] = static_cast<double>(offset[j]);
      terms.push_back({c, off});
    }
  }
  ParameterList y0 = restrict_to(y, part.inside);
  auto spline = part.spline;
  return [terms, y0, spline](const std::vector<double>& x) {
    std::complex<double> sum = 0;
    std::vector<double> pt(x.size());
    for (const auto& t : terms) {
      for (std::size_t j = 0; j < x.size(); ++j) pt[j] = x[j] - t.offset[j];
      sum += t.coef * spline->eval_numeric(y0, pt);
    }
    return sum;
  };
}

std::complex<double> numeric_piece_value(const DirectionList& phi, const VertexPart& part, const ParameterList& y,
                                         const LatticeFunction& f, const RationalVector& witness,
                                         const RationalVector& at, const Representation* r, int L) {
  NumericOperator op = r ? todd_operator_translated(phi, part.s, y, *r, L) : todd_operator(phi, part.s, y, L);
  Box box = alcove_box(phi, witness);
  ExpPolyFit fit(part.sub, restrict_to(y, part.inside), box, numeric_piece_sampler(part, y, f, box),
                 series_config().fit_tolerance);
  return fit.apply(to_partials(op, phi), to_double(at));
}

void check_y(const DirectionList& phi, const ParameterList& y) {
  if (!y.empty() && y.size() != phi.size()) fail(ErrorCode::DimensionMismatch, "parameter list length differs from N");
}

// Sum over the vertex set of s^{-lambda} (D P(s))(at), the piece taken on the alcove of the witness.
Value vertex_sum(const DirectionList& phi, const ParameterList& y, const LatticeFunction& f, const IntVector& lambda,
                 const RationalVector& witness, const RationalVector& at, const Representation* r) {
  const auto& parts = vertex_parts(phi);
  IntVector minus(lambda.size());
  for (std::size_t j = 0; j < lambda.size(); ++j) minus[j] = -lambda[j];
  if (y.empty() || is_zero(y)) {
    const int L = static_cast<int>(phi.size() - phi.dim());
    Cyclotomic total(0);
    for (const auto& part : parts) {
      const AppliedPieces& ap = applied_pieces(phi, part, L, r);
      Cyclotomic v = exact_piece_value(part, ap, f, witness, at);
      if (!v.is_zero()) total += character(part.s, minus) * v;
    }
    return Value::from_exact(total);
  }
  const int L = truncation_order(phi, y);
  std::complex<double> total = 0;
  for (const auto& part : parts)
    total += character_numeric(part.s, minus) * numeric_piece_value(phi, part, y, f, witness, at, r, L);
  if (r) {
    std::complex<double> ry = 0;
    for (std::size_t k = 0; k < y.size(); ++k) ry += r->entries[k].get_d() * y[k];
    total *= std::exp(std::complex<double>(0, -1) * ry);
  }
  return Value::from_numeric(total);
}

}  // namespace

Value semidiscrete(const DirectionList& phi, const ParameterList& y, const LatticeFunction& f, const RationalVector& v) {
  phi.require_spanning();
  check_y(phi, y);
  if (!is_regular(phi, v)) fail(ErrorCode::NotRegular, "evaluation point lies on an affine wall");
  auto spline = BoxSpline::get(phi);
  auto [lo, hi] = zonotope_bounds(phi);
  if (y.empty() || is_zero(y)) {
    Cyclotomic total(0);
    for (const auto& [lambda, fx] : f.values()) {
      RationalVector x = v - lambda;
      if (outside_bounds(lo, hi, x)) continue;
      Rational b = spline->eval_exact(x);
      if (sgn(b) != 0) total += Cyclotomic::gaussian(fx * GaussianRational(b));
    }
    return Value::from_exact(total);
  }
  std::complex<double> total = 0;
  for (const auto& [lambda, fx] : f.values()) {
    RationalVector x = v - lambda;
    if (outside_bounds(lo, hi, x)) continue;
    total += fx.to_complex() * spline->eval_numeric(y, to_double(x));
  }
  return Value::from_numeric(total);
}

Value p_s(const DirectionList& phi, const TorusPoint& s, const ParameterList& y, const LatticeFunction& f,
          const RationalVector& v) {
  phi.require_spanning();
  check_y(phi, y);
  VertexPart part = make_part(phi, s);
  if (!is_regular(part.sub, v)) fail(ErrorCode::NotRegular, "evaluation point lies on an affine wall of phi(s)");
  const bool exact = y.empty() || is_zero(y);
  ParameterList y0 = exact ? ParameterList{} : restrict_to(y, part.inside);
  Cyclotomic total(0);
  std::complex<double> numeric = 0;
  const std::complex<double> i(0, 1);
  for (const auto& [xi, fx] : f.values()) {
    for (std::size_t k = 0; k < part.shift.size(); ++k) {
      IntVector offset = xi + part.shift[k];
      RationalVector x = v - offset;
      if (outside_bounds(part.lo, part.hi, x)) continue;
      if (exact) {
        Rational b = part.spline->eval_exact(x);
        if (sgn(b) == 0) continue;
        Cyclotomic c = Cyclotomic::gaussian(fx) * character(s, offset) * Cyclotomic(b);
        total += part.sign[k] > 0 ? c : -c;
      } else {
        std::complex<double> c = fx.to_complex() * character_numeric(s, offset) * static_cast<double>(part.sign[k]);
        for (auto m : part.members[k]) c *= std::exp(i * y[m]);
        numeric += c * part.spline->eval_numeric(y0, to_double(x));
      }
    }
  }
  return exact ? Value::from_exact(total) : Value::from_numeric(numeric);
}

Polynomial<Cyclotomic> p_s_local_polynomial(const DirectionList& phi, const TorusPoint& s, const LatticeFunction& f,
                                            const RationalVector& witness) {
  phi.require_spanning();
  if (!is_regular(phi, witness)) fail(ErrorCode::NotRegular, "witness lies on an affine wall");
  VertexPart part = make_part(phi, s);
  Polynomial<Cyclotomic> out(phi.dim());
  for (const auto& [xi, fx] : f.values()) {
    for (std::size_t k = 0; k < part.shift.size(); ++k) {
      IntVector offset = xi + part.shift[k];
      RationalVector x = witness - offset;
      if (outside_bounds(part.lo, part.hi, x)) continue;
      const auto& poly = part.spline->local_polynomial(alcove_of(part.sub, x));
      if (poly.is_zero()) continue;
      Cyclotomic c = Cyclotomic::gaussian(fx) * character(s, offset);
      if (part.sign[k] < 0) c = -c;
      RationalVector back(offset.size());
      for (std::size_t j = 0; j < offset.size(); ++j) back[j] = to_q(-offset[j]);
      out += poly.shifted(back).cast<Cyclotomic>().scaled(c);
    }
  }
  return out;
}

Value deconvolve(const DirectionList& phi, const ParameterList& y, const LatticeFunction& f, const IntVector& lambda,
                 const RationalVector& eps) {
  phi.require_spanning();
  check_y(phi, y);
  RationalVector at = to_rational(lambda);
  RationalVector witness = limit_point(phi, at, eps);
  return vertex_sum(phi, y, f, lambda, witness, at, nullptr);
}

Value deconvolve_translated(const DirectionList& phi, const ParameterList& y, const Representation& rrep,
                            const LatticeFunction& f, const IntVector& lambda, const RationalVector& eps) {
  phi.require_spanning();
  check_y(phi, y);
  if (!zonotope_contains(phi, rrep.point)) fail(ErrorCode::PointOutsideZonotope, "r is not in Z(Phi)");
  if (!is_generic(phi, eps)) fail(ErrorCode::NotGeneric, "direction lies on a wall");
  if (!tangent_cone_contains(phi, rrep, eps))
    fail(ErrorCode::DirectionOutsideCone, "epsilon is not in the tangent cone of Z(Phi) at r");
  RationalVector at = to_rational(lambda) + rrep.point;
  RationalVector witness = limit_point(phi, at, eps);
  return vertex_sum(phi, y, f, lambda, witness, at, &rrep);
}

bool alcove_covers(const DirectionList& phi, const Alcove& c, const IntVector& lambda) {
  const auto& ws = walls(phi);
  const std::size_t n = phi.size(), w = ws.size();
  // columns: t (n), delta, lower slacks (w), upper slacks (w)
  const std::size_t cols = n + 1 + 2 * w;
  LinearProgram lp;
  lp.c.assign(cols, Rational(0));
  lp.c[n] = 1;
  lp.upper.assign(cols, std::nullopt);
  for (std::size_t k = 0; k <= n; ++k) lp.upper[k] = Rational(1);
  for (std::size_t i = 0; i < w; ++i) {
    const IntVector& normal = ws[i].normal;
    Rational nl = to_q(dot(normal, lambda));
    RationalVector lower(cols), upper(cols);
    for (std::size_t k = 0; k < n; ++k) {
      Rational na = to_q(dot(normal, phi[k]));
      lower[k] = na;
      upper[k] = na;
    }
    lower[n] = -1;
    lower[n + 1 + i] = -1;
    upper[n] = 1;
    upper[n + 1 + w + i] = 1;
    lp.a.push_back(lower);
    lp.b.push_back(to_q(c.slabs[i]) - nl);
    lp.a.push_back(upper);
    lp.b.push_back(to_q(c.slabs[i] + 1) - nl);
  }
  LpResult res = solve_lp(lp);
  return res.status == LpStatus::Optimal && sgn(res.value) > 0;
}

Value reconstruct_from_alcove(const DirectionList& phi, const ParameterList& y, const Alcove& c,
                              const LatticeFunction& f, const IntVector& lambda) {
  phi.require_spanning();
  check_y(phi, y);
  if (!alcove_covers(phi, c, lambda)) fail(ErrorCode::LatticePointNotCovered, "lambda is not in c - Z(Phi)");
  return vertex_sum(phi, y, f, lambda, c.witness, to_rational(lambda), nullptr);
}

Value dm_quasipolynomial(const DirectionList& phi, const Alcove& c, const IntVector& nu) {
  phi.require_spanning();
  LatticeFunction delta = LatticeFunction::delta(IntVector(phi.dim(), 0));
  return vertex_sum(phi, {}, delta, nu, c.witness, to_rational(nu), nullptr);
}

}  // namespace boxdeconv
