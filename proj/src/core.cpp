#include "boxdeconv/core.hpp"

#include "boxdeconv/errors.hpp"
#include "boxdeconv/lp.hpp"

namespace boxdeconv {

DirectionList::DirectionList(std::size_t dim, IntMatrix vectors) : dim_(dim), vectors_(std::move(vectors)) {
  if (vectors_.empty()) fail(ErrorCode::EmptyList, "direction list is empty");
  if (dim_ == 0) fail(ErrorCode::DimensionMismatch, "dimension must be positive");
  for (const auto& v : vectors_)
    if (v.size() != dim_)
      fail(ErrorCode::DimensionMismatch, "vector of length " + std::to_string(v.size()) + " in dimension " + std::to_string(dim_));
  spans_ = rank(transpose(vectors_)) == dim_;

  // salient: 0 is not a convex combination of the directions
  const std::size_t n = vectors_.size();
  LinearProgram lp;
  lp.c.assign(n, Rational(0));
  lp.a.assign(dim_ + 1, RationalVector(n));
  lp.b.assign(dim_ + 1, Rational(0));
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < dim_; ++j) lp.a[j][k] = Rational(static_cast<long>(vectors_[k][j]));
    lp.a[dim_][k] = 1;
  }
  lp.b[dim_] = 1;
  salient_ = !feasible(lp);
}

DirectionList validate(std::size_t dim, const IntMatrix& vectors) { return DirectionList(dim, vectors); }

DirectionList DirectionList::sublist(const std::vector<std::size_t>& indices) const {
  DirectionList out;
  out.dim_ = dim_;
  for (auto k : indices) out.vectors_.push_back(vectors_[k]);
  if (out.vectors_.empty()) return out;
  return DirectionList(dim_, out.vectors_);
}

RationalVector DirectionList::combine(const RationalVector& c) const {
  RationalVector out(dim_);
  for (std::size_t k = 0; k < vectors_.size(); ++k) {
    if (sgn(c[k]) == 0) continue;
    for (std::size_t j = 0; j < dim_; ++j) out[j] += c[k] * Rational(static_cast<long>(vectors_[k][j]));
  }
  return out;
}

IntVector DirectionList::combine(const IntVector& c) const {
  IntVector out(dim_, 0);
  for (std::size_t k = 0; k < vectors_.size(); ++k)
    for (std::size_t j = 0; j < dim_; ++j) out[j] += c[k] * vectors_[k][j];
  return out;
}

void DirectionList::require_spanning() const {
  if (!spans_) fail(ErrorCode::NotSpanning, "directions do not span R^" + std::to_string(dim_));
}

bool is_zero(const ParameterList& y) {
  for (const auto& v : y)
    if (v != std::complex<double>(0.0, 0.0)) return false;
  return true;
}

Representation make_representation(const DirectionList& phi, RationalVector entries) {
  if (entries.size() != phi.size())
    fail(ErrorCode::DimensionMismatch, "representation has " + std::to_string(entries.size()) + " entries for " +
                                           std::to_string(phi.size()) + " directions");
  Representation r;
  r.point = phi.combine(entries);
  r.entries = std::move(entries);
  return r;
}

void LatticeFunction::set(const IntVector& point, const GaussianRational& value) {
  if (dim_ == 0) dim_ = point.size();
  if (point.size() != dim_) fail(ErrorCode::DimensionMismatch, "lattice point of wrong dimension");
  if (value.is_zero())
    values_.erase(point);
  else
    values_[point] = value;
}

GaussianRational LatticeFunction::operator()(const IntVector& point) const {
  auto it = values_.find(point);
  return it == values_.end() ? GaussianRational() : it->second;
}

LatticeFunction LatticeFunction::translated(const IntVector& kappa) const {
  LatticeFunction out(dim_);
  for (const auto& [p, v] : values_) out.set(p + kappa, v);
  return out;
}

LatticeFunction LatticeFunction::scaled(const GaussianRational& c) const {
  LatticeFunction out(dim_);
  for (const auto& [p, v] : values_) out.set(p, v * c);
  return out;
}

LatticeFunction operator+(const LatticeFunction& a, const LatticeFunction& b) {
  LatticeFunction out = a;
  if (out.dim_ == 0) out.dim_ = b.dim_;
  for (const auto& [p, v] : b.values_) out.set(p, out(p) + v);
  return out;
}

LatticeFunction LatticeFunction::delta(const IntVector& at) {
  LatticeFunction f(at.size());
  f.set(at, GaussianRational(1));
  return f;
}

namespace {

// Equality rows sum_k x_k alpha_k (+ extra columns) = rhs.
LinearProgram combination_lp(const DirectionList& phi, const RationalVector& rhs, std::size_t extra) {
  const std::size_t n = phi.size(), d = phi.dim();
  LinearProgram lp;
  lp.a.assign(d, RationalVector(n + extra));
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t k = 0; k < n; ++k) lp.a[j][k] = Rational(static_cast<long>(phi[k][j]));
  lp.b = rhs;
  lp.c.assign(n + extra, Rational(0));
  lp.upper.assign(n + extra, Rational(1));
  return lp;
}

}  // namespace

bool zonotope_contains(const DirectionList& phi, const RationalVector& r) {
  return feasible(combination_lp(phi, r, 0));
}

bool tangent_cone_contains(const DirectionList& phi, const Representation& rrep, const RationalVector& eps) {
  if (!zonotope_contains(phi, rrep.point)) fail(ErrorCode::PointOutsideZonotope, "r is not in Z(Phi)");
  const std::size_t n = phi.size();
  LinearProgram lp = combination_lp(phi, rrep.point, 1);
  for (std::size_t j = 0; j < phi.dim(); ++j) lp.a[j][n] = -eps[j];
  lp.c[n] = 1;
  LpResult res = solve_lp(lp);
  return res.status == LpStatus::Optimal && sgn(res.value) > 0;
}

Representation center_representation(const DirectionList& phi) {
  return make_representation(phi, RationalVector(phi.size(), make_rational(1, 2)));
}

Representation any_representation(const DirectionList& phi, const RationalVector& r) {
  LpResult res = solve_lp(combination_lp(phi, r, 0));
  if (res.status != LpStatus::Optimal) fail(ErrorCode::PointOutsideZonotope, "r is not in Z(Phi)");
  return make_representation(phi, res.x);
}

std::pair<IntVector, IntVector> zonotope_bounds(const DirectionList& phi) {
  IntVector lo(phi.dim(), 0), hi(phi.dim(), 0);
  for (const auto& a : phi.vectors())
    for (std::size_t j = 0; j < a.size(); ++j) (a[j] < 0 ? lo[j] : hi[j]) += a[j];
  return {lo, hi};
}

bool cone_contains(const DirectionList& phi, const RationalVector& v) {
  LinearProgram lp = combination_lp(phi, v, 0);
  lp.upper.assign(phi.size(), std::nullopt);
  return feasible(lp);
}

}  // namespace boxdeconv
