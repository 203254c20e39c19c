#pragma once

#include <complex>
#include <map>
#include <tuple>
#include <vector>

#include "boxdeconv/linalg.hpp"
#include "boxdeconv/rational.hpp"

namespace boxdeconv {

/// The list Phi of integer directions in Z^d.
class DirectionList {
 public:
  DirectionList() = default;
  /// Validates and computes the derived flags; throws EmptyList or DimensionMismatch.
  DirectionList(std::size_t dim, IntMatrix vectors);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return vectors_.size(); }
  const IntMatrix& vectors() const { return vectors_; }
  const IntVector& operator[](std::size_t k) const { return vectors_[k]; }
  bool spans() const { return spans_; }
  bool salient() const { return salient_; }

  /// Sub-list selected by indices.
  DirectionList sublist(const std::vector<std::size_t>& indices) const;

  /// sum_k c_k alpha_k
  RationalVector combine(const RationalVector& c) const;
  IntVector combine(const IntVector& c) const;

  void require_spanning() const;

  friend bool operator==(const DirectionList& a, const DirectionList& b) {
    return a.dim_ == b.dim_ && a.vectors_ == b.vectors_;
  }
  friend bool operator<(const DirectionList& a, const DirectionList& b) {
    return std::tie(a.dim_, a.vectors_) < std::tie(b.dim_, b.vectors_);
  }

 private:
  std::size_t dim_ = 0;
  IntMatrix vectors_;
  bool spans_ = false;
  bool salient_ = false;
};

DirectionList validate(std::size_t dim, const IntMatrix& vectors);

/// One complex parameter y_k per direction, entering as exp(i t y_k).
using ParameterList = std::vector<std::complex<double>>;

bool is_zero(const ParameterList& y);

struct Representation {
  RationalVector entries;
  RationalVector point;
};

Representation make_representation(const DirectionList& phi, RationalVector entries);

/// Finitely supported function Z^d -> C with exact Gaussian-rational values.
class LatticeFunction {
 public:
  LatticeFunction() = default;
  explicit LatticeFunction(std::size_t dim) : dim_(dim) {}

  std::size_t dim() const { return dim_; }
  void set(const IntVector& point, const GaussianRational& value);
  GaussianRational operator()(const IntVector& point) const;
  const std::map<IntVector, GaussianRational>& values() const { return values_; }

  LatticeFunction translated(const IntVector& kappa) const;
  LatticeFunction scaled(const GaussianRational& c) const;
  friend LatticeFunction operator+(const LatticeFunction& a, const LatticeFunction& b);

  static LatticeFunction delta(const IntVector& at);

 private:
  std::size_t dim_ = 0;
  std::map<IntVector, GaussianRational> values_;
};

bool zonotope_contains(const DirectionList& phi, const RationalVector& r);
bool tangent_cone_contains(const DirectionList& phi, const Representation& rrep, const RationalVector& eps);
Representation center_representation(const DirectionList& phi);
Representation any_representation(const DirectionList& phi, const RationalVector& r);

/// Componentwise lower/upper corners of the zonotope's bounding box.
std::pair<IntVector, IntVector> zonotope_bounds(const DirectionList& phi);

/// Is v in Cone(phi) = {sum t_k alpha_k, t >= 0}?
bool cone_contains(const DirectionList& phi, const RationalVector& v);

}  // namespace boxdeconv
