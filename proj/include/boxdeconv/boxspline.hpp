#pragma once

#include <complex>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "boxdeconv/arrangement.hpp"
#include "boxdeconv/polynomial.hpp"

namespace boxdeconv {

/// Local piece of a spline-type function on one alcove.
struct PiecewiseLocalPiece {
  enum class Kind { ExactPolynomial, NumericSampler };
  Alcove alcove;
  Kind kind = Kind::ExactPolynomial;
  RationalPolynomial poly;
  ParameterList y;  // parameters of a numeric sampler
  std::function<std::complex<double>(const std::vector<double>&)> sampler;
};

/// Precomputed peeling chain for one direction list, shared through a registry.
class BoxSpline {
 public:
  static std::shared_ptr<const BoxSpline> get(const DirectionList& phi);

  explicit BoxSpline(DirectionList phi);

  const DirectionList& directions() const { return phi_; }

  /// Exact value at a regular rational point.
  Rational eval_exact(const RationalVector& v) const;
  /// Quadrature value at a point assumed regular; y indexed like the directions.
  std::complex<double> eval_numeric(const ParameterList& y, const std::vector<double>& v) const;

  /// Cached exact local polynomial on the alcove (zero outside Z(phi)).
  const RationalPolynomial& local_polynomial(const Alcove& c) const;

 private:
  struct Level {
    IntMatrix vectors;           // directions still present at this level
    std::vector<std::size_t> ids;  // their indices in phi
    std::vector<IntVector> sub_walls;  // walls of the list after peeling the last entry
    IntVector lo, hi;            // zonotope bounding box
  };

  Rational eval_level(std::size_t level, const RationalVector& v) const;
  std::complex<double> eval_level_numeric(std::size_t level, const ParameterList& y, const std::vector<double>& v) const;
  RationalPolynomial interpolate(const Alcove& c) const;

  DirectionList phi_;
  std::vector<Level> levels_;   // levels_[0] is phi itself; the last level is a basis
  RationalMatrix base_inverse_;  // maps v to coefficients in the base basis
  Rational base_weight_;        // 1/|det|
  std::vector<std::vector<double>> base_inverse_d_;

  mutable std::mutex mu_;
  mutable std::map<std::vector<long long>, RationalPolynomial> cache_;
};

std::complex<double> eval(const DirectionList& phi, const ParameterList& y, const RationalVector& v);
Rational eval_exact(const DirectionList& phi, const RationalVector& v);
std::complex<double> eval_translated(const DirectionList& phi, const ParameterList& y, const Representation& rrep,
                                     const RationalVector& v);

PiecewiseLocalPiece local_polynomial(const DirectionList& phi, const Alcove& c);
/// Numeric local piece: direct quadrature evaluation valid inside the alcove.
PiecewiseLocalPiece local_sampler(const DirectionList& phi, const ParameterList& y, const Alcove& c);

/// Exact weights of the open Newton-Cotes rule with n nodes (j+1)/(n+1) on [0,1].
const RationalVector& open_newton_cotes(std::size_t n);
/// Gauss-Legendre nodes and weights on [0,1].
const std::pair<std::vector<double>, std::vector<double>>& gauss_legendre(std::size_t n);

/// Tensor-grid Lagrange interpolation; nodes[j] are the distinct abscissae of axis j and
/// values are listed with the last axis varying fastest.
RationalPolynomial tensor_interpolate(const std::vector<RationalVector>& nodes, const RationalVector& values);

}  // namespace boxdeconv
