#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "boxdeconv/core.hpp"
#include "boxdeconv/polynomial.hpp"

namespace boxdeconv {

using Sampler = std::function<std::complex<double>(const std::vector<double>&)>;

struct Box {
  std::vector<double> center;
  std::vector<double> half;
};

/// Least-squares fit in the space of exponential polynomials
///   sum_eta exp(i<eta, v>) q_eta(v),  deg q_eta <= N - d,
/// eta running over the solutions of <eta, alpha_k> = y_k, k in a basis of phi.
/// Local pieces of B(phi, y), of its translates and of T(phi, y) lie in this space,
/// so derivatives of the fit are derivatives of the function itself.
class ExpPolyFit {
 public:
  /// Samples f at random points of the box; throws NumericDivergence when the fit
  /// misses held-out samples by more than tol * max(1, max |f|).
  ExpPolyFit(const DirectionList& phi, const ParameterList& y, const Box& box, const Sampler& f,
             double tol, std::uint64_t seed = 0x5a17);

  std::complex<double> operator()(const std::vector<double>& x) const;

  /// sum_b op_b d^b of the fit at x; x may leave the box.
  std::complex<double> apply(const Polynomial<std::complex<double>>& op, const std::vector<double>& x) const;

  std::size_t frequencies() const { return eta_.size(); }

 private:
  std::complex<double> basis_value(std::size_t column, const std::vector<double>& x) const;

  std::vector<Eigen::VectorXcd> eta_;
  std::vector<Exponent> monomials_;
  Box box_;
  Eigen::VectorXcd coef_;
};

}  // namespace boxdeconv
