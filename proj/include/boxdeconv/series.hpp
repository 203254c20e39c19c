#pragma once

#include <complex>
#include <optional>
#include <utility>
#include <vector>

#include "boxdeconv/boxspline.hpp"
#include "boxdeconv/exppoly.hpp"
#include "boxdeconv/cyclotomic.hpp"
#include "boxdeconv/polynomial.hpp"
#include "boxdeconv/torus.hpp"

namespace boxdeconv {

/// Tunables for "y sufficiently small"; shared by the deconvolution and partition paths.
struct SeriesConfig {
  double y_max = 0.1;
  double pole_guard = 1e-12;
  int l_max = 50;
  double truncation_tolerance = 1e-12;
  double fit_tolerance = 1e-9;  // held-out residual of exponential-polynomial fits, relative
};

SeriesConfig& series_config();

/// b(0..L) with z/(e^z - 1) = sum b(a) z^a / a!.
RationalVector bernoulli(int L);

/// beta(0..L, u) with 1/(e^z u - 1) = sum beta(l, u) z^l / l!.
std::vector<std::complex<double>> beta_coeffs(std::complex<double> u, int L);
std::vector<Cyclotomic> beta_coeffs(const Cyclotomic& u, int L);

/// Truncated operator in the symbols d_{alpha_1..alpha_N} (and d_r when translated).
template <class C>
struct OperatorPoly {
  Polynomial<C> poly;
  int order = 0;
  bool translated = false;
  RationalVector shift;  // the point r when translated
};

using ExactOperator = OperatorPoly<Cyclotomic>;
using NumericOperator = OperatorPoly<std::complex<double>>;

/// Todd([q], s, y)(d) truncated at q-order L and evaluated at q = 1; exact path (y = 0).
ExactOperator todd_operator(const DirectionList& phi, const TorusPoint& s, int L);
NumericOperator todd_operator(const DirectionList& phi, const TorusPoint& s, const ParameterList& y, int L);

/// Same with the extra factor exp([q](-d_r + i<y, r>)).
ExactOperator todd_operator_translated(const DirectionList& phi, const TorusPoint& s, const Representation& r, int L);
NumericOperator todd_operator_translated(const DirectionList& phi, const TorusPoint& s, const ParameterList& y,
                                         const Representation& r, int L);

/// Rewrites an operator in coordinate partials d_1..d_d.
template <class C>
Polynomial<C> to_partials(const OperatorPoly<C>& op, const DirectionList& phi);

/// Largest cube around the witness inside the closed alcove.
Box alcove_box(const DirectionList& phi, const RationalVector& witness);

/// Exact: differentiate the polynomial and evaluate. Numeric: exponential-polynomial fit of the sampler.
Cyclotomic apply_operator(const ExactOperator& op, const DirectionList& phi, const PiecewiseLocalPiece& piece,
                          const RationalVector& at);
std::complex<double> apply_operator(const NumericOperator& op, const DirectionList& phi,
                                    const PiecewiseLocalPiece& piece, const RationalVector& at);

/// N - d for y = 0; otherwise the adaptive order from the coefficient-growth bound.
int truncation_order(const DirectionList& phi, const ParameterList& y);

/// Symmetric partial sum over |n| <= M of (e^{ix}-1)/(i(x - 2 pi n)) e^{2 i pi n v} and the target e^{i{v}x}.
std::pair<std::complex<double>, std::complex<double>> fractional_fourier_check(double x, double v, long M);

}  // namespace boxdeconv
