#pragma once

#include <complex>
#include <optional>

#include "boxdeconv/series.hpp"
#include "boxdeconv/torus.hpp"

namespace boxdeconv {

/// Result of a deconvolution-type evaluation: exact cyclotomic value when y = 0,
/// complex double otherwise.
struct Value {
  bool exact = false;
  Cyclotomic exact_value;
  std::complex<double> numeric;

  static Value from_exact(Cyclotomic c) { return {true, c, c.to_complex()}; }
  static Value from_numeric(std::complex<double> z) { return {false, Cyclotomic(0), z}; }
  std::complex<double> to_complex() const { return exact ? exact_value.to_complex() : numeric; }
  /// Exact Gaussian-rational value when the result lies in Q(i).
  std::optional<GaussianRational> gaussian() const { return exact ? exact_value.to_gaussian() : std::nullopt; }
};

/// sum_lambda f(lambda) b(phi, y)(v - lambda)
Value semidiscrete(const DirectionList& phi, const ParameterList& y, const LatticeFunction& f, const RationalVector& v);

/// P(s, y, f)(v), evaluated directly from translates of B(phi(s), y0).
Value p_s(const DirectionList& phi, const TorusPoint& s, const ParameterList& y, const LatticeFunction& f,
          const RationalVector& v);

/// Exact local polynomial of P(s, 0, f) on the phi-alcove of the witness.
Polynomial<Cyclotomic> p_s_local_polynomial(const DirectionList& phi, const TorusPoint& s, const LatticeFunction& f,
                                            const RationalVector& witness);

Value deconvolve(const DirectionList& phi, const ParameterList& y, const LatticeFunction& f, const IntVector& lambda,
                 const RationalVector& eps);

Value deconvolve_translated(const DirectionList& phi, const ParameterList& y, const Representation& rrep,
                            const LatticeFunction& f, const IntVector& lambda, const RationalVector& eps);

/// Is lambda in (c - Z(phi))?  Exact LP on the alcove inequalities.
bool alcove_covers(const DirectionList& phi, const Alcove& c, const IntVector& lambda);

Value reconstruct_from_alcove(const DirectionList& phi, const ParameterList& y, const Alcove& c,
                              const LatticeFunction& f, const IntVector& lambda);

Value dm_quasipolynomial(const DirectionList& phi, const Alcove& c, const IntVector& nu);

}  // namespace boxdeconv
