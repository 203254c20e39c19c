#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "boxdeconv/rational.hpp"

namespace boxdeconv {

/// Element of the cyclotomic field Q(zeta_m), zeta_m = exp(2 pi i / m), stored
/// as a polynomial in zeta of degree < phi(m) reduced modulo the m-th
/// cyclotomic polynomial.
class Cyclotomic {
 public:
  Cyclotomic() : order_(1), coeffs_{Rational(0)} {}
  Cyclotomic(const Rational& q) : order_(1), coeffs_{q} {}  // NOLINT: implicit scalar embedding
  Cyclotomic(long v) : Cyclotomic(Rational(v)) {}            // NOLINT

  /// exp(2 pi i * angle) for a rational angle.
  static Cyclotomic root_of_unity(const Rational& angle);
  static Cyclotomic gaussian(const GaussianRational& z);
  /// sum_j c_j zeta_m^j, reduced.
  static Cyclotomic from_coefficients(long m, RationalVector c) { return reduce(m, std::move(c)); }

  long order() const { return order_; }
  const RationalVector& coefficients() const { return coeffs_; }

  /// Same value viewed in Q(zeta_m) for a multiple m of order().
  Cyclotomic lifted(long m) const;

  bool is_zero() const;
  std::complex<double> to_complex() const;
  /// The value as re + i im when it lies in Q(i).
  std::optional<GaussianRational> to_gaussian() const;
  std::optional<Rational> to_rational() const;

  Cyclotomic inverse() const;

  friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b);
  friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b);
  friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b);
  friend Cyclotomic operator/(const Cyclotomic& a, const Cyclotomic& b) { return a * b.inverse(); }
  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b);
  friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) { return !(a == b); }
  Cyclotomic operator-() const;
  Cyclotomic& operator+=(const Cyclotomic& o) { return *this = *this + o; }
  Cyclotomic& operator-=(const Cyclotomic& o) { return *this = *this - o; }
  Cyclotomic& operator*=(const Cyclotomic& o) { return *this = *this * o; }

 private:
  Cyclotomic(long m, RationalVector c) : order_(m), coeffs_(std::move(c)) {}
  static Cyclotomic reduce(long m, RationalVector poly);

  long order_;
  RationalVector coeffs_;
};

/// Coefficients of the m-th cyclotomic polynomial, constant term first.
const std::vector<long long>& cyclotomic_polynomial(long m);
long euler_phi(long m);

}  // namespace boxdeconv
