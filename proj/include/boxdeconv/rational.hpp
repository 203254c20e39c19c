#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace boxdeconv {

using Rational = mpq_class;
using Integer = mpz_class;
using RationalVector = std::vector<Rational>;
using IntVector = std::vector<long long>;

/// Parses "p/q", an integer, or a finite decimal such as "-0.125" or "2.5e-1"
/// into an exact rational. Throws Error(InvalidInput) otherwise.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" form ("p" when the denominator is 1).
std::string to_string(const Rational& q);

Rational make_rational(long long num, long long den = 1);
inline Rational to_q(long long x) { return Rational(static_cast<long>(x)); }

long long floor_to_int(const Rational& q);
long long ceil_to_int(const Rational& q);
bool is_integer(const Rational& q);
int sign(const Rational& q);

RationalVector to_rational(const IntVector& v);
Rational dot(const IntVector& a, const RationalVector& b);
Rational dot(const RationalVector& a, const RationalVector& b);
long long dot(const IntVector& a, const IntVector& b);

RationalVector operator+(const RationalVector& a, const RationalVector& b);
RationalVector operator-(const RationalVector& a, const RationalVector& b);
RationalVector operator*(const Rational& s, const RationalVector& a);
RationalVector operator+(const RationalVector& a, const IntVector& b);
RationalVector operator-(const RationalVector& a, const IntVector& b);

IntVector operator+(const IntVector& a, const IntVector& b);
IntVector operator-(const IntVector& a, const IntVector& b);

std::vector<double> to_double(const RationalVector& v);

/// Exact complex number with rational real and imaginary parts.
struct GaussianRational {
  Rational re;
  Rational im;

  GaussianRational() = default;
  GaussianRational(Rational r, Rational i = 0) : re(std::move(r)), im(std::move(i)) {}

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  std::complex<double> to_complex() const { return {re.get_d(), im.get_d()}; }

  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
    return {Rational(a.re + b.re), Rational(a.im + b.im)};
  }
  friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
    return {Rational(a.re - b.re), Rational(a.im - b.im)};
  }
  friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
    return {Rational(a.re * b.re - a.im * b.im), Rational(a.re * b.im + a.im * b.re)};
  }
};

/// "re,im" with both parts in canonical rational form.
std::string to_string(const GaussianRational& z);
GaussianRational parse_gaussian(std::string_view text);

/// Parses "re,im" into a complex double. Parts may be rationals or decimals.
std::complex<double> parse_complex(std::string_view text);
std::string format_complex(std::complex<double> z);

}  // namespace boxdeconv
