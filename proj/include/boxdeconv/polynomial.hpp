#pragma once

#include <complex>
#include <map>
#include <vector>

#include "boxdeconv/cyclotomic.hpp"
#include "boxdeconv/rational.hpp"

namespace boxdeconv {

using Exponent = std::vector<int>;

/// Scalar embedding shared by the coefficient types (Rational, Cyclotomic, complex<double>).
template <class C>
C from_rational(const Rational& q) {
  if constexpr (std::is_same_v<C, std::complex<double>>)
    return {q.get_d(), 0.0};
  else
    return C(q);
}

template <class C>
bool coeff_is_zero(const C& c) {
  if constexpr (std::is_same_v<C, Rational>)
    return sgn(c) == 0;
  else if constexpr (std::is_same_v<C, Cyclotomic>)
    return c.is_zero();
  else
    return c == C(0);
}

/// Sparse multivariate polynomial in d variables.
template <class C>
class Polynomial {
 public:
  using Terms = std::map<Exponent, C>;

  Polynomial() = default;
  explicit Polynomial(std::size_t vars) : vars_(vars) {}

  static Polynomial constant(std::size_t vars, const C& c) {
    Polynomial p(vars);
    p.add_term(Exponent(vars, 0), c);
    return p;
  }
  static Polynomial variable(std::size_t vars, std::size_t j) {
    Polynomial p(vars);
    Exponent e(vars, 0);
    e[j] = 1;
    p.add_term(e, from_rational<C>(1));
    return p;
  }

  std::size_t vars() const { return vars_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const Exponent& e, const C& c) {
    if (coeff_is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second = it->second + c;
      if (coeff_is_zero(it->second)) terms_.erase(it);
    }
  }

  int total_degree() const {
    int deg = -1;
    for (const auto& [e, c] : terms_) {
      int s = 0;
      for (int k : e) s += k;
      deg = std::max(deg, s);
    }
    return deg;
  }

  C coefficient(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? from_rational<C>(0) : it->second;
  }

  Polynomial& operator+=(const Polynomial& o) {
    if (vars_ == 0) vars_ = o.vars_;
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    Polynomial out = a;
    for (const auto& [e, c] : b.terms_) out.add_term(e, from_rational<C>(0) - c);
    return out;
  }

  Polynomial scaled(const C& s) const {
    Polynomial out(vars_);
    for (const auto& [e, c] : terms_) out.add_term(e, c * s);
    return out;
  }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    Polynomial out(std::max(a.vars_, b.vars_));
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        Exponent e(ea.size());
        for (std::size_t k = 0; k < e.size(); ++k) e[k] = ea[k] + eb[k];
        out.add_term(e, ca * cb);
      }
    return out;
  }

  /// Drops every term of total degree above max_degree.
  Polynomial truncated(int max_degree) const {
    Polynomial out(vars_);
    for (const auto& [e, c] : terms_) {
      int s = 0;
      for (int k : e) s += k;
      if (s <= max_degree) out.terms_.emplace(e, c);
    }
    return out;
  }

  /// Partial derivative of order k in variable j.
  Polynomial derivative(std::size_t j, int k = 1) const {
    Polynomial out(vars_);
    for (const auto& [e, c] : terms_) {
      if (e[j] < k) continue;
      Exponent f = e;
      long factor = 1;
      for (int t = 0; t < k; ++t) factor *= (e[j] - t);
      f[j] -= k;
      out.add_term(f, c * from_rational<C>(Rational(factor)));
    }
    return out;
  }

  Polynomial derivative(const Exponent& multi) const {
    Polynomial out = *this;
    for (std::size_t j = 0; j < multi.size(); ++j)
      if (multi[j] > 0) out = out.derivative(j, multi[j]);
    return out;
  }

  template <class Point>
  C evaluate(const Point& x) const {
    C sum = from_rational<C>(0);
    for (const auto& [e, c] : terms_) {
      C term = c;
      for (std::size_t k = 0; k < e.size(); ++k)
        for (int t = 0; t < e[k]; ++t) term = term * coerce(x[k]);
      sum = sum + term;
    }
    return sum;
  }

  /// q(v) = p(v + shift).
  Polynomial shifted(const RationalVector& shift) const {
    Polynomial out(vars_);
    for (const auto& [e, c] : terms_) {
      Polynomial term = constant(vars_, c);
      for (std::size_t k = 0; k < e.size(); ++k) {
        if (e[k] == 0) continue;
        Polynomial lin = variable(vars_, k) + constant(vars_, from_rational<C>(shift[k]));
        for (int t = 0; t < e[k]; ++t) term = term * lin;
      }
      out += term;
    }
    return out;
  }

  template <class D>
  Polynomial<D> cast() const {
    Polynomial<D> out(vars_);
    for (const auto& [e, c] : terms_) {
      if constexpr (std::is_same_v<D, std::complex<double>> && std::is_same_v<C, Rational>)
        out.add_term(e, D(c.get_d(), 0.0));
      else if constexpr (std::is_same_v<D, std::complex<double>> && std::is_same_v<C, Cyclotomic>)
        out.add_term(e, c.to_complex());
      else
        out.add_term(e, D(c));
    }
    return out;
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms_ == b.terms_; }

 private:
  static C coerce(const Rational& q) { return from_rational<C>(q); }
  static C coerce(double x) {
    if constexpr (std::is_same_v<C, std::complex<double>>)
      return {x, 0.0};
    else
      return C(Rational(x));
  }
  static C coerce(const C& c)
    requires(!std::is_same_v<C, Rational>)
  {
    return c;
  }

  std::size_t vars_ = 0;
  Terms terms_;
};

using RationalPolynomial = Polynomial<Rational>;

/// Applies the constant-coefficient operator sum_b op_b d^b to p.
template <class C, class R>
Polynomial<C> apply_partials(const Polynomial<C>& op, const Polynomial<R>& p) {
  Polynomial<C> out(p.vars());
  for (const auto& [e, c] : op.terms()) {
    auto d = p.derivative(e);
    if (d.is_zero()) continue;
    for (const auto& [f, v] : d.terms()) {
      if constexpr (std::is_same_v<R, Rational>)
        out.add_term(f, c * from_rational<C>(v));
      else
        out.add_term(f, c * v);
    }
  }
  return out;
}

}  // namespace boxdeconv
