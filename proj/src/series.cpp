#include "boxdeconv/series.hpp"

#include <cmath>
#include <mutex>
#include <numbers>

#include "boxdeconv/errors.hpp"
#include "boxdeconv/exppoly.hpp"
#include "boxdeconv/lp.hpp"

namespace boxdeconv {

SeriesConfig& series_config() {
  static SeriesConfig config;
  return config;
}

RationalVector bernoulli(int L) {
  static std::mutex mu;
  static RationalVector cache{Rational(1)};
  std::lock_guard lock(mu);
  // sum_{j<=n} C(n+1, j) b(j) = 0 for n >= 1
  while (static_cast<int>(cache.size()) <= L) {
    const long n = static_cast<long>(cache.size());
    Rational s = 0;
    Integer binom = 1;  // C(n+1, j)
    for (long j = 0; j < n; ++j) {
      s += Rational(binom) * cache[static_cast<std::size_t>(j)];
      binom = binom * (n + 1 - j) / (j + 1);
    }
    cache.push_back(-s / Rational(n + 1));
  }
  return RationalVector(cache.begin(), cache.begin() + L + 1);
}

namespace {

template <class C>
std::vector<C> beta_recurrence(const C& u, int L) {
  const C one = from_rational<C>(1);
  const C inv = one / (u - one);
  const C factor = from_rational<C>(0) - u * inv;
  std::vector<C> h{inv};
  for (int n = 1; n <= L; ++n) {
    C s = from_rational<C>(0);
    Integer binom = 1;  // C(n, j)
    for (int j = 0; j < n; ++j) {
      s = s + from_rational<C>(Rational(binom)) * h[static_cast<std::size_t>(j)];
      binom = binom * (n - j) / (j + 1);
    }
    h.push_back(factor * s);
  }
  return h;
}

}  // namespace

std::vector<std::complex<double>> beta_coeffs(std::complex<double> u, int L) {
  if (std::abs(u - 1.0) < series_config().pole_guard)
    fail(ErrorCode::ResonantParameter, "beta coefficients requested at u = 1");
  return beta_recurrence(u, L);
}

std::vector<Cyclotomic> beta_coeffs(const Cyclotomic& u, int L) {
  if ((u - Cyclotomic(1)).is_zero()) fail(ErrorCode::ResonantParameter, "beta coefficients requested at u = 1");
  return beta_recurrence(u, L);
}

namespace {

Rational inverse_factorial(int a) {
  Integer f = 1;
  for (int k = 2; k <= a; ++k) f *= k;
  return Rational(Integer(1), f);
}

// Multiplies graded series sum_a q^a S[a] truncated at q-order L.
template <class C>
std::vector<Polynomial<C>> graded_product(const std::vector<Polynomial<C>>& a, const std::vector<Polynomial<C>>& b,
                                          int L, std::size_t vars) {
  std::vector<Polynomial<C>> out(static_cast<std::size_t>(L) + 1, Polynomial<C>(vars));
  for (int i = 0; i <= L; ++i)
    for (int j = 0; i + j <= L; ++j) {
      if (a[static_cast<std::size_t>(i)].is_zero() || b[static_cast<std::size_t>(j)].is_zero()) continue;
      out[static_cast<std::size_t>(i + j)] += a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j)];
    }
  return out;
}

// Graded pieces of sum_a q^a coeff[a] z^a for z = -w_k + iy.
template <class C>
std::vector<Polynomial<C>> factor_series(const std::vector<C>& coeff, std::size_t symbol, const C& iy, std::size_t vars,
                                         int L) {
  Polynomial<C> z = Polynomial<C>::variable(vars, symbol).scaled(from_rational<C>(-1)) + Polynomial<C>::constant(vars, iy);
  std::vector<Polynomial<C>> out;
  Polynomial<C> power = Polynomial<C>::constant(vars, from_rational<C>(1));
  for (int a = 0; a <= L; ++a) {
    out.push_back(power.scaled(coeff[static_cast<std::size_t>(a)] * from_rational<C>(inverse_factorial(a))));
    power = power * z;
  }
  return out;
}

template <class C>
C imaginary_unit() {
  if constexpr (std::is_same_v<C, Cyclotomic>)
    return Cyclotomic::root_of_unity(make_rational(1, 4));
  else
    return C(0.0, 1.0);
}

template <class C>
C character_of(const TorusPoint& s, const IntVector& alpha) {
  if constexpr (std::is_same_v<C, Cyclotomic>)
    return character(s, alpha);
  else
    return character_numeric(s, alpha);
}

// All graded components up to q-order L; the extra symbol index N is d_r.
template <class C>
std::vector<Polynomial<C>> graded_todd(const DirectionList& phi, const TorusPoint& s, const std::vector<C>& y, int L,
                                       const Representation* r) {
  const std::size_t n = phi.size();
  const std::size_t vars = n + (r ? 1 : 0);
  std::vector<Polynomial<C>> total(static_cast<std::size_t>(L) + 1, Polynomial<C>(vars));
  total[0] = Polynomial<C>::constant(vars, from_rational<C>(1));
  const C i = imaginary_unit<C>();
  const RationalVector b = bernoulli(L);
  for (std::size_t k = 0; k < n; ++k) {
    const C u = character_of<C>(s, phi[k]);
    const bool trivial = is_integer(dot(phi[k], s.angle));
    std::vector<C> coeff;
    if (trivial) {
      for (const auto& q : b) coeff.push_back(from_rational<C>(q));
    } else {
      if constexpr (std::is_same_v<C, std::complex<double>>) {
        if (std::abs(std::exp(i * y[k]) * u - 1.0) < series_config().pole_guard)
          fail(ErrorCode::ResonantParameter, "Todd factor within the pole guard");
      }
      coeff = beta_coeffs(u, L);
    }
    total = graded_product(total, factor_series(coeff, k, i * y[k], vars, L), L, vars);
  }
  if (r) {
    // exp([q](-d_r + i<y, r>)) = sum q^a (-d_r + i<y,r>)^a / a!
    C ry = from_rational<C>(0);
    for (std::size_t k = 0; k < n; ++k) ry = ry + y[k] * from_rational<C>(r->entries[k]);
    std::vector<C> ones(static_cast<std::size_t>(L) + 1, from_rational<C>(1));
    total = graded_product(total, factor_series(ones, n, i * ry, vars, L), L, vars);
  }
  return total;
}

template <class C>
OperatorPoly<C> collapse(std::vector<Polynomial<C>> graded, int L, const Representation* r) {
  const bool translated = r != nullptr;
  OperatorPoly<C> op;
  if (r) op.shift = r->point;
  op.order = L;
  op.translated = translated;
  op.poly = Polynomial<C>(graded.front().vars());
  for (auto& g : graded) op.poly += g;
  return op;
}

void check_parameters(const ParameterList& y) {
  for (const auto& v : y)
    if (std::abs(v) > series_config().y_max)
      fail(ErrorCode::ParameterTooLarge, "|y_k| = " + std::to_string(std::abs(v)) + " exceeds y_max = " +
                                             std::to_string(series_config().y_max));
}

}  // namespace

ExactOperator todd_operator(const DirectionList& phi, const TorusPoint& s, int L) {
  std::vector<Cyclotomic> y(phi.size(), Cyclotomic(0));
  return collapse(graded_todd<Cyclotomic>(phi, s, y, L, nullptr), L, nullptr);
}

NumericOperator todd_operator(const DirectionList& phi, const TorusPoint& s, const ParameterList& y, int L) {
  check_parameters(y);
  return collapse(graded_todd<std::complex<double>>(phi, s, y, L, nullptr), L, nullptr);
}

ExactOperator todd_operator_translated(const DirectionList& phi, const TorusPoint& s, const Representation& r, int L) {
  std::vector<Cyclotomic> y(phi.size(), Cyclotomic(0));
  return collapse(graded_todd<Cyclotomic>(phi, s, y, L, &r), L, &r);
}

NumericOperator todd_operator_translated(const DirectionList& phi, const TorusPoint& s, const ParameterList& y,
                                         const Representation& r, int L) {
  check_parameters(y);
  return collapse(graded_todd<std::complex<double>>(phi, s, y, L, &r), L, &r);
}

template <class C>
Polynomial<C> to_partials(const OperatorPoly<C>& op, const DirectionList& phi) {
  const RationalVector& r = op.shift;
  const std::size_t d = phi.dim(), n = phi.size();
  std::vector<Polynomial<C>> symbol;
  for (std::size_t k = 0; k < n; ++k) {
    Polynomial<C> p(d);
    for (std::size_t j = 0; j < d; ++j)
      if (phi[k][j] != 0) p += Polynomial<C>::variable(d, j).scaled(from_rational<C>(to_q(phi[k][j])));
    symbol.push_back(p);
  }
  if (op.translated) {
    Polynomial<C> p(d);
    for (std::size_t j = 0; j < d; ++j)
      if (sgn(r[j]) != 0) p += Polynomial<C>::variable(d, j).scaled(from_rational<C>(r[j]));
    symbol.push_back(p);
  }
  Polynomial<C> out(d);
  for (const auto& [e, c] : op.poly.terms()) {
    Polynomial<C> term = Polynomial<C>::constant(d, c);
    for (std::size_t k = 0; k < e.size(); ++k)
      for (int t = 0; t < e[k]; ++t) term = term * symbol[k];
    out += term;
  }
  return out;
}

template Polynomial<Cyclotomic> to_partials(const OperatorPoly<Cyclotomic>&, const DirectionList&);
template Polynomial<std::complex<double>> to_partials(const OperatorPoly<std::complex<double>>&, const DirectionList&);

namespace {

void require_in_closure(const DirectionList& phi, const PiecewiseLocalPiece& piece, const RationalVector& at) {
  if (!alcove_closure_contains(phi, piece.alcove, at))
    fail(ErrorCode::PointOutsideAlcove, "evaluation point is not in the closure of the piece's alcove");
}

}  // namespace

Cyclotomic apply_operator(const ExactOperator& op, const DirectionList& phi, const PiecewiseLocalPiece& piece,
                          const RationalVector& at) {
  if (piece.kind != PiecewiseLocalPiece::Kind::ExactPolynomial)
    fail(ErrorCode::InvalidInput, "exact operator needs an exact polynomial piece");
  require_in_closure(phi, piece, at);
  auto partials = to_partials(op, phi);
  return apply_partials(partials, piece.poly).evaluate(at);
}

Box alcove_box(const DirectionList& phi, const RationalVector& witness) {
  // largest cube inside the closed alcove: maximize h with
  // m + h |n|_1 <= n.x <= m + 1 - h |n|_1, x = x+ - x-
  const auto& ws = walls(phi);
  const Alcove c = alcove_of(phi, witness);
  const std::size_t d = phi.dim(), w = ws.size(), cols = 2 * d + 1 + 2 * w;
  LinearProgram lp;
  lp.c.assign(cols, Rational(0));
  lp.c[2 * d] = 1;
  for (std::size_t i = 0; i < w; ++i) {
    long long l1 = 0;
    for (auto a : ws[i].normal) l1 += a < 0 ? -a : a;
    RationalVector lower(cols), upper(cols);
    for (std::size_t j = 0; j < d; ++j) {
      lower[j] = upper[j] = to_q(ws[i].normal[j]);
      lower[d + j] = upper[d + j] = -to_q(ws[i].normal[j]);
    }
    lower[2 * d] = -to_q(l1);
    lower[2 * d + 1 + i] = -1;
    upper[2 * d] = to_q(l1);
    upper[2 * d + 1 + w + i] = 1;
    lp.a.push_back(lower);
    lp.b.push_back(to_q(c.slabs[i]));
    lp.a.push_back(upper);
    lp.b.push_back(to_q(c.slabs[i] + 1));
  }
  LpResult res = solve_lp(lp);
  if (res.status != LpStatus::Optimal) fail(ErrorCode::Internal, "alcove has no inscribed cube");
  Box box;
  for (std::size_t j = 0; j < d; ++j) box.center.push_back(Rational(res.x[j] - res.x[d + j]).get_d());
  box.half.assign(d, res.value.get_d());
  return box;
}

std::complex<double> apply_operator(const NumericOperator& op, const DirectionList& phi,
                                    const PiecewiseLocalPiece& piece, const RationalVector& at) {
  require_in_closure(phi, piece, at);
  auto partials = to_partials(op, phi);
  if (piece.kind == PiecewiseLocalPiece::Kind::ExactPolynomial)
    return apply_partials(partials, piece.poly.cast<std::complex<double>>()).evaluate(to_double(at));
  ExpPolyFit fit(phi, piece.y, alcove_box(phi, piece.alcove.witness), piece.sampler, series_config().fit_tolerance);
  return fit.apply(partials, to_double(at));
}

int truncation_order(const DirectionList& phi, const ParameterList& y) {
  phi.require_spanning();
  const int base = static_cast<int>(phi.size() - phi.dim());
  double ymax = 0;
  for (const auto& v : y) ymax = std::max(ymax, std::abs(v));
  if (ymax == 0) return base;
  check_parameters(y);
  const SeriesConfig& cfg = series_config();
  const int top = cfg.l_max + 1;
  // majorant of the coefficient norm of the q^a component, worst case over the vertex set
  std::vector<double> worst(static_cast<std::size_t>(top) + 1, 0.0);
  const RationalVector b = bernoulli(top);
  for (const auto& s : vertex_set(phi)) {
    std::vector<double> g(static_cast<std::size_t>(top) + 1, 0.0);
    g[0] = 1;
    for (std::size_t k = 0; k < phi.size(); ++k) {
      double l1 = 0;
      for (auto a : phi[k]) l1 += std::abs(static_cast<double>(a));
      const double radius = l1 + std::abs(y[k]);
      std::vector<double> f(static_cast<std::size_t>(top) + 1);
      std::vector<std::complex<double>> beta;
      const bool trivial = is_integer(dot(phi[k], s.angle));
      if (!trivial) beta = beta_coeffs(character_numeric(s, phi[k]), top);
      double power = 1, fact = 1;
      for (int a = 0; a <= top; ++a) {
        if (a > 0) {
          power *= radius;
          fact *= a;
        }
        double c = trivial ? std::abs(b[static_cast<std::size_t>(a)].get_d()) : std::abs(beta[static_cast<std::size_t>(a)]);
        f[static_cast<std::size_t>(a)] = c * power / fact;
      }
      std::vector<double> next(static_cast<std::size_t>(top) + 1, 0.0);
      for (int i = 0; i <= top; ++i)
        for (int j = 0; i + j <= top; ++j)
          next[static_cast<std::size_t>(i + j)] += g[static_cast<std::size_t>(i)] * f[static_cast<std::size_t>(j)];
      g = std::move(next);
    }
    for (int a = 0; a <= top; ++a) worst[static_cast<std::size_t>(a)] = std::max(worst[static_cast<std::size_t>(a)], g[static_cast<std::size_t>(a)]);
  }
  for (int L = base; L <= cfg.l_max; ++L) {
    double bound = worst[static_cast<std::size_t>(L) + 1] * std::pow(ymax, (L + 1) - base);
    if (bound < cfg.truncation_tolerance) return L;
  }
  fail(ErrorCode::TruncationNotConverged, "no truncation order up to " + std::to_string(cfg.l_max) + " meets the tolerance");
}

std::pair<std::complex<double>, std::complex<double>> fractional_fourier_check(double x, double v, long M) {
  const std::complex<double> i(0, 1);
  const std::complex<double> numer = std::exp(i * x) - 1.0;
  std::complex<double> sum = 0;
  for (long n = -M; n <= M; ++n) {
    double denom = x - 2 * std::numbers::pi * static_cast<double>(n);
    sum += numer / (i * denom) * std::exp(i * (2 * std::numbers::pi * static_cast<double>(n) * v));
  }
  double frac = v - std::floor(v);
  return {sum, std::exp(i * (frac * x))};
}

}  // namespace boxdeconv
