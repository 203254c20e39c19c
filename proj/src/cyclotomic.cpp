#include "boxdeconv/cyclotomic.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>

#include "boxdeconv/errors.hpp"

namespace boxdeconv {

namespace {

using Poly = RationalVector;  // constant term first

void trim(Poly& p) {
  while (p.size() > 1 && sgn(p.back()) == 0) p.pop_back();
}

bool is_zero_poly(const Poly& p) {
  for (const auto& c : p)
    if (sgn(c) != 0) return false;
  return true;
}

// Remainder of a modulo the monic b; quotient returned through q when given.
Poly divmod(Poly a, const Poly& b, Poly* q = nullptr) {
  trim(a);
  const std::size_t db = b.size() - 1;
  if (q) q->assign(a.size() > db ? a.size() - db : 1, Rational(0));
  const Rational lead = b.back();
  while (a.size() > db && !(a.size() == 1 && sgn(a[0]) == 0)) {
    std::size_t shift = a.size() - 1 - db;
    Rational f = a.back() / lead;
    if (q) (*q)[shift] = f;
    for (std::size_t j = 0; j <= db; ++j) a[shift + j] -= f * b[j];
    a.pop_back();
    trim(a);
    if (a.size() <= db) break;
  }
  if (a.empty()) a.push_back(0);
  return a;
}

Poly mul(const Poly& a, const Poly& b) {
  Poly c(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      if (sgn(b[j]) != 0) c[i + j] += a[i] * b[j];
  }
  return c;
}

Poly sub(const Poly& a, const Poly& b) {
  Poly c(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) c[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) c[i] -= b[i];
  trim(c);
  return c;
}

std::vector<long long> compute_cyclotomic(long m) {
  // x^m - 1 divided by Phi_d for every proper divisor d
  Poly p(static_cast<std::size_t>(m) + 1);
  p[0] = -1;
  p[static_cast<std::size_t>(m)] = 1;
  for (long d = 1; d < m; ++d) {
    if (m % d != 0) continue;
    const auto& phid = cyclotomic_polynomial(d);
    Poly divisor;
    for (auto c : phid) divisor.emplace_back(static_cast<long>(c));
    Poly q;
    divmod(p, divisor, &q);
    trim(q);
    p = q;
  }
  std::vector<long long> out;
  for (const auto& c : p) out.push_back(c.get_num().get_si());
  return out;
}

}  // namespace

const std::vector<long long>& cyclotomic_polynomial(long m) {
  static std::mutex mu;
  static std::map<long, std::vector<long long>> cache;
  {
    std::lock_guard lock(mu);
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
  }
  auto value = compute_cyclotomic(m);  // recursion takes the lock itself
  std::lock_guard lock(mu);
  return cache.emplace(m, std::move(value)).first->second;
}

long euler_phi(long m) { return static_cast<long>(cyclotomic_polynomial(m).size()) - 1; }

Cyclotomic Cyclotomic::reduce(long m, RationalVector poly) {
  const auto& phi = cyclotomic_polynomial(m);
  const std::size_t deg = phi.size() - 1;
  // Phi_m is monic: fold high powers down
  for (std::size_t k = poly.size(); k-- > deg;) {
    if (sgn(poly[k]) == 0) continue;
    Rational f = poly[k];
    std::size_t shift = k - deg;
    for (std::size_t j = 0; j < deg; ++j)
      if (phi[j] != 0) poly[shift + j] -= f * to_q(phi[j]);
    poly[k] = 0;
  }
  poly.resize(deg);
  return Cyclotomic(m, std::move(poly));
}

Cyclotomic Cyclotomic::root_of_unity(const Rational& angle) {
  Rational a = angle - to_q(floor_to_int(angle));
  long m = a.get_den().get_si();
  long k = a.get_num().get_si();
  RationalVector poly(static_cast<std::size_t>(std::max<long>(k + 1, 1)));
  poly[static_cast<std::size_t>(k)] = 1;
  return reduce(m, std::move(poly));
}

Cyclotomic Cyclotomic::gaussian(const GaussianRational& z) {
  if (sgn(z.im) == 0) return Cyclotomic(z.re);
  return Cyclotomic(4, {z.re, z.im});
}

Cyclotomic Cyclotomic::lifted(long m) const {
  if (m == order_) return *this;
  if (m % order_ != 0) fail(ErrorCode::Internal, "cyclotomic lift to a non-multiple order");
  const long step = m / order_;
  RationalVector poly(static_cast<std::size_t>(step) * coeffs_.size() + 1);
  for (std::size_t j = 0; j < coeffs_.size(); ++j) poly[j * static_cast<std::size_t>(step)] = coeffs_[j];
  return reduce(m, std::move(poly));
}

bool Cyclotomic::is_zero() const { return is_zero_poly(coeffs_); }

std::complex<double> Cyclotomic::to_complex() const {
  std::complex<double> sum = 0;
  for (std::size_t j = 0; j < coeffs_.size(); ++j) {
    if (sgn(coeffs_[j]) == 0) continue;
    double theta = 2 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(order_);
    sum += coeffs_[j].get_d() * std::polar(1.0, theta);
  }
  return sum;
}

std::optional<Rational> Cyclotomic::to_rational() const {
  for (std::size_t j = 1; j < coeffs_.size(); ++j)
    if (sgn(coeffs_[j]) != 0) return std::nullopt;
  return coeffs_[0];
}

std::optional<GaussianRational> Cyclotomic::to_gaussian() const {
  if (auto q = to_rational()) return GaussianRational(*q, Rational(0));
  if (order_ % 4 != 0) {
    // Q(i) sits inside Q(zeta_m) only for 4 | m; lift and retry
    long m = std::lcm(order_, 4L);
    return lifted(m).to_gaussian();
  }
  // i = zeta^{m/4} and m/4 < phi(m), so it is a single basis monomial
  const std::size_t qi = static_cast<std::size_t>(order_ / 4);
  for (std::size_t j = 1; j < coeffs_.size(); ++j)
    if (j != qi && sgn(coeffs_[j]) != 0) return std::nullopt;
  return GaussianRational(coeffs_[0], coeffs_[qi]);
}

Cyclotomic Cyclotomic::inverse() const {
  if (is_zero()) fail(ErrorCode::Internal, "inverse of zero in cyclotomic field");
  if (order_ <= 2) return Cyclotomic(order_, {Rational(1 / coeffs_[0])});
  // extended Euclid: s*a + t*phi = 1
  Poly modulus;
  for (auto c : cyclotomic_polynomial(order_)) modulus.emplace_back(static_cast<long>(c));
  Poly r0 = modulus, r1 = coeffs_;
  trim(r1);
  Poly s0{Rational(0)}, s1{Rational(1)};
  while (!(r1.size() == 1 && sgn(r1[0]) == 0)) {
    // make r1 monic for the division helper
    Rational lead = r1.back();
    Poly monic = r1;
    for (auto& c : monic) c /= lead;
    Poly q;
    Poly rem = divmod(r0, monic, &q);
    for (auto& c : q) c /= lead;
    Poly s2 = sub(s0, mul(q, s1));
    r0 = r1;
    r1 = rem;
    trim(r1);
    s0 = s1;
    s1 = s2;
  }
  // r0 is a nonzero constant
  Rational g = r0[0];
  for (auto& c : s0) c /= g;
  return reduce(order_, std::move(s0));
}

namespace {

std::pair<Cyclotomic, Cyclotomic> common(const Cyclotomic& a, const Cyclotomic& b) {
  if (a.order() == b.order()) return {a, b};
  long m = std::lcm(a.order(), b.order());
  return {a.lifted(m), b.lifted(m)};
}

}  // namespace

Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) {
  if (a.order_ == b.order_) {
    RationalVector c = a.coeffs_;
    for (std::size_t j = 0; j < c.size(); ++j) c[j] += b.coeffs_[j];
    return Cyclotomic(a.order_, std::move(c));
  }
  auto [x, y] = common(a, b);
  return x + y;
}

Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) {
  if (a.order_ == b.order_) {
    RationalVector c = a.coeffs_;
    for (std::size_t j = 0; j < c.size(); ++j) c[j] -= b.coeffs_[j];
    return Cyclotomic(a.order_, std::move(c));
  }
  auto [x, y] = common(a, b);
  return x - y;
}

Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
  if (a.order_ == b.order_) {
    if (a.order_ <= 2) return Cyclotomic(a.order_, {Rational(a.coeffs_[0] * b.coeffs_[0])});
    return Cyclotomic::reduce(a.order_, mul(a.coeffs_, b.coeffs_));
  }
  // scalars do not force a lift
  if (a.order_ <= 2 && a.to_rational()) {
    RationalVector c = b.coeffs_;
    for (auto& x : c) x *= a.coeffs_[0];
    return Cyclotomic(b.order_, std::move(c));
  }
  if (b.order_ <= 2 && b.to_rational()) return b * a;
  auto [x, y] = common(a, b);
  return x * y;
}

bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
  if (a.order_ == b.order_) return a.coeffs_ == b.coeffs_;
  auto [x, y] = common(a, b);
  return x.coeffs_ == y.coeffs_;
}

Cyclotomic Cyclotomic::operator-() const {
  RationalVector c = coeffs_;
  for (auto& x : c) x = -x;
  return Cyclotomic(order_, std::move(c));
}

}  // namespace boxdeconv
