#include "boxdeconv/exppoly.hpp"

#include <algorithm>
#include <random>

#include "boxdeconv/errors.hpp"
#include "boxdeconv/linalg.hpp"

namespace boxdeconv {

namespace {

std::vector<std::vector<std::size_t>> bases(const DirectionList& phi) {
  std::vector<std::vector<std::size_t>> out;
  const std::size_t n = phi.size(), d = phi.dim();
  std::vector<std::size_t> pick;
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    if (pick.size() == d) {
      IntMatrix rows;
      for (auto k : pick) rows.push_back(phi[k]);
      if (rank(to_rational(rows)) == d) out.push_back(pick);
      return;
    }
    for (std::size_t k = from; k < n; ++k) {
      pick.push_back(k);
      rec(k + 1);
      pick.pop_back();
    }
  };
  rec(0);
  return out;
}

void monomials(Exponent& e, std::size_t j, int left, std::vector<Exponent>& out) {
  if (j == e.size()) {
    out.push_back(e);
    return;
  }
  for (int k = 0; k <= left; ++k) {
    e[j] = k;
    monomials(e, j + 1, left - k, out);
  }
  e[j] = 0;
}

template <class T>
T power(T x, int n) {
  T r = 1;
  for (int k = 0; k < n; ++k) r *= x;
  return r;
}

double binomial(int n, int k) {
  double r = 1;
  for (int t = 1; t <= k; ++t) r = r * (n - k + t) / t;
  return r;
}

}  // namespace

ExpPolyFit::ExpPolyFit(const DirectionList& phi, const ParameterList& y, const Box& box, const Sampler& f, double tol,
                       std::uint64_t seed)
    : box_(box) {
  phi.require_spanning();
  const std::size_t d = phi.dim();
  ParameterList yy = y.empty() ? ParameterList(phi.size(), 0.0) : y;
  for (const auto& basis : bases(phi)) {
    Eigen::MatrixXcd a(d, d);
    Eigen::VectorXcd rhs(d);
    for (std::size_t r = 0; r < d; ++r) {
      for (std::size_t j = 0; j < d; ++j) a(r, j) = static_cast<double>(phi[basis[r]][j]);
      rhs(r) = yy[basis[r]];
    }
    Eigen::VectorXcd eta = a.fullPivLu().solve(rhs);
    bool seen = false;
    for (const auto& e : eta_) seen = seen || (e - eta).norm() <= 1e-14;
    if (!seen) eta_.push_back(eta);
  }
  Exponent e(d, 0);
  monomials(e, 0, static_cast<int>(phi.size() - d), monomials_);

  const std::size_t unknowns = eta_.size() * monomials_.size();
  const std::size_t rows = 4 * unknowns + 16, held_out = 8;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-0.98, 0.98);
  auto draw = [&] {
    std::vector<double> x(d);
    for (std::size_t j = 0; j < d; ++j) x[j] = box_.center[j] + box_.half[j] * unit(rng);
    return x;
  };
  Eigen::MatrixXcd m(rows, unknowns);
  Eigen::VectorXcd rhs(rows);
  double scale = 1;
  for (std::size_t r = 0; r < rows; ++r) {
    std::vector<double> x = draw();
    rhs(r) = f(x);
    scale = std::max(scale, std::abs(rhs(r)));
    for (std::size_t c = 0; c < unknowns; ++c) m(r, c) = basis_value(c, x);
  }
  // column equilibration before the rank-revealing solve
  Eigen::VectorXd norms = m.colwise().norm().transpose();
  for (Eigen::Index c = 0; c < m.cols(); ++c)
    if (norms(c) > 0) m.col(c) /= norms(c);
  coef_ = m.completeOrthogonalDecomposition().solve(rhs);
  for (Eigen::Index c = 0; c < m.cols(); ++c)
    if (norms(c) > 0) coef_(c) /= norms(c);
  for (std::size_t r = 0; r < held_out; ++r) {
    std::vector<double> x = draw();
    std::complex<double> want = f(x);
    if (std::abs(want - (*this)(x)) > tol * std::max(scale, std::abs(want)))
      fail(ErrorCode::NumericDivergence, "exponential-polynomial fit missed a held-out sample");
  }
}

std::complex<double> ExpPolyFit::basis_value(std::size_t column, const std::vector<double>& x) const {
  const Eigen::VectorXcd& eta = eta_[column / monomials_.size()];
  const Exponent& beta = monomials_[column % monomials_.size()];
  std::complex<double> phase = 0, poly = 1;
  for (std::size_t j = 0; j < x.size(); ++j) {
    phase += eta(j) * x[j];
    poly *= power((x[j] - box_.center[j]) / box_.half[j], beta[j]);
  }
  return std::exp(std::complex<double>(0, 1) * phase) * poly;
}

std::complex<double> ExpPolyFit::operator()(const std::vector<double>& x) const {
  std::complex<double> sum = 0;
  for (Eigen::Index c = 0; c < coef_.size(); ++c) sum += coef_(c) * basis_value(c, x);
  return sum;
}

std::complex<double> ExpPolyFit::apply(const Polynomial<std::complex<double>>& op, const std::vector<double>& x) const {
  // d_j acts on exp(i<eta,v>) q(u), u = (v - center) / half, as exp(i<eta,v>) (i eta_j + d_{u_j} / half_j) q
  const std::size_t d = x.size();
  const std::complex<double> i(0, 1);
  std::vector<double> u(d);
  for (std::size_t j = 0; j < d; ++j) u[j] = (x[j] - box_.center[j]) / box_.half[j];
  std::complex<double> total = 0;
  for (std::size_t e = 0; e < eta_.size(); ++e) {
    std::complex<double> phase = 0;
    for (std::size_t j = 0; j < d; ++j) phase += eta_[e](j) * x[j];
    std::complex<double> sum = 0;
    for (const auto& [gamma, c] : op.terms()) {
      for (std::size_t b = 0; b < monomials_.size(); ++b) {
        const Exponent& beta = monomials_[b];
        std::complex<double> term = c * coef_(static_cast<Eigen::Index>(e * monomials_.size() + b));
        for (std::size_t j = 0; j < d && term != 0.0; ++j) {
          std::complex<double> axis = 0;
          for (int k = 0; k <= std::min(gamma[j], beta[j]); ++k) {
            double falling = 1;
            for (int t = 0; t < k; ++t) falling *= beta[j] - t;
            axis += binomial(gamma[j], k) * power(i * eta_[e](j), gamma[j] - k) * falling *
                    power(u[j], beta[j] - k) / power(box_.half[j], k);
          }
          term *= axis;
        }
        sum += term;
      }
    }
    total += std::exp(i * phase) * sum;
  }
  return total;
}

}  // namespace boxdeconv
