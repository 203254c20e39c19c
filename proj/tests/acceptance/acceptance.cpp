// One PASS/FAIL line per acceptance criterion, with wall time against its budget.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "boxdeconv/arrangement.hpp"
#include "boxdeconv/boxspline.hpp"
#include "boxdeconv/deconv.hpp"
#include "boxdeconv/errors.hpp"
#include "boxdeconv/partition.hpp"
#include "boxdeconv/series.hpp"
#include "boxdeconv/torus.hpp"

using namespace boxdeconv;

namespace {

struct Outcome {
  bool ok = true;
  std::string note;
  void check(bool cond, const std::string& what) {
    if (!cond && ok) note = what;
    ok = ok && cond;
  }
};

Rational q(long long a, long long b = 1) { return make_rational(a, b); }

std::string str(const IntVector& v) {
  std::ostringstream o;
  o << '(';
  for (std::size_t j = 0; j < v.size(); ++j) o << (j ? "," : "") << v[j];
  o << ')';
  return o.str();
}

std::vector<IntVector> cube(std::size_t dim, long long lo, long long hi) {
  std::vector<IntVector> out(1);
  for (std::size_t j = 0; j < dim; ++j) {
    std::vector<IntVector> grown;
    for (const auto& p : out)
      for (long long x = lo; x <= hi; ++x) {
        IntVector r = p;
        r.push_back(x);
        grown.push_back(std::move(r));
      }
    out = std::move(grown);
  }
  return out;
}

GaussianRational random_gaussian(std::mt19937_64& rng) {
  std::uniform_int_distribution<long long> num(-20, 20), den(1, 12);
  return {q(num(rng), den(rng)), q(num(rng), den(rng))};
}

LatticeFunction random_function(std::mt19937_64& rng, std::size_t dim, long long radius) {
  LatticeFunction f(dim);
  for (const auto& p : cube(dim, -radius, radius)) f.set(p, random_gaussian(rng));
  return f;
}

Representation zero_rep(const DirectionList& phi) { return make_representation(phi, RationalVector(phi.size())); }

// Independent brute force: nested loops over p with sum p_k alpha_k = nu, p_k <= bound.
template <class Visit>
void brute_partitions(const DirectionList& phi, const IntVector& nu, long long bound, Visit visit) {
  IntVector p(phi.size(), 0);
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == phi.size()) {
      for (std::size_t j = 0; j < nu.size(); ++j) {
        long long s = 0;
        for (std::size_t i = 0; i < phi.size(); ++i) s += p[i] * phi[i][j];
        if (s != nu[j]) return;
      }
      visit(p);
      return;
    }
    for (long long m = 0; m <= bound; ++m) {
      p[k] = m;
      rec(k + 1);
    }
  };
  rec(0);
}

long brute_count(const DirectionList& phi, const IntVector& nu, long long bound) {
  long n = 0;
  brute_partitions(phi, nu, bound, [&](const IntVector&) { ++n; });
  return n;
}

std::complex<double> brute_trace(const DirectionList& phi, const ParameterList& y, const IntVector& nu,
                                 long long bound) {
  std::complex<double> sum = 0;
  brute_partitions(phi, nu, bound, [&](const IntVector& p) {
    std::complex<double> py = 0;
    for (std::size_t k = 0; k < p.size(); ++k) py += static_cast<double>(p[k]) * y[k];
    sum += std::exp(std::complex<double>(0, 1) * py);
  });
  return sum;
}

// ---- criteria ----

Outcome c1_table() {
  Outcome o;
  DirectionList phi(1, {{1}, {2}});
  // t/2 on (0,1), 1/2 on (1,2), (3-t)/2 on (2,3)
  const std::pair<Rational, Rational> table[] = {
      {q(1, 4), q(1, 8)}, {q(1, 2), q(1, 4)}, {q(3, 2), q(1, 2)}, {q(5, 2), q(1, 4)}, {q(11, 4), q(1, 8)}};
  for (const auto& [t, want] : table) o.check(eval_exact(phi, {t}) == want, "b([1,2])(" + to_string(t) + ")");
  for (auto t : {q(-1, 2), q(-7, 3), q(7, 2), q(13, 4), q(19, 2)}) o.check(sgn(eval_exact(phi, {t})) == 0, "zero outside (0,3)");
  return o;
}

Outcome c2_vertex_sets() {
  Outcome o;
  auto angles = [](const DirectionList& phi) {
    std::vector<RationalVector> out;
    for (const auto& s : vertex_set(phi)) out.push_back(s.angle);
    return out;
  };
  o.check(angles(DirectionList(1, {{1}, {2}})) == std::vector<RationalVector>{{q(0)}, {q(1, 2)}}, "V([1,2])");
  o.check(angles(DirectionList(1, {{1}, {-1}})) == std::vector<RationalVector>{{q(0)}}, "V([1,-1])");
  o.check(angles(DirectionList(2, {{1, 0}, {0, 1}, {1, 1}})) == std::vector<RationalVector>{{q(0), q(0)}},
          "V(A2)");
  return o;
}

Outcome c3_delta_recovery() {
  Outcome o;
  const std::vector<DirectionList> fixtures = {
      DirectionList(1, {{1}, {2}}), DirectionList(1, {{1}, {-1}}), DirectionList(1, {{1}, {1}, {2}}),
      DirectionList(2, {{1, 0}, {0, 1}, {1, 1}}), DirectionList(2, {{1, 0}, {0, 1}, {1, 1}, {1, 2}})};
  std::mt19937_64 rng(20240917);
  long long evaluations = 0;
  for (std::size_t fi = 0; fi < fixtures.size(); ++fi) {
    const DirectionList& phi = fixtures[fi];
    for (int trial = 0; trial < 50; ++trial) {
      LatticeFunction f = random_function(rng, phi.dim(), 5);
      RationalVector eps = generic_direction(phi, 1000 * fi + trial, zero_rep(phi));
      o.check(is_generic(phi, eps) && cone_contains(phi, eps), "epsilon not generic in Cone(phi)");
      for (const auto& lambda : cube(phi.dim(), -7, 7)) {
        Value v = deconvolve(phi, {}, f, lambda, eps);
        ++evaluations;
        o.check(v.exact && v.exact_value == Cyclotomic::gaussian(f(lambda)),
                "fixture " + std::to_string(fi) + " lambda " + str(lambda));
      }
    }
  }
  if (o.ok) o.note = std::to_string(evaluations) + " exact evaluations";
  return o;
}

Outcome c4_directional() {
  Outcome o;
  LatticeFunction d0 = LatticeFunction::delta({0});
  DirectionList phi(1, {{1}, {2}}), tent(1, {{1}, {-1}});
  bool differs = false;
  for (long long l = -3; l <= 3; ++l) {
    Value plus = deconvolve(phi, {}, d0, {l}, {q(1)});
    o.check(plus.exact_value == Cyclotomic(l == 0 ? 1 : 0), "[1,2] eps=+1 at " + std::to_string(l));
    Value minus = deconvolve(phi, {}, d0, {l}, {q(-1)});
    differs = differs || minus.exact_value != Cyclotomic(l == 0 ? 1 : 0);
    for (int e : {1, -1})
      o.check(deconvolve(tent, {}, d0, {l}, {q(e)}).exact_value == Cyclotomic(l == 0 ? 1 : 0),
              "[1,-1] eps=" + std::to_string(e) + " at " + std::to_string(l));
  }
  o.check(differs, "[1,2] eps=-1 reproduced delta_0 everywhere");
  return o;
}

Outcome c5_translated() {
  Outcome o;
  LatticeFunction d0 = LatticeFunction::delta({0});
  DirectionList tent(1, {{1}, {-1}});
  for (auto r : {q(1, 4), q(1, 2), q(3, 4)}) {
    Representation rep = any_representation(tent, {r});
    for (int e : {1, -1})
      for (long long l = -4; l <= 4; ++l)
        o.check(deconvolve_translated(tent, {}, rep, d0, {l}, {q(e)}).exact_value == Cyclotomic(l == 0 ? 1 : 0),
                "r=" + to_string(r) + " eps=" + std::to_string(e) + " lambda=" + std::to_string(l));
  }
  try {
    Representation far = make_representation(tent, {q(2), q(0)});
    deconvolve_translated(tent, {}, far, d0, {0}, {q(1)});
    o.check(false, "r=2 accepted");
  } catch (const Error& e) {
    o.check(e.code() == ErrorCode::PointOutsideZonotope, "r=2 raised " + std::string(to_string(e.code())));
  }
  DirectionList phi(1, {{1}, {2}});
  Representation center = center_representation(phi);
  o.check(center.point == RationalVector{q(3, 2)}, "center of Z([1,2])");
  std::mt19937_64 rng(55);
  for (int trial = 0; trial < 5; ++trial) {
    LatticeFunction f = random_function(rng, 1, 5);
    for (long long l = -7; l <= 7; ++l) {
      Value a = deconvolve_translated(phi, {}, center, f, {l}, {q(1)});
      Value b = deconvolve_translated(phi, {}, center, f, {l}, {q(-1)});
      o.check(a.exact_value == b.exact_value, "center directions disagree at " + std::to_string(l));
      o.check(a.exact_value == Cyclotomic::gaussian(f({l})), "center recovery at " + std::to_string(l));
    }
  }
  return o;
}

Outcome c6_dm() {
  Outcome o;
  DirectionList phi(1, {{1}, {2}});
  for (long long a = 0; a < 3; ++a) {
    Alcove c = alcove_of(phi, {q(2 * a + 1, 2)});
    // (c - Z(phi)) = (a - 3, a + 1)
    for (long long nu = a - 2; nu <= a; ++nu) {
      o.check(alcove_covers(phi, c, {nu}), "coverage of " + std::to_string(nu));
      Value v = dm_quasipolynomial(phi, c, {nu});
      o.check(v.exact_value == Cyclotomic(nu == 0 ? 1 : 0),
              "Q((" + std::to_string(a) + "," + std::to_string(a + 1) + "))(" + std::to_string(nu) + ")");
    }
    o.check(!alcove_covers(phi, c, {a - 3}) && !alcove_covers(phi, c, {a + 1}), "coverage too large");
  }
  return o;
}

Outcome c7_partition() {
  Outcome o;
  DirectionList phi(1, {{1}, {2}});
  o.check(partition_count(phi, {5}) == 3 && brute_count(phi, {5}, 5) == 3, "count([1,2],5)");
  Chamber tau = chamber_of(phi, {q(1, 2)});
  for (long long nu = -2; nu <= 20; ++nu) {
    o.check(chamber_covers(phi, tau, {nu}), "nu=" + std::to_string(nu) + " not covered");
    Integer count = partition_count(phi, {nu});
    o.check(count == brute_count(phi, {nu}, 20), "partition_count([1,2]," + std::to_string(nu) + ")");
    o.check(partition_via_todd(phi, {}, {nu}, tau).exact_value == Cyclotomic(Rational(count)),
            "todd([1,2]," + std::to_string(nu) + ")");
  }
  DirectionList a2(2, {{1, 0}, {0, 1}, {1, 1}});
  o.check(partition_count(a2, {2, 1}) == 2 && brute_count(a2, {2, 1}, 3) == 2, "count(A2,(2,1))");
  int covered = 0;
  for (const RationalVector& w : {RationalVector{q(2), q(1)}, RationalVector{q(1), q(2)}}) {
    Chamber c = chamber_of(a2, w);
    for (const auto& nu : cube(2, -3, 6)) {
      if (!chamber_covers(a2, c, nu)) continue;
      ++covered;
      Integer count = partition_count(a2, nu);
      o.check(count == brute_count(a2, nu, 12), "partition_count(A2," + str(nu) + ")");
      o.check(partition_via_todd(a2, {}, nu, c).exact_value == Cyclotomic(Rational(count)), "todd(A2," + str(nu) + ")");
    }
  }
  if (o.ok) o.note = std::to_string(23 + covered) + " lattice points";
  return o;
}

Outcome c8_parametric() {
  Outcome o;
  std::mt19937_64 rng(808);
  std::uniform_real_distribution<double> small(-0.05, 0.05);
  auto draw = [&](std::size_t n, bool complex) {
    ParameterList y;
    for (std::size_t k = 0; k < n; ++k) {
      std::complex<double> z(small(rng), complex ? small(rng) : 0.0);
      if (std::abs(z) > 0.05) z *= 0.05 / std::abs(z);
      y.push_back(z);
    }
    return y;
  };
  double worst = 0;
  DirectionList phi(1, {{1}, {2}});
  for (int trial = 0; trial < 4; ++trial) {
    ParameterList y = draw(2, trial % 2 == 1);
    LatticeFunction f = trial < 2 ? LatticeFunction::delta({0}) : random_function(rng, 1, 5);
    for (long long l = -7; l <= 7; ++l) {
      double err = std::abs(deconvolve(phi, y, f, {l}, {q(1)}).to_complex() - f({l}).to_complex());
      worst = std::max(worst, err);
      o.check(err <= 1e-6, "delta recovery at " + std::to_string(l));
    }
  }
  Chamber tau = chamber_of(phi, {q(1, 2)});
  DirectionList a2(2, {{1, 0}, {0, 1}, {1, 1}});
  for (int trial = 0; trial < 2; ++trial) {
    ParameterList y = draw(2, trial == 1);
    for (long long nu = -2; nu <= 20; ++nu) {
      std::complex<double> want = partition_trace(phi, y, {nu});
      o.check(std::abs(want - brute_trace(phi, y, {nu}, 20)) <= 1e-12, "trace oracle");
      double err = std::abs(partition_via_todd(phi, y, {nu}, tau).to_complex() - want);
      worst = std::max(worst, err);
      o.check(err <= 1e-6, "todd vs trace [1,2] at " + std::to_string(nu));
    }
    ParameterList y2 = draw(3, trial == 1);
    for (const RationalVector& w : {RationalVector{q(2), q(1)}, RationalVector{q(1), q(2)}}) {
      Chamber c = chamber_of(a2, w);
      for (const auto& nu : cube(2, -3, 6)) {
        if (!chamber_covers(a2, c, nu)) continue;
        double err = std::abs(partition_via_todd(a2, y2, nu, c).to_complex() - partition_trace(a2, y2, nu));
        worst = std::max(worst, err);
        o.check(err <= 1e-6, "todd vs trace A2 at " + str(nu));
      }
    }
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "max error %.2e", worst);
  if (o.ok) o.note = buf;
  return o;
}

Outcome c9_lemma() {
  Outcome o;
  double worst = 0;
  for (double v : {0.3, 0.5, 0.7}) {
    auto [sum, target] = fractional_fourier_check(1.0, v, 10000);
    worst = std::max(worst, std::abs(sum - target));
    o.check(std::abs(sum - target) <= 1e-3, "v=" + std::to_string(v));
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "max error %.2e", worst);
  if (o.ok) o.note = buf;
  return o;
}

Outcome c10_properties() {
  Outcome o;
  std::mt19937_64 rng(10);
  const std::vector<DirectionList> fixtures = {
      DirectionList(1, {{1}, {2}}), DirectionList(1, {{1}, {-1}}), DirectionList(1, {{1}, {1}, {2}}),
      DirectionList(2, {{1, 0}, {0, 1}, {1, 1}}), DirectionList(2, {{1, 0}, {0, 1}, {1, 1}, {1, 2}}),
      DirectionList(2, {{1, 0}, {0, 1}, {1, -1}, {2, 1}})};
  std::uniform_int_distribution<long long> num(-60, 60);
  int checks = 0;
  for (const auto& phi : fixtures) {
    auto [lo, hi] = zonotope_bounds(phi);
    const long long degree_bound = static_cast<long long>(phi.size() - phi.dim());
    for (int trial = 0; trial < 20; ++trial) {
      RationalVector v(phi.dim());
      for (auto& x : v) x = q(num(rng), 17);
      if (!is_regular(phi, v)) continue;
      // partition of unity
      Rational sum = 0;
      for (const auto& lambda : cube(phi.dim(), -8, 8)) sum += eval_exact(phi, v - lambda);
      o.check(sum == 1, "partition of unity");
      // support containment
      Rational b = eval_exact(phi, v);
      o.check(sgn(b) >= 0 && (sgn(b) == 0 || zonotope_contains(phi, v)), "support");
      // local degree
      o.check(local_polynomial(phi, alcove_of(phi, v)).poly.total_degree() <= degree_bound, "degree");
      checks += 3;
    }
  }
  // Bernoulli: sum_{k<n} C(n,k) b_k = 0 for 2 <= n <= 12, b_0 = 1
  RationalVector b = bernoulli(12);
  o.check(b[0] == 1, "b0");
  for (int n = 2; n <= 12; ++n) {
    Rational s = 0, c = 1;
    for (int k = 0; k < n; ++k) {
      s += c * b[k];
      c = c * (n - k) / (k + 1);
    }
    o.check(sgn(s) == 0, "Bernoulli identity n=" + std::to_string(n));
    ++checks;
  }
  // beta: (u - 1) beta_n + u sum_{j<n} C(n,j) beta_j = [n = 0], order 8
  for (auto angle : {q(1, 2), q(1, 3), q(1, 4), q(2, 5), q(5, 6)}) {
    Cyclotomic u = Cyclotomic::root_of_unity(angle);
    auto beta = beta_coeffs(u, 8);
    for (int n = 0; n <= 8; ++n) {
      Cyclotomic s = (u - Cyclotomic(1)) * beta[n], c(1);
      Rational binom = 1;
      for (int j = 0; j < n; ++j) {
        s += u * Cyclotomic(binom) * beta[j];
        binom = binom * (n - j) / (j + 1);
      }
      o.check(s == Cyclotomic(n == 0 ? 1 : 0), "beta identity");
      ++checks;
    }
  }
  // translation equivariance and linearity of deconvolve
  for (std::size_t fi = 0; fi < 5; ++fi) {
    const DirectionList& phi = fixtures[fi];
    std::uniform_int_distribution<long long> shift(-4, 4);
    for (int trial = 0; trial < 3; ++trial) {
      LatticeFunction f = random_function(rng, phi.dim(), 2), g = random_function(rng, phi.dim(), 2);
      GaussianRational a = random_gaussian(rng);
      IntVector kappa(phi.dim());
      for (auto& k : kappa) k = shift(rng);
      RationalVector eps = generic_direction(phi, 77 + trial, zero_rep(phi));
      LatticeFunction h = f + g.scaled(a), ft = f.translated(kappa);
      for (const auto& lambda : cube(phi.dim(), -3, 3)) {
        Cyclotomic vf = deconvolve(phi, {}, f, lambda, eps).exact_value;
        Cyclotomic vg = deconvolve(phi, {}, g, lambda, eps).exact_value;
        o.check(deconvolve(phi, {}, h, lambda, eps).exact_value == vf + Cyclotomic::gaussian(a) * vg, "linearity");
        o.check(deconvolve(phi, {}, ft, lambda + kappa, eps).exact_value == vf, "translation equivariance");
        checks += 2;
      }
    }
  }
  if (o.ok) o.note = std::to_string(checks) + " checks, 0 failures";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget;
    std::function<Outcome()> run;
  };
  const Criterion criteria[] = {
      {1, "box spline table [1,2]", 1, c1_table},
      {2, "vertex sets", 1, c2_vertex_sets},
      {3, "exact delta recovery", 60, c3_delta_recovery},
      {4, "directional negative control", 1, c4_directional},
      {5, "translated deconvolution", 10, c5_translated},
      {6, "DM quasipolynomial", 5, c6_dm},
      {7, "partition functions via Todd", 30, c7_partition},
      {8, "parametric path", 60, c8_parametric},
      {9, "L2 lemma partial sums", 5, c9_lemma},
      {10, "property suites", 120, c10_properties},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.note = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.budget) {
      if (o.ok) o.note = "over time budget";
      o.ok = false;
    }
    failures += !o.ok;
    std::printf("%s %d %s (%.2fs / %.0fs)%s%s\n", o.ok ? "PASS" : "FAIL", c.id, c.name, secs, c.budget,
                o.note.empty() ? "" : ": ", o.note.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
