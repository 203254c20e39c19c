#include "boxdeconv/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>

#include "boxdeconv/arrangement.hpp"
#include "boxdeconv/boxspline.hpp"
#include "boxdeconv/errors.hpp"
#include "boxdeconv/io.hpp"
#include "boxdeconv/partition.hpp"
#include "boxdeconv/torus.hpp"

namespace boxdeconv::cli {

namespace {

using io::Json;

struct Options {
  std::string phi, y, r, at, eps, f, out, from, to, step = "1/10", suite, chamber;
  std::uint64_t seed = 1;
  int radius = 3;
  int count = 5;
};

struct Context {
  const Options& opt;
  std::ostream& out;
  std::ostream& err;

  DirectionList phi() const {
    if (opt.phi.empty()) throw CLI::RequiredError("--phi");
    return io::parse_phi(Json::parse(opt.phi));
  }
  ParameterList y(const DirectionList& phi) const {
    if (opt.y.empty()) return {};
    ParameterList y = io::parse_parameters(Json::parse(opt.y));
    if (y.size() != phi.size()) fail(ErrorCode::DimensionMismatch, "--y needs one entry per direction");
    return y;
  }
  // A point of length d or a coefficient list of length N.
  std::optional<Representation> r(const DirectionList& phi) const {
    if (opt.r.empty()) return std::nullopt;
    RationalVector v = io::parse_vector(opt.r);
    if (v.size() == phi.dim()) return any_representation(phi, v);
    if (v.size() == phi.size()) return make_representation(phi, v);
    fail(ErrorCode::DimensionMismatch, "--r must have d or N entries");
  }
  RationalVector point(const DirectionList& phi) const {
    if (opt.at.empty()) throw CLI::RequiredError("--at");
    RationalVector v = io::parse_vector(opt.at);
    if (v.size() != phi.dim()) fail(ErrorCode::DimensionMismatch, "--at has the wrong dimension");
    return v;
  }
  IntVector lattice_point(const DirectionList& phi) const {
    if (opt.at.empty()) throw CLI::RequiredError("--at");
    IntVector v = io::parse_int_vector(opt.at);
    if (v.size() != phi.dim()) fail(ErrorCode::DimensionMismatch, "--at has the wrong dimension");
    return v;
  }
  void line(const Json& j) const { out << j.dump() << '\n'; }
};

std::string csv_value(const Value& v) {
  Json j = io::value_json(v);
  return j.is_string() ? j.get<std::string>() : format_complex(v.to_complex());
}

Json value_fields(const Value& v) { return {{"value", io::value_json(v)}, {"exact", v.exact}}; }

bool zero_y(const ParameterList& y) { return y.empty() || is_zero(y); }

Representation zero_representation(const DirectionList& phi) {
  return make_representation(phi, RationalVector(phi.size()));
}

std::vector<IntVector> window(const IntVector& lo, const IntVector& hi) {
  std::vector<IntVector> out(1);
  for (std::size_t j = 0; j < lo.size(); ++j) {
    std::vector<IntVector> grown;
    for (const auto& p : out)
      for (long long x = lo[j]; x <= hi[j]; ++x) {
        IntVector q = p;
        q.push_back(x);
        grown.push_back(std::move(q));
      }
    out = std::move(grown);
  }
  return out;
}

std::vector<IntVector> cube(std::size_t dim, long long radius) {
  return window(IntVector(dim, -radius), IntVector(dim, radius));
}

GaussianRational random_gaussian(std::mt19937_64& rng) {
  std::uniform_int_distribution<long long> num(-9, 9), den(1, 9);
  return {make_rational(num(rng), den(rng)), make_rational(num(rng), den(rng))};
}

LatticeFunction random_function(std::mt19937_64& rng, std::size_t dim, long long radius) {
  LatticeFunction f(dim);
  for (const auto& p : cube(dim, radius)) f.set(p, random_gaussian(rng));
  return f;
}

bool close(const Value& a, const Value& b) {
  if (a.exact && b.exact) return a.exact_value == b.exact_value;
  return std::abs(a.to_complex() - b.to_complex()) <= 1e-6;
}

Value expected_of(const GaussianRational& z, bool exact) {
  return exact ? Value::from_exact(Cyclotomic::gaussian(z)) : Value::from_numeric(z.to_complex());
}

// ---- subcommands ----

int eval_box(const Context& c) {
  DirectionList phi = c.phi();
  phi.require_spanning();
  ParameterList y = c.y(phi);
  RationalVector v = c.point(phi);
  auto r = c.r(phi);
  if (zero_y(y)) {
    RationalVector at = r ? v + r->point : v;
    if (!is_regular(phi, at))
      fail(r ? ErrorCode::NotRegularShifted : ErrorCode::NotRegular, "evaluation point lies on an affine wall");
    c.line(value_fields(Value::from_exact(Cyclotomic(eval_exact(phi, at)))));
  } else {
    c.line(value_fields(Value::from_numeric(r ? eval_translated(phi, y, *r, v) : eval(phi, y, v))));
  }
  return 0;
}

int vertex_set_cmd(const Context& c) {
  DirectionList phi = c.phi();
  Json angles = Json::array();
  for (const auto& s : vertex_set(phi)) angles.push_back(io::vector_json(s.angle));
  c.line({{"angles", angles}});
  return 0;
}

int walls_cmd(const Context& c) {
  DirectionList phi = c.phi();
  Json normals = Json::array();
  for (const auto& w : walls(phi)) normals.push_back(w.normal);
  c.line({{"walls", normals}});
  return 0;
}

int alcove_cmd(const Context& c) {
  DirectionList phi = c.phi();
  Alcove a = alcove_of(phi, c.point(phi));
  c.line({{"witness", io::vector_json(a.witness)}, {"slabs", a.slabs}});
  return 0;
}

int eval_partition(const Context& c) {
  DirectionList phi = c.phi();
  ParameterList y = c.y(phi);
  IntVector nu = c.lattice_point(phi);
  Json j = {{"nu", nu}};
  if (zero_y(y)) {
    Integer n = partition_count(phi, nu);
    j.update(value_fields(Value::from_exact(Cyclotomic(Rational(n)))));
  } else {
    j.update(value_fields(Value::from_numeric(partition_trace(phi, y, nu))));
  }
  if (!c.opt.chamber.empty()) {
    Chamber tau = chamber_of(phi, io::parse_vector(c.opt.chamber));
    j["todd"] = io::value_json(partition_via_todd(phi, y, nu, tau));
  }
  c.line(j);
  return 0;
}

int verify_partition(const Context& c) {
  DirectionList phi = c.phi();
  ParameterList y = c.y(phi);
  if (c.opt.chamber.empty()) throw CLI::RequiredError("--chamber");
  Chamber tau = chamber_of(phi, io::parse_vector(c.opt.chamber));
  for (std::size_t j = 0; j < phi.dim(); ++j) c.out << "nu_" << j + 1 << ',';
  c.out << "brute_force,todd_formula,match\n";
  int mismatches = 0;
  for (const auto& nu : cube(phi.dim(), c.opt.radius)) {
    if (!chamber_covers(phi, tau, nu)) continue;
    Value brute = zero_y(y) ? Value::from_exact(Cyclotomic(Rational(partition_count(phi, nu))))
                            : Value::from_numeric(partition_trace(phi, y, nu));
    Value todd = partition_via_todd(phi, y, nu, tau);
    bool match = close(brute, todd);
    mismatches += !match;
    for (auto x : nu) c.out << x << ',';
    c.out << '"' << csv_value(brute) << "\",\"" << csv_value(todd) << "\"," << (match ? "true" : "false") << '\n';
  }
  if (mismatches > 0) {
    c.err << "verify-partition: " << mismatches << " mismatches\n";
    return 1;
  }
  return 0;
}

int deconvolve_cmd(const Context& c) {
  DirectionList phi = c.phi();
  ParameterList y = c.y(phi);
  if (c.opt.f.empty()) throw CLI::RequiredError("--f");
  LatticeFunction f = io::parse_lattice_function(Json::parse(c.opt.f), phi.dim());
  auto r = c.r(phi);
  RationalVector eps = c.opt.eps.empty() ? generic_direction(phi, c.opt.seed, r ? *r : zero_representation(phi))
                                         : io::parse_vector(c.opt.eps);
  if (eps.size() != phi.dim()) fail(ErrorCode::DimensionMismatch, "--eps has the wrong dimension");
  std::vector<IntVector> targets;
  if (!c.opt.at.empty()) {
    targets.push_back(c.lattice_point(phi));
  } else {
    IntVector lo(phi.dim(), 0), hi(phi.dim(), 0);
    bool first = true;
    for (const auto& [p, v] : f.values())
      for (std::size_t j = 0; j < p.size(); ++j) {
        lo[j] = first ? p[j] : std::min(lo[j], p[j]);
        hi[j] = first ? p[j] : std::max(hi[j], p[j]);
        if (j + 1 == p.size()) first = false;
      }
    for (std::size_t j = 0; j < lo.size(); ++j) {
      lo[j] -= c.opt.radius;
      hi[j] += c.opt.radius;
    }
    targets = window(lo, hi);
  }
  for (const auto& lambda : targets) {
    Value v = r ? deconvolve_translated(phi, y, *r, f, lambda, eps) : deconvolve(phi, y, f, lambda, eps);
    Json j = {{"lambda", lambda}};
    j.update(value_fields(v));
    c.line(j);
  }
  return 0;
}

int emit_profile(const Context& c) {
  DirectionList phi = c.phi();
  if (phi.dim() != 1) fail(ErrorCode::Not1D, "emit-profile needs d = 1");
  phi.require_spanning();
  ParameterList y = c.y(phi);
  auto r = c.r(phi);
  auto [lo, hi] = zonotope_bounds(phi);
  Rational shift = r ? r->point[0] : Rational(0);
  Rational from = c.opt.from.empty() ? to_q(lo[0]) - shift : parse_rational(c.opt.from);
  Rational to = c.opt.to.empty() ? to_q(hi[0]) - shift : parse_rational(c.opt.to);
  Rational step = parse_rational(c.opt.step);
  if (sgn(step) <= 0 || to < from) fail(ErrorCode::InvalidInput, "need step > 0 and from <= to");
  c.out << "t,value_re,value_im,exact\n";
  const bool exact = zero_y(y);
  for (Rational t = from + step / 2; t < to; t += step) {
    Rational at = t;
    while (!is_regular(phi, {at + shift})) at += step / 4;
    Value v = exact ? Value::from_exact(Cyclotomic(eval_exact(phi, {at + shift})))
                    : Value::from_numeric(r ? eval_translated(phi, y, *r, {at}) : eval(phi, y, {at}));
    std::complex<double> z = v.to_complex();
    if (exact) {
      c.out << to_string(at) << ',' << to_string(*v.exact_value.to_rational()) << ",0,true\n";
    } else {
      std::string s = format_complex(z);
      c.out << to_string(at) << ',' << s << ",false\n";
    }
  }
  return 0;
}

// ---- verification suites ----

struct Tally {
  int checks = 0;
  int failures = 0;
  void record(bool ok) {
    ++checks;
    failures += !ok;
  }
};

Tally suite_delta_recovery(const DirectionList& phi, const ParameterList& y, const Options& opt) {
  std::mt19937_64 rng(opt.seed);
  Tally t;
  const bool exact = zero_y(y);
  for (int trial = 0; trial < opt.count; ++trial) {
    LatticeFunction f = random_function(rng, phi.dim(), 1);
    RationalVector eps = generic_direction(phi, opt.seed + trial, zero_representation(phi));
    for (const auto& lambda : cube(phi.dim(), 3))
      t.record(close(deconvolve(phi, y, f, lambda, eps), expected_of(f(lambda), exact)));
  }
  return t;
}

Tally suite_translation(const DirectionList& phi, const ParameterList& y, const Options& opt) {
  std::mt19937_64 rng(opt.seed);
  std::uniform_int_distribution<long long> shift(-3, 3);
  Tally t;
  for (int trial = 0; trial < opt.count; ++trial) {
    LatticeFunction f = random_function(rng, phi.dim(), 1);
    IntVector kappa(phi.dim());
    for (auto& k : kappa) k = shift(rng);
    RationalVector eps = generic_direction(phi, opt.seed + trial, zero_representation(phi));
    LatticeFunction g = f.translated(kappa);
    for (const auto& lambda : cube(phi.dim(), 2))
      t.record(close(deconvolve(phi, y, g, lambda + kappa, eps), deconvolve(phi, y, f, lambda, eps)));
  }
  return t;
}

Tally suite_linearity(const DirectionList& phi, const ParameterList& y, const Options& opt) {
  std::mt19937_64 rng(opt.seed);
  Tally t;
  for (int trial = 0; trial < opt.count; ++trial) {
    LatticeFunction f = random_function(rng, phi.dim(), 1), g = random_function(rng, phi.dim(), 1);
    GaussianRational a = random_gaussian(rng);
    LatticeFunction h = f + g.scaled(a);
    RationalVector eps = generic_direction(phi, opt.seed + trial, zero_representation(phi));
    for (const auto& lambda : cube(phi.dim(), 2)) {
      Value vf = deconvolve(phi, y, f, lambda, eps), vg = deconvolve(phi, y, g, lambda, eps);
      Value vh = deconvolve(phi, y, h, lambda, eps);
      Value combined = vf.exact && vg.exact
                           ? Value::from_exact(vf.exact_value + Cyclotomic::gaussian(a) * vg.exact_value)
                           : Value::from_numeric(vf.to_complex() + a.to_complex() * vg.to_complex());
      t.record(close(vh, combined));
    }
  }
  return t;
}

Tally suite_unity(const DirectionList& phi, const Options& opt) {
  std::mt19937_64 rng(opt.seed);
  std::uniform_int_distribution<long long> num(-40, 40);
  auto [lo, hi] = zonotope_bounds(phi);
  Tally t;
  for (int trial = 0; trial < 4 * opt.count; ++trial) {
    RationalVector v(phi.dim());
    for (auto& x : v) x = make_rational(num(rng), 13);
    if (!is_regular(phi, v)) continue;
    LatticeFunction one(phi.dim());
    IntVector wlo(phi.dim()), whi(phi.dim());
    for (std::size_t j = 0; j < v.size(); ++j) {
      wlo[j] = floor_to_int(v[j]) - hi[j] - 1;
      whi[j] = ceil_to_int(v[j]) - lo[j] + 1;
    }
    for (const auto& p : window(wlo, whi)) one.set(p, GaussianRational(1));
    t.record(semidiscrete(phi, {}, one, v).exact_value == Cyclotomic(1));
  }
  return t;
}

Tally suite_partition(const DirectionList& phi, const ParameterList& y, const Options& opt) {
  std::mt19937_64 rng(opt.seed);
  std::uniform_int_distribution<long long> coef(0, 6);
  Tally t;
  for (int trial = 0; trial < opt.count; ++trial) {
    RationalVector w(phi.dim());
    for (std::size_t k = 0; k < phi.size(); ++k)
      for (std::size_t j = 0; j < w.size(); ++j) w[j] += make_rational(coef(rng) + 1, 7) * to_q(phi[k][j]);
    if (on_cone_boundary(phi, w)) continue;
    Chamber tau = chamber_of(phi, w);
    for (const auto& nu : cube(phi.dim(), 4)) {
      if (!chamber_covers(phi, tau, nu)) continue;
      Value brute = zero_y(y) ? Value::from_exact(Cyclotomic(Rational(partition_count(phi, nu))))
                              : Value::from_numeric(partition_trace(phi, y, nu));
      t.record(close(partition_via_todd(phi, y, nu, tau), brute));
    }
  }
  return t;
}

int verify_cmd(const Context& c) {
  DirectionList phi = c.phi();
  ParameterList y = c.y(phi);
  static const std::vector<std::string> all = {"delta-recovery", "translation", "linearity", "unity", "partition"};
  std::vector<std::string> suites = c.opt.suite.empty() || c.opt.suite == "all" ? all : std::vector{c.opt.suite};
  bool ok = true;
  for (const auto& name : suites) {
    Tally t;
    if (name == "delta-recovery")
      t = suite_delta_recovery(phi, y, c.opt);
    else if (name == "translation")
      t = suite_translation(phi, y, c.opt);
    else if (name == "linearity")
      t = suite_linearity(phi, y, c.opt);
    else if (name == "unity")
      t = suite_unity(phi, c.opt);
    else if (name == "partition")
      t = suite_partition(phi, y, c.opt);
    else
      throw CLI::ValidationError("--suite", "unknown suite '" + name + "'");
    ok = ok && t.failures == 0;
    c.line({{"suite", name}, {"checks", t.checks}, {"failures", t.failures}, {"pass", t.failures == 0}});
  }
  return ok ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Box splines, Todd-operator deconvolution and partition functions"};
  app.require_subcommand(1);
  Options opt;

  auto add_phi = [&](CLI::App* sub) { sub->add_option("--phi", opt.phi, "direction list as JSON")->required(); };
  auto add_y = [&](CLI::App* sub) { sub->add_option("--y", opt.y, "JSON list of \"re,im\" parameters"); };
  auto add_out = [&](CLI::App* sub) { sub->add_option("--out", opt.out, "write output to this file"); };

  std::map<CLI::App*, std::function<int(const Context&)>> handlers;
  auto add = [&](const std::string& name, const std::string& help, std::function<int(const Context&)> fn) {
    CLI::App* sub = app.add_subcommand(name, help);
    add_phi(sub);
    add_out(sub);
    handlers[sub] = std::move(fn);
    return sub;
  };

  CLI::App* box = add("eval-box", "evaluate B(phi, y) or its translate B_r at a point", eval_box);
  add_y(box);
  box->add_option("--at", opt.at, "point, \"p/q\" entries")->required();
  box->add_option("--r", opt.r, "translation r (d entries) or coefficients (N entries)");

  add("vertex-set", "list the vertex set as angles", vertex_set_cmd);
  add("walls", "list wall normals", walls_cmd);
  add("alcove-of", "alcove of a regular point", alcove_cmd)->add_option("--at", opt.at)->required();

  for (const char* name : {"eval-partition", "partition"}) {
    CLI::App* part = add(name, "partition count (y = 0) or trace at nu", eval_partition);
    add_y(part);
    part->add_option("--at", opt.at, "lattice point nu")->required();
    part->add_option("--chamber", opt.chamber, "witness of a chamber; adds the Todd-formula value");
  }

  CLI::App* vp = add("verify-partition", "CSV comparison of brute force and the Todd formula", verify_partition);
  add_y(vp);
  vp->add_option("--chamber", opt.chamber, "witness of the chamber")->required();
  vp->add_option("--radius", opt.radius, "window radius");

  CLI::App* dec = add("deconvolve", "recover f from its semi-discrete convolution", deconvolve_cmd);
  add_y(dec);
  dec->add_option("--f", opt.f, "lattice function as JSON")->required();
  dec->add_option("--at", opt.at, "single lattice point lambda");
  dec->add_option("--eps", opt.eps, "generic direction");
  dec->add_option("--r", opt.r, "translation r");
  dec->add_option("--seed", opt.seed, "seed for the generic direction search");
  dec->add_option("--radius", opt.radius, "margin around the support when --at is absent");

  CLI::App* ver = add("verify", "run a property suite", verify_cmd);
  add_y(ver);
  ver->add_option("--suite", opt.suite, "delta-recovery, translation, linearity, unity, partition or all");
  ver->add_option("--seed", opt.seed, "random seed");
  ver->add_option("--count", opt.count, "trials per suite");

  CLI::App* prof = add("emit-profile", "CSV samples of a 1-D box spline profile", emit_profile);
  add_y(prof);
  prof->add_option("--r", opt.r, "translation r");
  prof->add_option("--from", opt.from);
  prof->add_option("--to", opt.to);
  prof->add_option("--step", opt.step);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, x;
    int code = app.exit(e, o, x);
    out << o.str();
    err << x.str();
    return code == 0 ? 0 : 2;
  }

  CLI::App* chosen = app.get_subcommands().front();
  std::ofstream file;
  if (!opt.out.empty()) {
    file.open(opt.out);
    if (!file) {
      err << "error: cannot open " << opt.out << '\n';
      return 2;
    }
  }
  std::ostream& sink = opt.out.empty() ? out : file;
  try {
    return handlers.at(chosen)(Context{opt, sink, err});
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.code() == ErrorCode::InvalidInput ? 2 : 1;
  } catch (const CLI::Error& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const Json::exception& e) {
    err << "usage error: malformed JSON: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace boxdeconv::cli
