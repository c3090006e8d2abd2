#include "selftest.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>

#include "acs.hpp"
#include "dbar.hpp"
#include "dominate.hpp"
#include "fourier.hpp"
#include "io.hpp"
#include "mhcalc.hpp"
#include "random_data.hpp"
#include "runge.hpp"

namespace dbarlab {
namespace {

struct Check {
  bool passed = false;
  double value = 0.0;  // worst observed quantity for the check
};

using Json = io::OrderedJson;

Check monomial_norm_check(Rng& rng) {
  // |x^k| at the maximizer x_n = k_n/‖k‖ on ℓ₁ blocks of dimension one.
  const SumSpaceSpec spec({{1.0, 1}, {1.0, 1}, {1.0, 1}}, OuterSpace::lq(1.0));
  double worst = 0.0;
  for (const auto& k : enumerate(3, 5)) {
    if (k.is_zero()) continue;
    std::vector<VarPower> vars;
    for (const auto& [pos, exp] : k.entries()) vars.push_back({pos, 1, exp});
    Polynomial p;
    p.add(make_monomial(vars), Complex{1.0, 0.0});
    const auto phi = KHomPolynomial::make(k, p);
    const double expected = monomial_norm(k);
    const double got = khom_norm(phi, spec, {256, 10, static_cast<std::uint64_t>(rng.uniform_int(0, 1 << 30))}).value;
    worst = std::max(worst, std::abs(got - expected) / expected);
  }
  return {worst <= 1e-12, worst};
}

Check homogeneous_bound_check(Rng& rng) {
  const SumSpaceSpec spec({{2.0, 2}, {1.0, 1}, {kInfinity, 2}}, OuterSpace::lq(1.0));
  double worst_ratio = 0.0;
  for (const auto& k : {MultiIndex::from_entries({{1, 2}}), MultiIndex::from_entries({{1, 1}, {2, 1}}),
                        MultiIndex::from_entries({{2, 1}, {3, 2}})}) {
    auto phi = KHomPolynomial::make(k, random_khom(rng, spec, k, 3));
    phi.norm = khom_norm(phi, spec, {1024, 40, static_cast<std::uint64_t>(rng.uniform_int(0, 1 << 30))}).value;
    for (int s = 0; s < 50; ++s) {
      auto x = sample_unit_sphere(rng, spec);
      const double bound = homogeneous_bound(phi, spec, x);
      if (bound > 0.0) worst_ratio = std::max(worst_ratio, std::abs(eval(phi, x)) / bound);
    }
  }
  // The sampled norm is a lower estimate, so allow a small shortfall.
  return {worst_ratio <= 1.0 + 1e-6, worst_ratio};
}

Check fourier_exact_check(Rng& rng) {
  const SumSpaceSpec spec({{2.0, 2}, {1.0, 1}}, OuterSpace::lq(1.0));
  std::size_t mismatches = 0;
  for (int t = 0; t < 3; ++t) {
    const auto f = random_sum_polynomial(rng, spec, 2, 3, 4);
    ExtractionOptions opts;
    opts.num_blocks = 2;
    opts.degree_cap = 3;
    if (!(extract_coefficients_exact(spec, f, opts) == f)) ++mismatches;
  }
  return {mismatches == 0, static_cast<double>(mismatches)};
}

Check delta_closed_form_check() {
  // One coordinate: Δ(t) = 1 + |q| t / (1 - t).
  double worst = 0.0;
  for (double t : {0.05, 0.1, 0.2, 0.3}) {
    const std::vector<double> z{t};
    const auto d = delta_converged(Complex{0.5, 0.0}, z);
    worst = std::max(worst, std::abs(d.value - (1.0 + 0.5 * t / (1.0 - t))));
  }
  return {worst <= 1e-12, worst};
}

Check runge_check(std::uint64_t seed) {
  RungeOptions opts;
  opts.seed = seed;
  opts.delta_samples = 256;
  opts.check_samples = 500;
  const auto result = approximate(geometric_expansion(), 0.2, 1e-2, opts);
  const auto& c = result.certificate;
  const double err = c.sampled_max_error.value_or(INFINITY);
  return {c.satisfied && err <= c.error_bound, err};
}

Check dbar_squared_check(Rng& rng) {
  std::size_t failures = 0;
  for (int t = 0; t < 10; ++t) {
    const auto u = random_exact_poly(rng, 3, 4, 6);
    if (!is_closed(dbar(u)).closed) ++failures;
  }
  return {failures == 0, static_cast<double>(failures)};
}

Check homotopy_check(Rng& rng) {
  std::size_t failures = 0;
  for (int t = 0; t < 10; ++t) {
    const auto f = dbar(random_exact_poly(rng, 3, 4, 6));
    if (!(dbar(homotopy_solve(f)) == f)) ++failures;
  }
  return {failures == 0, static_cast<double>(failures)};
}

Check condensation_check() {
  CondensationSpec<GaussianRational> spec;
  spec.P = 4;
  for (std::uint32_t p = 2; p <= spec.P; ++p) {
    const auto member = builtin_family("zbar-power", 2)(p);
    spec.family[p] = {member.n, member.radius, to_exact(member.form)};
  }
  CmOptions cm;
  cm.samples = 64;
  const auto c = condense(spec, cm);
  bool ok = is_closed(c.form).closed;
  std::size_t bad_blocks = 0;
  for (std::uint32_t p = 2; p <= spec.P; ++p) {
    const auto expected = spec.family.at(p).form.scaled(c.scale_factors.at(p) * c.weights.at(p));
    if (!(restrict_to_block(c, p) == expected)) ++bad_blocks;
  }
  ok = ok && bad_blocks == 0;
  return {ok, static_cast<double>(bad_blocks)};
}

Check min_sup_check(Rng& rng) {
  double worst_excess = 0.0;
  bool exact_ok = true;
  MinSupOptions opts;
  opts.degree = 2;
  opts.grid = 128;
  opts.iterations = 30;
  for (int t = 0; t < 2; ++t) {
    const auto w = random_exact_poly(rng, 2, 3, 4);
    const auto f = dbar(w);
    opts.seed = static_cast<std::uint64_t>(rng.uniform_int(0, 1 << 30));
    const auto res = min_sup_solution(f, 1.0, opts);
    exact_ok = exact_ok && dbar(res.u) == f;
    const auto wf = to_floating(w);
    double sup_w = 0.0;
    for (const auto& x : min_sup_grid(2, 1.0, opts)) sup_w = std::max(sup_w, std::abs(wf.eval(x)));
    worst_excess = std::max(worst_excess, res.sup - sup_w);
  }
  return {exact_ok && worst_excess <= 1e-8, worst_excess};
}

Check acs_decomposition_check(Rng& rng) {
  std::size_t failures = 0;
  for (const auto& g : {LieGroupModel::additive(), LieGroupModel::gl(2)}) {
    for (int t = 0; t < 5; ++t) {
      const auto f = random_exact_gform(rng, 2, g, 1);
      const auto v = random_exact_tangent(rng, 2, g);
      const auto [v1, v2] = decompose(v, f);
      const bool ok = v1 + v2 == v && is_antiholomorphic_tangent(v1, f, 0.0).member &&
                      is_antiholomorphic_tangent(conj(v2), f, 0.0).member;
      if (!ok) ++failures;
    }
  }
  return {failures == 0, static_cast<double>(failures)};
}

Check maurer_cartan_check(std::uint64_t seed) {
  const double r = maurer_cartan_fd_residual(2, 1e-5, 20, seed);
  return {r <= 1e-6, r};
}

}  // namespace

std::string run_selftest(std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::pair<std::string, std::function<Check()>>> suite = {
      {"monomial_norm", [&] { return monomial_norm_check(rng); }},
      {"homogeneous_bound", [&] { return homogeneous_bound_check(rng); }},
      {"exact_fourier_extraction", [&] { return fourier_exact_check(rng); }},
      {"delta_closed_form", [] { return delta_closed_form_check(); }},
      {"runge_geometric", [&] { return runge_check(seed); }},
      {"dbar_squared_zero", [&] { return dbar_squared_check(rng); }},
      {"homotopy_right_inverse", [&] { return homotopy_check(rng); }},
      {"condensation_closed", [] { return condensation_check(); }},
      {"min_sup_below_particular", [&] { return min_sup_check(rng); }},
      {"acs_decomposition", [&] { return acs_decomposition_check(rng); }},
      {"maurer_cartan_identity", [&] { return maurer_cartan_check(seed); }},
  };

  Json checks = Json::array();
  bool all = true;
  for (const auto& [name, run] : suite) {
    Check c;
    std::string error;
    try {
      c = run();
    } catch (const std::exception& e) {
      error = e.what();
    }
    all = all && c.passed;
    Json entry{{"name", name}, {"passed", c.passed}, {"value", c.value}};
    if (!error.empty()) entry["error"] = error;
    checks.push_back(std::move(entry));
  }
  Json report{{"seed", seed}, {"checks", std::move(checks)}, {"passed", all}};
  return report.dump(2) + "\n";
}

bool selftest_passed(const std::string& report) {
  const auto j = io::parse(report);
  return j.value("passed", false);
}

}  // namespace dbarlab
