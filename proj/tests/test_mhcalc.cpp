#include <doctest.h>

#include <cmath>

#include "dominate.hpp"
#include "error.hpp"
#include "mhcalc.hpp"
#include "random_data.hpp"

using namespace dbarlab;

namespace {

const SumSpaceSpec kScalars({{1.0, 1}, {1.0, 1}}, OuterSpace::lq(1.0));

Monomial mono(std::initializer_list<VarPower> v) { return make_monomial(std::vector<VarPower>(v)); }

KHomPolynomial single(const Monomial& m, Complex c) {
  Polynomial p;
  p.add(m, c);
  return KHomPolynomial::make(block_degrees(m), p);
}

}  // namespace

TEST_CASE("evaluation of a homogeneous term") {
  const auto phi = single(mono({{1, 1, 1}, {2, 1, 1}}), 1.0);
  CHECK(eval(phi, SumVector({{1, {1.0}}, {2, {1.0}}})) == Complex(1.0, 0.0));
  CHECK(eval(phi, SumVector({{1, {Complex(0.3, 0.2)}}})) == Complex(0.0, 0.0));
}

TEST_CASE("make rejects mixed multidegrees") {
  Polynomial p;
  p.add(mono({{1, 1, 2}}), 1.0);
  p.add(mono({{1, 1, 1}, {2, 1, 1}}), 1.0);
  CHECK_THROWS_AS(KHomPolynomial::make(MultiIndex::from_entries({{1, 2}}), p), Error);
}

TEST_CASE("closed-form norms of monomials on l1 structures") {
  CHECK(khom_norm(single(mono({{1, 1, 1}, {2, 1, 1}}), 1.0), kScalars).value == doctest::Approx(0.25));
  CHECK(khom_norm(single(mono({{1, 1, 2}}), 1.0), kScalars).value == doctest::Approx(1.0));
  CHECK(khom_norm(single(mono({{1, 1, 1}, {2, 1, 1}}), 2.0), kScalars).value == doctest::Approx(0.5));
  const auto est = khom_norm(single(mono({{1, 1, 1}, {2, 1, 1}}), 1.0), kScalars);
  CHECK(est.exact);
}

TEST_CASE("sampled norm approaches closed forms from below") {
  NormSampler sampler{4096, 200, 3};
  const auto phi = single(mono({{1, 1, 1}, {2, 1, 2}}), 1.0);
  const double exact = khom_norm(phi, kScalars).value;
  CHECK(exact == doctest::Approx(4.0 / 27.0));
  const double sampled = khom_norm(phi, kScalars, sampler, NormMethod::kSampled).value;
  CHECK(sampled <= exact * (1.0 + 1e-12));
  CHECK(sampled >= exact * (1.0 - 1e-6));
}

TEST_CASE("norm inside an l2 block") {
  // sup |ab| over |a|² + |b|² <= 1 is 1/2.
  const SumSpaceSpec spec({{2.0, 2}}, OuterSpace::lq(1.0));
  const auto phi = single(mono({{1, 1, 1}, {1, 2, 1}}), 1.0);
  const auto est = khom_norm(phi, spec, {2048, 200, 5});
  CHECK_FALSE(est.exact);
  CHECK(est.value <= 0.5 + 1e-12);
  CHECK(est.value >= 0.5 - 1e-6);
}

TEST_CASE("homogeneity bound at the maximizer and on random samples") {
  auto phi = single(mono({{1, 1, 1}, {2, 1, 1}}), 1.0);
  phi.norm = 0.25;
  const SumVector x({{1, {1.0}}, {2, {1.0}}});
  CHECK(homogeneous_bound(phi, kScalars, x) == doctest::Approx(1.0));
  CHECK(std::abs(eval(phi, x)) == doctest::Approx(1.0));

  Rng rng(21);
  const SumSpaceSpec spec({{2.0, 2}, {1.0, 1}, {kInfinity, 2}}, OuterSpace::lq(2.0));
  const auto k = MultiIndex::from_entries({{1, 2}, {3, 1}});
  auto psi = KHomPolynomial::make(k, random_khom(rng, spec, k, 4));
  psi.norm = khom_norm(psi, spec, {4096, 100, 7}).value;
  for (int s = 0; s < 500; ++s) {
    const auto y = sample_unit_sphere(rng, spec);
    CHECK(std::abs(eval(psi, y)) <= homogeneous_bound(psi, spec, y) * (1.0 + 1e-10));
  }
}

TEST_CASE("expansion of a polynomial and windows") {
  Polynomial f;
  f.add(mono({{1, 1, 2}}), 1.0);
  f.add(mono({{1, 1, 1}, {2, 1, 1}}), Complex(0.0, 2.0));
  f.add({}, 3.0);
  ExtractionOptions opts;
  opts.num_blocks = 2;
  opts.degree_cap = 2;
  const auto e = expand_polynomial(kScalars, 1.0, [&](const SumVector& x) { return f.eval(x); }, opts);
  CHECK(e.terms.size() == 3);
  const SumVector x({{1, {Complex(0.2, -0.1)}}, {2, {Complex(0.4, 0.3)}}});
  CHECK(std::abs(partial_sum_eval(e, x) - f.eval(x)) < 1e-14);
  const auto w = window(e, 1, 2);
  CHECK(w.terms.size() == 2);
  CHECK(window(e, 2, 0).terms.size() == 1);
}

TEST_CASE("M(sigma)") {
  MHExpansion e{SumSpaceSpec::single(1.0, 1), 1.0, {}};
  CHECK(m_sigma(e, ScaleSequence{{0.5}}) == 0.0);
  for (std::uint32_t d = 0; d <= 6; ++d) {
    auto t = single(d == 0 ? Monomial{} : mono({{1, 1, d}}), 1.0);
    t.norm = 1.0;
    e.terms.emplace(t.index, t);
  }
  CHECK(m_sigma(e, ScaleSequence{{0.5}}) == doctest::Approx(1.0));
}

TEST_CASE("partial sums obey the dominating-function chain") {
  // |Σ f_k(σy)| <= M(σ) Δ(1, |y|/R) for ‖y‖ < R.
  Rng rng(22);
  const SumSpaceSpec spec({{1.0, 1}, {1.0, 1}}, OuterSpace::lq(1.0));
  MHExpansion e{spec, 1.0, {}};
  for (const auto& k : enumerate(2, 4)) {
    auto t = KHomPolynomial::make(k, random_khom(rng, spec, k, 1));
    t.norm = khom_norm(t, spec).value;
    e.terms.emplace(k, t);
  }
  const ScaleSequence sigma{{0.6, 0.3}};
  const double m = m_sigma(e, sigma);
  for (int s = 0; s < 200; ++s) {
    auto y = sample_unit_sphere(rng, spec);
    const double shrink = 0.3 * rng.uniform();
    SumVector::Components c;
    for (const auto& [pos, v] : y.components()) c[pos] = {v[0] * shrink};
    y = SumVector(c);
    const auto x = scale(sigma, y);
    const auto z = block_norms(spec, y);
    const double bound = m * delta_truncated(1.0, z, 4).value;
    CHECK(std::abs(partial_sum_eval(e, x)) <= bound * (1.0 + 1e-12));
  }
}

TEST_CASE("unit sphere samples have norm one") {
  Rng rng(23);
  const SumSpaceSpec spec({{3.0, 2}, {1.0, 3}, {kInfinity, 1}}, OuterSpace::lq(1.5));
  for (int s = 0; s < 100; ++s) {
    CHECK(norm(spec, sample_unit_sphere(rng, spec)) == doctest::Approx(1.0).epsilon(1e-12));
  }
  for (double p : {1.0, 2.0, 4.0, kInfinity}) {
    CHECK(lp_norm(sample_block_sphere(rng, p, 3), p) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("fill_norms marks sampled estimates") {
  Rng rng(24);
  const SumSpaceSpec spec({{2.0, 2}}, OuterSpace::lq(1.0));
  MHExpansion e{spec, 1.0, {}};
  const auto k = MultiIndex::from_entries({{1, 2}});
  e.terms.emplace(k, KHomPolynomial::make(k, random_khom(rng, spec, k, 3)));
  fill_norms(e, {256, 20, 1});
  CHECK(e.has_norms());
  CHECK(e.terms.begin()->second.norm_is_estimate);
}
