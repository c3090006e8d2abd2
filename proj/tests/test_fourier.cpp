#include <doctest.h>

#include <cmath>
#include <map>

#include "error.hpp"
#include "fourier.hpp"
#include "random_data.hpp"

using namespace dbarlab;

namespace {

const SumSpaceSpec kTwoScalars({{1.0, 1}, {1.0, 1}}, OuterSpace::lq(1.0));
const SumSpaceSpec kMixed({{2.0, 2}, {1.0, 1}, {kInfinity, 1}}, OuterSpace::lq(1.0));

Monomial mono(std::initializer_list<VarPower> v) { return make_monomial(std::vector<VarPower>(v)); }

// z₁² + z₁z₂ on two scalar blocks.
Polynomial sample_poly() {
  Polynomial p;
  p.add(mono({{1, 1, 2}}), Complex(1.0, 0.0));
  p.add(mono({{1, 1, 1}, {2, 1, 1}}), Complex(1.0, 0.0));
  return p;
}

Oracle oracle_of(const Polynomial& p) {
  return [p](const SumVector& x) { return p.eval(x); };
}

// Reference split: group monomials by block multidegree directly.
template <class S>
std::map<MultiIndex, SumPolynomial<S>, GradedLess> group_by_multidegree(const SumPolynomial<S>& f) {
  std::map<MultiIndex, SumPolynomial<S>, GradedLess> out;
  for (const auto& [m, c] : f.terms()) out[block_degrees(m)].add(m, c);
  return out;
}

double max_coefficient_error(const Polynomial& got, const Polynomial& want) {
  double err = 0.0;
  double scale = 0.0;
  for (const auto& [m, c] : want.terms()) {
    scale = std::max(scale, std::abs(c));
    const auto it = got.terms().find(m);
    err = std::max(err, std::abs((it == got.terms().end() ? Complex{} : it->second) - c));
  }
  for (const auto& [m, c] : got.terms()) {
    if (want.terms().count(m) == 0) err = std::max(err, std::abs(c));
  }
  return scale > 0.0 ? err / scale : err;
}

}  // namespace

TEST_CASE("component of a two-block polynomial") {
  ExtractionOptions opts;
  opts.num_blocks = 2;
  opts.degree_cap = 2;
  Polynomial z1sq;
  z1sq.add(mono({{1, 1, 2}}), Complex(1.0, 0.0));
  const auto c20 = component(kTwoScalars, oracle_of(sample_poly()), MultiIndex::from_entries({{1, 2}}), opts);
  CHECK(max_coefficient_error(c20, z1sq) < 1e-14);
  const auto c02 = component(kTwoScalars, oracle_of(sample_poly()), MultiIndex::from_entries({{2, 2}}), opts);
  CHECK(c02.is_zero());
}

TEST_CASE("index supported beyond the sampled blocks gives zero") {
  ExtractionOptions opts;
  opts.num_blocks = 2;
  opts.degree_cap = 2;
  const auto c = component(kTwoScalars, oracle_of(sample_poly()), MultiIndex::from_entries({{3, 1}}), opts);
  CHECK(c.is_zero());
}

TEST_CASE("too few nodes for the declared cap is rejected") {
  ExtractionOptions opts;
  opts.num_blocks = 2;
  opts.degree_cap = 4;
  opts.nodes = 3;
  CHECK_THROWS_AS(extract_coefficients(kTwoScalars, oracle_of(sample_poly()), opts), Error);
}

TEST_CASE("floating extraction reproduces random coefficients") {
  Rng rng(11);
  ExtractionOptions opts;
  opts.num_blocks = 3;
  opts.degree_cap = 4;
  for (int t = 0; t < 10; ++t) {
    const auto f = to_floating(random_sum_polynomial(rng, kMixed, 3, 4, 6));
    const auto got = extract_coefficients(kMixed, oracle_of(f), opts);
    CHECK(max_coefficient_error(got, f) <= 1e-12);
  }
}

TEST_CASE("exact extraction is coefficient exact") {
  Rng rng(12);
  ExtractionOptions opts;
  opts.num_blocks = 3;
  opts.degree_cap = 3;
  for (int t = 0; t < 10; ++t) {
    const auto f = random_sum_polynomial(rng, kMixed, 3, 3, 5);
    CHECK(extract_coefficients_exact(kMixed, f, opts) == f);
  }
}

TEST_CASE("exact components match direct grouping, are idempotent and mutually orthogonal") {
  Rng rng(13);
  ExtractionOptions opts;
  opts.num_blocks = 3;
  opts.degree_cap = 2;
  const auto f = random_sum_polynomial(rng, kMixed, 3, 2, 6);
  const auto groups = group_by_multidegree(f);
  for (const auto& [k, part] : groups) {
    const auto c = component_exact(kMixed, f, k, opts);
    CHECK(c == part);
    CHECK(component_exact(kMixed, c, k, opts) == c);
    for (const auto& [j, other] : groups) {
      if (!(j == k)) CHECK(component_exact(kMixed, c, j, opts).is_zero());
    }
  }
}

TEST_CASE("split by multidegree agrees with grouping") {
  Rng rng(14);
  const auto f = to_floating(random_sum_polynomial(rng, kMixed, 3, 3, 8));
  const auto split = split_by_multidegree(f);
  const auto groups = group_by_multidegree(f);
  CHECK(split.size() == groups.size());
  for (const auto& [k, part] : groups) CHECK(split.at(k) == part);
}

TEST_CASE("block circle average recovers a component value") {
  const auto f = sample_poly();
  const SumVector x({{1, {Complex(0.3, 0.1)}}, {2, {Complex(-0.2, 0.4)}}});
  const auto k = MultiIndex::from_entries({{1, 1}, {2, 1}});
  const auto value = block_circle_component_value(oracle_of(f), k, x, 2, 5);
  CHECK(std::abs(value - x.coordinate(1, 1) * x.coordinate(2, 1)) < 1e-14);
}

TEST_CASE("cyclotomic polynomials") {
  CHECK(cyclotomic_polynomial(1) == std::vector<BigInt>{-1, 1});
  CHECK(cyclotomic_polynomial(4) == std::vector<BigInt>{1, 0, 1});
  CHECK(cyclotomic_polynomial(6) == std::vector<BigInt>{1, -1, 1});
  CHECK(cyclotomic_polynomial(7) == std::vector<BigInt>{1, 1, 1, 1, 1, 1, 1});
}
