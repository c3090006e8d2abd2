#include <doctest.h>

#include <cmath>
#include <functional>
#include <vector>

#include "dominate.hpp"
#include "error.hpp"
#include "rng.hpp"

using namespace dbarlab;

namespace {

// Independent second implementation: explicit recursion over exponent
// vectors with ‖k‖ <= D, each term computed from its definition.
double brute_force_delta(double q_abs, const std::vector<double>& z, std::uint32_t D) {
  std::vector<std::uint32_t> k(z.size(), 0);
  double sum = 0.0;
  std::function<void(std::size_t, std::uint32_t)> rec = [&](std::size_t i, std::uint32_t left) {
    if (i == z.size()) {
      std::uint32_t d = 0;
      int support = 0;
      double log_term = 0.0;
      for (std::size_t j = 0; j < z.size(); ++j) {
        if (k[j] == 0) continue;
        d += k[j];
        ++support;
        log_term += k[j] * std::log(z[j]) - k[j] * std::log(static_cast<double>(k[j]));
      }
      if (d == 0) {
        sum += 1.0;
        return;
      }
      if (q_abs == 0.0) return;
      log_term += d * std::log(static_cast<double>(d)) + support * std::log(q_abs);
      sum += std::exp(log_term);
      return;
    }
    for (std::uint32_t e = 0; e <= left; ++e) {
      if (e > 0 && z[i] == 0.0) break;
      k[i] = e;
      rec(i + 1, left - e);
    }
    k[i] = 0;
  };
  rec(0, D);
  return sum;
}

}  // namespace

TEST_CASE("origin gives one") {
  const std::vector<double> z{0.0, 0.0, 0.0};
  for (double q : {0.0, 0.5, 3.0}) {
    const auto d = delta_certified(q, z, 10);
    CHECK(d.value == 1.0);
    REQUIRE((q > 1.0 || d.tail_bound.has_value()));
    if (d.tail_bound) CHECK(*d.tail_bound == 0.0);
  }
}

TEST_CASE("single coordinate closed form") {
  const std::vector<double> z{0.5, 0.0, 0.0};
  CHECK(delta_truncated(0.5, z, 60).value == doctest::Approx(1.5).epsilon(1e-8));
  for (double t : {0.1, 0.2, 0.3, 0.4, 0.5}) {
    const std::vector<double> w{t};
    CHECK(std::abs(delta_truncated(Complex(0.0, 0.7), w, 60).value - (1.0 + 0.7 * t / (1.0 - t))) < 1e-8);
  }
}

TEST_CASE("truncated sums match the brute-force enumerator") {
  const std::vector<std::vector<double>> points{{0.1, 0.1}, {0.05, 0.2, 0.1}, {0.3}, {0.02, 0.03, 0.04, 0.05}};
  for (const auto& z : points) {
    for (double q : {1.0, 0.4, 2.0}) {
      for (std::uint32_t D : {0u, 3u, 12u, 20u}) {
        const double ref = brute_force_delta(q, z, D);
        CHECK(delta_truncated(q, z, D).value == doctest::Approx(ref).epsilon(1e-13));
      }
    }
  }
}

TEST_CASE("certified tail bounds") {
  const std::vector<double> z{0.25};
  const auto d = delta_certified(1.0, z, 40);
  REQUIRE(d.tail_bound.has_value());
  const double e4 = std::exp(1.0) / 4.0;
  CHECK(*d.tail_bound == doctest::Approx(std::pow(e4, 41) / (1.0 - e4)));
  CHECK(*d.tail_bound < 1e-6);

  const std::vector<double> w{0.3};
  const auto c = delta_certified(0.8, w, 25);
  REQUIRE(c.tail_bound.has_value());
  const double exact = 1.0 + 0.8 * 0.3 / 0.7;
  CHECK(c.value <= exact);
  CHECK(c.value + *c.tail_bound >= exact);
}

TEST_CASE("certified results bracket long brute-force sums") {
  const std::vector<std::vector<double>> points{{0.1, 0.1}, {0.05, 0.1, 0.12}, {0.3}};
  for (const auto& z : points) {
    const auto c = delta_certified(1.0, z, 8);
    REQUIRE(c.tail_bound.has_value());
    const double long_sum = brute_force_delta(1.0, z, 40);
    CHECK(c.value <= long_sum * (1.0 + 1e-14));
    CHECK(c.value + *c.tail_bound >= long_sum * (1.0 - 1e-14));
  }
}

TEST_CASE("no certificate past 1/e") {
  const std::vector<double> z{0.2, 0.2};
  CHECK_FALSE(delta_certified(1.0, z, 20).tail_bound.has_value());
  const std::vector<double> bad{0.6, 0.5};
  CHECK_THROWS_AS(delta_truncated(1.0, bad, 5), Error);
  const std::vector<double> negative{-0.1};
  CHECK_THROWS_AS(delta_truncated(1.0, negative, 5), Error);
}

TEST_CASE("sup bound over the theta ball") {
  CHECK(delta_sup_bound(0.5, 0.0) == 1.0);
  const double e4 = std::exp(1.0) / 4.0;
  CHECK(delta_sup_bound(0.1, 0.25) == doctest::Approx(1.0 + 0.1 * e4 / (1.0 - e4)));
  CHECK(delta_sup_bound(0.1, 0.25) == doctest::Approx(1.2121).epsilon(1e-4));
  CHECK_THROWS_AS(delta_sup_bound(0.5, 0.4), Error);

  // The bound dominates truncated sums at sampled points of the ball.
  Rng rng(31);
  for (int s = 0; s < 200; ++s) {
    std::vector<double> w(3);
    double total = 0.0;
    for (auto& x : w) total += (x = rng.uniform());
    const double radius = 0.25 * rng.uniform();
    for (auto& x : w) x *= radius / total;
    CHECK(delta_truncated(0.1, w, 30).value <= delta_sup_bound(0.1, 0.25));
  }
}

TEST_CASE("converged sums and sampled sup") {
  const std::vector<double> z{0.5};
  const auto d = delta_converged(0.5, z);
  CHECK(d.value == doctest::Approx(1.5).epsilon(1e-14));
  const double sampled = delta_sampled_sup(0.5, 0.3, 2, 256, 1);
  const std::vector<double> vertex{0.3, 0.0};
  CHECK(sampled >= delta_converged(0.5, vertex).value * (1.0 - 1e-12));
}

TEST_CASE("monomial norms") {
  CHECK(monomial_norm(MultiIndex::from_entries({{1, 1}, {2, 1}})) == doctest::Approx(0.25));
  CHECK(monomial_norm(MultiIndex::from_entries({{1, 7}})) == doctest::Approx(1.0));
  CHECK(monomial_norm(MultiIndex::from_entries({{1, 1}, {2, 1}, {3, 1}})) == doctest::Approx(1.0 / 27.0));
  CHECK(monomial_norm(MultiIndex{}) == 1.0);
}
