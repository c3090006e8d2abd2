#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "error.hpp"
#include "multiindex.hpp"

using namespace dbarlab;

namespace {

MultiIndex dense(std::initializer_list<std::uint32_t> v) {
  const std::vector<std::uint32_t> d(v);
  return MultiIndex::from_dense(d);
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Brute force over the box [0, d]^b.
std::set<std::vector<std::uint32_t>> box_enumeration(std::uint32_t b, std::uint32_t d) {
  std::set<std::vector<std::uint32_t>> out;
  std::vector<std::uint32_t> v(b, 0);
  while (true) {
    std::uint32_t s = 0;
    for (auto x : v) s += x;
    if (s <= d) out.insert(v);
    std::uint32_t i = 0;
    while (i < b && ++v[i] > d) v[i++] = 0;
    if (i == b) break;
  }
  return out;
}

}  // namespace

TEST_CASE("degree and support") {
  CHECK(total_degree(dense({2, 0, 3})) == 5);
  CHECK(total_degree(MultiIndex{}) == 0);
  CHECK(total_degree(dense({1, 1})) == 2);
  CHECK(support_size(dense({2, 0, 3})) == 2);
  CHECK(support_size(MultiIndex{}) == 0);
  CHECK(support_size(dense({1, 1, 1})) == 3);
}

TEST_CASE("sparse storage") {
  const auto k = dense({2, 0, 3});
  REQUIRE(k.entries().size() == 2);
  CHECK(k.at(1) == 2);
  CHECK(k.at(2) == 0);
  CHECK(k.at(3) == 3);
  CHECK(k.max_position() == 3);
  CHECK(k.dense(4) == std::vector<std::uint32_t>{2, 0, 3, 0});
  CHECK(MultiIndex::from_entries({{3, 3}, {1, 2}}) == k);
  CHECK(MultiIndex::from_entries({{2, 0}}).is_zero());
  CHECK_THROWS_AS(MultiIndex::from_entries({{1, 1}, {1, 2}}), Error);
  CHECK_THROWS_AS(MultiIndex::from_entries({{0, 1}}), Error);
}

TEST_CASE("self power") {
  CHECK(*self_power(dense({2, 3})).exact == 108);
  CHECK(*self_power(MultiIndex{}).exact == 1);
  CHECK(*self_power(dense({4})).exact == 256);
  CHECK(log_self_power(dense({2, 3})) == doctest::Approx(std::log(108.0)));
}

TEST_CASE("self power beyond the cap keeps the logarithm") {
  const auto k = MultiIndex::from_entries({{1, 400}});
  const auto sp = self_power(k);
  CHECK_FALSE(sp.exact.has_value());
  CHECK(sp.log_value == doctest::Approx(400.0 * std::log(400.0)));
}

TEST_CASE("power of a coordinate vector") {
  const std::vector<Complex> a{2.0, 3.0};
  CHECK(power(a, dense({1, 2})) == Complex(18.0, 0.0));
  CHECK(power(a, MultiIndex{}) == Complex(1.0, 0.0));
  const std::vector<Complex> b{Complex(0, 1), 1.0};
  const auto v = power(b, dense({2, 5}));
  CHECK(v.real() == doctest::Approx(-1.0));
  CHECK(std::abs(v.imag()) < 1e-15);
  CHECK_THROWS_AS(power(a, dense({0, 0, 1})), Error);
}

TEST_CASE("enumeration in graded order") {
  const auto ks = enumerate(2, 2);
  REQUIRE(ks.size() == 6);
  CHECK(ks[0] == MultiIndex{});
  CHECK(ks[1] == dense({1, 0}));
  CHECK(ks[2] == dense({0, 1}));
  CHECK(ks[3] == dense({2, 0}));
  CHECK(ks[4] == dense({1, 1}));
  CHECK(ks[5] == dense({0, 2}));
  CHECK(enumerate(5, 0).size() == 1);
  CHECK(std::is_sorted(ks.begin(), ks.end(), GradedLess{}));
}

TEST_CASE("enumeration matches brute force and the binomial count") {
  for (std::uint32_t b = 1; b <= 4; ++b) {
    for (std::uint32_t d = 0; d <= 5; ++d) {
      const auto ks = enumerate(b, d);
      CHECK(ks.size() == binomial(b + d, d));
      std::set<std::vector<std::uint32_t>> got;
      for (const auto& k : ks) got.insert(k.dense(b));
      CHECK(got == box_enumeration(b, d));
    }
  }
  CHECK(enumerate(3, 2).size() == 10);
}
