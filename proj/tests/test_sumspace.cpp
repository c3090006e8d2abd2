#include <doctest.h>

#include <cmath>

#include "error.hpp"
#include "sumspace.hpp"

using namespace dbarlab;

namespace {

SumSpaceSpec two_blocks(OuterSpace outer) { return SumSpaceSpec({{2.0, 2}, {1.0, 1}}, outer); }

SumVector sample_x() { return SumVector({{1, {3.0, 4.0}}, {2, {1.0}}}); }

}  // namespace

TEST_CASE("norm over the outer space") {
  CHECK(norm(two_blocks(OuterSpace::lq(1.0)), sample_x()) == doctest::Approx(6.0));
  CHECK(norm(two_blocks(OuterSpace::lq(2.0)), sample_x()) == doctest::Approx(std::sqrt(26.0)));
  CHECK(norm(two_blocks(OuterSpace::c0()), sample_x()) == doctest::Approx(5.0));
}

TEST_CASE("block lp norms") {
  const std::vector<Complex> v{Complex(3, 0), Complex(0, 4)};
  CHECK(lp_norm(v, 1.0) == doctest::Approx(7.0));
  CHECK(lp_norm(v, 2.0) == doctest::Approx(5.0));
  CHECK(lp_norm(v, kInfinity) == doctest::Approx(4.0));
  CHECK(lp_norm(v, 3.0) == doctest::Approx(std::cbrt(27.0 + 64.0)));
}

TEST_CASE("dimension mismatch is rejected") {
  const SumVector bad(SumVector::Components{{1, {Complex{1.0}}}});
  CHECK_THROWS_AS(norm(two_blocks(OuterSpace::lq(1.0)), bad), Error);
  CHECK_THROWS_AS(validate(two_blocks(OuterSpace::lq(1.0)), SumVector(SumVector::Components{{3, {Complex{1.0}}}})), Error);
}

TEST_CASE("inclusion and projection") {
  const auto spec = two_blocks(OuterSpace::lq(1.0));
  const auto x = include(spec, 2, {Complex(1.0, 0.0)});
  CHECK(x.components().size() == 1);
  CHECK(x.coordinate(2, 1) == Complex(1.0, 0.0));
  CHECK(x.block(spec, 1) == std::vector<Complex>{0.0, 0.0});

  const auto y = include(spec, 1, {1.0, 2.0});
  CHECK(project(y, 2, std::nullopt).components().empty());
  CHECK(project(sample_x(), 1, 1) == SumVector({{1, {3.0, 4.0}}}));
}

TEST_CASE("tail sums") {
  const SumSpaceSpec spec({{1.0, 1}, {1.0, 1}, {1.0, 1}}, OuterSpace::lq(1.0));
  const SumVector x({{1, {1.0}}, {2, {0.5}}, {3, {0.25}}});
  CHECK(tail_sums(spec, x, 2) == doctest::Approx(0.75));
  CHECK(tail_sums(spec, x, 4) == 0.0);
  CHECK(tail_sums(spec, x, 1) == doctest::Approx(1.75));
}

TEST_CASE("scaling by a sequence") {
  const ScaleSequence zero{{}};
  const auto sx = scale(zero, sample_x());
  CHECK(norm(two_blocks(OuterSpace::lq(1.0)), sx) == 0.0);
  const ScaleSequence half{{0.5, 0.25}};
  CHECK(norm(two_blocks(OuterSpace::lq(1.0)), scale(half, sample_x())) == doctest::Approx(2.75));
  CHECK(half.in_s1());
  CHECK(half.is_nonincreasing());
  CHECK_FALSE(ScaleSequence{{1.0}}.in_s1());
}

TEST_CASE("flat layout round trip") {
  const auto spec = two_blocks(OuterSpace::lq(2.0));
  const std::vector<Complex> flat{1.0, Complex(0, 2), 3.0};
  const auto x = SumVector::from_flat(spec, flat);
  CHECK(x.flat(spec) == flat);
  CHECK(spec.coordinate_count() == 3);
  CHECK(spec.coordinate_offset(2) == 2);
}

TEST_CASE("spec validation") {
  CHECK_THROWS_AS(SumSpaceSpec({}, OuterSpace::lq(1.0)), Error);
  CHECK_THROWS_AS(SumSpaceSpec({{0.5, 1}}, OuterSpace::lq(1.0)), Error);
  CHECK_THROWS_AS(SumSpaceSpec({{2.0, 0}}, OuterSpace::lq(1.0)), Error);
}
