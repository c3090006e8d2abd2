#include <doctest.h>

#include <cmath>

#include "dbar.hpp"
#include "error.hpp"
#include "random_data.hpp"

using namespace dbarlab;

namespace {

using EP = ExactPolyFunction;
using EF = ExactPolyForm01;

EP mono(std::vector<std::uint32_t> alpha, std::vector<std::uint32_t> beta, GaussianRational c = 1) {
  return EP::monomial(alpha, beta, c);
}

EF form(std::vector<EP> comps) { return EF(std::move(comps)); }

// Solution of du/dz̄ = z^a z̄^b on |z| < R given by the area integral:
// z^a z̄^{b+1}/(b+1), minus the holomorphic part R^{2(b+1)} z^{a-b-1}/(b+1)
// when a >= b+1.
Complex cp_oracle(std::uint32_t a, std::uint32_t b, double R, Complex z) {
  Complex u = std::pow(z, a) * std::pow(std::conj(z), b + 1) / double(b + 1);
  if (a >= b + 1) u -= std::pow(R, 2.0 * (b + 1)) * std::pow(z, a - b - 1) / double(b + 1);
  return u;
}

}  // namespace

TEST_CASE("dbar of small examples") {
  CHECK(dbar(mono({0}, {2})) == form({mono({0}, {1}, 2)}));
  CHECK(dbar(mono({1}, {0})).is_zero());
  CHECK(dbar(mono({1}, {1})) == form({mono({1}, {0})}));
}

TEST_CASE("closedness examples") {
  const auto sym = form({mono({0, 0}, {0, 1}), mono({0, 0}, {1, 0})});
  CHECK(is_closed(sym).closed);

  const auto lone = form({mono({0, 0}, {0, 1}), EP(2)});
  const auto rep = is_closed(lone);
  CHECK_FALSE(rep.closed);
  REQUIRE(rep.residuals.size() == 1);
  CHECK(rep.residuals[0].i == 0);
  CHECK(rep.residuals[0].j == 1);
  CHECK(rep.residuals[0].value == EP::constant(2, -1));
  CHECK_THROWS_AS(homotopy_solve(lone), Error);
}

TEST_CASE("homotopy solutions of small examples") {
  CHECK(homotopy_solve(form({mono({0}, {1})})) == mono({0}, {2}, GaussianRational(Rational(1, 2))));
  CHECK(homotopy_solve(form({mono({1}, {0})})) == mono({1}, {1}));
  const auto sym = form({mono({0, 0}, {0, 1}), mono({0, 0}, {1, 0})});
  CHECK(homotopy_solve(sym) == mono({0, 0}, {1, 1}));
}

TEST_CASE("dbar squares to zero and the homotopy inverts it") {
  Rng rng(11);
  for (int t = 0; t < 40; ++t) {
    const auto n = static_cast<std::uint32_t>(rng.uniform_int(1, 4));
    const auto u = random_exact_poly(rng, n, 5, 6);
    const auto f = dbar(u);
    CHECK(is_closed(f).closed);
    const auto v = homotopy_solve(f);
    CHECK(dbar(v) == f);
    // u - v is holomorphic.
    auto diff = u;
    diff -= v;
    CHECK(diff.is_holomorphic());
  }
}

TEST_CASE("floating closedness agrees with exact") {
  Rng rng(5);
  const auto f = dbar(random_exact_poly(rng, 3, 4, 5));
  CHECK(closed_for_solve(to_floating(f)));
  auto g = f;
  g.components[0] += mono({0, 0, 0}, {0, 1, 0});
  CHECK_FALSE(closed_for_solve(to_floating(g)));
}

TEST_CASE("restriction and lift") {
  Rng rng(7);
  const auto u = random_exact_poly(rng, 2, 3, 5);
  const auto lifted = lift_function(u, 4);
  CHECK(lifted.n() == 4);
  CHECK(restrict_function(lifted, 2) == u);
  const auto f = dbar(u);
  CHECK(restrict(cylinder_lift(f, 4), 2) == f);
  CHECK(dbar(lifted) == cylinder_lift(f, 4));
  CHECK(is_closed(cylinder_lift(f, 4)).closed);
  CHECK_THROWS_AS(restrict(f, 3), Error);
}

TEST_CASE("pullback through a block") {
  Rng rng(8);
  const auto f = dbar(random_exact_poly(rng, 2, 3, 5));
  const auto pulled = pullback_projection(f, 5, 2);
  CHECK(pulled.n() == 5);
  CHECK(is_closed(pulled).closed);
  CHECK(pulled.components[0].is_zero());
  CHECK(pulled.components[4].is_zero());
  CHECK(pullback_inclusion(pulled, 2, 2) == f);
  CHECK(pullback_inclusion(pulled, 0, 2).is_zero());
}

TEST_CASE("Cauchy-Pompeiu slice matches the area-integral solution") {
  const double R = 1.3;
  const auto pts = slice_grid(R, 6, 7);
  SliceOptions opts;
  opts.angular = 64;
  opts.radial = 64;
  for (auto [a, b] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{0, 0}, {1, 0}, {2, 1}, {0, 2}, {3, 0}, {1, 2}}) {
    std::vector<std::uint32_t> al{a}, be{b};
    const auto g = PolyFunction::monomial(al, be, {1.0, 0.0});
    const auto sol = cauchy_pompeiu_slice_solve(g, R, pts, opts);
    CHECK(sol.skipped.empty());
    double err = 0.0;
    for (std::size_t i = 0; i < sol.points.size(); ++i) {
      err = std::max(err, std::abs(sol.values[i] - cp_oracle(a, b, R, sol.points[i])));
    }
    CHECK_MESSAGE(err < 1e-10, "a=" << a << " b=" << b << " err=" << err);
  }
}

TEST_CASE("Cauchy-Pompeiu slice of zero and out-of-disc points") {
  const std::vector<Complex> pts{{0.1, 0.2}, {2.0, 0.0}, {0.0, -0.5}};
  const auto zero = cauchy_pompeiu_slice_solve(PolyFunction(1), 1.0, pts);
  CHECK(zero.points.size() == 2);
  REQUIRE(zero.skipped.size() == 1);
  CHECK(zero.skipped[0] == 1);
  for (const auto& v : zero.values) CHECK(std::abs(v) == 0.0);
}

TEST_CASE("stencil dbar") {
  const Complex z{0.3, -0.2};
  auto pure = [](Complex w) { return std::pow(std::conj(w), 5) + std::pow(w, 4); };
  CHECK(std::abs(stencil_dbar(pure, z, 1e-3) - 5.0 * std::pow(std::conj(z), 4)) < 1e-9);
  // Mixed terms: error 2|z|δ² for z²z̄².
  auto mixed = [](Complex w) { return w * w * std::conj(w) * std::conj(w); };
  const Complex expected = 2.0 * z * z * std::conj(z);
  CHECK(std::abs(stencil_dbar(mixed, z, 1e-3) - expected) < 3.0 * std::abs(z) * 1e-6);
  CHECK(std::abs(stencil_dbar(mixed, z, 1e-4) - expected) < 3.0 * std::abs(z) * 1e-8);
}

TEST_CASE("line restriction and slice residual") {
  const auto f = to_floating(dbar(mono({1, 0}, {0, 2})));  // u = z₁ z̄₂²
  const std::vector<Complex> a{{0.1, 0.0}, {0.0, 0.2}};
  const std::vector<Complex> v{{0.6, 0.0}, {0.0, 0.8}};
  const auto g = restrict_to_line(f, a, v);
  // d/dλ̄ of u(a + λv) evaluated directly.
  const Complex lam{0.2, 0.1};
  const Complex z1 = a[0] + lam * v[0], z2 = a[1] + lam * v[1];
  const Complex direct = z1 * 2.0 * std::conj(z2) * std::conj(v[1]);
  CHECK(std::abs(g.eval(std::vector<Complex>{lam}) - direct) < 1e-14);
  const auto pts = slice_grid(0.9, 5, 5);
  CHECK(slice_dbar_residual(g, 0.9, pts) < 1e-5);
}

TEST_CASE("C^m norms of simple functions") {
  CmOptions opts;
  opts.samples = 512;
  CHECK(cm_norm(PolyFunction::z(1, 0), 1, 1.0, opts) == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(cm_norm(PolyFunction::constant(1, {1.0, 0.0}), 0, 1.0, opts) == doctest::Approx(1.0));
  const std::vector<std::uint32_t> two{2}, none{0};
  CHECK(cm_norm(PolyFunction::monomial(two, none, {1.0, 0.0}), 1, 1.0, opts) ==
        doctest::Approx(3.0).epsilon(1e-9));
  CHECK(cm_norm(PolyFunction(2), 3, 1.0, opts) == 0.0);
}

TEST_CASE("min-sup of zero and of zbar dzbar") {
  MinSupOptions opts;
  opts.degree = 3;
  opts.grid = 256;
  opts.iterations = 40;
  const auto zero = min_sup_solution(PolyForm01(std::vector<PolyFunction>{PolyFunction(2), PolyFunction(2)}), 1.0, opts);
  CHECK(zero.sup == 0.0);
  const auto res = min_sup_solution(form({mono({0}, {1})}), 1.0, opts);
  CHECK(dbar(res.u) == form({mono({0}, {1})}));
  CHECK(res.sup <= 0.5 + 1e-12);
}

TEST_CASE("min-sup stays below a known primitive") {
  Rng rng(21);
  MinSupOptions opts;
  opts.degree = 3;
  opts.grid = 256;
  opts.iterations = 40;
  for (int t = 0; t < 4; ++t) {
    const auto w = random_exact_poly(rng, 2, 3, 4);
    const auto f = dbar(w);
    opts.seed = static_cast<std::uint64_t>(t);
    const auto res = min_sup_solution(f, 0.8, opts);
    CHECK(dbar(res.u) == f);
    double sup_w = 0.0;
    const auto wf = to_floating(w);
    for (const auto& x : min_sup_grid(2, 0.8, opts)) sup_w = std::max(sup_w, std::abs(wf.eval(x)));
    CHECK(res.sup <= sup_w + 1e-8);
  }
}

TEST_CASE("condensation weights and block restriction") {
  CondensationSpec<GaussianRational> spec;
  spec.P = 4;
  for (std::uint32_t p = 2; p <= 4; ++p) {
    const auto m = builtin_family("zbar-power", 2)(p);
    spec.family[p] = {m.n, m.radius, to_exact(m.form)};
  }
  CmOptions cm;
  cm.samples = 64;
  const auto c = condense(spec, cm);
  CHECK(c.space.block_count() == 3);
  CHECK(c.form.n() == 6);
  CHECK(is_closed(c.form).closed);
  CHECK(c.weights.at(2) == GaussianRational(Rational(1, 4)));
  CHECK(c.weights.at(3) == GaussianRational(Rational(1, 27)));
  CHECK(c.weights.at(4) == GaussianRational(Rational(1, 256)));
  for (std::uint32_t p = 2; p <= 4; ++p) {
    CHECK(restrict_to_block(c, p) == spec.family.at(p).form.scaled(c.weights.at(p) * c.scale_factors.at(p)));
  }
  CHECK(condensation_offset(c.space, 2) == 0);
  CHECK(condensation_offset(c.space, 4) == 4);
}

TEST_CASE("condensation rejects bad families") {
  CondensationSpec<GaussianRational> spec;
  spec.P = 3;
  spec.family[2] = {1, 0.5, form({mono({0}, {1})})};
  CHECK_THROWS_AS(condense(spec), Error);  // p = 3 missing
  spec.family[3] = {2, 0.3, form({mono({0, 0}, {0, 1}), EP(2)})};
  try {
    condense(spec);
    FAIL("expected a precondition error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kPrecondition);
  }
}

TEST_CASE("growth table") {
  const std::vector<double> radii{0.5, 1.0};
  MinSupOptions ms;
  ms.degree = 2;
  ms.grid = 128;
  ms.iterations = 20;
  CmOptions cm;
  cm.samples = 64;
  const auto zero = growth_table(builtin_family("zero", 2), radii, 2, 3, ms, cm);
  CHECK(zero.size() == 4);
  for (const auto& row : zero) {
    CHECK(row.cm_norm == 0.0);
    CHECK(row.min_sup == 0.0);
  }
  const auto rows = growth_table(builtin_family("zbar-power", 1), radii, 2, 3, ms, cm);
  REQUIRE(rows.size() == 4);
  for (const auto& row : rows) {
    CHECK(row.cm_norm > 0.0);
    CHECK(row.min_sup >= 0.0);
  }
  // Larger balls need larger solutions.
  CHECK(rows[1].min_sup >= rows[0].min_sup);
  CHECK_THROWS_AS(builtin_family("unknown", 1), Error);
}
