// Exercises the shared library through its C header only.
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>

#include <json.hpp>

#include "dbarlab.h"

using nlohmann::json;

namespace {

// Takes ownership of a library string.
json take_json(char* s) {
  REQUIRE(s != nullptr);
  const auto j = json::parse(s);
  dbl_string_free(s);
  return j;
}

std::string take_string(char* s) {
  REQUIRE(s != nullptr);
  std::string out(s);
  dbl_string_free(s);
  return out;
}

const char* kZbar = R"({"n": 1, "terms": [{"j": 1, "alpha": [0], "beta": [1], "re": 1, "im": 0}]})";

}  // namespace

TEST_CASE("version and errors") {
  CHECK(std::strlen(dbl_version()) > 0);
  dbl_polyfunc* u = nullptr;
  CHECK(dbl_polyfunc_from_json("{not json", &u) == DBL_PARSE);
  CHECK(u == nullptr);
  CHECK(std::strlen(dbl_last_error()) > 0);
  CHECK(dbl_polyfunc_from_json(R"({"n": 1, "terms": []})", nullptr) == DBL_INVALID_ARGUMENT);
  dbl_polyfunc_destroy(nullptr);
  dbl_string_free(nullptr);
}

TEST_CASE("monomial norm and delta") {
  double v = 0.0;
  REQUIRE(dbl_monomial_norm("[[1, 1], [2, 1]]", &v) == DBL_OK);
  CHECK(v == doctest::Approx(0.25).epsilon(1e-15));

  const double z[] = {0.5};
  char* out = nullptr;
  REQUIRE(dbl_delta(0.5, 0.0, z, 1, 30, DBL_DELTA_TRUNCATED, &out) == DBL_OK);
  const auto d = take_json(out);
  // 1 + 0.5 Σ_{d=1}^{30} 0.5^d.
  CHECK(d.at("value").get<double>() == doctest::Approx(1.0 + 0.5 * (1.0 - std::ldexp(1.0, -30))));

  // e·0.5 >= 1: no tail bound.
  REQUIRE(dbl_delta(0.5, 0.0, z, 1, 60, DBL_DELTA_CERTIFIED, &out) == DBL_OK);
  CHECK(take_json(out).at("tail_bound").is_null());
  const double small[] = {0.1};
  REQUIRE(dbl_delta(0.5, 0.0, small, 1, 60, DBL_DELTA_CERTIFIED, &out) == DBL_OK);
  CHECK(take_json(out).at("tail_bound").get<double>() < 1e-20);
  const double outside[] = {1.5};
  CHECK(dbl_delta(0.5, 0.0, outside, 1, 10, DBL_DELTA_TRUNCATED, &out) == DBL_INVALID_ARGUMENT);
  double bound = 0.0;
  REQUIRE(dbl_delta_sup_bound(0.5, 0.25, &bound) == DBL_OK);
  CHECK(dbl_delta_sup_bound(2.0, 0.25, &bound) == DBL_INVALID_ARGUMENT);
  CHECK(bound > 1.0);
}

TEST_CASE("dbar, closedness and the homotopy") {
  dbl_polyform* f = nullptr;
  REQUIRE(dbl_polyform_from_json(kZbar, &f) == DBL_OK);
  int closed = 0;
  char* report = nullptr;
  REQUIRE(dbl_is_closed(f, 1, &closed, &report) == DBL_OK);
  CHECK(closed == 1);
  CHECK(take_json(report).at("closed") == true);

  dbl_polyfunc* u = nullptr;
  REQUIRE(dbl_homotopy_solve(f, 1, &u) == DBL_OK);
  char* text = nullptr;
  REQUIRE(dbl_polyfunc_to_json(u, &text) == DBL_OK);
  const auto uj = take_json(text);
  REQUIRE(uj.at("terms").size() == 1);
  CHECK(uj["terms"][0]["beta"] == json::array({2}));
  CHECK(uj["terms"][0]["re"].get<double>() == 0.5);

  dbl_polyform* back = nullptr;
  REQUIRE(dbl_dbar(u, &back) == DBL_OK);
  char* a = nullptr;
  char* b = nullptr;
  REQUIRE(dbl_polyform_to_json(back, &a) == DBL_OK);
  REQUIRE(dbl_polyform_to_json(f, &b) == DBL_OK);
  CHECK(take_string(a) == take_string(b));

  dbl_polyform* open = nullptr;
  REQUIRE(dbl_polyform_from_json(
              R"({"n": 2, "terms": [{"j": 1, "alpha": [0, 0], "beta": [0, 1], "re": 1}]})", &open) == DBL_OK);
  REQUIRE(dbl_is_closed(open, 1, &closed, &report) == DBL_OK);
  CHECK(closed == 0);
  const auto rep = take_json(report);
  CHECK(rep["residuals"][0]["i"] == 1);
  CHECK(rep["residuals"][0]["j"] == 2);
  dbl_polyfunc* none = nullptr;
  CHECK(dbl_homotopy_solve(open, 0, &none) == DBL_PRECONDITION);
  CHECK(none == nullptr);

  dbl_polyform_destroy(open);
  dbl_polyform_destroy(back);
  dbl_polyfunc_destroy(u);
  dbl_polyform_destroy(f);
}

TEST_CASE("slice solve and min-sup") {
  dbl_polyform* f = nullptr;
  REQUIRE(dbl_polyform_from_json(R"({"n": 1, "terms": [{"j": 1, "alpha": [0], "beta": [0], "re": 1}]})", &f) ==
          DBL_OK);
  const double a[] = {0.0, 0.0};
  const double v[] = {1.0, 0.0};
  const double pts[] = {0.3, 0.1, 2.0, 0.0};
  char* out = nullptr;
  REQUIRE(dbl_slice_solve(f, a, v, 1.0, pts, 2, 64, &out) == DBL_OK);
  const auto s = take_json(out);
  // du/dz̄ = 1 on the disc: u = z̄.
  REQUIRE(s.at("values").size() == 1);
  CHECK(s["values"][0][0].get<double>() == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(s["values"][0][1].get<double>() == doctest::Approx(-0.1).epsilon(1e-12));
  CHECK(s["skipped"] == json::array({1}));

  dbl_context* ctx = nullptr;
  REQUIRE(dbl_context_create(3, 0, &ctx) == DBL_OK);
  dbl_polyfunc* u = nullptr;
  double sup = -1.0;
  REQUIRE(dbl_min_sup_solution(ctx, f, 1.0, 2, 128, 20, &u, &sup) == DBL_OK);
  CHECK(sup <= 1.0 + 1e-12);
  double norm = 0.0;
  REQUIRE(dbl_cm_norm_function(ctx, u, 0, 1.0, 2.0, 256, &norm) == DBL_OK);
  CHECK(norm >= 0.0);
  dbl_polyfunc_destroy(u);
  dbl_context_destroy(ctx);
  dbl_polyform_destroy(f);
}

TEST_CASE("condensation and growth") {
  dbl_context* ctx = nullptr;
  REQUIRE(dbl_context_create(0, 0, &ctx) == DBL_OK);
  char* out = nullptr;
  REQUIRE(dbl_condense(ctx, R"({"P": 3, "family": "zbar-power", "n": 1})", &out) == DBL_OK);
  const auto c = take_json(out);
  CHECK(c["weights"]["2"].get<double>() == 0.25);
  CHECK(c["weights"]["3"].get<double>() == doctest::Approx(1.0 / 27.0).epsilon(1e-15));
  CHECK(c["space"]["blocks"].size() == 2);

  const double radii[] = {0.5};
  REQUIRE(dbl_growth_table(ctx, "zero", 1, radii, 1, 2, 3, &out) == DBL_OK);
  CHECK(take_string(out) == "p,n,r,cm_norm,min_sup\n2,1,0.5,0,0\n3,1,0.5,0,0\n");
  CHECK(dbl_growth_table(ctx, "nope", 1, radii, 1, 2, 3, &out) == DBL_INVALID_ARGUMENT);
  dbl_context_destroy(ctx);
}

TEST_CASE("expansions and Runge") {
  const char* poly = R"({"space": {"blocks": [{"p": 1, "dim": 1}]}, "R": 1,
    "monomials": [{"exponents": [], "re": 1}, {"exponents": [[1, 1, 1]], "re": 0.5},
                  {"exponents": [[1, 1, 2]], "re": 0.25}]})";
  dbl_expansion* e = nullptr;
  REQUIRE(dbl_expand_polynomial(poly, 1, 4, &e) == DBL_OK);
  dbl_context* ctx = nullptr;
  REQUIRE(dbl_context_create(1, 0, &ctx) == DBL_OK);
  REQUIRE(dbl_expansion_fill_norms(ctx, e, 0) == DBL_OK);
  char* text = nullptr;
  REQUIRE(dbl_expansion_to_json(e, &text) == DBL_OK);
  const auto ej = take_json(text);
  REQUIRE(ej.at("terms").size() == 3);
  for (const auto& t : ej["terms"]) CHECK(t.contains("norm"));

  dbl_expansion* approx = nullptr;
  char* cert = nullptr;
  const auto st = dbl_runge_approximate(ctx, e, 0.2, 1e-2, &approx, &cert);
  CHECK((st == DBL_OK || st == DBL_CERTIFICATION));
  const auto cj = take_json(cert);
  CHECK(cj.at("satisfied").get<bool>() == (st == DBL_OK));
  CHECK(approx != nullptr);
  dbl_expansion_destroy(approx);
  dbl_expansion_destroy(e);
  dbl_context_destroy(ctx);
}

TEST_CASE("group-valued forms") {
  dbl_gform* f = nullptr;
  REQUIRE(dbl_gform_from_json(R"({"n": 1, "kind": "scalar", "terms": []})", &f) == DBL_OK);
  char* out = nullptr;
  REQUIRE(dbl_acs_check(f, R"({"x": [[0, 0]], "z": [0, 0], "zeta01": [[1, 0]], "nu01": [2, 0]})", 1e-12, &out) ==
          DBL_OK);
  CHECK(take_json(out).at("member") == true);
  REQUIRE(dbl_acs_decompose(f, R"({"x": [[0, 0]], "z": [0, 0], "zeta10": [[1, 0]], "zeta01": [[3, 0]]})", &out) ==
          DBL_OK);
  const auto d = take_json(out);
  CHECK(d["v1"]["zeta01"] == json::parse("[[3.0, 0.0]]"));
  CHECK(d["kernel_dim"] == 0);

  dbl_context* ctx = nullptr;
  REQUIRE(dbl_context_create(0, 0, &ctx) == DBL_OK);
  double r = 1.0;
  REQUIRE(dbl_acs_mc_check(ctx, 2, 1e-5, 5, &r) == DBL_OK);
  CHECK(r < 1e-3);
  REQUIRE(dbl_acs_residual(ctx, f, 2, 2, &out) == DBL_OK);
  CHECK(take_string(out).rfind("point,vector,residual_norm\n", 0) == 0);
  dbl_context_destroy(ctx);
  dbl_gform_destroy(f);
}

TEST_CASE("self-test through the C API") {
  char* out = nullptr;
  int passed = 0;
  REQUIRE(dbl_selftest(0, &out, &passed) == DBL_OK);
  CHECK(passed == 1);
  const auto first = take_string(out);
  REQUIRE(dbl_selftest(0, &out, &passed) == DBL_OK);
  CHECK(take_string(out) == first);
}
