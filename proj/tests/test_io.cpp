#include <doctest.h>

#include <cmath>

#include "io.hpp"
#include "random_data.hpp"

using namespace dbarlab;

namespace {

template <class T, class From>
T round_trip(const T& value, From from) {
  return from(io::parse(io::to_json(value).dump()));
}

ErrorCode parse_error_code(const std::string& text, const std::function<void(const io::Json&)>& read) {
  try {
    read(io::parse(text));
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kInternal;
}

}  // namespace

TEST_CASE("syntax errors map to parse errors") {
  CHECK(parse_error_code("{\"n\": ", [](const io::Json&) {}) == ErrorCode::kParse);
  CHECK(parse_error_code("{\"terms\": []}", [](const io::Json& j) { io::polyfunction_from_json(j); }) ==
        ErrorCode::kParse);
  CHECK(parse_error_code(R"({"n": 1, "terms": [{"alpha": [0, 1], "beta": [0], "re": 1}]})",
                         [](const io::Json& j) { io::polyfunction_from_json(j); }) == ErrorCode::kParse);
  CHECK(parse_error_code(R"({"n": 2, "terms": [{"j": 3, "alpha": [0, 0], "beta": [0, 0], "re": 1}]})",
                         [](const io::Json& j) { io::polyform_from_json(j); }) == ErrorCode::kParse);
  CHECK(parse_error_code(R"([[0, 1]])", [](const io::Json& j) { io::multiindex_from_json(j); }) ==
        ErrorCode::kParse);
}

TEST_CASE("multiindex and space round trips") {
  const auto k = MultiIndex::from_entries({{1, 2}, {4, 1}});
  CHECK(round_trip(k, io::multiindex_from_json) == k);
  CHECK(io::to_json(k).dump() == "[[1,2],[4,1]]");

  const SumSpaceSpec s({{2.0, 2}, {kInfinity, 1}, {1.5, 3}}, OuterSpace::lq(1.0));
  CHECK(round_trip(s, io::space_from_json) == s);
  const SumSpaceSpec c({{1.0, 1}}, OuterSpace::c0());
  CHECK(round_trip(c, io::space_from_json) == c);
  CHECK(io::space_from_json(io::parse(R"({"blocks": [{"p": "inf", "dim": 2}]})")) ==
        SumSpaceSpec({{kInfinity, 2}}, OuterSpace::lq(1.0)));
}

TEST_CASE("sum vector round trip") {
  const SumVector x({{1, {{0.5, -0.25}}}, {3, {{0.1, 0.0}, {0.0, 0.2}}}});
  CHECK(round_trip(x, io::sumvector_from_json) == x);
}

TEST_CASE("polynomials on the sum space") {
  Polynomial p;
  p.add(make_monomial({{1, 1, 2}, {2, 1, 1}}), {1.5, -0.5});
  p.add(make_monomial({{3, 2, 1}}), {0.1, 0.0});
  const auto back = io::polynomial_from_json(io::parse(io::monomials_to_json(p).dump()));
  CHECK(back == p);
  const auto in = io::sum_polynomial_from_json(io::parse(R"({
    "space": {"blocks": [{"p": 1, "dim": 1}]}, "R": 2,
    "monomials": [{"exponents": [[1, 1, 3]], "re": 0.5}]})"));
  CHECK(in.radius == 2.0);
  CHECK(in.poly.terms().size() == 1);
}

TEST_CASE("expansion round trip keeps norms and flags") {
  auto e = geometric_expansion(4);
  e.terms.begin()->second.norm_is_estimate = true;
  const auto back = io::expansion_from_json(io::parse(io::to_json(e).dump()));
  CHECK(back.space == e.space);
  CHECK(back.radius == e.radius);
  REQUIRE(back.terms.size() == e.terms.size());
  auto it = back.terms.begin();
  for (const auto& [k, t] : e.terms) {
    CHECK(it->first == k);
    CHECK(it->second.poly == t.poly);
    CHECK(it->second.norm == t.norm);
    CHECK(it->second.norm_is_estimate == t.norm_is_estimate);
    ++it;
  }
}

TEST_CASE("functions, forms and numbers survive exactly") {
  Rng rng(1);
  const auto u = to_floating(random_exact_poly(rng, 3, 4, 6)).scaled({1.0 / 3.0, std::sqrt(2.0)});
  CHECK(round_trip(u, io::polyfunction_from_json) == u);
  const auto f = to_floating(dbar(random_exact_poly(rng, 2, 3, 5))).scaled({M_PI, -1e-300});
  CHECK(round_trip(f, io::polyform_from_json) == f);
  CHECK(io::format_double(0.1) == "0.10000000000000001");
  CHECK(std::stod(io::format_double(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("form JSON uses 1-based components") {
  const auto f = io::polyform_from_json(
      io::parse(R"({"n": 1, "terms": [{"j": 1, "alpha": [0], "beta": [1], "re": 1, "im": 0}]})"));
  CHECK(f.components[0] == PolyFunction::zbar(1, 0));
  const auto j = io::to_json(f);
  CHECK(j["terms"][0]["j"] == 1);
}

TEST_CASE("group-valued forms and tangents") {
  Rng rng(2);
  for (const auto& g : {LieGroupModel::additive(), LieGroupModel::gl(2)}) {
    const auto f = random_gform(rng, 2, g, 2);
    CHECK(round_trip(f, io::gform_from_json) == f);
    const auto v = random_tangent(rng, 2, g);
    const auto back = io::tangent_from_json(io::parse(io::to_json(v).dump()), 2, g.m);
    CHECK(back == v);
  }
  const auto scalar = io::mat_from_json(io::parse("[2, -1]"), 1);
  CHECK(scalar(0, 0) == Complex{2.0, -1.0});
  CHECK_THROWS_AS(io::mat_from_json(io::parse("[[1, 0]]"), 2), Error);
}

TEST_CASE("CSV tables") {
  const std::vector<GrowthRow> rows{{2, 1, 0.5, 1.0, 0.25}};
  CHECK(io::growth_csv(rows) == "p,n,r,cm_norm,min_sup\n2,1,0.5,1,0.25\n");
  const std::vector<ResidualRow> res{{0, 1, 0.1}};
  CHECK(io::residual_csv(res) == "point,vector,residual_norm\n0,1,0.10000000000000001\n");
}
