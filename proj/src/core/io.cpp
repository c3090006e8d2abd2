#include "io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "error.hpp"

namespace dbarlab::io {

namespace {

// Runs a decoder, turning nlohmann access errors into kParse.
template <class F>
auto decoding(const char* what, F&& body) -> decltype(body()) {
  try {
    return body();
  } catch (const Error&) {
    throw;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kParse, std::string("malformed ") + what + ": " + e.what());
  }
}

void expect_object(const Json& j, const char* what) {
  if (!j.is_object()) fail(ErrorCode::kParse, std::string(what) + " must be a JSON object");
}

void expect_array(const Json& j, const char* what) {
  if (!j.is_array()) fail(ErrorCode::kParse, std::string(what) + " must be a JSON array");
}

OrderedJson pair(Complex c) { return OrderedJson::array({c.real(), c.imag()}); }

Complex complex_from(const Json& j) {
  expect_array(j, "complex number");
  if (j.size() != 2) fail(ErrorCode::kParse, "complex number must be [re, im]");
  return {j.at(0).get<double>(), j.at(1).get<double>()};
}

std::vector<std::uint32_t> exponents_from(const Json& j, std::uint32_t n, const char* what) {
  expect_array(j, what);
  if (j.size() != n) fail(ErrorCode::kParse, std::string(what) + " must have length n");
  std::vector<std::uint32_t> out;
  for (const auto& v : j) {
    if (!v.is_number_integer() || v.get<long long>() < 0) {
      fail(ErrorCode::kParse, std::string(what) + " entries must be nonnegative integers");
    }
    out.push_back(v.get<std::uint32_t>());
  }
  return out;
}

std::uint32_t one_based(const Json& j, const char* key, std::uint32_t limit) {
  const auto v = j.at(key).get<long long>();
  if (v < 1 || v > limit) {
    fail(ErrorCode::kParse, std::string(key) + " must lie in 1.." + std::to_string(limit));
  }
  return static_cast<std::uint32_t>(v - 1);
}

}  // namespace

Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorCode::kParse, std::string("invalid JSON: ") + e.what());
  }
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// --- multiindex ------------------------------------------------------------

OrderedJson to_json(const MultiIndex& k) {
  auto out = OrderedJson::array();
  for (const auto& [pos, exp] : k.entries()) out.push_back({pos, exp});
  return out;
}

MultiIndex multiindex_from_json(const Json& j) {
  return decoding("multiindex", [&] {
    expect_array(j, "multiindex");
    std::vector<MultiIndex::Entry> entries;
    for (const auto& e : j) {
      expect_array(e, "multiindex entry");
      if (e.size() != 2) fail(ErrorCode::kParse, "multiindex entry must be [position, exponent]");
      const auto pos = e.at(0).get<long long>();
      const auto exp = e.at(1).get<long long>();
      if (pos < 1 || exp < 0) fail(ErrorCode::kParse, "multiindex positions are >= 1, exponents >= 0");
      entries.emplace_back(static_cast<std::uint32_t>(pos), static_cast<std::uint32_t>(exp));
    }
    try {
      return MultiIndex::from_entries(std::move(entries));
    } catch (const Error& e) {
      fail(ErrorCode::kParse, e.what());
    }
  });
}

// --- sum space -------------------------------------------------------------

OrderedJson to_json(const SumSpaceSpec& s) {
  OrderedJson out;
  auto blocks = OrderedJson::array();
  for (const auto& b : s.blocks()) {
    OrderedJson jb;
    if (std::isinf(b.p)) {
      jb["p"] = "inf";
    } else {
      jb["p"] = b.p;
    }
    jb["dim"] = b.dim;
    blocks.push_back(jb);
  }
  out["blocks"] = blocks;
  if (s.outer().kind == OuterSpace::Kind::kC0) {
    out["outer"] = "c0";
  } else {
    out["outer"] = {{"type", "lq"}, {"q", s.outer().q}};
  }
  return out;
}

SumSpaceSpec space_from_json(const Json& j) {
  return decoding("space", [&] {
    expect_object(j, "space");
    std::vector<Block> blocks;
    for (const auto& jb : j.at("blocks")) {
      Block b;
      const auto& p = jb.at("p");
      if (p.is_string()) {
        const auto s = p.get<std::string>();
        if (s != "inf" && s != "sup") fail(ErrorCode::kParse, "block p must be a number or \"inf\"");
        b.p = kInfinity;
      } else {
        b.p = p.get<double>();
      }
      b.dim = jb.at("dim").get<std::uint32_t>();
      blocks.push_back(b);
    }
    OuterSpace outer = OuterSpace::lq(1.0);
    if (j.contains("outer")) {
      const auto& o = j.at("outer");
      if (o.is_string()) {
        if (o.get<std::string>() != "c0") fail(ErrorCode::kParse, "outer must be \"c0\" or an lq object");
        outer = OuterSpace::c0();
      } else {
        if (o.at("type").get<std::string>() != "lq") fail(ErrorCode::kParse, "unknown outer type");
        outer = OuterSpace::lq(o.at("q").get<double>());
      }
    }
    return SumSpaceSpec(std::move(blocks), outer);
  });
}

OrderedJson to_json(const SumVector& x) {
  OrderedJson out = OrderedJson::object();
  for (const auto& [pos, v] : x.components()) {
    auto arr = OrderedJson::array();
    for (const auto& c : v) arr.push_back(pair(c));
    out[std::to_string(pos)] = arr;
  }
  return out;
}

SumVector sumvector_from_json(const Json& j) {
  return decoding("sum vector", [&] {
    expect_object(j, "sum vector");
    SumVector::Components comps;
    for (const auto& [key, arr] : j.items()) {
      std::size_t used = 0;
      long long pos = 0;
      try {
        pos = std::stoll(key, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != key.size() || pos < 1) fail(ErrorCode::kParse, "sum vector keys are block numbers >= 1");
      std::vector<Complex> v;
      for (const auto& c : arr) v.push_back(complex_from(c));
      comps.emplace(static_cast<std::uint32_t>(pos), std::move(v));
    }
    return SumVector(std::move(comps));
  });
}

// --- sum-space polynomials and expansions ------------------------------------

OrderedJson monomials_to_json(const Polynomial& p) {
  auto out = OrderedJson::array();
  for (const auto& [m, c] : p.terms()) {
    auto ex = OrderedJson::array();
    for (const auto& v : m) ex.push_back({v.block, v.coord, v.exp});
    OrderedJson t;
    t["exponents"] = ex;
    t["re"] = c.real();
    t["im"] = c.imag();
    out.push_back(t);
  }
  return out;
}

Polynomial polynomial_from_json(const Json& monomials) {
  return decoding("monomials", [&] {
    expect_array(monomials, "monomials");
    Polynomial p;
    for (const auto& t : monomials) {
      std::vector<VarPower> powers;
      for (const auto& v : t.at("exponents")) {
        if (v.size() != 3) fail(ErrorCode::kParse, "exponent entries are [block, coord, exp]");
        const auto b = v.at(0).get<long long>();
        const auto c = v.at(1).get<long long>();
        const auto e = v.at(2).get<long long>();
        if (b < 1 || c < 1 || e < 0) fail(ErrorCode::kParse, "exponent entries need block, coord >= 1, exp >= 0");
        powers.push_back({static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(c),
                          static_cast<std::uint32_t>(e)});
      }
      const Complex coef{t.at("re").get<double>(), t.value("im", 0.0)};
      try {
        p.add(make_monomial(std::move(powers)), coef);
      } catch (const Error& e) {
        fail(ErrorCode::kParse, e.what());
      }
    }
    return p;
  });
}

SumPolynomialInput sum_polynomial_from_json(const Json& j) {
  return decoding("polynomial input", [&] {
    expect_object(j, "polynomial input");
    SumPolynomialInput in;
    in.space = space_from_json(j.at("space"));
    in.radius = j.value("R", 1.0);
    in.poly = polynomial_from_json(j.at("monomials"));
    in.poly.validate(in.space);
    return in;
  });
}

OrderedJson to_json(const MHExpansion& e) {
  OrderedJson out;
  out["space"] = to_json(e.space);
  out["R"] = e.radius;
  auto terms = OrderedJson::array();
  for (const auto& [k, term] : e.terms) {
    OrderedJson t;
    t["k"] = to_json(k);
    t["monomials"] = monomials_to_json(term.poly);
    if (term.norm) {
      t["norm"] = *term.norm;
      t["norm_estimate"] = term.norm_is_estimate;
    }
    terms.push_back(t);
  }
  out["terms"] = terms;
  return out;
}

MHExpansion expansion_from_json(const Json& j) {
  return decoding("expansion", [&] {
    expect_object(j, "expansion");
    MHExpansion e{space_from_json(j.at("space")), j.value("R", 1.0), {}};
    for (const auto& t : j.at("terms")) {
      auto k = multiindex_from_json(t.at("k"));
      auto poly = polynomial_from_json(t.at("monomials"));
      if (!poly.is_k_homogeneous(k)) fail(ErrorCode::kParse, "term monomials do not match its k");
      KHomPolynomial term{k, std::move(poly), std::nullopt, false};
      if (t.contains("norm")) {
        term.norm = t.at("norm").get<double>();
        term.norm_is_estimate = t.value("norm_estimate", false);
      }
      if (!e.terms.emplace(k, std::move(term)).second) fail(ErrorCode::kParse, "duplicate term k");
    }
    try {
      e.validate();
    } catch (const Error& err) {
      fail(ErrorCode::kParse, err.what());
    }
    return e;
  });
}

// --- (z, z̄) polynomials and forms --------------------------------------------

namespace {

OrderedJson poly_term(const ExponentPair& e, std::uint32_t n, Complex c) {
  OrderedJson t;
  t["alpha"] = std::vector<std::uint32_t>(e.begin(), e.begin() + n);
  t["beta"] = std::vector<std::uint32_t>(e.begin() + n, e.end());
  t["re"] = c.real();
  t["im"] = c.imag();
  return t;
}

ExponentPair exponents_of(const Json& t, std::uint32_t n) {
  auto e = exponents_from(t.at("alpha"), n, "alpha");
  auto b = exponents_from(t.at("beta"), n, "beta");
  e.insert(e.end(), b.begin(), b.end());
  return e;
}

Complex coefficient_of(const Json& t) { return {t.at("re").get<double>(), t.value("im", 0.0)}; }

std::uint32_t dimension_of(const Json& j) {
  const auto n = j.at("n").get<long long>();
  if (n < 1 || n > 4096) fail(ErrorCode::kParse, "n must lie in 1..4096");
  return static_cast<std::uint32_t>(n);
}

}  // namespace

OrderedJson to_json(const PolyFunction& u) {
  OrderedJson out;
  out["n"] = u.n();
  auto terms = OrderedJson::array();
  for (const auto& [e, c] : u.terms()) terms.push_back(poly_term(e, u.n(), c));
  out["terms"] = terms;
  return out;
}

PolyFunction polyfunction_from_json(const Json& j) {
  return decoding("polynomial function", [&] {
    expect_object(j, "polynomial function");
    const auto n = dimension_of(j);
    PolyFunction u(n);
    for (const auto& t : j.at("terms")) u.add(exponents_of(t, n), coefficient_of(t));
    return u;
  });
}

OrderedJson to_json(const PolyForm01& f) {
  OrderedJson out;
  out["n"] = f.n();
  auto terms = OrderedJson::array();
  for (std::uint32_t j = 0; j < f.n(); ++j) {
    for (const auto& [e, c] : f.components[j].terms()) {
      OrderedJson t;
      t["j"] = j + 1;
      t.update(poly_term(e, f.n(), c));
      terms.push_back(t);
    }
  }
  out["terms"] = terms;
  return out;
}

PolyForm01 polyform_from_json(const Json& j) {
  return decoding("form", [&] {
    expect_object(j, "form");
    const auto n = dimension_of(j);
    PolyForm01 f(n);
    for (const auto& t : j.at("terms")) {
      f.components[one_based(t, "j", n)].add(exponents_of(t, n), coefficient_of(t));
    }
    return f;
  });
}

OrderedJson to_json(const GForm01<Complex>& f) {
  OrderedJson out;
  out["n"] = f.N;
  out["kind"] = f.group.kind == LieGroupModel::Kind::kAdditive ? "scalar" : "matrix";
  out["m"] = f.group.m;
  auto terms = OrderedJson::array();
  for (std::uint32_t j = 0; j < f.N; ++j) {
    for (std::uint32_t r = 0; r < f.group.m; ++r) {
      for (std::uint32_t c = 0; c < f.group.m; ++c) {
        for (const auto& [e, v] : f.entry(j, r, c).terms()) {
          OrderedJson t;
          t["j"] = j + 1;
          t["row"] = r + 1;
          t["col"] = c + 1;
          t.update(poly_term(e, f.N, v));
          terms.push_back(t);
        }
      }
    }
  }
  out["terms"] = terms;
  return out;
}

GForm01<Complex> gform_from_json(const Json& j) {
  return decoding("group-valued form", [&] {
    expect_object(j, "group-valued form");
    const auto N = dimension_of(j);
    const auto kind = j.value("kind", std::string("scalar"));
    LieGroupModel g;
    if (kind == "scalar") {
      g = LieGroupModel::additive();
    } else if (kind == "matrix") {
      const auto m = j.at("m").get<long long>();
      if (m < 1 || m > 64) fail(ErrorCode::kParse, "m must lie in 1..64");
      g = LieGroupModel::gl(static_cast<std::uint32_t>(m));
    } else {
      fail(ErrorCode::kParse, "kind must be \"scalar\" or \"matrix\"");
    }
    GForm01<Complex> f(N, g);
    for (const auto& t : j.at("terms")) {
      const auto jj = one_based(t, "j", N);
      const auto r = t.contains("row") ? one_based(t, "row", g.m) : 0;
      const auto c = t.contains("col") ? one_based(t, "col", g.m) : 0;
      f.entry(jj, r, c).add(exponents_of(t, N), coefficient_of(t));
    }
    return f;
  });
}

OrderedJson to_json(const Mat<Complex>& m) {
  auto out = OrderedJson::array();
  for (std::uint32_t r = 0; r < m.rows; ++r) {
    auto row = OrderedJson::array();
    for (std::uint32_t c = 0; c < m.cols; ++c) row.push_back(pair(m(r, c)));
    out.push_back(row);
  }
  return out;
}

Mat<Complex> mat_from_json(const Json& j, std::uint32_t m) {
  return decoding("matrix", [&] {
    // A bare [re, im] pair is accepted for 1×1 values.
    if (m == 1 && j.is_array() && j.size() == 2 && j.at(0).is_number()) {
      Mat<Complex> out(1, 1);
      out(0, 0) = complex_from(j);
      return out;
    }
    expect_array(j, "matrix");
    if (j.size() != m) fail(ErrorCode::kParse, "matrix must have m rows");
    Mat<Complex> out(m, m);
    for (std::uint32_t r = 0; r < m; ++r) {
      if (j.at(r).size() != m) fail(ErrorCode::kParse, "matrix rows must have m entries");
      for (std::uint32_t c = 0; c < m; ++c) out(r, c) = complex_from(j.at(r).at(c));
    }
    return out;
  });
}

std::vector<Complex> complex_vector_from_json(const Json& j) {
  return decoding("complex vector", [&] {
    expect_array(j, "complex vector");
    std::vector<Complex> v;
    for (const auto& c : j) v.push_back(complex_from(c));
    return v;
  });
}

OrderedJson to_json(const std::vector<Complex>& v) {
  auto out = OrderedJson::array();
  for (const auto& c : v) out.push_back(pair(c));
  return out;
}

OrderedJson to_json(const GTangent<Complex>& v) {
  OrderedJson out;
  out["x"] = to_json(v.x);
  out["z"] = to_json(v.z);
  out["zeta10"] = to_json(v.zeta10);
  out["zeta01"] = to_json(v.zeta01);
  out["nu10"] = to_json(v.nu10);
  out["nu01"] = to_json(v.nu01);
  return out;
}

GTangent<Complex> tangent_from_json(const Json& j, std::uint32_t N, std::uint32_t m) {
  return decoding("tangent vector", [&] {
    expect_object(j, "tangent vector");
    GTangent<Complex> v;
    v.x = complex_vector_from_json(j.at("x"));
    v.z = mat_from_json(j.at("z"), m);
    v.zeta10 = j.contains("zeta10") ? complex_vector_from_json(j.at("zeta10")) : std::vector<Complex>(N);
    v.zeta01 = j.contains("zeta01") ? complex_vector_from_json(j.at("zeta01")) : std::vector<Complex>(N);
    v.nu10 = j.contains("nu10") ? mat_from_json(j.at("nu10"), m) : Mat<Complex>(m, m);
    v.nu01 = j.contains("nu01") ? mat_from_json(j.at("nu01"), m) : Mat<Complex>(m, m);
    if (v.x.size() != N || v.zeta10.size() != N || v.zeta01.size() != N) {
      fail(ErrorCode::kParse, "tangent base vectors must have length n");
    }
    return v;
  });
}

// --- results -------------------------------------------------------------------

OrderedJson to_json(const DeltaResult& d) {
  OrderedJson out;
  out["value"] = d.value;
  out["tail_bound"] = d.tail_bound ? OrderedJson(*d.tail_bound) : OrderedJson(nullptr);
  out["degree_cut"] = d.degree_cut;
  return out;
}

OrderedJson to_json(const ApproximationCertificate& c) {
  OrderedJson out;
  auto kset = OrderedJson::array();
  for (const auto& k : c.kset) kset.push_back(to_json(k));
  out["kset"] = kset;
  out["dropped_mass_bound"] = c.dropped_mass_bound;
  out["delta_sup"] = c.delta_sup;
  out["error_bound"] = c.error_bound;
  out["satisfied"] = c.satisfied;
  out["certified"] = c.certified;
  out["theta"] = c.theta;
  out["Q"] = c.Q;
  out["delta"] = c.delta;
  out["sampled_max_error"] =
      c.sampled_max_error ? OrderedJson(*c.sampled_max_error) : OrderedJson(nullptr);
  out["samples"] = c.samples;
  return out;
}

std::string growth_csv(const std::vector<GrowthRow>& rows) {
  std::ostringstream os;
  os << "p,n,r,cm_norm,min_sup\n";
  for (const auto& r : rows) {
    os << r.p << ',' << r.n << ',' << format_double(r.r) << ',' << format_double(r.cm_norm) << ','
       << format_double(r.min_sup) << '\n';
  }
  return os.str();
}

std::string residual_csv(const std::vector<ResidualRow>& rows) {
  std::ostringstream os;
  os << "point,vector,residual_norm\n";
  for (const auto& r : rows) {
    os << r.point << ',' << r.vector << ',' << format_double(r.residual_norm) << '\n';
  }
  return os.str();
}

}  // namespace dbarlab::io
