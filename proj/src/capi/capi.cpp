#include "dbarlab.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <string>
#include <vector>

#include "acs.hpp"
#include "dbar.hpp"
#include "dominate.hpp"
#include "io.hpp"
#include "mhcalc.hpp"
#include "parallel.hpp"
#include "runge.hpp"
#include "selftest.hpp"

using namespace dbarlab;

struct dbl_context {
  std::uint64_t seed = 0;
};
struct dbl_expansion {
  MHExpansion value;
};
struct dbl_polyfunc {
  PolyFunction value;
};
struct dbl_polyform {
  PolyForm01 value;
};
struct dbl_gform {
  GForm01<Complex> value;
};

namespace {

thread_local std::string last_error;

dbl_status status_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return DBL_INVALID_ARGUMENT;
    case ErrorCode::kPrecondition: return DBL_PRECONDITION;
    case ErrorCode::kCertification: return DBL_CERTIFICATION;
    case ErrorCode::kParse: return DBL_PARSE;
    case ErrorCode::kInternal: return DBL_INTERNAL;
  }
  return DBL_INTERNAL;
}

template <class F>
dbl_status guarded(F&& body) {
  try {
    body();
    return DBL_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const nlohmann::json::exception& e) {
    // Wrong types or missing keys inside otherwise valid JSON.
    last_error = e.what();
    return DBL_PARSE;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return DBL_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return DBL_INTERNAL;
  } catch (...) {
    last_error = "unknown error";
    return DBL_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  require(p != nullptr, std::string(what) + " must not be null");
}

char* copy_string(const std::string& s) {
  auto* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

char* emit(const io::OrderedJson& j) { return copy_string(j.dump(2) + "\n"); }

io::Json parse_arg(const char* text, const char* what) {
  need(text, what);
  return io::parse(text);
}

std::uint64_t seed_of(const dbl_context* ctx) { return ctx == nullptr ? 0 : ctx->seed; }

std::vector<Complex> complex_pairs(const double* v, std::size_t count) {
  std::vector<Complex> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = {v[2 * i], v[2 * i + 1]};
  return out;
}

template <class S>
io::OrderedJson closed_report_json(const ClosedReport<S>& report) {
  io::OrderedJson residuals = io::OrderedJson::array();
  for (const auto& r : report.residuals) {
    residuals.push_back({{"i", r.i + 1}, {"j", r.j + 1}, {"value", io::to_json(to_floating(r.value))}});
  }
  return {{"closed", report.closed}, {"residuals", std::move(residuals)}};
}

io::OrderedJson membership_json(const MembershipResidual& m) {
  return {{"member", m.member}, {"zeta10", m.zeta10}, {"fiber", m.fiber}};
}

}  // namespace

extern "C" {

const char* dbl_version(void) { return "1.0.0"; }

const char* dbl_last_error(void) { return last_error.c_str(); }

void dbl_string_free(char* s) { std::free(s); }

dbl_status dbl_context_create(uint64_t seed, unsigned threads, dbl_context** out) {
  return guarded([&] {
    need(out, "out");
    if (threads > 0) worker_threads() = static_cast<int>(threads);
    *out = new dbl_context{seed};
  });
}

void dbl_context_destroy(dbl_context* ctx) { delete ctx; }

// ---- expansions --------------------------------------------------------------

dbl_status dbl_expansion_from_json(const char* json, dbl_expansion** out) {
  return guarded([&] {
    need(out, "out");
    *out = new dbl_expansion{io::expansion_from_json(parse_arg(json, "json"))};
  });
}

dbl_status dbl_expansion_to_json(const dbl_expansion* e, char** out) {
  return guarded([&] {
    need(e, "expansion");
    need(out, "out");
    *out = emit(io::to_json(e->value));
  });
}

void dbl_expansion_destroy(dbl_expansion* e) { delete e; }

dbl_status dbl_expand_polynomial(const char* polynomial_json, uint32_t max_block, uint32_t max_degree,
                                 dbl_expansion** out) {
  return guarded([&] {
    need(out, "out");
    const auto input = io::sum_polynomial_from_json(parse_arg(polynomial_json, "polynomial"));
    require(max_block >= 1, "max_block must be positive");
    ExtractionOptions opts;
    opts.num_blocks = std::max(1u, input.poly.max_block());
    opts.degree_cap = input.poly.max_block_degree();
    const auto& poly = input.poly;
    const auto full = expand_polynomial(input.space, input.radius,
                                        [&poly](const SumVector& x) { return poly.eval(x); }, opts);
    *out = new dbl_expansion{window(full, max_block, max_degree)};
  });
}

dbl_status dbl_expansion_fill_norms(dbl_context* ctx, dbl_expansion* e, size_t samples) {
  return guarded([&] {
    need(e, "expansion");
    NormSampler sampler;
    sampler.seed = seed_of(ctx);
    if (samples > 0) sampler.samples = samples;
    fill_norms(e->value, sampler);
  });
}

dbl_status dbl_khom_norm(dbl_context* ctx, const char* polynomial_json, size_t samples, char** out_json) {
  return guarded([&] {
    need(out_json, "out_json");
    const auto input = io::sum_polynomial_from_json(parse_arg(polynomial_json, "polynomial"));
    require(!input.poly.terms().empty(), "polynomial has no terms");
    const auto k = block_degrees(input.poly.terms().begin()->first);
    const auto phi = KHomPolynomial::make(k, input.poly);
    NormSampler sampler;
    sampler.seed = seed_of(ctx);
    if (samples > 0) sampler.samples = samples;
    const auto est = khom_norm(phi, input.space, sampler);
    *out_json = emit(io::OrderedJson{{"k", io::to_json(k)}, {"value", est.value}, {"exact", est.exact}});
  });
}

dbl_status dbl_monomial_norm(const char* multiindex_json, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = monomial_norm(io::multiindex_from_json(parse_arg(multiindex_json, "multiindex")));
  });
}

// ---- dominating function --------------------------------------------------------

dbl_status dbl_delta(double q_re, double q_im, const double* z, size_t n, uint32_t max_degree,
                     dbl_delta_mode mode, char** out_json) {
  return guarded([&] {
    need(out_json, "out_json");
    if (n > 0) need(z, "z");
    const std::vector<double> coords(z, z + n);
    const Complex q{q_re, q_im};
    DeltaResult d;
    switch (mode) {
      case DBL_DELTA_TRUNCATED: d = delta_truncated(q, coords, max_degree); break;
      case DBL_DELTA_CERTIFIED: d = delta_certified(q, coords, max_degree); break;
      case DBL_DELTA_CONVERGED: d = delta_converged(q, coords, 1e-16, max_degree); break;
      default: fail(ErrorCode::kInvalidArgument, "unknown delta mode");
    }
    *out_json = emit(io::to_json(d));
  });
}

dbl_status dbl_delta_sup_bound(double q_abs, double theta, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = delta_sup_bound(q_abs, theta);
  });
}

// ---- Runge ------------------------------------------------------------------------

dbl_status dbl_runge_approximate(dbl_context* ctx, const dbl_expansion* e, double r, double eps,
                                 dbl_expansion** approximant, char** certificate_json) {
  return guarded([&] {
    need(e, "expansion");
    need(approximant, "approximant");
    need(certificate_json, "certificate_json");
    RungeOptions opts;
    opts.seed = seed_of(ctx);
    auto result = approximate(e->value, r, eps, opts);
    *certificate_json = emit(io::to_json(result.certificate));
    *approximant = new dbl_expansion{std::move(result.approximant)};
    if (!result.certificate.satisfied) {
      fail(ErrorCode::kCertification, "error bound does not meet the requested tolerance");
    }
  });
}

// ---- polynomials and forms ---------------------------------------------------------

dbl_status dbl_polyfunc_from_json(const char* json, dbl_polyfunc** out) {
  return guarded([&] {
    need(out, "out");
    *out = new dbl_polyfunc{io::polyfunction_from_json(parse_arg(json, "json"))};
  });
}

dbl_status dbl_polyfunc_to_json(const dbl_polyfunc* u, char** out) {
  return guarded([&] {
    need(u, "function");
    need(out, "out");
    *out = emit(io::to_json(u->value));
  });
}

void dbl_polyfunc_destroy(dbl_polyfunc* u) { delete u; }

dbl_status dbl_polyform_from_json(const char* json, dbl_polyform** out) {
  return guarded([&] {
    need(out, "out");
    *out = new dbl_polyform{io::polyform_from_json(parse_arg(json, "json"))};
  });
}

dbl_status dbl_polyform_to_json(const dbl_polyform* f, char** out) {
  return guarded([&] {
    need(f, "form");
    need(out, "out");
    *out = emit(io::to_json(f->value));
  });
}

void dbl_polyform_destroy(dbl_polyform* f) { delete f; }

dbl_status dbl_dbar(const dbl_polyfunc* u, dbl_polyform** out) {
  return guarded([&] {
    need(u, "function");
    need(out, "out");
    *out = new dbl_polyform{dbar(u->value)};
  });
}

dbl_status dbl_is_closed(const dbl_polyform* f, int exact, int* closed, char** report_json) {
  return guarded([&] {
    need(f, "form");
    io::OrderedJson report;
    bool is = false;
    if (exact != 0) {
      const auto r = is_closed(to_exact(f->value));
      is = r.closed;
      report = closed_report_json(r);
    } else {
      const auto r = is_closed(f->value);
      is = closed_for_solve(f->value);
      report = closed_report_json(r);
      report["closed"] = is;
    }
    if (closed != nullptr) *closed = is ? 1 : 0;
    if (report_json != nullptr) *report_json = emit(report);
  });
}

dbl_status dbl_homotopy_solve(const dbl_polyform* f, int exact, dbl_polyfunc** out) {
  return guarded([&] {
    need(f, "form");
    need(out, "out");
    if (exact != 0) {
      *out = new dbl_polyfunc{to_floating(homotopy_solve(to_exact(f->value)))};
    } else {
      *out = new dbl_polyfunc{homotopy_solve(f->value)};
    }
  });
}

dbl_status dbl_slice_solve(const dbl_polyform* f, const double* a, const double* v, double radius,
                           const double* points, size_t count, uint32_t nodes, char** out_json) {
  return guarded([&] {
    need(f, "form");
    need(a, "a");
    need(v, "v");
    need(out_json, "out_json");
    if (count > 0) need(points, "points");
    const auto n = f->value.n();
    const auto base = complex_pairs(a, n);
    const auto dir = complex_pairs(v, n);
    const auto g = restrict_to_line(f->value, base, dir);
    const auto pts = complex_pairs(points, count);
    SliceOptions opts;
    if (nodes > 0) opts.angular = opts.radial = nodes;
    const auto sol = cauchy_pompeiu_slice_solve(g, radius, pts, opts);
    std::vector<Complex> kept;
    for (std::size_t i = 0, s = 0; i < pts.size(); ++i) {
      if (s < sol.skipped.size() && sol.skipped[s] == i) {
        ++s;
        continue;
      }
      kept.push_back(pts[i]);
    }
    io::OrderedJson skipped = io::OrderedJson::array();
    for (auto i : sol.skipped) skipped.push_back(i);
    *out_json = emit(io::OrderedJson{{"points", io::to_json(sol.points)},
                      {"values", io::to_json(sol.values)},
                      {"skipped", std::move(skipped)},
                      {"dbar_residual", slice_dbar_residual(g, radius, kept, opts)}});
  });
}

dbl_status dbl_min_sup_solution(dbl_context* ctx, const dbl_polyform* f, double r, uint32_t degree,
                                size_t grid, size_t iterations, dbl_polyfunc** out, double* sup) {
  return guarded([&] {
    need(f, "form");
    need(out, "out");
    MinSupOptions opts;
    opts.seed = seed_of(ctx);
    opts.degree = degree;
    if (grid > 0) opts.grid = grid;
    if (iterations > 0) opts.iterations = iterations;
    auto res = min_sup_solution(f->value, r, opts);
    if (sup != nullptr) *sup = res.sup;
    *out = new dbl_polyfunc{std::move(res.u)};
  });
}

dbl_status dbl_cm_norm_function(dbl_context* ctx, const dbl_polyfunc* u, uint32_t m, double radius,
                                double p, size_t samples, double* out) {
  return guarded([&] {
    need(u, "function");
    need(out, "out");
    CmOptions opts;
    opts.seed = seed_of(ctx);
    opts.p = p;
    if (samples > 0) opts.samples = samples;
    *out = cm_norm(u->value, m, radius, opts);
  });
}

dbl_status dbl_cm_norm_form(dbl_context* ctx, const dbl_polyform* f, uint32_t m, double radius, double p,
                            size_t samples, double* out) {
  return guarded([&] {
    need(f, "form");
    need(out, "out");
    CmOptions opts;
    opts.seed = seed_of(ctx);
    opts.p = p;
    if (samples > 0) opts.samples = samples;
    *out = cm_norm(f->value, m, radius, opts);
  });
}

dbl_status dbl_condense(dbl_context* ctx, const char* request_json, char** out_json) {
  return guarded([&] {
    need(out_json, "out_json");
    const auto req = parse_arg(request_json, "request");
    CondensationSpec<Complex> spec;
    spec.P = req.at("P").get<std::uint32_t>();
    require(spec.P >= 2, "P must be at least 2");
    if (req.contains("members")) {
      for (const auto& m : req.at("members")) {
        const auto p = m.at("p").get<std::uint32_t>();
        auto form = io::polyform_from_json(m.at("form"));
        const auto n = m.value("n", form.n());
        require(n == form.n(), "member n does not match its form");
        spec.family[p] = {n, m.value("radius", 1.0 / p), std::move(form)};
      }
    } else {
      const auto family = builtin_family(req.at("family").get<std::string>(), req.value("n", 1u));
      for (std::uint32_t p = 2; p <= spec.P; ++p) spec.family[p] = family(p);
    }
    CmOptions cm;
    cm.seed = seed_of(ctx);
    if (req.contains("samples")) cm.samples = req.at("samples").get<std::size_t>();
    const auto c = condense(spec, cm);
    io::OrderedJson weights, scales, norms;
    for (const auto& [p, w] : c.weights) weights[std::to_string(p)] = w.real();
    for (const auto& [p, s] : c.scale_factors) scales[std::to_string(p)] = s.real();
    for (const auto& [p, v] : c.measured_norms) norms[std::to_string(p)] = v;
    *out_json = emit(io::OrderedJson{{"space", io::to_json(c.space)},
                      {"form", io::to_json(c.form)},
                      {"weights", std::move(weights)},
                      {"scale_factors", std::move(scales)},
                      {"measured_norms", std::move(norms)}});
  });
}

dbl_status dbl_growth_table(dbl_context* ctx, const char* family, uint32_t n, const double* radii,
                            size_t radius_count, uint32_t p_min, uint32_t p_max, char** out_csv) {
  return guarded([&] {
    need(family, "family");
    need(out_csv, "out_csv");
    if (radius_count > 0) need(radii, "radii");
    MinSupOptions minsup;
    minsup.seed = seed_of(ctx);
    CmOptions cm;
    cm.seed = seed_of(ctx);
    const std::vector<double> rs(radii, radii + radius_count);
    const auto rows = growth_table(builtin_family(family, n), rs, p_min, p_max, minsup, cm);
    *out_csv = copy_string(io::growth_csv(rows));
  });
}

// ---- almost complex structure --------------------------------------------------------

dbl_status dbl_gform_from_json(const char* json, dbl_gform** out) {
  return guarded([&] {
    need(out, "out");
    *out = new dbl_gform{io::gform_from_json(parse_arg(json, "json"))};
  });
}

dbl_status dbl_gform_to_json(const dbl_gform* f, char** out) {
  return guarded([&] {
    need(f, "form");
    need(out, "out");
    *out = emit(io::to_json(f->value));
  });
}

void dbl_gform_destroy(dbl_gform* f) { delete f; }

dbl_status dbl_acs_check(const dbl_gform* f, const char* tangent_json, double tol, char** out_json) {
  return guarded([&] {
    need(f, "form");
    need(out_json, "out_json");
    const auto v = io::tangent_from_json(parse_arg(tangent_json, "tangent"), f->value.N, f->value.m());
    *out_json = emit(membership_json(is_antiholomorphic_tangent(v, f->value, tol)));
  });
}

dbl_status dbl_acs_decompose(const dbl_gform* f, const char* tangent_json, char** out_json) {
  return guarded([&] {
    need(f, "form");
    need(out_json, "out_json");
    const auto v = io::tangent_from_json(parse_arg(tangent_json, "tangent"), f->value.N, f->value.m());
    const auto [v1, v2] = decompose(v, f->value);
    const double tol = 1e-12;
    *out_json = emit(io::OrderedJson{{"v1", io::to_json(v1)},
                      {"v2", io::to_json(v2)},
                      {"v1_residual", membership_json(is_antiholomorphic_tangent(v1, f->value, tol))},
                      {"conj_v2_residual", membership_json(is_antiholomorphic_tangent(conj(v2), f->value, tol))},
                      {"kernel_dim", antiholomorphic_pair_kernel_dim(f->value, v.x, v.z)}});
  });
}

dbl_status dbl_acs_residual(dbl_context* ctx, const dbl_gform* f, size_t points, size_t vectors,
                            char** out_csv) {
  return guarded([&] {
    need(f, "form");
    need(out_csv, "out_csv");
    *out_csv = copy_string(io::residual_csv(integrability_report(f->value, points, vectors, seed_of(ctx))));
  });
}

dbl_status dbl_acs_transport(dbl_context* ctx, const dbl_gform* f, const dbl_polyfunc* u, size_t samples,
                             char** out_json) {
  return guarded([&] {
    need(f, "form");
    need(u, "function");
    need(out_json, "out_json");
    const auto g = gauge_transport(f->value, u->value);
    const double residual = gauge_transport_residual(f->value, u->value, samples, seed_of(ctx));
    *out_json = emit(io::OrderedJson{{"form", io::to_json(g)}, {"residual", residual}});
  });
}

dbl_status dbl_acs_mc_check(dbl_context* ctx, uint32_t m, double h, size_t samples, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = maurer_cartan_fd_residual(m, h, samples, seed_of(ctx));
  });
}

// ---- self test ------------------------------------------------------------------

dbl_status dbl_selftest(uint64_t seed, char** out_json, int* passed) {
  return guarded([&] {
    need(out_json, "out_json");
    const auto report = run_selftest(seed);
    if (passed != nullptr) *passed = selftest_passed(report) ? 1 : 0;
    *out_json = copy_string(report);
  });
}

}  // extern "C"
