// Batch experiment runner over the dbarlab C API.
//
// Exit codes: 0 success, 2 validation error, 3 certification failure,
// 1 internal error. Outputs go to --out (stdout when absent) and are written
// atomically once the command has finished.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dbarlab.h"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitValidation = 2;
constexpr int kExitCertification = 3;

struct Failure : std::runtime_error {
  int code;
  Failure(int c, const std::string& what) : std::runtime_error(what), code(c) {}
};

int exit_code(dbl_status s) {
  switch (s) {
    case DBL_OK: return kExitOk;
    case DBL_CERTIFICATION: return kExitCertification;
    case DBL_INVALID_ARGUMENT:
    case DBL_PRECONDITION:
    case DBL_PARSE: return kExitValidation;
    default: return kExitInternal;
  }
}

void check(dbl_status s) {
  if (s != DBL_OK) throw Failure(exit_code(s), dbl_last_error());
}

// Owns a string returned by the library.
struct LibString {
  char* p = nullptr;
  ~LibString() { dbl_string_free(p); }
  std::string str() const { return p == nullptr ? std::string() : std::string(p); }
};

template <class T, void (*Destroy)(T*)>
struct Handle {
  T* p = nullptr;
  Handle() = default;
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  ~Handle() { Destroy(p); }
};

using Context = Handle<dbl_context, dbl_context_destroy>;
using Expansion = Handle<dbl_expansion, dbl_expansion_destroy>;
using PolyFunc = Handle<dbl_polyfunc, dbl_polyfunc_destroy>;
using PolyForm = Handle<dbl_polyform, dbl_polyform_destroy>;
using GForm = Handle<dbl_gform, dbl_gform_destroy>;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure(kExitValidation, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json read_json(const std::string& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw Failure(kExitValidation, path + ": " + e.what());
  }
}

// Writes next to the target and renames, so readers never see a partial file.
void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  const std::filesystem::path target(path);
  const auto tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Failure(kExitValidation, "cannot write '" + path + "'");
    out << text;
    if (!out.flush()) throw Failure(kExitInternal, "write to '" + tmp + "' failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, target, ec);
  if (ec) throw Failure(kExitInternal, "cannot move output into '" + path + "': " + ec.message());
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

struct Globals {
  std::uint64_t seed = 0;
  unsigned threads = 0;
  std::string out;
};

// Pending outputs, flushed only after the command succeeded (or produced an
// uncertified result that should still be inspected).
struct Outputs {
  std::vector<std::pair<std::string, std::string>> files;
  void add(std::string path, std::string text) { files.emplace_back(std::move(path), std::move(text)); }
  void flush() const {
    for (const auto& [path, text] : files) write_output(path, text);
  }
};

// ---------------------------------------------------------------------------

struct ExpandArgs {
  std::string input;
  std::uint32_t max_block = 1;
  std::uint32_t max_degree = 8;
  bool norms = false;
};

void run_expand(const Globals& g, const ExpandArgs& a, Context& ctx, Outputs& out) {
  Expansion e;
  check(dbl_expand_polynomial(read_file(a.input).c_str(), a.max_block, a.max_degree, &e.p));
  if (a.norms) check(dbl_expansion_fill_norms(ctx.p, e.p, 0));
  LibString s;
  check(dbl_expansion_to_json(e.p, &s.p));
  out.add(g.out, s.str());
}

struct NormArgs {
  std::string input;
  std::uint32_t m = 0;
  double radius = 1.0;
  double p = 2.0;
  std::size_t samples = 0;
  std::string monomial;
};

void run_norm(const Globals& g, const NormArgs& a, Context& ctx, Outputs& out) {
  if (!a.monomial.empty()) {
    double v = 0.0;
    check(dbl_monomial_norm(a.monomial.c_str(), &v));
    out.add(g.out, dump({{"k", json::parse(a.monomial)}, {"value", v}, {"exact", true}}));
    return;
  }
  if (a.input.empty()) throw Failure(kExitValidation, "norm needs --input or --monomial");
  const auto text = read_file(a.input);
  const auto j = json::parse(text);
  if (j.contains("space")) {
    LibString s;
    check(dbl_khom_norm(ctx.p, text.c_str(), a.samples, &s.p));
    out.add(g.out, s.str());
    return;
  }
  // Polynomial function or (0,1)-form on C^n: C^m norm on the ball.
  bool is_form = false;
  for (const auto& t : j.value("terms", json::array())) is_form = is_form || t.contains("j");
  double v = 0.0;
  if (is_form) {
    PolyForm f;
    check(dbl_polyform_from_json(text.c_str(), &f.p));
    check(dbl_cm_norm_form(ctx.p, f.p, a.m, a.radius, a.p, a.samples, &v));
  } else {
    PolyFunc u;
    check(dbl_polyfunc_from_json(text.c_str(), &u.p));
    check(dbl_cm_norm_function(ctx.p, u.p, a.m, a.radius, a.p, a.samples, &v));
  }
  out.add(g.out, dump({{"kind", is_form ? "form" : "function"},
                       {"m", a.m},
                       {"radius", a.radius},
                       {"value", v}}));
}

struct DeltaArgs {
  double q = 0.0;
  double q_im = 0.0;
  std::vector<double> z;
  std::uint32_t degree = 30;
  std::string mode = "certified";
  double theta = -1.0;
};

void run_delta(const Globals& g, const DeltaArgs& a, Outputs& out) {
  if (a.theta >= 0.0) {
    double v = 0.0;
    check(dbl_delta_sup_bound(std::hypot(a.q, a.q_im), a.theta, &v));
    out.add(g.out, dump({{"theta", a.theta}, {"sup_bound", v}}));
    return;
  }
  dbl_delta_mode mode = DBL_DELTA_CERTIFIED;
  if (a.mode == "truncated") mode = DBL_DELTA_TRUNCATED;
  else if (a.mode == "converged") mode = DBL_DELTA_CONVERGED;
  LibString s;
  check(dbl_delta(a.q, a.q_im, a.z.data(), a.z.size(), a.degree, mode, &s.p));
  out.add(g.out, s.str());
}

struct RungeArgs {
  std::string input;
  double R = 0.0;
  double r = 0.0;
  double eps = 1e-2;
  std::uint32_t max_degree = 20;
  std::string cert;
};

int run_runge(const Globals& g, const RungeArgs& a, Context& ctx, Outputs& out) {
  auto j = read_json(a.input);
  Expansion e;
  if (j.contains("terms")) {
    if (a.R > 0.0) j["R"] = a.R;
    check(dbl_expansion_from_json(j.dump().c_str(), &e.p));
  } else {
    // A raw polynomial: expand it over all of its blocks first.
    if (a.R > 0.0) j["R"] = a.R;
    const auto blocks = static_cast<std::uint32_t>(j.at("space").at("blocks").size());
    check(dbl_expand_polynomial(j.dump().c_str(), blocks, a.max_degree, &e.p));
  }
  check(dbl_expansion_fill_norms(ctx.p, e.p, 0));

  Expansion approx;
  LibString cert;
  const auto status = dbl_runge_approximate(ctx.p, e.p, a.r, a.eps, &approx.p, &cert.p);
  if (status != DBL_OK && status != DBL_CERTIFICATION) check(status);
  if (status == DBL_CERTIFICATION && approx.p == nullptr) check(status);
  LibString gj;
  check(dbl_expansion_to_json(approx.p, &gj.p));
  out.add(g.out, gj.str());
  if (!a.cert.empty()) {
    out.add(a.cert, cert.str());
  } else if (!g.out.empty() && g.out != "-") {
    out.add(g.out + ".cert.json", cert.str());
  } else {
    out.add("-", cert.str());
  }
  if (status == DBL_CERTIFICATION) {
    std::cerr << "error: " << dbl_last_error() << "\n";
    return kExitCertification;
  }
  return kExitOk;
}

struct DbarArgs {
  std::string input;
  bool exact = false;
  std::string method = "homotopy";
  std::vector<double> line_a;
  std::vector<double> line_v;
  double radius = 1.0;
  std::uint32_t nodes = 256;
  std::uint32_t degree = 4;
  std::size_t grid = 1024;
  std::size_t iterations = 300;
  std::string family = "zbar-power";
  std::uint32_t n = 1;
  std::uint32_t P = 4;
  std::uint32_t p_min = 2;
  std::uint32_t p_max = 6;
  std::vector<double> radii{1.0};
};

int run_dbar_check(const Globals& g, const DbarArgs& a, Outputs& out) {
  PolyForm f;
  check(dbl_polyform_from_json(read_file(a.input).c_str(), &f.p));
  int closed = 0;
  LibString report;
  check(dbl_is_closed(f.p, a.exact ? 1 : 0, &closed, &report.p));
  out.add(g.out, report.str());
  return kExitOk;
}

void run_dbar_solve(const Globals& g, const DbarArgs& a, Outputs& out) {
  const auto text = read_file(a.input);
  PolyForm f;
  check(dbl_polyform_from_json(text.c_str(), &f.p));
  if (a.method == "homotopy") {
    PolyFunc u;
    check(dbl_homotopy_solve(f.p, a.exact ? 1 : 0, &u.p));
    LibString s;
    check(dbl_polyfunc_to_json(u.p, &s.p));
    out.add(g.out, s.str());
    return;
  }
  // Cauchy-Pompeiu on the line a + z v, evaluated on a polar grid.
  const auto n = json::parse(text).at("n").get<std::size_t>();
  auto a_pairs = a.line_a;
  auto v_pairs = a.line_v;
  if (a_pairs.empty()) a_pairs.assign(2 * n, 0.0);
  if (v_pairs.empty()) {
    v_pairs.assign(2 * n, 0.0);
    v_pairs[0] = 1.0;
  }
  if (a_pairs.size() != 2 * n || v_pairs.size() != 2 * n) {
    throw Failure(kExitValidation, "--a and --v need 2n numbers (re, im pairs)");
  }
  std::vector<double> points;
  for (int i = 1; i <= 8; ++i) {
    const double rho = a.radius * (0.9 * i / 8.0);
    for (int k = 0; k < 8; ++k) {
      const double t = 2.0 * 3.14159265358979323846 * k / 8.0;
      points.push_back(rho * std::cos(t));
      points.push_back(rho * std::sin(t));
    }
  }
  LibString s;
  check(dbl_slice_solve(f.p, a_pairs.data(), v_pairs.data(), a.radius, points.data(), points.size() / 2,
                        a.nodes, &s.p));
  out.add(g.out, s.str());
}

void run_dbar_minsup(const Globals& g, const DbarArgs& a, Context& ctx, Outputs& out) {
  PolyForm f;
  check(dbl_polyform_from_json(read_file(a.input).c_str(), &f.p));
  PolyFunc u;
  double sup = 0.0;
  check(dbl_min_sup_solution(ctx.p, f.p, a.radius, a.degree, a.grid, a.iterations, &u.p, &sup));
  LibString s;
  check(dbl_polyfunc_to_json(u.p, &s.p));
  out.add(g.out, dump({{"u", json::parse(s.str())}, {"sup", sup}, {"r", a.radius}}));
}

void run_dbar_condense(const Globals& g, const DbarArgs& a, Context& ctx, Outputs& out) {
  std::string request;
  if (!a.input.empty()) {
    request = read_file(a.input);
  } else {
    request = json{{"P", a.P}, {"family", a.family}, {"n", a.n}}.dump();
  }
  LibString s;
  check(dbl_condense(ctx.p, request.c_str(), &s.p));
  out.add(g.out, s.str());
}

void run_dbar_growth(const Globals& g, const DbarArgs& a, Context& ctx, Outputs& out) {
  LibString s;
  check(dbl_growth_table(ctx.p, a.family.c_str(), a.n, a.radii.data(), a.radii.size(), a.p_min, a.p_max,
                         &s.p));
  out.add(g.out, s.str());
}

struct AcsArgs {
  std::string form;
  std::string tangent;
  std::string u;
  double tol = 1e-12;
  std::size_t points = 16;
  std::size_t vectors = 8;
  std::size_t samples = 100;
  std::uint32_t m = 2;
  double h = 1e-5;
};

int run_acs(const std::string& which, const Globals& g, const AcsArgs& a, Context& ctx, Outputs& out) {
  if (which == "mc-check") {
    double r = 0.0;
    check(dbl_acs_mc_check(ctx.p, a.m, a.h, a.samples, &r));
    out.add(g.out, dump({{"m", a.m}, {"h", a.h}, {"samples", a.samples}, {"residual", r}}));
    return kExitOk;
  }
  GForm f;
  check(dbl_gform_from_json(read_file(a.form).c_str(), &f.p));
  LibString s;
  if (which == "check") {
    check(dbl_acs_check(f.p, read_file(a.tangent).c_str(), a.tol, &s.p));
  } else if (which == "decompose") {
    check(dbl_acs_decompose(f.p, read_file(a.tangent).c_str(), &s.p));
  } else if (which == "residual") {
    check(dbl_acs_residual(ctx.p, f.p, a.points, a.vectors, &s.p));
  } else {
    PolyFunc u;
    check(dbl_polyfunc_from_json(read_file(a.u).c_str(), &u.p));
    check(dbl_acs_transport(ctx.p, f.p, u.p, a.samples, &s.p));
  }
  out.add(g.out, s.str());
  return kExitOk;
}

int run_selftest(const Globals& g, Outputs& out) {
  LibString s;
  int passed = 0;
  check(dbl_selftest(g.seed, &s.p, &passed));
  out.add(g.out, s.str());
  return passed != 0 ? kExitOk : kExitCertification;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dbarlab: experiments with the dbar-equation on Banach spaces"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "random seed")->capture_default_str();
  app.add_option("--threads", g.threads, "worker threads (0 keeps the default)");
  app.add_option("--out", g.out, "output path (stdout when absent)");

  ExpandArgs expand;
  auto* expand_cmd = app.add_subcommand("expand", "multi-homogeneous components over an index window");
  expand_cmd->add_option("--input", expand.input, "polynomial JSON {space, R, monomials}")
      ->required()
      ->check(CLI::ExistingFile);
  expand_cmd->add_option("--max-block", expand.max_block, "largest block in the window")->check(CLI::PositiveNumber);
  expand_cmd->add_option("--max-degree", expand.max_degree, "largest total degree in the window");
  expand_cmd->add_flag("--norms", expand.norms, "also estimate every term norm");

  NormArgs norm;
  auto* norm_cmd = app.add_subcommand("norm", "homogeneity norm or C^m norm on a ball");
  norm_cmd->add_option("--input", norm.input, "k-homogeneous polynomial or function JSON")->check(CLI::ExistingFile);
  norm_cmd->add_option("--monomial", norm.monomial, "multiindex JSON for the closed-form monomial norm");
  norm_cmd->add_option("--m", norm.m, "derivative order for the C^m norm");
  norm_cmd->add_option("--radius", norm.radius, "ball radius")->check(CLI::PositiveNumber);
  norm_cmd->add_option("--p", norm.p, "l_p exponent of the ball");
  norm_cmd->add_option("--samples", norm.samples, "sphere samples for the estimate");

  DeltaArgs delta;
  auto* delta_cmd = app.add_subcommand("delta", "dominating function");
  delta_cmd->add_option("--q", delta.q, "real part of q")->required();
  delta_cmd->add_option("--q-im", delta.q_im, "imaginary part of q");
  delta_cmd->add_option("--z", delta.z, "coordinates, comma separated")->delimiter(',');
  delta_cmd->add_option("--D", delta.degree, "truncation degree");
  delta_cmd->add_option("--mode", delta.mode, "truncated sum, with tail bound, or until converged")->check(CLI::IsMember({"truncated", "certified", "converged"}));
  delta_cmd->add_option("--theta", delta.theta, "print the sup bound over the theta-ball instead");

  RungeArgs runge;
  auto* runge_cmd = app.add_subcommand("runge", "Runge approximation with an error certificate");
  runge_cmd->add_option("--input", runge.input, "expansion or polynomial JSON")
      ->required()
      ->check(CLI::ExistingFile);
  runge_cmd->add_option("--R", runge.R, "outer radius (overrides the input)");
  runge_cmd->add_option("--r", runge.r, "inner radius")->required()->check(CLI::PositiveNumber);
  runge_cmd->add_option("--eps", runge.eps, "target uniform error")->check(CLI::PositiveNumber);
  runge_cmd->add_option("--max-degree", runge.max_degree, "expansion degree for polynomial input");
  runge_cmd->add_option("--cert", runge.cert, "certificate output path");

  DbarArgs dbar_args;
  auto* dbar_cmd = app.add_subcommand("dbar", "dbar-equation tools");
  dbar_cmd->require_subcommand(1);
  auto* dbar_check = dbar_cmd->add_subcommand("check", "is the (0,1)-form closed");
  auto* dbar_solve = dbar_cmd->add_subcommand("solve", "solve du = f");
  auto* dbar_minsup = dbar_cmd->add_subcommand("minsup", "solution with small sup norm");
  auto* dbar_condense = dbar_cmd->add_subcommand("condense", "condensation of a family");
  auto* dbar_growth = dbar_cmd->add_subcommand("growth", "growth table as CSV");
  for (auto* c : {dbar_check, dbar_solve, dbar_minsup}) {
    c->add_option("--input", dbar_args.input, "(0,1)-form JSON")->required()->check(CLI::ExistingFile);
  }
  for (auto* c : {dbar_check, dbar_solve}) c->add_flag("--exact", dbar_args.exact, "Gaussian-rational arithmetic");
  dbar_solve->add_option("--method", dbar_args.method, "homotopy formula or line integral")->check(CLI::IsMember({"homotopy", "cauchy-pompeiu"}));
  dbar_solve->add_option("--a", dbar_args.line_a, "line base point, re,im pairs")->delimiter(',');
  dbar_solve->add_option("--v", dbar_args.line_v, "line direction, re,im pairs")->delimiter(',');
  dbar_solve->add_option("--radius", dbar_args.radius, "disc radius on the line")->check(CLI::PositiveNumber);
  dbar_solve->add_option("--nodes", dbar_args.nodes, "angular and radial nodes");
  dbar_minsup->add_option("--r", dbar_args.radius, "ball radius")->check(CLI::PositiveNumber);
  dbar_minsup->add_option("--degree", dbar_args.degree, "degree of holomorphic corrections");
  dbar_minsup->add_option("--grid", dbar_args.grid, "grid points per axis");
  dbar_minsup->add_option("--iterations", dbar_args.iterations, "descent iterations");
  dbar_condense->add_option("--input", dbar_args.input, "condensation request JSON")->check(CLI::ExistingFile);
  for (auto* c : {dbar_condense, dbar_growth}) {
    c->add_option("--family", dbar_args.family, "built-in family")->check(CLI::IsMember({"zbar-power", "zero"}));
    c->add_option("--n", dbar_args.n, "dimension of each member")->check(CLI::PositiveNumber);
  }
  dbar_condense->add_option("--P", dbar_args.P, "last member index; members are p = 2..P");
  dbar_growth->add_option("--p-min", dbar_args.p_min, "first member");
  dbar_growth->add_option("--p-max", dbar_args.p_max, "last member");
  dbar_growth->add_option("--radii", dbar_args.radii, "comma separated")->delimiter(',');

  AcsArgs acs;
  auto* acs_cmd = app.add_subcommand("acs", "almost complex structure on B x G");
  acs_cmd->require_subcommand(1);
  auto* acs_check = acs_cmd->add_subcommand("check", "membership of a tangent vector");
  auto* acs_decompose = acs_cmd->add_subcommand("decompose", "split V = V1 + V2");
  auto* acs_residual = acs_cmd->add_subcommand("residual", "integrability residual table");
  auto* acs_transport = acs_cmd->add_subcommand("transport", "gauge transport by u");
  auto* acs_mc = acs_cmd->add_subcommand("mc-check", "Maurer-Cartan finite-difference check");
  for (auto* c : {acs_check, acs_decompose, acs_residual, acs_transport}) {
    c->add_option("--form", acs.form, "G-valued form JSON")->required()->check(CLI::ExistingFile);
  }
  for (auto* c : {acs_check, acs_decompose}) {
    c->add_option("--tangent", acs.tangent, "tangent vector JSON")->required()->check(CLI::ExistingFile);
  }
  acs_check->add_option("--tol", acs.tol, "membership tolerance");
  acs_residual->add_option("--points", acs.points, "sample points");
  acs_residual->add_option("--vectors", acs.vectors, "tangent vectors per point");
  acs_transport->add_option("--u", acs.u, "function JSON")->required()->check(CLI::ExistingFile);
  for (auto* c : {acs_transport, acs_mc}) c->add_option("--samples", acs.samples, "sample points");
  acs_mc->add_option("--m", acs.m, "matrix size of GL(m)")->check(CLI::PositiveNumber);
  acs_mc->add_option("--step", acs.h, "finite-difference step h")->check(CLI::PositiveNumber);

  auto* selftest_cmd = app.add_subcommand("selftest", "compact invariant suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitValidation;
  }

  try {
    Context ctx;
    check(dbl_context_create(g.seed, g.threads, &ctx.p));
    Outputs out;
    int rc = kExitOk;
    if (expand_cmd->parsed()) {
      run_expand(g, expand, ctx, out);
    } else if (norm_cmd->parsed()) {
      run_norm(g, norm, ctx, out);
    } else if (delta_cmd->parsed()) {
      run_delta(g, delta, out);
    } else if (runge_cmd->parsed()) {
      rc = run_runge(g, runge, ctx, out);
    } else if (dbar_check->parsed()) {
      rc = run_dbar_check(g, dbar_args, out);
    } else if (dbar_solve->parsed()) {
      run_dbar_solve(g, dbar_args, out);
    } else if (dbar_minsup->parsed()) {
      run_dbar_minsup(g, dbar_args, ctx, out);
    } else if (dbar_condense->parsed()) {
      run_dbar_condense(g, dbar_args, ctx, out);
    } else if (dbar_growth->parsed()) {
      run_dbar_growth(g, dbar_args, ctx, out);
    } else if (acs_mc->parsed()) {
      rc = run_acs("mc-check", g, acs, ctx, out);
    } else if (acs_cmd->parsed()) {
      for (auto* c : {acs_check, acs_decompose, acs_residual, acs_transport}) {
        if (c->parsed()) rc = run_acs(c->get_name(), g, acs, ctx, out);
      }
    } else if (selftest_cmd->parsed()) {
      rc = run_selftest(g, out);
    }
    out.flush();
    return rc;
  } catch (const Failure& f) {
    std::cerr << "error: " << f.what() << "\n";
    return f.code;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInternal;
  }
}
