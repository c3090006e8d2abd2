#include "runge.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dominate.hpp"
#include "error.hpp"
#include "parallel.hpp"

namespace dbarlab {

void RungeParams::validate() const {
  require(R > 0.0 && r > 0.0, "radii must be positive");
  require(theta > 0.0 && theta < 1.0, "θ must lie in (0, 1)");
  require(r < theta * theta * R, "need r < θ²R");
  require(Q >= 1.0, "need Q >= 1");
  require(delta >= 0.0, "need δ >= 0");
}

double kept_weight(const KHomPolynomial& term, const RungeParams& params) {
  require(term.norm.has_value(), "term norm missing");
  const auto d = static_cast<double>(total_degree(term.index));
  const auto s = static_cast<double>(support_size(term.index));
  return *term.norm * std::pow(params.theta * params.R, d) * std::pow(params.Q, s);
}

std::vector<MultiIndex> select_kset(const MHExpansion& e, const RungeParams& params) {
  std::vector<MultiIndex> out;
  for (const auto& [k, term] : e.terms) {
    if (kept_weight(term, params) >= params.delta) out.push_back(k);
  }
  return out;
}

MHExpansion build_approximant(const MHExpansion& e, const std::vector<MultiIndex>& kset) {
  MHExpansion g{e.space, e.radius, {}};
  for (const auto& k : kset) {
    auto it = e.terms.find(k);
    require(it != e.terms.end(), "𝒦 contains an index that is not a stored term");
    g.terms.emplace(k, it->second);
  }
  return g;
}

SumVector sample_ball(Rng& rng, const SumSpaceSpec& spec, std::uint32_t max_block, double radius) {
  std::vector<std::uint32_t> blocks(max_block);
  for (std::uint32_t i = 0; i < max_block; ++i) blocks[i] = i + 1;
  auto x = sample_unit_sphere(rng, spec, blocks);
  const auto real_dim = 2.0 * static_cast<double>(spec.coordinate_count(max_block));
  const double t = radius * std::pow(rng.uniform(), 1.0 / real_dim);
  SumVector::Components scaled;
  for (const auto& [pos, v] : x.components()) {
    std::vector<Complex> w(v);
    for (auto& c : w) c *= t;
    scaled.emplace(pos, std::move(w));
  }
  return SumVector(std::move(scaled));
}

namespace {

std::uint32_t block_span(const MHExpansion& e) {
  std::uint32_t m = 1;
  for (const auto& [k, term] : e.terms) m = std::max(m, k.max_position());
  return std::min<std::uint32_t>(m, static_cast<std::uint32_t>(e.space.block_count()));
}

struct DeltaSup {
  double value;
  bool certified;
};

DeltaSup delta_sup(double theta, double Q, std::uint32_t dims, const RungeOptions& opts) {
  if (std::numbers::e * theta < 1.0 && Q >= 1.0) return {delta_sup_bound(1.0 / Q, theta), true};
  if (!opts.allow_sampled_fallback) {
    fail(ErrorCode::kCertification, "eθ >= 1 and the sampled Δ fallback is disabled");
  }
  return {delta_sampled_sup(1.0 / Q, theta, dims, opts.delta_samples, opts.seed), false};
}

}  // namespace

ApproximationCertificate certify_error(const MHExpansion& e, const RungeParams& params,
                                       const RungeOptions& opts) {
  params.validate();
  require(e.space.outer().is_l1(), "the approximation estimate needs an ℓ₁ outer space");
  require(e.has_norms(), "certification needs every term norm");

  ApproximationCertificate cert;
  cert.theta = params.theta;
  cert.Q = params.Q;
  cert.delta = params.delta;
  cert.kset = select_kset(e, params);

  std::vector<const KHomPolynomial*> dropped;
  {
    std::size_t i = 0;
    for (const auto& [k, term] : e.terms) {
      if (i < cert.kset.size() && cert.kset[i] == k) {
        ++i;
      } else {
        dropped.push_back(&term);
      }
    }
  }
  for (const auto* term : dropped) {
    cert.dropped_mass_bound +=
        *term->norm * std::pow(params.r, static_cast<double>(total_degree(term->index)));
  }

  const auto dims = block_span(e);
  const auto sup = delta_sup(params.theta, params.Q, dims, opts);
  cert.delta_sup = sup.value;
  cert.certified = sup.certified;
  cert.error_bound = params.delta * cert.delta_sup;
  cert.satisfied = cert.error_bound < params.eps;

  if (opts.check_samples > 0) {
    Rng rng(opts.seed ^ 0x5EEDu);
    std::vector<SumVector> points(opts.check_samples);
    for (auto& x : points) x = sample_ball(rng, e.space, dims, params.r);
    std::vector<double> errors(points.size());
    parallel_for(points.size(), [&](std::size_t i) {
      Complex diff{};
      for (const auto* term : dropped) diff += term->poly.eval(points[i]);
      errors[i] = std::abs(diff);
    });
    cert.sampled_max_error = *std::max_element(errors.begin(), errors.end());
    cert.samples = points.size();
  }
  return cert;
}

RungeResult approximate(const MHExpansion& e, double r, double eps, const RungeOptions& opts) {
  const double R = e.radius;
  require(r > 0.0 && r < R, "need 0 < r < R");
  require(eps > 0.0, "ε must be positive");
  require(e.space.outer().is_l1(), "the approximation estimate needs an ℓ₁ outer space");

  const double root = std::sqrt(r / R);
  double theta = root / 0.99;
  if (theta >= 1.0) theta = 0.5 * (root + 1.0);

  const auto dims = block_span(e);
  double Q = 1.0;
  auto sup = delta_sup(theta, Q, dims, opts);
  while (sup.value > 2.0) {
    Q *= 2.0;
    if (Q > 0x1p40) fail(ErrorCode::kCertification, "no Q found with Δ sup <= 2");
    sup = delta_sup(theta, Q, dims, opts);
  }

  RungeParams params{R, r, theta, Q, eps / (2.0 * sup.value), eps};
  auto cert = certify_error(e, params, opts);
  auto g = build_approximant(e, cert.kset);
  return {std::move(g), std::move(cert)};
}

}  // namespace dbarlab
