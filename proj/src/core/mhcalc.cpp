#include "mhcalc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <boost/math/tools/minima.hpp>

#include "error.hpp"
#include "parallel.hpp"

namespace dbarlab {

KHomPolynomial KHomPolynomial::make(MultiIndex index, Polynomial poly) {
  require(poly.is_k_homogeneous(index), "polynomial is not homogeneous of the stated multidegree");
  return KHomPolynomial{std::move(index), std::move(poly), std::nullopt, false};
}

void MHExpansion::validate() const {
  require(radius > 0.0, "expansion radius must be positive");
  for (const auto& [k, term] : terms) {
    require(term.index == k, "expansion term key does not match its index");
    require(term.poly.is_k_homogeneous(k), "expansion term is not k-homogeneous");
    term.poly.validate(space);
  }
}

bool MHExpansion::has_norms() const {
  return std::all_of(terms.begin(), terms.end(),
                     [](const auto& t) { return t.second.norm.has_value(); });
}

Complex eval(const KHomPolynomial& phi, const SumVector& x) { return phi.poly.eval(x); }

MHExpansion expand_polynomial(const SumSpaceSpec& space, double radius, const Oracle& f,
                              const ExtractionOptions& opts) {
  MHExpansion out{space, radius, {}};
  const auto coeffs = extract_coefficients(space, f, opts);
  for (auto& [k, p] : split_by_multidegree(coeffs)) {
    out.terms.emplace(k, KHomPolynomial::make(k, p));
  }
  return out;
}

MHExpansion window(const MHExpansion& e, std::uint32_t max_block, std::uint32_t max_degree) {
  MHExpansion out{e.space, e.radius, {}};
  for (const auto& [k, term] : e.terms) {
    if (k.max_position() <= max_block && total_degree(k) <= max_degree) out.terms.emplace(k, term);
  }
  return out;
}

double log_weight(const MultiIndex& k) {
  const auto d = static_cast<double>(total_degree(k));
  const double lead = d > 0.0 ? d * std::log(d) : 0.0;
  return lead - log_self_power(k);
}

double radial_factor(const MultiIndex& k, const OuterSpace& outer) {
  if (k.is_zero() || outer.kind == OuterSpace::Kind::kC0) return 1.0;
  const auto d = static_cast<double>(total_degree(k));
  double log_value = 0.0;
  for (const auto& [pos, exp] : k.entries()) {
    const double e = exp;
    log_value += e / outer.q * std::log(e / d);
  }
  return std::exp(log_value);
}

std::vector<Complex> sample_block_sphere(Rng& rng, double p, std::uint32_t dim) {
  std::vector<Complex> v(dim);
  double n = 0.0;
  while (n == 0.0) {
    for (auto& c : v) c = rng.complex_normal();
    n = lp_norm(v, p);
  }
  for (auto& c : v) c /= n;
  return v;
}

SumVector sample_unit_sphere(Rng& rng, const SumSpaceSpec& spec,
                             const std::vector<std::uint32_t>& blocks) {
  std::vector<std::uint32_t> active = blocks;
  if (active.empty()) {
    active.resize(spec.block_count());
    std::iota(active.begin(), active.end(), 1u);
  }
  std::vector<double> weights(active.size());
  double n = 0.0;
  while (n == 0.0) {
    for (auto& w : weights) w = rng.uniform();
    n = outer_norm(spec.outer(), weights);
  }
  SumVector x;
  for (std::size_t i = 0; i < active.size(); ++i) {
    const auto& b = spec.block(active[i]);
    auto v = sample_block_sphere(rng, b.p, b.dim);
    for (auto& c : v) c *= weights[i] / n;
    x.set_block(active[i], std::move(v));
  }
  return x;
}

namespace {

// Search over either the product of unit block spheres (structured mode) or
// the unit sphere of X restricted to the active blocks (plain mode).
class SphereSearch {
 public:
  SphereSearch(const SumSpaceSpec& spec, std::vector<std::uint32_t> blocks, bool product)
      : spec_(spec), blocks_(std::move(blocks)), product_(product) {
    for (auto b : blocks_) {
      offsets_.push_back(dim_);
      dim_ += spec_.block(b).dim;
    }
  }

  std::size_t dim() const { return dim_; }

  std::vector<Complex> random(Rng& rng) const {
    SumVector x = product_ ? SumVector{} : sample_unit_sphere(rng, spec_, blocks_);
    std::vector<Complex> flat(dim_);
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
      const auto& b = spec_.block(blocks_[i]);
      auto v = product_ ? sample_block_sphere(rng, b.p, b.dim) : x.block(spec_, blocks_[i]);
      std::copy(v.begin(), v.end(), flat.begin() + static_cast<std::ptrdiff_t>(offsets_[i]));
    }
    return flat;
  }

  // Normalized point (nullopt for the zero vector).
  std::optional<SumVector> point(const std::vector<Complex>& flat) const {
    SumVector x;
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
      const auto& b = spec_.block(blocks_[i]);
      std::vector<Complex> v(flat.begin() + static_cast<std::ptrdiff_t>(offsets_[i]),
                             flat.begin() + static_cast<std::ptrdiff_t>(offsets_[i] + b.dim));
      if (product_) {
        const double n = lp_norm(v, b.p);
        if (n == 0.0) return std::nullopt;
        for (auto& c : v) c /= n;
      }
      x.set_block(blocks_[i], std::move(v));
    }
    if (!product_) {
      const double n = norm(spec_, x);
      if (n == 0.0) return std::nullopt;
      SumVector::Components scaled;
      for (const auto& [pos, v] : x.components()) {
        std::vector<Complex> w(v);
        for (auto& c : w) c /= n;
        scaled.emplace(pos, std::move(w));
      }
      x = SumVector(std::move(scaled));
    }
    return x;
  }

  // Rescales a flat point onto the search sphere.
  std::vector<Complex> flatten(const SumVector& x) const {
    std::vector<Complex> flat(dim_);
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
      const auto v = x.block(spec_, blocks_[i]);
      std::copy(v.begin(), v.end(), flat.begin() + static_cast<std::ptrdiff_t>(offsets_[i]));
    }
    return flat;
  }

 private:
  const SumSpaceSpec& spec_;
  std::vector<std::uint32_t> blocks_;
  bool product_;
  std::vector<std::size_t> offsets_;
  std::size_t dim_ = 0;
};

double search_sup(const Polynomial& poly, const SphereSearch& search, const NormSampler& sampler) {
  auto value = [&](const std::vector<Complex>& flat) {
    auto x = search.point(flat);
    return x ? std::abs(poly.eval(*x)) : 0.0;
  };

  Rng rng(sampler.seed);
  const std::size_t count = std::max<std::size_t>(1, sampler.samples);
  std::vector<std::vector<Complex>> starts(count);
  for (auto& s : starts) s = search.random(rng);
  std::vector<double> values(count);
  parallel_for(count, [&](std::size_t i) { values[i] = value(starts[i]); });

  std::vector<std::size_t> order(count);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });

  const std::size_t n_starts = std::min<std::size_t>(4, count);
  std::vector<double> refined(n_starts);
  parallel_for(n_starts, [&](std::size_t s) {
    auto state = starts[order[s]];
    double best = values[order[s]];
    // Cyclic ascent over the modulus and phase of each coordinate with a
    // Brent line search. The modulus r = t/(1-t) ranges over [0, ∞) since the
    // other coordinates shrink after renormalization.
    auto try_coordinate = [&](std::size_t j, double lo, double hi, auto&& make) {
      auto f = [&](double t) {
        auto candidate = state;
        candidate[j] = make(t);
        return -value(candidate);
      };
      auto [t, neg] = boost::math::tools::brent_find_minima(f, lo, hi, std::numeric_limits<double>::digits / 2);
      // Brent never samples the ends; the lower one (modulus zero) is common.
      if (const double at_lo = f(lo); at_lo < neg) {
        t = lo;
        neg = at_lo;
      }
      if (-neg > best) {
        best = -neg;
        auto candidate = state;
        candidate[j] = make(t);
        state = search.flatten(*search.point(candidate));
      }
    };
    for (std::size_t round = 0; round < sampler.refinements; ++round) {
      const double before = best;
      for (std::size_t j = 0; j < state.size(); ++j) {
        const double phase = std::arg(state[j]);
        try_coordinate(j, 0.0, 1.0 - 1e-9, [&](double t) { return std::polar(t / (1.0 - t), phase); });
        const double r = std::abs(state[j]);
        if (r > 0.0) try_coordinate(j, phase - M_PI, phase + M_PI, [&](double t) { return std::polar(r, t); });
      }
      if (best <= before * (1.0 + 1e-15)) break;
    }
    refined[s] = best;
  });
  double best = values[order[0]];
  for (double v : refined) best = std::max(best, v);
  return best;
}

}  // namespace

NormEstimate khom_norm(const KHomPolynomial& phi, const SumSpaceSpec& spec,
                       const NormSampler& sampler, NormMethod method) {
  phi.poly.validate(spec);
  if (phi.poly.is_zero()) return {0.0, true};
  const auto& k = phi.index;
  if (k.is_zero()) return {std::abs(phi.poly.terms().begin()->second), true};

  std::vector<std::uint32_t> blocks;
  for (const auto& e : k.entries()) blocks.push_back(e.first);

  if (method == NormMethod::kAuto && phi.poly.terms().size() == 1) {
    const auto& [mono, coef] = *phi.poly.terms().begin();
    const bool one_dim = std::all_of(blocks.begin(), blocks.end(),
                                     [&](auto b) { return spec.block(b).dim == 1; });
    const bool all_l1 = spec.outer().is_l1() &&
                        std::all_of(blocks.begin(), blocks.end(),
                                    [&](auto b) { return spec.block(b).p == 1.0; });
    if (all_l1) {
      // On an ℓ₁ structure the space is ℓ₁ in the scalar coordinates:
      // [c z^e] = |c| e^e ‖e‖^{-‖e‖}.
      const auto e = coordinate_exponents(spec, mono);
      return {std::abs(coef) * std::exp(-log_weight(e)), true};
    }
    if (one_dim) return {std::abs(coef) * radial_factor(k, spec.outer()), true};
  }

  if (method == NormMethod::kAuto) {
    // φ(x) = Π ‖x_n‖^{k_n} φ(u) with u_n = x_n / ‖x_n‖, so [φ] factors into the
    // radial sup and the sup over the product of unit block spheres.
    SphereSearch search(spec, blocks, /*product=*/true);
    return {radial_factor(k, spec.outer()) * search_sup(phi.poly, search, sampler), false};
  }
  SphereSearch search(spec, blocks, /*product=*/false);
  return {search_sup(phi.poly, search, sampler), false};
}

void fill_norms(MHExpansion& e, const NormSampler& sampler) {
  for (auto& [k, term] : e.terms) {
    if (term.norm) continue;
    const auto est = khom_norm(term, e.space, sampler);
    term.norm = est.value;
    term.norm_is_estimate = !est.exact;
  }
}

double homogeneous_bound(const KHomPolynomial& phi, const SumSpaceSpec& spec, const SumVector& x) {
  require(phi.norm.has_value(), "homogeneous_bound needs [φ]");
  const auto y = block_norms(spec, x);
  double log_abs = 0.0;
  for (const auto& [pos, exp] : phi.index.entries()) {
    const double yn = pos <= y.size() ? y[pos - 1] : 0.0;
    if (yn == 0.0) return 0.0;
    log_abs += exp * std::log(yn);
  }
  return *phi.norm * std::exp(log_abs + log_weight(phi.index));
}

double sigma_power(const ScaleSequence& sigma, const MultiIndex& k) {
  double acc = 1.0;
  for (const auto& [pos, exp] : k.entries()) acc *= std::pow(sigma.at(pos), exp);
  return acc;
}

double m_sigma(const MHExpansion& e, const ScaleSequence& sigma) {
  double sup = 0.0;
  for (const auto& [k, term] : e.terms) {
    require(term.norm.has_value(), "m_sigma needs every term norm");
    const double v =
        *term.norm * sigma_power(sigma, k) * std::pow(e.radius, static_cast<double>(total_degree(k)));
    sup = std::max(sup, v);
  }
  return sup;
}

Complex partial_sum_eval(const MHExpansion& e, const SumVector& x) {
  Complex acc{};
  for (const auto& [k, term] : e.terms) acc += term.poly.eval(x);
  return acc;
}

}  // namespace dbarlab
