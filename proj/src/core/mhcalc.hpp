#pragma once

// k-homogeneous polynomials, their sup norms [φ], and finite multihomogeneous
// expansions f ~ Σ f_k on a ball B_X(R).

#include <cstdint>
#include <map>
#include <optional>

#include "fourier.hpp"
#include "rng.hpp"
#include "multiindex.hpp"
#include "sum_polynomial.hpp"
#include "sumspace.hpp"

namespace dbarlab {

struct KHomPolynomial {
  MultiIndex index;
  Polynomial poly;
  std::optional<double> norm;   // [φ] when known
  bool norm_is_estimate = false;

  /// Throws unless every monomial of `poly` has block multidegree `index`.
  static KHomPolynomial make(MultiIndex index, Polynomial poly);
};

using TermMap = std::map<MultiIndex, KHomPolynomial, GradedLess>;

struct MHExpansion {
  SumSpaceSpec space;
  double radius = 1.0;  // R
  TermMap terms;

  /// Checks term keys, homogeneity and that variables live in `space`.
  void validate() const;

  /// True when every term carries a norm.
  bool has_norms() const;
};

/// φ(x).
Complex eval(const KHomPolynomial& phi, const SumVector& x);

/// Builds the expansion of a polynomial, keeping every component up to the
/// polynomial's degree (components are extracted numerically via `opts`).
MHExpansion expand_polynomial(const SumSpaceSpec& space, double radius, const Oracle& f,
                              const ExtractionOptions& opts);

/// Restricts an expansion to an index window: supp k ⊆ {1..max_block}, ‖k‖ <= max_degree.
MHExpansion window(const MHExpansion& e, std::uint32_t max_block, std::uint32_t max_degree);

struct NormSampler {
  std::size_t samples = 4096;
  std::size_t refinements = 100;
  std::uint64_t seed = 0;
};

enum class NormMethod {
  kAuto,     // closed forms when available, else structured sampling
  kSampled,  // plain sampling of the unit sphere of X plus coordinate ascent
};

struct NormEstimate {
  double value = 0.0;
  bool exact = false;  // false: certified lower estimate (sup over feasible points)
};

/// [φ] = sup_{‖x‖ <= 1} |φ(x)|.
NormEstimate khom_norm(const KHomPolynomial& phi, const SumSpaceSpec& spec,
                       const NormSampler& sampler = {}, NormMethod method = NormMethod::kAuto);

/// sup_{‖r‖_Y <= 1, r >= 0} r^k.
double radial_factor(const MultiIndex& k, const OuterSpace& outer);

/// Fills every missing term norm with khom_norm.
void fill_norms(MHExpansion& e, const NormSampler& sampler = {});

/// [φ] |x|^k ‖k‖^‖k‖ / k^k, using φ.norm (which must be present).
double homogeneous_bound(const KHomPolynomial& phi, const SumSpaceSpec& spec, const SumVector& x);

/// ‖k‖^‖k‖ / k^k in log form.
double log_weight(const MultiIndex& k);

/// σ^k with 0^0 = 1.
double sigma_power(const ScaleSequence& sigma, const MultiIndex& k);

/// M(σ) = sup_k [f_k] σ^k R^‖k‖ over the stored terms (0 for no terms).
double m_sigma(const MHExpansion& e, const ScaleSequence& sigma);

/// Σ_k f_k(x) over stored terms in graded order.
Complex partial_sum_eval(const MHExpansion& e, const SumVector& x);

/// Random point on the unit sphere of ℓ_p(ℂ^dim).
std::vector<Complex> sample_block_sphere(Rng& rng, double p, std::uint32_t dim);

/// Random point on the unit sphere of `spec` supported on `blocks` (all blocks when empty).
SumVector sample_unit_sphere(Rng& rng, const SumSpaceSpec& spec,
                             const std::vector<std::uint32_t>& blocks = {});

}  // namespace dbarlab
