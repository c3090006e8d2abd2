#pragma once

// Seeded random test data shared by the self-test and the test suites.

#include <cstdint>

#include "acs.hpp"
#include "mhcalc.hpp"
#include "multiindex.hpp"
#include "poly.hpp"
#include "rng.hpp"
#include "sum_polynomial.hpp"
#include "sumspace.hpp"

namespace dbarlab {

/// Gaussian rational with numerators in [-9, 9] and denominators in 1..4.
GaussianRational random_gaussian_rational(Rng& rng);

/// Up to `terms` monomials over blocks 1..num_blocks, block degree <= max_degree.
ExactPolynomial random_sum_polynomial(Rng& rng, const SumSpaceSpec& spec, std::uint32_t num_blocks,
                                      std::uint32_t max_degree, std::uint32_t terms);

/// `terms` random monomials of block multidegree exactly k, complex normal coefficients.
Polynomial random_khom(Rng& rng, const SumSpaceSpec& spec, const MultiIndex& k, std::uint32_t terms);

/// Random polynomial in (z, z̄) on ℂ^n with total degree <= degree.
ExactPolyFunction random_exact_poly(Rng& rng, std::uint32_t n, std::uint32_t degree, std::uint32_t terms);

/// f_d = 2^{-d} z^d, d = 0..max_degree, on ℓ₁(ℂ¹) with R = 1 and exact
/// norms [f_d] = 2^{-d}.
MHExpansion geometric_expansion(std::uint32_t max_degree = 10);

/// Exact random tangent vector; z is the identity plus a small rational
/// perturbation for GL(m) (invertible by diagonal dominance).
GTangent<GaussianRational> random_exact_tangent(Rng& rng, std::uint32_t N, const LieGroupModel& g);

/// Exact random 𝔤-valued form with entries of total degree <= degree.
GForm01<GaussianRational> random_exact_gform(Rng& rng, std::uint32_t N, const LieGroupModel& g,
                                             std::uint32_t degree);

/// Floating image of a sum-space polynomial.
Polynomial to_floating(const ExactPolynomial& p);

}  // namespace dbarlab
