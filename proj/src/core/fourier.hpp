#pragma once

// Multihomogeneous component extraction by discrete Fourier analysis on the
// coordinate torus.
//
// For f depending on blocks 1..N the k-homogeneous component is
//   f_k(x) = ∫_T f(e^{2πit}x) e^{-2πi(k·t)} dt,
// and for a polynomial whose degree in every block is at most `degree_cap`,
// cap+1 equispaced nodes on each circle make the discrete average exact.
// Coefficients are recovered by running the same discrete average over every
// scalar coordinate circle (a refinement of the block circles), then keeping
// the monomials whose block multidegree equals k.

#include <cstdint>
#include <functional>

#include "exact.hpp"
#include "multiindex.hpp"
#include "sum_polynomial.hpp"
#include "sumspace.hpp"

namespace dbarlab {

using Oracle = std::function<Complex(const SumVector&)>;

struct ExtractionOptions {
  std::uint32_t num_blocks = 1;   // f depends on blocks 1..num_blocks only
  std::uint32_t degree_cap = 0;   // max degree of f in any single block
  std::uint32_t nodes = 0;        // nodes per circle; 0 means degree_cap + 1
  double node_radius = 1.0;       // torus radius used for sampling
  double drop_tolerance = 1e-13;  // relative cutoff for floating round-off
};

/// All monomial coefficients of f over blocks 1..num_blocks.
Polynomial extract_coefficients(const SumSpaceSpec& spec, const Oracle& f,
                                const ExtractionOptions& opts);

/// k-homogeneous component of f. Zero when supp k reaches past num_blocks.
Polynomial component(const SumSpaceSpec& spec, const Oracle& f, const MultiIndex& k,
                     const ExtractionOptions& opts);

/// Splits a full coefficient set into its k-homogeneous parts.
std::map<MultiIndex, Polynomial, GradedLess> split_by_multidegree(const Polynomial& p);

/// f_k(x) by the torus average over block circles only, `nodes` per circle.
/// This is the defining integral, independent of coefficient recovery.
Complex block_circle_component_value(const Oracle& f, const MultiIndex& k, const SumVector& x,
                                     std::uint32_t num_blocks, std::uint32_t nodes);

/// Exact mode: the same coordinate-torus DFT carried out in the cyclotomic
/// field ℚ(i)(ζ_N), N = nodes. Samples of f at torus nodes are exact
/// elements of the group ring ℤ[i][C_N]; the result is reduced modulo the
/// cyclotomic polynomial Φ_N at the end.
ExactPolynomial extract_coefficients_exact(const SumSpaceSpec& spec, const ExactPolynomial& f,
                                           const ExtractionOptions& opts);

ExactPolynomial component_exact(const SumSpaceSpec& spec, const ExactPolynomial& f,
                                const MultiIndex& k, const ExtractionOptions& opts);

/// Integer coefficients of the n-th cyclotomic polynomial, lowest degree first.
std::vector<BigInt> cyclotomic_polynomial(std::uint32_t n);

}  // namespace dbarlab
