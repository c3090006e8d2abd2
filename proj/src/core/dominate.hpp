#pragma once

// The dominating function
//   Δ(q, z) = Σ_k (‖k‖^‖k‖ / k^k) |q|^{#k} z^k,   z >= 0, ‖z‖₁ < 1,
// truncated at total degree D, with certified tail bounds when e‖z‖₁ < 1.

#include <complex>
#include <cstdint>
#include <optional>
#include <span>

#include "exact.hpp"
#include "multiindex.hpp"

namespace dbarlab {

struct DeltaResult {
  double value = 0.0;                 // truncated sum
  std::optional<double> tail_bound;   // empty means uncertified
  std::uint32_t degree_cut = 0;
};

/// Σ over enumerate(n, D) of the Δ terms, n = z.size(). Summed shell by
/// shell in log space through the generating function
///   Σ_{‖k‖=d} Π_i (z_i^{k_i}/k_i^{k_i}) |q|^{[k_i>0]} = [t^d] Π_i (1 + |q| Σ_j (z_i t)^j / j^j).
/// Throws when ‖z‖₁ >= 1 or some z_i < 0.
DeltaResult delta_truncated(Complex q, std::span<const double> z, std::uint32_t max_degree);

/// As above plus tail_bound = |q|(e t)^{D+1}/(1 - e t), t = ‖z‖₁, from
/// d^d/k^k <= e^d d!/Π k_i! and the multinomial theorem. Uncertified when
/// e t >= 1 or |q| > 1.
DeltaResult delta_certified(Complex q, std::span<const double> z, std::uint32_t max_degree);

/// 1 + |q| eθ/(1 - eθ) >= sup_{‖w‖₁ <= θ} Δ(q, w). Throws kCertification
/// when eθ >= 1 and kInvalidArgument when |q| > 1.
double delta_sup_bound(double q_abs, double theta);

/// Δ summed until the next shell falls below rel_tol of the running value
/// (or max_degree is reached). Used when no certified bound is available.
DeltaResult delta_converged(Complex q, std::span<const double> z, double rel_tol = 1e-16,
                            std::uint32_t max_degree = 4000);

/// Sampled sup of Δ(q, ·) over {w >= 0, ‖w‖₁ = θ} in `dims` coordinates (Δ is
/// monotone, so the boundary carries the sup). Vertices and the barycenter
/// are always included. A lower estimate of the true sup.
double delta_sampled_sup(double q_abs, double theta, std::uint32_t dims, std::size_t samples,
                         std::uint64_t seed);

/// [z^k] on ℓ₁ = k^k ‖k‖^{-‖k‖}.
double monomial_norm(const MultiIndex& k);

}  // namespace dbarlab
