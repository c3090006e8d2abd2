#pragma once

// Runge-type approximation of a finite multihomogeneous expansion on B_X(R)
// by the partial sum over
//   𝒦 = {k : [f_k](θR)^‖k‖ Q^{#k} >= δ},
// certified on B_X(r) by |f - g| <= δ sup_{‖w‖₁ <= θ} Δ(1/Q, w) when r < θ²R.

#include <cstdint>
#include <optional>
#include <vector>

#include "mhcalc.hpp"
#include "multiindex.hpp"

namespace dbarlab {

struct RungeParams {
  double R = 1.0;
  double r = 0.5;
  double theta = 0.5;
  double Q = 1.0;
  double delta = 1e-3;
  double eps = 1e-2;

  /// 0 < r < θ²R, θ in (0, 1), Q >= 1, δ >= 0.
  void validate() const;
};

struct ApproximationCertificate {
  std::vector<MultiIndex> kset;
  double dropped_mass_bound = 0.0;  // Σ_{k ∉ 𝒦} [f_k] r^‖k‖
  double delta_sup = 0.0;
  double error_bound = 0.0;         // δ · delta_sup
  bool satisfied = false;           // error_bound < ε
  bool certified = false;           // false when delta_sup is a sampled estimate
  double theta = 0.0;
  double Q = 1.0;
  double delta = 0.0;
  std::optional<double> sampled_max_error;  // max |f - g| over the check samples
  std::size_t samples = 0;
};

struct RungeOptions {
  bool allow_sampled_fallback = true;
  std::size_t delta_samples = 2048;   // simplex samples for an uncertified Δ sup
  std::size_t check_samples = 10000;  // points of B_X(r) for the |f - g| check
  std::uint64_t seed = 0;
};

/// c'_k = [f_k](θR)^‖k‖ Q^{#k}.
double kept_weight(const KHomPolynomial& term, const RungeParams& params);

/// 𝒦 in graded order. Needs every term norm.
std::vector<MultiIndex> select_kset(const MHExpansion& e, const RungeParams& params);

/// g = Σ_{k ∈ 𝒦} f_k. Throws when some k is not a stored term.
MHExpansion build_approximant(const MHExpansion& e, const std::vector<MultiIndex>& kset);

/// Selects 𝒦 and bounds |f - g| on B_X(r). The certified path needs eθ < 1
/// and Q >= 1; otherwise the Δ sup is sampled (when allowed) and the
/// certificate is flagged uncertified. Throws kCertification when neither
/// path is available.
ApproximationCertificate certify_error(const MHExpansion& e, const RungeParams& params,
                                       const RungeOptions& opts = {});

struct RungeResult {
  MHExpansion approximant;
  ApproximationCertificate certificate;
};

/// Driver: θ just above √(r/R), Q doubled from 1 until the Δ sup is at most
/// 2, δ = ε/(2 · Δ sup). Needs an ℓ₁ outer space and every term norm.
RungeResult approximate(const MHExpansion& e, double r, double eps, const RungeOptions& opts = {});

/// Random point of the open ball B_X(radius) over blocks 1..max_block.
SumVector sample_ball(Rng& rng, const SumSpaceSpec& spec, std::uint32_t max_block, double radius);

}  // namespace dbarlab
