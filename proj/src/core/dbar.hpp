#pragma once

// ∂̄-calculus on polynomial data in ℂ^n: symbolic ∂̄, closedness, the
// homotopy solver, C^m norms, minimal-sup corrections, Cauchy–Pompeiu slice
// solves and the condensation assembly over a sum of ℓ_p blocks.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include "poly.hpp"
#include "sumspace.hpp"

namespace dbarlab {

// ---------------------------------------------------------------------------
// Symbolic operations (exact in both scalar modes)

/// f_j = ∂u/∂z̄_j.
template <class S>
Form01<S> dbar(const Poly<S>& u) {
  Form01<S> f(u.n());
  for (std::uint32_t j = 0; j < u.n(); ++j) f.components[j] = u.dzbar(j);
  return f;
}

template <class S>
struct ClosedResidual {
  std::uint32_t i = 0;  // 0-based, i < j
  std::uint32_t j = 0;
  Poly<S> value;        // ∂f_j/∂z̄_i - ∂f_i/∂z̄_j
};

template <class S>
struct ClosedReport {
  bool closed = true;
  std::vector<ClosedResidual<S>> residuals;  // every pair i < j
};

template <class S>
ClosedReport<S> is_closed(const Form01<S>& f) {
  ClosedReport<S> report;
  for (std::uint32_t i = 0; i < f.n(); ++i) {
    for (std::uint32_t j = i + 1; j < f.n(); ++j) {
      auto r = f.components[j].dzbar(i) - f.components[i].dzbar(j);
      if (!r.is_zero()) report.closed = false;
      report.residuals.push_back({i, j, std::move(r)});
    }
  }
  return report;
}

/// Closedness as used by the solvers: exact for rational scalars; for
/// floating scalars every residual coefficient must be below 1e-12 times the
/// form's largest derivative coefficient, since mixed partials of rounded
/// data need not cancel bit for bit.
template <class S>
bool closed_for_solve(const Form01<S>& f) {
  const auto report = is_closed(f);
  if constexpr (std::is_same_v<S, Complex>) {
    double scale = 0.0;
    for (const auto& c : f.components) {
      for (const auto& [e, v] : c.terms()) {
        std::uint32_t d = 0;
        for (auto x : e) d += x;
        scale = std::max(scale, std::abs(v) * std::max<std::uint32_t>(d, 1));
      }
    }
    for (const auto& r : report.residuals) {
      for (const auto& [e, v] : r.value.terms()) {
        if (std::abs(v) > 1e-12 * scale) return false;
      }
    }
    return true;
  } else {
    return report.closed;
  }
}

/// u = ∫₀¹ Σ_j z̄_j f_j(z, t z̄) dt, termwise c z^α z̄^β dz̄_j ↦ c/(|β|+1) z^α z̄^{β+e_j}.
/// Throws kPrecondition unless f is closed (see closed_for_solve).
template <class S>
Poly<S> homotopy_solve(const Form01<S>& f) {
  if (!closed_for_solve(f)) fail(ErrorCode::kPrecondition, "homotopy_solve needs a ∂̄-closed form");
  const auto n = f.n();
  Poly<S> u(n);
  for (std::uint32_t j = 0; j < n; ++j) {
    for (const auto& [e, c] : f.components[j].terms()) {
      std::uint32_t beta = 0;
      for (std::uint32_t i = 0; i < n; ++i) beta += e[n + i];
      ExponentPair lifted(e);
      ++lifted[n + j];
      u.add(lifted, c * ScalarTraits<S>::ratio(1, beta + 1));
    }
  }
  return u;
}

/// Pullback along ℂ^m → ℂ^n, x ↦ (x, 0): drops terms in later variables.
template <class S>
Poly<S> restrict_function(const Poly<S>& u, std::uint32_t m) {
  const auto n = u.n();
  require(m <= n, "restriction target must not exceed the source dimension");
  Poly<S> out(m);
  for (const auto& [e, c] : u.terms()) {
    bool keep = true;
    for (std::uint32_t i = m; i < n && keep; ++i) keep = e[i] == 0 && e[n + i] == 0;
    if (!keep) continue;
    ExponentPair r(e.begin(), e.begin() + m);
    r.insert(r.end(), e.begin() + n, e.begin() + n + m);
    out.add(r, c);
  }
  return out;
}

/// Pullback along ℂ^n → ℂ^m, (x, y) ↦ x (a cylinder function on ℂ^n).
template <class S>
Poly<S> lift_function(const Poly<S>& u, std::uint32_t n) {
  const auto m = u.n();
  require(n >= m, "lift target must not be smaller than the source dimension");
  Poly<S> out(n);
  for (const auto& [e, c] : u.terms()) {
    ExponentPair l(2 * n, 0);
    std::copy(e.begin(), e.begin() + m, l.begin());
    std::copy(e.begin() + m, e.end(), l.begin() + n);
    out.add(l, c);
  }
  return out;
}

/// J_m^* f for the inclusion of the first m coordinates.
template <class S>
Form01<S> restrict(const Form01<S>& f, std::uint32_t m) {
  require(m <= f.n(), "restriction target must not exceed the source dimension");
  std::vector<Poly<S>> comps;
  for (std::uint32_t j = 0; j < m; ++j) comps.push_back(restrict_function(f.components[j], m));
  return Form01<S>(std::move(comps));
}

/// ϱ^* f for the projection onto the first m = f.n() coordinates of ℂ^n.
template <class S>
Form01<S> cylinder_lift(const Form01<S>& f, std::uint32_t n) {
  require(n >= f.n(), "lift target must not be smaller than the source dimension");
  std::vector<Poly<S>> comps;
  for (std::uint32_t j = 0; j < n; ++j) {
    comps.push_back(j < f.n() ? lift_function(f.components[j], n) : Poly<S>(n));
  }
  return Form01<S>(std::move(comps));
}

/// Pullback along the projection onto coordinates [offset, offset + f.n())
/// of ℂ^n.
template <class S>
Form01<S> pullback_projection(const Form01<S>& f, std::uint32_t n, std::uint32_t offset) {
  const auto m = f.n();
  require(offset + m <= n, "block does not fit in the target dimension");
  Form01<S> out(n);
  for (std::uint32_t j = 0; j < m; ++j) {
    Poly<S> p(n);
    for (const auto& [e, c] : f.components[j].terms()) {
      ExponentPair l(2 * n, 0);
      std::copy(e.begin(), e.begin() + m, l.begin() + offset);
      std::copy(e.begin() + m, e.end(), l.begin() + n + offset);
      p.add(l, c);
    }
    out.components[offset + j] = std::move(p);
  }
  return out;
}

/// Pullback along the inclusion of coordinates [offset, offset + m) into ℂ^n.
template <class S>
Form01<S> pullback_inclusion(const Form01<S>& f, std::uint32_t offset, std::uint32_t m) {
  const auto n = f.n();
  require(offset + m <= n, "block does not fit in the source dimension");
  std::vector<Poly<S>> comps;
  for (std::uint32_t j = 0; j < m; ++j) {
    Poly<S> p(m);
    for (const auto& [e, c] : f.components[offset + j].terms()) {
      bool keep = true;
      for (std::uint32_t i = 0; i < n && keep; ++i) {
        const bool inside = i >= offset && i < offset + m;
        keep = inside || (e[i] == 0 && e[n + i] == 0);
      }
      if (!keep) continue;
      ExponentPair r(e.begin() + offset, e.begin() + offset + m);
      r.insert(r.end(), e.begin() + n + offset, e.begin() + n + offset + m);
      p.add(r, c);
    }
    comps.push_back(std::move(p));
  }
  return Form01<S>(std::move(comps));
}

// ---------------------------------------------------------------------------
// Numerical operations (floating scalars)

struct CmOptions {
  std::size_t samples = 8192;
  std::uint64_t seed = 0;
  double p = 2.0;  // the ball and derivative directions use the ℓ_p norm
};

/// Σ_{k<=m} sup_{‖x‖_p < radius} ‖u^{(k)}(x)‖ with symbolic derivatives. The
/// sup runs over sampled rays and directions, maximizing exactly along each
/// ray, so the result is a lower estimate of the true norm.
double cm_norm(const PolyFunction& u, std::uint32_t m, double radius, const CmOptions& opts = {});

/// The form case: the C^m norm of U(x, ξ) = Σ_j f_j(x) ξ̄_j on B(radius) × B(1).
double cm_norm(const PolyForm01& f, std::uint32_t m, double radius, const CmOptions& opts = {});

struct MinSupOptions {
  std::uint32_t degree = 4;          // D: holomorphic corrections of degree <= D
  std::size_t grid = 1024;           // sample points in B(r), half on the sphere
  std::size_t iterations = 300;      // reweighting rounds
  std::uint64_t seed = 0;
  double p = 2.0;
};

/// Grid used by min_sup_solution.
std::vector<std::vector<Complex>> min_sup_grid(std::uint32_t n, double r, const MinSupOptions& opts);

template <class S>
struct MinSupResult {
  Poly<S> u;
  double sup = 0.0;  // max |u| over the grid
};

/// u = homotopy_solve(f) + h, h holomorphic of degree <= D chosen by Lawson's
/// reweighted least squares to reduce max |u| on the grid. The best iterate
/// is kept (h = 0 included), so sup never exceeds the particular solution's.
/// In exact mode h's floating coefficients enter as exact rationals, so
/// dbar(u) == f holds coefficientwise.
template <class S>
MinSupResult<S> min_sup_solution(const Form01<S>& f, double r, const MinSupOptions& opts = {});

/// One-variable pullback to the line λ ↦ a + λv: Σ_j f_j(a + λv) v̄_j.
PolyFunction restrict_to_line(const PolyForm01& f, std::span<const Complex> a,
                              std::span<const Complex> v);

struct SliceOptions {
  std::uint32_t angular = 256;  // ring samples per radius
  std::uint32_t radial = 256;   // Gauss–Legendre nodes on each side of |z|
  double stencil_step = 1e-3;
};

struct SliceSolution {
  std::vector<Complex> points;
  std::vector<Complex> values;
  std::vector<std::size_t> skipped;  // input indices with |z| >= radius
};

/// u(z) = (1/2πi)∬_{|ζ|<radius} g(ζ)/(ζ - z) dζ∧dζ̄ for a one-variable g.
/// Each ring's angular modes come from an `angular`-point DFT and are
/// integrated against the kernel exactly; the radial integral is split at
/// s = |z| so the kernel's kink sits on a panel boundary.
SliceSolution cauchy_pompeiu_slice_solve(const PolyFunction& g, double radius,
                                         std::span<const Complex> points,
                                         const SliceOptions& opts = {});

/// radii × angles interior points, kept at distance > 2·step from the rim.
std::vector<Complex> slice_grid(double radius, std::uint32_t radii = 8, std::uint32_t angles = 8,
                                double step = 1e-3);

/// ∂̄h(z) ≈ (1/(8δ)) Σ_j e^{iθ_j} h(z + δe^{iθ_j}), θ_j = 2πj/8. Exact up to
/// rounding for z̄-powers below 9 and z-powers below 7; mixed terms leave an
/// O(δ²) error.
Complex stencil_dbar(const std::function<Complex(Complex)>& h, Complex z, double step);

/// max over points of |∂̄u - g| for the Cauchy–Pompeiu solution u of g.
double slice_dbar_residual(const PolyFunction& g, double radius, std::span<const Complex> points,
                           const SliceOptions& opts = {});

// ---------------------------------------------------------------------------
// Condensation over X = ℓ₁-sum of ℓ_p(ℂ^{n(p)}), p = 2..P

template <class S>
struct FamilyMember {
  std::uint32_t n = 1;   // n(p)
  double radius = 1.0;   // r_p, carried as metadata
  Form01<S> form;
};

template <class S>
struct CondensationSpec {
  std::uint32_t P = 2;
  std::map<std::uint32_t, FamilyMember<S>> family;  // keys 2..P
};

template <class S>
struct CondensedForm {
  SumSpaceSpec space = SumSpaceSpec::single(1.0, 1);
  Form01<S> form;
  std::map<std::uint32_t, S> weights;        // p^{-p}
  std::map<std::uint32_t, S> scale_factors;  // normalization applied to f_p
  std::map<std::uint32_t, double> measured_norms;
};

/// Coordinate offset of block p (blocks are p = 2..P in order).
std::uint32_t condensation_offset(const SumSpaceSpec& space, std::uint32_t p);

/// f = Σ_p p^{-p} π_p^* (s_p f_p) where s_p = 1/‖f_p‖_{C^{p-1}(B_p(1))} when
/// that norm is off 1 by more than 2%, else 1. Throws kPrecondition for a
/// non-closed member.
template <class S>
CondensedForm<S> condense(const CondensationSpec<S>& spec, const CmOptions& cm = {});

/// p^{-p} π_p^* part restricted back to block p, i.e. I_p^* f.
template <class S>
Form01<S> restrict_to_block(const CondensedForm<S>& c, std::uint32_t p) {
  const auto off = condensation_offset(c.space, p);
  return pullback_inclusion(c.form, off, c.space.block(p - 1).dim);
}

// ---------------------------------------------------------------------------
// Growth experiment

using FamilyGenerator = std::function<FamilyMember<Complex>(std::uint32_t p)>;

struct GrowthRow {
  std::uint32_t p = 0;
  std::uint32_t n = 0;
  double r = 0.0;
  double cm_norm = 0.0;  // ‖f_p‖_{C^{p-1}(B_p(1))}
  double min_sup = 0.0;  // min-sup estimate for f_p / ‖f_p‖, i.e. the ratio
};

std::vector<GrowthRow> growth_table(const FamilyGenerator& family, std::span<const double> radii,
                                    std::uint32_t p_min, std::uint32_t p_max,
                                    const MinSupOptions& minsup = {}, const CmOptions& cm = {});

/// Bundled families: "zbar-power" (f_p = Σ_j z̄_j^{p-1} dz̄_j = ∂̄ Σ z̄_j^p/p)
/// and "zero". Throws for other names.
FamilyGenerator builtin_family(const std::string& name, std::uint32_t n);

}  // namespace dbarlab
