#pragma once

// The almost complex structure M_f on B × G, B ⊂ ℂ^N, G = (ℂ, +) or GL(m):
// a tangent vector (ζ, ν) at (x, z) is antiholomorphic when ζ^{1,0} = 0 and
// μ(ν) = f(ζ), μ(ν) = (dL_z)^{-1} ν^{1,0}.
//
// Everything is templated on the scalar: Complex for sampled residual checks,
// GaussianRational where identities must hold exactly.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "exact.hpp"
#include "poly.hpp"
#include "rng.hpp"

namespace dbarlab {

struct LieGroupModel {
  enum class Kind { kAdditive, kGL };
  Kind kind = Kind::kAdditive;
  std::uint32_t m = 1;

  static LieGroupModel additive() { return {Kind::kAdditive, 1}; }
  static LieGroupModel gl(std::uint32_t m) {
    require(m >= 1, "GL(m) needs m >= 1");
    return {Kind::kGL, m};
  }
  bool abelian() const { return kind == Kind::kAdditive || m == 1; }

  friend bool operator==(const LieGroupModel&, const LieGroupModel&) = default;
};

/// Dense row-major matrix over S; Lie-algebra values, group elements and
/// fiber tangent vectors are all m×m (1×1 for the additive group).
template <class S>
struct Mat {
  using Traits = ScalarTraits<S>;
  std::uint32_t rows = 0, cols = 0;
  std::vector<S> a;

  Mat() = default;
  Mat(std::uint32_t r, std::uint32_t c) : rows(r), cols(c), a(std::size_t{r} * c, Traits::zero()) {}

  static Mat identity(std::uint32_t m) {
    Mat out(m, m);
    for (std::uint32_t i = 0; i < m; ++i) out(i, i) = Traits::one();
    return out;
  }

  S& operator()(std::uint32_t i, std::uint32_t j) { return a[std::size_t{i} * cols + j]; }
  const S& operator()(std::uint32_t i, std::uint32_t j) const { return a[std::size_t{i} * cols + j]; }

  Mat& operator+=(const Mat& o) {
    check(o);
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += o.a[i];
    return *this;
  }
  Mat& operator-=(const Mat& o) {
    check(o);
    for (std::size_t i = 0; i < a.size(); ++i) a[i] -= o.a[i];
    return *this;
  }
  friend Mat operator+(Mat x, const Mat& y) { return x += y; }
  friend Mat operator-(Mat x, const Mat& y) { return x -= y; }
  friend Mat operator*(const Mat& x, const Mat& y) {
    require(x.cols == y.rows, "matrix shapes do not compose");
    Mat out(x.rows, y.cols);
    for (std::uint32_t i = 0; i < x.rows; ++i) {
      for (std::uint32_t k = 0; k < x.cols; ++k) {
        for (std::uint32_t j = 0; j < y.cols; ++j) out(i, j) += x(i, k) * y(k, j);
      }
    }
    return out;
  }
  Mat scaled(const S& s) const {
    Mat out(*this);
    for (auto& v : out.a) v *= s;
    return out;
  }
  Mat conj() const {
    Mat out(*this);
    for (auto& v : out.a) v = Traits::conj(v);
    return out;
  }
  bool is_zero() const {
    return std::all_of(a.begin(), a.end(), [](const S& v) { return Traits::is_zero(v); });
  }
  /// Largest entry modulus, in floating point.
  double max_abs() const {
    double m = 0.0;
    for (const auto& v : a) m = std::max(m, std::abs(Traits::to_complex(v)));
    return m;
  }

  friend bool operator==(const Mat&, const Mat&) = default;

 private:
  void check(const Mat& o) const {
    require(rows == o.rows && cols == o.cols, "matrix shapes differ");
  }
};

template <class S>
Mat<S> commutator(const Mat<S>& x, const Mat<S>& y) {
  return x * y - y * x;
}

/// Solves z X = Y. Throws kPrecondition when z is singular.
template <class S>
Mat<S> left_solve(const Mat<S>& z, const Mat<S>& y);

/// 𝔤-valued (0,1)-form Σ_j f_j dx̄_j on ℂ^N; entries[j] holds the m×m
/// polynomial entries of f_j row-major.
template <class S>
struct GForm01 {
  std::uint32_t N = 1;
  LieGroupModel group;
  std::vector<std::vector<Poly<S>>> entries;

  GForm01() = default;
  GForm01(std::uint32_t base_dim, LieGroupModel g)
      : N(base_dim), group(g),
        entries(base_dim, std::vector<Poly<S>>(std::size_t{g.m} * g.m, Poly<S>(base_dim))) {}

  std::uint32_t m() const { return group.m; }
  Poly<S>& entry(std::uint32_t j, std::uint32_t row, std::uint32_t col) {
    return entries.at(j).at(std::size_t{row} * group.m + col);
  }
  const Poly<S>& entry(std::uint32_t j, std::uint32_t row, std::uint32_t col) const {
    return entries.at(j).at(std::size_t{row} * group.m + col);
  }

  /// f_j(x).
  Mat<S> component(std::uint32_t j, const std::vector<S>& x) const;

  /// f(x)(ζ) = Σ_j f_j(x) ζ_j for a (0,1) vector given by its dx̄ coordinates.
  Mat<S> apply(const std::vector<S>& x, const std::vector<S>& zeta) const;

  void validate() const;

  friend bool operator==(const GForm01&, const GForm01&) = default;
};

/// Base part ζ = (ζ^{1,0}, ζ^{0,1}) and fiber part ν = (ν^{1,0}, ν^{0,1}) at (x, z).
template <class S>
struct GTangent {
  std::vector<S> x;
  Mat<S> z;
  std::vector<S> zeta10, zeta01;
  Mat<S> nu10, nu01;

  friend bool operator==(const GTangent&, const GTangent&) = default;
};

template <class S>
GTangent<S> operator+(const GTangent<S>& a, const GTangent<S>& b);
template <class S>
GTangent<S> operator-(const GTangent<S>& a, const GTangent<S>& b);

/// The complex conjugate vector: types swap, coordinates conjugate.
template <class S>
GTangent<S> conj(const GTangent<S>& v);

/// dL_z ν: ν for the additive group, z ν for GL(m).
template <class S>
Mat<S> left_translate(const LieGroupModel& g, const Mat<S>& z, const Mat<S>& nu);

/// μ(ν) = (dL_z)^{-1} ν^{1,0}.
template <class S>
Mat<S> maurer_cartan(const LieGroupModel& g, const Mat<S>& z, const Mat<S>& nu10);

struct MembershipResidual {
  double zeta10 = 0.0;  // max |ζ^{1,0}_j|
  double fiber = 0.0;   // max entry of |μ(ν) - f(ζ^{0,1})|
  bool member = false;
};

/// Membership of V in the antiholomorphic bundle. `tol` is 0 for exact scalars.
template <class S>
MembershipResidual is_antiholomorphic_tangent(const GTangent<S>& v, const GForm01<S>& f, double tol);

/// V = V₁ + V₂ with V₁ and conj(V₂) antiholomorphic:
///   V₁ = (ζ^{0,1}, dL_z f(ζ^{0,1}), ν^{0,1} - conj(dL_z f(conj ζ^{1,0}))).
template <class S>
std::pair<GTangent<S>, GTangent<S>> decompose(const GTangent<S>& v, const GForm01<S>& f);

/// [φ(ζ), ψ(ζ′)] - [φ(ζ′), ψ(ζ)] at x; zero for an abelian group.
template <class S>
Mat<S> bracket(const GForm01<S>& phi, const GForm01<S>& psi, const std::vector<S>& x,
               const std::vector<S>& zeta, const std::vector<S>& zeta2);

/// (∂̄f)(ζ, ζ′) = Σ_{i<j} (∂f_j/∂x̄_i - ∂f_i/∂x̄_j)(x)(ζ_i ζ′_j - ζ_j ζ′_i), with
/// the coefficient polynomials taken from the scalar closedness residuals.
template <class S>
Mat<S> dbar_value(const GForm01<S>& f, const std::vector<S>& x, const std::vector<S>& zeta,
                  const std::vector<S>& zeta2);

/// (∂̄f)(ζ, ζ′) + ½[f, f](ζ, ζ′).
template <class S>
Mat<S> integrability_residual(const GForm01<S>& f, const std::vector<S>& x,
                              const std::vector<S>& zeta, const std::vector<S>& zeta2);

/// A G-valued map u: B → G, as an m×m matrix of polynomials in (x, x̄).
template <class S>
struct GMap {
  std::uint32_t N = 1;
  LieGroupModel group;
  std::vector<Poly<S>> entries;  // row-major m×m

  Mat<S> value(const std::vector<S>& x) const;
  /// du(ζ^{0,1}) = Σ_j ∂u/∂x̄_j(x) ζ_j.
  Mat<S> antiholomorphic_differential(const std::vector<S>& x, const std::vector<S>& zeta01) const;
};

/// D̄u(ζ) = μ(du(ζ^{0,1})) at the fiber point u(x).
template <class S>
Mat<S> dbar_g(const GMap<S>& u, const std::vector<S>& x, const std::vector<S>& zeta01);

/// max entry of |D̄u(ζ) - f(ζ)| at one (x, ζ); zero iff the graph of u is
/// holomorphic for M_f along ζ.
template <class S>
double section_residual(const GMap<S>& u, const GForm01<S>& f, const std::vector<S>& x,
                        const std::vector<S>& zeta01);

/// g = f + ∂̄u for the additive group.
template <class S>
GForm01<S> gauge_transport(const GForm01<S>& f, const Poly<S>& u);

/// dΦ V for Φ(x, z) = (x, z + u(x)), additive group.
template <class S>
GTangent<S> pushforward(const Poly<S>& u, const GTangent<S>& v);

/// Fiber-valued (0,1)-form from scalar polynomial components.
template <class S>
GForm01<S> scalar_form(const Form01<S>& f);

// ---------------------------------------------------------------------------
// Floating-point experiments

/// Random tangent vector at a random point (|x| < 1; z near the identity for GL).
GTangent<Complex> random_tangent(Rng& rng, std::uint32_t N, const LieGroupModel& g);

/// Random form with polynomial entries of degree <= degree.
GForm01<Complex> random_gform(Rng& rng, std::uint32_t N, const LieGroupModel& g, std::uint32_t degree);

/// max over samples of the membership residuals of dΦ V in T^{0,1}M_g, for V
/// built in T^{0,1}M_f.
double gauge_transport_residual(const GForm01<Complex>& f, const PolyFunction& u, std::size_t samples,
                                std::uint64_t seed);

/// max over sampled z, X, Y in GL(m) of |D_X μ(Y) - D_Y μ(X) + [μ(X), μ(Y)]|
/// with central differences of step h.
double maurer_cartan_fd_residual(std::uint32_t m, double h, std::size_t samples, std::uint64_t seed);

/// Dimension of the real solution space of "V and conj(V) both antiholomorphic"
/// at (x, z); 0 confirms uniqueness of the splitting.
std::size_t antiholomorphic_pair_kernel_dim(const GForm01<Complex>& f, const std::vector<Complex>& x,
                                            const Mat<Complex>& z);

struct ResidualRow {
  std::size_t point = 0;
  std::size_t vector = 0;
  double residual_norm = 0.0;
};

/// Integrability residual norms at `points` random x and `vectors` random
/// (ζ, ζ′) pairs each.
std::vector<ResidualRow> integrability_report(const GForm01<Complex>& f, std::size_t points,
                                              std::size_t vectors, std::uint64_t seed);

}  // namespace dbarlab
