#include "dbar.hpp"

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss.hpp>
#include <unsupported/Eigen/Polynomials>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "error.hpp"
#include "mhcalc.hpp"
#include "parallel.hpp"
#include "rng.hpp"

namespace dbarlab {

namespace {

// Polynomial in real (t, s) truncated at s-degree `smax`; c[i][k] multiplies t^i s^k.
class BiPoly {
 public:
  BiPoly(std::size_t tdeg, std::size_t smax) : smax_(smax), c_(tdeg + 1, std::vector<Complex>(smax + 1)) {}

  static BiPoly constant(Complex v, std::size_t smax) {
    BiPoly p(0, smax);
    p.c_[0][0] = v;
    return p;
  }

  // a t + b s
  static BiPoly linear(Complex a, Complex b, std::size_t smax) {
    BiPoly p(1, smax);
    p.c_[1][0] = a;
    if (smax >= 1) p.c_[0][1] = b;
    return p;
  }

  BiPoly operator*(const BiPoly& o) const {
    BiPoly out(tdeg() + o.tdeg(), smax_);
    for (std::size_t i = 0; i < c_.size(); ++i) {
      for (std::size_t k = 0; k <= smax_; ++k) {
        if (c_[i][k] == Complex{}) continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j) {
          for (std::size_t l = 0; k + l <= smax_; ++l) out.c_[i + j][k + l] += c_[i][k] * o.c_[j][l];
        }
      }
    }
    return out;
  }

  void add(const BiPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), std::vector<Complex>(smax_ + 1));
    for (std::size_t i = 0; i < o.c_.size(); ++i) {
      for (std::size_t k = 0; k <= smax_; ++k) c_[i][k] += o.c_[i][k];
    }
  }

  // Coefficients in t of the s^k part.
  std::vector<Complex> s_part(std::size_t k) const {
    std::vector<Complex> out(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) out[i] = c_[i][k];
    return out;
  }

  std::size_t tdeg() const { return c_.size() - 1; }

 private:
  std::size_t smax_;
  std::vector<std::vector<Complex>> c_;
};

Complex horner(const std::vector<Complex>& c, double t) {
  Complex acc{};
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * t + *it;
  return acc;
}

// max_{t in [0, rho]} |P(t)| over the endpoints and the real critical points
// of |P|², located with a companion-matrix root finder.
double max_abs_on_interval(const std::vector<Complex>& P, double rho) {
  double best = std::max(std::abs(horner(P, 0.0)), std::abs(horner(P, rho)));
  const std::size_t d = P.size() - 1;
  if (d < 1) return best;
  std::vector<double> q(2 * d + 1, 0.0);
  for (std::size_t i = 0; i <= d; ++i) {
    for (std::size_t j = 0; j <= d; ++j) q[i + j] += (P[i] * std::conj(P[j])).real();
  }
  std::vector<double> dq;
  for (std::size_t l = 1; l < q.size(); ++l) dq.push_back(static_cast<double>(l) * q[l]);
  while (!dq.empty() && dq.back() == 0.0) dq.pop_back();
  if (dq.size() < 2) return best;
  Eigen::VectorXd coeffs = Eigen::Map<Eigen::VectorXd>(dq.data(), static_cast<Eigen::Index>(dq.size()));
  Eigen::PolynomialSolver<double, Eigen::Dynamic> solver;
  solver.compute(coeffs);
  for (const auto& root : solver.roots()) {
    const double t = root.real();
    if (std::abs(root.imag()) > 1e-6 * std::max(1.0, std::abs(t))) continue;
    if (t < 0.0 || t > rho) continue;
    best = std::max(best, std::abs(horner(P, t)));
  }
  return best;
}

std::vector<double> factorials(std::uint32_t m) {
  std::vector<double> f(m + 1, 1.0);
  for (std::uint32_t k = 1; k <= m; ++k) f[k] = f[k - 1] * k;
  return f;
}

// u(t y + s h) as a BiPoly.
BiPoly along_ray(const PolyFunction& u, std::span<const Complex> y, std::span<const Complex> h,
                 std::size_t smax) {
  const auto n = u.n();
  BiPoly acc(0, smax);
  for (const auto& [e, c] : u.terms()) {
    BiPoly term = BiPoly::constant(c, smax);
    for (std::uint32_t i = 0; i < n; ++i) {
      if (e[i] > 0) {
        const auto lin = BiPoly::linear(y[i], h[i], smax);
        for (std::uint32_t k = 0; k < e[i]; ++k) term = term * lin;
      }
      if (e[n + i] > 0) {
        const auto lin = BiPoly::linear(std::conj(y[i]), std::conj(h[i]), smax);
        for (std::uint32_t k = 0; k < e[n + i]; ++k) term = term * lin;
      }
    }
    acc.add(term);
  }
  return acc;
}

struct Direction {
  std::vector<Complex> y, h, xi, eta;
};

// Coordinate axes first, then random points of the unit ℓ_p sphere.
std::vector<Direction> directions(std::uint32_t n, const CmOptions& opts) {
  std::vector<Direction> out;
  for (std::uint32_t a = 0; a < n && out.size() < opts.samples; ++a) {
    std::vector<Complex> e(n);
    e[a] = 1.0;
    out.push_back({e, e, e, e});
  }
  Rng rng(opts.seed);
  while (out.size() < opts.samples) {
    Direction d;
    d.y = sample_block_sphere(rng, opts.p, n);
    d.h = sample_block_sphere(rng, opts.p, n);
    d.xi = sample_block_sphere(rng, opts.p, n);
    d.eta = sample_block_sphere(rng, opts.p, n);
    out.push_back(std::move(d));
  }
  return out;
}

double reduce_cm(const std::vector<std::vector<double>>& per_sample, std::uint32_t m) {
  double total = 0.0;
  for (std::uint32_t k = 0; k <= m; ++k) {
    double sup = 0.0;
    for (const auto& s : per_sample) sup = std::max(sup, s[k]);
    total += sup;
  }
  return total;
}

}  // namespace

double cm_norm(const PolyFunction& u, std::uint32_t m, double radius, const CmOptions& opts) {
  require(radius > 0.0, "radius must be positive");
  const auto n = u.n();
  if (u.is_zero() || n == 0) return u.is_zero() ? 0.0 : std::abs(u.terms().begin()->second);
  const auto dirs = directions(n, opts);
  const auto fact = factorials(m);
  std::vector<std::vector<double>> sups(dirs.size(), std::vector<double>(m + 1, 0.0));
  parallel_for(dirs.size(), [&](std::size_t i) {
    const auto g = along_ray(u, dirs[i].y, dirs[i].h, m);
    for (std::uint32_t k = 0; k <= m; ++k) {
      sups[i][k] = fact[k] * max_abs_on_interval(g.s_part(k), radius);
    }
  });
  return reduce_cm(sups, m);
}

double cm_norm(const PolyForm01& f, std::uint32_t m, double radius, const CmOptions& opts) {
  require(radius > 0.0, "radius must be positive");
  const auto n = f.n();
  if (f.is_zero()) return 0.0;
  const auto dirs = directions(n, opts);
  const auto fact = factorials(m);
  std::vector<std::vector<double>> sups(dirs.size(), std::vector<double>(m + 1, 0.0));
  parallel_for(dirs.size(), [&](std::size_t i) {
    const auto& d = dirs[i];
    BiPoly U(0, m);
    for (std::uint32_t j = 0; j < n; ++j) {
      if (f.components[j].is_zero()) continue;
      // conj(ξ_j + s η_j) with s real
      BiPoly xi = BiPoly::linear(0.0, std::conj(d.eta[j]), m);
      xi.add(BiPoly::constant(std::conj(d.xi[j]), m));
      U.add(along_ray(f.components[j], d.y, d.h, m) * xi);
    }
    for (std::uint32_t k = 0; k <= m; ++k) {
      sups[i][k] = fact[k] * max_abs_on_interval(U.s_part(k), radius);
    }
  });
  return reduce_cm(sups, m);
}

// ---------------------------------------------------------------------------

std::vector<std::vector<Complex>> min_sup_grid(std::uint32_t n, double r, const MinSupOptions& opts) {
  require(n >= 1, "dimension must be positive");
  require(r > 0.0, "radius must be positive");
  Rng rng(opts.seed);
  std::vector<std::vector<Complex>> grid;
  grid.emplace_back(n);  // origin
  for (std::size_t i = 1; i < opts.grid; ++i) {
    auto v = sample_block_sphere(rng, opts.p, n);
    const double t = (i % 2 == 1) ? r : r * std::pow(rng.uniform(), 1.0 / (2.0 * n));
    for (auto& c : v) c *= t;
    grid.push_back(std::move(v));
  }
  return grid;
}

namespace {

// Exponents of the holomorphic monomials z^α with |α| <= D.
std::vector<ExponentPair> holomorphic_basis(std::uint32_t n, std::uint32_t D) {
  std::vector<ExponentPair> out;
  ExponentPair e(2 * n, 0);
  std::function<void(std::uint32_t, std::uint32_t)> rec = [&](std::uint32_t i, std::uint32_t left) {
    if (i == n) {
      out.push_back(e);
      return;
    }
    for (std::uint32_t a = 0; a <= left; ++a) {
      e[i] = a;
      rec(i + 1, left - a);
    }
    e[i] = 0;
  };
  rec(0, D);
  return out;
}

template <class S>
S from_complex(Complex c) {
  if constexpr (std::is_same_v<S, Complex>) {
    return c;
  } else {
    return GaussianRational::from_double(c.real(), c.imag());
  }
}

}  // namespace

template <class S>
MinSupResult<S> min_sup_solution(const Form01<S>& f, double r, const MinSupOptions& opts) {
  const auto u0 = homotopy_solve(f);
  const auto n = f.n();
  if (u0.is_zero() || n == 0) return {u0, 0.0};

  const auto grid = min_sup_grid(n, r, opts);
  const auto basis = holomorphic_basis(n, opts.degree);
  const auto G = static_cast<Eigen::Index>(grid.size());
  const auto B = static_cast<Eigen::Index>(basis.size());
  const auto u0f = to_floating(u0);

  Eigen::MatrixXcd A(G, B);
  Eigen::VectorXcd b(G);
  for (Eigen::Index i = 0; i < G; ++i) {
    b(i) = u0f.eval(grid[i]);
    for (Eigen::Index j = 0; j < B; ++j) {
      A(i, j) = Poly<Complex>::monomial(std::span(basis[j]).first(n), std::span(basis[j]).last(n), 1.0)
                    .eval(grid[i]);
    }
  }

  Eigen::VectorXcd best_c = Eigen::VectorXcd::Zero(B);
  double best = b.cwiseAbs().maxCoeff();
  Eigen::VectorXd w = Eigen::VectorXd::Constant(G, 1.0 / static_cast<double>(G));
  for (std::size_t it = 0; it < opts.iterations; ++it) {
    const Eigen::VectorXd sw = w.cwiseSqrt();
    const Eigen::MatrixXcd WA = sw.asDiagonal() * A;
    const Eigen::VectorXcd Wb = sw.asDiagonal() * b;
    const Eigen::VectorXcd c = -WA.completeOrthogonalDecomposition().solve(Wb);
    const Eigen::VectorXd err = (b + A * c).cwiseAbs();
    const double sup = err.maxCoeff();
    if (sup < best) {
      best = sup;
      best_c = c;
    }
    Eigen::VectorXd next = w.cwiseProduct(err);
    const double total = next.sum();
    if (!(total > 0.0)) break;
    next /= total;
    if ((next - w).cwiseAbs().maxCoeff() < 1e-15) break;
    w = next;
  }

  Poly<S> u = u0;
  for (Eigen::Index j = 0; j < B; ++j) {
    if (best_c(j) == Complex{}) continue;
    u.add(basis[j], from_complex<S>(best_c(j)));
  }
  // Rounding the coefficients into S can move the sup slightly; report the
  // value of the polynomial actually returned.
  const auto uf = to_floating(u);
  double sup = 0.0;
  for (const auto& x : grid) sup = std::max(sup, std::abs(uf.eval(x)));
  return {std::move(u), sup};
}

template MinSupResult<Complex> min_sup_solution(const Form01<Complex>&, double, const MinSupOptions&);
template MinSupResult<GaussianRational> min_sup_solution(const Form01<GaussianRational>&, double,
                                                         const MinSupOptions&);

// ---------------------------------------------------------------------------

PolyFunction restrict_to_line(const PolyForm01& f, std::span<const Complex> a,
                              std::span<const Complex> v) {
  const auto n = f.n();
  require(a.size() == n && v.size() == n, "line data must match the form dimension");
  std::vector<PolyFunction> zs, zbs;
  for (std::uint32_t i = 0; i < n; ++i) {
    zs.push_back(PolyFunction::constant(1, a[i]) + PolyFunction::z(1, 0).scaled(v[i]));
    zbs.push_back(PolyFunction::constant(1, std::conj(a[i])) + PolyFunction::zbar(1, 0).scaled(std::conj(v[i])));
  }
  PolyFunction out(1);
  for (std::uint32_t j = 0; j < n; ++j) {
    for (const auto& [e, c] : f.components[j].terms()) {
      auto term = PolyFunction::constant(1, c * std::conj(v[j]));
      for (std::uint32_t i = 0; i < n; ++i) {
        for (std::uint32_t k = 0; k < e[i]; ++k) term = term * zs[i];
        for (std::uint32_t k = 0; k < e[n + i]; ++k) term = term * zbs[i];
      }
      out += term;
    }
  }
  return out;
}

namespace {

template <int N, class F>
Complex gauss_legendre(F&& f, double a, double b) {
  return boost::math::quadrature::gauss<double, N>::integrate(std::forward<F>(f), a, b);
}

template <class F>
Complex radial_rule(std::uint32_t nodes, F&& f, double a, double b) {
  if (b <= a) return {};
  switch (nodes) {
    case 32: return gauss_legendre<32>(f, a, b);
    case 64: return gauss_legendre<64>(f, a, b);
    case 128: return gauss_legendre<128>(f, a, b);
    case 256: return gauss_legendre<256>(f, a, b);
    default: fail(ErrorCode::kInvalidArgument, "radial node count must be 32, 64, 128 or 256");
  }
}

class SliceSolver {
 public:
  SliceSolver(const PolyFunction& g, double radius, const SliceOptions& opts)
      : g_(g), radius_(radius), opts_(opts) {
    require(g.n() == 1, "slice data must be a one-variable function");
    require(radius > 0.0, "radius must be positive");
    require(opts.angular >= 4, "need at least four angular nodes");
    K_ = static_cast<int>(std::min<std::uint32_t>(g.degree(), opts.angular / 2 - 1));
    for (std::uint32_t j = 0; j < opts.angular; ++j) {
      const double phi = 2.0 * std::numbers::pi * j / opts.angular;
      nodes_.emplace_back(std::cos(phi), std::sin(phi));
    }
  }

  // Angular modes a_m(s), m = -K..K, by the ring DFT.
  std::vector<Complex> modes(double s) const {
    const auto M = nodes_.size();
    std::vector<Complex> ring(M);
    for (std::size_t j = 0; j < M; ++j) {
      const Complex z = s * nodes_[j];
      ring[j] = g_.eval(std::span<const Complex>(&z, 1));
    }
    std::vector<Complex> a(2 * K_ + 1);
    for (int m = -K_; m <= K_; ++m) {
      Complex acc{};
      for (std::size_t j = 0; j < M; ++j) {
        // e^{-imφ_j} = conj(node)^m for m >= 0, node^{|m|} otherwise
        const std::size_t idx = (static_cast<std::size_t>((m % static_cast<int>(M) + M)) * j) % M;
        acc += ring[j] * std::conj(nodes_[idx]);
      }
      a[m + K_] = acc / static_cast<double>(M);
    }
    return a;
  }

  Complex solve(Complex z) const {
    const double r = std::abs(z);
    auto inner = [&](double s) {
      const auto a = modes(s);
      Complex acc{};
      Complex ratio = 1.0;  // (s/z)^{-m} for m = 0, -1, -2, ...
      for (int m = 0; m >= -K_; --m) {
        acc += a[m + K_] * ratio;
        ratio *= s / z;
      }
      return s * acc / z;
    };
    auto outer = [&](double s) {
      const auto a = modes(s);
      Complex acc{};
      Complex zp = 1.0 / s;  // z^{m-1} s^{-m} for m = 1, 2, ...
      for (int m = 1; m <= K_; ++m) {
        acc += a[m + K_] * zp;
        zp *= z / s;
      }
      return -s * acc;
    };
    Complex total{};
    if (r > 0.0) total += radial_rule(opts_.radial, inner, 0.0, r);
    total += radial_rule(opts_.radial, outer, r, radius_);
    return 2.0 * total;
  }

 private:
  const PolyFunction& g_;
  double radius_;
  SliceOptions opts_;
  int K_ = 0;
  std::vector<Complex> nodes_;
};

}  // namespace

SliceSolution cauchy_pompeiu_slice_solve(const PolyFunction& g, double radius,
                                         std::span<const Complex> points, const SliceOptions& opts) {
  SliceSolver solver(g, radius, opts);
  SliceSolution out;
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (std::abs(points[i]) >= radius) {
      out.skipped.push_back(i);
    } else {
      kept.push_back(i);
    }
  }
  out.points.resize(kept.size());
  out.values.resize(kept.size());
  parallel_for(kept.size(), [&](std::size_t i) {
    out.points[i] = points[kept[i]];
    out.values[i] = solver.solve(points[kept[i]]);
  });
  return out;
}

std::vector<Complex> slice_grid(double radius, std::uint32_t radii, std::uint32_t angles, double step) {
  std::vector<Complex> out;
  for (std::uint32_t i = 0; i < radii; ++i) {
    const double s = radius * (i + 1) / (radii + 1);
    if (s + 2.0 * step >= radius) continue;
    for (std::uint32_t j = 0; j < angles; ++j) {
      const double phi = 2.0 * std::numbers::pi * (j + 0.25) / angles;
      out.emplace_back(s * std::cos(phi), s * std::sin(phi));
    }
  }
  return out;
}

Complex stencil_dbar(const std::function<Complex(Complex)>& h, Complex z, double step) {
  Complex acc{};
  for (int j = 0; j < 8; ++j) {
    const double phi = 2.0 * std::numbers::pi * j / 8.0;
    const Complex e(std::cos(phi), std::sin(phi));
    acc += e * h(z + step * e);
  }
  return acc / (8.0 * step);
}

double slice_dbar_residual(const PolyFunction& g, double radius, std::span<const Complex> points,
                           const SliceOptions& opts) {
  SliceSolver solver(g, radius, opts);
  std::vector<double> res(points.size(), 0.0);
  parallel_for(points.size(), [&](std::size_t i) {
    const Complex z = points[i];
    if (std::abs(z) + opts.stencil_step >= radius) return;
    const Complex d = stencil_dbar([&](Complex w) { return solver.solve(w); }, z, opts.stencil_step);
    res[i] = std::abs(d - g.eval(std::span<const Complex>(&z, 1)));
  });
  return res.empty() ? 0.0 : *std::max_element(res.begin(), res.end());
}

// ---------------------------------------------------------------------------

std::uint32_t condensation_offset(const SumSpaceSpec& space, std::uint32_t p) {
  require(p >= 2 && p - 1 <= space.block_count(), "no block for this p");
  return static_cast<std::uint32_t>(space.coordinate_offset(p - 1));
}

namespace {

template <class S>
S inverse_self_power(std::uint32_t p) {
  if constexpr (std::is_same_v<S, Complex>) {
    return std::pow(static_cast<double>(p), -static_cast<double>(p));
  } else {
    return GaussianRational(Rational(1) / Rational(boost::multiprecision::pow(BigInt(p), p)));
  }
}

}  // namespace

template <class S>
CondensedForm<S> condense(const CondensationSpec<S>& spec, const CmOptions& cm) {
  require(spec.P >= 2, "condensation needs P >= 2");
  std::vector<Block> blocks;
  for (std::uint32_t p = 2; p <= spec.P; ++p) {
    auto it = spec.family.find(p);
    require(it != spec.family.end(), "family has no member for p = " + std::to_string(p));
    require(it->second.form.n() == it->second.n, "member form dimension differs from n(p)");
    require(it->second.n >= 1, "n(p) must be positive");
    blocks.push_back({static_cast<double>(p), it->second.n});
  }
  require(spec.family.size() == spec.P - 1, "family has members outside 2..P");

  CondensedForm<S> out;
  out.space = SumSpaceSpec(blocks, OuterSpace::lq(1.0));
  const auto N = static_cast<std::uint32_t>(out.space.coordinate_count());
  out.form = Form01<S>(N);
  for (std::uint32_t p = 2; p <= spec.P; ++p) {
    const auto& member = spec.family.at(p);
    if (!closed_for_solve(member.form)) {
      fail(ErrorCode::kPrecondition, "family member p = " + std::to_string(p) + " is not ∂̄-closed");
    }
    CmOptions opts = cm;
    opts.p = static_cast<double>(p);
    const double measured = cm_norm(to_floating(member.form), p - 1, 1.0, opts);
    S scale = ScalarTraits<S>::one();
    if (measured > 0.0 && std::abs(measured - 1.0) > 0.02) {
      if constexpr (std::is_same_v<S, Complex>) {
        scale = 1.0 / measured;
      } else {
        scale = GaussianRational::from_double(1.0 / measured);
      }
    }
    const S weight = inverse_self_power<S>(p);
    out.weights.emplace(p, weight);
    out.scale_factors.emplace(p, scale);
    out.measured_norms.emplace(p, measured);
    out.form += pullback_projection(member.form.scaled(weight * scale), N,
                                    condensation_offset(out.space, p));
  }
  return out;
}

template CondensedForm<Complex> condense(const CondensationSpec<Complex>&, const CmOptions&);
template CondensedForm<GaussianRational> condense(const CondensationSpec<GaussianRational>&,
                                                  const CmOptions&);

// ---------------------------------------------------------------------------

std::vector<GrowthRow> growth_table(const FamilyGenerator& family, std::span<const double> radii,
                                    std::uint32_t p_min, std::uint32_t p_max,
                                    const MinSupOptions& minsup, const CmOptions& cm) {
  require(p_min >= 2 && p_min <= p_max, "need 2 <= p_min <= p_max");
  for (double r : radii) require(r > 0.0, "radii must be positive");
  std::vector<GrowthRow> rows;
  for (std::uint32_t p = p_min; p <= p_max; ++p) {
    const auto member = family(p);
    if (!closed_for_solve(member.form)) {
      fail(ErrorCode::kPrecondition, "family member p = " + std::to_string(p) + " is not ∂̄-closed");
    }
    CmOptions copts = cm;
    copts.p = static_cast<double>(p);
    const double norm = cm_norm(member.form, p - 1, 1.0, copts);
    const auto normalized = norm > 0.0 ? member.form.scaled(1.0 / norm) : member.form;
    for (double r : radii) {
      MinSupOptions mopts = minsup;
      mopts.p = static_cast<double>(p);
      const auto sol = min_sup_solution(normalized, r, mopts);
      rows.push_back({p, member.n, r, norm, sol.sup});
    }
  }
  return rows;
}

FamilyGenerator builtin_family(const std::string& name, std::uint32_t n) {
  require(n >= 1, "family dimension must be positive");
  if (name == "zbar-power") {
    return [n](std::uint32_t p) {
      FamilyMember<Complex> m{n, 1.0 / p, PolyForm01(n)};
      for (std::uint32_t j = 0; j < n; ++j) {
        ExponentPair e(2 * n, 0);
        e[n + j] = p - 1;
        m.form.components[j].add(e, 1.0);
      }
      return m;
    };
  }
  if (name == "zero") {
    return [n](std::uint32_t p) { return FamilyMember<Complex>{n, 1.0 / p, PolyForm01(n)}; };
  }
  fail(ErrorCode::kInvalidArgument, "unknown family '" + name + "'");
}

}  // namespace dbarlab
