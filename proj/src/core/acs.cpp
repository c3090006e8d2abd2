#include "acs.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

#include "dbar.hpp"
#include "parallel.hpp"

namespace dbarlab {

namespace {

template <class S>
double abs_of(const S& v) {
  return std::abs(ScalarTraits<S>::to_complex(v));
}

template <class S>
std::vector<S> conj_vec(const std::vector<S>& v) {
  std::vector<S> out(v);
  for (auto& c : out) c = ScalarTraits<S>::conj(c);
  return out;
}

template <class S>
std::vector<S> sub_vec(const std::vector<S>& a, const std::vector<S>& b) {
  require(a.size() == b.size(), "vector lengths differ");
  std::vector<S> out(a);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] -= b[i];
  return out;
}

template <class S>
std::vector<S> add_vec(const std::vector<S>& a, const std::vector<S>& b) {
  require(a.size() == b.size(), "vector lengths differ");
  std::vector<S> out(a);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += b[i];
  return out;
}

}  // namespace

template <class S>
Mat<S> left_solve(const Mat<S>& z, const Mat<S>& y) {
  require(z.rows == z.cols && z.rows == y.rows, "left_solve shape mismatch");
  const auto m = z.rows;
  Mat<S> a = z;
  Mat<S> b = y;
  for (std::uint32_t col = 0; col < m; ++col) {
    std::uint32_t piv = col;
    for (std::uint32_t r = col + 1; r < m; ++r) {
      if (abs_of(a(r, col)) > abs_of(a(piv, col))) piv = r;
    }
    if (ScalarTraits<S>::is_zero(a(piv, col))) {
      fail(ErrorCode::kPrecondition, "group element is singular");
    }
    if (piv != col) {
      for (std::uint32_t j = 0; j < m; ++j) std::swap(a(col, j), a(piv, j));
      for (std::uint32_t j = 0; j < b.cols; ++j) std::swap(b(col, j), b(piv, j));
    }
    for (std::uint32_t r = 0; r < m; ++r) {
      if (r == col || ScalarTraits<S>::is_zero(a(r, col))) continue;
      const S factor = a(r, col) / a(col, col);
      for (std::uint32_t j = col; j < m; ++j) a(r, j) -= factor * a(col, j);
      for (std::uint32_t j = 0; j < b.cols; ++j) b(r, j) -= factor * b(col, j);
    }
  }
  for (std::uint32_t r = 0; r < m; ++r) {
    for (std::uint32_t j = 0; j < b.cols; ++j) b(r, j) /= a(r, r);
  }
  return b;
}

template <class S>
Mat<S> GForm01<S>::component(std::uint32_t j, const std::vector<S>& x) const {
  const auto m = group.m;
  Mat<S> out(m, m);
  for (std::uint32_t r = 0; r < m; ++r) {
    for (std::uint32_t c = 0; c < m; ++c) out(r, c) = entry(j, r, c).evaluate(x);
  }
  return out;
}

template <class S>
Mat<S> GForm01<S>::apply(const std::vector<S>& x, const std::vector<S>& zeta) const {
  require(zeta.size() == N && x.size() == N, "base vector dimension mismatch");
  Mat<S> out(group.m, group.m);
  for (std::uint32_t j = 0; j < N; ++j) {
    if (ScalarTraits<S>::is_zero(zeta[j])) continue;
    out += component(j, x).scaled(zeta[j]);
  }
  return out;
}

template <class S>
void GForm01<S>::validate() const {
  require(entries.size() == N, "form must have N components");
  for (const auto& comp : entries) {
    require(comp.size() == std::size_t{group.m} * group.m, "component must hold m×m entries");
    for (const auto& p : comp) require(p.n() == N, "entry polynomial dimension must be N");
  }
}

template <class S>
GTangent<S> operator+(const GTangent<S>& a, const GTangent<S>& b) {
  return {a.x, a.z, add_vec(a.zeta10, b.zeta10), add_vec(a.zeta01, b.zeta01), a.nu10 + b.nu10,
          a.nu01 + b.nu01};
}

template <class S>
GTangent<S> operator-(const GTangent<S>& a, const GTangent<S>& b) {
  return {a.x, a.z, sub_vec(a.zeta10, b.zeta10), sub_vec(a.zeta01, b.zeta01), a.nu10 - b.nu10,
          a.nu01 - b.nu01};
}

template <class S>
GTangent<S> conj(const GTangent<S>& v) {
  return {v.x, v.z, conj_vec(v.zeta01), conj_vec(v.zeta10), v.nu01.conj(), v.nu10.conj()};
}

template <class S>
Mat<S> left_translate(const LieGroupModel& g, const Mat<S>& z, const Mat<S>& nu) {
  return g.kind == LieGroupModel::Kind::kAdditive ? nu : z * nu;
}

template <class S>
Mat<S> maurer_cartan(const LieGroupModel& g, const Mat<S>& z, const Mat<S>& nu10) {
  return g.kind == LieGroupModel::Kind::kAdditive ? nu10 : left_solve(z, nu10);
}

template <class S>
MembershipResidual is_antiholomorphic_tangent(const GTangent<S>& v, const GForm01<S>& f, double tol) {
  MembershipResidual r;
  for (const auto& c : v.zeta10) r.zeta10 = std::max(r.zeta10, abs_of(c));
  r.fiber = (maurer_cartan(f.group, v.z, v.nu10) - f.apply(v.x, v.zeta01)).max_abs();
  r.member = r.zeta10 <= tol && r.fiber <= tol;
  return r;
}

template <class S>
std::pair<GTangent<S>, GTangent<S>> decompose(const GTangent<S>& v, const GForm01<S>& f) {
  GTangent<S> v1;
  v1.x = v.x;
  v1.z = v.z;
  v1.zeta10.assign(v.zeta10.size(), ScalarTraits<S>::zero());
  v1.zeta01 = v.zeta01;
  v1.nu10 = left_translate(f.group, v.z, f.apply(v.x, v.zeta01));
  v1.nu01 = v.nu01 - left_translate(f.group, v.z, f.apply(v.x, conj_vec(v.zeta10))).conj();
  GTangent<S> v2 = v - v1;
  return {std::move(v1), std::move(v2)};
}

template <class S>
Mat<S> bracket(const GForm01<S>& phi, const GForm01<S>& psi, const std::vector<S>& x,
               const std::vector<S>& zeta, const std::vector<S>& zeta2) {
  const auto m = phi.group.m;
  if (phi.group.abelian()) return Mat<S>(m, m);
  return commutator(phi.apply(x, zeta), psi.apply(x, zeta2)) -
         commutator(phi.apply(x, zeta2), psi.apply(x, zeta));
}

template <class S>
Mat<S> dbar_value(const GForm01<S>& f, const std::vector<S>& x, const std::vector<S>& zeta,
                  const std::vector<S>& zeta2) {
  const auto m = f.group.m;
  Mat<S> out(m, m);
  for (std::uint32_t r = 0; r < m; ++r) {
    for (std::uint32_t c = 0; c < m; ++c) {
      std::vector<Poly<S>> comps;
      for (std::uint32_t j = 0; j < f.N; ++j) comps.push_back(f.entry(j, r, c));
      const auto report = is_closed(Form01<S>(std::move(comps)));
      S acc = ScalarTraits<S>::zero();
      for (const auto& res : report.residuals) {
        if (res.value.is_zero()) continue;
        const S wedge = zeta[res.i] * zeta2[res.j] - zeta[res.j] * zeta2[res.i];
        acc += res.value.evaluate(x) * wedge;
      }
      out(r, c) = acc;
    }
  }
  return out;
}

template <class S>
Mat<S> integrability_residual(const GForm01<S>& f, const std::vector<S>& x,
                              const std::vector<S>& zeta, const std::vector<S>& zeta2) {
  return dbar_value(f, x, zeta, zeta2) +
         bracket(f, f, x, zeta, zeta2).scaled(ScalarTraits<S>::ratio(1, 2));
}

template <class S>
Mat<S> GMap<S>::value(const std::vector<S>& x) const {
  const auto m = group.m;
  require(entries.size() == std::size_t{m} * m, "map must hold m×m entries");
  Mat<S> out(m, m);
  for (std::uint32_t i = 0; i < m * m; ++i) out.a[i] = entries[i].evaluate(x);
  return out;
}

template <class S>
Mat<S> GMap<S>::antiholomorphic_differential(const std::vector<S>& x,
                                             const std::vector<S>& zeta01) const {
  const auto m = group.m;
  require(zeta01.size() == N, "base vector dimension mismatch");
  Mat<S> out(m, m);
  for (std::uint32_t j = 0; j < N; ++j) {
    if (ScalarTraits<S>::is_zero(zeta01[j])) continue;
    for (std::uint32_t i = 0; i < m * m; ++i) out.a[i] += entries[i].dzbar(j).evaluate(x) * zeta01[j];
  }
  return out;
}

template <class S>
Mat<S> dbar_g(const GMap<S>& u, const std::vector<S>& x, const std::vector<S>& zeta01) {
  return maurer_cartan(u.group, u.value(x), u.antiholomorphic_differential(x, zeta01));
}

template <class S>
double section_residual(const GMap<S>& u, const GForm01<S>& f, const std::vector<S>& x,
                        const std::vector<S>& zeta01) {
  return (dbar_g(u, x, zeta01) - f.apply(x, zeta01)).max_abs();
}

template <class S>
GForm01<S> gauge_transport(const GForm01<S>& f, const Poly<S>& u) {
  require(f.group.kind == LieGroupModel::Kind::kAdditive, "gauge transport needs the additive group");
  require(u.n() == f.N, "u must live on the base");
  GForm01<S> g = f;
  for (std::uint32_t j = 0; j < f.N; ++j) g.entry(j, 0, 0) += u.dzbar(j);
  return g;
}

template <class S>
GTangent<S> pushforward(const Poly<S>& u, const GTangent<S>& v) {
  const auto N = u.n();
  require(v.x.size() == N, "tangent base dimension differs from u");
  const auto ubar = u.conj();
  GTangent<S> w = v;
  w.z(0, 0) += u.evaluate(v.x);
  for (std::uint32_t j = 0; j < N; ++j) {
    w.nu10(0, 0) += u.dz(j).evaluate(v.x) * v.zeta10[j] + u.dzbar(j).evaluate(v.x) * v.zeta01[j];
    w.nu01(0, 0) += ubar.dz(j).evaluate(v.x) * v.zeta10[j] + ubar.dzbar(j).evaluate(v.x) * v.zeta01[j];
  }
  return w;
}

template <class S>
GForm01<S> scalar_form(const Form01<S>& f) {
  GForm01<S> out(f.n(), LieGroupModel::additive());
  for (std::uint32_t j = 0; j < f.n(); ++j) out.entry(j, 0, 0) = f.components[j];
  return out;
}

#define DBARLAB_ACS_INSTANTIATE(S)                                                                  \
  template Mat<S> left_solve(const Mat<S>&, const Mat<S>&);                                         \
  template struct GForm01<S>;                                                                       \
  template struct GMap<S>;                                                                          \
  template GTangent<S> operator+(const GTangent<S>&, const GTangent<S>&);                           \
  template GTangent<S> operator-(const GTangent<S>&, const GTangent<S>&);                           \
  template GTangent<S> conj(const GTangent<S>&);                                                    \
  template Mat<S> left_translate(const LieGroupModel&, const Mat<S>&, const Mat<S>&);               \
  template Mat<S> maurer_cartan(const LieGroupModel&, const Mat<S>&, const Mat<S>&);                \
  template MembershipResidual is_antiholomorphic_tangent(const GTangent<S>&, const GForm01<S>&,     \
                                                         double);                                   \
  template std::pair<GTangent<S>, GTangent<S>> decompose(const GTangent<S>&, const GForm01<S>&);    \
  template Mat<S> bracket(const GForm01<S>&, const GForm01<S>&, const std::vector<S>&,              \
                          const std::vector<S>&, const std::vector<S>&);                            \
  template Mat<S> dbar_value(const GForm01<S>&, const std::vector<S>&, const std::vector<S>&,       \
                             const std::vector<S>&);                                                \
  template Mat<S> integrability_residual(const GForm01<S>&, const std::vector<S>&,                  \
                                         const std::vector<S>&, const std::vector<S>&);             \
  template Mat<S> dbar_g(const GMap<S>&, const std::vector<S>&, const std::vector<S>&);             \
  template double section_residual(const GMap<S>&, const GForm01<S>&, const std::vector<S>&,        \
                                   const std::vector<S>&);                                          \
  template GForm01<S> gauge_transport(const GForm01<S>&, const Poly<S>&);                           \
  template GTangent<S> pushforward(const Poly<S>&, const GTangent<S>&);                             \
  template GForm01<S> scalar_form(const Form01<S>&);

DBARLAB_ACS_INSTANTIATE(Complex)
DBARLAB_ACS_INSTANTIATE(GaussianRational)

#undef DBARLAB_ACS_INSTANTIATE

// ---------------------------------------------------------------------------

namespace {

Mat<Complex> random_mat(Rng& rng, std::uint32_t m, double scale) {
  Mat<Complex> out(m, m);
  for (auto& v : out.a) v = scale * rng.complex_normal();
  return out;
}

std::vector<Complex> random_vec(Rng& rng, std::uint32_t n, double scale) {
  std::vector<Complex> v(n);
  for (auto& c : v) c = scale * rng.complex_normal();
  return v;
}

PolyFunction random_poly(Rng& rng, std::uint32_t N, std::uint32_t degree, int terms) {
  PolyFunction p(N);
  for (int t = 0; t < terms; ++t) {
    ExponentPair e(2 * N, 0);
    const int d = rng.uniform_int(0, static_cast<int>(degree));
    for (int k = 0; k < d; ++k) ++e[rng.uniform_int(0, static_cast<int>(2 * N - 1))];
    p.add(e, rng.complex_normal());
  }
  return p;
}

}  // namespace

GTangent<Complex> random_tangent(Rng& rng, std::uint32_t N, const LieGroupModel& g) {
  GTangent<Complex> v;
  v.x = random_vec(rng, N, 0.5 / std::sqrt(static_cast<double>(N)));
  v.z = g.kind == LieGroupModel::Kind::kAdditive
            ? random_mat(rng, 1, 1.0)
            : Mat<Complex>::identity(g.m) + random_mat(rng, g.m, 0.3 / g.m);
  v.zeta10 = random_vec(rng, N, 1.0);
  v.zeta01 = random_vec(rng, N, 1.0);
  v.nu10 = random_mat(rng, g.m, 1.0);
  v.nu01 = random_mat(rng, g.m, 1.0);
  return v;
}

GForm01<Complex> random_gform(Rng& rng, std::uint32_t N, const LieGroupModel& g, std::uint32_t degree) {
  GForm01<Complex> f(N, g);
  for (auto& comp : f.entries) {
    for (auto& p : comp) p = random_poly(rng, N, degree, 3);
  }
  return f;
}

double gauge_transport_residual(const GForm01<Complex>& f, const PolyFunction& u, std::size_t samples,
                                std::uint64_t seed) {
  const auto g = gauge_transport(f, u);
  Rng rng(seed);
  std::vector<GTangent<Complex>> vs;
  for (std::size_t s = 0; s < samples; ++s) {
    auto v = random_tangent(rng, f.N, f.group);
    std::fill(v.zeta10.begin(), v.zeta10.end(), Complex{});
    v.nu10 = left_translate(f.group, v.z, f.apply(v.x, v.zeta01));
    vs.push_back(std::move(v));
  }
  std::vector<double> res(vs.size());
  parallel_for(vs.size(), [&](std::size_t i) {
    const auto r = is_antiholomorphic_tangent(pushforward(u, vs[i]), g, 0.0);
    res[i] = std::max(r.zeta10, r.fiber);
  });
  return res.empty() ? 0.0 : *std::max_element(res.begin(), res.end());
}

double maurer_cartan_fd_residual(std::uint32_t m, double h, std::size_t samples, std::uint64_t seed) {
  require(h > 0.0, "difference step must be positive");
  const auto G = LieGroupModel::gl(m);
  Rng rng(seed);
  double worst = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    const auto z = Mat<Complex>::identity(m) + random_mat(rng, m, 0.3 / m);
    const auto X = random_mat(rng, m, 1.0);
    const auto Y = random_mat(rng, m, 1.0);
    auto mu = [&](const Mat<Complex>& at, const Mat<Complex>& v) { return maurer_cartan(G, at, v); };
    auto derivative = [&](const Mat<Complex>& dir, const Mat<Complex>& v) {
      return (mu(z + dir.scaled(h), v) - mu(z - dir.scaled(h), v)).scaled(1.0 / (2.0 * h));
    };
    const auto residual = derivative(X, Y) - derivative(Y, X) + commutator(mu(z, X), mu(z, Y));
    worst = std::max(worst, residual.max_abs());
  }
  return worst;
}

std::size_t antiholomorphic_pair_kernel_dim(const GForm01<Complex>& f, const std::vector<Complex>& x,
                                            const Mat<Complex>& z) {
  const auto N = f.N;
  const auto m = f.group.m;
  const std::size_t complex_dim = 2 * std::size_t{N} + 2 * std::size_t{m} * m;

  auto residuals = [&](const GTangent<Complex>& v) {
    std::vector<Complex> out;
    for (const auto& t : {v, conj(v)}) {
      out.insert(out.end(), t.zeta10.begin(), t.zeta10.end());
      const auto fib = maurer_cartan(f.group, t.z, t.nu10) - f.apply(t.x, t.zeta01);
      out.insert(out.end(), fib.a.begin(), fib.a.end());
    }
    return out;
  };
  auto unit = [&](std::size_t k, Complex value) {
    GTangent<Complex> v{x, z, std::vector<Complex>(N), std::vector<Complex>(N), Mat<Complex>(m, m),
                        Mat<Complex>(m, m)};
    std::size_t i = k;
    if (i < N) { v.zeta10[i] = value; return v; }
    i -= N;
    if (i < N) { v.zeta01[i] = value; return v; }
    i -= N;
    if (i < std::size_t{m} * m) { v.nu10.a[i] = value; return v; }
    i -= std::size_t{m} * m;
    v.nu01.a[i] = value;
    return v;
  };

  const auto rows = static_cast<Eigen::Index>(2 * complex_dim);
  Eigen::MatrixXd L(2 * rows, static_cast<Eigen::Index>(2 * complex_dim));
  Eigen::Index col = 0;
  for (std::size_t k = 0; k < complex_dim; ++k) {
    for (Complex value : {Complex{1.0, 0.0}, Complex{0.0, 1.0}}) {
      const auto r = residuals(unit(k, value));
      for (std::size_t i = 0; i < r.size(); ++i) {
        L(static_cast<Eigen::Index>(2 * i), col) = r[i].real();
        L(static_cast<Eigen::Index>(2 * i + 1), col) = r[i].imag();
      }
      ++col;
    }
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(L);
  return static_cast<std::size_t>(L.cols() - lu.rank());
}

std::vector<ResidualRow> integrability_report(const GForm01<Complex>& f, std::size_t points,
                                              std::size_t vectors, std::uint64_t seed) {
  Rng rng(seed);
  struct Sample {
    std::vector<Complex> x;
    std::vector<std::pair<std::vector<Complex>, std::vector<Complex>>> pairs;
  };
  std::vector<Sample> samples(points);
  for (auto& s : samples) {
    s.x = random_vec(rng, f.N, 0.5 / std::sqrt(static_cast<double>(f.N)));
    for (std::size_t v = 0; v < vectors; ++v) {
      auto a = random_vec(rng, f.N, 1.0);
      auto b = random_vec(rng, f.N, 1.0);
      s.pairs.emplace_back(std::move(a), std::move(b));
    }
  }
  std::vector<ResidualRow> rows(points * vectors);
  parallel_for(rows.size(), [&](std::size_t i) {
    const auto& s = samples[i / vectors];
    const auto& [a, b] = s.pairs[i % vectors];
    rows[i] = {i / vectors, i % vectors, integrability_residual(f, s.x, a, b).max_abs()};
  });
  return rows;
}

}  // namespace dbarlab
