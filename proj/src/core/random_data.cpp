#include "random_data.hpp"

#include <cmath>

namespace dbarlab {

GaussianRational random_gaussian_rational(Rng& rng) {
  return {Rational(rng.uniform_int(-9, 9), rng.uniform_int(1, 4)),
          Rational(rng.uniform_int(-9, 9), rng.uniform_int(1, 4))};
}

ExactPolynomial random_sum_polynomial(Rng& rng, const SumSpaceSpec& spec, std::uint32_t num_blocks,
                                      std::uint32_t max_degree, std::uint32_t terms) {
  ExactPolynomial p;
  for (std::uint32_t t = 0; t < terms; ++t) {
    std::vector<VarPower> powers;
    for (std::uint32_t b = 1; b <= num_blocks; ++b) {
      auto left = static_cast<std::uint32_t>(rng.uniform_int(0, static_cast<int>(max_degree)));
      const auto dim = spec.block(b).dim;
      std::vector<std::uint32_t> exps(dim, 0);
      while (left-- > 0) ++exps[static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(dim) - 1))];
      for (std::uint32_t c = 0; c < dim; ++c) {
        if (exps[c] > 0) powers.push_back({b, c + 1, exps[c]});
      }
    }
    p.add(make_monomial(std::move(powers)), random_gaussian_rational(rng));
  }
  return p;
}

Polynomial random_khom(Rng& rng, const SumSpaceSpec& spec, const MultiIndex& k, std::uint32_t terms) {
  Polynomial p;
  for (std::uint32_t t = 0; t < terms; ++t) {
    std::vector<VarPower> powers;
    for (const auto& [b, deg] : k.entries()) {
      const auto dim = spec.block(b).dim;
      std::vector<std::uint32_t> exps(dim, 0);
      for (std::uint32_t i = 0; i < deg; ++i) {
        ++exps[static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(dim) - 1))];
      }
      for (std::uint32_t c = 0; c < dim; ++c) {
        if (exps[c] > 0) powers.push_back({b, c + 1, exps[c]});
      }
    }
    p.add(make_monomial(std::move(powers)), rng.complex_normal());
  }
  return p;
}

ExactPolyFunction random_exact_poly(Rng& rng, std::uint32_t n, std::uint32_t degree, std::uint32_t terms) {
  ExactPolyFunction u(n);
  for (std::uint32_t t = 0; t < terms; ++t) {
    ExponentPair e(2 * n, 0);
    const int d = rng.uniform_int(0, static_cast<int>(degree));
    for (int i = 0; i < d; ++i) ++e[static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(2 * n) - 1))];
    u.add(e, random_gaussian_rational(rng));
  }
  return u;
}

MHExpansion geometric_expansion(std::uint32_t max_degree) {
  MHExpansion e{SumSpaceSpec::single(1.0, 1), 1.0, {}};
  for (std::uint32_t d = 0; d <= max_degree; ++d) {
    const double c = std::ldexp(1.0, -static_cast<int>(d));
    Polynomial p;
    p.add(make_monomial({{1, 1, d}}), c);
    auto k = d == 0 ? MultiIndex{} : MultiIndex::from_entries({{1, d}});
    auto term = KHomPolynomial::make(k, std::move(p));
    term.norm = c;
    e.terms.emplace(k, std::move(term));
  }
  return e;
}

namespace {

std::vector<GaussianRational> random_exact_vector(Rng& rng, std::uint32_t n) {
  std::vector<GaussianRational> v(n);
  for (auto& c : v) c = random_gaussian_rational(rng);
  return v;
}

Mat<GaussianRational> random_exact_mat(Rng& rng, std::uint32_t m) {
  Mat<GaussianRational> out(m, m);
  for (auto& c : out.a) c = random_gaussian_rational(rng);
  return out;
}

}  // namespace

GTangent<GaussianRational> random_exact_tangent(Rng& rng, std::uint32_t N, const LieGroupModel& g) {
  GTangent<GaussianRational> v;
  v.x = random_exact_vector(rng, N);
  for (auto& c : v.x) c = c * GaussianRational(Rational(1, 20));
  if (g.kind == LieGroupModel::Kind::kAdditive) {
    v.z = random_exact_mat(rng, 1);
  } else {
    // Off-diagonal entries have modulus < 9√2/(40m), so z stays diagonally dominant.
    v.z = Mat<GaussianRational>::identity(g.m) +
          random_exact_mat(rng, g.m).scaled(GaussianRational(Rational(1, 40 * static_cast<int>(g.m))));
  }
  v.zeta10 = random_exact_vector(rng, N);
  v.zeta01 = random_exact_vector(rng, N);
  v.nu10 = random_exact_mat(rng, g.m);
  v.nu01 = random_exact_mat(rng, g.m);
  return v;
}

GForm01<GaussianRational> random_exact_gform(Rng& rng, std::uint32_t N, const LieGroupModel& g,
                                             std::uint32_t degree) {
  GForm01<GaussianRational> f(N, g);
  for (auto& comp : f.entries) {
    for (auto& p : comp) p = random_exact_poly(rng, N, degree, 2);
  }
  return f;
}

Polynomial to_floating(const ExactPolynomial& p) {
  Polynomial out;
  for (const auto& [m, c] : p.terms()) out.add(m, ScalarTraits<GaussianRational>::to_complex(c));
  return out;
}

}  // namespace dbarlab
