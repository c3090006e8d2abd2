#include "fourier.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "error.hpp"

namespace dbarlab {

namespace {

struct Variable {
  std::uint32_t block;
  std::uint32_t coord;
};

std::vector<Variable> torus_variables(const SumSpaceSpec& spec, std::uint32_t num_blocks) {
  std::vector<Variable> vars;
  const auto nb = std::min<std::size_t>(num_blocks, spec.block_count());
  for (std::uint32_t b = 1; b <= nb; ++b) {
    for (std::uint32_t c = 1; c <= spec.block(b).dim; ++c) vars.push_back({b, c});
  }
  return vars;
}

std::uint32_t node_count(const ExtractionOptions& opts) {
  const std::uint32_t needed = opts.degree_cap + 1;
  const std::uint32_t nodes = opts.nodes == 0 ? needed : opts.nodes;
  if (nodes < needed) {
    fail(ErrorCode::kInvalidArgument,
         "extraction needs at least degree_cap + 1 = " + std::to_string(needed) +
             " nodes per circle, got " + std::to_string(nodes));
  }
  return nodes;
}

std::size_t grid_size(std::uint32_t nodes, std::size_t dims) {
  std::size_t total = 1;
  for (std::size_t i = 0; i < dims; ++i) {
    total *= nodes;
    require(total <= (std::size_t{1} << 26), "torus grid too large for extraction");
  }
  return total;
}

// digits of a linear grid index, axis 0 fastest
void decode(std::size_t index, std::uint32_t base, std::vector<std::uint32_t>& digits) {
  for (auto& d : digits) {
    d = static_cast<std::uint32_t>(index % base);
    index /= base;
  }
}

Monomial monomial_from_digits(const std::vector<Variable>& vars,
                              const std::vector<std::uint32_t>& digits) {
  Monomial m;
  for (std::size_t j = 0; j < vars.size(); ++j) {
    if (digits[j] != 0) m.push_back({vars[j].block, vars[j].coord, digits[j]});
  }
  return m;  // already sorted: vars are in (block, coord) order
}

bool supported_within(const MultiIndex& k, std::uint32_t num_blocks) {
  return k.max_position() <= num_blocks;
}

}  // namespace

Polynomial extract_coefficients(const SumSpaceSpec& spec, const Oracle& f,
                                const ExtractionOptions& opts) {
  const std::uint32_t nodes = node_count(opts);
  require(opts.node_radius > 0.0, "node radius must be positive");
  const auto vars = torus_variables(spec, opts.num_blocks);
  const std::size_t dims = vars.size();
  const std::size_t total = grid_size(nodes, dims);
  const std::size_t flat_len = spec.coordinate_count(opts.num_blocks);

  std::vector<Complex> roots(nodes);
  for (std::uint32_t s = 0; s < nodes; ++s) {
    const double angle = 2.0 * std::numbers::pi * s / nodes;
    roots[s] = {std::cos(angle), std::sin(angle)};
  }

  std::vector<Complex> grid(total);
  {
    std::vector<std::uint32_t> digits(dims);
    std::vector<Complex> flat(flat_len);
    for (std::size_t idx = 0; idx < total; ++idx) {
      decode(idx, nodes, digits);
      for (std::size_t j = 0; j < dims; ++j) flat[j] = opts.node_radius * roots[digits[j]];
      grid[idx] = f(SumVector::from_flat(spec, flat));
    }
  }

  // One axis at a time: G[e] = (1/N) Σ_a F[a] ζ^{-a e}.
  std::vector<Complex> line(nodes);
  std::size_t stride = 1;
  for (std::size_t axis = 0; axis < dims; ++axis) {
    for (std::size_t base = 0; base < total; ++base) {
      if ((base / stride) % nodes != 0) continue;
      for (std::uint32_t e = 0; e < nodes; ++e) {
        Complex acc{};
        for (std::uint32_t a = 0; a < nodes; ++a) {
          acc += grid[base + a * stride] * std::conj(roots[(static_cast<std::uint64_t>(a) * e) % nodes]);
        }
        line[e] = acc / static_cast<double>(nodes);
      }
      for (std::uint32_t e = 0; e < nodes; ++e) grid[base + e * stride] = line[e];
    }
    stride *= nodes;
  }

  double largest = 0.0;
  std::vector<std::uint32_t> digits(dims);
  std::vector<Complex> coeffs(total);
  for (std::size_t idx = 0; idx < total; ++idx) {
    decode(idx, nodes, digits);
    std::uint32_t degree = 0;
    for (auto d : digits) degree += d;
    coeffs[idx] = grid[idx] / std::pow(opts.node_radius, static_cast<double>(degree));
    largest = std::max(largest, std::abs(coeffs[idx]));
  }
  Polynomial out;
  const double cutoff = opts.drop_tolerance * largest;
  for (std::size_t idx = 0; idx < total; ++idx) {
    if (std::abs(coeffs[idx]) <= cutoff) continue;
    decode(idx, nodes, digits);
    out.add(monomial_from_digits(vars, digits), coeffs[idx]);
  }
  return out;
}

std::map<MultiIndex, Polynomial, GradedLess> split_by_multidegree(const Polynomial& p) {
  std::map<MultiIndex, Polynomial, GradedLess> parts;
  for (const auto& [m, c] : p.terms()) parts[block_degrees(m)].add(m, c);
  return parts;
}

Polynomial component(const SumSpaceSpec& spec, const Oracle& f, const MultiIndex& k,
                     const ExtractionOptions& opts) {
  node_count(opts);
  if (!supported_within(k, opts.num_blocks)) return {};
  const auto all = extract_coefficients(spec, f, opts);
  Polynomial out;
  for (const auto& [m, c] : all.terms()) {
    if (block_degrees(m) == k) out.add(m, c);
  }
  return out;
}

Complex block_circle_component_value(const Oracle& f, const MultiIndex& k, const SumVector& x,
                                     std::uint32_t num_blocks, std::uint32_t nodes) {
  require(nodes >= 1, "need at least one node per circle");
  if (!supported_within(k, num_blocks)) return {};
  const std::size_t total = grid_size(nodes, num_blocks);
  std::vector<std::uint32_t> digits(num_blocks);
  Complex acc{};
  for (std::size_t idx = 0; idx < total; ++idx) {
    decode(idx, nodes, digits);
    SumVector::Components rotated;
    std::uint64_t phase = 0;
    for (const auto& [n, v] : x.components()) {
      std::vector<Complex> w(v);
      if (n <= num_blocks) {
        const double angle = 2.0 * std::numbers::pi * digits[n - 1] / nodes;
        const Complex rot{std::cos(angle), std::sin(angle)};
        for (auto& c : w) c *= rot;
      }
      rotated.emplace(n, std::move(w));
    }
    for (std::uint32_t n = 1; n <= num_blocks; ++n) {
      phase += static_cast<std::uint64_t>(k.at(n)) * digits[n - 1];
    }
    const double angle = -2.0 * std::numbers::pi * static_cast<double>(phase % nodes) / nodes;
    acc += f(SumVector(std::move(rotated))) * Complex{std::cos(angle), std::sin(angle)};
  }
  return acc / static_cast<double>(total);
}

// ---------------------------------------------------------------------------
// Exact mode

std::vector<BigInt> cyclotomic_polynomial(std::uint32_t n) {
  require(n >= 1, "cyclotomic index must be >= 1");
  // x^n - 1, then divide by Φ_d for every proper divisor d.
  std::vector<BigInt> poly(n + 1, 0);
  poly[0] = -1;
  poly[n] = 1;
  for (std::uint32_t d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    const auto divisor = cyclotomic_polynomial(d);  // monic
    const std::size_t dd = divisor.size() - 1;
    std::vector<BigInt> quotient(poly.size() - dd, 0);
    for (std::size_t i = poly.size(); i-- > dd;) {
      const BigInt coef = poly[i];
      quotient[i - dd] = coef;
      if (coef == 0) continue;
      for (std::size_t j = 0; j <= dd; ++j) poly[i - dd + j] -= coef * divisor[j];
    }
    poly = std::move(quotient);
  }
  return poly;
}

namespace {

struct GaussInt {
  BigInt re;
  BigInt im;
};

// A group-ring element Σ_s a_s x^s, s in [0, N).
using RingElement = std::vector<GaussInt>;

}  // namespace

ExactPolynomial extract_coefficients_exact(const SumSpaceSpec& spec, const ExactPolynomial& f,
                                           const ExtractionOptions& opts) {
  const std::uint32_t nodes = node_count(opts);
  f.validate(spec);
  for (const auto& [m, c] : f.terms()) {
    const auto k = block_degrees(m);
    for (const auto& e : k.entries()) {
      if (e.first > opts.num_blocks) {
        fail(ErrorCode::kPrecondition, "polynomial depends on blocks past num_blocks");
      }
      if (e.second > opts.degree_cap) {
        fail(ErrorCode::kPrecondition, "polynomial block degree exceeds degree_cap");
      }
    }
  }
  const auto vars = torus_variables(spec, opts.num_blocks);
  const std::size_t dims = vars.size();
  const std::size_t total = grid_size(nodes, dims);

  // Clear denominators so the transform runs over Gaussian integers.
  BigInt common = 1;
  for (const auto& [m, c] : f.terms()) {
    common = boost::multiprecision::lcm(common, boost::multiprecision::denominator(c.re));
    common = boost::multiprecision::lcm(common, boost::multiprecision::denominator(c.im));
  }
  struct IntTerm {
    std::vector<std::uint32_t> exps;  // per torus variable
    GaussInt coef;
  };
  std::vector<IntTerm> int_terms;
  for (const auto& [m, c] : f.terms()) {
    IntTerm t{std::vector<std::uint32_t>(dims, 0), {}};
    for (const auto& v : m) {
      for (std::size_t j = 0; j < dims; ++j) {
        if (vars[j].block == v.block && vars[j].coord == v.coord) t.exps[j] = v.exp;
      }
    }
    const Rational re = c.re * common;
    const Rational im = c.im * common;
    t.coef = {boost::multiprecision::numerator(re), boost::multiprecision::numerator(im)};
    int_terms.push_back(std::move(t));
  }

  // Samples: f(ζ^{a_1}, ..., ζ^{a_D}) = Σ_m c_m ζ^{a·m}.
  std::vector<RingElement> grid(total, RingElement(nodes));
  {
    std::vector<std::uint32_t> digits(dims);
    for (std::size_t idx = 0; idx < total; ++idx) {
      decode(idx, nodes, digits);
      for (const auto& t : int_terms) {
        std::uint64_t s = 0;
        for (std::size_t j = 0; j < dims; ++j) {
          s += static_cast<std::uint64_t>(digits[j]) * t.exps[j];
        }
        auto& slot = grid[idx][s % nodes];
        slot.re += t.coef.re;
        slot.im += t.coef.im;
      }
    }
  }

  std::vector<RingElement> line(nodes, RingElement(nodes));
  std::size_t stride = 1;
  for (std::size_t axis = 0; axis < dims; ++axis) {
    for (std::size_t base = 0; base < total; ++base) {
      if ((base / stride) % nodes != 0) continue;
      for (std::uint32_t e = 0; e < nodes; ++e) {
        RingElement acc(nodes);
        for (std::uint32_t a = 0; a < nodes; ++a) {
          // multiply by ζ^{-a e}: rotate slots
          const std::uint32_t shift =
              (nodes - static_cast<std::uint32_t>((static_cast<std::uint64_t>(a) * e) % nodes)) % nodes;
          const auto& src = grid[base + a * stride];
          for (std::uint32_t s = 0; s < nodes; ++s) {
            if (src[s].re == 0 && src[s].im == 0) continue;
            auto& dst = acc[(s + shift) % nodes];
            dst.re += src[s].re;
            dst.im += src[s].im;
          }
        }
        line[e] = std::move(acc);
      }
      for (std::uint32_t e = 0; e < nodes; ++e) grid[base + e * stride] = std::move(line[e]);
    }
    stride *= nodes;
  }

  const auto phi = cyclotomic_polynomial(nodes);
  const std::size_t phi_deg = phi.size() - 1;
  BigInt scale = common;
  for (std::size_t j = 0; j < dims; ++j) scale *= nodes;

  ExactPolynomial out;
  std::vector<std::uint32_t> digits(dims);
  for (std::size_t idx = 0; idx < total; ++idx) {
    auto& el = grid[idx];
    for (std::size_t deg = nodes; deg-- > phi_deg;) {
      const GaussInt c = el[deg];
      if (c.re == 0 && c.im == 0) continue;
      for (std::size_t i = 0; i <= phi_deg; ++i) {
        el[deg - phi_deg + i].re -= c.re * phi[i];
        el[deg - phi_deg + i].im -= c.im * phi[i];
      }
    }
    for (std::size_t s = 1; s < phi_deg; ++s) {
      if (el[s].re != 0 || el[s].im != 0) {
        fail(ErrorCode::kInternal, "exact torus transform produced a non-rational coefficient");
      }
    }
    if (el[0].re == 0 && el[0].im == 0) continue;
    decode(idx, nodes, digits);
    out.add(monomial_from_digits(vars, digits),
            GaussianRational{Rational(el[0].re, scale), Rational(el[0].im, scale)});
  }
  return out;
}

ExactPolynomial component_exact(const SumSpaceSpec& spec, const ExactPolynomial& f,
                                const MultiIndex& k, const ExtractionOptions& opts) {
  node_count(opts);
  if (!supported_within(k, opts.num_blocks)) return {};
  const auto all = extract_coefficients_exact(spec, f, opts);
  ExactPolynomial out;
  for (const auto& [m, c] : all.terms()) {
    if (block_degrees(m) == k) out.add(m, c);
  }
  return out;
}

}  // namespace dbarlab
