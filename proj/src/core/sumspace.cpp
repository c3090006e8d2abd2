#include "sumspace.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "error.hpp"

namespace dbarlab {

SumSpaceSpec::SumSpaceSpec(std::vector<Block> blocks, OuterSpace outer)
    : blocks_(std::move(blocks)), outer_(outer) {
  require(!blocks_.empty(), "sum space needs at least one block");
  for (const auto& b : blocks_) {
    require(b.dim >= 1, "block dimension must be >= 1");
    require(b.p >= 1.0, "block exponent p must be >= 1");
  }
  if (outer_.kind == OuterSpace::Kind::kLq) {
    require(outer_.q >= 1.0 && std::isfinite(outer_.q), "outer ℓ_q needs q in [1, ∞)");
  }
}

SumSpaceSpec SumSpaceSpec::single(double p, std::uint32_t dim) {
  return SumSpaceSpec({Block{p, dim}}, OuterSpace::lq(1.0));
}

const Block& SumSpaceSpec::block(std::uint32_t n) const {
  require(n >= 1 && n <= blocks_.size(), "block index " + std::to_string(n) + " out of range");
  return blocks_[n - 1];
}

std::size_t SumSpaceSpec::coordinate_count(std::optional<std::uint32_t> n) const {
  const std::size_t upto = n ? std::min<std::size_t>(*n, blocks_.size()) : blocks_.size();
  std::size_t total = 0;
  for (std::size_t i = 0; i < upto; ++i) total += blocks_[i].dim;
  return total;
}

std::size_t SumSpaceSpec::coordinate_offset(std::uint32_t n) const {
  require(n >= 1 && n <= blocks_.size(), "block index out of range");
  return coordinate_count(n - 1);
}

SumVector SumVector::from_flat(const SumSpaceSpec& spec, std::span<const Complex> flat) {
  require(flat.size() <= spec.coordinate_count(), "flat vector longer than the space");
  Components comps;
  std::size_t offset = 0;
  for (std::uint32_t n = 1; n <= spec.block_count() && offset < flat.size(); ++n) {
    const auto dim = spec.block(n).dim;
    std::vector<Complex> v(dim, Complex{});
    for (std::uint32_t i = 0; i < dim && offset + i < flat.size(); ++i) v[i] = flat[offset + i];
    offset += dim;
    if (std::any_of(v.begin(), v.end(), [](Complex c) { return c != Complex{}; })) {
      comps.emplace(n, std::move(v));
    }
  }
  return SumVector(std::move(comps));
}

std::vector<Complex> SumVector::block(const SumSpaceSpec& spec, std::uint32_t n) const {
  auto it = components_.find(n);
  if (it != components_.end()) return it->second;
  return std::vector<Complex>(spec.block(n).dim, Complex{});
}

Complex SumVector::coordinate(std::uint32_t n, std::uint32_t coord) const {
  auto it = components_.find(n);
  if (it == components_.end() || coord == 0 || coord > it->second.size()) return {};
  return it->second[coord - 1];
}

std::vector<Complex> SumVector::flat(const SumSpaceSpec& spec) const {
  std::vector<Complex> out(spec.coordinate_count(), Complex{});
  for (const auto& [n, v] : components_) {
    if (n > spec.block_count()) continue;
    const auto off = spec.coordinate_offset(n);
    std::copy(v.begin(), v.end(), out.begin() + static_cast<std::ptrdiff_t>(off));
  }
  return out;
}

void SumVector::set_block(std::uint32_t n, std::vector<Complex> values) {
  require(n >= 1, "block positions are 1-based");
  components_[n] = std::move(values);
}

bool ScaleSequence::in_s1() const {
  return std::all_of(values.begin(), values.end(), [](double s) { return s >= 0.0 && s < 1.0; });
}

bool ScaleSequence::is_nonincreasing() const {
  return std::is_sorted(values.rbegin(), values.rend());
}

double lp_norm(std::span<const Complex> v, double p) {
  if (std::isinf(p)) {
    double m = 0.0;
    for (auto c : v) m = std::max(m, std::abs(c));
    return m;
  }
  if (p == 1.0) {
    double s = 0.0;
    for (auto c : v) s += std::abs(c);
    return s;
  }
  if (p == 2.0) {
    double scale = 0.0;
    for (auto c : v) scale = std::max(scale, std::abs(c));
    if (scale == 0.0) return 0.0;
    double s = 0.0;
    for (auto c : v) s += std::norm(c / scale);
    return scale * std::sqrt(s);
  }
  double scale = 0.0;
  for (auto c : v) scale = std::max(scale, std::abs(c));
  if (scale == 0.0) return 0.0;
  double s = 0.0;
  for (auto c : v) s += std::pow(std::abs(c) / scale, p);
  return scale * std::pow(s, 1.0 / p);
}

double outer_norm(const OuterSpace& outer, std::span<const double> values) {
  if (outer.kind == OuterSpace::Kind::kC0) {
    double m = 0.0;
    for (double v : values) m = std::max(m, v);
    return m;
  }
  std::vector<Complex> as_complex(values.begin(), values.end());
  return lp_norm(as_complex, outer.q);
}

void validate(const SumSpaceSpec& spec, const SumVector& x) {
  for (const auto& [n, v] : x.components()) {
    require(n >= 1 && n <= spec.block_count(),
            "vector has a component on block " + std::to_string(n) + " outside the space");
    require(v.size() == spec.block(n).dim,
            "block " + std::to_string(n) + " has dimension " + std::to_string(v.size()) +
                ", expected " + std::to_string(spec.block(n).dim));
  }
}

std::vector<double> block_norms(const SumSpaceSpec& spec, const SumVector& x) {
  validate(spec, x);
  std::vector<double> out(spec.block_count(), 0.0);
  for (const auto& [n, v] : x.components()) out[n - 1] = lp_norm(v, spec.block(n).p);
  return out;
}

double norm(const SumSpaceSpec& spec, const SumVector& x) {
  const auto y = block_norms(spec, x);
  return outer_norm(spec.outer(), y);
}

SumVector include(const SumSpaceSpec& spec, std::uint32_t n, std::vector<Complex> v) {
  require(v.size() == spec.block(n).dim, "include: vector does not match block dimension");
  SumVector x;
  x.set_block(n, std::move(v));
  return x;
}

SumVector project(const SumVector& x, std::uint32_t m, std::optional<std::uint32_t> n) {
  require(m >= 1, "project: m must be >= 1");
  require(!n || m <= *n, "project: need m <= n");
  SumVector::Components kept;
  for (const auto& [pos, v] : x.components()) {
    if (pos >= m && (!n || pos <= *n)) kept.emplace(pos, v);
  }
  return SumVector(std::move(kept));
}

double tail_sums(const SumSpaceSpec& spec, const SumVector& x, std::uint32_t n) {
  const auto y = block_norms(spec, x);
  double acc = 0.0;
  for (std::size_t i = (n >= 1 ? n - 1 : 0); i < y.size(); ++i) acc += y[i];
  return acc;
}

SumVector scale(const ScaleSequence& sigma, const SumVector& x) {
  SumVector::Components out;
  for (const auto& [pos, v] : x.components()) {
    const double s = sigma.at(pos);
    if (s == 0.0) continue;
    std::vector<Complex> w(v);
    for (auto& c : w) c *= s;
    out.emplace(pos, std::move(w));
  }
  return SumVector(std::move(out));
}

}  // namespace dbarlab
