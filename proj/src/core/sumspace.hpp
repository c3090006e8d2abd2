#pragma once

// Y-sums of finite-dimensional ℓ_p(ℂ^n) blocks, modelled by a finite list of
// blocks with an implicit zero tail.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "exact.hpp"

namespace dbarlab {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct Block {
  double p = 2.0;  // in [1, ∞]; ∞ is the max norm
  std::uint32_t dim = 1;

  friend bool operator==(const Block&, const Block&) = default;
};

/// Outer sequence space Y: ℓ_q (q in [1, ∞)) or c₀.
struct OuterSpace {
  enum class Kind { kLq, kC0 };
  Kind kind = Kind::kLq;
  double q = 1.0;

  static OuterSpace lq(double q) { return {Kind::kLq, q}; }
  static OuterSpace c0() { return {Kind::kC0, kInfinity}; }
  bool is_l1() const { return kind == Kind::kLq && q == 1.0; }

  friend bool operator==(const OuterSpace&, const OuterSpace&) = default;
};

class SumSpaceSpec {
 public:
  SumSpaceSpec(std::vector<Block> blocks, OuterSpace outer);

  /// Single block ℓ_p(ℂ^n), which is how a finite-dimensional domain is described.
  static SumSpaceSpec single(double p, std::uint32_t dim);

  const std::vector<Block>& blocks() const { return blocks_; }
  const OuterSpace& outer() const { return outer_; }
  std::size_t block_count() const { return blocks_.size(); }

  /// 1-based block lookup.
  const Block& block(std::uint32_t n) const;

  /// Number of scalar coordinates in blocks 1..n (all blocks when n is empty).
  std::size_t coordinate_count(std::optional<std::uint32_t> n = std::nullopt) const;

  /// Offset of block n's first scalar coordinate in the flattened layout.
  std::size_t coordinate_offset(std::uint32_t n) const;

  friend bool operator==(const SumSpaceSpec&, const SumSpaceSpec&) = default;

 private:
  std::vector<Block> blocks_;
  OuterSpace outer_;
};

/// Finitely supported vector; absent blocks are zero.
class SumVector {
 public:
  using Components = std::map<std::uint32_t, std::vector<Complex>>;

  SumVector() = default;
  explicit SumVector(Components components) : components_(std::move(components)) {}

  /// Splits a flat coordinate vector according to the spec's layout.
  static SumVector from_flat(const SumSpaceSpec& spec, std::span<const Complex> flat);

  const Components& components() const { return components_; }

  /// Block n (zero vector of the right size when absent).
  std::vector<Complex> block(const SumSpaceSpec& spec, std::uint32_t n) const;

  /// Coordinate `coord` (1-based) of block `n`; 0 when absent.
  Complex coordinate(std::uint32_t n, std::uint32_t coord) const;

  std::vector<Complex> flat(const SumSpaceSpec& spec) const;

  void set_block(std::uint32_t n, std::vector<Complex> values);

  friend bool operator==(const SumVector&, const SumVector&) = default;

 private:
  Components components_;
};

/// σ = (σ_n) with an implicit zero tail.
struct ScaleSequence {
  std::vector<double> values;

  /// σ ∈ S₁ additionally needs every value < 1.
  bool in_s1() const;

  /// Nonincreasing prefix; a false result is a warning, since any finite
  /// prefix extends to an element of S.
  bool is_nonincreasing() const;

  double at(std::uint32_t n) const {  // 1-based
    return (n >= 1 && n <= values.size()) ? values[n - 1] : 0.0;
  }
};

/// ℓ_p norm of a coordinate vector (p = ∞ allowed).
double lp_norm(std::span<const Complex> v, double p);

/// Y-norm of a nonnegative sequence.
double outer_norm(const OuterSpace& outer, std::span<const double> values);

/// ‖x‖ = ‖(‖x_1‖_1, ‖x_2‖_2, ...)‖_Y. Throws on dimension mismatch.
double norm(const SumSpaceSpec& spec, const SumVector& x);

/// |x| = (‖x_n‖_n) over blocks 1..block_count.
std::vector<double> block_norms(const SumSpaceSpec& spec, const SumVector& x);

/// I_n(v).
SumVector include(const SumSpaceSpec& spec, std::uint32_t n, std::vector<Complex> v);

/// π_{m,n}; `n` empty means ∞.
SumVector project(const SumVector& x, std::uint32_t m, std::optional<std::uint32_t> n);

/// R_n(x) = Σ_{ν ≥ n} ‖x_ν‖_ν.
double tail_sums(const SumSpaceSpec& spec, const SumVector& x, std::uint32_t n);

/// σx = (σ_1 x_1, σ_2 x_2, ...).
SumVector scale(const ScaleSequence& sigma, const SumVector& x);

/// Checks that every stored component matches the spec's dimensions.
void validate(const SumSpaceSpec& spec, const SumVector& x);

}  // namespace dbarlab
