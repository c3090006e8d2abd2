#pragma once

// Finitely supported multiindices k = (k_1, k_2, ...) with 1-based positions.

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "exact.hpp"

namespace dbarlab {

class MultiIndex {
 public:
  using Entry = std::pair<std::uint32_t, std::uint32_t>;  // (position >= 1, exponent >= 1)

  MultiIndex() = default;

  /// Builds from (position, exponent) pairs; zero exponents are dropped,
  /// repeated positions are rejected.
  static MultiIndex from_entries(std::vector<Entry> entries);

  /// Dense form: dense[i] is the exponent at position i + 1.
  static MultiIndex from_dense(std::span<const std::uint32_t> dense);

  const std::vector<Entry>& entries() const { return entries_; }

  /// Exponent at a 1-based position (0 when absent).
  std::uint32_t at(std::uint32_t position) const;

  /// Largest position in the support, 0 for k = 0.
  std::uint32_t max_position() const { return entries_.empty() ? 0 : entries_.back().first; }

  bool is_zero() const { return entries_.empty(); }

  std::vector<std::uint32_t> dense(std::uint32_t length) const;

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;

 private:
  std::vector<Entry> entries_;  // sorted by position, exponents >= 1
};

/// ‖k‖ = Σ k_n.
std::uint64_t total_degree(const MultiIndex& k);

/// #k = |supp k|.
std::size_t support_size(const MultiIndex& k);

/// k^k = Π k_n^{k_n} with 0^0 = 1. `exact` is empty when the integer exceeds
/// the magnitude cap; `log_value` is always populated.
struct SelfPower {
  std::optional<BigInt> exact;
  double log_value = 0.0;
};

/// Default cap 10^300 on exact integers.
SelfPower self_power(const MultiIndex& k, const BigInt& cap);
SelfPower self_power(const MultiIndex& k);

/// log(k^k).
double log_self_power(const MultiIndex& k);

/// λ^k; λ[i] is the coordinate at position i + 1. Throws when a position in
/// supp k lies beyond λ.
Complex power(std::span<const Complex> lambda, const MultiIndex& k);

/// Graded order: by ‖k‖, then descending on the dense vector, which gives
/// 0, (1,0), (0,1), (2,0), (1,1), (0,2), ...
struct GradedLess {
  bool operator()(const MultiIndex& a, const MultiIndex& b) const;
};

/// Every k with supp k ⊆ {1..max_block} and ‖k‖ <= max_degree, in graded order.
std::vector<MultiIndex> enumerate(std::uint32_t max_block, std::uint32_t max_degree);

}  // namespace dbarlab
