#pragma once

// Sparse holomorphic polynomials in the scalar coordinates of a sum space.
// A variable is addressed by (block, coord), both 1-based.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "error.hpp"
#include "exact.hpp"
#include "multiindex.hpp"
#include "sumspace.hpp"

namespace dbarlab {

struct VarPower {
  std::uint32_t block = 1;
  std::uint32_t coord = 1;
  std::uint32_t exp = 1;

  friend auto operator<=>(const VarPower&, const VarPower&) = default;
};

/// Sorted by (block, coord); every exponent >= 1.
using Monomial = std::vector<VarPower>;

inline Monomial make_monomial(std::vector<VarPower> powers) {
  std::erase_if(powers, [](const VarPower& v) { return v.exp == 0; });
  std::sort(powers.begin(), powers.end());
  for (std::size_t i = 0; i < powers.size(); ++i) {
    require(powers[i].block >= 1 && powers[i].coord >= 1, "monomial variables are 1-based");
    require(i == 0 || powers[i].block != powers[i - 1].block ||
                powers[i].coord != powers[i - 1].coord,
            "monomial repeats a variable");
  }
  return powers;
}

/// Block multidegree: k_n = Σ of exponents over coordinates of block n.
inline MultiIndex block_degrees(const Monomial& m) {
  std::vector<MultiIndex::Entry> entries;
  for (const auto& v : m) {
    if (!entries.empty() && entries.back().first == v.block) {
      entries.back().second += v.exp;
    } else {
      entries.emplace_back(v.block, v.exp);
    }
  }
  return MultiIndex::from_entries(std::move(entries));
}

inline std::uint32_t monomial_degree(const Monomial& m) {
  std::uint32_t d = 0;
  for (const auto& v : m) d += v.exp;
  return d;
}

/// Per-coordinate exponent multiindex, positions numbered by the flattened
/// coordinate layout of `spec`.
inline MultiIndex coordinate_exponents(const SumSpaceSpec& spec, const Monomial& m) {
  std::vector<MultiIndex::Entry> entries;
  for (const auto& v : m) {
    entries.emplace_back(static_cast<std::uint32_t>(spec.coordinate_offset(v.block) + v.coord),
                         v.exp);
  }
  return MultiIndex::from_entries(std::move(entries));
}

template <class S>
class SumPolynomial {
 public:
  using Traits = ScalarTraits<S>;
  using Terms = std::map<Monomial, S>;

  SumPolynomial() = default;

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add(const Monomial& m, const S& c) {
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) it->second += c;
    if (Traits::is_zero(it->second)) terms_.erase(it);
  }

  SumPolynomial& operator+=(const SumPolynomial& o) {
    for (const auto& [m, c] : o.terms_) add(m, c);
    return *this;
  }

  SumPolynomial scaled(const S& factor) const {
    SumPolynomial out;
    for (const auto& [m, c] : terms_) out.add(m, c * factor);
    return out;
  }

  /// Highest block touched by any monomial.
  std::uint32_t max_block() const {
    std::uint32_t b = 0;
    for (const auto& [m, c] : terms_) {
      for (const auto& v : m) b = std::max(b, v.block);
    }
    return b;
  }

  /// Largest block degree Σ_{coords in block} exp over all monomials and blocks.
  std::uint32_t max_block_degree() const {
    std::uint32_t d = 0;
    for (const auto& [m, c] : terms_) {
      const auto k = block_degrees(m);
      for (const auto& e : k.entries()) d = std::max(d, e.second);
    }
    return d;
  }

  bool is_k_homogeneous(const MultiIndex& k) const {
    return std::all_of(terms_.begin(), terms_.end(),
                       [&](const auto& t) { return block_degrees(t.first) == k; });
  }

  Complex eval(const SumVector& x) const {
    Complex acc{};
    for (const auto& [m, c] : terms_) {
      Complex term = Traits::to_complex(c);
      for (const auto& v : m) {
        const Complex base = x.coordinate(v.block, v.coord);
        for (std::uint32_t i = 0; i < v.exp; ++i) term *= base;
      }
      acc += term;
    }
    return acc;
  }

  /// Checks every variable exists in `spec`.
  void validate(const SumSpaceSpec& spec) const {
    for (const auto& [m, c] : terms_) {
      for (const auto& v : m) {
        require(v.block <= spec.block_count(),
                "polynomial uses block " + std::to_string(v.block) + " outside the space");
        require(v.coord <= spec.block(v.block).dim,
                "polynomial uses coordinate " + std::to_string(v.coord) + " of block " +
                    std::to_string(v.block) + " beyond its dimension");
      }
    }
  }

  friend bool operator==(const SumPolynomial&, const SumPolynomial&) = default;

 private:
  Terms terms_;
};

using Polynomial = SumPolynomial<Complex>;
using ExactPolynomial = SumPolynomial<GaussianRational>;

}  // namespace dbarlab
