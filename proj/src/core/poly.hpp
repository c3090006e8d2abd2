#pragma once

// Polynomials Σ c z^α z̄^β on ℂ^n and (0,1)-forms Σ f_j dz̄_j with
// polynomial coefficients, over floating or exact Gaussian-rational scalars.

#include <algorithm>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "exact.hpp"

namespace dbarlab {

/// Exponent pair stored as one vector: entries [0, n) are α, [n, 2n) are β.
using ExponentPair = std::vector<std::uint32_t>;

template <class S>
class Poly {
 public:
  using Traits = ScalarTraits<S>;
  using Terms = std::map<ExponentPair, S>;

  Poly() = default;
  explicit Poly(std::uint32_t n) : n_(n) {}

  static Poly constant(std::uint32_t n, const S& c) {
    Poly p(n);
    p.add(ExponentPair(2 * n, 0), c);
    return p;
  }

  /// c z^α z̄^β.
  static Poly monomial(std::span<const std::uint32_t> alpha, std::span<const std::uint32_t> beta,
                       const S& c) {
    require(alpha.size() == beta.size(), "α and β must have the same length");
    Poly p(static_cast<std::uint32_t>(alpha.size()));
    ExponentPair e(alpha.begin(), alpha.end());
    e.insert(e.end(), beta.begin(), beta.end());
    p.add(e, c);
    return p;
  }

  /// z_j (0-based j).
  static Poly z(std::uint32_t n, std::uint32_t j) {
    ExponentPair e(2 * n, 0);
    e.at(j) = 1;
    Poly p(n);
    p.add(e, Traits::one());
    return p;
  }

  /// z̄_j (0-based j).
  static Poly zbar(std::uint32_t n, std::uint32_t j) {
    ExponentPair e(2 * n, 0);
    e.at(n + j) = 1;
    Poly p(n);
    p.add(e, Traits::one());
    return p;
  }

  std::uint32_t n() const { return n_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add(const ExponentPair& e, const S& c) {
    require(e.size() == 2 * static_cast<std::size_t>(n_), "exponent length does not match 2n");
    if (Traits::is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (Traits::is_zero(it->second)) terms_.erase(it);
    }
  }

  Poly& operator+=(const Poly& o) {
    check_same(o);
    for (const auto& [e, c] : o.terms_) add(e, c);
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    check_same(o);
    for (const auto& [e, c] : o.terms_) add(e, -c);
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }

  friend Poly operator*(const Poly& a, const Poly& b) {
    a.check_same(b);
    Poly out(a.n_);
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        ExponentPair e(ea);
        for (std::size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
        out.add(e, ca * cb);
      }
    }
    return out;
  }

  Poly scaled(const S& factor) const {
    Poly out(n_);
    for (const auto& [e, c] : terms_) out.add(e, c * factor);
    return out;
  }

  /// ∂/∂z_j (0-based).
  Poly dz(std::uint32_t j) const { return derivative(j); }

  /// ∂/∂z̄_j (0-based).
  Poly dzbar(std::uint32_t j) const { return derivative(n_ + j); }

  /// conj(p) as a function: swaps α and β and conjugates coefficients.
  Poly conj() const {
    Poly out(n_);
    for (const auto& [e, c] : terms_) {
      ExponentPair swapped(e.begin() + n_, e.end());
      swapped.insert(swapped.end(), e.begin(), e.begin() + n_);
      out.add(swapped, Traits::conj(c));
    }
    return out;
  }

  /// True when no term has a z̄ exponent.
  bool is_holomorphic() const {
    return std::all_of(terms_.begin(), terms_.end(), [&](const auto& t) {
      return std::all_of(t.first.begin() + n_, t.first.end(), [](auto v) { return v == 0; });
    });
  }

  std::uint32_t degree() const {
    std::uint32_t d = 0;
    for (const auto& [e, c] : terms_) {
      std::uint32_t s = 0;
      for (auto v : e) s += v;
      d = std::max(d, s);
    }
    return d;
  }

  Complex eval(std::span<const Complex> z) const {
    require(z.size() == n_, "evaluation point has the wrong dimension");
    Complex acc{};
    for (const auto& [e, c] : terms_) {
      Complex term = Traits::to_complex(c);
      for (std::uint32_t i = 0; i < n_; ++i) {
        for (std::uint32_t k = 0; k < e[i]; ++k) term *= z[i];
        const Complex zb = std::conj(z[i]);
        for (std::uint32_t k = 0; k < e[n_ + i]; ++k) term *= zb;
      }
      acc += term;
    }
    return acc;
  }

  /// Evaluation in the coefficient field itself (exact in rational mode).
  S evaluate(std::span<const S> z) const {
    require(z.size() == n_, "evaluation point has the wrong dimension");
    S acc = Traits::zero();
    for (const auto& [e, c] : terms_) {
      S term = c;
      for (std::uint32_t i = 0; i < n_; ++i) {
        for (std::uint32_t k = 0; k < e[i]; ++k) term *= z[i];
        if (e[n_ + i] == 0) continue;
        const S zb = Traits::conj(z[i]);
        for (std::uint32_t k = 0; k < e[n_ + i]; ++k) term *= zb;
      }
      acc += term;
    }
    return acc;
  }

  friend bool operator==(const Poly&, const Poly&) = default;

 private:
  Poly derivative(std::uint32_t slot) const {
    Poly out(n_);
    for (const auto& [e, c] : terms_) {
      if (e[slot] == 0) continue;
      ExponentPair d(e);
      const auto power = d[slot]--;
      out.add(d, c * Traits::from_int(power));
    }
    return out;
  }

  void check_same(const Poly& o) const {
    require(n_ == o.n_, "polynomials live in different dimensions");
  }

  std::uint32_t n_ = 0;
  Terms terms_;
};

template <class S>
struct Form01 {
  std::vector<Poly<S>> components;  // f_j for dz̄_j, j = 0..n-1

  Form01() = default;
  explicit Form01(std::uint32_t n) : components(n, Poly<S>(n)) {}
  explicit Form01(std::vector<Poly<S>> comps) : components(std::move(comps)) {
    for (const auto& c : components) {
      require(c.n() == components.size(), "form component dimension must equal the number of components");
    }
  }

  std::uint32_t n() const { return static_cast<std::uint32_t>(components.size()); }

  bool is_zero() const {
    return std::all_of(components.begin(), components.end(), [](const auto& c) { return c.is_zero(); });
  }

  Form01 scaled(const S& factor) const {
    Form01 out(n());
    for (std::uint32_t j = 0; j < n(); ++j) out.components[j] = components[j].scaled(factor);
    return out;
  }

  Form01& operator+=(const Form01& o) {
    require(n() == o.n(), "forms live in different dimensions");
    for (std::uint32_t j = 0; j < n(); ++j) components[j] += o.components[j];
    return *this;
  }
  Form01& operator-=(const Form01& o) {
    require(n() == o.n(), "forms live in different dimensions");
    for (std::uint32_t j = 0; j < n(); ++j) components[j] -= o.components[j];
    return *this;
  }
  friend Form01 operator+(Form01 a, const Form01& b) { return a += b; }
  friend Form01 operator-(Form01 a, const Form01& b) { return a -= b; }

  std::uint32_t degree() const {
    std::uint32_t d = 0;
    for (const auto& c : components) d = std::max(d, c.degree());
    return d;
  }

  friend bool operator==(const Form01&, const Form01&) = default;
};

using PolyFunction = Poly<Complex>;
using PolyForm01 = Form01<Complex>;
using ExactPolyFunction = Poly<GaussianRational>;
using ExactPolyForm01 = Form01<GaussianRational>;

/// Coefficientwise conversion to floating scalars.
template <class S>
Poly<Complex> to_floating(const Poly<S>& p) {
  Poly<Complex> out(p.n());
  for (const auto& [e, c] : p.terms()) out.add(e, ScalarTraits<S>::to_complex(c));
  return out;
}

template <class S>
Form01<Complex> to_floating(const Form01<S>& f) {
  std::vector<Poly<Complex>> comps;
  for (const auto& c : f.components) comps.push_back(to_floating(c));
  return Form01<Complex>(std::move(comps));
}

/// Exact image of a floating polynomial (every double is a dyadic rational).
inline ExactPolyFunction to_exact(const PolyFunction& p) {
  ExactPolyFunction out(p.n());
  for (const auto& [e, c] : p.terms()) out.add(e, GaussianRational::from_double(c.real(), c.imag()));
  return out;
}

inline ExactPolyForm01 to_exact(const PolyForm01& f) {
  std::vector<ExactPolyFunction> comps;
  for (const auto& c : f.components) comps.push_back(to_exact(c));
  return ExactPolyForm01(std::move(comps));
}

}  // namespace dbarlab
