#pragma once

// Exact Gaussian-rational scalars and the scalar traits shared by the
// polynomial templates (floating std::complex<double> vs exact mode).

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <cstdint>
#include <ostream>
#include <string>

namespace dbarlab {

using Complex = std::complex<double>;
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

struct GaussianRational {
  Rational re;
  Rational im;

  GaussianRational() = default;
  GaussianRational(Rational r, Rational i = 0) : re(std::move(r)), im(std::move(i)) {}
  GaussianRational(long long r) : re(r), im(0) {}  // NOLINT(google-explicit-constructor)

  static GaussianRational from_double(double r, double i = 0.0) {
    return {Rational(r), Rational(i)};
  }

  bool is_zero() const { return re == 0 && im == 0; }

  GaussianRational& operator+=(const GaussianRational& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  GaussianRational& operator-=(const GaussianRational& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  GaussianRational& operator*=(const GaussianRational& o) {
    Rational r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = std::move(r);
    return *this;
  }
  GaussianRational& operator/=(const GaussianRational& o) {
    Rational den = o.re * o.re + o.im * o.im;
    Rational r = (re * o.re + im * o.im) / den;
    im = (im * o.re - re * o.im) / den;
    re = std::move(r);
    return *this;
  }

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  friend GaussianRational operator-(const GaussianRational& a) { return {-a.re, -a.im}; }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

  friend std::ostream& operator<<(std::ostream& os, const GaussianRational& g) {
    return os << '(' << g.re << ',' << g.im << ')';
  }
};

// Scalar traits used by templated polynomial code.
template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<Complex> {
  static Complex zero() { return {0.0, 0.0}; }
  static Complex one() { return {1.0, 0.0}; }
  static Complex from_int(long long v) { return {static_cast<double>(v), 0.0}; }
  static Complex ratio(long long num, long long den) {
    return {static_cast<double>(num) / static_cast<double>(den), 0.0};
  }
  static Complex from_double(double v) { return {v, 0.0}; }
  static bool is_zero(const Complex& c) { return c == Complex{}; }
  static Complex to_complex(const Complex& c) { return c; }
  static Complex conj(const Complex& c) { return std::conj(c); }
};

template <>
struct ScalarTraits<GaussianRational> {
  static GaussianRational zero() { return {}; }
  static GaussianRational one() { return {Rational(1)}; }
  static GaussianRational from_int(long long v) { return {Rational(v)}; }
  static GaussianRational ratio(long long num, long long den) { return {Rational(num, den)}; }
  static GaussianRational from_double(double v) { return {Rational(v)}; }
  static bool is_zero(const GaussianRational& c) { return c.is_zero(); }
  static Complex to_complex(const GaussianRational& c) {
    return {static_cast<double>(c.re), static_cast<double>(c.im)};
  }
  static GaussianRational conj(const GaussianRational& c) { return {c.re, -c.im}; }
};

}  // namespace dbarlab
