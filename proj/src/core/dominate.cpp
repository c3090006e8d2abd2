#include "dominate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "error.hpp"
#include "parallel.hpp"
#include "rng.hpp"

namespace dbarlab {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_add(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

void check_point(std::span<const double> z) {
  double t = 0.0;
  for (double v : z) {
    require(v >= 0.0 && std::isfinite(v), "Δ needs a nonnegative finite z");
    t += v;
  }
  require(t < 1.0, "Δ needs ‖z‖₁ < 1");
}

// Shell values s_d = Σ_{‖k‖=d} (d^d/k^k)|q|^{#k} z^k for d = 0..D.
std::vector<double> shells(double q_abs, std::span<const double> z, std::uint32_t max_degree) {
  std::vector<double> log_coef(max_degree + 1, kNegInf);
  log_coef[0] = 0.0;
  if (q_abs > 0.0) {
    const double log_q = std::log(q_abs);
    std::vector<double> factor(max_degree + 1, kNegInf);
    std::vector<double> next(max_degree + 1);
    for (double zi : z) {
      if (zi == 0.0) continue;
      const double log_z = std::log(zi);
      factor[0] = 0.0;
      for (std::uint32_t j = 1; j <= max_degree; ++j) {
        factor[j] = log_q + j * log_z - j * std::log(static_cast<double>(j));
      }
      for (std::uint32_t d = 0; d <= max_degree; ++d) {
        double acc = kNegInf;
        for (std::uint32_t j = 0; j <= d; ++j) acc = log_add(acc, log_coef[d - j] + factor[j]);
        next[d] = acc;
      }
      log_coef.swap(next);
    }
  }
  std::vector<double> out(max_degree + 1, 0.0);
  out[0] = 1.0;
  for (std::uint32_t d = 1; d <= max_degree; ++d) {
    if (log_coef[d] == kNegInf) continue;
    out[d] = std::exp(d * std::log(static_cast<double>(d)) + log_coef[d]);
  }
  return out;
}

double sum_shells(const std::vector<double>& s) {
  double acc = 0.0;
  for (double v : s) acc += v;  // ascending degree: fixed reduction order
  return acc;
}

}  // namespace

DeltaResult delta_truncated(Complex q, std::span<const double> z, std::uint32_t max_degree) {
  check_point(z);
  DeltaResult out;
  out.value = sum_shells(shells(std::abs(q), z, max_degree));
  out.degree_cut = max_degree;
  return out;
}

DeltaResult delta_certified(Complex q, std::span<const double> z, std::uint32_t max_degree) {
  auto out = delta_truncated(q, z, max_degree);
  double t = 0.0;
  for (double v : z) t += v;
  const double q_abs = std::abs(q);
  const double et = std::numbers::e * t;
  if (et >= 1.0 || q_abs > 1.0) return out;
  out.tail_bound = t == 0.0 ? 0.0 : q_abs * std::pow(et, max_degree + 1.0) / (1.0 - et);
  return out;
}

double delta_sup_bound(double q_abs, double theta) {
  require(theta >= 0.0, "θ must be nonnegative");
  if (q_abs > 1.0) fail(ErrorCode::kInvalidArgument, "certified Δ bound needs |q| <= 1");
  const double et = std::numbers::e * theta;
  if (et >= 1.0) fail(ErrorCode::kCertification, "certified Δ bound needs eθ < 1");
  return 1.0 + q_abs * et / (1.0 - et);
}

DeltaResult delta_converged(Complex q, std::span<const double> z, double rel_tol,
                            std::uint32_t max_degree) {
  check_point(z);
  std::uint32_t degree = std::min<std::uint32_t>(64, max_degree);
  while (true) {
    const auto s = shells(std::abs(q), z, degree);
    const double value = sum_shells(s);
    if (s.back() <= rel_tol * value || degree >= max_degree) {
      return DeltaResult{value, std::nullopt, degree};
    }
    degree = std::min(max_degree, degree * 2);
  }
}

double delta_sampled_sup(double q_abs, double theta, std::uint32_t dims, std::size_t samples,
                         std::uint64_t seed) {
  require(dims >= 1, "need at least one coordinate");
  require(theta >= 0.0 && theta < 1.0, "sampled Δ sup needs θ in [0, 1)");
  std::vector<std::vector<double>> points;
  for (std::uint32_t i = 0; i < dims; ++i) {
    std::vector<double> w(dims, 0.0);
    w[i] = theta;
    points.push_back(std::move(w));
  }
  points.emplace_back(dims, theta / dims);
  Rng rng(seed);
  for (std::size_t s = 0; s < samples && dims > 1; ++s) {
    std::vector<double> w(dims);
    double total = 0.0;
    for (auto& v : w) {
      double u = rng.uniform();
      while (u <= 0.0) u = rng.uniform();
      v = -std::log(u);
      total += v;
    }
    for (auto& v : w) v *= theta / total;
    points.push_back(std::move(w));
  }
  std::vector<double> values(points.size());
  parallel_for(points.size(), [&](std::size_t i) {
    values[i] = delta_converged(Complex{q_abs, 0.0}, points[i]).value;
  });
  return *std::max_element(values.begin(), values.end());
}

double monomial_norm(const MultiIndex& k) {
  const auto d = static_cast<double>(total_degree(k));
  if (d == 0.0) return 1.0;
  return std::exp(log_self_power(k) - d * std::log(d));
}

}  // namespace dbarlab
