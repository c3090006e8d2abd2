#include "multiindex.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "error.hpp"

namespace dbarlab {

MultiIndex MultiIndex::from_entries(std::vector<Entry> entries) {
  std::erase_if(entries, [](const Entry& e) { return e.second == 0; });
  std::sort(entries.begin(), entries.end());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    require(entries[i].first >= 1, "multiindex positions are 1-based");
    require(i == 0 || entries[i].first != entries[i - 1].first,
            "multiindex position " + std::to_string(entries[i].first) + " repeated");
  }
  MultiIndex k;
  k.entries_ = std::move(entries);
  return k;
}

MultiIndex MultiIndex::from_dense(std::span<const std::uint32_t> dense) {
  std::vector<Entry> entries;
  for (std::size_t i = 0; i < dense.size(); ++i) {
    if (dense[i] != 0) entries.emplace_back(static_cast<std::uint32_t>(i + 1), dense[i]);
  }
  MultiIndex k;
  k.entries_ = std::move(entries);
  return k;
}

std::uint32_t MultiIndex::at(std::uint32_t position) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), Entry{position, 0});
  return (it != entries_.end() && it->first == position) ? it->second : 0;
}

std::vector<std::uint32_t> MultiIndex::dense(std::uint32_t length) const {
  std::vector<std::uint32_t> out(std::max(length, max_position()), 0);
  for (const auto& [pos, exp] : entries_) out[pos - 1] = exp;
  return out;
}

std::uint64_t total_degree(const MultiIndex& k) {
  std::uint64_t sum = 0;
  for (const auto& e : k.entries()) sum += e.second;
  return sum;
}

std::size_t support_size(const MultiIndex& k) { return k.entries().size(); }

double log_self_power(const MultiIndex& k) {
  double acc = 0.0;
  for (const auto& [pos, exp] : k.entries()) {
    acc += static_cast<double>(exp) * std::log(static_cast<double>(exp));
  }
  return acc;
}

SelfPower self_power(const MultiIndex& k, const BigInt& cap) {
  SelfPower out;
  out.log_value = log_self_power(k);
  // log10 estimate first so huge values never get materialized.
  const double log10_cap = std::log10(static_cast<double>(cap));
  if (std::isfinite(log10_cap) && out.log_value / std::log(10.0) > log10_cap + 1.0) return out;
  BigInt value = 1;
  for (const auto& [pos, exp] : k.entries()) {
    value *= boost::multiprecision::pow(BigInt(exp), exp);
    if (value > cap) return out;
  }
  out.exact = std::move(value);
  return out;
}

SelfPower self_power(const MultiIndex& k) {
  static const BigInt kDefaultCap = boost::multiprecision::pow(BigInt(10), 300);
  return self_power(k, kDefaultCap);
}

Complex power(std::span<const Complex> lambda, const MultiIndex& k) {
  Complex acc{1.0, 0.0};
  for (const auto& [pos, exp] : k.entries()) {
    if (pos > lambda.size()) {
      fail(ErrorCode::kInvalidArgument,
           "power: no coordinate for position " + std::to_string(pos));
    }
    Complex base = lambda[pos - 1];
    for (std::uint32_t i = 0; i < exp; ++i) acc *= base;
  }
  return acc;
}

bool GradedLess::operator()(const MultiIndex& a, const MultiIndex& b) const {
  const auto da = total_degree(a);
  const auto db = total_degree(b);
  if (da != db) return da < db;
  // Descending lexicographic on dense vectors: larger leading exponent first.
  const auto& ea = a.entries();
  const auto& eb = b.entries();
  std::size_t i = 0;
  for (; i < ea.size() && i < eb.size(); ++i) {
    if (ea[i].first != eb[i].first) return ea[i].first < eb[i].first;
    if (ea[i].second != eb[i].second) return ea[i].second > eb[i].second;
  }
  // Equal degree and one is a prefix of the other cannot happen unless equal.
  return false;
}

namespace {

void enumerate_shell(std::uint32_t max_block, std::uint32_t position, std::uint32_t remaining,
                     std::vector<std::uint32_t>& dense, std::vector<MultiIndex>& out) {
  if (position == max_block - 1) {
    dense[position] = remaining;
    out.push_back(MultiIndex::from_dense(dense));
    dense[position] = 0;
    return;
  }
  for (std::uint32_t e = remaining + 1; e-- > 0;) {
    dense[position] = e;
    enumerate_shell(max_block, position + 1, remaining - e, dense, out);
  }
  dense[position] = 0;
}

}  // namespace

std::vector<MultiIndex> enumerate(std::uint32_t max_block, std::uint32_t max_degree) {
  std::vector<MultiIndex> out;
  out.emplace_back();
  if (max_block == 0) return out;
  std::vector<std::uint32_t> dense(max_block, 0);
  for (std::uint32_t d = 1; d <= max_degree; ++d) enumerate_shell(max_block, 0, d, dense, out);
  return out;
}

}  // namespace dbarlab
