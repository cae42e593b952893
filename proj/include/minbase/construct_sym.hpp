#pragma once

// Bases for Sym(m) on k-subsets and on partitions into equal blocks.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <unordered_set>
#include <vector>

#include "bigint.hpp"
#include "error.hpp"
#include "permgrp.hpp"
#include "verify.hpp"

namespace minbase {

template <class T>
struct base_candidate
{
  std::vector<T> elements;
  std::size_t claimed_bound = 0;
  std::string bound_ref;
  std::uint64_t seed = 0;
  std::vector<std::string> log;
  bool fallback = false;
};

inline std::size_t ceil_div(std::size_t a, std::size_t b) { return (a + b - 1) / b; }

/// Exact value ceil((2m-2)/(k+1)), valid for k^2 <= m.
inline std::size_t subset_exact_value(std::size_t m, std::size_t k) { return ceil_div(2 * m - 2, k + 1); }

/// ceil(log_T m) * (T - 1) with T = ceil(m/k).
inline std::size_t subset_digit_bound(std::size_t m, std::size_t k)
{
  std::size_t T = ceil_div(m, k), L = 0, p = 1;
  while (p < m) {
    p *= T;
    ++L;
  }
  return L * (T - 1);
}

inline std::size_t subset_bound(std::size_t m, std::size_t k)
{
  return k * k <= m ? subset_exact_value(m, k) : subset_digit_bound(m, k);
}

namespace detail {

/// Simple graph with the given degree sequence (Havel-Hakimi), as an edge list.
inline std::optional<std::vector<std::pair<std::size_t, std::size_t>>>
havel_hakimi(std::vector<std::size_t> deg)
{
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::size_t n = deg.size();
  while (true) {
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](auto x, auto y) { return deg[x] > deg[y]; });
    std::size_t v = order[0];
    if (deg[v] == 0)
      return edges;
    std::size_t need = deg[v];
    deg[v] = 0;
    for (std::size_t i = 1; i <= need; ++i) {
      if (i >= n || deg[order[i]] == 0)
        return std::nullopt;
      --deg[order[i]];
      edges.emplace_back(std::min(v, order[i]), std::max(v, order[i]));
    }
  }
}

/// Sets as vertices, points as private points or edges: every point gets a
/// distinct membership pattern of weight <= 2, one point is left uncovered.
inline std::optional<std::vector<std::uint64_t>> subset_base_exact(std::size_t m, std::size_t k)
{
  std::size_t B = subset_exact_value(m, k);
  std::size_t s = (k + 1) * B - (2 * m - 2);
  if (s > B)
    return std::nullopt;
  std::vector<std::size_t> deg(B, k - 1);
  for (std::size_t i = B - s; i < B; ++i)
    deg[i] = k;
  auto edges = havel_hakimi(deg);
  if (!edges)
    return std::nullopt;
  std::vector<std::uint64_t> sets(B, 0);
  std::size_t next = 0;
  for (auto [u, v] : *edges) {
    sets[u] |= std::uint64_t(1) << next;
    sets[v] |= std::uint64_t(1) << next;
    ++next;
  }
  for (std::size_t i = 0; i < B - s; ++i)
    sets[i] |= std::uint64_t(1) << next++;
  if (next + 1 != m)
    return std::nullopt;
  return sets;
}

inline std::optional<std::vector<std::uint64_t>> subset_base_digits(std::size_t m, std::size_t k,
                                                                    std::uint64_t seed)
{
  std::size_t T = ceil_div(m, k), L = 0, cap = 1;
  while (cap < m) {
    cap *= T;
    ++L;
  }
  std::size_t nsets = L * (T - 1);
  auto set_of = [&](std::size_t pos, std::size_t digit) { return pos * (T - 1) + (digit - 1); };
  std::vector<std::uint64_t> codes(cap);
  std::iota(codes.begin(), codes.end(), 0);
  auto weight = [&](std::uint64_t c) {
    std::size_t w = 0;
    for (; c; c /= T)
      w += (c % T) != 0;
    return w;
  };
  std::mt19937_64 rng(seed);
  if (seed)
    std::shuffle(codes.begin(), codes.end(), rng);
  std::stable_sort(codes.begin(), codes.end(), [&](auto x, auto y) { return weight(x) < weight(y); });

  // pattern of each point over the nsets sets
  std::vector<std::uint64_t> pattern;
  std::vector<std::size_t> size(nsets, 0);
  for (auto c : codes) {
    if (pattern.size() == m)
      break;
    std::uint64_t pat = 0;
    bool ok = true;
    std::uint64_t t = c;
    for (std::size_t pos = 0; pos < L; ++pos, t /= T)
      if (t % T) {
        std::size_t j = set_of(pos, t % T);
        if (size[j] >= k)
          ok = false;
        pat |= std::uint64_t(1) << j;
      }
    if (!ok)
      continue;
    for (std::size_t j = 0; j < nsets; ++j)
      if ((pat >> j) & 1)
        ++size[j];
    pattern.push_back(pat);
  }
  if (pattern.size() != m)
    return std::nullopt;
  std::unordered_set<std::uint64_t> used(pattern.begin(), pattern.end());
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t j = 0; j < nsets; ++j) {
    if (size[j] == 0)
      continue;
    if (seed)
      std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t i : order) {
      if (size[j] == k)
        break;
      std::uint64_t bit = std::uint64_t(1) << j;
      if (pattern[i] & bit)
        continue;
      std::uint64_t np = pattern[i] | bit;
      if (used.count(np))
        continue;
      used.erase(pattern[i]);
      used.insert(np);
      pattern[i] = np;
      ++size[j];
    }
    if (size[j] != k)
      return std::nullopt;
  }
  std::vector<std::uint64_t> sets;
  for (std::size_t j = 0; j < nsets; ++j) {
    if (size[j] == 0)
      continue;
    std::uint64_t s = 0;
    for (std::size_t i = 0; i < m; ++i)
      if ((pattern[i] >> j) & 1)
        s |= std::uint64_t(1) << i;
    sets.push_back(s);
  }
  return sets;
}

} // namespace detail

inline base_candidate<std::uint64_t> subset_base(std::size_t m, std::size_t k, std::uint64_t seed = 0)
{
  if (k < 1 || 2 * k > m)
    throw error(errc::incompatible_parameters, "need 1 <= k <= m/2");
  if (m > 64)
    throw error(errc::size_cap_exceeded, "subset masks hold at most 64 points");
  base_candidate<std::uint64_t> out;
  out.seed = seed;
  if (k * k <= m) {
    out.claimed_bound = subset_exact_value(m, k);
    out.bound_ref = "Thm2.2(ii)";
    if (auto sets = detail::subset_base_exact(m, k)) {
      out.elements = *sets;
      out.log.push_back("private points and edges of a near-regular graph on " +
                        std::to_string(sets->size()) + " sets");
      return out;
    }
    out.fallback = true;
    out.log.push_back("graph construction unavailable, using digit construction");
  } else {
    out.claimed_bound = subset_digit_bound(m, k);
    out.bound_ref = "Thm2.2(i)";
  }
  for (std::uint64_t attempt = 0; attempt < 256; ++attempt) {
    if (auto sets = detail::subset_base_digits(m, k, seed + attempt)) {
      out.elements = *sets;
      out.seed = seed + attempt;
      out.log.push_back("digit construction, base " + std::to_string(ceil_div(m, k)) +
                        ", padded to size k, seed " + std::to_string(seed + attempt));
      if (out.elements.size() > out.claimed_bound)
        out.claimed_bound = subset_digit_bound(m, k);
      return out;
    }
  }
  throw error(errc::budget_exceeded, "digit padding failed");
}

// ---------------------------------------------------------------------------
// Partitions

inline std::size_t partition_bound(std::size_t a, std::size_t b)
{
  if (b == 2)
    return 3;
  if (a >= b)
    return 6;
  // floor(log_a(b)) + 4
  std::size_t l = 0, p = 1;
  while (p * a <= b) {
    p *= a;
    ++l;
  }
  return l + 4;
}

inline std::string partition_bound_ref(std::size_t a, std::size_t b)
{
  if (b == 2)
    return "Thm2.3/b=2";
  return a >= b ? "Thm2.3(i)" : "Thm2.3(ii)";
}

inline std::uint64_t random_partition(std::size_t a, std::size_t b, std::mt19937_64 &rng)
{
  std::vector<std::uint32_t> pts(a * b);
  std::iota(pts.begin(), pts.end(), 0u);
  std::shuffle(pts.begin(), pts.end(), rng);
  std::vector<std::vector<std::uint32_t>> bl(a);
  for (std::size_t i = 0; i < pts.size(); ++i)
    bl[i / b].push_back(pts[i]);
  return partition_code::from_blocks(bl, a * b);
}

/// Order of the kernel of Sym(ab) on partitions (the Klein group for a = b = 2).
inline bigint partition_kernel_order(std::size_t a, std::size_t b) { return a == 2 && b == 2 ? 4 : 1; }

/// Greedy: add the sampled partition shrinking the pointwise stabilizer
/// most, then drop redundant members; restarts until within the bound.
inline base_candidate<std::uint64_t> partition_base(std::size_t a, std::size_t b, std::uint64_t seed = 1,
                                                    std::size_t samples = 48, std::size_t restarts = 64)
{
  if (a < 2 || b < 2)
    throw error(errc::incompatible_parameters, "need a, b >= 2");
  if (a * b > partition_code::max_points)
    throw error(errc::size_cap_exceeded, "at most 16 points");
  base_candidate<std::uint64_t> out;
  out.claimed_bound = partition_bound(a, b);
  out.bound_ref = partition_bound_ref(a, b);
  std::vector<std::uint64_t> best;
  bigint const target = partition_kernel_order(a, b);
  for (std::size_t attempt = 0; attempt < restarts; ++attempt) {
    std::mt19937_64 rng(seed + attempt);
    std::vector<std::uint64_t> cur;
    bigint order = factorial(a * b);
    while (order > target && cur.size() < 4 * out.claimed_bound) {
      std::uint64_t pick = 0;
      bigint pick_order = order;
      for (std::size_t i = 0; i < samples; ++i) {
        auto p = random_partition(a, b, rng);
        auto trial = cur;
        trial.push_back(p);
        bigint o = partition_stabilizer_order(a, b, trial);
        if (o < pick_order) {
          pick_order = o;
          pick = p;
        }
      }
      if (pick_order == order)
        break;
      cur.push_back(pick);
      order = pick_order;
    }
    if (order != target)
      continue;
    for (std::size_t i = cur.size(); i-- > 0;) {
      auto trial = cur;
      trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(i));
      if (partition_stabilizer_order(a, b, trial) == target)
        cur = trial;
    }
    if (best.empty() || cur.size() < best.size()) {
      best = cur;
      out.seed = seed + attempt;
    }
    if (best.size() <= out.claimed_bound)
      break;
  }
  if (best.empty())
    throw error(errc::budget_exceeded, "greedy partition search found no base");
  out.elements = best;
  out.log.push_back("greedy over " + std::to_string(samples) + " random partitions per step, seed " +
                    std::to_string(out.seed));
  return out;
}

} // namespace minbase
