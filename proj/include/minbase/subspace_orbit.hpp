#pragma once

// Orbits of classical groups on subspaces of the natural module.

#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "classical.hpp"
#include "error.hpp"
#include "forms.hpp"
#include "linalg.hpp"
#include "permgrp.hpp"

namespace minbase {

enum class orbit_kind { all, nondegenerate, totally_singular };

inline const char *orbit_kind_name(orbit_kind k)
{
  switch (k) {
    case orbit_kind::all: return "all";
    case orbit_kind::nondegenerate: return "nondegenerate";
    case orbit_kind::totally_singular: return "totally_singular";
  }
  return "?";
}

inline orbit_kind parse_orbit_kind(std::string const &s)
{
  if (s == "all")
    return orbit_kind::all;
  if (s == "nondegenerate" || s == "nondeg")
    return orbit_kind::nondegenerate;
  if (s == "totally_singular" || s == "totsing")
    return orbit_kind::totally_singular;
  throw error(errc::parse_error, "unknown orbit kind " + s);
}

/// Isometry type of a nondegenerate subspace: Witt index, plus the
/// discriminant square class for odd-dimensional quadratic spaces.
struct isometry_key
{
  std::size_t dim = 0;
  std::size_t witt_index = 0;
  int disc = -1;
  bool operator==(isometry_key const &) const = default;
};

inline isometry_key isometry_type(form_data const &F, subspace const &U)
{
  isometry_key key;
  key.dim = U.dim();
  if (F.kind == form_kind::none)
    return key;
  auto wd = witt_decompose(F, U);
  key.witt_index = wd.witt_index;
  if (F.kind == form_kind::quadratic && U.dim() % 2 == 1 && F.f.p() != 2)
    key.disc = F.f.is_square(det(restricted_gram(F, U.vectors()))) ? 1 : 0;
  return key;
}

struct subspace_orbit
{
  orbit_kind kind = orbit_kind::all;
  std::size_t k = 1;
  subspace rep;
  std::string label;
};

inline bool is_singular_subspace(form_data const &F, subspace const &U)
{
  return F.kind == form_kind::none ? true : is_totally_singular(F, U);
}

inline bool in_orbit(mat_group_spec const &s, subspace_orbit const &o, subspace const &U)
{
  if (U.dim() != o.k)
    return false;
  switch (o.kind) {
    case orbit_kind::all: return true;
    case orbit_kind::nondegenerate:
      return is_nondegenerate(s.form, U) && isometry_type(s.form, U) == isometry_type(s.form, o.rep);
    case orbit_kind::totally_singular:
      if (!is_totally_singular(s.form, U))
        return false;
      if (s.fam == family::OmegaPlus && 2 * o.k == s.d)
        return (U.intersect(o.rep).dim() % 2) == (o.k % 2);
      return true;
  }
  return false;
}

namespace detail {

inline vec random_combination(field const &f, std::size_t d, std::vector<vec> const &basis,
                              std::mt19937_64 &rng)
{
  vec v(d);
  for (auto const &b : basis) {
    elem c{static_cast<std::uint32_t>(rng() % f.q())};
    if (!c.v)
      continue;
    for (std::size_t i = 0; i < d; ++i)
      v[i] = f.add(v[i], f.mul(c, b[i]));
  }
  return v;
}

inline std::optional<subspace> random_subspace(field const &f, std::size_t d, std::size_t k,
                                               std::vector<vec> const &within, std::mt19937_64 &rng)
{
  for (int t = 0; t < 64; ++t) {
    std::vector<vec> vs;
    for (std::size_t i = 0; i < k; ++i)
      vs.push_back(random_combination(f, d, within, rng));
    auto U = subspace::span(f, d, vs);
    if (U.dim() == k)
      return U;
  }
  return std::nullopt;
}

inline std::optional<subspace> random_singular_subspace(form_data const &F, std::size_t k,
                                                        std::mt19937_64 &rng)
{
  field const &f = F.f;
  std::vector<vec> basis;
  for (std::size_t i = 0; i < k; ++i) {
    subspace cur = basis.empty() ? subspace::zero(f, F.d) : subspace::span(f, F.d, basis);
    auto space = perp(F, cur).vectors();
    bool found = false;
    for (int t = 0; t < 4096 && !found; ++t) {
      vec v = random_combination(f, F.d, space, rng);
      if (is_zero_vec(v) || cur.contains(v))
        continue;
      bool sing = F.kind == form_kind::quadratic ? q_eval(F, v).v == 0 : evaluate(F, v, v).v == 0;
      if (sing) {
        basis.push_back(v);
        found = true;
      }
    }
    if (!found)
      return std::nullopt;
  }
  return subspace::span(f, F.d, basis);
}

} // namespace detail

/// A random member of the orbit (rejection sampling; membership checked).
inline std::optional<subspace> random_orbit_element(mat_group_spec const &s, subspace_orbit const &o,
                                                    std::mt19937_64 &rng, int tries = 2000)
{
  auto whole = subspace::whole(s.f, s.d).vectors();
  for (int t = 0; t < tries; ++t) {
    std::optional<subspace> U;
    if (o.kind == orbit_kind::totally_singular)
      U = detail::random_singular_subspace(s.form, o.k, rng);
    else
      U = detail::random_subspace(s.f, s.d, o.k, whole, rng);
    if (U && in_orbit(s, o, *U))
      return U;
  }
  return std::nullopt;
}

/// Orbit types of k-subspaces for the group: one representative each.
inline std::vector<subspace_orbit> subspace_orbits(mat_group_spec const &s, std::size_t k,
                                                   std::uint64_t seed = 11)
{
  std::vector<subspace_orbit> out;
  field const &f = s.f;
  if (s.fam == family::SL || s.fam == family::GL) {
    std::vector<vec> b;
    for (std::size_t i = 0; i < k; ++i) {
      vec e(s.d);
      e[i] = f.one();
      b.push_back(e);
    }
    out.push_back({orbit_kind::all, k, subspace::span(f, s.d, b), "all"});
    return out;
  }
  auto wd = witt_decompose(s.form);
  if (k <= wd.witt_index) {
    std::vector<vec> b;
    for (std::size_t i = 0; i < k; ++i)
      b.push_back(wd.hyperbolic_pairs[i].first);
    out.push_back({orbit_kind::totally_singular, k, subspace::span(f, s.d, b), "totally_singular"});
  }
  if (s.form.kind == form_kind::quadratic && f.p() == 2 && k % 2 == 1)
    return out;
  if (s.form.kind == form_kind::symplectic && k % 2 == 1)
    return out;
  std::mt19937_64 rng(seed);
  std::vector<isometry_key> seen;
  auto whole = subspace::whole(f, s.d).vectors();
  for (int t = 0; t < 3000; ++t) {
    auto U = detail::random_subspace(f, s.d, k, whole, rng);
    if (!U || !is_nondegenerate(s.form, *U))
      continue;
    auto key = isometry_type(s.form, *U);
    if (std::find(seen.begin(), seen.end(), key) != seen.end())
      continue;
    seen.push_back(key);
    std::string label = "nondegenerate/witt" + std::to_string(key.witt_index);
    if (key.disc >= 0)
      label += key.disc ? "/square" : "/nonsquare";
    out.push_back({orbit_kind::nondegenerate, k, *U, label});
  }
  std::sort(out.begin() + (out.empty() || out[0].kind != orbit_kind::totally_singular ? 0 : 1), out.end(),
            [&](auto const &x, auto const &y) { return x.label < y.label; });
  return out;
}

// ---------------------------------------------------------------------------
// Orbit sizes

inline bigint gaussian_binomial(std::uint64_t q, std::size_t d, std::size_t k)
{
  bigint num = 1, den = 1;
  for (std::size_t i = 0; i < k; ++i) {
    num *= ipow(q, d - i) - 1;
    den *= ipow(q, i + 1) - 1;
  }
  return num / den;
}

/// Order of the full isometry group of a nondegenerate space of the given
/// type (the form kind of s, dimension n, Witt index w).
inline bigint isometry_group_order(mat_group_spec const &s, std::size_t n, std::size_t w)
{
  if (n == 0)
    return 1;
  bigint q = s.q();
  switch (s.form.kind) {
    case form_kind::symplectic: {
      std::size_t m = n / 2;
      bigint r = ipow(q, m * m);
      for (std::size_t i = 1; i <= m; ++i)
        r *= ipow(q, 2 * i) - 1;
      return r;
    }
    case form_kind::unitary: {
      bigint q0 = s.q0();
      bigint r = ipow(q0, n * (n - 1) / 2);
      for (std::size_t i = 1; i <= n; ++i)
        r *= i % 2 ? ipow(q0, i) + 1 : ipow(q0, i) - 1;
      return r;
    }
    case form_kind::quadratic: {
      std::size_t m = n / 2;
      if (n % 2) {
        bigint r = 2 * ipow(q, m * m);
        for (std::size_t i = 1; i <= m; ++i)
          r *= ipow(q, 2 * i) - 1;
        return r;
      }
      bigint r = 2 * ipow(q, m * (m - 1));
      r *= w == m ? ipow(q, m) - 1 : ipow(q, m) + 1;
      for (std::size_t i = 1; i < m; ++i)
        r *= ipow(q, 2 * i) - 1;
      return r;
    }
    case form_kind::none: break;
  }
  throw error(errc::kind_mismatch, "no form");
}

/// Number of totally singular k-subspaces of the whole space.
inline bigint totally_singular_count(mat_group_spec const &s, std::size_t k)
{
  std::size_t r = witt_decompose(s.form).witt_index;
  if (k > r)
    return 0;
  bigint N = 1, D = 1;
  if (s.form.kind == form_kind::unitary) {
    bigint q0 = s.q0();
    // exponent 2(r-i) - 1 for even d, 2(r-i) + 1 for odd d
    for (std::size_t i = 0; i < k; ++i) {
      std::size_t j = r - i;
      N *= (ipow(q0, 2 * j) - 1) * (s.d % 2 ? ipow(q0, 2 * j + 1) + 1 : ipow(q0, 2 * j - 1) + 1);
      D *= ipow(q0, 2 * (i + 1)) - 1;
    }
    return N / D;
  }
  // polar space parameter e: 0 for O+, 1 for Sp and O odd, 2 for O-
  std::size_t e = s.form.kind == form_kind::symplectic ? 1 : s.d - 2 * r;
  bigint q = s.q();
  for (std::size_t i = 0; i < k; ++i) {
    std::size_t j = r - i;
    N *= (ipow(q, j) - 1) * (ipow(q, j + e - 1) + 1);
    D *= ipow(q, i + 1) - 1;
  }
  return N / D;
}

/// |X| for the orbit. For O+ with d = 2k this counts one family.
inline bigint orbit_size(mat_group_spec const &s, subspace_orbit const &o)
{
  switch (o.kind) {
    case orbit_kind::all: return gaussian_binomial(s.q(), s.d, o.k);
    case orbit_kind::totally_singular: {
      bigint n = totally_singular_count(s, o.k);
      return s.fam == family::OmegaPlus && 2 * o.k == s.d ? n / 2 : n;
    }
    case orbit_kind::nondegenerate: {
      auto a = isometry_type(s.form, o.rep);
      auto b = isometry_type(s.form, perp(s.form, o.rep));
      return group_order(s) / (isometry_group_order(s, a.dim, a.witt_index) *
                               isometry_group_order(s, b.dim, b.witt_index));
    }
  }
  return 0;
}

// ---------------------------------------------------------------------------
// Explicit orbits

struct explicit_orbit
{
  std::vector<subspace> points;
  std::unordered_map<subspace, std::uint32_t, subspace_hash> index;
  bool complete = false;
};

/// Breadth-first orbit of the representative under the generators; stops
/// (complete = false) once more than `cap` subspaces are found.
inline explicit_orbit enumerate_orbit(std::vector<matrix> const &gens, subspace const &rep,
                                      std::size_t cap = 10000)
{
  explicit_orbit o;
  o.points.push_back(rep);
  o.index.emplace(rep, 0);
  for (std::size_t i = 0; i < o.points.size(); ++i) {
    for (auto const &g : gens) {
      auto img = o.points[i].image_under(g);
      if (o.index.count(img))
        continue;
      if (o.points.size() >= cap)
        return o;
      o.index.emplace(img, static_cast<std::uint32_t>(o.points.size()));
      o.points.push_back(std::move(img));
    }
  }
  o.complete = true;
  return o;
}

inline perm_group_spec induced_action(std::vector<matrix> const &gens, explicit_orbit const &o)
{
  perm_group_spec g;
  g.degree = o.points.size();
  g.name = "induced";
  for (auto const &m : gens) {
    perm p(o.points.size());
    for (std::size_t i = 0; i < o.points.size(); ++i)
      p[i] = o.index.at(o.points[i].image_under(m));
    g.generators.push_back(std::move(p));
  }
  return g;
}

/// Order of the induced group: the known order modulo scalars when the
/// chain reaches it, else a deterministic Schreier-Sims run.
inline bigint induced_order(perm_group_spec const &g, bigint const &expected)
{
  try {
    chain_known_order(perm_action{g.degree}, g.generators, expected, {});
    return expected;
  } catch (error const &) {
    return schreier_sims(g).order();
  }
}

} // namespace minbase
