#pragma once

// Independent certification engines for base candidates.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "classical.hpp"
#include "error.hpp"
#include "forms.hpp"
#include "linalg.hpp"
#include "permgrp.hpp"

namespace minbase {

enum class cert_status { strong_base, group_base, alt_only_base, not_a_base, inconclusive };

inline const char *cert_status_name(cert_status s)
{
  switch (s) {
    case cert_status::strong_base: return "StrongBase";
    case cert_status::group_base: return "GroupBase";
    case cert_status::alt_only_base: return "AltOnlyBase";
    case cert_status::not_a_base: return "NotABase";
    case cert_status::inconclusive: return "Inconclusive";
  }
  return "?";
}

inline bool is_base(cert_status s)
{
  return s == cert_status::strong_base || s == cert_status::group_base;
}

using witness_t = std::variant<std::monostate, perm, matrix>;

struct certificate
{
  cert_status status = cert_status::inconclusive;
  std::string method;
  witness_t witness;
  std::string detail;
  std::size_t algebra_dim = 0;
  double elapsed_ms = 0;
};

namespace detail {

struct stopwatch
{
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double ms() const
  {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  }
};

} // namespace detail

// ---------------------------------------------------------------------------
// Subsets

enum class sym_or_alt { sym, alt };

/// Points grouped by their membership vector across the family.
inline std::vector<std::vector<std::uint32_t>> membership_cells(std::size_t m,
                                                                std::vector<std::uint64_t> const &sets)
{
  std::map<std::vector<bool>, std::vector<std::uint32_t>> cells;
  for (std::uint32_t i = 0; i < m; ++i) {
    std::vector<bool> pattern(sets.size());
    for (std::size_t j = 0; j < sets.size(); ++j)
      pattern[j] = (sets[j] >> i) & 1;
    cells[pattern].push_back(i);
  }
  std::vector<std::vector<std::uint32_t>> out;
  for (auto &[k, v] : cells)
    out.push_back(std::move(v));
  std::sort(out.begin(), out.end());
  return out;
}

inline certificate verify_subset_base(std::size_t m, std::vector<std::uint64_t> const &sets,
                                      sym_or_alt grp = sym_or_alt::sym)
{
  detail::stopwatch sw;
  certificate c;
  c.method = "cell_oracle";
  auto cells = membership_cells(m, sets);
  std::vector<std::vector<std::uint32_t> const *> big;
  for (auto const &cell : cells)
    if (cell.size() > 1)
      big.push_back(&cell);
  auto transposition = [&](std::uint32_t x, std::uint32_t y) {
    perm p = perm_identity(m);
    std::swap(p[x], p[y]);
    return p;
  };
  if (big.empty()) {
    c.status = cert_status::group_base;
  } else if (grp == sym_or_alt::sym) {
    c.status = cert_status::not_a_base;
    c.witness = transposition((*big[0])[0], (*big[0])[1]);
  } else if (big.size() == 1 && big[0]->size() == 2) {
    // the only nontrivial cell-preserving element is an odd transposition
    c.status = cert_status::alt_only_base;
    c.witness = transposition((*big[0])[0], (*big[0])[1]);
  } else {
    c.status = cert_status::not_a_base;
    perm p = perm_identity(m);
    if (big[0]->size() >= 3) {
      auto const &cell = *big[0];
      p[cell[0]] = cell[1];
      p[cell[1]] = cell[2];
      p[cell[2]] = cell[0];
    } else {
      std::swap(p[(*big[0])[0]], p[(*big[0])[1]]);
      std::swap(p[(*big[1])[0]], p[(*big[1])[1]]);
    }
    c.witness = p;
  }
  if (auto const *w = std::get_if<perm>(&c.witness)) {
    // re-verify: the witness fixes every set
    for (auto s : sets)
      if (subset_image(s, *w) != s)
        throw error(errc::generation_failed, "subset witness does not fix the family");
  }
  std::size_t nontrivial = 0;
  for (auto const *b : big)
    nontrivial += b->size();
  c.detail = std::to_string(cells.size()) + " cells, " + std::to_string(nontrivial) +
             " points in non-singleton cells";
  c.elapsed_ms = sw.ms();
  return c;
}

// ---------------------------------------------------------------------------
// Partitions

/// |Sym(ab)_(P_1, ..., P_r)| by enumerating block relabellings partition by
/// partition: g exists for a relabelling iff every label tuple class maps onto
/// a class of equal size, and then there are prod |class|! choices.
inline bigint partition_stabilizer_order(std::size_t a, std::size_t b,
                                         std::vector<std::uint64_t> const &parts,
                                         perm *witness = nullptr)
{
  std::size_t m = a * b, r = parts.size();
  // tuple of labels per point
  std::vector<std::vector<std::uint32_t>> lab(m, std::vector<std::uint32_t>(r));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < r; ++j)
      lab[i][j] = partition_code::label(parts[j], i);
  std::vector<perm> relabel(r);
  bigint total = 0;
  bool found_witness = false;
  perm all_labels(a);
  std::iota(all_labels.begin(), all_labels.end(), 0u);

  // class sizes of the projections onto the first j coordinates
  auto counts = [&](std::size_t j, bool mapped) {
    std::map<std::vector<std::uint32_t>, std::size_t> cnt;
    for (std::size_t i = 0; i < m; ++i) {
      std::vector<std::uint32_t> key(j);
      for (std::size_t t = 0; t < j; ++t)
        key[t] = mapped ? relabel[t][lab[i][t]] : lab[i][t];
      ++cnt[key];
    }
    return cnt;
  };

  std::function<void(std::size_t)> rec = [&](std::size_t j) {
    auto src = counts(j, true), dst = counts(j, false);
    if (src != dst)
      return;
    if (j == r) {
      bigint prod = 1;
      for (auto const &[k, n] : dst)
        prod *= factorial(n);
      total += prod;
      if (witness && !found_witness) {
        bool id_relabel = true;
        for (auto const &p : relabel)
          if (!perm_is_identity(p))
            id_relabel = false;
        if (!id_relabel || prod > 1) {
          // build one element: map each class onto its image class in order
          std::map<std::vector<std::uint32_t>, std::vector<std::uint32_t>> members;
          for (std::size_t i = 0; i < m; ++i)
            members[lab[i]].push_back(static_cast<std::uint32_t>(i));
          perm g(m);
          for (auto const &[key, pts] : members) {
            std::vector<std::uint32_t> img(r);
            for (std::size_t t = 0; t < r; ++t)
              img[t] = relabel[t][key[t]];
            auto const &target = members.at(img);
            for (std::size_t t = 0; t < pts.size(); ++t)
              g[pts[t]] = target[t];
          }
          if (perm_is_identity(g)) {
            // identity relabelling with a class of size >= 2: swap inside it
            for (auto const &[key, pts] : members)
              if (pts.size() >= 2) {
                std::swap(g[pts[0]], g[pts[1]]);
                break;
              }
          }
          *witness = g;
          found_witness = true;
        }
      }
      return;
    }
    perm p = all_labels;
    do {
      relabel[j] = p;
      rec(j + 1);
    } while (std::next_permutation(p.begin(), p.end()));
  };
  rec(0);
  return total;
}

// ---------------------------------------------------------------------------
// Generic permutation groups

inline certificate verify_generic(perm_group_spec const &g, bigint const &order,
                                  std::vector<std::uint32_t> const &points,
                                  std::size_t degree_cap = 100000)
{
  detail::stopwatch sw;
  if (g.degree > degree_cap)
    throw error(errc::degree_cap_exceeded, "degree " + std::to_string(g.degree));
  certificate c;
  c.method = "stabilizer_chain";
  auto st = pointwise_stabilizer(g, order, points);
  if (st.order == 1) {
    c.status = cert_status::group_base;
  } else {
    c.status = cert_status::not_a_base;
    perm w;
    for (auto const &s : st.spec.generators)
      if (!perm_is_identity(s)) {
        w = s;
        break;
      }
    if (w.empty() && !g.generators.empty())
      w = g.generators[0];
    for (auto p : points)
      if (!w.empty() && w[p] != p)
        throw error(errc::generation_failed, "chain witness moves a base point");
    c.witness = w;
  }
  c.detail = "|G_(B)| = " + st.order.str();
  c.elapsed_ms = sw.ms();
  return c;
}

/// Same check for actions too large to materialise (implicit points).
template <class Action>
certificate verify_generic_implicit(Action const &act, std::vector<typename Action::element> const &gens,
                                    bigint const &order, std::vector<typename Action::point> const &points)
{
  detail::stopwatch sw;
  certificate c;
  c.method = "stabilizer_chain";
  auto ch = chain_known_order(act, gens, order, points);
  bigint st = ch.order_from(points.size());
  if (st == 1) {
    c.status = cert_status::group_base;
  } else {
    c.status = cert_status::not_a_base;
    auto sg = ch.generators_from(points.size());
    for (auto const &s : sg)
      if (!act.is_id(s)) {
        c.witness = s;
        break;
      }
  }
  c.detail = "|G_(B)| = " + st.str();
  c.elapsed_ms = sw.ms();
  return c;
}

// ---------------------------------------------------------------------------
// Subspaces

namespace detail {

inline bool fixes_all(matrix const &g, std::vector<subspace> const &subs)
{
  for (auto const &u : subs)
    if (!(u.image_under(g) == u))
      return false;
  return true;
}

inline bool in_family(mat_group_spec const &s, matrix const &g)
{
  elem dt = det(g);
  if (!dt.v)
    return false;
  if (s.fam == family::SL && dt != s.f.one())
    return false;
  return preserves(s.form, g);
}

/// Enumerates the units of a matrix algebra lying in the group; returns a
/// non-scalar one if any. Combinations are scanned in increasing encoding
/// order, so the first witness found is the least-encoded one.
inline std::optional<matrix> find_nonscalar_unit(mat_group_spec const &s, matrix_algebra const &alg)
{
  field const &f = s.f;
  std::size_t n = alg.dim();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i)
    total *= f.q();
  std::vector<elem> c(n);
  for (std::uint64_t idx = 1; idx < total; ++idx) {
    std::uint64_t t = idx;
    for (std::size_t i = 0; i < n; ++i) {
      c[i] = elem{static_cast<std::uint32_t>(t % f.q())};
      t /= f.q();
    }
    matrix g(f, s.d, s.d);
    for (std::size_t i = 0; i < n; ++i)
      if (c[i].v)
        g = g + alg.basis[i].scaled(c[i]);
    if (is_scalar(g))
      continue;
    if (in_family(s, g))
      return g;
  }
  return std::nullopt;
}

} // namespace detail

/// Tiered certificate: scalars-only algebra, then enumeration of the
/// algebra's group elements, else inconclusive.
inline certificate verify_subspace_base(mat_group_spec const &s, std::vector<subspace> const &subs,
                                        std::uint64_t enum_cap = 1u << 20)
{
  detail::stopwatch sw;
  certificate c;
  auto alg = stabilizing_algebra(subs, s.f, s.d);
  c.algebra_dim = alg.dim();
  if (alg.dim() == 1) {
    c.status = cert_status::strong_base;
    c.method = "stabilizing_algebra";
    c.elapsed_ms = sw.ms();
    return c;
  }
  long double total = 1;
  for (std::size_t i = 0; i < alg.dim(); ++i)
    total *= s.q();
  if (total > static_cast<long double>(enum_cap)) {
    c.status = cert_status::inconclusive;
    c.method = "stabilizing_algebra";
    c.detail = "algebra dimension " + std::to_string(alg.dim()) + " exceeds enumeration cap";
    c.elapsed_ms = sw.ms();
    return c;
  }
  c.method = "unit_enumeration";
  if (auto w = detail::find_nonscalar_unit(s, alg)) {
    if (!detail::fixes_all(*w, subs) || !detail::in_family(s, *w) || is_scalar(*w))
      throw error(errc::generation_failed, "subspace witness failed re-verification");
    c.status = cert_status::not_a_base;
    c.witness = *w;
  } else {
    c.status = cert_status::group_base;
  }
  c.detail = "algebra dimension " + std::to_string(alg.dim());
  c.elapsed_ms = sw.ms();
  return c;
}

// ---------------------------------------------------------------------------
// Vectors

/// Prop 5.4 witness for a hyperplane U of a symplectic space:
/// A v = v + ([v, x] / [y, x]) x with <x> the radical of U and y outside U.
inline matrix symplectic_insufficiency_witness(form_data const &F, subspace const &U)
{
  if (F.kind != form_kind::symplectic || U.dim() + 1 != F.d)
    throw error(errc::incompatible_parameters, "needs a hyperplane of a symplectic space");
  field const &f = F.f;
  subspace rad = U.intersect(perp(F, U));
  if (rad.dim() != 1)
    throw error(errc::radical_not_found, "hyperplane radical is not a line");
  vec x = rad.basis().row(0);
  vec y;
  for (std::size_t i = 0; i < F.d; ++i) {
    vec e(F.d);
    e[i] = f.one();
    if (!U.contains(e)) {
      y = e;
      break;
    }
  }
  elem yx = evaluate(F, y, x);
  if (!yx.v)
    throw error(errc::radical_not_found, "[y, x] vanishes");
  elem c = f.inv(yx);
  matrix a = matrix::identity(f, F.d);
  // column j is A e_j = e_j + c [e_j, x] x
  for (std::size_t j = 0; j < F.d; ++j) {
    vec e(F.d);
    e[j] = f.one();
    elem coef = f.mul(c, evaluate(F, e, x));
    for (std::size_t i = 0; i < F.d; ++i)
      a(i, j) = f.add(a(i, j), f.mul(coef, x[i]));
  }
  return a;
}

inline certificate verify_vector_base(mat_group_spec const &s, std::vector<vec> const &vectors,
                                      std::uint64_t enum_cap = 1u << 20)
{
  detail::stopwatch sw;
  certificate c;
  field const &f = s.f;
  std::size_t d = s.d;
  subspace span = vectors.empty() ? subspace::zero(f, d) : subspace::span(f, d, vectors);
  if (span.dim() == d) {
    c.status = cert_status::strong_base;
    c.method = "span_check";
    c.elapsed_ms = sw.ms();
    return c;
  }
  if (s.fam == family::Sp && span.dim() + 1 == d) {
    matrix w = symplectic_insufficiency_witness(s.form, span);
    bool ok = preserves(s.form, w) && !(w == matrix::identity(f, d));
    for (auto const &v : vectors)
      ok = ok && w.apply(v) == v;
    if (!ok)
      throw error(errc::generation_failed, "symplectic witness failed re-verification");
    c.status = cert_status::not_a_base;
    c.method = "span_check";
    c.witness = w;
    c.elapsed_ms = sw.ms();
    return c;
  }
  // {x : x v = v} = I + {y : y v = 0}; y has rows in the annihilator of span.
  auto ann = kernel(span.basis());
  std::size_t free = ann.size() * d;
  long double total = 1;
  for (std::size_t i = 0; i < free; ++i)
    total *= f.q();
  if (total > static_cast<long double>(enum_cap)) {
    c.status = cert_status::inconclusive;
    c.method = "span_check";
    c.detail = "fixer space too large to enumerate";
    c.elapsed_ms = sw.ms();
    return c;
  }
  c.method = "unit_enumeration";
  std::uint64_t count = static_cast<std::uint64_t>(total);
  for (std::uint64_t idx = 1; idx < count; ++idx) {
    std::uint64_t t = idx;
    matrix g = matrix::identity(f, d);
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t a = 0; a < ann.size(); ++a) {
        elem coef{static_cast<std::uint32_t>(t % f.q())};
        t /= f.q();
        if (!coef.v)
          continue;
        for (std::size_t j = 0; j < d; ++j)
          g(r, j) = f.add(g(r, j), f.mul(coef, ann[a][j]));
      }
    if (detail::in_family(s, g)) {
      c.status = cert_status::not_a_base;
      c.witness = g;
      c.elapsed_ms = sw.ms();
      return c;
    }
  }
  c.status = cert_status::group_base;
  c.elapsed_ms = sw.ms();
  return c;
}

} // namespace minbase
