#pragma once

// Symplectic, unitary and quadratic forms on F_q^d.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "error.hpp"
#include "gf.hpp"
#include "linalg.hpp"

namespace minbase {

enum class form_kind { none, symplectic, unitary, quadratic };
enum class form_sign { plus, minus, odd };

inline const char *form_kind_name(form_kind k)
{
  switch (k) {
    case form_kind::none: return "none";
    case form_kind::symplectic: return "symplectic";
    case form_kind::unitary: return "unitary";
    case form_kind::quadratic: return "quadratic";
  }
  return "?";
}

inline const char *form_sign_name(form_sign s)
{
  switch (s) {
    case form_sign::plus: return "+";
    case form_sign::minus: return "-";
    case form_sign::odd: return "o";
  }
  return "?";
}

struct form_data
{
  form_kind kind = form_kind::none;
  field f;
  std::size_t d = 0;
  matrix gram;
  std::vector<elem> quad; // Q_{ij}, i <= j, row-major over the upper triangle
  form_sign sign = form_sign::plus;

  static std::size_t quad_index(std::size_t d, std::size_t i, std::size_t j)
  {
    // offset of row i in the packed upper triangle
    return i * d - i * (i - 1) / 2 + (j - i);
  }
  elem q_coeff(std::size_t i, std::size_t j) const { return quad[quad_index(d, i, j)]; }
  elem &q_coeff(std::size_t i, std::size_t j) { return quad[quad_index(d, i, j)]; }

  elem sigma(elem a) const { return kind == form_kind::unitary ? f.sigma(a) : a; }
};

/// [u, v] = u^T G sigma(v).
inline elem evaluate(form_data const &F, vec const &u, vec const &v)
{
  field const &f = F.f;
  elem s{};
  for (std::size_t i = 0; i < F.d; ++i) {
    if (!u[i].v)
      continue;
    elem t{};
    for (std::size_t j = 0; j < F.d; ++j)
      if (v[j].v)
        t = f.add(t, f.mul(F.gram(i, j), F.sigma(v[j])));
    s = f.add(s, f.mul(u[i], t));
  }
  return s;
}

inline elem q_eval(form_data const &F, vec const &v)
{
  if (F.kind != form_kind::quadratic)
    throw error(errc::kind_mismatch, "q_eval requires a quadratic form");
  field const &f = F.f;
  elem s{};
  for (std::size_t i = 0; i < F.d; ++i) {
    if (!v[i].v)
      continue;
    for (std::size_t j = i; j < F.d; ++j)
      if (v[j].v)
        s = f.add(s, f.mul(F.q_coeff(i, j), f.mul(v[i], v[j])));
  }
  return s;
}

/// Singular means Q(v) = 0 for quadratic forms and [v, v] = 0 otherwise.
inline bool is_singular(form_data const &F, vec const &v)
{
  if (F.kind == form_kind::quadratic)
    return q_eval(F, v).v == 0;
  return evaluate(F, v, v).v == 0;
}

namespace detail {

inline void fill_polarization(form_data &F)
{
  field const &f = F.f;
  F.gram = matrix(f, F.d, F.d);
  for (std::size_t i = 0; i < F.d; ++i)
    for (std::size_t j = i; j < F.d; ++j) {
      elem c = F.q_coeff(i, j);
      if (i == j)
        F.gram(i, i) = f.add(c, c);
      else
        F.gram(i, j) = F.gram(j, i) = c;
    }
}

} // namespace detail

/// Least-encoded alpha with t^2 + t + alpha irreducible over F_q.
inline elem find_anisotropic_alpha(field const &f)
{
  std::vector<bool> is_value(f.q(), false);
  for (auto t : f.elements())
    is_value[f.add(f.mul(t, t), t).v] = true;
  // t^2 + t + alpha has a root iff -alpha is a value of t^2 + t
  for (auto a : f.elements())
    if (!is_value[f.neg(a).v])
      return a;
  throw error(errc::none_exists, "no anisotropic alpha");
}

inline form_data make_quadratic(field const &f, std::size_t d, std::vector<elem> quad,
                                form_sign sign)
{
  form_data F;
  F.kind = form_kind::quadratic;
  F.f = f;
  F.d = d;
  F.quad = std::move(quad);
  F.sign = sign;
  detail::fill_polarization(F);
  return F;
}

/// Reference forms with hyperbolic pairs (e_{2i}, e_{2i+1}) first and the
/// anisotropic part last.
inline form_data standard_form(form_kind kind, std::size_t d, field const &f,
                               form_sign sign = form_sign::plus)
{
  form_data F;
  F.kind = kind;
  F.f = f;
  F.d = d;
  F.sign = sign;
  switch (kind) {
    case form_kind::none:
      F.gram = matrix(f, d, d);
      return F;
    case form_kind::symplectic:
      if (d % 2)
        throw error(errc::incompatible_parameters, "symplectic form needs even dimension");
      F.gram = matrix(f, d, d);
      for (std::size_t i = 0; i + 1 < d; i += 2) {
        F.gram(i, i + 1) = f.one();
        F.gram(i + 1, i) = f.neg(f.one());
      }
      return F;
    case form_kind::unitary:
      if (f.e() % 2)
        throw error(errc::incompatible_parameters, "unitary form needs a square field order");
      F.gram = matrix::identity(f, d);
      return F;
    case form_kind::quadratic: {
      if (sign == form_sign::odd ? (d % 2 == 0 || f.p() == 2) : (d % 2 == 1 || d == 0))
        throw error(errc::incompatible_parameters, "quadratic sign incompatible with d or q");
      F.quad.assign(d * (d + 1) / 2, elem{});
      std::size_t hyp = sign == form_sign::plus ? d / 2 : sign == form_sign::minus ? d / 2 - 1 : d / 2;
      for (std::size_t i = 0; i < hyp; ++i)
        F.q_coeff(2 * i, 2 * i + 1) = f.one();
      if (sign == form_sign::minus) {
        std::size_t a = d - 2, b = d - 1;
        F.q_coeff(a, a) = f.one();
        F.q_coeff(a, b) = f.one();
        F.q_coeff(b, b) = find_anisotropic_alpha(f);
      } else if (sign == form_sign::odd) {
        F.q_coeff(d - 1, d - 1) = f.one();
      }
      detail::fill_polarization(F);
      return F;
    }
  }
  return F;
}

/// g^T G sigma(g) = G, and Q(g v) = Q(v) on the basis and all pairwise sums.
inline bool preserves(form_data const &F, matrix const &g)
{
  if (g.rows() != F.d || g.cols() != F.d)
    throw error(errc::dimension_mismatch, "matrix does not act on the form's space");
  if (F.kind == form_kind::none)
    return true;
  matrix gs = F.kind == form_kind::unitary ? g.frobenius(F.f.e() / 2) : g;
  if (!(g.transpose() * F.gram * gs == F.gram))
    return false;
  if (F.kind == form_kind::quadratic) {
    for (std::size_t i = 0; i < F.d; ++i) {
      vec ei(F.d);
      ei[i] = F.f.one();
      if (q_eval(F, g.col(i)) != q_eval(F, ei))
        return false;
      for (std::size_t j = i + 1; j < F.d; ++j) {
        vec s = ei;
        s[j] = F.f.one();
        if (q_eval(F, g.apply(s)) != q_eval(F, s))
          return false;
      }
    }
  }
  return true;
}

/// {v : [v, u] = 0 for all u in U}.
inline subspace perp(form_data const &F, subspace const &U)
{
  field const &f = F.f;
  if (U.dim() == 0)
    return subspace::whole(f, F.d);
  matrix sys(f, U.dim(), F.d);
  for (std::size_t r = 0; r < U.dim(); ++r) {
    vec u = U.basis().row(r);
    for (std::size_t i = 0; i < F.d; ++i) {
      elem s{};
      for (std::size_t j = 0; j < F.d; ++j)
        s = f.add(s, f.mul(F.gram(i, j), F.sigma(u[j])));
      sys(r, i) = s;
    }
  }
  auto k = kernel(sys);
  if (k.empty())
    return subspace::zero(f, F.d);
  return subspace::span(f, F.d, k);
}

inline bool is_totally_singular(form_data const &F, subspace const &U)
{
  auto vs = U.vectors();
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (!is_singular(F, vs[i]))
      return false;
    for (std::size_t j = i + 1; j < vs.size(); ++j)
      if (evaluate(F, vs[i], vs[j]).v)
        return false;
  }
  return true;
}

/// The restricted bilinear form has trivial radical on U.
inline bool is_nondegenerate(form_data const &F, subspace const &U)
{
  return U.intersect(perp(F, U)).dim() == 0;
}

struct witt_decomposition
{
  std::size_t witt_index = 0;
  std::size_t witt_defect = 0;
  std::vector<std::pair<vec, vec>> hyperbolic_pairs;
  std::vector<vec> anisotropic_basis;
};

namespace detail {

inline vec combine(field const &f, std::vector<vec> const &basis, std::vector<elem> const &c,
                   std::size_t d)
{
  vec v(d);
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (c[i].v)
      for (std::size_t j = 0; j < d; ++j)
        v[j] = f.add(v[j], f.mul(c[i], basis[i][j]));
  return v;
}

inline bool is_zero_vec(vec const &v)
{
  for (auto x : v)
    if (x.v)
      return false;
  return true;
}

/// A nonzero singular vector of span(basis), exhaustive when small, else sampled.
inline std::optional<vec> find_singular(form_data const &F, std::vector<vec> const &basis,
                                        std::uint64_t seed)
{
  field const &f = F.f;
  std::size_t n = basis.size();
  long double total = 1;
  for (std::size_t i = 0; i < n; ++i)
    total *= f.q();
  // Cheap first pass: a singular basis vector.
  for (auto const &b : basis)
    if (is_singular(F, b))
      return b;
  if (total <= 65536.0L) {
    std::uint64_t count = static_cast<std::uint64_t>(total);
    std::vector<elem> c(n);
    for (std::uint64_t idx = 1; idx < count; ++idx) {
      std::uint64_t t = idx;
      for (std::size_t i = 0; i < n; ++i) {
        c[i] = elem{static_cast<std::uint32_t>(t % f.q())};
        t /= f.q();
      }
      vec v = combine(f, basis, c, F.d);
      if (is_singular(F, v))
        return v;
    }
    return std::nullopt;
  }
  std::mt19937_64 rng(seed);
  std::vector<elem> c(n);
  for (int trial = 0; trial < 1000000; ++trial) {
    for (auto &x : c)
      x = elem{static_cast<std::uint32_t>(rng() % f.q())};
    vec v = combine(f, basis, c, F.d);
    if (!is_zero_vec(v) && is_singular(F, v))
      return v;
  }
  return std::nullopt;
}

/// Basis of {s in span(basis) : [s, w] = 0 for w in ws}.
inline std::vector<vec> perp_within(form_data const &F, std::vector<vec> const &basis,
                                    std::vector<vec> const &ws)
{
  field const &f = F.f;
  matrix sys(f, ws.size(), basis.size());
  for (std::size_t r = 0; r < ws.size(); ++r)
    for (std::size_t i = 0; i < basis.size(); ++i)
      sys(r, i) = evaluate(F, basis[i], ws[r]);
  std::vector<vec> out;
  for (auto const &k : kernel(sys))
    out.push_back(combine(f, basis, k, F.d));
  return out;
}

} // namespace detail

/// Greedy Witt decomposition of the whole space or of a nondegenerate subspace.
inline witt_decomposition witt_decompose(form_data const &F,
                                         std::optional<subspace> const &within = std::nullopt,
                                         std::uint64_t seed = 0x5eed)
{
  field const &f = F.f;
  subspace W = within ? *within : subspace::whole(f, F.d);
  if (!is_nondegenerate(F, W))
    throw error(errc::degenerate_restriction, "form is degenerate on the subspace");
  witt_decomposition wd;
  std::vector<vec> cur = W.vectors();
  while (!cur.empty()) {
    auto x = detail::find_singular(F, cur, seed + wd.witt_index);
    if (!x)
      break;
    std::optional<vec> y;
    for (auto const &b : cur)
      if (evaluate(F, *x, b).v) {
        y = b;
        break;
      }
    if (!y)
      throw error(errc::degenerate_restriction, "singular vector in the radical");
    // scale so that [x, y] = 1; [x, c y] = sigma(c) [x, y]
    elem c = F.sigma(f.inv(evaluate(F, *x, *y)));
    for (auto &t : *y)
      t = f.mul(c, t);
    bool made_singular = false;
    for (auto a : f.elements()) {
      vec z = *y;
      for (std::size_t i = 0; i < F.d; ++i)
        z[i] = f.add(z[i], f.mul(a, (*x)[i]));
      if (is_singular(F, z)) {
        y = z;
        made_singular = true;
        break;
      }
    }
    if (!made_singular)
      throw error(errc::none_exists, "cannot complete hyperbolic pair");
    cur = detail::perp_within(F, cur, {*x, *y});
    wd.hyperbolic_pairs.emplace_back(*x, *y);
    ++wd.witt_index;
  }
  wd.anisotropic_basis = cur;
  wd.witt_defect = cur.size();
  return wd;
}

/// Matrix of the restricted form on the rows of U's basis.
inline matrix restricted_gram(form_data const &F, std::vector<vec> const &basis)
{
  matrix g(F.f, basis.size(), basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < basis.size(); ++j)
      g(i, j) = evaluate(F, basis[i], basis[j]);
  return g;
}

} // namespace minbase
