#pragma once

// Classical matrix groups: forms, orders, generators and auxiliary pairs.

#include <cstdint>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "bigint.hpp"
#include "error.hpp"
#include "forms.hpp"
#include "gf.hpp"
#include "linalg.hpp"
#include "permgrp.hpp"

namespace minbase {

enum class family { SL, GL, Sp, SU, OmegaPlus, OmegaMinus, OmegaOdd };

inline const char *family_name(family f)
{
  switch (f) {
    case family::SL: return "SL";
    case family::GL: return "GL";
    case family::Sp: return "Sp";
    case family::SU: return "SU";
    case family::OmegaPlus: return "O+";
    case family::OmegaMinus: return "O-";
    case family::OmegaOdd: return "Oo";
  }
  return "?";
}

inline family parse_family(std::string const &s)
{
  if (s == "SL") return family::SL;
  if (s == "GL") return family::GL;
  if (s == "Sp") return family::Sp;
  if (s == "SU" || s == "U" || s == "GU") return family::SU;
  if (s == "O+" || s == "OmegaPlus" || s == "Oplus") return family::OmegaPlus;
  if (s == "O-" || s == "OmegaMinus" || s == "Ominus") return family::OmegaMinus;
  if (s == "Oo" || s == "O" || s == "OmegaOdd" || s == "Oodd") return family::OmegaOdd;
  throw error(errc::parse_error, "unknown family " + s);
}

inline bool is_orthogonal(family f)
{
  return f == family::OmegaPlus || f == family::OmegaMinus || f == family::OmegaOdd;
}

/// A classical group on F_q^d. SU, O+, O-, Oo denote the full isometry groups
/// GU and GO of the standard form.
struct mat_group_spec
{
  family fam = family::SL;
  std::size_t d = 0;
  field f;
  form_data form;
  bool projective = true;

  std::uint32_t q() const { return f.q(); }
  /// Order of the fixed field of sigma for unitary groups, q otherwise.
  std::uint32_t q0() const
  {
    if (fam != family::SU)
      return f.q();
    std::uint32_t r = 1;
    for (std::uint32_t i = 0; i < f.e() / 2; ++i)
      r *= f.p();
    return r;
  }
};

inline mat_group_spec make_spec(family fam, std::size_t d, field const &f, bool projective = true)
{
  mat_group_spec s;
  s.fam = fam;
  s.d = d;
  s.f = f;
  s.projective = projective;
  if (d < 1)
    throw error(errc::incompatible_parameters, "dimension must be positive");
  switch (fam) {
    case family::SL:
    case family::GL: s.form = standard_form(form_kind::none, d, f); break;
    case family::Sp: s.form = standard_form(form_kind::symplectic, d, f); break;
    case family::SU: s.form = standard_form(form_kind::unitary, d, f); break;
    case family::OmegaPlus: s.form = standard_form(form_kind::quadratic, d, f, form_sign::plus); break;
    case family::OmegaMinus: s.form = standard_form(form_kind::quadratic, d, f, form_sign::minus); break;
    case family::OmegaOdd: s.form = standard_form(form_kind::quadratic, d, f, form_sign::odd); break;
  }
  return s;
}

inline mat_group_spec make_spec(std::string const &fam, std::size_t d, std::uint32_t q)
{
  return make_spec(parse_family(fam), d, field::of_order(q));
}

/// |G| for the full group of the spec (not divided by scalars).
inline bigint group_order(mat_group_spec const &s)
{
  bigint q = s.q();
  std::size_t d = s.d;
  switch (s.fam) {
    case family::GL:
    case family::SL: {
      bigint r = ipow(q, d * (d - 1) / 2);
      for (std::size_t i = 1; i <= d; ++i)
        r *= ipow(q, i) - 1;
      return s.fam == family::SL ? r / (q - 1) : r;
    }
    case family::Sp: {
      std::size_t m = d / 2;
      bigint r = ipow(q, m * m);
      for (std::size_t i = 1; i <= m; ++i)
        r *= ipow(q, 2 * i) - 1;
      return r;
    }
    case family::SU: {
      bigint q0 = s.q0();
      bigint r = ipow(q0, d * (d - 1) / 2);
      for (std::size_t i = 1; i <= d; ++i)
        r *= i % 2 ? ipow(q0, i) + 1 : ipow(q0, i) - 1;
      return r;
    }
    case family::OmegaPlus:
    case family::OmegaMinus: {
      std::size_t m = d / 2;
      bigint r = 2 * ipow(q, m * (m - 1));
      r *= s.fam == family::OmegaPlus ? ipow(q, m) - 1 : ipow(q, m) + 1;
      for (std::size_t i = 1; i < m; ++i)
        r *= ipow(q, 2 * i) - 1;
      return r;
    }
    case family::OmegaOdd: {
      std::size_t m = d / 2;
      bigint r = 2 * ipow(q, m * m);
      for (std::size_t i = 1; i <= m; ++i)
        r *= ipow(q, 2 * i) - 1;
      return r;
    }
  }
  return 0;
}

/// Number of scalar matrices in the group.
inline std::uint64_t scalar_count(mat_group_spec const &s)
{
  std::uint64_t q = s.q();
  switch (s.fam) {
    case family::GL: return q - 1;
    case family::SL: return std::gcd<std::uint64_t>(s.d, q - 1);
    case family::SU: return s.q0() + 1;
    default: return std::gcd<std::uint64_t>(2, q - 1);
  }
}

/// Order of the group acting on subspaces (scalars removed when projective).
inline bigint action_order(mat_group_spec const &s)
{
  bigint o = group_order(s);
  return s.projective ? o / scalar_count(s) : o;
}

inline bool is_scalar(matrix const &g)
{
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j)
      if (i == j ? g(i, j) != g(0, 0) : g(i, j).v != 0)
        return false;
  return true;
}

/// Matrix groups acting on nonzero vectors encoded as base-q integers.
struct vector_action
{
  using element = matrix;
  using point = std::uint64_t;
  using point_hash = std::hash<std::uint64_t>;

  field f;
  std::size_t d = 0;

  vec decode(point x) const
  {
    vec v(d);
    for (std::size_t i = 0; i < d; ++i) {
      v[i] = elem{static_cast<std::uint32_t>(x % f.q())};
      x /= f.q();
    }
    return v;
  }
  point encode(vec const &v) const
  {
    point x = 0;
    for (std::size_t i = d; i-- > 0;)
      x = x * f.q() + v[i].v;
    return x;
  }
  element id() const { return matrix::identity(f, d); }
  element mul(element const &a, element const &b) const { return b * a; }
  element inv(element const &a) const { return *inverse(a); }
  bool is_id(element const &a) const { return a == id(); }
  point apply(point x, element const &g) const { return encode(g.apply(decode(x))); }
  std::optional<point> moved_point(element const &g) const
  {
    for (std::size_t i = 0; i < d; ++i) {
      vec e(d);
      e[i] = f.one();
      if (g.apply(e) != e)
        return encode(e);
    }
    return std::nullopt;
  }
};

struct generator_set
{
  std::vector<matrix> gens;
  bool certified = false;
  std::string method;
};

namespace detail {

inline matrix random_matrix(field const &f, std::size_t d, std::mt19937_64 &rng)
{
  matrix m(f, d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      m(i, j) = elem{static_cast<std::uint32_t>(rng() % f.q())};
  return m;
}

inline vec random_vector(field const &f, std::size_t d, std::mt19937_64 &rng)
{
  vec v(d);
  for (auto &x : v)
    x = elem{static_cast<std::uint32_t>(rng() % f.q())};
  return v;
}

/// x -> x + c [x, v] v.
inline matrix rank_one_map(form_data const &F, vec const &v, elem c)
{
  field const &f = F.f;
  std::size_t d = F.d;
  vec w(d);
  for (std::size_t i = 0; i < d; ++i) {
    elem s{};
    for (std::size_t j = 0; j < d; ++j)
      s = f.add(s, f.mul(F.gram(i, j), F.sigma(v[j])));
    w[i] = s;
  }
  matrix t = matrix::identity(f, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      t(i, j) = f.add(t(i, j), f.mul(c, f.mul(v[i], w[j])));
  return t;
}

/// A random elementary isometry (transvection, reflection or quasi-reflection).
/// With `within`, the defining vector is drawn from its span, so the map
/// acts trivially on the orthogonal complement.
inline matrix random_elementary(mat_group_spec const &s, std::mt19937_64 &rng,
                                std::vector<vec> const *within = nullptr)
{
  field const &f = s.f;
  std::size_t d = s.d;
  form_data const &F = s.form;
  auto random_vector = [&](field const &, std::size_t, std::mt19937_64 &r) {
    if (!within)
      return detail::random_vector(f, d, r);
    vec v(d);
    for (auto const &b : *within) {
      elem c{static_cast<std::uint32_t>(r() % f.q())};
      for (std::size_t i = 0; i < d; ++i)
        v[i] = f.add(v[i], f.mul(c, b[i]));
    }
    return v;
  };
  for (;;) {
    switch (s.fam) {
      case family::GL: {
        matrix m = random_matrix(f, d, rng);
        if (det(m).v)
          return m;
        break;
      }
      case family::SL: {
        matrix m = random_matrix(f, d, rng);
        elem dt = det(m);
        if (!dt.v)
          break;
        elem inv = f.inv(dt);
        for (std::size_t i = 0; i < d; ++i)
          m(i, 0) = f.mul(m(i, 0), inv);
        return m;
      }
      case family::Sp: {
        vec v = random_vector(f, d, rng);
        elem c{static_cast<std::uint32_t>(1 + rng() % (f.q() - 1))};
        if (!is_zero_vec(v))
          return rank_one_map(F, v, c);
        break;
      }
      case family::SU: {
        vec v = random_vector(f, d, rng);
        if (is_zero_vec(v))
          break;
        elem n = evaluate(F, v, v);
        elem c{static_cast<std::uint32_t>(rng() % f.q())};
        if (n.v == 0) {
          // transvection: c + sigma(c) = 0, c != 0
          if (c.v && f.add(c, f.sigma(c)).v == 0)
            return rank_one_map(F, v, c);
        } else {
          // quasi-reflection with multiplier lambda, lambda sigma(lambda) = 1
          elem lambda = c;
          if (lambda.v && lambda != f.one() && f.mul(lambda, f.sigma(lambda)) == f.one())
            return rank_one_map(F, v, f.div(f.sub(lambda, f.one()), n));
        }
        break;
      }
      case family::OmegaPlus:
      case family::OmegaMinus:
      case family::OmegaOdd: {
        vec v = random_vector(f, d, rng);
        elem qv = q_eval(F, v);
        if (qv.v)
          return rank_one_map(F, v, f.neg(f.inv(qv)));
        break;
      }
    }
  }
}

/// All matrices of the group, by enumeration of M(d, q) (tiny cases only).
inline std::vector<matrix> enumerate_group(mat_group_spec const &s)
{
  field const &f = s.f;
  std::size_t n = s.d * s.d;
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i)
    total *= f.q();
  std::vector<matrix> out;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    matrix m(f, s.d, s.d);
    std::uint64_t t = idx;
    for (std::size_t i = 0; i < n; ++i) {
      m(i / s.d, i % s.d) = elem{static_cast<std::uint32_t>(t % f.q())};
      t /= f.q();
    }
    elem dt = det(m);
    if (!dt.v)
      continue;
    if (s.fam == family::SL && dt != f.one())
      continue;
    if (!preserves(s.form, m))
      continue;
    out.push_back(std::move(m));
  }
  return out;
}

inline bool small_enough_to_enumerate(mat_group_spec const &s)
{
  long double total = 1;
  for (std::size_t i = 0; i < s.d * s.d; ++i)
    total *= s.q();
  return total <= (1u << 20);
}

inline bool certify_on_vectors(mat_group_spec const &s, std::vector<matrix> const &gens,
                               std::uint64_t seed)
{
  try {
    chain_options opt;
    opt.seed = seed;
    chain_known_order(vector_action{s.f, s.d}, gens, group_order(s), {}, opt);
    return true;
  } catch (error const &) {
    return false;
  }
}

} // namespace detail

inline void check_spec(mat_group_spec const &s)
{
  if (s.fam == family::Sp && s.d % 2)
    throw error(errc::incompatible_parameters, "Sp needs even dimension");
  if ((s.fam == family::OmegaPlus || s.fam == family::OmegaMinus) && (s.d % 2 || s.d < 2))
    throw error(errc::incompatible_parameters, "O+/O- need even dimension");
  if (s.fam == family::OmegaOdd && (s.d % 2 == 0 || s.f.p() == 2))
    throw error(errc::incompatible_parameters, "odd orthogonal groups need odd d and odd q");
  if (s.fam == family::SU && s.f.e() % 2)
    throw error(errc::incompatible_parameters, "unitary groups need a square field order");
}

/// Seeded generators, certified by a stabilizer chain on nonzero vectors
/// reaching the group order when q^d <= vector_cap.
inline generator_set generators(mat_group_spec const &s, std::uint64_t seed = 1,
                                std::uint64_t vector_cap = 1u << 20)
{
  check_spec(s);
  static std::mutex mtx;
  static std::map<std::tuple<int, std::size_t, std::uint32_t, std::uint64_t>, generator_set> cache;
  auto key = std::make_tuple(static_cast<int>(s.fam), s.d, s.q(), seed);
  {
    std::lock_guard lock(mtx);
    auto it = cache.find(key);
    if (it != cache.end())
      return it->second;
  }
  generator_set out;
  long double nvec = 1;
  for (std::size_t i = 0; i < s.d; ++i)
    nvec *= s.q();
  bool can_certify = nvec <= static_cast<long double>(vector_cap);
  std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ull + s.d * 131 + s.q());
  for (int attempt = 0; attempt < 6 && !out.certified; ++attempt) {
    out.gens.clear();
    for (int i = 0; i < 4; ++i) {
      matrix g = matrix::identity(s.f, s.d);
      for (std::size_t t = 0; t < 2 * s.d + 2; ++t)
        g = g * detail::random_elementary(s, rng);
      out.gens.push_back(std::move(g));
    }
    for (int i = 0; i < 2; ++i)
      out.gens.push_back(detail::random_elementary(s, rng));
    if (!can_certify) {
      out.method = "random elementary products; certified: small-case only";
      break;
    }
    if (detail::certify_on_vectors(s, out.gens, seed + attempt)) {
      out.certified = true;
      out.method = "random elementary products; order certified on vectors";
    }
  }
  if (!out.certified && can_certify && detail::small_enough_to_enumerate(s)) {
    out.gens = detail::enumerate_group(s);
    out.certified = bigint(out.gens.size()) == group_order(s);
    out.method = "full enumeration";
  } else if (!out.certified && can_certify) {
    out.method = "random elementary products; certification failed";
  }
  for (auto const &g : out.gens)
    if (!preserves(s.form, g))
      throw error(errc::generation_failed, "generator does not preserve the form");
  std::lock_guard lock(mtx);
  cache.emplace(key, out);
  return out;
}

struct matrix_pair
{
  matrix first, second;
  bool certified = false;
};

/// Two determinant-one matrices generating SL(k, q).
inline matrix_pair sl_generating_pair(std::size_t k, field const &f, std::uint64_t seed = 7)
{
  if (k == 1)
    return {matrix::identity(f, 1), matrix::identity(f, 1), true};
  mat_group_spec s = make_spec(family::SL, k, f, false);
  long double nvec = 1;
  for (std::size_t i = 0; i < k; ++i)
    nvec *= f.q();
  std::mt19937_64 rng(seed + 1000 * k + f.q());
  matrix_pair last;
  for (int attempt = 0; attempt < 64; ++attempt) {
    matrix a = detail::random_elementary(s, rng), b = detail::random_elementary(s, rng);
    last = {a, b, false};
    if (nvec > (1u << 20))
      return last;
    if (detail::certify_on_vectors(s, {a, b}, seed + attempt)) {
      last.certified = true;
      return last;
    }
  }
  throw error(errc::generation_failed, "no generating pair found for SL");
}

namespace detail {

inline matrix path_matrix(field const &f, std::size_t k)
{
  matrix p(f, k, k);
  for (std::size_t i = 0; i + 1 < k; ++i)
    p(i, i + 1) = p(i + 1, i) = f.one();
  return p;
}

inline matrix_pair search_algebra_pair(std::size_t k, field const &f, bool symmetric)
{
  std::mt19937_64 rng(0xa19e + k * 31 + f.q());
  for (int attempt = 0; attempt < 10000; ++attempt) {
    matrix c = random_matrix(f, k, rng), d = random_matrix(f, k, rng);
    if (symmetric) {
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < i; ++j) {
          c(i, j) = c(j, i);
          d(i, j) = d(j, i);
        }
    }
    if (algebra_closure({c, d}, f, k).full())
      return {c, d, true};
  }
  throw error(errc::generation_failed, "no algebra-generating pair found");
}

} // namespace detail

/// Symmetric C, D generating M(k, q) as an algebra: E_11 and the path matrix.
inline matrix_pair full_algebra_symmetric_pair(std::size_t k, field const &f)
{
  if (k == 1)
    return {matrix::identity(f, 1), matrix::identity(f, 1), true};
  matrix c = matrix::unit(f, k, 0, 0), d = detail::path_matrix(f, k);
  if (algebra_closure({c, d}, f, k).full())
    return {c, d, true};
  return detail::search_algebra_pair(k, f, true);
}

inline matrix_pair endo_generating_pair(std::size_t k, field const &f)
{
  if (k == 1)
    return {matrix::identity(f, 1), matrix::identity(f, 1), true};
  matrix c = detail::path_matrix(f, k), d = matrix::unit(f, k, 0, 0);
  if (algebra_closure({c, d}, f, k).full())
    return {c, d, true};
  return detail::search_algebra_pair(k, f, false);
}

/// C = E_12 - E_21, D = sum_{i=2}^{k-1} (E_{i,i+1} - E_{i+1,i}) (one-based).
inline matrix_pair antisymmetric_pair(std::size_t k, field const &f)
{
  matrix c(f, k, k), d(f, k, k);
  if (k >= 2) {
    c(0, 1) = f.one();
    c(1, 0) = f.neg(f.one());
  }
  for (std::size_t i = 1; i + 1 < k; ++i) {
    d(i, i + 1) = f.one();
    d(i + 1, i) = f.neg(f.one());
  }
  return {c, d, false};
}

} // namespace minbase
