#pragma once

// Dense matrices and subspaces over F_q.

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "error.hpp"
#include "gf.hpp"

namespace minbase {

using vec = std::vector<elem>;

class matrix
{
public:
  matrix() = default;
  matrix(field f, std::size_t rows, std::size_t cols)
      : _f(std::move(f)), _rows(rows), _cols(cols), _a(rows * cols)
  {}

  static matrix identity(field const &f, std::size_t n)
  {
    matrix m(f, n, n);
    for (std::size_t i = 0; i < n; ++i)
      m(i, i) = f.one();
    return m;
  }

  static matrix from_rows(field const &f, std::vector<vec> const &rows, std::size_t cols)
  {
    matrix m(f, rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols)
        throw error(errc::dimension_mismatch, "ragged row");
      for (std::size_t j = 0; j < cols; ++j)
        m(i, j) = rows[i][j];
    }
    return m;
  }

  static matrix from_ints(field const &f, std::vector<std::vector<std::uint32_t>> const &rows)
  {
    std::size_t cols = rows.empty() ? 0 : rows[0].size();
    matrix m(f, rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < cols; ++j)
        m(i, j) = f.from_encoding(rows[i][j]);
    return m;
  }

  /// E_{ij} in M(n, q), zero-based.
  static matrix unit(field const &f, std::size_t n, std::size_t i, std::size_t j)
  {
    matrix m(f, n, n);
    m(i, j) = f.one();
    return m;
  }

  field const &fld() const { return _f; }
  std::size_t rows() const { return _rows; }
  std::size_t cols() const { return _cols; }
  elem &operator()(std::size_t i, std::size_t j) { return _a[i * _cols + j]; }
  elem operator()(std::size_t i, std::size_t j) const { return _a[i * _cols + j]; }
  std::vector<elem> const &data() const { return _a; }

  vec row(std::size_t i) const
  {
    return vec(_a.begin() + i * _cols, _a.begin() + (i + 1) * _cols);
  }

  vec col(std::size_t j) const
  {
    vec v(_rows);
    for (std::size_t i = 0; i < _rows; ++i)
      v[i] = (*this)(i, j);
    return v;
  }

  friend bool operator==(matrix const &a, matrix const &b)
  {
    return a._rows == b._rows && a._cols == b._cols && a._a == b._a;
  }

  bool is_zero() const
  {
    for (auto x : _a)
      if (x.v)
        return false;
    return true;
  }

  matrix transpose() const
  {
    matrix t(_f, _cols, _rows);
    for (std::size_t i = 0; i < _rows; ++i)
      for (std::size_t j = 0; j < _cols; ++j)
        t(j, i) = (*this)(i, j);
    return t;
  }

  /// Entrywise field automorphism a -> a^{p^j}.
  matrix frobenius(std::uint32_t j) const
  {
    matrix t = *this;
    for (auto &x : t._a)
      x = _f.frobenius(x, j);
    return t;
  }

  friend matrix operator*(matrix const &a, matrix const &b)
  {
    if (a._cols != b._rows)
      throw error(errc::dimension_mismatch, "matrix product shape");
    field const &f = a._f;
    matrix c(f, a._rows, b._cols);
    for (std::size_t i = 0; i < a._rows; ++i)
      for (std::size_t k = 0; k < a._cols; ++k) {
        elem x = a(i, k);
        if (!x.v)
          continue;
        for (std::size_t j = 0; j < b._cols; ++j)
          c(i, j) = f.add(c(i, j), f.mul(x, b(k, j)));
      }
    return c;
  }

  friend matrix operator+(matrix const &a, matrix const &b)
  {
    if (a._rows != b._rows || a._cols != b._cols)
      throw error(errc::dimension_mismatch, "matrix sum shape");
    matrix c = a;
    for (std::size_t i = 0; i < c._a.size(); ++i)
      c._a[i] = a._f.add(a._a[i], b._a[i]);
    return c;
  }

  friend matrix operator-(matrix const &a, matrix const &b)
  {
    if (a._rows != b._rows || a._cols != b._cols)
      throw error(errc::dimension_mismatch, "matrix difference shape");
    matrix c = a;
    for (std::size_t i = 0; i < c._a.size(); ++i)
      c._a[i] = a._f.sub(a._a[i], b._a[i]);
    return c;
  }

  matrix scaled(elem s) const
  {
    matrix c = *this;
    for (auto &x : c._a)
      x = _f.mul(s, x);
    return c;
  }

  /// g * v for a column vector v.
  vec apply(vec const &v) const
  {
    if (v.size() != _cols)
      throw error(errc::dimension_mismatch, "vector length");
    vec out(_rows);
    for (std::size_t i = 0; i < _rows; ++i) {
      elem s{};
      for (std::size_t j = 0; j < _cols; ++j)
        s = _f.add(s, _f.mul((*this)(i, j), v[j]));
      out[i] = s;
    }
    return out;
  }

  std::size_t hash() const
  {
    std::size_t h = _rows * 1315423911u + _cols;
    for (auto x : _a)
      h = h * 1099511628211ull ^ x.v;
    return h;
  }

private:
  field _f;
  std::size_t _rows = 0, _cols = 0;
  std::vector<elem> _a;
};

struct rref_result
{
  matrix m;
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;
};

/// Reduced row echelon form; zero rows are kept at the bottom.
inline rref_result rref(matrix m)
{
  field const &f = m.fld();
  std::size_t r = 0;
  std::vector<std::size_t> pivots;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t piv = r;
    while (piv < m.rows() && m(piv, c).v == 0)
      ++piv;
    if (piv == m.rows())
      continue;
    if (piv != r)
      for (std::size_t j = 0; j < m.cols(); ++j)
        std::swap(m(piv, j), m(r, j));
    elem inv = f.inv(m(r, c));
    for (std::size_t j = c; j < m.cols(); ++j)
      m(r, j) = f.mul(m(r, j), inv);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c).v == 0)
        continue;
      elem factor = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j)
        m(i, j) = f.sub(m(i, j), f.mul(factor, m(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(m), r, std::move(pivots)};
}

inline std::size_t rank(matrix const &m) { return rref(m).rank; }

/// Basis (as vectors) of {x : A x = 0}.
inline std::vector<vec> kernel(matrix const &a)
{
  auto [r, rk, pivots] = rref(a);
  field const &f = a.fld();
  std::size_t n = a.cols();
  std::vector<bool> is_pivot(n, false);
  for (auto p : pivots)
    is_pivot[p] = true;
  std::vector<vec> basis;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free])
      continue;
    vec x(n);
    x[free] = f.one();
    for (std::size_t i = 0; i < rk; ++i)
      x[pivots[i]] = f.neg(r(i, free));
    basis.push_back(std::move(x));
  }
  return basis;
}

struct affine_solution
{
  vec particular;
  std::vector<vec> kernel;
};

/// Solves A x = b; nullopt when inconsistent.
inline std::optional<affine_solution> solve_linear(matrix const &a, vec const &b)
{
  if (b.size() != a.rows())
    throw error(errc::dimension_mismatch, "right-hand side length");
  field const &f = a.fld();
  matrix aug(f, a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j)
      aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  auto [r, rk, pivots] = rref(aug);
  if (rk > 0 && pivots[rk - 1] == a.cols())
    return std::nullopt;
  vec x(a.cols());
  for (std::size_t i = 0; i < rk; ++i)
    x[pivots[i]] = r(i, a.cols());
  return affine_solution{std::move(x), kernel(a)};
}

inline elem det(matrix const &m)
{
  if (m.rows() != m.cols())
    throw error(errc::dimension_mismatch, "determinant of non-square matrix");
  std::vector<std::vector<elem>> rows(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    rows[i] = m.row(i);
  return small_det(m.fld(), std::move(rows));
}

inline std::optional<matrix> inverse(matrix const &m)
{
  std::size_t n = m.rows();
  if (n != m.cols())
    throw error(errc::dimension_mismatch, "inverse of non-square matrix");
  field const &f = m.fld();
  matrix aug(f, n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j)
      aug(i, j) = m(i, j);
    aug(i, n + i) = f.one();
  }
  auto [r, rk, pivots] = rref(aug);
  if (rk < n || pivots[n - 1] != n - 1)
    return std::nullopt;
  matrix inv(f, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      inv(i, j) = r(i, n + j);
  return inv;
}

/// Subspace of F_q^d stored as the RREF of a row basis.
class subspace
{
public:
  subspace() = default;

  static subspace zero(field const &f, std::size_t d)
  {
    subspace s;
    s._basis = matrix(f, 0, d);
    return s;
  }

  static subspace whole(field const &f, std::size_t d)
  {
    return span(matrix::identity(f, d));
  }

  /// Row space of m.
  static subspace span(matrix const &m)
  {
    auto [r, rk, pivots] = rref(m);
    subspace s;
    s._basis = matrix(m.fld(), rk, m.cols());
    for (std::size_t i = 0; i < rk; ++i)
      for (std::size_t j = 0; j < m.cols(); ++j)
        s._basis(i, j) = r(i, j);
    s._pivots = std::move(pivots);
    return s;
  }

  static subspace span(field const &f, std::size_t d, std::vector<vec> const &vs)
  {
    return span(matrix::from_rows(f, vs, d));
  }

  field const &fld() const { return _basis.fld(); }
  std::size_t dim() const { return _basis.rows(); }
  std::size_t ambient() const { return _basis.cols(); }
  matrix const &basis() const { return _basis; }
  std::vector<std::size_t> const &pivots() const { return _pivots; }
  std::vector<vec> vectors() const
  {
    std::vector<vec> out;
    for (std::size_t i = 0; i < dim(); ++i)
      out.push_back(_basis.row(i));
    return out;
  }

  friend bool operator==(subspace const &a, subspace const &b)
  {
    return a._basis == b._basis;
  }

  bool contains(vec const &v) const
  {
    check_len(v.size());
    field const &f = fld();
    vec r = v;
    for (std::size_t i = 0; i < dim(); ++i) {
      elem c = r[_pivots[i]];
      if (!c.v)
        continue;
      for (std::size_t j = 0; j < ambient(); ++j)
        r[j] = f.sub(r[j], f.mul(c, _basis(i, j)));
    }
    for (auto x : r)
      if (x.v)
        return false;
    return true;
  }

  bool contains(subspace const &w) const
  {
    check(w);
    for (std::size_t i = 0; i < w.dim(); ++i)
      if (!contains(w._basis.row(i)))
        return false;
    return true;
  }

  subspace sum(subspace const &w) const
  {
    check(w);
    matrix m(fld(), dim() + w.dim(), ambient());
    for (std::size_t i = 0; i < dim(); ++i)
      for (std::size_t j = 0; j < ambient(); ++j)
        m(i, j) = _basis(i, j);
    for (std::size_t i = 0; i < w.dim(); ++i)
      for (std::size_t j = 0; j < ambient(); ++j)
        m(dim() + i, j) = w._basis(i, j);
    return span(m);
  }

  subspace intersect(subspace const &w) const
  {
    check(w);
    // Solve sum a_i u_i = sum b_j w_j; the kernel gives the intersection.
    std::size_t n = ambient();
    matrix sys(fld(), n, dim() + w.dim());
    for (std::size_t i = 0; i < dim(); ++i)
      for (std::size_t r = 0; r < n; ++r)
        sys(r, i) = _basis(i, r);
    for (std::size_t j = 0; j < w.dim(); ++j)
      for (std::size_t r = 0; r < n; ++r)
        sys(r, dim() + j) = fld().neg(w._basis(j, r));
    std::vector<vec> out;
    for (auto const &k : kernel(sys)) {
      vec v(n);
      for (std::size_t i = 0; i < dim(); ++i)
        for (std::size_t r = 0; r < n; ++r)
          v[r] = fld().add(v[r], fld().mul(k[i], _basis(i, r)));
      out.push_back(std::move(v));
    }
    if (out.empty())
      return zero(fld(), n);
    return span(fld(), n, out);
  }

  /// g U for a d x d matrix g acting on column vectors.
  subspace image_under(matrix const &g) const
  {
    if (g.rows() != ambient() || g.cols() != ambient())
      throw error(errc::dimension_mismatch, "image_under shape");
    if (dim() == 0)
      return *this;
    return span(_basis * g.transpose());
  }

  std::size_t hash() const { return _basis.hash(); }

  /// Compact key: concatenated encodings.
  std::vector<std::uint32_t> key() const
  {
    std::vector<std::uint32_t> k;
    k.reserve(_basis.data().size() + 1);
    k.push_back(static_cast<std::uint32_t>(dim()));
    for (auto x : _basis.data())
      k.push_back(x.v);
    return k;
  }

private:
  void check_len(std::size_t n) const
  {
    if (n != ambient())
      throw error(errc::dimension_mismatch, "ambient dimension");
  }
  void check(subspace const &w) const
  {
    if (!(w.fld() == fld()) || w.ambient() != ambient())
      throw error(errc::dimension_mismatch, "subspaces live in different spaces");
  }

  matrix _basis;
  std::vector<std::size_t> _pivots;
};

struct subspace_hash
{
  std::size_t operator()(subspace const &s) const { return s.hash(); }
};

/// A subspace of M(n, q) closed under multiplication.
struct matrix_algebra
{
  field f;
  std::size_t n = 0;
  std::vector<matrix> basis;

  std::size_t dim() const { return basis.size(); }
  bool full() const { return dim() == n * n; }
};

namespace detail {

inline vec flatten(matrix const &m) { return m.data(); }

inline matrix unflatten(field const &f, std::size_t n, vec const &v)
{
  matrix m(f, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m(i, j) = v[i * n + j];
  return m;
}

} // namespace detail

/// {x in M(d, q) : x U_i <= U_i for all i}.
inline matrix_algebra stabilizing_algebra(std::vector<subspace> const &subs, field const &f,
                                          std::size_t d)
{
  std::vector<vec> rows;
  std::size_t nv = d * d;
  for (auto const &u : subs) {
    if (u.ambient() != d || !(u.fld() == f))
      throw error(errc::dimension_mismatch, "subspace outside the ambient space");
    auto const &b = u.basis();
    auto const &piv = u.pivots();
    std::vector<bool> is_pivot(d, false);
    for (auto p : piv)
      is_pivot[p] = true;
    for (std::size_t t = 0; t < u.dim(); ++t) {
      // w = x u, w_r = sum_s x_{rs} u_s. Residual at non-pivot column c:
      // w_c - sum_j w_{piv_j} b_{j,c} must vanish.
      for (std::size_t c = 0; c < d; ++c) {
        if (is_pivot[c])
          continue;
        vec row(nv);
        for (std::size_t s = 0; s < d; ++s) {
          elem us = b(t, s);
          if (!us.v)
            continue;
          row[c * d + s] = f.add(row[c * d + s], us);
          for (std::size_t j = 0; j < u.dim(); ++j) {
            elem bjc = b(j, c);
            if (!bjc.v)
              continue;
            std::size_t r = piv[j];
            row[r * d + s] = f.sub(row[r * d + s], f.mul(bjc, us));
          }
        }
        rows.push_back(std::move(row));
      }
    }
  }
  matrix_algebra alg{f, d, {}};
  if (rows.empty()) {
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        alg.basis.push_back(matrix::unit(f, d, i, j));
    return alg;
  }
  for (auto const &k : kernel(matrix::from_rows(f, rows, nv)))
    alg.basis.push_back(detail::unflatten(f, d, k));
  return alg;
}

inline matrix_algebra stabilizing_algebra(std::vector<subspace> const &subs)
{
  if (subs.empty())
    throw error(errc::empty_input, "no subspaces given");
  return stabilizing_algebra(subs, subs.front().fld(), subs.front().ambient());
}

/// Smallest multiplication-closed span containing I and the seeds.
inline matrix_algebra algebra_closure(std::vector<matrix> const &seeds, field const &f,
                                      std::size_t n)
{
  std::size_t nv = n * n;
  matrix_algebra alg{f, n, {}};
  // Incremental echelon basis of flattened matrices for membership.
  std::vector<vec> ech;
  std::vector<std::size_t> ech_piv;
  auto reduce = [&](vec v) {
    for (std::size_t i = 0; i < ech.size(); ++i) {
      elem c = v[ech_piv[i]];
      if (!c.v)
        continue;
      for (std::size_t j = 0; j < nv; ++j)
        v[j] = f.sub(v[j], f.mul(c, ech[i][j]));
    }
    return v;
  };
  auto try_add = [&](matrix const &m) {
    vec r = reduce(detail::flatten(m));
    std::size_t p = 0;
    while (p < nv && !r[p].v)
      ++p;
    if (p == nv)
      return false;
    elem inv = f.inv(r[p]);
    for (auto &x : r)
      x = f.mul(x, inv);
    for (auto &e : ech) {
      elem c = e[p];
      if (!c.v)
        continue;
      for (std::size_t j = 0; j < nv; ++j)
        e[j] = f.sub(e[j], f.mul(c, r[j]));
    }
    ech.push_back(std::move(r));
    ech_piv.push_back(p);
    alg.basis.push_back(m);
    return true;
  };
  try_add(matrix::identity(f, n));
  for (auto const &s : seeds) {
    if (s.rows() != n || s.cols() != n)
      throw error(errc::dimension_mismatch, "seed shape");
    try_add(s);
  }
  // Close under left multiplication by seeds; the span of words.
  for (std::size_t i = 0; i < alg.basis.size() && alg.basis.size() < nv; ++i)
    for (auto const &s : seeds) {
      matrix prod = s * alg.basis[i];
      try_add(prod);
      if (alg.basis.size() == nv)
        break;
    }
  return alg;
}

/// Whether the span of the algebra basis contains m.
inline bool algebra_contains(matrix_algebra const &alg, matrix const &m)
{
  std::size_t nv = alg.n * alg.n;
  if (alg.basis.empty())
    return m.is_zero();
  matrix sys(alg.f, nv, alg.basis.size());
  for (std::size_t b = 0; b < alg.basis.size(); ++b)
    for (std::size_t i = 0; i < nv; ++i)
      sys(i, b) = alg.basis[b].data()[i];
  return solve_linear(sys, m.data()).has_value();
}

} // namespace minbase
