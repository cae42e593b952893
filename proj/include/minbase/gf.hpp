#pragma once

// Finite fields F_{p^e} with a canonical integer encoding of elements.
//
// An element with polynomial-basis coordinates c_0..c_{e-1} (coefficients of
// 1, x, ..., x^{e-1}) is stored as the integer sum c_i p^i. The encoding is a
// bijection onto [0, q), so equality and hashing are structural.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"

namespace minbase {

struct elem
{
  std::uint32_t v = 0;

  friend constexpr bool operator==(elem, elem) = default;
  friend constexpr auto operator<=>(elem, elem) = default;
};

namespace detail {

inline bool is_prime(std::uint64_t n)
{
  if (n < 2)
    return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0)
      return false;
  return true;
}

// Dense polynomials over Z_p, low degree first, no trailing zeros.
using poly = std::vector<std::uint32_t>;

inline void poly_trim(poly &a)
{
  while (!a.empty() && a.back() == 0)
    a.pop_back();
}

inline std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p)
{
  // p is prime, a != 0
  std::uint64_t result = 1, base = a % p;
  std::uint64_t exp = p - 2;
  while (exp) {
    if (exp & 1)
      result = result * base % p;
    base = base * base % p;
    exp >>= 1;
  }
  return static_cast<std::uint32_t>(result);
}

inline poly poly_rem(poly a, poly const &b, std::uint32_t p)
{
  poly_trim(a);
  std::uint32_t lead_inv = inv_mod(b.back(), p);
  while (a.size() >= b.size()) {
    std::uint64_t c = std::uint64_t(a.back()) * lead_inv % p;
    std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) {
      std::uint64_t t = (a[shift + i] + p - (c * b[i]) % p) % p;
      a[shift + i] = static_cast<std::uint32_t>(t);
    }
    poly_trim(a);
  }
  return a;
}

inline bool poly_irreducible(poly const &f, std::uint32_t p)
{
  std::size_t deg = f.size() - 1;
  if (deg <= 1)
    return true;
  // Try every monic divisor of degree 1..deg/2.
  for (std::size_t dd = 1; dd <= deg / 2; ++dd) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < dd; ++i)
      count *= p;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      poly g(dd + 1);
      std::uint64_t t = idx;
      for (std::size_t i = 0; i < dd; ++i) {
        g[i] = static_cast<std::uint32_t>(t % p);
        t /= p;
      }
      g[dd] = 1;
      if (poly_rem(f, g, p).empty())
        return false;
    }
  }
  return true;
}

struct field_tables
{
  std::uint32_t p = 0, e = 0, q = 0;
  poly modulus;
  std::vector<std::uint32_t> exp; // size 2(q-1)
  std::vector<std::uint32_t> log; // log[0] unused
  std::vector<std::uint32_t> add; // q*q table when small, else empty
  std::vector<std::uint32_t> pw;  // p^i

  std::uint32_t add_slow(std::uint32_t a, std::uint32_t b) const
  {
    if (p == 2)
      return a ^ b;
    std::uint32_t r = 0;
    for (std::uint32_t i = 0; i < e; ++i) {
      std::uint32_t s = (a % p + b % p) % p;
      r += s * pw[i];
      a /= p;
      b /= p;
    }
    return r;
  }

  std::uint32_t mul_slow(std::uint32_t a, std::uint32_t b) const
  {
    std::vector<std::uint64_t> prod(2 * e, 0);
    std::vector<std::uint32_t> ca(e), cb(e);
    for (std::uint32_t i = 0; i < e; ++i) {
      ca[i] = a % p;
      a /= p;
      cb[i] = b % p;
      b /= p;
    }
    for (std::uint32_t i = 0; i < e; ++i)
      for (std::uint32_t j = 0; j < e; ++j)
        prod[i + j] = (prod[i + j] + std::uint64_t(ca[i]) * cb[j]) % p;
    poly pr(prod.begin(), prod.end());
    poly r = poly_rem(pr, modulus, p);
    std::uint32_t out = 0;
    for (std::size_t i = 0; i < r.size(); ++i)
      out += r[i] * pw[i];
    return out;
  }
};

inline std::shared_ptr<const field_tables> build_field(std::uint32_t p, std::uint32_t e)
{
  auto t = std::make_shared<field_tables>();
  t->p = p;
  t->e = e;
  t->pw.resize(e + 1);
  t->pw[0] = 1;
  for (std::uint32_t i = 1; i <= e; ++i)
    t->pw[i] = t->pw[i - 1] * p;
  t->q = t->pw[e];

  // Least monic irreducible of degree e, coefficient tuples (c_0, ..., c_{e-1})
  // compared lexicographically with c_0 most significant.
  if (e == 1) {
    t->modulus = {0, 1};
  } else {
    std::uint64_t count = t->q;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      poly f(e + 1);
      std::uint64_t r = idx;
      for (std::uint32_t i = e; i-- > 0;) {
        f[i] = static_cast<std::uint32_t>(r % p);
        r /= p;
      }
      f[e] = 1;
      if (f[0] != 0 && poly_irreducible(f, p)) {
        t->modulus = f;
        break;
      }
    }
  }

  std::uint32_t q = t->q;
  if (q <= 1024) {
    t->add.resize(std::size_t(q) * q);
    for (std::uint32_t a = 0; a < q; ++a)
      for (std::uint32_t b = 0; b < q; ++b)
        t->add[std::size_t(a) * q + b] = t->add_slow(a, b);
  }

  // Primitive element by prime-factor order test.
  std::uint32_t n = q - 1;
  std::vector<std::uint32_t> primes;
  {
    std::uint32_t m = n;
    for (std::uint32_t d = 2; d * d <= m; ++d) {
      if (m % d == 0) {
        primes.push_back(d);
        while (m % d == 0)
          m /= d;
      }
    }
    if (m > 1)
      primes.push_back(m);
  }
  auto slow_pow = [&](std::uint32_t a, std::uint64_t k) {
    std::uint32_t r = 1, b = a;
    while (k) {
      if (k & 1)
        r = t->mul_slow(r, b);
      b = t->mul_slow(b, b);
      k >>= 1;
    }
    return r;
  };
  std::uint32_t gen = 1;
  if (q > 2) {
    for (std::uint32_t g = 2; g < q; ++g) {
      bool ok = true;
      for (auto r : primes)
        if (slow_pow(g, n / r) == 1) {
          ok = false;
          break;
        }
      if (ok) {
        gen = g;
        break;
      }
    }
  }
  t->exp.resize(2 * std::size_t(n));
  t->log.assign(q, 0);
  std::uint32_t cur = 1;
  for (std::uint32_t i = 0; i < n; ++i) {
    t->exp[i] = cur;
    t->exp[i + n] = cur;
    t->log[cur] = i;
    cur = t->mul_slow(cur, gen);
  }
  return t;
}

} // namespace detail

/// Finite field F_{p^e}. Cheap to copy; all copies share immutable tables.
class field
{
public:
  static constexpr std::uint32_t default_cap = 1u << 20;

  field() = default;

  static field create(std::uint32_t p, std::uint32_t e, std::uint64_t cap = default_cap)
  {
    if (!detail::is_prime(p))
      throw error(errc::not_prime, std::to_string(p) + " is not prime");
    if (e < 1)
      throw error(errc::incompatible_parameters, "degree must be positive");
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < e; ++i) {
      q *= p;
      if (q > cap)
        throw error(errc::size_cap_exceeded,
                    std::to_string(p) + "^" + std::to_string(e) + " exceeds cap");
    }
    static std::mutex mtx;
    static std::map<std::pair<std::uint32_t, std::uint32_t>,
                    std::shared_ptr<const detail::field_tables>> cache;
    std::lock_guard lock(mtx);
    auto &slot = cache[{p, e}];
    if (!slot)
      slot = detail::build_field(p, e);
    field f;
    f._t = slot;
    return f;
  }

  /// Field of order q given as a prime power.
  static field of_order(std::uint64_t q)
  {
    for (std::uint32_t p = 2; std::uint64_t(p) <= q; ++p) {
      if (q % p != 0)
        continue;
      std::uint32_t e = 0;
      std::uint64_t r = q;
      while (r % p == 0) {
        r /= p;
        ++e;
      }
      if (r != 1 || !detail::is_prime(p))
        throw error(errc::not_prime, std::to_string(q) + " is not a prime power");
      return create(p, e);
    }
    throw error(errc::not_prime, std::to_string(q) + " is not a prime power");
  }

  bool valid() const { return static_cast<bool>(_t); }
  std::uint32_t p() const { return _t->p; }
  std::uint32_t e() const { return _t->e; }
  std::uint32_t q() const { return _t->q; }
  std::vector<std::uint32_t> const &modulus() const { return _t->modulus; }

  friend bool operator==(field const &a, field const &b)
  {
    return a._t == b._t || (a._t && b._t && a.p() == b.p() && a.e() == b.e());
  }

  elem zero() const { return {0}; }
  elem one() const { return {1}; }
  elem from_int(std::int64_t n) const
  {
    std::int64_t p = _t->p;
    return {static_cast<std::uint32_t>(((n % p) + p) % p)};
  }
  elem from_encoding(std::uint32_t v) const { return {v}; }
  /// The polynomial generator x (equal to 0 for prime fields).
  elem x() const { return _t->e == 1 ? elem{0} : elem{_t->p}; }

  elem add(elem a, elem b) const
  {
    if (_t->p == 2)
      return {a.v ^ b.v};
    if (_t->e == 1)
      return {(a.v + b.v) % _t->p};
    if (!_t->add.empty())
      return {_t->add[std::size_t(a.v) * _t->q + b.v]};
    return {_t->add_slow(a.v, b.v)};
  }

  elem neg(elem a) const
  {
    if (_t->p == 2)
      return a;
    std::uint32_t p = _t->p, r = 0;
    std::uint32_t v = a.v;
    for (std::uint32_t i = 0; i < _t->e; ++i) {
      std::uint32_t d = v % p;
      r += ((p - d) % p) * _t->pw[i];
      v /= p;
    }
    return {r};
  }

  elem sub(elem a, elem b) const { return add(a, neg(b)); }

  elem mul(elem a, elem b) const
  {
    if (a.v == 0 || b.v == 0)
      return {0};
    return {_t->exp[_t->log[a.v] + _t->log[b.v]]};
  }

  elem inv(elem a) const
  {
    if (a.v == 0)
      throw error(errc::division_by_zero, "inverse of zero");
    std::uint32_t n = _t->q - 1;
    return {_t->exp[(n - _t->log[a.v]) % n]};
  }

  elem div(elem a, elem b) const { return mul(a, inv(b)); }

  elem pow(elem a, std::int64_t k) const
  {
    std::uint32_t n = _t->q - 1;
    if (a.v == 0) {
      if (k == 0)
        return {1};
      if (k < 0)
        throw error(errc::division_by_zero, "negative power of zero");
      return {0};
    }
    std::int64_t r = (static_cast<std::int64_t>(_t->log[a.v]) * (k % n)) % n;
    if (r < 0)
      r += n;
    return {_t->exp[r]};
  }

  elem frobenius(elem a) const { return pow(a, _t->p); }

  /// a -> a^{p^j}
  elem frobenius(elem a, std::uint32_t j) const
  {
    elem r = a;
    for (std::uint32_t i = 0; i < j; ++i)
      r = frobenius(r);
    return r;
  }

  /// Involution a -> a^{sqrt(q)} used by hermitian forms (requires e even).
  elem sigma(elem a) const { return frobenius(a, _t->e / 2); }

  /// Primitive element used for the log tables.
  elem generator() const { return {_t->exp[_t->q > 2 ? 1 : 0]}; }

  std::uint32_t log(elem a) const { return _t->log[a.v]; }

  bool is_square(elem a) const
  {
    if (a.v == 0 || _t->p == 2)
      return true;
    return _t->log[a.v] % 2 == 0;
  }

  /// Membership in the subfield of order p^{sub_degree}.
  bool in_subfield(elem a, std::uint32_t sub_degree) const
  {
    return frobenius(a, sub_degree) == a;
  }

  std::vector<std::uint32_t> coeffs(elem a) const
  {
    std::vector<std::uint32_t> c(_t->e);
    std::uint32_t v = a.v;
    for (std::uint32_t i = 0; i < _t->e; ++i) {
      c[i] = v % _t->p;
      v /= _t->p;
    }
    return c;
  }

  elem from_coeffs(std::vector<std::uint32_t> const &c) const
  {
    std::uint32_t v = 0;
    for (std::size_t i = 0; i < c.size() && i < _t->e; ++i)
      v += (c[i] % _t->p) * _t->pw[i];
    return {v};
  }

  std::vector<elem> elements() const
  {
    std::vector<elem> out(_t->q);
    for (std::uint32_t i = 0; i < _t->q; ++i)
      out[i] = {i};
    return out;
  }

private:
  std::shared_ptr<const detail::field_tables> _t;
};

enum class field_op { add, sub, mul, div, inv, neg, pow, frobenius };

inline elem field_arith(field const &f, field_op op, elem a, elem b = {}, std::int64_t k = 0)
{
  switch (op) {
    case field_op::add: return f.add(a, b);
    case field_op::sub: return f.sub(a, b);
    case field_op::mul: return f.mul(a, b);
    case field_op::div: return f.div(a, b);
    case field_op::inv: return f.inv(a);
    case field_op::neg: return f.neg(a);
    case field_op::pow: return f.pow(a, k);
    case field_op::frobenius: return f.frobenius(a);
  }
  return a;
}

/// Determinant of a small square matrix over f (Gaussian elimination).
inline elem small_det(field const &f, std::vector<std::vector<elem>> m)
{
  std::size_t n = m.size();
  elem det = f.one();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m[piv][c].v == 0)
      ++piv;
    if (piv == n)
      return f.zero();
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = f.neg(det);
    }
    det = f.mul(det, m[c][c]);
    elem inv = f.inv(m[c][c]);
    for (std::size_t r = c + 1; r < n; ++r) {
      if (m[r][c].v == 0)
        continue;
      elem factor = f.mul(m[r][c], inv);
      for (std::size_t j = c; j < n; ++j)
        m[r][j] = f.sub(m[r][j], f.mul(factor, m[c][j]));
    }
  }
  return det;
}

/// A basis lambda_1..lambda_r of F_q over its subfield F_{q0}, q = q0^r.
///
/// Returns 1, x, ..., x^{r-1}; independence over F_{q0} is certified by the
/// nonvanishing of the Moore determinant det(lambda_j^{q0^i}).
inline std::vector<elem> field_basis_over_subfield(field const &f, std::uint32_t r)
{
  if (r == 0 || f.e() % r != 0)
    throw error(errc::not_a_divisor,
                std::to_string(r) + " does not divide " + std::to_string(f.e()));
  std::vector<elem> basis;
  elem cur = f.one();
  for (std::uint32_t i = 0; i < r; ++i) {
    basis.push_back(cur);
    cur = f.mul(cur, f.e() == 1 ? f.one() : f.x());
  }
  std::uint32_t sub_degree = f.e() / r;
  std::vector<std::vector<elem>> moore(r, std::vector<elem>(r));
  for (std::uint32_t j = 0; j < r; ++j) {
    elem v = basis[j];
    for (std::uint32_t i = 0; i < r; ++i) {
      moore[i][j] = v;
      v = f.frobenius(v, sub_degree);
    }
  }
  if (small_det(f, moore).v == 0)
    throw error(errc::generation_failed, "subfield basis is dependent");
  return basis;
}

} // namespace minbase
