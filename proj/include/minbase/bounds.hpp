#pragma once

// Numeric checks of base-size inequalities with outward-rounded logarithms.

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "bigint.hpp"
#include "error.hpp"

namespace minbase {

using rational = boost::multiprecision::cpp_rational;

/// Closed interval [lo, hi] of rationals.
struct interval
{
  rational lo, hi;

  interval() = default;
  interval(rational v) : lo(v), hi(v) {}
  interval(rational l, rational h) : lo(std::move(l)), hi(std::move(h)) {}

  double mid() const { return (lo.convert_to<double>() + hi.convert_to<double>()) / 2; }
};

inline interval operator+(interval const &a, interval const &b) { return {a.lo + b.lo, a.hi + b.hi}; }
inline interval operator-(interval const &a, interval const &b) { return {a.lo - b.hi, a.hi - b.lo}; }
inline interval operator-(interval const &a) { return {-a.hi, -a.lo}; }

inline interval operator*(interval const &a, interval const &b)
{
  rational p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  return {*std::min_element(p, p + 4), *std::max_element(p, p + 4)};
}

inline interval operator/(interval const &a, interval const &b)
{
  if (b.lo <= 0 && b.hi >= 0)
    throw error(errc::division_by_zero, "interval divisor contains zero");
  return a * interval(1 / b.hi, 1 / b.lo);
}

/// a < b for every choice of values in the intervals.
inline bool surely_lt(interval const &a, interval const &b) { return a.hi < b.lo; }
inline bool surely_le(interval const &a, interval const &b) { return a.hi <= b.lo; }

constexpr unsigned log_frac_bits = 64;

/// log2(n) enclosed at 64 fractional bits: the lower end rounds the
/// squaring chain down, the upper end rounds it up.
inline interval log2_interval(bigint const &n)
{
  if (n <= 0)
    throw error(errc::incompatible_parameters, "log of a non-positive integer");
  unsigned L = static_cast<unsigned>(boost::multiprecision::msb(n));
  rational const scale = rational(bigint(1) << log_frac_bits);
  if (n == (bigint(1) << L))
    return interval(rational(L));

  constexpr unsigned P = 256;
  bigint const one = bigint(1) << P, two = one << 1;
  bigint lo = L <= P ? bigint(n << (P - L)) : bigint(n >> (L - P));
  bigint hi = lo + 1;
  bigint blo = 0, bhi = 0;
  for (unsigned i = 0; i < log_frac_bits; ++i) {
    lo = (lo * lo) >> P;
    bigint sq = hi * hi;
    hi = (sq >> P) + ((sq & (one - 1)) != 0 ? 1 : 0);
    blo <<= 1;
    bhi <<= 1;
    if (lo >= two) {
      blo += 1;
      lo >>= 1;
    }
    if (hi >= two) {
      bhi += 1;
      hi = (hi >> 1) + (hi & 1);
    }
  }
  return {rational(L) + rational(blo) / scale, rational(L) + rational(bhi + 1) / scale};
}

/// ln 2 from the series sum 1/(k 2^k), with the tail bounded by 1/((K+1) 2^K).
inline interval const &ln2_interval()
{
  static interval const v = [] {
    constexpr unsigned K = 80, P = 128;
    bigint lo = 0, hi = 0;
    for (unsigned k = 1; k <= K; ++k) {
      bigint den = bigint(k) << k;
      bigint num = bigint(1) << P;
      lo += num / den;
      hi += (num + den - 1) / den;
    }
    bigint tail_den = bigint(K + 1) << K;
    hi += ((bigint(1) << P) + tail_den - 1) / tail_den;
    rational s = rational(bigint(1) << P);
    return interval(rational(lo) / s, rational(hi) / s);
  }();
  return v;
}

inline interval ln_interval(bigint const &n) { return log2_interval(n) * ln2_interval(); }

/// ln of a positive rational num/den.
inline interval ln_interval(bigint const &num, bigint const &den)
{
  return (log2_interval(num) - log2_interval(den)) * ln2_interval();
}

/// log|G| / log n as an interval (base independent).
inline interval log_ratio(bigint const &order, bigint const &degree)
{
  return log2_interval(order) / log2_interval(degree);
}

inline bigint isqrt_floor(bigint const &n) { return boost::multiprecision::sqrt(n); }

inline double round_up(interval const &x) { return std::nextafter(x.hi.convert_to<double>(), INFINITY); }
inline double round_down(interval const &x) { return std::nextafter(x.lo.convert_to<double>(), -INFINITY); }

// ---------------------------------------------------------------------------
// Bound reports

enum class instance_family { subsets, partitions, subspaces, pairs, affine, linear, hyperplanes, diagonal };

inline const char *instance_family_name(instance_family f)
{
  switch (f) {
    case instance_family::subsets: return "subsets";
    case instance_family::partitions: return "partitions";
    case instance_family::subspaces: return "subspaces";
    case instance_family::pairs: return "pairs";
    case instance_family::affine: return "affine";
    case instance_family::linear: return "linear";
    case instance_family::hyperplanes: return "hyperplanes";
    case instance_family::diagonal: return "diagonal";
  }
  return "?";
}

/// A group acting on n points together with what is known about b. For
/// linear rows the group is H <= GL(V) acting on the vectors of V.
struct bound_instance
{
  std::string id;
  instance_family family = instance_family::subsets;
  std::string params;
  bigint order;
  bigint degree;
  std::optional<std::size_t> b_exact;
  std::optional<std::size_t> b_upper;
  bool primitive = true;
  std::size_t m = 0, k = 0, a = 0, b = 0, d = 0, q = 0;
  /// 1 for linear groups, 2 for the other classical groups.
  unsigned t = 2;
};

struct bound_check
{
  std::string name;
  std::string statement;
  /// outward-rounded value of the right-hand side
  double value = 0;
  bool holds = true;
};

struct bound_report
{
  std::string id;
  std::string family;
  std::string params;
  bigint degree;
  double log2_order = 0;
  double log2_degree = 0;
  std::optional<std::size_t> b_exact, b_upper;
  std::vector<bound_check> checks;
  std::vector<std::string> violations;

  bound_check const *find(std::string const &name) const
  {
    for (auto const &c : checks)
      if (c.name == name)
        return &c;
    return nullptr;
  }
};

inline bool contains_alt_of_degree(bigint const &order, bigint const &n)
{
  if (n < 5)
    return order * 2 >= factorial(n.convert_to<std::uint64_t>());
  // n!/2 >= 2^(n-1), so a smaller order settles it without the factorial
  if (boost::multiprecision::msb(order) + 1 < n - 1)
    return false;
  return order * 2 >= factorial(n.convert_to<std::uint64_t>());
}

inline bound_report eval_bounds(bound_instance const &in)
{
  if (in.order <= 0 || in.degree <= 1)
    throw error(errc::missing_field, "order and degree are required");
  if (!in.b_exact && !in.b_upper)
    throw error(errc::missing_field, "b_exact or b_upper is required");
  bound_report r;
  r.id = in.id;
  r.family = instance_family_name(in.family);
  r.params = in.params;
  r.degree = in.degree;
  r.b_exact = in.b_exact;
  r.b_upper = in.b_upper;
  auto lo = log2_interval(in.order), ln = log2_interval(in.degree);
  r.log2_order = lo.mid();
  r.log2_degree = ln.mid();
  std::size_t b = in.b_exact ? *in.b_exact : *in.b_upper;
  interval const bi{rational(b)};
  interval const ratio = lo / ln;

  auto add = [&](std::string name, std::string statement, interval const &rhs, bool holds) {
    r.checks.push_back({std::move(name), std::move(statement), round_up(rhs), holds});
    if (!holds)
      r.violations.push_back(r.checks.back().name);
  };
  auto upper = [&](std::string name, std::string statement, interval const &rhs) {
    add(std::move(name), std::move(statement), rhs, surely_le(bi, rhs));
  };
  auto two_ratio_plus = [&](std::size_t c) { return interval(rational(2)) * ratio + interval(rational(c)); };

  // |G| < n^b: exact integer comparison
  r.checks.push_back({"trivial", "b > log|G|/log n", round_down(ratio), in.order < ipow(in.degree, b)});
  if (!r.checks.back().holds)
    r.violations.push_back("trivial");

  bool permutation_row = in.family != instance_family::linear;
  if (permutation_row && in.primitive) {
    upper("Thm1.1", "b <= 2 log|G|/log n + 24", two_ratio_plus(24));
    if (!contains_alt_of_degree(in.order, in.degree)) {
      bigint s = isqrt_floor(in.degree);
      bool holds = b <= 25 || bigint(b) * b <= in.degree;
      rational v = s < 25 ? rational(25) : rational(s);
      add("Cor1.3", "b <= max(sqrt n, 25)", interval(v, v + 1), holds);
    }
  }
  switch (in.family) {
    case instance_family::subsets: {
      interval sym = log2_interval(factorial(in.m)) / ln;
      upper("Thm2.1", "b <= 2 log|G|/log n + 16", two_ratio_plus(16));
      upper("Prop2.5", "b <= 2 ln|Sym(m)|/ln n + 16", interval(rational(2)) * sym + interval(rational(16)));
      std::size_t T = (in.m + in.k - 1) / in.k, L = 0;
      for (std::size_t p = 1; p < in.m; p *= T)
        ++L;
      upper("Thm2.2(i)", "b <= ceil(log_T m) (T-1), T = ceil(m/k)", interval(rational(L * (T - 1))));
      if (in.k * in.k <= in.m) {
        std::size_t v = (2 * in.m - 2 + in.k) / (in.k + 1);
        bool holds = in.b_exact ? *in.b_exact == v : b <= v;
        add("Thm2.2(ii)", "b = ceil((2m-2)/(k+1))", interval(rational(v)), holds);
      }
      break;
    }
    case instance_family::partitions: {
      interval sym = log2_interval(factorial(in.a * in.b)) / ln;
      upper("Thm2.1", "b <= 2 log|G|/log n + 16", two_ratio_plus(16));
      upper("Prop2.7", "f(a,b) <= ln|Sym(m)|/ln n + 5", sym + interval(rational(5)));
      if (in.b >= 3) {
        if (in.a >= in.b) {
          upper("Thm2.3(i)", "f(a,b) <= 6", interval(rational(6)));
        } else {
          interval lg = log2_interval(in.b) / log2_interval(in.a) + interval(rational(4));
          upper("Thm2.3(ii)", "f(a,b) <= log_a b + 4", lg);
        }
      } else {
        upper("f(a,2)", "f(a,2) <= 3", interval(rational(3)));
      }
      if (in.a < in.b) {
        interval lhs = log2_interval(in.b) / log2_interval(in.a) - interval(rational(1));
        add("ln-ratio", "ln b/ln a - 1 < ln((ab)!)/ln n", sym, surely_lt(lhs, sym));
      }
      break;
    }
    case instance_family::subspaces:
    case instance_family::pairs: {
      upper("Thm3.1", "b <= 2 log|G|/log n + 16", two_ratio_plus(16));
      interval dk = interval(rational(in.d) / rational(in.k));
      std::string name = in.family == instance_family::pairs ? "Prop3.5" : "Thm3.3";
      upper(name, "b <= d/k + 11", dk + interval(rational(11)));
      if (in.family == instance_family::subspaces && 2 * in.k <= in.d) {
        interval rhs = interval(rational(in.d) / rational(in.t * in.k)) - interval(rational(1));
        add("Prop3.2", "log|G|/log|X| >= d/(tk) - 1", ratio, surely_le(rhs, ratio));
        r.checks.back().value = round_down(ratio);
      }
      break;
    }
    case instance_family::hyperplanes: {
      // an orbit of Sp(2m, q), q even, on O+- cosets; b <= 2m+1 < 2 log|G|/log n + 3
      std::size_t v = in.d + 1;
      add("Sec3.3(3)", "2m+1 < 2 log|G|/log n + 3", two_ratio_plus(3),
          surely_lt(interval(rational(v)), two_ratio_plus(3)));
      upper("hyperplane", "b <= 2m+1", interval(rational(v)));
      break;
    }
    case instance_family::diagonal: upper("eq1", "b <= log|G|/log n + 3", ratio + interval(rational(3))); break;
    case instance_family::affine: upper("Thm5.1", "b <= 2 log|G|/log n + 16", two_ratio_plus(16)); break;
    case instance_family::linear: {
      upper("Thm5.2", "b_V(H) <= 2 log|H|/log|V| + 17", two_ratio_plus(17));
      add("Thm5.5", "b(H) <= 15 or b(H) <= 2 log|H|/log|V| + 9", two_ratio_plus(9),
          b <= 15 || surely_le(bi, two_ratio_plus(9)));
      break;
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Subset-action estimates

struct lemma24_result
{
  interval lower, upper, actual;
  bool holds = false;
};

/// (t/(ln t + 1))(ln m - 1) < ln m!/ln C(m,k) < (t/ln t) ln m with t = m/k.
inline lemma24_result lemma24_interval(std::size_t m, std::size_t k)
{
  if (k < 2 || 2 * k > m)
    throw error(errc::incompatible_parameters, "need 2 <= k <= m/2");
  lemma24_result r;
  interval t{rational(bigint(m), bigint(k))};
  interval lnm = ln_interval(bigint(m)), lnt = ln_interval(bigint(m), bigint(k));
  interval one{rational(1)};
  r.lower = t / (lnt + one) * (lnm - one);
  r.upper = t / lnt * lnm;
  r.actual = log2_interval(factorial(m)) / log2_interval(binomial(m, k));
  r.holds = surely_lt(r.lower, r.actual) && surely_lt(r.actual, r.upper);
  return r;
}

struct ratio_row
{
  std::size_t m = 0;
  std::size_t b = 0;
  interval ratio;
  double target = 0;
  /// outward-rounded bound on |ratio - target|
  double deviation = 0;
};

/// b(m,k) log n / log|Sym(m)| with b(m,k) = ceil((2m-2)/(k+1)).
inline std::vector<ratio_row> ratio_asymptotic(std::size_t k, std::vector<std::size_t> const &ms)
{
  std::vector<ratio_row> out;
  for (std::size_t m : ms) {
    if (k < 1 || k * k > m || 2 * k > m)
      throw error(errc::formula_inapplicable, "need k^2 <= m");
    ratio_row row;
    row.m = m;
    row.b = (2 * m - 2 + k) / (k + 1);
    row.ratio = interval(rational(row.b)) * log2_interval(binomial(m, k)) / log2_interval(factorial(m));
    rational target(bigint(2 * k), bigint(k + 1));
    row.target = target.convert_to<double>();
    interval diff = row.ratio - interval(target);
    rational dev = std::max(abs(diff.lo), abs(diff.hi));
    row.deviation = std::nextafter(dev.convert_to<double>(), INFINITY);
    out.push_back(row);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Symplectic affine groups

inline bigint sp_order(std::size_t d, std::uint64_t q)
{
  std::size_t m = d / 2;
  bigint r = ipow(bigint(q), m * m);
  for (std::size_t i = 1; i <= m; ++i)
    r *= ipow(bigint(q), 2 * i) - 1;
  return r;
}

struct sp_identity_result
{
  std::size_t d = 0;
  std::uint64_t q = 0;
  std::size_t b = 0;
  interval two_ratio;
  /// nearest integer to 2 log|G|/log n minus 2, when the interval decides it
  std::optional<long> rhs;
  bool holds = false;
};

/// b(G) = round(2 log|G|/log n) - 2 for G = V:Sp(V), with b(G) = d + 1.
inline sp_identity_result sp_floor_identity(std::size_t d, std::uint64_t q)
{
  if (d == 0 || d % 2)
    throw error(errc::incompatible_parameters, "d must be even");
  sp_identity_result r;
  r.d = d;
  r.q = q;
  r.b = d + 1;
  bigint n = ipow(bigint(q), d);
  r.two_ratio = interval(rational(2)) * log_ratio(n * sp_order(d, q), n);
  rational half(1, 2);
  auto nearest = [&](rational const &x) {
    rational y = x + half;
    return static_cast<long>(boost::multiprecision::numerator(y) / boost::multiprecision::denominator(y));
  };
  long a = nearest(r.two_ratio.lo), b = nearest(r.two_ratio.hi);
  if (a == b) {
    r.rhs = a - 2;
    r.holds = static_cast<long>(r.b) == a - 2;
  }
  return r;
}

inline bool is_prime_power(std::uint64_t q)
{
  if (q < 2)
    return false;
  std::uint64_t p = 2;
  while (p * p <= q && q % p)
    ++p;
  if (p * p > q)
    return true;
  while (q % p == 0)
    q /= p;
  return q == 1;
}

struct sp_scan_result
{
  std::vector<sp_identity_result> rows;
  /// smallest scanned q from which the identity holds for every larger scanned q
  std::optional<std::uint64_t> threshold;
};

inline sp_scan_result sp_threshold_scan(std::size_t d, std::uint64_t qmax)
{
  sp_scan_result out;
  for (std::uint64_t q = 2; q <= qmax; ++q)
    if (is_prime_power(q))
      out.rows.push_back(sp_floor_identity(d, q));
  for (std::size_t i = out.rows.size(); i-- > 0;) {
    if (!out.rows[i].holds)
      break;
    out.threshold = out.rows[i].q;
  }
  return out;
}

} // namespace minbase
