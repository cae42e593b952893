#pragma once

// Bases for linear groups acting on vectors: symplectic groups, subfield
// groups and tensor products.

#include <optional>
#include <string>
#include <vector>

#include "classical.hpp"
#include "construct_sym.hpp"
#include "error.hpp"
#include "gf.hpp"
#include "linalg.hpp"
#include "verify.hpp"

namespace minbase {

using vector_candidate = base_candidate<vec>;

inline vec unit_vector(field const &f, std::size_t d, std::size_t i)
{
  vec e(d);
  e[i] = f.one();
  return e;
}

/// The standard basis, a base of size d for Sp(d, q) on V.
inline vector_candidate symplectic_vector_base(std::size_t d, field const &f)
{
  if (d == 0 || d % 2)
    throw error(errc::incompatible_parameters, "d must be even");
  vector_candidate out;
  for (std::size_t i = 0; i < d; ++i)
    out.elements.push_back(unit_vector(f, d, i));
  out.claimed_bound = d;
  out.bound_ref = "Prop5.4(i)";
  out.log.push_back("standard basis e_1..e_" + std::to_string(d));
  return out;
}

// ---------------------------------------------------------------------------
// Subfield groups F_q^* GL(d, q0), q = q0^r

/// v_i = sum of lambda_j e_j over the i-th block of r coordinates; the last
/// block holds the d mod r leftover coordinates.
inline vector_candidate subfield_base(std::size_t d, field const &f, std::uint32_t r)
{
  auto lambda = field_basis_over_subfield(f, r);
  vector_candidate out;
  std::size_t k = d / r, l = d % r;
  for (std::size_t i = 0; i <= k; ++i) {
    std::size_t begin = i * r, end = std::min(d, begin + r);
    if (begin == end)
      break;
    vec v(d);
    for (std::size_t j = begin; j < end; ++j)
      v[j] = lambda[j - begin];
    out.elements.push_back(std::move(v));
  }
  out.claimed_bound = k + 2;
  out.bound_ref = "Prop5.7(i)";
  out.log.push_back("d = " + std::to_string(k) + "*" + std::to_string(r) + " + " + std::to_string(l) + ", " +
                    std::to_string(out.elements.size()) + " block vectors");
  out.log.push_back("one further vector for the cyclic quotient J (cited, not constructed)");
  return out;
}

/// Elements of the subfield of order p^{e/r}.
inline std::vector<elem> subfield_elements(field const &f, std::uint32_t r)
{
  std::vector<elem> out;
  for (std::uint32_t v = 0; v < f.q(); ++v)
    if (f.in_subfield(elem{v}, f.e() / r))
      out.push_back(elem{v});
  return out;
}

/// Only the identity of GL(d, q0) fixes every vector. The rows of g act
/// independently, so it is enough that no nonzero y in F_{q0}^d has
/// sum_j y_j v_j = 0 for all given v.
inline certificate verify_subfield_base(std::size_t d, field const &f, std::uint32_t r,
                                        std::vector<vec> const &vectors, std::uint64_t enum_cap = 1u << 22)
{
  detail::stopwatch sw;
  certificate c;
  c.method = "subfield_kernel";
  auto sub = subfield_elements(f, r);
  long double total = 1;
  for (std::size_t i = 0; i < d; ++i)
    total *= sub.size();
  if (total > static_cast<long double>(enum_cap)) {
    c.status = cert_status::inconclusive;
    c.detail = "subfield kernel too large to enumerate";
    c.elapsed_ms = sw.ms();
    return c;
  }
  std::uint64_t count = static_cast<std::uint64_t>(total);
  for (std::uint64_t idx = 1; idx < count; ++idx) {
    vec y(d);
    std::uint64_t t = idx;
    for (std::size_t j = 0; j < d; ++j, t /= sub.size())
      y[j] = sub[t % sub.size()];
    bool zero = true;
    for (auto const &v : vectors) {
      elem s = f.zero();
      for (std::size_t j = 0; j < d; ++j)
        s = f.add(s, f.mul(y[j], v[j]));
      if (s.v) {
        zero = false;
        break;
      }
    }
    if (!zero)
      continue;
    // g = I + u y^T fixes every vector; det g = 1 + y.u, try u = e_i, e_i + e_j
    std::vector<vec> us;
    for (std::size_t i = 0; i < d; ++i) {
      us.push_back(unit_vector(f, d, i));
      for (std::size_t j = i + 1; j < d; ++j) {
        vec u = unit_vector(f, d, i);
        u[j] = f.one();
        us.push_back(u);
      }
    }
    for (auto const &u : us) {
      matrix g = matrix::identity(f, d);
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
          g(i, j) = f.add(g(i, j), f.mul(u[i], y[j]));
      if (!det(g).v)
        continue;
      c.status = cert_status::not_a_base;
      c.witness = g;
      c.detail = "F_q0 relation among the coordinates";
      c.elapsed_ms = sw.ms();
      return c;
    }
  }
  c.status = cert_status::group_base;
  c.detail = "no F_q0 relation among " + std::to_string(d) + " coordinates";
  c.elapsed_ms = sw.ms();
  return c;
}

// ---------------------------------------------------------------------------
// Tensor products H1 (x) H2 on V1 (x) V2, coordinates (i, j) -> i * n2 + j

struct tensor_candidate
{
  vector_candidate base;
  std::size_t n1 = 0, n2 = 0;
};

inline tensor_candidate tensor_base(std::vector<vec> const &strong_base, std::size_t n1, field const &f,
                                    std::uint64_t seed = 7)
{
  if (strong_base.empty())
    throw error(errc::empty_input, "empty strong base");
  std::size_t n2 = strong_base[0].size(), b = strong_base.size();
  if (n1 == 0 || n1 > b)
    throw error(errc::incompatible_parameters, "need 1 <= n1 <= b*(H2)");
  if (subspace::span(f, n2, strong_base).dim() != b)
    throw error(errc::independence_violated, "strong base vectors are dependent");
  tensor_candidate out;
  out.n1 = n1;
  out.n2 = n2;
  auto &c = out.base;
  std::size_t n = n1 * n2;
  // x_k (x) y  has coordinates y at block k
  auto put = [&](vec &v, std::size_t k, vec const &y, elem coef) {
    for (std::size_t j = 0; j < n2; ++j)
      v[k * n2 + j] = f.add(v[k * n2 + j], f.mul(coef, y[j]));
  };
  if (n1 == 1) {
    c.elements = strong_base;
    c.claimed_bound = b;
    c.bound_ref = "Lemma5.9";
    c.log.push_back("n1 = 1: the strong base itself");
    return out;
  }
  std::size_t r = b / n1, s = b % n1;
  std::vector<std::vector<std::size_t>> blocks;
  for (std::size_t i = 0; i < r; ++i) {
    blocks.emplace_back();
    for (std::size_t k = 0; k < n1; ++k)
      blocks.back().push_back(i * n1 + k);
  }
  if (s) {
    blocks.emplace_back();
    for (std::size_t k = 0; k < s; ++k)
      blocks.back().push_back(r * n1 + k);
  }
  for (auto const &bl : blocks) {
    vec v(n);
    for (std::size_t k = 0; k < bl.size(); ++k)
      put(v, k, strong_base[bl[k]], f.one());
    c.elements.push_back(std::move(v));
  }
  auto [C, D, certified] = sl_generating_pair(n1, f, seed);
  for (matrix const *g : {&C, &D}) {
    // sum_i (g (x) 1) v_i
    vec v(n);
    for (auto const &bl : blocks)
      for (std::size_t k = 0; k < bl.size(); ++k)
        for (std::size_t a = 0; a < n1; ++a)
          if ((*g)(a, k).v)
            put(v, a, strong_base[bl[k]], (*g)(a, k));
    c.elements.push_back(std::move(v));
  }
  c.claimed_bound = r + 3;
  c.bound_ref = "Lemma5.9";
  c.seed = seed;
  c.log.push_back("b = " + std::to_string(r) + "*" + std::to_string(n1) + " + " + std::to_string(s) + ", " +
                  std::to_string(blocks.size()) + " block vectors");
  c.log.push_back(std::string("v, w from an SL(n1) generating pair") + (certified ? "" : " (uncertified)"));
  return out;
}

/// Exhaustive over h2 in H2: the h1 with (h1 (x) h2) v = v for every v form
/// an affine space (rows of h1 solve independent linear systems), whose
/// invertible members are enumerated.
inline certificate verify_tensor_base(std::size_t n1, std::size_t n2, std::vector<matrix> const &h2_elements,
                                      std::vector<vec> const &vectors, std::uint64_t enum_cap = 1u << 16)
{
  detail::stopwatch sw;
  certificate c;
  c.method = "tensor_exhaustive";
  if (h2_elements.empty())
    throw error(errc::empty_input, "H2 has no elements");
  field const &f = h2_elements[0].fld();
  matrix const I1 = matrix::identity(f, n1), I2 = matrix::identity(f, n2);
  auto as_matrix = [&](vec const &v) {
    matrix m(f, n1, n2);
    for (std::size_t i = 0; i < n1; ++i)
      for (std::size_t j = 0; j < n2; ++j)
        m(i, j) = v[i * n2 + j];
    return m;
  };
  std::vector<matrix> vm;
  for (auto const &v : vectors)
    vm.push_back(as_matrix(v));
  std::size_t nonscalar_checked = 0;
  for (auto const &h2 : h2_elements) {
    // X P_t = Vm_t with P_t = Vm_t h2^T; one system per row of X
    matrix A(f, n2 * vm.size(), n1);
    for (std::size_t t = 0; t < vm.size(); ++t) {
      matrix P = vm[t] * h2.transpose();
      for (std::size_t j = 0; j < n2; ++j)
        for (std::size_t k = 0; k < n1; ++k)
          A(t * n2 + j, k) = P(k, j);
    }
    std::vector<affine_solution> rows;
    bool ok = true;
    for (std::size_t a = 0; a < n1 && ok; ++a) {
      vec rhs(n2 * vm.size());
      for (std::size_t t = 0; t < vm.size(); ++t)
        for (std::size_t j = 0; j < n2; ++j)
          rhs[t * n2 + j] = vm[t](a, j);
      auto sol = solve_linear(A, rhs);
      if (!sol)
        ok = false;
      else
        rows.push_back(*sol);
    }
    if (!ok)
      continue;
    std::size_t free = 0;
    for (auto const &r : rows)
      free += r.kernel.size();
    long double total = 1;
    for (std::size_t i = 0; i < free; ++i)
      total *= f.q();
    if (total > static_cast<long double>(enum_cap)) {
      c.status = cert_status::inconclusive;
      c.detail = "solution space too large";
      c.elapsed_ms = sw.ms();
      return c;
    }
    std::uint64_t count = static_cast<std::uint64_t>(total);
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      std::uint64_t t = idx;
      matrix X(f, n1, n1);
      for (std::size_t a = 0; a < n1; ++a) {
        vec x = rows[a].particular;
        for (auto const &kv : rows[a].kernel) {
          elem coef{static_cast<std::uint32_t>(t % f.q())};
          t /= f.q();
          for (std::size_t j = 0; j < n1; ++j)
            x[j] = f.add(x[j], f.mul(coef, kv[j]));
        }
        for (std::size_t j = 0; j < n1; ++j)
          X(a, j) = x[j];
      }
      if (!det(X).v)
        continue;
      ++nonscalar_checked;
      // X (x) h2 is the identity exactly when X = l I and h2 = l^-1 I
      elem l = X(0, 0);
      bool trivial = l.v && X == I1.scaled(l) && h2.scaled(l) == I2;
      if (!trivial) {
        matrix w(f, n1 * n2, n1 * n2);
        for (std::size_t i = 0; i < n1; ++i)
          for (std::size_t k = 0; k < n1; ++k)
            for (std::size_t j = 0; j < n2; ++j)
              for (std::size_t m = 0; m < n2; ++m)
                w(i * n2 + j, k * n2 + m) = f.mul(X(i, k), h2(j, m));
        c.status = cert_status::not_a_base;
        c.witness = w;
        c.detail = "non-identity h1 (x) h2 fixes every vector";
        c.elapsed_ms = sw.ms();
        return c;
      }
    }
  }
  c.status = cert_status::group_base;
  c.detail = std::to_string(h2_elements.size()) + " elements of H2, " + std::to_string(nonscalar_checked) +
             " invertible solutions checked";
  c.elapsed_ms = sw.ms();
  return c;
}

} // namespace minbase
