#pragma once

// JSON encodings. Points of {1..m} are written 1-indexed; field elements use
// their integer encoding; subspaces are lists of RREF basis rows.

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "bounds.hpp"
#include "construct_sym.hpp"
#include "error.hpp"
#include "linalg.hpp"
#include "permgrp.hpp"
#include "verify.hpp"

namespace minbase {

using json = nlohmann::ordered_json;

inline std::string artifact_version() { return "1.0.0"; }

inline std::string bigint_str(bigint const &x) { return x.str(); }

inline json vec_json(vec const &v)
{
  json a = json::array();
  for (auto x : v)
    a.push_back(x.v);
  return a;
}

inline vec vec_from_json(field const &f, json const &j, std::size_t d)
{
  if (!j.is_array() || j.size() != d)
    throw error(errc::parse_error, "vector of length " + std::to_string(d) + " expected");
  vec v(d);
  for (std::size_t i = 0; i < d; ++i) {
    auto x = j[i].get<std::uint32_t>();
    if (x >= f.q())
      throw error(errc::parse_error, "field element out of range");
    v[i] = f.from_encoding(x);
  }
  return v;
}

inline json matrix_json(matrix const &m)
{
  json a = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i)
    a.push_back(vec_json(m.row(i)));
  return a;
}

inline json subspace_json(subspace const &U) { return matrix_json(U.basis()); }

inline subspace subspace_from_json(field const &f, json const &j, std::size_t d)
{
  if (!j.is_array())
    throw error(errc::parse_error, "subspace must be a list of rows");
  std::vector<vec> rows;
  for (auto const &r : j)
    rows.push_back(vec_from_json(f, r, d));
  return rows.empty() ? subspace::zero(f, d) : subspace::span(f, d, rows);
}

inline json subset_json(std::uint64_t mask, std::size_t m)
{
  json a = json::array();
  for (std::size_t i = 0; i < m; ++i)
    if ((mask >> i) & 1)
      a.push_back(i + 1);
  return a;
}

inline std::uint64_t subset_from_json(json const &j, std::size_t m)
{
  std::uint64_t mask = 0;
  for (auto const &x : j) {
    auto p = x.get<std::size_t>();
    if (p < 1 || p > m)
      throw error(errc::parse_error, "point out of range");
    mask |= std::uint64_t(1) << (p - 1);
  }
  return mask;
}

inline json partition_json(std::uint64_t code, std::size_t a, std::size_t b)
{
  json out = json::array();
  for (auto const &bl : partition_code::blocks(code, a, a * b)) {
    json blk = json::array();
    for (auto x : bl)
      blk.push_back(x + 1);
    out.push_back(blk);
  }
  return out;
}

inline std::uint64_t partition_from_json(json const &j, std::size_t a, std::size_t b)
{
  if (!j.is_array() || j.size() != a)
    throw error(errc::parse_error, "partition needs " + std::to_string(a) + " blocks");
  std::vector<std::vector<std::uint32_t>> bl;
  std::vector<bool> seen(a * b, false);
  for (auto const &blk : j) {
    if (!blk.is_array() || blk.size() != b)
      throw error(errc::parse_error, "blocks must have size " + std::to_string(b));
    bl.emplace_back();
    for (auto const &x : blk) {
      auto p = x.get<std::size_t>();
      if (p < 1 || p > a * b || seen[p - 1])
        throw error(errc::parse_error, "blocks must partition 1..m");
      seen[p - 1] = true;
      bl.back().push_back(static_cast<std::uint32_t>(p - 1));
    }
  }
  return partition_code::from_blocks(bl, a * b);
}

inline json witness_json(witness_t const &w)
{
  if (auto p = std::get_if<perm>(&w))
    return perm_to_cycles(*p);
  if (auto m = std::get_if<matrix>(&w))
    return matrix_json(*m);
  return nullptr;
}

/// Certificate without timing, so reports are reproducible.
inline json certificate_json(certificate const &c)
{
  json j;
  j["status"] = cert_status_name(c.status);
  j["method"] = c.method;
  j["witness"] = witness_json(c.witness);
  j["detail"] = c.detail;
  if (c.algebra_dim)
    j["algebra_dim"] = c.algebra_dim;
  return j;
}

template <class T>
inline json candidate_json(json const &action, base_candidate<T> const &c, json elements)
{
  json j;
  j["action"] = action;
  j["elements"] = std::move(elements);
  j["size"] = c.elements.size();
  j["claimed_bound"] = c.claimed_bound;
  j["bound_ref"] = c.bound_ref;
  j["seed"] = c.seed;
  j["fallback"] = c.fallback;
  j["log"] = c.log;
  return j;
}

inline json bound_report_json(bound_report const &r)
{
  json j;
  j["instance_id"] = r.id;
  j["family"] = r.family;
  j["params"] = r.params;
  j["n"] = bigint_str(r.degree);
  j["log2_order"] = r.log2_order;
  j["log2_degree"] = r.log2_degree;
  j["b_exact"] = r.b_exact ? json(*r.b_exact) : json(nullptr);
  j["b_upper"] = r.b_upper ? json(*r.b_upper) : json(nullptr);
  json checks = json::object();
  for (auto const &c : r.checks)
    checks[c.name] = {{"statement", c.statement}, {"value", c.value}, {"holds", c.holds}};
  j["bounds"] = checks;
  j["violations"] = r.violations;
  return j;
}

/// CSV with one column per bound name seen in any row.
inline std::string bound_reports_csv(std::vector<bound_report> const &rows)
{
  std::vector<std::string> names;
  for (auto const &r : rows)
    for (auto const &c : r.checks)
      if (std::find(names.begin(), names.end(), c.name) == names.end())
        names.push_back(c.name);
  auto quote = [](std::string const &s) {
    if (s.find_first_of(",\"") == std::string::npos)
      return s;
    std::string o = "\"";
    for (char ch : s)
      o += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return o + "\"";
  };
  std::string out = "instance_id,family,params,n,log2_order,b_exact,b_upper";
  for (auto const &n : names)
    out += "," + quote(n);
  out += ",violations\n";
  char buf[64];
  for (auto const &r : rows) {
    std::snprintf(buf, sizeof buf, "%.6f", r.log2_order);
    out += quote(r.id) + "," + r.family + "," + quote(r.params) + "," + bigint_str(r.degree) + "," + buf + ",";
    out += (r.b_exact ? std::to_string(*r.b_exact) : "") + "," + (r.b_upper ? std::to_string(*r.b_upper) : "");
    for (auto const &n : names) {
      out += ",";
      if (auto c = r.find(n)) {
        std::snprintf(buf, sizeof buf, "%.6f", c->value);
        out += std::string(c->holds ? "" : "!") + buf;
      }
    }
    std::string v;
    for (auto const &x : r.violations)
      v += (v.empty() ? "" : ";") + x;
    out += "," + quote(v) + "\n";
  }
  return out;
}

} // namespace minbase
