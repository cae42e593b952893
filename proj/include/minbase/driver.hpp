#pragma once

// Action descriptors and the construct / verify / bruteforce / bound
// workflows shared by the command-line tool and the acceptance suite.

#include <atomic>
#include <bit>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include "bounds.hpp"
#include "classical.hpp"
#include "construct_linear.hpp"
#include "construct_subspace.hpp"
#include "construct_sym.hpp"
#include "error.hpp"
#include "io.hpp"
#include "permgrp.hpp"
#include "subspace_orbit.hpp"
#include "verify.hpp"

namespace minbase {

struct caps
{
  std::size_t degree_cap = 100000;
  std::uint64_t node_cap = 100000000;
  std::uint64_t enum_cap = 1u << 20;
};

/// kind: subsets, partitions, subspaces, pairs, vectors, subfield, tensor
struct action_desc
{
  std::string kind;
  std::size_t m = 0, k = 0, a = 0, b = 0, d = 0, r = 0, n1 = 0, n2 = 0;
  std::uint32_t q = 0;
  std::string family;
  std::string orbit = "all";
  std::string orbit_label;
  std::string group = "sym";
  bool flags = true;
};

inline json action_json(action_desc const &x)
{
  json j;
  j["kind"] = x.kind;
  if (x.kind == "subsets") {
    j["group"] = x.group;
    j["m"] = x.m;
    j["k"] = x.k;
  } else if (x.kind == "partitions") {
    j["a"] = x.a;
    j["b"] = x.b;
  } else if (x.kind == "subspaces") {
    j["family"] = x.family;
    j["d"] = x.d;
    j["q"] = x.q;
    j["k"] = x.k;
    j["orbit"] = x.orbit;
    if (!x.orbit_label.empty())
      j["orbit_label"] = x.orbit_label;
  } else if (x.kind == "pairs") {
    j["d"] = x.d;
    j["q"] = x.q;
    j["k"] = x.k;
    j["flags"] = x.flags;
  } else if (x.kind == "vectors") {
    j["family"] = x.family.empty() ? "Sp" : x.family;
    j["d"] = x.d;
    j["q"] = x.q;
  } else if (x.kind == "subfield") {
    j["d"] = x.d;
    j["q"] = x.q;
    j["r"] = x.r;
  } else if (x.kind == "tensor") {
    j["n1"] = x.n1;
    j["n2"] = x.n2;
    j["q"] = x.q;
  }
  return j;
}

inline action_desc action_from_json(json const &j)
{
  action_desc x;
  if (!j.contains("kind"))
    throw error(errc::missing_field, "action.kind");
  x.kind = j.at("kind").get<std::string>();
  auto num = [&](char const *key, auto &dst) {
    if (j.contains(key))
      dst = j.at(key).get<std::remove_reference_t<decltype(dst)>>();
  };
  num("m", x.m);
  num("k", x.k);
  num("a", x.a);
  num("b", x.b);
  num("d", x.d);
  num("r", x.r);
  num("n1", x.n1);
  num("n2", x.n2);
  num("q", x.q);
  if (j.contains("family"))
    x.family = j.at("family").get<std::string>();
  if (j.contains("orbit"))
    x.orbit = j.at("orbit").get<std::string>();
  if (j.contains("orbit_label"))
    x.orbit_label = j.at("orbit_label").get<std::string>();
  if (j.contains("group"))
    x.group = j.at("group").get<std::string>();
  if (j.contains("flags"))
    x.flags = j.at("flags").get<bool>();
  return x;
}

inline std::string action_params(action_desc const &x)
{
  if (x.kind == "subsets")
    return "m=" + std::to_string(x.m) + " k=" + std::to_string(x.k);
  if (x.kind == "partitions")
    return "a=" + std::to_string(x.a) + " b=" + std::to_string(x.b);
  if (x.kind == "subspaces")
    return x.family + " d=" + std::to_string(x.d) + " q=" + std::to_string(x.q) + " k=" + std::to_string(x.k) +
           " " + (x.orbit_label.empty() ? x.orbit : x.orbit_label);
  if (x.kind == "pairs")
    return std::string(x.flags ? "flags" : "complements") + " d=" + std::to_string(x.d) +
           " q=" + std::to_string(x.q) + " k=" + std::to_string(x.k);
  if (x.kind == "vectors")
    return "Sp d=" + std::to_string(x.d) + " q=" + std::to_string(x.q);
  if (x.kind == "subfield")
    return "d=" + std::to_string(x.d) + " q=" + std::to_string(x.q) + " r=" + std::to_string(x.r);
  if (x.kind == "tensor")
    return "n1=" + std::to_string(x.n1) + " n2=" + std::to_string(x.n2) + " q=" + std::to_string(x.q);
  return x.kind;
}

inline field field_of(action_desc const &x)
{
  if (!x.q)
    throw error(errc::missing_field, "q");
  return field::of_order(x.q);
}

/// The orbit selected by kind and (optionally) label; resolves the default
/// label so that the descriptor pins down one orbit.
inline std::pair<mat_group_spec, subspace_orbit> resolve_orbit(action_desc &x)
{
  auto s = make_spec(x.family, x.d, x.q);
  check_spec(s);
  orbit_kind want = parse_orbit_kind(x.orbit);
  for (auto &o : subspace_orbits(s, x.k)) {
    if (o.kind != want)
      continue;
    if (!x.orbit_label.empty() && o.label != x.orbit_label)
      continue;
    x.orbit = orbit_kind_name(o.kind);
    x.orbit_label = o.label;
    return {s, o};
  }
  throw error(errc::orbit_empty, "no " + x.orbit + " orbit of " + std::to_string(x.k) + "-spaces");
}

/// Sym(m) acting on the strong base e_1..e_n2 of GL(n2, 2).
inline std::vector<vec> tensor_strong_base(action_desc const &x, field const &f)
{
  if (f.q() != 2)
    throw error(errc::incompatible_parameters, "the standard basis is a strong base of GL(n2, q) only for q = 2");
  std::vector<vec> out;
  for (std::size_t i = 0; i < x.n2; ++i)
    out.push_back(unit_vector(f, x.n2, i));
  return out;
}

// ---------------------------------------------------------------------------
// construct

inline json construct(action_desc x, std::uint64_t seed)
{
  if (x.kind == "subsets") {
    auto c = subset_base(x.m, x.k, seed);
    json el = json::array();
    for (auto s : c.elements)
      el.push_back(subset_json(s, x.m));
    return candidate_json(action_json(x), c, el);
  }
  if (x.kind == "partitions") {
    auto c = partition_base(x.a, x.b, seed + 1);
    json el = json::array();
    for (auto p : c.elements)
      el.push_back(partition_json(p, x.a, x.b));
    return candidate_json(action_json(x), c, el);
  }
  if (x.kind == "subspaces") {
    auto [s, o] = resolve_orbit(x);
    auto c = subspace_base(s, o, seed ? seed : 7);
    json el = json::array();
    for (auto const &U : c.elements)
      el.push_back(subspace_json(U));
    json j = candidate_json(action_json(x), c, el);
    j["action"]["orbit_rep"] = subspace_json(o.rep);
    return j;
  }
  if (x.kind == "pairs") {
    auto c = pairs_base(x.d, x.k, field_of(x), x.flags, seed ? seed : 7);
    json el = json::array();
    for (auto const &p : c.elements)
      el.push_back({{"U", subspace_json(p.first)}, {"W", subspace_json(p.second)}});
    return candidate_json(action_json(x), c, el);
  }
  if (x.kind == "vectors") {
    auto c = symplectic_vector_base(x.d, field_of(x));
    json el = json::array();
    for (auto const &v : c.elements)
      el.push_back(vec_json(v));
    return candidate_json(action_json(x), c, el);
  }
  if (x.kind == "subfield") {
    auto c = subfield_base(x.d, field_of(x), static_cast<std::uint32_t>(x.r));
    json el = json::array();
    for (auto const &v : c.elements)
      el.push_back(vec_json(v));
    return candidate_json(action_json(x), c, el);
  }
  if (x.kind == "tensor") {
    field f = field_of(x);
    auto t = tensor_base(tensor_strong_base(x, f), x.n1, f, seed ? seed : 7);
    json el = json::array();
    for (auto const &v : t.base.elements)
      el.push_back(vec_json(v));
    return candidate_json(action_json(x), t.base, el);
  }
  throw error(errc::parse_error, "unknown action kind " + x.kind);
}

// ---------------------------------------------------------------------------
// verify

/// Order of the group acting faithfully on the points of the action: the
/// quotient by the kernel (Sym(4) on the three 2|2 partitions has kernel V_4).
inline bigint partition_action_order(std::size_t a, std::size_t b)
{
  if (a == 2 && b == 2)
    return 6;
  return factorial(a * b);
}

inline std::vector<std::uint64_t> partitions_of(json const &cand, std::size_t a, std::size_t b)
{
  std::vector<std::uint64_t> out;
  for (auto const &p : cand.at("elements"))
    out.push_back(partition_from_json(p, a, b));
  return out;
}

inline std::vector<subspace> subspaces_of(json const &cand, field const &f, std::size_t d)
{
  std::vector<subspace> out;
  for (auto const &e : cand.at("elements")) {
    if (e.is_object()) {
      out.push_back(subspace_from_json(f, e.at("U"), d));
      out.push_back(subspace_from_json(f, e.at("W"), d));
    } else {
      out.push_back(subspace_from_json(f, e, d));
    }
  }
  return out;
}

inline std::vector<vec> vectors_of(json const &cand, field const &f, std::size_t d)
{
  std::vector<vec> out;
  for (auto const &e : cand.at("elements"))
    out.push_back(vec_from_json(f, e, d));
  return out;
}

/// Partition family check through the label-tuple count, with the explicit
/// stabilizer chain on the induced action when the degree allows it.
inline certificate verify_partitions(std::size_t a, std::size_t b, std::vector<std::uint64_t> const &parts,
                                     caps const &cp)
{
  if (partition_count(a, b) <= cp.degree_cap) {
    auto g = induce_on_partitions(symmetric_group(a * b), a, b, cp.degree_cap);
    auto all = partitions(a, b);
    std::unordered_map<std::uint64_t, std::uint32_t> index;
    for (std::size_t i = 0; i < all.size(); ++i)
      index[all[i]] = static_cast<std::uint32_t>(i);
    std::vector<std::uint32_t> pts;
    for (auto p : parts)
      pts.push_back(index.at(p));
    return verify_generic(g, partition_action_order(a, b), pts, cp.degree_cap);
  }
  detail::stopwatch sw;
  certificate c;
  c.method = "label_classes";
  perm w;
  bigint st = partition_stabilizer_order(a, b, parts, &w);
  if (st == 1) {
    c.status = cert_status::group_base;
  } else {
    c.status = cert_status::not_a_base;
    c.witness = w;
  }
  c.detail = "|G_(B)| = " + st.str();
  c.elapsed_ms = sw.ms();
  return c;
}

inline certificate verify_candidate(json const &cand, caps const &cp = {})
{
  if (!cand.contains("action"))
    throw error(errc::missing_field, "action");
  if (!cand.contains("elements"))
    throw error(errc::missing_field, "elements");
  action_desc x = action_from_json(cand.at("action"));
  if (x.kind == "subsets") {
    std::vector<std::uint64_t> sets;
    for (auto const &s : cand.at("elements")) {
      auto mask = subset_from_json(s, x.m);
      if (std::popcount(mask) != static_cast<int>(x.k))
        throw error(errc::parse_error, "subset of wrong size");
      sets.push_back(mask);
    }
    return verify_subset_base(x.m, sets, x.group == "alt" ? sym_or_alt::alt : sym_or_alt::sym);
  }
  if (x.kind == "partitions")
    return verify_partitions(x.a, x.b, partitions_of(cand, x.a, x.b), cp);
  if (x.kind == "subspaces") {
    auto s = make_spec(x.family, x.d, x.q);
    check_spec(s);
    return verify_subspace_base(s, subspaces_of(cand, s.f, x.d), cp.enum_cap);
  }
  if (x.kind == "pairs") {
    auto s = make_spec(family::SL, x.d, field_of(x));
    return verify_subspace_base(s, subspaces_of(cand, s.f, x.d), cp.enum_cap);
  }
  if (x.kind == "vectors") {
    auto s = make_spec(family::Sp, x.d, field_of(x), false);
    check_spec(s);
    return verify_vector_base(s, vectors_of(cand, s.f, x.d), cp.enum_cap);
  }
  if (x.kind == "subfield") {
    field f = field_of(x);
    return verify_subfield_base(x.d, f, static_cast<std::uint32_t>(x.r), vectors_of(cand, f, x.d), cp.enum_cap);
  }
  if (x.kind == "tensor") {
    field f = field_of(x);
    auto h2 = detail::enumerate_group(make_spec(family::GL, x.n2, f, false));
    return verify_tensor_base(x.n1, x.n2, h2, vectors_of(cand, f, x.n1 * x.n2), cp.enum_cap);
  }
  throw error(errc::parse_error, "unknown action kind " + x.kind);
}

// ---------------------------------------------------------------------------
// bruteforce

struct explicit_action
{
  perm_group_spec group;
  bigint order;
  std::function<json(std::uint32_t)> point_json;
};

inline std::uint64_t vector_code(vec const &v, std::uint32_t q)
{
  std::uint64_t c = 0;
  for (std::size_t i = v.size(); i-- > 0;)
    c = c * q + v[i].v;
  return c;
}

inline vec vector_of_code(field const &f, std::size_t d, std::uint64_t c)
{
  vec v(d);
  for (std::size_t i = 0; i < d; ++i, c /= f.q())
    v[i] = f.from_encoding(static_cast<std::uint32_t>(c % f.q()));
  return v;
}

/// The action as an explicit permutation group, for the exhaustive search
/// and the cross-engine checks.
inline explicit_action materialise(action_desc x, caps const &cp)
{
  explicit_action out;
  if (x.kind == "subsets") {
    bool alt = x.group == "alt";
    out.group = induce_on_subsets(alt ? alternating_group(x.m) : symmetric_group(x.m), x.k, cp.degree_cap);
    out.order = alt ? factorial(x.m) / 2 : factorial(x.m);
    auto dom = std::make_shared<std::vector<std::uint64_t>>(k_subsets(x.m, x.k));
    out.point_json = [dom, m = x.m](std::uint32_t i) { return subset_json((*dom)[i], m); };
    return out;
  }
  if (x.kind == "partitions") {
    out.group = induce_on_partitions(symmetric_group(x.a * x.b), x.a, x.b, cp.degree_cap);
    out.order = partition_action_order(x.a, x.b);
    auto dom = std::make_shared<std::vector<std::uint64_t>>(partitions(x.a, x.b));
    out.point_json = [dom, a = x.a, b = x.b](std::uint32_t i) { return partition_json((*dom)[i], a, b); };
    return out;
  }
  if (x.kind == "subspaces") {
    auto [s, o] = resolve_orbit(x);
    auto gens = generators(s).gens;
    auto orb = std::make_shared<explicit_orbit>(enumerate_orbit(gens, o.rep, cp.degree_cap));
    if (!orb->complete)
      throw error(errc::degree_cap_exceeded, "orbit larger than the degree cap");
    out.group = induced_action(gens, *orb);
    out.order = induced_order(out.group, action_order(s));
    out.point_json = [orb](std::uint32_t i) { return subspace_json(orb->points[i]); };
    return out;
  }
  if (x.kind == "vectors") {
    field f = field_of(x);
    auto s = make_spec(family::Sp, x.d, f, false);
    std::uint64_t n = 1;
    for (std::size_t i = 0; i < x.d; ++i)
      n *= f.q();
    if (n - 1 > cp.degree_cap)
      throw error(errc::degree_cap_exceeded, "too many vectors");
    std::vector<std::uint64_t> dom;
    for (std::uint64_t c = 1; c < n; ++c)
      dom.push_back(c);
    std::vector<perm> gens;
    auto mats = generators(s).gens;
    std::size_t d = x.d;
    out.group.degree = dom.size();
    out.group.name = "Sp on vectors";
    for (auto const &g : mats) {
      perm p(dom.size());
      for (std::size_t i = 0; i < dom.size(); ++i)
        p[i] = static_cast<std::uint32_t>(vector_code(g.apply(vector_of_code(f, d, dom[i])), f.q()) - 1);
      out.group.generators.push_back(std::move(p));
    }
    out.order = group_order(s);
    out.point_json = [f, d](std::uint32_t i) { return vec_json(vector_of_code(f, d, i + 1)); };
    return out;
  }
  throw error(errc::incompatible_parameters, "no explicit permutation model for " + x.kind);
}

inline json bruteforce(action_desc const &x, caps const &cp)
{
  auto ea = materialise(x, cp);
  auto r = min_base_bruteforce(ea.group, ea.order, cp.node_cap);
  json j;
  j["action"] = action_json(x);
  j["degree"] = ea.group.degree;
  j["order"] = bigint_str(ea.order);
  j["b"] = r.b;
  json w = json::array();
  for (auto i : r.witness)
    w.push_back(ea.point_json(i));
  j["witness"] = w;
  j["nodes"] = r.nodes;
  return j;
}

// ---------------------------------------------------------------------------
// bound rows

/// Group order and degree of the action, as used by the bound table. For O+
/// with d = 2k the totally singular row is the index-2 subgroup on one
/// family; pairs rows use PSL, which is imprimitive on them.
inline bound_instance instance_for(action_desc x)
{
  bound_instance in;
  in.params = action_params(x);
  if (x.kind == "subsets") {
    in.family = instance_family::subsets;
    in.m = x.m;
    in.k = x.k;
    in.order = x.group == "alt" ? factorial(x.m) / 2 : factorial(x.m);
    in.degree = binomial(x.m, x.k);
    in.primitive = 2 * x.k != x.m;
  } else if (x.kind == "partitions") {
    in.family = instance_family::partitions;
    in.a = x.a;
    in.b = x.b;
    in.order = partition_action_order(x.a, x.b);
    in.degree = x.a == 2 && x.b == 2 ? bigint(3) : partition_count(x.a, x.b);
  } else if (x.kind == "subspaces") {
    auto [s, o] = resolve_orbit(x);
    in.params = action_params(x);
    in.family = instance_family::subspaces;
    in.d = x.d;
    in.k = x.k;
    in.q = x.q;
    in.t = s.fam == family::SL || s.fam == family::GL ? 1 : 2;
    in.order = action_order(s);
    in.degree = orbit_size(s, o);
    if (s.fam == family::OmegaPlus && o.kind == orbit_kind::totally_singular && 2 * x.k == x.d)
      in.order /= 2;
    if (o.kind == orbit_kind::nondegenerate && 2 * x.k == x.d)
      in.primitive = !(isometry_type(s.form, o.rep) == isometry_type(s.form, perp(s.form, o.rep)));
  } else if (x.kind == "pairs") {
    field f = field_of(x);
    auto s = make_spec(family::SL, x.d, f);
    in.family = instance_family::pairs;
    in.d = x.d;
    in.k = x.k;
    in.q = x.q;
    in.t = 1;
    in.order = action_order(s);
    in.degree = x.flags ? gaussian_binomial(x.q, x.d, x.k) * gaussian_binomial(x.q, x.d - x.k, x.k)
                        : gaussian_binomial(x.q, x.d, x.k) * ipow(bigint(x.q), x.k * (x.d - x.k));
    in.primitive = false;
  } else if (x.kind == "vectors") {
    in.family = instance_family::linear;
    in.d = x.d;
    in.q = x.q;
    in.order = sp_order(x.d, x.q);
    in.degree = ipow(bigint(x.q), x.d);
  } else if (x.kind == "subfield") {
    // F_q^* GL_d(q0), q = q0^r
    field f = field_of(x);
    std::uint64_t q0 = 1;
    for (std::size_t i = 0; i < f.e() / x.r; ++i)
      q0 *= f.p();
    in.family = instance_family::linear;
    in.d = x.d;
    in.q = x.q;
    in.order = group_order(make_spec(family::GL, x.d, field::of_order(q0), false)) * (x.q - 1) / (q0 - 1);
    in.degree = ipow(bigint(x.q), x.d);
  } else if (x.kind == "tensor") {
    field f = field_of(x);
    in.family = instance_family::linear;
    in.d = x.n1 * x.n2;
    in.q = x.q;
    in.order = group_order(make_spec(family::GL, x.n1, f, false)) *
               group_order(make_spec(family::GL, x.n2, f, false)) / (x.q - 1);
    in.degree = ipow(bigint(x.q), x.n1 * x.n2);
  } else {
    throw error(errc::parse_error, "unknown action kind " + x.kind);
  }
  in.id = x.kind + ":" + in.params;
  return in;
}

/// Standalone rows for the symplectic examples: the affine group
/// V:Sp(d, q) and the hyperplane-type action of Sp(2m, q), q even.
inline bound_instance sp_affine_instance(std::size_t d, std::uint64_t q)
{
  bound_instance in;
  in.family = instance_family::affine;
  in.d = d;
  in.q = q;
  in.params = "V:Sp d=" + std::to_string(d) + " q=" + std::to_string(q);
  in.id = "affine:" + in.params;
  in.order = ipow(bigint(q), d) * sp_order(d, q);
  in.degree = ipow(bigint(q), d);
  in.b_exact = d + 1;
  return in;
}

inline bound_instance sp_hyperplane_instance(std::size_t m, std::uint64_t q, int sign)
{
  if (q % 2)
    throw error(errc::incompatible_parameters, "q must be even");
  bound_instance in;
  in.family = instance_family::hyperplanes;
  in.d = 2 * m;
  in.q = q;
  in.params = "Sp(2m,q) on O" + std::string(sign > 0 ? "+" : "-") + " forms m=" + std::to_string(m) +
              " q=" + std::to_string(q);
  in.id = "hyperplanes:" + in.params;
  in.order = sp_order(2 * m, q);
  bigint qm = ipow(bigint(q), m);
  in.degree = sign > 0 ? bigint(qm * (qm + 1) / 2) : bigint(qm * (qm - 1) / 2);
  in.b_upper = 2 * m + 1;
  return in;
}

// ---------------------------------------------------------------------------
// survey

struct survey_row
{
  json row;
  std::optional<bound_report> report;
  bool ok = true;
};

/// construct, verify, optionally search exhaustively, then evaluate the bounds.
inline survey_row run_instance(action_desc const &x, std::uint64_t seed, caps const &cp, bool exhaustive)
{
  survey_row out;
  json &row = out.row;
  row["action"] = action_json(x);
  try {
    json cand = construct(x, seed);
    row["action"] = cand["action"];
    certificate cert = verify_candidate(cand, cp);
    row["candidate"] = cand;
    row["certificate"] = certificate_json(cert);
    bool is_base = cert.status == cert_status::strong_base || cert.status == cert_status::group_base;
    action_desc rx = action_from_json(cand["action"]);
    bound_instance in = instance_for(rx);
    std::size_t size = cand["size"].get<std::size_t>();
    if (is_base)
      in.b_upper = x.kind == "subfield" ? cand["claimed_bound"].get<std::size_t>() : size;
    if (exhaustive) {
      try {
        json bf = bruteforce(rx, cp);
        row["bruteforce"] = bf;
        in.b_exact = bf["b"].get<std::size_t>();
      } catch (error const &e) {
        row["bruteforce"] = {{"skipped", e.what()}};
      }
    }
    if (in.b_exact || in.b_upper) {
      out.report = eval_bounds(in);
      row["bounds"] = bound_report_json(*out.report);
      out.ok = is_base && out.report->violations.empty();
    } else {
      out.ok = false;
    }
  } catch (error const &e) {
    row["error"] = {{"code", errc_name(e.code())}, {"message", e.what()}};
    out.ok = false;
  }
  return out;
}

/// Runs the instances on `jobs` threads; rows keep the input order so the
/// output does not depend on scheduling.
inline std::vector<survey_row> run_survey(std::vector<action_desc> const &xs, std::uint64_t seed, caps const &cp,
                                          bool exhaustive, unsigned jobs)
{
  std::vector<survey_row> rows(xs.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next++) < xs.size();)
      rows[i] = run_instance(xs[i], seed, cp, exhaustive);
  };
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(xs.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < jobs; ++t)
    pool.emplace_back(work);
  work();
  for (auto &t : pool)
    t.join();
  return rows;
}

inline std::vector<action_desc> grid_from_json(json const &j)
{
  json const &items = j.is_array() ? j : j.at("instances");
  std::vector<action_desc> out;
  for (auto const &it : items)
    out.push_back(action_from_json(it));
  return out;
}

} // namespace minbase
