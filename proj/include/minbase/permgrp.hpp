#pragma once

// Permutation groups: stabilizer chains over arbitrary actions, induced
// actions and exhaustive minimal-base search.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "bigint.hpp"
#include "error.hpp"

namespace minbase {

using perm = std::vector<std::uint32_t>;

inline perm perm_identity(std::size_t n)
{
  perm p(n);
  std::iota(p.begin(), p.end(), 0u);
  return p;
}

/// Apply a, then b.
inline perm perm_mul(perm const &a, perm const &b)
{
  perm c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    c[i] = b[a[i]];
  return c;
}

inline perm perm_inv(perm const &a)
{
  perm c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    c[a[i]] = static_cast<std::uint32_t>(i);
  return c;
}

inline bool perm_is_identity(perm const &a)
{
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != i)
      return false;
  return true;
}

inline bool perm_valid(perm const &a)
{
  std::vector<bool> seen(a.size(), false);
  for (auto x : a) {
    if (x >= a.size() || seen[x])
      return false;
    seen[x] = true;
  }
  return true;
}

/// Disjoint cycle notation, 1-indexed.
inline std::string perm_to_cycles(perm const &a)
{
  std::ostringstream os;
  std::vector<bool> seen(a.size(), false);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (seen[i] || a[i] == i)
      continue;
    os << '(';
    std::size_t j = i;
    bool first = true;
    while (!seen[j]) {
      seen[j] = true;
      os << (first ? "" : " ") << j + 1;
      first = false;
      j = a[j];
    }
    os << ')';
  }
  std::string s = os.str();
  return s.empty() ? "()" : s;
}

inline perm perm_from_cycles(std::string const &text, std::size_t n)
{
  perm p = perm_identity(n);
  std::vector<std::uint32_t> cyc;
  std::string num;
  auto flush_num = [&] {
    if (num.empty())
      return;
    long v = std::stol(num);
    if (v < 1 || static_cast<std::size_t>(v) > n)
      throw error(errc::parse_error, "cycle point out of range");
    cyc.push_back(static_cast<std::uint32_t>(v - 1));
    num.clear();
  };
  for (char c : text) {
    if (std::isdigit(static_cast<unsigned char>(c)))
      num += c;
    else if (c == ' ' || c == ',')
      flush_num();
    else if (c == '(')
      cyc.clear();
    else if (c == ')') {
      flush_num();
      for (std::size_t i = 0; i < cyc.size(); ++i)
        p[cyc[i]] = cyc[(i + 1) % cyc.size()];
      cyc.clear();
    }
  }
  if (!perm_valid(p))
    throw error(errc::parse_error, "cycles do not define a permutation");
  return p;
}

struct perm_group_spec
{
  std::size_t degree = 0;
  std::vector<perm> generators;
  std::string name;
};

inline perm_group_spec symmetric_group(std::size_t m)
{
  perm_group_spec g{m, {}, "Sym(" + std::to_string(m) + ")"};
  if (m >= 2) {
    perm t = perm_identity(m);
    std::swap(t[0], t[1]);
    g.generators.push_back(t);
  }
  if (m >= 3) {
    perm c(m);
    for (std::size_t i = 0; i < m; ++i)
      c[i] = static_cast<std::uint32_t>((i + 1) % m);
    g.generators.push_back(c);
  }
  return g;
}

inline perm_group_spec alternating_group(std::size_t m)
{
  perm_group_spec g{m, {}, "Alt(" + std::to_string(m) + ")"};
  if (m < 3)
    return g;
  perm t = perm_identity(m);
  t[0] = 1;
  t[1] = 2;
  t[2] = 0;
  g.generators.push_back(t);
  if (m == 3)
    return g;
  perm c = perm_identity(m);
  if (m % 2) {
    for (std::size_t i = 0; i < m; ++i)
      c[i] = static_cast<std::uint32_t>((i + 1) % m);
  } else {
    for (std::size_t i = 1; i < m; ++i)
      c[i] = static_cast<std::uint32_t>(i + 1 == m ? 1 : i + 1);
  }
  g.generators.push_back(c);
  return g;
}

/// Explicit permutations on {0..n-1}.
struct perm_action
{
  using element = perm;
  using point = std::uint32_t;
  using point_hash = std::hash<std::uint32_t>;

  std::size_t n = 0;

  element id() const { return perm_identity(n); }
  element mul(element const &a, element const &b) const { return perm_mul(a, b); }
  element inv(element const &a) const { return perm_inv(a); }
  bool is_id(element const &a) const { return perm_is_identity(a); }
  point apply(point x, element const &g) const { return g[x]; }
  std::optional<point> moved_point(element const &g) const
  {
    for (std::size_t i = 0; i < g.size(); ++i)
      if (g[i] != i)
        return static_cast<point>(i);
    return std::nullopt;
  }
};

/// Stabilizer chain with Schreier-vector transversals over an arbitrary action.
template <class Action>
class stabilizer_chain
{
public:
  using element = typename Action::element;
  using point = typename Action::point;

  struct level
  {
    point base;
    std::vector<element> gens;
    std::vector<element> gens_inv;
    std::vector<point> orbit;
    std::unordered_map<point, std::uint32_t, typename Action::point_hash> index;
    std::vector<std::int32_t> parent; // orbit index of predecessor, -1 at root
    std::vector<std::int32_t> via;    // generator taking predecessor here
  };

  stabilizer_chain() = default;
  explicit stabilizer_chain(Action act) : _act(std::move(act)) {}

  Action const &action() const { return _act; }
  std::vector<level> const &levels() const { return _levels; }

  std::vector<point> base() const
  {
    std::vector<point> b;
    for (auto const &l : _levels)
      b.push_back(l.base);
    return b;
  }

  bigint order() const
  {
    bigint r = 1;
    for (auto const &l : _levels)
      r *= l.orbit.size();
    return r;
  }

  /// Order of the pointwise stabilizer of the first j base points.
  bigint order_from(std::size_t j) const
  {
    bigint r = 1;
    for (std::size_t i = j; i < _levels.size(); ++i)
      r *= _levels[i].orbit.size();
    return r;
  }

  /// Strong generators of the stabilizer of the first j base points.
  std::vector<element> generators_from(std::size_t j) const
  {
    if (j < _levels.size())
      return _levels[j].gens;
    return {};
  }

  /// Transversal element mapping the level's base point to orbit[idx].
  element transversal(std::size_t lvl, std::uint32_t idx) const
  {
    level const &l = _levels[lvl];
    std::vector<std::int32_t> path;
    std::int32_t cur = static_cast<std::int32_t>(idx);
    while (l.parent[cur] >= 0) {
      path.push_back(l.via[cur]);
      cur = l.parent[cur];
    }
    element u = _act.id();
    for (auto it = path.rbegin(); it != path.rend(); ++it)
      u = _act.mul(u, l.gens[*it]);
    return u;
  }

  /// Strip g through the chain; returns the residue and the level where it stopped.
  std::pair<element, std::size_t> sift(element g) const
  {
    for (std::size_t i = 0; i < _levels.size(); ++i) {
      level const &l = _levels[i];
      point img = _act.apply(l.base, g);
      auto it = l.index.find(img);
      if (it == l.index.end())
        return {g, i};
      // g u^{-1}, walking the Schreier vector back to the root
      std::int32_t cur = static_cast<std::int32_t>(it->second);
      while (l.parent[cur] >= 0) {
        g = _act.mul(g, l.gens_inv[l.via[cur]]);
        cur = l.parent[cur];
      }
    }
    return {g, _levels.size()};
  }

  bool contains(element const &g) const
  {
    auto [r, lvl] = sift(g);
    return lvl == _levels.size() && _act.is_id(r);
  }

  void push_level(point b)
  {
    level l;
    l.base = b;
    _levels.push_back(std::move(l));
    rebuild_orbit(_levels.size() - 1);
  }

  /// Adds g as a strong generator at levels 0..upto and extends their orbits.
  void add_generator(element const &g, std::size_t upto)
  {
    element gi = _act.inv(g);
    for (std::size_t i = 0; i <= upto && i < _levels.size(); ++i) {
      _levels[i].gens.push_back(g);
      _levels[i].gens_inv.push_back(gi);
      extend_orbit(i);
    }
  }

  /// Orbit sizes of the basic levels.
  std::vector<std::size_t> orbit_sizes() const
  {
    std::vector<std::size_t> s;
    for (auto const &l : _levels)
      s.push_back(l.orbit.size());
    return s;
  }

private:
  void rebuild_orbit(std::size_t i)
  {
    level &l = _levels[i];
    l.orbit.assign(1, l.base);
    l.index.clear();
    l.index.emplace(l.base, 0);
    l.parent.assign(1, -1);
    l.via.assign(1, -1);
    extend_orbit(i);
  }

  void extend_orbit(std::size_t i)
  {
    level &l = _levels[i];
    // Re-scan every known point against every generator (cheap relative to
    // the transversal work), appending new points breadth first.
    for (std::size_t k = 0; k < l.orbit.size(); ++k) {
      for (std::size_t s = 0; s < l.gens.size(); ++s) {
        point img = _act.apply(l.orbit[k], l.gens[s]);
        if (l.index.find(img) != l.index.end())
          continue;
        l.index.emplace(img, static_cast<std::uint32_t>(l.orbit.size()));
        l.orbit.push_back(img);
        l.parent.push_back(static_cast<std::int32_t>(k));
        l.via.push_back(static_cast<std::int32_t>(s));
      }
    }
  }

  Action _act;
  std::vector<level> _levels;
};

/// Product-replacement random elements of <gens>.
template <class Action>
class random_elements
{
public:
  using element = typename Action::element;

  random_elements(Action const &act, std::vector<element> const &gens, std::uint64_t seed)
      : _act(act), _rng(seed)
  {
    std::size_t n = std::max<std::size_t>(10, 2 * gens.size());
    for (std::size_t i = 0; i < n; ++i)
      _state.push_back(gens.empty() ? act.id() : gens[i % gens.size()]);
    _acc = act.id();
    for (int i = 0; i < 60; ++i)
      next();
  }

  element next()
  {
    std::size_t n = _state.size();
    std::size_t i = _rng() % n, j = _rng() % (n - 1);
    if (j >= i)
      ++j;
    element other = (_rng() & 1) ? _state[j] : _act.inv(_state[j]);
    _state[i] = (_rng() & 1) ? _act.mul(_state[i], other) : _act.mul(other, _state[i]);
    _acc = _act.mul(_acc, _state[i]);
    return _acc;
  }

private:
  Action const &_act;
  std::mt19937_64 _rng;
  std::vector<element> _state;
  element _acc;
};

struct chain_options
{
  std::uint64_t seed = 0x5c4e1e5;
  /// Give up after this many consecutive trivial sifts without reaching the
  /// known order (signals that the generators do not generate).
  std::size_t stall_limit = 400;
};

/// Chain for <gens> of known order, with a prescribed base prefix.
///
/// Elements are sampled with seeded product replacement; the chain is exact
/// once the product of orbit lengths equals the known order. Because every
/// basic orbit is an orbit of a subgroup of the true stabilizer, reaching the
/// order also certifies that the generators generate a group of that order.
template <class Action>
stabilizer_chain<Action> chain_known_order(Action act,
                                           std::vector<typename Action::element> const &gens,
                                           bigint const &known_order,
                                           std::vector<typename Action::point> const &prefix = {},
                                           chain_options opt = {})
{
  stabilizer_chain<Action> ch(act);
  for (auto const &b : prefix)
    ch.push_level(b);
  Action const &a = ch.action();
  std::vector<typename Action::element> real_gens;
  for (auto const &g : gens)
    if (!a.is_id(g))
      real_gens.push_back(g);
  if (known_order == 1)
    return ch;
  // Seed with the input generators so that small groups finish quickly.
  auto absorb = [&](typename Action::element const &g) {
    auto [r, lvl] = ch.sift(g);
    if (a.is_id(r))
      return false;
    if (lvl == ch.levels().size()) {
      auto mp = a.moved_point(r);
      if (!mp)
        return false; // acts trivially
      ch.push_level(*mp);
    }
    ch.add_generator(r, lvl);
    return true;
  };
  for (auto const &g : real_gens) {
    absorb(g);
    if (ch.order() == known_order)
      return ch;
  }
  random_elements<Action> rnd(a, real_gens, opt.seed);
  std::size_t stall = 0;
  while (ch.order() != known_order) {
    if (ch.order() > known_order)
      throw error(errc::generation_failed, "group larger than the stated order");
    if (absorb(rnd.next()))
      stall = 0;
    else if (++stall > opt.stall_limit)
      throw error(errc::generation_failed, "generators do not reach the stated order");
  }
  return ch;
}

/// Deterministic Schreier-Sims on explicit permutations (base = smallest moved points).
inline stabilizer_chain<perm_action> schreier_sims(perm_group_spec const &g,
                                                   std::size_t degree_cap = 1000000)
{
  if (g.degree > degree_cap)
    throw error(errc::degree_cap_exceeded, "degree " + std::to_string(g.degree));
  perm_action act{g.degree};
  stabilizer_chain<perm_action> ch(act);
  for (auto const &p : g.generators)
    if (p.size() != g.degree || !perm_valid(p))
      throw error(errc::incompatible_parameters, "generator is not a permutation of the domain");
  // Incremental construction: insert each generator, then saturate with
  // Schreier generators level by level until every one sifts.
  auto insert = [&](perm const &h) -> bool {
    auto [r, lvl] = ch.sift(h);
    if (perm_is_identity(r))
      return false;
    if (lvl == ch.levels().size())
      ch.push_level(*act.moved_point(r));
    ch.add_generator(r, lvl);
    return true;
  };
  for (auto const &p : g.generators)
    insert(p);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = ch.levels().size(); i-- > 0 && !changed;) {
      auto const &l = ch.levels()[i];
      std::size_t orbit_len = l.orbit.size();
      for (std::uint32_t k = 0; k < orbit_len && !changed; ++k) {
        perm u = ch.transversal(i, k);
        std::size_t ngens = ch.levels()[i].gens.size();
        for (std::size_t s = 0; s < ngens && !changed; ++s) {
          perm us = perm_mul(u, ch.levels()[i].gens[s]);
          auto const &li = ch.levels()[i];
          std::uint32_t img_idx = li.index.at(act.apply(li.base, us));
          perm sg = perm_mul(us, perm_inv(ch.transversal(i, img_idx)));
          if (perm_is_identity(sg))
            continue;
          // sg fixes base points 0..i; sift from level i+1 on.
          perm h = sg;
          std::size_t lvl = i + 1;
          for (; lvl < ch.levels().size(); ++lvl) {
            auto const &lj = ch.levels()[lvl];
            auto it = lj.index.find(act.apply(lj.base, h));
            if (it == lj.index.end())
              break;
            h = perm_mul(h, perm_inv(ch.transversal(lvl, it->second)));
          }
          if (lvl == ch.levels().size() && perm_is_identity(h))
            continue;
          if (lvl == ch.levels().size())
            ch.push_level(*act.moved_point(h));
          ch.add_generator(h, lvl);
          changed = true;
        }
      }
    }
  }
  return ch;
}

/// Order of a permutation group by exhaustive closure (small groups only).
inline std::size_t closure_size(perm_group_spec const &g, std::size_t cap = 1u << 22)
{
  struct vh
  {
    std::size_t operator()(perm const &p) const
    {
      std::size_t h = 0;
      for (auto x : p)
        h = h * 1000003u ^ x;
      return h;
    }
  };
  std::unordered_set<perm, vh> seen;
  std::vector<perm> queue{perm_identity(g.degree)};
  seen.insert(queue[0]);
  for (std::size_t i = 0; i < queue.size(); ++i) {
    for (auto const &s : g.generators) {
      perm n = perm_mul(queue[i], s);
      if (seen.insert(n).second) {
        queue.push_back(std::move(n));
        if (queue.size() > cap)
          throw error(errc::budget_exceeded, "closure exceeds cap");
      }
    }
  }
  return queue.size();
}

/// Orbits of <gens> on {0..n-1}, each sorted, listed by smallest point.
inline std::vector<std::vector<std::uint32_t>> orbits(std::size_t n, std::vector<perm> const &gens)
{
  std::vector<std::int32_t> comp(n, -1);
  std::vector<std::vector<std::uint32_t>> out;
  for (std::uint32_t s = 0; s < n; ++s) {
    if (comp[s] >= 0)
      continue;
    std::vector<std::uint32_t> orb{s};
    comp[s] = static_cast<std::int32_t>(out.size());
    for (std::size_t k = 0; k < orb.size(); ++k)
      for (auto const &g : gens) {
        std::uint32_t t = g[orb[k]];
        if (comp[t] < 0) {
          comp[t] = comp[s];
          orb.push_back(t);
        }
      }
    std::sort(orb.begin(), orb.end());
    out.push_back(std::move(orb));
  }
  return out;
}

struct group_with_order
{
  perm_group_spec spec;
  bigint order;
};

/// Generators and order of the pointwise stabilizer of `points`.
inline group_with_order pointwise_stabilizer(perm_group_spec const &g, bigint const &order,
                                             std::vector<std::uint32_t> const &points,
                                             chain_options opt = {})
{
  auto ch = chain_known_order(perm_action{g.degree}, g.generators, order, points, opt);
  group_with_order out;
  out.spec = {g.degree, ch.generators_from(points.size()), g.name + "_(pts)"};
  out.order = ch.order_from(points.size());
  return out;
}

inline group_with_order pointwise_stabilizer(stabilizer_chain<perm_action> const &ch,
                                             perm_group_spec const &g,
                                             std::vector<std::uint32_t> const &points)
{
  return pointwise_stabilizer(g, ch.order(), points);
}

struct bruteforce_result
{
  std::size_t b = 0;
  std::vector<std::uint32_t> witness;
  std::uint64_t nodes = 0;
};

struct bruteforce_budget_error : error
{
  std::size_t lower, upper;
  bruteforce_budget_error(std::size_t lo, std::size_t up)
      : error(errc::budget_exceeded, "node budget exhausted; b in [" + std::to_string(lo) +
                                         ", " + std::to_string(up) + "]"),
        lower(lo), upper(up)
  {}
};

namespace detail {

inline double log_of(bigint const &x)
{
  // natural log of a positive big integer, approximate (pruning only)
  if (x <= 0)
    return 0;
  std::size_t bits = boost::multiprecision::msb(x);
  if (bits < 60)
    return std::log(static_cast<double>(x.convert_to<std::uint64_t>()));
  bigint top = x >> (bits - 52);
  return std::log(top.convert_to<double>()) + (bits - 52) * std::log(2.0);
}

struct set_hash
{
  std::size_t operator()(std::vector<std::uint32_t> const &v) const
  {
    std::size_t h = v.size();
    for (auto x : v)
      h = h * 0x9e3779b97f4a7c15ull ^ (x + 0x7f4a7c15u + (h << 6) + (h >> 2));
    return h;
  }
};

class base_search
{
public:
  base_search(std::size_t n, std::uint64_t node_cap) : _n(n), _cap(node_cap) {}

  std::uint64_t nodes = 0;

  /// Whether some extension of `chosen` by at most r points is a base for H.
  bool dfs(std::vector<perm> const &gens, bigint const &order, std::vector<std::uint32_t> &chosen,
           std::size_t r)
  {
    if (order == 1)
      return true;
    if (r == 0)
      return false;
    if (++nodes > _cap)
      throw std::length_error("budget");
    auto key = chosen;
    std::sort(key.begin(), key.end());
    if (!_visited.insert(key).second)
      return false;
    auto orbs = orbits(_n, gens);
    std::size_t maxorb = 0;
    for (auto const &o : orbs)
      maxorb = std::max(maxorb, o.size());
    if (maxorb <= 1)
      return false;
    // |H| <= (largest orbit)^r is necessary
    if (log_of(order) > r * std::log(static_cast<double>(maxorb)) + 1e-9)
      return false;
    std::vector<std::vector<std::uint32_t> const *> cand;
    for (auto const &o : orbs)
      if (o.size() > 1)
        cand.push_back(&o);
    std::stable_sort(cand.begin(), cand.end(),
                     [](auto const *a, auto const *b) { return a->size() > b->size(); });
    if (r == 1) {
      for (auto const *o : cand)
        if (bigint(o->size()) == order) {
          chosen.push_back(o->front());
          return true;
        }
      return false;
    }
    perm_group_spec h{_n, gens, ""};
    for (auto const *o : cand) {
      if (log_of(order / o->size()) > (r - 1) * std::log(static_cast<double>(maxorb)) + 1e-9)
        continue;
      std::uint32_t beta = o->front();
      auto stab = pointwise_stabilizer(h, order, {beta});
      chosen.push_back(beta);
      if (dfs(stab.spec.generators, stab.order, chosen, r - 1))
        return true;
      chosen.pop_back();
    }
    return false;
  }

  void reset() { _visited.clear(); }

private:
  std::size_t _n;
  std::uint64_t _cap;
  std::unordered_set<std::vector<std::uint32_t>, set_hash> _visited;
};

} // namespace detail

/// Exact minimal base size by iterative deepening over orbit representatives.
inline bruteforce_result min_base_bruteforce(perm_group_spec const &g, bigint const &order,
                                             std::uint64_t node_cap = 100000000)
{
  bruteforce_result res;
  if (order == 1)
    return res;
  std::size_t n = g.degree;
  // b > log|G| / log n
  std::size_t lo = 1;
  if (n > 1) {
    double ratio = detail::log_of(order) / std::log(static_cast<double>(n));
    lo = std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(ratio - 1e-9)) + 1);
  }
  detail::base_search search(n, node_cap);
  for (std::size_t r = lo; r <= n; ++r) {
    search.reset();
    std::vector<std::uint32_t> chosen;
    bool ok;
    try {
      ok = search.dfs(g.generators, order, chosen, r);
    } catch (std::length_error const &) {
      res.nodes = search.nodes;
      throw bruteforce_budget_error(r, n);
    }
    if (ok) {
      res.b = chosen.size();
      res.witness = chosen;
      res.nodes = search.nodes;
      return res;
    }
  }
  throw error(errc::generation_failed, "group acts unfaithfully");
}

/// All k-subsets of {0..m-1} in lexicographic order, as bitmasks.
inline std::vector<std::uint64_t> k_subsets(std::size_t m, std::size_t k)
{
  if (m > 63)
    throw error(errc::incompatible_parameters, "subset domain limited to 63 points");
  std::vector<std::uint64_t> out;
  std::vector<std::uint32_t> c(k);
  std::iota(c.begin(), c.end(), 0u);
  if (k > m)
    return out;
  while (true) {
    std::uint64_t mask = 0;
    for (auto x : c)
      mask |= std::uint64_t(1) << x;
    out.push_back(mask);
    std::size_t i = k;
    while (i > 0 && c[i - 1] == m - k + i - 1)
      --i;
    if (i == 0)
      break;
    ++c[i - 1];
    for (std::size_t j = i; j < k; ++j)
      c[j] = c[j - 1] + 1;
  }
  return out;
}

inline std::uint64_t subset_image(std::uint64_t mask, perm const &g)
{
  std::uint64_t out = 0;
  while (mask) {
    unsigned i = static_cast<unsigned>(__builtin_ctzll(mask));
    mask &= mask - 1;
    out |= std::uint64_t(1) << g[i];
  }
  return out;
}

/// Induced action on an explicit, finite domain given by an image function.
template <class Point, class Hash, class Image>
perm_group_spec induce_on_domain(std::vector<Point> const &domain, std::vector<perm> const &gens,
                                 Image image, std::string name)
{
  std::unordered_map<Point, std::uint32_t, Hash> index;
  index.reserve(domain.size() * 2);
  for (std::uint32_t i = 0; i < domain.size(); ++i)
    index.emplace(domain[i], i);
  perm_group_spec out{domain.size(), {}, std::move(name)};
  for (auto const &g : gens) {
    perm p(domain.size());
    for (std::uint32_t i = 0; i < domain.size(); ++i) {
      auto it = index.find(image(domain[i], g));
      if (it == index.end())
        throw error(errc::orbit_not_closed, "domain is not invariant");
      p[i] = it->second;
    }
    out.generators.push_back(std::move(p));
  }
  return out;
}

inline perm_group_spec induce_on_subsets(perm_group_spec const &g, std::size_t k,
                                         std::size_t degree_cap = 100000)
{
  if (binomial(g.degree, k) > degree_cap)
    throw error(errc::degree_cap_exceeded, "too many subsets");
  auto dom = k_subsets(g.degree, k);
  return induce_on_domain<std::uint64_t, std::hash<std::uint64_t>>(
      dom, g.generators, subset_image,
      g.name + " on " + std::to_string(k) + "-subsets");
}

/// Partitions of {0..ab-1} into a blocks of size b, encoded as restricted
/// growth strings (4 bits per point, block of point 0 labelled 0, ...).
struct partition_code
{
  static constexpr std::size_t max_points = 16;

  static std::uint32_t label(std::uint64_t code, std::size_t i) { return (code >> (4 * i)) & 15u; }

  /// Canonical code from arbitrary block labels.
  static std::uint64_t canonical(std::uint32_t const *labels, std::size_t m)
  {
    std::uint32_t remap[16];
    std::fill(remap, remap + 16, 255u);
    std::uint32_t next = 0;
    std::uint64_t code = 0;
    for (std::size_t i = 0; i < m; ++i) {
      std::uint32_t l = labels[i];
      if (remap[l] == 255u)
        remap[l] = next++;
      code |= std::uint64_t(remap[l]) << (4 * i);
    }
    return code;
  }

  static std::uint64_t image(std::uint64_t code, perm const &g)
  {
    std::uint32_t labels[16];
    std::size_t m = g.size();
    for (std::size_t i = 0; i < m; ++i)
      labels[g[i]] = label(code, i);
    return canonical(labels, m);
  }

  static std::vector<std::vector<std::uint32_t>> blocks(std::uint64_t code, std::size_t a,
                                                        std::size_t m)
  {
    std::vector<std::vector<std::uint32_t>> out(a);
    for (std::size_t i = 0; i < m; ++i)
      out[label(code, i)].push_back(static_cast<std::uint32_t>(i));
    return out;
  }

  static std::uint64_t from_blocks(std::vector<std::vector<std::uint32_t>> const &bl, std::size_t m)
  {
    std::uint32_t labels[16] = {};
    for (std::size_t j = 0; j < bl.size(); ++j)
      for (auto x : bl[j])
        labels[x] = static_cast<std::uint32_t>(j);
    return canonical(labels, m);
  }
};

/// All partitions into a blocks of size b, sorted by their label strings.
inline std::vector<std::uint64_t> partitions(std::size_t a, std::size_t b)
{
  std::size_t m = a * b;
  if (m > partition_code::max_points)
    throw error(errc::incompatible_parameters, "partition domain limited to 16 points");
  std::vector<std::uint64_t> out;
  std::vector<std::uint32_t> labels(m), count(a, 0);
  // restricted growth strings with each label used exactly b times
  std::function<void(std::size_t, std::uint32_t)> rec = [&](std::size_t i, std::uint32_t used) {
    if (i == m) {
      out.push_back(partition_code::canonical(labels.data(), m));
      return;
    }
    for (std::uint32_t l = 0; l < std::min<std::uint32_t>(used + 1, a); ++l) {
      if (count[l] == b)
        continue;
      labels[i] = l;
      ++count[l];
      rec(i + 1, std::max(used, l + 1));
      --count[l];
    }
  };
  rec(0, 0);
  // lexicographic order of label strings (point 0 first)
  auto lex_key = [m](std::uint64_t c) {
    std::uint64_t k = 0;
    for (std::size_t i = 0; i < m; ++i)
      k = (k << 4) | partition_code::label(c, i);
    return k;
  };
  std::sort(out.begin(), out.end(), [&](auto x, auto y) { return lex_key(x) < lex_key(y); });
  return out;
}

inline bigint partition_count(std::size_t a, std::size_t b)
{
  return factorial(a * b) / (ipow(factorial(b), a) * factorial(a));
}

inline perm_group_spec induce_on_partitions(perm_group_spec const &g, std::size_t a, std::size_t b,
                                            std::size_t degree_cap = 100000)
{
  if (partition_count(a, b) > degree_cap)
    throw error(errc::degree_cap_exceeded, "too many partitions");
  auto dom = partitions(a, b);
  return induce_on_domain<std::uint64_t, std::hash<std::uint64_t>>(
      dom, g.generators, partition_code::image,
      g.name + " on partitions(" + std::to_string(a) + "," + std::to_string(b) + ")");
}

/// Sym(m) acting on partitions without materialising the domain.
struct partition_action
{
  using element = perm;
  using point = std::uint64_t;
  using point_hash = std::hash<std::uint64_t>;

  std::size_t a = 0, b = 0;

  element id() const { return perm_identity(a * b); }
  element mul(element const &x, element const &y) const { return perm_mul(x, y); }
  element inv(element const &x) const { return perm_inv(x); }
  bool is_id(element const &x) const { return perm_is_identity(x); }
  point apply(point p, element const &g) const { return partition_code::image(p, g); }
  std::optional<point> moved_point(element const &g) const
  {
    std::size_t m = a * b;
    std::mt19937_64 rng(0x9a27u);
    perm shuffle = perm_identity(m);
    for (int trial = 0; trial < 4096; ++trial) {
      std::uint32_t labels[16];
      for (std::size_t i = 0; i < m; ++i)
        labels[shuffle[i]] = static_cast<std::uint32_t>(i / b);
      point p = partition_code::canonical(labels, m);
      if (apply(p, g) != p)
        return p;
      std::shuffle(shuffle.begin(), shuffle.end(), rng);
    }
    return std::nullopt;
  }
};

/// Sym(m) acting on k-subsets encoded as bitmasks.
struct subset_action
{
  using element = perm;
  using point = std::uint64_t;
  using point_hash = std::hash<std::uint64_t>;

  std::size_t m = 0, k = 0;

  element id() const { return perm_identity(m); }
  element mul(element const &x, element const &y) const { return perm_mul(x, y); }
  element inv(element const &x) const { return perm_inv(x); }
  bool is_id(element const &x) const { return perm_is_identity(x); }
  point apply(point p, element const &g) const { return subset_image(p, g); }
  std::optional<point> moved_point(element const &g) const
  {
    // a subset containing i but not g(i) is moved
    for (std::size_t i = 0; i < m; ++i) {
      if (g[i] == i)
        continue;
      std::uint64_t mask = std::uint64_t(1) << i;
      for (std::size_t j = 0, added = 1; j < m && added < k; ++j)
        if (j != i && j != g[i]) {
          mask |= std::uint64_t(1) << j;
          ++added;
        }
      if (apply(mask, g) != mask)
        return mask;
    }
    return std::nullopt;
  }
};

} // namespace minbase
