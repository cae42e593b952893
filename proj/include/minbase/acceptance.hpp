#pragma once

// The acceptance suite: ten criteria, one pass/fail line each.

#include <atomic>
#include <chrono>
#include <cstdio>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "driver.hpp"

namespace minbase {

struct criterion_result
{
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

struct acceptance_options
{
  std::size_t max_d = 8;
  std::size_t subset_max_m = 12;
  unsigned jobs = 1;
};

namespace detail {

template <class F>
void parallel_for(std::size_t n, unsigned jobs, F f)
{
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next++) < n;)
      f(i);
  };
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(n ? n : 1)));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < jobs; ++t)
    pool.emplace_back(work);
  work();
  for (auto &t : pool)
    t.join();
}

inline std::string fmt(char const *f, double x)
{
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

struct classical_case
{
  action_desc desc;
  bool excluded = false;
  bool ok = false;
  std::string note;
  std::optional<bound_instance> row;
  // cross-engine
  bool compared = false;
  bool agree = true;
};

} // namespace detail

class acceptance_suite
{
public:
  explicit acceptance_suite(acceptance_options o = {}) : _opt(o) {}

  std::vector<criterion_result> run(std::ostream &out)
  {
    std::vector<criterion_result> res;
    auto step = [&](int id, std::string title, auto fn) {
      auto t0 = std::chrono::steady_clock::now();
      criterion_result r;
      r.id = id;
      r.title = std::move(title);
      try {
        fn(r);
      } catch (std::exception const &e) {
        r.pass = false;
        r.detail = std::string("exception: ") + e.what();
      }
      r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      out << (r.pass ? "PASS" : "FAIL") << " [" << r.id << "] " << r.title << ": " << r.detail << " ("
          << detail::fmt("%.1f", r.seconds) << "s)\n";
      out.flush();
      res.push_back(r);
    };
    step(1, "subset exact values", [&](auto &r) { subset_exact(r); });
    step(2, "subset constructions", [&](auto &r) { subset_constructions(r); });
    step(3, "partition bounds", [&](auto &r) { partition_bounds(r); });
    step(4, "subspace constructions", [&](auto &r) { subspace_constructions(r); });
    step(5, "cross-engine agreement", [&](auto &r) { cross_engine(r); });
    step(6, "symplectic exactness", [&](auto &r) { symplectic(r); });
    step(7, "inequality sweep", [&](auto &r) { inequality_sweep(r); });
    step(8, "asymptotic ratio", [&](auto &r) { asymptotic_ratio(r); });
    step(9, "Lemma 2.4 interval", [&](auto &r) { lemma24(r); });
    step(10, "oracle floor", [&](auto &r) { oracle_floor(r); });
    std::size_t passed = 0;
    for (auto const &r : res)
      passed += r.pass;
    out << passed << "/" << res.size() << " criteria passed\n";
    return res;
  }

  std::vector<bound_instance> const &rows() const { return _rows; }

private:
  acceptance_options _opt;
  caps _caps;
  std::vector<bound_instance> _rows;
  std::vector<detail::classical_case> _classical;
  void subset_exact(criterion_result &r)
  {
    std::size_t n = 0, bad = 0;
    std::string first;
    for (std::size_t m = 5; m <= _opt.subset_max_m; ++m)
      for (std::size_t k = 2; 2 * k <= m && k * k <= m; ++k) {
        action_desc x;
        x.kind = "subsets";
        x.m = m;
        x.k = k;
        auto ea = materialise(x, _caps);
        auto bf = min_base_bruteforce(ea.group, ea.order, _caps.node_cap);
        std::size_t want = subset_exact_value(m, k);
        ++n;
        if (bf.b != want && !bad++)
          first = "m=" + std::to_string(m) + " k=" + std::to_string(k) + " got " + std::to_string(bf.b);
        auto in = instance_for(x);
        in.b_exact = bf.b;
        _rows.push_back(in);
      }
    r.pass = n > 0 && bad == 0;
    r.detail = std::to_string(n - bad) + "/" + std::to_string(n) + " instances equal ceil((2m-2)/(k+1))" +
               (bad ? "; first mismatch " + first : "");
  }

  void subset_constructions(criterion_result &r)
  {
    std::size_t n = 0, bad = 0;
    std::string first;
    for (std::size_t m = 5; m <= 40; ++m)
      for (std::size_t k = 2; 2 * k <= m; ++k) {
        auto c = subset_base(m, k, 0);
        auto cert = verify_subset_base(m, c.elements);
        std::size_t bound = k * k <= m ? subset_exact_value(m, k) : subset_digit_bound(m, k);
        ++n;
        if ((!is_base(cert.status) || c.elements.size() > bound) && !bad++)
          first = "m=" + std::to_string(m) + " k=" + std::to_string(k) + " size " +
                  std::to_string(c.elements.size()) + " " + cert_status_name(cert.status);
        action_desc x;
        x.kind = "subsets";
        x.m = m;
        x.k = k;
        auto in = instance_for(x);
        in.b_upper = c.elements.size();
        _rows.push_back(in);
      }
    r.pass = bad == 0;
    r.detail = std::to_string(n - bad) + "/" + std::to_string(n) + " certified within the bound" +
               (bad ? "; first failure " + first : "");
  }

  void partition_bounds(criterion_result &r)
  {
    std::size_t n = 0, bad = 0, brute = 0;
    std::string fails;
    for (std::size_t a : {2u, 3u, 4u})
      for (std::size_t b : {2u, 3u, 4u}) {
        ++n;
        action_desc x;
        x.kind = "partitions";
        x.a = a;
        x.b = b;
        auto c = partition_base(a, b, 1);
        certificate cert;
        if (partition_count(a, b) <= _caps.degree_cap) {
          cert = verify_partitions(a, b, c.elements, _caps);
        } else {
          // implicit points; the label-class count is a second, independent check
          cert = verify_generic_implicit(partition_action{a, b}, symmetric_group(a * b).generators,
                                         factorial(a * b), c.elements);
          if (is_base(cert.status) != (partition_stabilizer_order(a, b, c.elements) == 1))
            cert.status = cert_status::inconclusive;
        }
        auto in = instance_for(x);
        in.b_upper = c.elements.size();
        auto rep = eval_bounds(in);
        bool ok = is_base(cert.status);
        for (char const *name : {"Thm2.3(i)", "Thm2.3(ii)", "f(a,2)"})
          if (auto chk = rep.find(name); chk && !chk->holds)
            ok = false;
        std::string tag = "(" + std::to_string(a) + "," + std::to_string(b) + ")";
        if (partition_count(a, b) <= 10000) {
          ++brute;
          auto ea = materialise(x, _caps);
          auto bf = min_base_bruteforce(ea.group, ea.order, _caps.node_cap);
          in.b_exact = bf.b;
          auto rx = eval_bounds(in);
          for (char const *name : {"Thm2.3(i)", "Thm2.3(ii)", "f(a,2)"})
            if (auto chk = rx.find(name); chk && !chk->holds) {
              ok = false;
              tag += " exact b=" + std::to_string(bf.b) + " exceeds " + name;
            }
          if (bf.b > c.elements.size()) {
            ok = false;
            tag += " exact b above construction";
          }
        }
        if (!ok) {
          ++bad;
          fails += (fails.empty() ? "" : "; ") + tag + " size " + std::to_string(c.elements.size()) + " " +
                   cert_status_name(cert.status);
        }
        _rows.push_back(in);
      }
    r.pass = bad == 0;
    r.detail = std::to_string(n - bad) + "/" + std::to_string(n) + " pairs within bounds, " +
               std::to_string(brute) + " brute-forced" + (bad ? "; failures: " + fails : "");
  }

  void classical_grid()
  {
    if (!_classical.empty())
      return;
    std::vector<detail::classical_case> cases;
    for (auto fam : {family::SL, family::Sp, family::SU, family::OmegaPlus, family::OmegaMinus, family::OmegaOdd})
      for (std::size_t d = 2; d <= _opt.max_d; ++d)
        for (std::uint32_t q : {2u, 3u, 4u, 5u}) {
          mat_group_spec s;
          try {
            s = make_spec(fam, d, field::of_order(q));
            check_spec(s);
          } catch (error const &) {
            continue;
          }
          if (is_orthogonal(fam) && d < 3)
            continue;
          for (std::size_t k = 1; 2 * k <= d; ++k)
            for (auto const &o : subspace_orbits(s, k)) {
              detail::classical_case c;
              c.desc.kind = "subspaces";
              c.desc.family = family_name(fam);
              c.desc.d = d;
              c.desc.q = q;
              c.desc.k = k;
              c.desc.orbit = orbit_kind_name(o.kind);
              c.desc.orbit_label = o.label;
              cases.push_back(c);
            }
        }
    detail::parallel_for(cases.size(), _opt.jobs, [&](std::size_t i) { run_classical(cases[i]); });
    _classical = std::move(cases);
    for (auto const &c : _classical)
      if (c.row)
        _rows.push_back(*c.row);
  }

  void run_classical(detail::classical_case &c)
  {
    action_desc x = c.desc;
    auto [s, o] = resolve_orbit(x);
    subspace_candidate cand;
    try {
      cand = subspace_base(s, o);
    } catch (error const &e) {
      if (e.code() == errc::incompatible_parameters && std::string(e.what()).find("unfaithful") != std::string::npos) {
        c.excluded = true;
        c.note = e.what();
        return;
      }
      throw;
    }
    auto cert = verify_subspace_base(s, cand.elements, _caps.enum_cap);
    c.ok = is_base(cert.status) && cand.elements.size() <= cand.claimed_bound;
    c.note = "size " + std::to_string(cand.elements.size()) + "/" + std::to_string(cand.claimed_bound) + " " +
             cert_status_name(cert.status);
    auto in = instance_for(x);
    in.b_upper = cand.elements.size();
    c.row = in;
    // cross-engine on the induced action
    bigint full = orbit_size(s, o);
    if (s.fam == family::OmegaPlus && o.kind == orbit_kind::totally_singular && 2 * o.k == s.d)
      full *= 2;
    if (full <= 10000) {
      auto gens = generators(s).gens;
      auto orb = enumerate_orbit(gens, o.rep, 10000);
      if (orb.complete) {
        auto g = induced_action(gens, orb);
        std::vector<std::uint32_t> pts;
        for (auto const &U : cand.elements)
          pts.push_back(orb.index.at(U));
        auto gc = verify_generic(g, induced_order(g, action_order(s)), pts, 10000);
        c.compared = true;
        c.agree = is_base(gc.status) == is_base(cert.status);
      }
    }
  }

  void subspace_constructions(criterion_result &r)
  {
    classical_grid();
    std::size_t n = 0, bad = 0, excl = 0;
    std::string fails;
    for (auto const &c : _classical) {
      if (c.excluded) {
        ++excl;
        continue;
      }
      ++n;
      if (!c.ok) {
        ++bad;
        fails += (fails.empty() ? "" : "; ") + action_params(c.desc) + " " + c.note;
      }
    }
    r.pass = bad == 0;
    r.detail = std::to_string(n - bad) + "/" + std::to_string(n) + " orbits certified within the proof-case bound, " +
               std::to_string(excl) + " unfaithful actions excluded" + (bad ? "; failures: " + fails : "");
  }

  void cross_engine(criterion_result &r)
  {
    classical_grid();
    std::size_t n = 0, bad = 0;
    std::string fails;
    for (auto const &c : _classical) {
      if (!c.compared)
        continue;
      ++n;
      if (!c.agree) {
        ++bad;
        fails += (fails.empty() ? "" : "; ") + action_params(c.desc);
      }
    }
    r.pass = n > 0 && bad == 0;
    r.detail = std::to_string(n - bad) + "/" + std::to_string(n) + " orbits of size <= 10^4 agree" +
               (bad ? "; disagreements: " + fails : "");
  }

  void symplectic(criterion_result &r)
  {
    std::size_t n = 0, bad = 0, witnesses = 0;
    std::string fails;
    for (std::size_t d : {2u, 4u, 6u})
      for (std::uint32_t q : {2u, 3u}) {
        field f = field::of_order(q);
        auto s = make_spec(family::Sp, d, f, false);
        ++n;
        auto c = symplectic_vector_base(d, f);
        auto cert = verify_vector_base(s, c.elements);
        bool ok = c.elements.size() == d && cert.status == cert_status::strong_base;
        std::mt19937_64 rng(1000 * d + q);
        auto whole = subspace::whole(f, d).vectors();
        matrix I = matrix::identity(f, d);
        for (int t = 0; t < 50; ++t) {
          auto U = detail::random_subspace(f, d, d - 1, whole, rng);
          if (!U) {
            ok = false;
            continue;
          }
          matrix w = symplectic_insufficiency_witness(s.form, *U);
          bool good = !(w == I) && preserves(s.form, w);
          for (auto const &v : U->vectors())
            good = good && w.apply(v) == v;
          witnesses += good;
          ok = ok && good;
        }
        if (!ok) {
          ++bad;
          fails += (fails.empty() ? "" : "; ") + std::string("d=") + std::to_string(d) + " q=" + std::to_string(q);
        }
        action_desc x;
        x.kind = "vectors";
        x.d = d;
        x.q = q;
        auto in = instance_for(x);
        in.b_exact = d;
        _rows.push_back(in);
        _rows.push_back(sp_affine_instance(d, q));
      }
    r.pass = bad == 0;
    r.detail = std::to_string(n - bad) + "/" + std::to_string(n) + " (d,q) exact, " + std::to_string(witnesses) +
               " witnesses checked" + (bad ? "; failures: " + fails : "");
  }

  void inequality_sweep(criterion_result &r)
  {
    static char const *const names[] = {"Thm1.1", "Cor1.3", "Prop2.5", "Prop2.7", "Prop3.2", "Thm3.3", "Thm5.2"};
    std::size_t checks = 0, bad = 0;
    std::string fails;
    for (auto const &in : _rows) {
      auto rep = eval_bounds(in);
      for (auto const *nm : names)
        if (auto c = rep.find(nm)) {
          ++checks;
          if (!c->holds) {
            ++bad;
            if (bad <= 5)
              fails += (fails.empty() ? "" : "; ") + in.id + " " + nm;
          }
        }
    }
    r.pass = checks > 0 && bad == 0;
    r.detail = std::to_string(checks - bad) + "/" + std::to_string(checks) + " checks hold over " +
               std::to_string(_rows.size()) + " rows" + (bad ? "; violations: " + fails : "");
  }

  void asymptotic_ratio(criterion_result &r)
  {
    bool ok = true;
    std::string d;
    for (std::size_t k : {2u, 3u, 4u}) {
      auto rows = ratio_asymptotic(k, {10000});
      auto const &x = rows[0];
      bool good = x.deviation <= 0.05;
      ok = ok && good;
      d += (d.empty() ? "" : "; ") + std::string("k=") + std::to_string(k) + " ratio " +
           detail::fmt("%.4f", x.ratio.mid()) + " target " + detail::fmt("%.4f", x.target) + " |dev| <= " +
           detail::fmt("%.4f", x.deviation) + (good ? "" : " (exceeds 0.05)");
    }
    r.pass = ok;
    r.detail = d;
  }

  void lemma24(criterion_result &r)
  {
    std::vector<std::pair<std::size_t, std::size_t>> grid;
    for (std::size_t m = 5; m <= 12; ++m)
      for (std::size_t k = 2; 2 * k <= m && k * k <= m; ++k)
        grid.emplace_back(m, k);
    grid.emplace_back(100, 10);
    grid.emplace_back(1000, 31);
    std::size_t bad = 0;
    std::string fails;
    for (auto [m, k] : grid)
      if (!lemma24_interval(m, k).holds) {
        ++bad;
        fails += (fails.empty() ? "" : "; ") + std::to_string(m) + "," + std::to_string(k);
      }
    r.pass = bad == 0;
    r.detail = std::to_string(grid.size() - bad) + "/" + std::to_string(grid.size()) + " (m,k) strictly inside" +
               (bad ? "; failures: " + fails : "");
  }

  void oracle_floor(criterion_result &r)
  {
    std::size_t bad = 0;
    std::string fails;
    for (auto const &in : _rows) {
      std::size_t b = in.b_exact ? *in.b_exact : *in.b_upper;
      if (!(in.order < ipow(in.degree, b))) {
        ++bad;
        if (bad <= 5)
          fails += (fails.empty() ? "" : "; ") + in.id;
      }
    }
    r.pass = !_rows.empty() && bad == 0;
    r.detail = std::to_string(_rows.size() - bad) + "/" + std::to_string(_rows.size()) + " rows satisfy |G| < n^b" +
               (bad ? "; failures: " + fails : "");
  }
};

} // namespace minbase
