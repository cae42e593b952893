#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "minbase/acceptance.hpp"
#include "minbase/driver.hpp"

using namespace minbase;

namespace {

enum exit_code { ok = 0, violation = 1, budget = 2, usage = 3 };

struct run_config
{
  std::string command;
  std::string action;
  std::string group = "sym";
  std::string family;
  std::string orbit = "all";
  std::string label;
  std::string sign = "+";
  std::size_t m = 0, k = 0, a = 0, b = 0, d = 0, r = 0, n1 = 0, n2 = 0;
  std::uint32_t q = 0;
  bool complements = false;
  bool exhaustive = false;
  bool quick = false;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  std::string in, out;
  std::string format = "json";
  caps cp;
};

json config_json(run_config const &c)
{
  json j;
  j["command"] = c.command;
  if (!c.action.empty())
    j["action"] = c.action;
  if (!c.family.empty())
    j["family"] = c.family;
  for (auto [key, v] : {std::pair<char const *, std::size_t>{"m", c.m}, {"k", c.k}, {"a", c.a}, {"b", c.b},
                        {"d", c.d}, {"r", c.r}, {"n1", c.n1}, {"n2", c.n2}, {"q", c.q}})
    if (v)
      j[key] = v;
  if (c.action == "subsets")
    j["group"] = c.group;
  if (c.action == "subspaces" || c.family == "hyperplanes")
    j[c.action == "subspaces" ? "orbit" : "sign"] = c.action == "subspaces" ? c.orbit : c.sign;
  if (!c.in.empty())
    j["input"] = c.in;
  j["seed"] = c.seed;
  if (c.command == "survey")
    j["jobs"] = c.jobs;
  j["degree_cap"] = c.cp.degree_cap;
  j["node_cap"] = c.cp.node_cap;
  j["enum_cap"] = c.cp.enum_cap;
  j["format"] = c.format;
  return j;
}

action_desc desc_from(run_config const &c)
{
  if (c.action.empty())
    throw error(errc::missing_field, "--action is required");
  action_desc x;
  x.kind = c.action;
  x.m = c.m;
  x.k = c.k;
  x.a = c.a;
  x.b = c.b;
  x.d = c.d;
  x.q = c.q;
  x.r = c.r;
  x.n1 = c.n1;
  x.n2 = c.n2;
  x.group = c.group;
  x.family = c.family;
  x.orbit_label = c.label;
  x.flags = !c.complements;
  if (x.kind == "subspaces") {
    if (c.orbit == "pairs") {
      x.kind = "pairs";
    } else {
      x.orbit = orbit_kind_name(parse_orbit_kind(c.orbit));
      if (x.family.empty())
        throw error(errc::missing_field, "--family is required for subspace actions");
    }
  }
  auto need = [&](bool have, char const *flag) {
    if (!have)
      throw error(errc::missing_field, std::string(flag) + " is required for " + x.kind);
  };
  if (x.kind == "subsets") {
    need(x.m, "--m");
    need(x.k, "--k");
  } else if (x.kind == "partitions") {
    need(x.a, "--a");
    need(x.b, "--b");
  } else if (x.kind == "tensor") {
    need(x.n1, "--n1");
    need(x.n2, "--n2");
    need(x.q, "--q");
  } else {
    need(x.d, "--d");
    need(x.q, "--q");
    if (x.kind == "subspaces" || x.kind == "pairs")
      need(x.k, "--k");
    if (x.kind == "subfield")
      need(x.r, "--r");
  }
  return x;
}

struct report
{
  json body;
  std::string text;
  int code = ok;
};

int status_code(cert_status s)
{
  switch (s) {
    case cert_status::strong_base:
    case cert_status::group_base:
    case cert_status::alt_only_base: return ok;
    case cert_status::not_a_base: return violation;
    case cert_status::inconclusive: return budget;
  }
  return budget;
}

report do_construct(run_config const &c)
{
  report r;
  r.body = construct(desc_from(c), c.seed);
  r.text = std::to_string(r.body["size"].get<std::size_t>()) + " elements, bound " +
           std::to_string(r.body["claimed_bound"].get<std::size_t>()) + " (" +
           r.body["bound_ref"].get<std::string>() + ")";
  return r;
}

report do_verify(run_config const &c)
{
  std::ifstream f(c.in);
  if (!f)
    throw error(errc::missing_field, "cannot read candidate file " + c.in);
  json cand = json::parse(f, nullptr, true);
  if (cand.contains("result"))
    cand = cand["result"];
  auto cert = verify_candidate(cand, c.cp);
  report r;
  r.body = certificate_json(cert);
  r.code = status_code(cert.status);
  r.text = std::string(cert_status_name(cert.status)) + " via " + cert.method;
  return r;
}

report do_bruteforce(run_config const &c)
{
  report r;
  r.body = bruteforce(desc_from(c), c.cp);
  r.text = "b = " + std::to_string(r.body["b"].get<std::size_t>()) + ", witness " + r.body["witness"].dump();
  return r;
}

bool is_classical_name(std::string const &s)
{
  try {
    parse_family(s);
    return true;
  } catch (error const &) {
    return false;
  }
}

/// A bound row: standalone formulas for the symplectic examples, otherwise
/// the action is constructed and verified and its size is the upper bound.
bound_instance bound_row(run_config const &c)
{
  std::string fam = c.family;
  if (fam == "sp-affine")
    return sp_affine_instance(c.d, c.q);
  if (fam == "hyperplanes") {
    if (c.d % 2)
      throw error(errc::incompatible_parameters, "hyperplane rows need even d = 2m");
    return sp_hyperplane_instance(c.d / 2, c.q, c.sign == "-" ? -1 : 1);
  }
  run_config a = c;
  if (fam == "sp-linear") {
    a.action = "vectors";
  } else if (is_classical_name(fam)) {
    a.action = c.orbit == "pairs" ? "pairs" : "subspaces";
    if (a.action == "pairs")
      a.orbit = "pairs";
  } else {
    a.action = fam;
  }
  if (a.action == "subspaces" || a.action == "pairs")
    a.action = "subspaces";
  auto row = run_instance(desc_from(a), c.seed, c.cp, c.exhaustive);
  if (!row.report)
    throw error(errc::generation_failed, row.row.contains("error") ? row.row["error"]["message"].get<std::string>()
                                                                   : "construction was not certified");
  bound_instance in = instance_for(action_from_json(row.row["action"]));
  in.b_exact = row.report->b_exact;
  in.b_upper = row.report->b_upper;
  if (fam == "sp-linear")
    in.b_exact = c.d;
  return in;
}

report do_bound(run_config const &c)
{
  if (c.family.empty())
    throw error(errc::missing_field, "--family is required");
  auto rep = eval_bounds(bound_row(c));
  report r;
  r.body = bound_report_json(rep);
  r.code = rep.violations.empty() ? ok : violation;
  if (c.format == "csv")
    r.text = bound_reports_csv({rep});
  else
    r.text = rep.id + ": " + std::to_string(rep.checks.size()) + " checks, " +
             std::to_string(rep.violations.size()) + " violations";
  return r;
}

report do_survey(run_config const &c)
{
  std::ifstream f(c.in);
  if (!f)
    throw error(errc::missing_field, "cannot read grid file " + c.in);
  auto grid = grid_from_json(json::parse(f, nullptr, true, true));
  auto rows = run_survey(grid, c.seed, c.cp, c.exhaustive, c.jobs);
  report r;
  json out = json::array();
  std::vector<bound_report> reps;
  std::size_t failed = 0, inconclusive = 0;
  for (auto const &row : rows) {
    out.push_back(row.row);
    if (row.report)
      reps.push_back(*row.report);
    if (!row.ok)
      ++failed;
    if (row.row.contains("certificate") && row.row["certificate"]["status"] == "Inconclusive")
      ++inconclusive;
  }
  r.body = {{"rows", out}, {"instances", rows.size()}, {"failed", failed}};
  r.code = inconclusive ? budget : failed ? violation : ok;
  if (c.format == "csv")
    r.text = bound_reports_csv(reps);
  else
    r.text = std::to_string(rows.size()) + " instances, " + std::to_string(failed) + " failed";
  return r;
}

report do_selftest(run_config const &c)
{
  acceptance_options o;
  o.jobs = c.jobs;
  if (c.quick)
    o.max_d = 6;
  acceptance_suite suite(o);
  std::ostringstream log;
  auto res = suite.run(c.format == "text" ? std::cout : log);
  report r;
  json crit = json::array();
  bool all = true;
  for (auto const &x : res) {
    crit.push_back({{"id", x.id}, {"title", x.title}, {"pass", x.pass}, {"detail", x.detail}});
    all = all && x.pass;
  }
  r.body = {{"criteria", crit}};
  r.code = all ? ok : violation;
  return r;
}

void emit(run_config const &c, report const &r)
{
  std::string payload;
  if (c.format == "json") {
    json doc;
    doc["version"] = artifact_version();
    doc["config"] = config_json(c);
    doc["result"] = r.body;
    payload = doc.dump(2) + "\n";
  } else if (c.format == "csv") {
    if (r.text.find(',') == std::string::npos)
      throw error(errc::incompatible_parameters, "csv output is available for bound and survey");
    payload = "# minbase " + artifact_version() + " " + config_json(c).dump() + "\n" + r.text;
  } else {
    if (c.command == "selftest")
      return;
    payload = "minbase " + artifact_version() + " " + c.command + ": " + r.text + "\n";
  }
  if (c.out.empty()) {
    std::cout << payload;
  } else {
    std::ofstream f(c.out, std::ios::binary);
    if (!f)
      throw error(errc::missing_field, "cannot write " + c.out);
    f << payload;
  }
}

void add_instance_flags(CLI::App *sub, run_config &c)
{
  sub->add_option("--m", c.m, "points for subsets");
  sub->add_option("--k", c.k, "subset size or subspace dimension");
  sub->add_option("--a", c.a, "number of blocks");
  sub->add_option("--b", c.b, "block size");
  sub->add_option("--d", c.d, "dimension of the natural module");
  sub->add_option("--q", c.q, "field order");
  sub->add_option("--r", c.r, "subfield degree [F_q : F_q0]");
  sub->add_option("--n1", c.n1, "first tensor factor dimension");
  sub->add_option("--n2", c.n2, "second tensor factor dimension");
  sub->add_option("--orbit", c.orbit, "all, nondeg, totsing or pairs")
      ->check(CLI::IsMember({"all", "nondeg", "totsing", "pairs", "nondegenerate", "totally_singular"}));
  sub->add_option("--label", c.label, "orbit label when several nondegenerate orbits exist");
  sub->add_option("--sign", c.sign, "+ or -")->check(CLI::IsMember({"+", "-"}));
  sub->add_flag("--complements", c.complements, "pairs {U, W} with V = U + W instead of flags");
}

} // namespace

int main(int argc, char **argv)
{
  run_config c;
  CLI::App app{"Minimal base sizes of standard actions: constructions, certificates and bounds"};
  app.require_subcommand(1);
  app.add_option("--seed", c.seed, "seed for every randomized step");
  app.add_option("--out", c.out, "write the report to a file");
  app.add_option("--format", c.format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--degree-cap", c.cp.degree_cap, "largest explicit permutation domain");
  app.add_option("--node-cap", c.cp.node_cap, "search nodes for bruteforce");
  app.add_option("--enum-cap", c.cp.enum_cap, "largest unit group enumerated by certificates");

  auto actions = CLI::IsMember({"subsets", "partitions", "subspaces", "pairs", "vectors", "subfield", "tensor"});
  auto *con = app.add_subcommand("construct", "emit a base candidate");
  con->add_option("--action", c.action)->required()->check(actions);
  con->add_option("--family", c.family, "SL, Sp, SU, O+, O-, Oo");
  add_instance_flags(con, c);

  auto *ver = app.add_subcommand("verify", "certify a candidate file");
  ver->add_option("candidate", c.in)->required();

  auto *bf = app.add_subcommand("bruteforce", "exact minimal base size by exhaustive search");
  bf->add_option("--action", c.action)->required()->check(actions);
  bf->add_option("--group", c.group, "sym or alt for subset actions")->check(CLI::IsMember({"sym", "alt"}));
  bf->add_option("--family", c.family, "SL, Sp, SU, O+, O-, Oo");
  add_instance_flags(bf, c);

  auto *bd = app.add_subcommand("bound", "bound report for one instance");
  bd->add_option("--family", c.family,
                 "subsets, partitions, sp-affine, sp-linear, hyperplanes, subfield, tensor, or a classical family")
      ->required();
  bd->add_flag("--exhaustive", c.exhaustive, "add the exact value when the action is small enough");
  add_instance_flags(bd, c);

  auto *sv = app.add_subcommand("survey", "run a JSON grid of instances");
  sv->add_option("grid", c.in)->required();
  sv->add_option("--jobs", c.jobs, "worker threads")->check(CLI::PositiveNumber);
  sv->add_flag("--exhaustive", c.exhaustive, "add exact values where the degree allows");

  auto *st = app.add_subcommand("selftest", "run the embedded acceptance suite");
  st->add_option("--jobs", c.jobs, "worker threads")->check(CLI::PositiveNumber);
  st->add_flag("--quick", c.quick, "classical grid up to d = 6");

  try {
    app.parse(argc, argv);
  } catch (CLI::CallForHelp const &e) {
    return app.exit(e);
  } catch (CLI::ParseError const &e) {
    app.exit(e);
    return usage;
  }
  c.command = app.get_subcommands().front()->get_name();
  try {
    report r;
    if (c.command == "construct")
      r = do_construct(c);
    else if (c.command == "verify")
      r = do_verify(c);
    else if (c.command == "bruteforce")
      r = do_bruteforce(c);
    else if (c.command == "bound")
      r = do_bound(c);
    else if (c.command == "survey")
      r = do_survey(c);
    else
      r = do_selftest(c);
    emit(c, r);
    return r.code;
  } catch (bruteforce_budget_error const &e) {
    std::cerr << "budget: " << e.what() << "\n";
    return budget;
  } catch (error const &e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.code()) {
      case errc::size_cap_exceeded:
      case errc::degree_cap_exceeded:
      case errc::budget_exceeded: return budget;
      case errc::missing_field:
      case errc::parse_error:
      case errc::incompatible_parameters:
      case errc::not_prime:
      case errc::formula_inapplicable:
      case errc::orbit_empty: return usage;
      default: return violation;
    }
  } catch (json::exception const &e) {
    std::cerr << "error: " << e.what() << "\n";
    return usage;
  }
}
