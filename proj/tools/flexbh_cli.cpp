// flexbh: construct, verify, bound and search zero-forcing schemes for
// interference networks with a flexible backhaul budget.

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "flexbh/bounds.hpp"
#include "flexbh/errors.hpp"
#include "flexbh/search.hpp"
#include "flexbh/serialize.hpp"

using namespace flexbh;

namespace {

struct Globals {
  std::uint64_t seed = 1;
  std::uint64_t max_nodes = 10'000'000;
  int threads = 0;
  bool json = false;
  std::string csv;
};

struct CsvRow {
  int K = 0;
  std::string model;
  std::string budget;
  std::string fraction;
  std::uint64_t nodes = 0;
};

// What a subcommand hands back for printing. `human` is a list of
// key/value lines for the terminal view.
struct Report {
  std::string command;
  Json inputs = Json::object();
  Json outputs = Json::object();
  std::vector<std::uint64_t> seeds;
  int resamples = 0;
  std::uint64_t nodes = 0;
  bool consistent = true;
  std::vector<std::pair<std::string, std::string>> human;
  std::vector<std::string> table;  // preformatted extra lines
  std::vector<CsvRow> csv;
};

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

SearchOptions search_options(const Globals& g) {
  SearchOptions o;
  o.seed = g.seed;
  o.max_nodes = g.max_nodes;
  o.threads = g.threads;
  return o;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

Report cmd_theorem1(const Globals& g, int B, int blocks) {
  if (B < 1 || blocks < 1) throw std::invalid_argument("B and blocks must be positive");
  Report r;
  r.command = "theorem1";
  r.inputs = {{"B", B}, {"blocks", blocks}, {"seed", g.seed}};
  const int K = 4 * B * blocks;
  const NetworkTopology topo = build_topology(K, ModelDescriptor::linear());
  const DesignOutcome d = design_with_resampling(canonical_scheme(K, B), topo, g.seed);
  const ChannelRealization h = sample_realization(topo, d.seed);
  bool zero_residual = true;
  for (const auto& [key, v] : cancellation_residuals(d.scheme, h))
    if (v != 0) zero_residual = false;
  const BoundWitness w = lemma3_witness(d.scheme.assignment, B);
  const int bound = lemma2_bound(w, topo);
  const Rational target = tau(B);

  r.seeds = {d.seed};
  r.resamples = d.resamples;
  r.consistent = d.result.fraction == target && d.result.sum_dof <= bound && zero_residual;
  r.outputs = {{"K", K},
               {"dof", dof_to_json(d.result)},
               {"tau", to_string(target)},
               {"backhaul", to_string(backhaul_load(d.scheme.assignment))},
               {"zero_residual", zero_residual},
               {"witness", witness_to_json(w)},
               {"bound", bound}};
  r.human = {{"K", std::to_string(K)},
             {"sum DoF", std::to_string(d.result.sum_dof)},
             {"fraction", to_string(d.result.fraction)},
             {"tau(B)", to_string(target)},
             {"backhaul", to_string(backhaul_load(d.scheme.assignment))},
             {"zero residual", yes_no(zero_residual)},
             {"witness M", std::to_string(w.M)},
             {"upper bound", std::to_string(bound)}};
  r.csv.push_back({K, "linear", std::to_string(B), to_string(d.result.fraction), 0});
  return r;
}

Report cmd_verify(const Globals& g, const std::string& topo_path, const std::string& scheme_path) {
  Report r;
  r.command = "verify-scheme";
  r.inputs = {{"topology", topo_path}, {"scheme", scheme_path}, {"seed", g.seed}};
  const NetworkTopology topo = topology_from_json(read_json_file(topo_path));
  const ZFScheme scheme = scheme_from_json(read_json_file(scheme_path));
  if (scheme.K() != topo.K()) throw std::invalid_argument("scheme and topology disagree on K");

  ZFScheme used = scheme;
  DoFResult res;
  if (scheme.beams.empty()) {
    DesignOutcome d = design_with_resampling(scheme, topo, g.seed);
    used = std::move(d.scheme);
    res = d.result;
    r.seeds = {d.seed};
    r.resamples = d.resamples;
  } else {
    res = verify_scheme(scheme, sample_realization(topo, g.seed));
    r.seeds = {g.seed};
  }
  for (int i = 1; i <= topo.K(); ++i)
    if (res.per_user[i - 1] != (used.is_served(i) ? 1 : 0)) r.consistent = false;
  r.outputs = dof_to_json(res);
  r.outputs["beams_designed"] = scheme.beams.empty();
  r.human = {{"K", std::to_string(topo.K())},
             {"model", topo.model().name()},
             {"sum DoF", std::to_string(res.sum_dof)},
             {"fraction", to_string(res.fraction)}};
  r.table.push_back("user  |T_i|  served  decoded");
  for (int i = 1; i <= topo.K(); ++i) {
    std::ostringstream line;
    line << std::setw(4) << i << "  " << std::setw(5) << used.assignment.transmit_set(i).size() << "  "
         << std::setw(6) << yes_no(used.is_served(i)) << "  " << std::setw(7) << yes_no(res.per_user[i - 1]);
    r.table.push_back(line.str());
  }
  return r;
}

Report cmd_bounds(const Globals& g, const std::string& path, int B) {
  Report r;
  r.command = "bounds";
  r.inputs = {{"assignment", path}, {"B", B}, {"seed", g.seed}};
  const MessageAssignment a = assignment_from_json(read_json_file(path));
  const NetworkTopology topo = build_topology(a.K(), ModelDescriptor::linear());
  const BoundWitness w = lemma3_witness(a, B);
  const int bound = lemma2_bound(w, topo);
  const ReconstructionInstance inst = reconstruction_instance(a, w);
  const bool recon = verify_reconstruction(inst.pruned, inst.observed, sample_realization(topo, g.seed));
  r.seeds = {g.seed};
  r.outputs = {{"witness", witness_to_json(w)},
               {"bound", bound},
               {"reconstruction",
                {{"observed", inst.observed}, {"edge_dropped", inst.edge_dropped}, {"holds", recon}}}};
  r.human = {{"K", std::to_string(a.K())},
             {"M", std::to_string(w.M)},
             {"|S|", std::to_string(w.S.size())},
             {"|A_bar|", std::to_string(w.A_bar.size())},
             {"upper bound", std::to_string(bound)},
             {"reconstruction (advisory)", yes_no(recon)}};
  return r;
}

struct SearchArgs {
  std::string model = "linear";
  int L = 0;
  int K = 0;
  std::string budget = "1";
  int period = 0;
  std::string target;
  int max_set_size = 0;
};

Report cmd_search(const Globals& g, const SearchArgs& s) {
  Report r;
  r.command = "search";
  SearchSpace space;
  space.model = ModelDescriptor::from_name(s.model, s.L);
  space.backhaul_budget = parse_rational(s.budget);
  if (s.max_set_size > 0) space.max_set_size = s.max_set_size;
  r.inputs = {{"model", s.model}, {"L", s.L}, {"budget", to_string(space.backhaul_budget)},
              {"seed", g.seed}, {"max_nodes", g.max_nodes}};
  if (s.max_set_size > 0) r.inputs["max_set_size"] = s.max_set_size;

  if (s.period > 0) {
    space.period = s.period;
    space.K = s.period;
    const Rational target = s.target.empty() ? Rational(1) : parse_rational(s.target);
    r.inputs["period"] = s.period;
    r.inputs["target"] = to_string(target);
    try {
      const auto res = periodic_scheme_search(space, target, search_options(g));
      r.nodes = res.nodes;
      r.seeds = res.verified_seeds;
      r.consistent = res.scheme.has_value();
      r.outputs = {{"found", res.scheme.has_value()},
                   {"best", res.best ? periodic_to_json(*res.best) : Json(nullptr)},
                   {"periods_checked", res.periods_checked},
                   {"nodes", res.nodes}};
      const std::string frac = res.best ? to_string(res.best->fraction) : "none";
      r.human = {{"target", to_string(target)},
                 {"found", yes_no(res.scheme.has_value())},
                 {"best fraction", frac},
                 {"best backhaul", res.best ? to_string(res.best->backhaul) : "none"},
                 {"nodes", std::to_string(res.nodes)}};
      r.csv.push_back({s.period, space.model.name(), to_string(space.backhaul_budget), frac, res.nodes});
    } catch (const PeriodicBudgetExceeded& e) {
      r.nodes = e.nodes();
      r.consistent = false;
      r.outputs = {{"found", false},
                   {"budget_exhausted", true},
                   {"best", e.best() ? periodic_to_json(*e.best()) : Json(nullptr)},
                   {"nodes", e.nodes()}};
      r.human = {{"target", to_string(target)}, {"found", "budget exhausted"},
                 {"nodes", std::to_string(e.nodes())}};
      r.csv.push_back({s.period, space.model.name(), to_string(space.backhaul_budget), "none", e.nodes()});
    }
    return r;
  }

  if (s.K < 1) throw std::invalid_argument("--K is required without --period");
  space.K = s.K;
  r.inputs["K"] = s.K;
  auto emit = [&](const SearchResult& res, bool partial) {
    r.nodes = res.nodes;
    r.seeds = res.verified_seeds;
    r.outputs = {{"partial", partial},
                 {"best", dof_to_json(res.best)},
                 {"backhaul", to_string(res.backhaul)},
                 {"argmax", scheme_to_json(res.argmax)},
                 {"nodes", res.nodes}};
    r.human = {{"K", std::to_string(s.K)},
               {"sum DoF", std::to_string(res.best.sum_dof)},
               {"fraction", to_string(res.best.fraction)},
               {"backhaul", to_string(res.backhaul)},
               {"nodes", std::to_string(res.nodes)}};
    if (partial) r.human.push_back({"status", "node budget exhausted (partial)"});
    r.csv.push_back({s.K, space.model.name(), to_string(space.backhaul_budget), to_string(res.best.fraction),
                     res.nodes});
  };
  try {
    emit(brute_force_best_zf(space, search_options(g)), false);
  } catch (const SearchBudgetExceeded& e) {
    r.consistent = false;
    if (e.partial()) {
      SearchResult p = *e.partial();
      p.nodes = e.nodes();
      emit(p, true);
    } else {
      r.nodes = e.nodes();
      r.outputs = {{"partial", true}, {"best", nullptr}, {"nodes", e.nodes()}};
      r.human = {{"status", "node budget exhausted, nothing verified"}};
    }
  }
  return r;
}

struct Table1Row {
  int L;
  int period;
  Rational target;
};

Report cmd_table1(const Globals& g, const std::vector<int>& Ls, const std::vector<int>& periods) {
  static const std::map<int, std::pair<int, Rational>> kDefaults = {
      {2, {6, Rational(2, 3)}}, {3, {15, Rational(3, 5)}}, {4, {9, Rational(5, 9)}},
      {5, {21, Rational(11, 21)}}, {6, {12, Rational(1, 2)}}};
  if (!periods.empty() && periods.size() != Ls.size())
    throw std::invalid_argument("--period must list one period per L");
  Report r;
  r.command = "table1";
  r.inputs = {{"L", Ls}, {"seed", g.seed}, {"max_nodes", g.max_nodes}};
  if (!periods.empty()) r.inputs["period"] = periods;
  Json cells = Json::array();
  r.table.push_back("  L  period  target  found  best    backhaul  nodes");
  for (std::size_t n = 0; n < Ls.size(); ++n) {
    const int L = Ls[n];
    const auto it = kDefaults.find(L);
    if (it == kDefaults.end()) throw std::invalid_argument("targets are tabulated for L = 2..6 only");
    const int p = periods.empty() ? it->second.first : periods[n];
    const Rational target = it->second.second;
    SearchSpace space;
    space.model = ModelDescriptor::locally_connected(L);
    space.backhaul_budget = 1;
    space.period = p;
    space.K = p;
    Json cell = {{"L", L}, {"period", p}, {"target", to_string(target)}};
    std::string found = "no", best = "none", load = "none";
    std::uint64_t nodes = 0;
    try {
      const auto res = periodic_scheme_search(space, target, search_options(g));
      nodes = res.nodes;
      found = yes_no(res.scheme.has_value());
      cell["status"] = res.scheme ? "found" : "not_found";
      cell["best"] = res.best ? periodic_to_json(*res.best) : Json(nullptr);
      cell["verified_seeds"] = res.verified_seeds;
      if (res.best) {
        best = to_string(res.best->fraction);
        load = to_string(res.best->backhaul);
      }
    } catch (const PeriodicBudgetExceeded& e) {
      nodes = e.nodes();
      found = "budget";
      cell["status"] = "budget_exhausted";
      cell["best"] = e.best() ? periodic_to_json(*e.best()) : Json(nullptr);
      if (e.best()) {
        best = to_string(e.best()->fraction);
        load = to_string(e.best()->backhaul);
      }
    }
    cell["nodes"] = nodes;
    r.nodes += nodes;
    cells.push_back(cell);
    std::ostringstream line;
    line << std::setw(3) << L << std::setw(8) << p << std::setw(8) << to_string(target) << std::setw(7) << found
         << "  " << std::left << std::setw(8) << best << std::setw(10) << load << std::right << nodes;
    r.table.push_back(line.str());
    r.csv.push_back({p, space.model.name() + "(" + std::to_string(L) + ")", "1/1", best, nodes});
  }
  r.seeds = {g.seed};
  r.outputs = {{"cells", cells}};
  return r;
}

Report cmd_twodim(const Globals& g, int side) {
  Report r;
  r.command = "twodim";
  r.inputs = {{"side", side}, {"seed", g.seed}, {"max_nodes", g.max_nodes}};
  const TwoDimensionalResult res = two_dimensional_construction(side, search_options(g));
  bool matches = true;
  for (int i = 1; i <= side * side; ++i)
    if (res.result.per_user[i - 1] != (res.scheme.is_served(i) ? 1 : 0)) matches = false;
  r.seeds = {res.seed};
  r.nodes = res.nodes;
  r.consistent = matches && res.backhaul <= 1;
  r.outputs = {{"K", side * side},
               {"dof", dof_to_json(res.result)},
               {"backhaul", to_string(res.backhaul)},
               {"active_subnetworks", res.active_subnetworks},
               {"row_scheme", periodic_to_json(res.row_scheme)}};
  r.human = {{"K", std::to_string(side * side)},
             {"sum DoF", std::to_string(res.result.sum_dof)},
             {"fraction", to_string(res.result.fraction)},
             {"backhaul", to_string(res.backhaul)},
             {"active subnetworks", std::to_string(res.active_subnetworks)}};
  r.csv.push_back({side * side, "two_dimensional", "1/1", to_string(res.result.fraction), res.nodes});
  return r;
}

Report cmd_frontier(const std::vector<std::string>& specs, const std::string& budget_s) {
  Report r;
  r.command = "frontier";
  std::vector<FrontierPoint> points;
  for (const auto& s : specs) {
    const auto a = s.find(':');
    if (a == std::string::npos) throw std::invalid_argument("point must be fraction:backhaul[:name], got " + s);
    const auto b = s.find(':', a + 1);
    FrontierPoint p;
    p.dof_fraction = parse_rational(s.substr(0, a));
    p.backhaul = parse_rational(s.substr(a + 1, b == std::string::npos ? std::string::npos : b - a - 1));
    p.provenance = b == std::string::npos ? s.substr(0, b) : s.substr(b + 1);
    points.push_back(p);
  }
  const Rational budget = parse_rational(budget_s);
  const FrontierValue v = convex_frontier(points, budget);
  r.inputs = {{"points", specs}, {"budget", to_string(budget)}};
  r.outputs = {{"value", to_string(v.value)}, {"provenance", v.provenance}, {"weight", to_string(v.weight)}};
  std::string prov;
  for (const auto& p : v.provenance) prov += (prov.empty() ? "" : " + ") + p;
  r.human = {{"value", to_string(v.value)}, {"from", prov.empty() ? "nothing fits" : prov},
             {"weight of first", to_string(v.weight)}};
  return r;
}

void print(const Report& r, const Globals& g) {
  if (g.json) {
    Json j;
    j["command"] = r.command;
    j["inputs"] = r.inputs;
    j["outputs"] = r.outputs;
    j["seeds"] = r.seeds;
    j["resamples"] = r.resamples;
    j["nodes"] = r.nodes;
    j["consistent"] = r.consistent;
    std::cout << j.dump(2) << '\n';
    return;
  }
  std::size_t w = 0;
  for (const auto& [k, v] : r.human) w = std::max(w, k.size());
  std::cout << r.command << '\n';
  for (const auto& [k, v] : r.human) std::cout << "  " << std::left << std::setw(w) << k << "  " << v << '\n';
  for (const auto& line : r.table) std::cout << "  " << line << '\n';
  std::cout << "  consistent: " << yes_no(r.consistent) << '\n';
}

void append_csv(const Report& r, const std::string& path, double seconds) {
  const bool fresh = !std::filesystem::exists(path) || std::filesystem::file_size(path) == 0;
  std::ofstream out(path, std::ios::app);
  if (!out) throw std::runtime_error("cannot write " + path);
  if (fresh) out << "command,K,model,budget,fraction,nodes,wall_time_s\n";
  for (const auto& row : r.csv)
    out << r.command << ',' << row.K << ',' << row.model << ',' << row.budget << ',' << row.fraction << ','
        << row.nodes << ',' << std::fixed << std::setprecision(3) << seconds << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Zero-forcing schemes and DoF bounds for interference networks with flexible backhaul"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "Channel realization seed")->capture_default_str();
  app.add_option("--max-nodes", g.max_nodes, "Search budget in feasibility solves")->capture_default_str();
  app.add_option("--threads", g.threads, "Search worker threads (0: all cores)")->capture_default_str();
  app.add_flag("--json", g.json, "Print the machine-readable report");
  app.add_option("--csv", g.csv, "Append CSV rows to this file");

  int B = 1, blocks = 1;
  auto* th = app.add_subcommand("theorem1", "Canonical block scheme: design, verify and bound");
  th->add_option("--B", B)->required();
  th->add_option("--blocks", blocks)->capture_default_str();

  std::string topo_path, scheme_path;
  auto* vs = app.add_subcommand("verify-scheme", "Design beams (if absent) and verify a scheme file");
  vs->add_option("--topology", topo_path)->required();
  vs->add_option("--scheme", scheme_path)->required();

  std::string assign_path;
  int bound_B = 1;
  auto* bd = app.add_subcommand("bounds", "Upper-bound witness for an assignment on the linear model");
  bd->add_option("--assignment", assign_path)->required();
  bd->add_option("--B", bound_B)->required();

  SearchArgs sa;
  auto* se = app.add_subcommand("search", "Brute-force or periodic ZF search");
  se->add_option("--model", sa.model)->capture_default_str();
  se->add_option("--L", sa.L, "Neighbourhood size of the locally connected model");
  se->add_option("--K", sa.K);
  se->add_option("--budget", sa.budget, "Average backhaul per user, p/q")->capture_default_str();
  se->add_option("--period", sa.period);
  se->add_option("--target", sa.target, "Served fraction to reach, p/q");
  se->add_option("--max-set-size", sa.max_set_size);

  std::vector<int> t1_L;
  std::vector<int> t1_periods;
  auto* t1 = app.add_subcommand("table1", "Periodic searches for the locally connected model at load 1");
  auto* t1_L_opt = t1->add_option("--L", t1_L, "Neighbourhood sizes to sweep; default 2..6, may be empty")
                       ->expected(0, -1);
  t1->add_option("--period", t1_periods, "One period per L");

  int side = 12;
  auto* td = app.add_subcommand("twodim", "Row-pairing construction on the two-dimensional model");
  td->add_option("--side", side)->capture_default_str();

  std::vector<std::string> points;
  std::string budget = "1";
  auto* fr = app.add_subcommand("frontier", "Time sharing between (fraction, backhaul) points");
  fr->add_option("--point", points, "fraction:backhaul[:name]")->required();
  fr->add_option("--budget", budget)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const auto start = std::chrono::steady_clock::now();
    Report r;
    if (*th) r = cmd_theorem1(g, B, blocks);
    else if (*vs) r = cmd_verify(g, topo_path, scheme_path);
    else if (*bd) r = cmd_bounds(g, assign_path, bound_B);
    else if (*se) r = cmd_search(g, sa);
    else if (*t1) {
      const auto& given = t1_L_opt->results();
      if (t1_L_opt->count() == 0)
        t1_L = {2, 3, 4, 5, 6};
      else if (std::all_of(given.begin(), given.end(), [](const std::string& v) { return v.empty(); }))
        t1_L.clear();  // a bare --L asks for an empty sweep
      r = cmd_table1(g, t1_L, t1_periods);
    }
    else if (*td) r = cmd_twodim(g, side);
    else r = cmd_frontier(points, budget);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    print(r, g);
    if (!g.csv.empty()) append_csv(r, g.csv, seconds);
    return r.consistent ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
