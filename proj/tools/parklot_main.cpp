#include <cstdlib>
#include <fstream>
#include <future>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "parklot/analysis.hpp"
#include "parklot/assignment.hpp"
#include "parklot/json_io.hpp"
#include "parklot/routing.hpp"
#include "parklot/sim.hpp"

namespace {

using namespace parklot;

// Exit codes: 0 fine, 1 bad input or unsatisfiable request, 2 broken
// internal invariant (validation failure, physics violation, logic error).
constexpr int kOk = 0;
constexpr int kBadInput = 1;
constexpr int kInvariant = 2;

std::string default_out_dir() {
  const char* env = std::getenv("PARKLOT_OUT_DIR");
  return env && *env ? env : ".";
}

std::string join_dir(const std::string& dir, const std::string& name) {
  if (dir.empty() || dir == ".") return name;
  return dir.back() == '/' ? dir + name : dir + "/" + name;
}

// Shared assignment-source flags: either --input FILE or scheme parameters.
struct BuildArgs {
  std::string input;
  std::string scheme;
  int n = 0;
  int t = 0;
  int m = 0;
  std::string padding = "strict";

  void attach(CLI::App* cmd) {
    cmd->add_option("--input", input, "read the assignment from a JSON file");
    cmd->add_option("--scheme", scheme, "hint, log2, ring or grid");
    cmd->add_option("--n", n, "node count (hint, ring, grid)");
    cmd->add_option("--t", t, "transceivers per node (hint; default 2)");
    cmd->add_option("--m", m, "group base (log2)");
    cmd->add_option("--padding", padding, "strict or virtual (hint)")
        ->check(CLI::IsMember({"strict", "virtual"}));
  }

  Assignment build() const {
    if (!input.empty()) {
      if (!scheme.empty())
        throw InvalidSpec("give either --input or --scheme, not both");
      std::ifstream in(input);
      if (!in) throw InvalidSpec("cannot open " + input);
      return assignment_from_json(nlohmann::json::parse(in));
    }
    if (scheme.empty()) throw InvalidSpec("one of --input or --scheme needed");
    auto s = scheme_from_string(scheme);
    if (!s) throw InvalidSpec("unknown scheme '" + scheme + "'");
    auto pad = padding_from_string(padding);
    switch (*s) {
      case Scheme::kHint:
        if (n <= 0) throw InvalidSpec("hint needs --n");
        return build_hint(n, t > 0 ? t : 2, *pad);
      case Scheme::kLog2:
        if (m <= 0) throw InvalidSpec("log2 needs --m");
        return build_log2(m);
      case Scheme::kRing:
        if (n <= 0) throw InvalidSpec("ring needs --n");
        return build_ring(n);
      case Scheme::kGrid:
        if (n <= 0) throw InvalidSpec("grid needs --n");
        return build_grid(n);
    }
    throw InvalidSpec("unknown scheme");
  }
};

RouterKind pick_router(const std::string& flag, const Assignment& a) {
  if (flag.empty()) return default_router(a.spec().scheme);
  auto r = router_from_string(flag);
  if (!r) throw InvalidSpec("unknown router '" + flag + "'");
  return *r;
}

void print_group_table(std::ostream& out, const Assignment& a) {
  const NetworkSpec& s = a.spec();
  out << "scheme " << to_string(s.scheme) << "  n " << s.n_nodes << "  t "
      << s.n_transceivers << "  channels " << a.total_channels() << "\n";
  int cur_tx = 0;
  for (const Group& g : a.groups()) {
    if (g.tx_index != cur_tx) {
      cur_tx = g.tx_index;
      out << "Tx-" << cur_tx << " groups:\n";
    }
    out << std::setw(5) << g.number << " (ch " << std::setw(4) << g.channel
        << "):";
    for (int member : g.members) out << ' ' << member;
    out << "\n";
  }
}

std::string assignment_file_name(const NetworkSpec& s) {
  std::ostringstream name;
  name << "assignment-" << to_string(s.scheme) << "-n" << s.n_nodes << "-t"
       << s.n_transceivers << ".json";
  return name.str();
}

int cmd_assign(const BuildArgs& args, const std::string& out,
               bool json_stdout) {
  Assignment a = args.build();
  if (json_stdout)
    std::cout << assignment_to_json(a).dump(2) << "\n";
  else
    print_group_table(std::cout, a);
  std::string path = out.empty()
                         ? join_dir(default_out_dir(),
                                    assignment_file_name(a.spec()))
                         : out;
  atomic_write_file(path, assignment_to_json(a).dump(2) + "\n");
  std::cerr << "wrote " << path << "\n";
  return kOk;
}

int cmd_route(const BuildArgs& args, int from, int to,
              const std::string& router_flag) {
  Assignment a = args.build();
  if (from < 1 || from > a.n_nodes() || to < 1 || to > a.n_nodes())
    throw InvalidSpec("--from/--to must be in 1.." +
                      std::to_string(a.n_nodes()));
  RouterKind router = pick_router(router_flag, a);
  Route r{from, to, {}};
  if (from != to) {
    switch (router) {
      case RouterKind::kHint:
        r = route_hint(a, from, to);
        break;
      case RouterKind::kLog2:
        r = route_log2(a, from, to);
        break;
      case RouterKind::kBfs: {
        EffectiveTopology topo = effective_topology(a);
        r = route_bfs(topo, from, to);
        break;
      }
    }
  }
  std::cout << from;
  for (const Hop& h : r.hops) std::cout << '-' << h.to;
  std::cout << "\n";
  int i = 0;
  for (const Hop& h : r.hops)
    std::cout << "  hop " << ++i << ": " << h.from << " -> " << h.to
              << "  channel " << h.channel << "  tx " << h.tx << "\n";
  return kOk;
}

int cmd_validate(const BuildArgs& args) {
  Assignment a = args.build();
  ValidationReport rep = validate(a);
  if (rep.ok()) {
    std::cout << "ok\n";
    return kOk;
  }
  for (const ValidationIssue& issue : rep.issues)
    std::cout << issue.invariant << ": " << issue.detail << "\n";
  return kInvariant;
}

AnalyzeRow analyze_one(const Assignment& a) {
  AnalyzeRow row;
  row.scheme = a.spec().scheme;
  row.router = default_router(row.scheme);
  row.report = efficiency_report(a, row.router);
  return row;
}

int cmd_analyze(const BuildArgs& args, const std::string& manifest_path,
                const std::string& out) {
  std::vector<AnalyzeRow> rows;
  int failures = 0;
  if (!manifest_path.empty()) {
    std::ifstream in(manifest_path);
    if (!in) throw InvalidSpec("cannot open " + manifest_path);
    ExperimentManifest man = manifest_from_json(nlohmann::json::parse(in));
    for (std::size_t i = 0; i < man.entries.size(); ++i) {
      try {
        rows.push_back(analyze_one(build_from_entry(man.entries[i])));
      } catch (const std::exception& e) {
        ++failures;
        std::cerr << "entry " << i + 1 << ": " << e.what() << "\n";
      }
    }
  } else {
    rows.push_back(analyze_one(args.build()));
  }
  std::string csv = analyze_csv(rows);
  if (out.empty()) {
    std::cout << csv;
  } else {
    atomic_write_file(out, csv);
    std::cerr << "wrote " << out << "\n";
  }
  return failures ? kBadInput : kOk;
}

int cmd_simulate(const BuildArgs& args, const std::string& lambda,
                 std::int64_t slots, std::int64_t warmup, std::uint64_t seed,
                 const std::string& scheduler, std::int64_t capacity,
                 const std::string& router_flag, const std::string& out) {
  Assignment a = args.build();
  SimConfig cfg;
  cfg.lambda = Rational::parse(lambda);
  cfg.horizon = slots;
  cfg.warmup = warmup;
  cfg.seed = seed;
  auto sk = scheduler_from_string(scheduler);
  if (!sk) throw InvalidSpec("unknown scheduler '" + scheduler + "'");
  cfg.scheduler = *sk;
  cfg.queue_capacity = capacity;
  RouterKind router = pick_router(router_flag, a);
  SimResult r = run(a, router, cfg);
  std::string doc = sim_result_to_json(a.spec(), router, r).dump(2) + "\n";
  if (out.empty()) {
    std::cout << doc;
  } else {
    atomic_write_file(out, doc);
    std::cerr << "wrote " << out << "\n";
  }
  return kOk;
}

struct SweepOutcome {
  std::vector<SweepRow> rows;       // one per seed
  std::vector<char> tradeoff_ok;   // one per probe simulation
  std::string error;               // non-empty: entry failed
};

SweepOutcome run_sweep_entry(const ManifestEntry& e) {
  SweepOutcome outcome;
  try {
    Assignment a = build_from_entry(e);
    RouterKind router = default_router(e.scheme);
    Rational lo, hi;
    if (!e.lambda_grid.empty()) {
      if (e.lambda_grid.size() < 2)
        throw InvalidSpec("lambda_grid needs at least two rates");
      lo = e.lambda_grid.front();
      hi = e.lambda_grid.back();
    } else {
      AnalyticRate rate = analytic_rate(a);
      lo = rate.per_node_rate / Rational(8);
      hi = rate.per_node_rate * Rational(2);
    }
    Rational l_bar = avg_path_length(a, router);
    for (std::uint64_t seed : e.seeds) {
      SimConfig base;
      base.horizon = e.horizon;
      base.warmup = e.warmup;
      base.seed = seed;
      base.scheduler = e.scheduler;
      std::vector<SimResult> trace;
      Rational sat =
          saturation_search(a, router, base, lo, hi, e.tolerance, &trace);
      for (const SimResult& r : trace)
        outcome.tradeoff_ok.push_back(r.tradeoff_ok ? 1 : 0);
      SweepRow row;
      row.scheme = e.scheme;
      row.n_nodes = a.n_nodes();
      row.n_transceivers = a.n_transceivers();
      row.channels = a.total_channels();
      row.lambda_sat = sat;
      row.l_bar = l_bar;
      row.efficiency = efficiency(a.n_nodes(), sat, a.total_channels());
      row.seed = seed;
      row.horizon = e.horizon;
      row.warmup = e.warmup;
      row.scheduler = e.scheduler;
      row.tolerance = e.tolerance;
      outcome.rows.push_back(row);
    }
  } catch (const std::exception& ex) {
    outcome.error = ex.what();
  }
  return outcome;
}

int cmd_sweep(const std::string& manifest_path, const std::string& out,
              bool serial) {
  std::ifstream in(manifest_path);
  if (!in) throw InvalidSpec("cannot open " + manifest_path);
  ExperimentManifest man = manifest_from_json(nlohmann::json::parse(in));

  // Entries are independent; results are merged in manifest order, so the
  // output does not depend on scheduling.
  std::vector<SweepOutcome> outcomes(man.entries.size());
  if (serial) {
    for (std::size_t i = 0; i < man.entries.size(); ++i)
      outcomes[i] = run_sweep_entry(man.entries[i]);
  } else {
    std::vector<std::future<SweepOutcome>> futures;
    futures.reserve(man.entries.size());
    for (const ManifestEntry& e : man.entries)
      futures.push_back(
          std::async(std::launch::async, [&e] { return run_sweep_entry(e); }));
    for (std::size_t i = 0; i < futures.size(); ++i)
      outcomes[i] = futures[i].get();
  }

  std::vector<SweepRow> rows;
  int failures = 0;
  long long sims = 0, violations = 0;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    if (!outcomes[i].error.empty()) {
      ++failures;
      std::cerr << "entry " << i + 1 << ": " << outcomes[i].error << "\n";
      continue;
    }
    for (char ok : outcomes[i].tradeoff_ok) {
      ++sims;
      if (!ok) ++violations;
    }
    rows.insert(rows.end(), outcomes[i].rows.begin(), outcomes[i].rows.end());
  }

  std::string dir = !man.out_dir.empty() ? man.out_dir : default_out_dir();
  std::string path = out.empty() ? join_dir(dir, "sweep.csv") : out;
  atomic_write_file(path, sweep_csv(rows));
  std::cerr << "wrote " << path << " (" << rows.size() << " rows, " << sims
            << " simulations)\n";
  if (violations) {
    std::cerr << violations << " simulation(s) violated the capacity "
              << "tradeoff; the model is broken\n";
    return kInvariant;
  }
  return failures ? kBadInput : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"static channel assignment toolkit"};
  app.require_subcommand(1);

  BuildArgs assign_args;
  std::string assign_out;
  bool assign_json = false;
  CLI::App* assign = app.add_subcommand("assign", "build an assignment");
  assign_args.attach(assign);
  assign->add_option("--out", assign_out, "JSON output path");
  assign->add_flag("--json", assign_json, "print JSON instead of the table");

  BuildArgs route_args;
  int from = 0, to = 0;
  std::string route_router;
  CLI::App* route = app.add_subcommand("route", "print a route");
  route_args.attach(route);
  route->add_option("--from", from, "source node")->required();
  route->add_option("--to", to, "destination node")->required();
  route->add_option("--router", route_router, "hint, log2 or bfs");

  BuildArgs analyze_args;
  std::string analyze_manifest, analyze_out;
  CLI::App* analyze =
      app.add_subcommand("analyze", "emit analytic rate/efficiency CSV");
  analyze_args.attach(analyze);
  analyze->add_option("--manifest", analyze_manifest, "experiment JSON file");
  analyze->add_option("--out", analyze_out, "CSV output path");

  BuildArgs sim_args;
  std::string sim_lambda, sim_scheduler = "strict-tdma", sim_router, sim_out;
  std::int64_t sim_slots = 200000, sim_warmup = 20000, sim_capacity = 0;
  std::uint64_t sim_seed = 1;
  CLI::App* simulate = app.add_subcommand("simulate", "run one simulation");
  sim_args.attach(simulate);
  simulate->add_option("--lambda", sim_lambda, "per-node rate, e.g. 1/4")
      ->required();
  simulate->add_option("--slots", sim_slots, "horizon in slots");
  simulate->add_option("--warmup", sim_warmup, "slots excluded from stats");
  simulate->add_option("--seed", sim_seed, "RNG seed");
  simulate
      ->add_option("--scheduler", sim_scheduler,
                   "strict-tdma or work-conserving-rr")
      ->check(CLI::IsMember({"strict-tdma", "work-conserving-rr"}));
  simulate->add_option("--capacity", sim_capacity,
                       "per-queue packet cap, 0 = unbounded");
  simulate->add_option("--router", sim_router, "hint, log2 or bfs");
  simulate->add_option("--out", sim_out, "JSON output path");

  std::string sweep_manifest, sweep_out;
  bool sweep_serial = false;
  CLI::App* sweep =
      app.add_subcommand("sweep", "saturation search per manifest entry");
  sweep->add_option("--manifest", sweep_manifest, "experiment JSON file")
      ->required();
  sweep->add_option("--out", sweep_out, "CSV output path");
  sweep->add_flag("--serial", sweep_serial, "disable concurrent entries");

  BuildArgs validate_args;
  CLI::App* validate_cmd =
      app.add_subcommand("validate", "check assignment invariants");
  validate_args.attach(validate_cmd);

  try {
    app.parse(argc, argv);
    if (*assign) return cmd_assign(assign_args, assign_out, assign_json);
    if (*route) return cmd_route(route_args, from, to, route_router);
    if (*analyze) return cmd_analyze(analyze_args, analyze_manifest,
                                     analyze_out);
    if (*simulate)
      return cmd_simulate(sim_args, sim_lambda, sim_slots, sim_warmup,
                          sim_seed, sim_scheduler, sim_capacity, sim_router,
                          sim_out);
    if (*sweep) return cmd_sweep(sweep_manifest, sweep_out, sweep_serial);
    if (*validate_cmd) return cmd_validate(validate_args);
    return kBadInput;
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kBadInput;
  } catch (const UnreachableError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const NoStablePoint& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInvariant;
  }
}
