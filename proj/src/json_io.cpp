#include "parklot/json_io.hpp"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <system_error>

namespace parklot {

namespace {

using Json = nlohmann::json;

[[noreturn]] void bad_doc(const std::string& what) {
  throw InvalidSpec("bad document: " + what);
}

const Json& require(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) bad_doc(std::string("missing field '") + key + "'");
  return *it;
}

void check_format(const Json& j) {
  const Json& f = require(j, "format");
  if (!f.is_string() || f.get<std::string>() != kFormatVersion)
    bad_doc(std::string("expected format '") + kFormatVersion + "'");
}

Rational rational_from_json(const Json& j, const char* key) {
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  bad_doc(std::string("field '") + key +
          "' must be an integer or a string like \"1/4\"");
}

int int_field(const Json& j, const char* key) {
  const Json& v = require(j, key);
  if (!v.is_number_integer()) bad_doc(std::string(key) + " must be an integer");
  return v.get<int>();
}

}  // namespace

std::string fmt_double(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, p);
}

OrderedJson spec_to_json(const NetworkSpec& s) {
  OrderedJson j;
  j["scheme"] = to_string(s.scheme);
  j["n_nodes"] = s.n_nodes;
  j["n_transceivers"] = s.n_transceivers;
  j["group_base"] = s.group_base;
  j["padding"] = to_string(s.padding);
  return j;
}

NetworkSpec spec_from_json(const Json& j) {
  NetworkSpec s;
  const Json& sch = require(j, "scheme");
  if (!sch.is_string()) bad_doc("scheme must be a string");
  auto scheme = scheme_from_string(sch.get<std::string>());
  if (!scheme) bad_doc("unknown scheme '" + sch.get<std::string>() + "'");
  s.scheme = *scheme;
  s.n_nodes = int_field(j, "n_nodes");
  s.n_transceivers = int_field(j, "n_transceivers");
  s.group_base = int_field(j, "group_base");
  const Json& pad = require(j, "padding");
  if (!pad.is_string()) bad_doc("padding must be a string");
  auto padding = padding_from_string(pad.get<std::string>());
  if (!padding) bad_doc("unknown padding '" + pad.get<std::string>() + "'");
  s.padding = *padding;
  return s;
}

OrderedJson assignment_to_json(const Assignment& a) {
  OrderedJson j;
  j["format"] = kFormatVersion;
  j["spec"] = spec_to_json(a.spec());
  OrderedJson groups = OrderedJson::array();
  for (const Group& g : a.groups()) {
    OrderedJson gj;
    gj["channel"] = g.channel;
    gj["tx_index"] = g.tx_index;
    gj["number"] = g.number;
    gj["members"] = g.members;
    groups.push_back(std::move(gj));
  }
  j["groups"] = std::move(groups);
  return j;
}

Assignment assignment_from_json(const Json& j) {
  check_format(j);
  NetworkSpec spec = spec_from_json(require(j, "spec"));
  const Json& groups = require(j, "groups");
  if (!groups.is_array()) bad_doc("groups must be an array");
  std::vector<Group> gs;
  gs.reserve(groups.size());
  for (const Json& gj : groups) {
    Group g;
    g.channel = int_field(gj, "channel");
    g.tx_index = int_field(gj, "tx_index");
    g.number = int_field(gj, "number");
    const Json& members = require(gj, "members");
    if (!members.is_array()) bad_doc("members must be an array");
    for (const Json& m : members) {
      if (!m.is_number_integer()) bad_doc("members must be integers");
      g.members.push_back(m.get<int>());
    }
    gs.push_back(std::move(g));
  }
  return Assignment(spec, std::move(gs));
}

OrderedJson sim_result_to_json(const NetworkSpec& net, RouterKind router,
                               const SimResult& r) {
  OrderedJson j;
  j["format"] = kFormatVersion;
  j["kind"] = "simulation";
  j["network"] = spec_to_json(net);
  j["router"] = to_string(router);
  OrderedJson cfg;
  cfg["lambda"] = r.lambda.str();
  cfg["horizon"] = r.horizon;
  cfg["warmup"] = r.warmup;
  cfg["seed"] = r.seed;
  cfg["scheduler"] = to_string(r.scheduler);
  cfg["queue_capacity"] = r.queue_capacity;
  j["config"] = std::move(cfg);
  j["channels"] = r.channels;
  OrderedJson totals;
  totals["generated"] = r.generated;
  totals["delivered"] = r.delivered;
  totals["dropped"] = r.dropped;
  totals["in_flight"] = r.in_flight;
  j["totals"] = std::move(totals);
  OrderedJson win;
  win["slots"] = r.window_slots;
  win["generated"] = r.window_generated;
  win["delivered"] = r.window_delivered;
  win["hop_sum"] = r.window_hop_sum;
  win["delivered_rate_per_node"] = r.delivered_rate_per_node;
  win["empirical_avg_hops"] = r.empirical_avg_hops;
  win["delivered_by_source"] = r.delivered_by_source;
  j["window"] = std::move(win);
  j["max_queue_len"] = r.max_queue_len;
  j["backlog_mean_thirds"] = OrderedJson::array({r.backlog_mean_thirds[0],
                                                 r.backlog_mean_thirds[1],
                                                 r.backlog_mean_thirds[2]});
  j["stable"] = r.stable;
  j["tradeoff_ok"] = r.tradeoff_ok;
  return j;
}

ExperimentManifest manifest_from_json(const Json& j) {
  check_format(j);
  ExperimentManifest man;
  if (auto it = j.find("out_dir"); it != j.end()) {
    if (!it->is_string()) bad_doc("out_dir must be a string");
    man.out_dir = it->get<std::string>();
  }
  const Json& entries = require(j, "entries");
  if (!entries.is_array()) bad_doc("entries must be an array");
  for (const Json& ej : entries) {
    ManifestEntry e;
    const Json& sch = require(ej, "scheme");
    if (!sch.is_string()) bad_doc("scheme must be a string");
    auto scheme = scheme_from_string(sch.get<std::string>());
    if (!scheme) bad_doc("unknown scheme '" + sch.get<std::string>() + "'");
    e.scheme = *scheme;
    switch (e.scheme) {
      case Scheme::kHint:
        e.n_nodes = int_field(ej, "n");
        e.t = ej.contains("t") ? int_field(ej, "t") : 2;
        break;
      case Scheme::kLog2:
        e.m = int_field(ej, "m");
        e.t = 2;
        break;
      case Scheme::kRing:
      case Scheme::kGrid:
        e.n_nodes = int_field(ej, "n");
        e.t = 4;
        break;
    }
    if (auto it = ej.find("padding"); it != ej.end()) {
      if (!it->is_string()) bad_doc("padding must be a string");
      auto padding = padding_from_string(it->get<std::string>());
      if (!padding) bad_doc("unknown padding '" + it->get<std::string>() + "'");
      e.padding = *padding;
    }
    if (auto it = ej.find("lambda_grid"); it != ej.end()) {
      if (!it->is_array()) bad_doc("lambda_grid must be an array");
      for (const Json& v : *it)
        e.lambda_grid.push_back(rational_from_json(v, "lambda_grid"));
    }
    if (auto it = ej.find("seeds"); it != ej.end()) {
      if (!it->is_array() || it->empty())
        bad_doc("seeds must be a non-empty array");
      e.seeds.clear();
      for (const Json& v : *it) {
        if (!v.is_number_unsigned() && !v.is_number_integer())
          bad_doc("seeds must be integers");
        e.seeds.push_back(v.get<std::uint64_t>());
      }
    }
    if (auto it = ej.find("scheduler"); it != ej.end()) {
      if (!it->is_string()) bad_doc("scheduler must be a string");
      auto sk = scheduler_from_string(it->get<std::string>());
      if (!sk) bad_doc("unknown scheduler '" + it->get<std::string>() + "'");
      e.scheduler = *sk;
    }
    if (ej.contains("horizon")) e.horizon = int_field(ej, "horizon");
    if (ej.contains("warmup")) e.warmup = int_field(ej, "warmup");
    if (auto it = ej.find("tolerance"); it != ej.end())
      e.tolerance = rational_from_json(*it, "tolerance");
    man.entries.push_back(std::move(e));
  }
  return man;
}

Assignment build_from_entry(const ManifestEntry& e) {
  switch (e.scheme) {
    case Scheme::kHint:
      return build_hint(e.n_nodes, e.t, e.padding);
    case Scheme::kLog2:
      return build_log2(e.m);
    case Scheme::kRing:
      return build_ring(e.n_nodes);
    case Scheme::kGrid:
      return build_grid(e.n_nodes);
  }
  throw InvalidSpec("unknown scheme");
}

std::string analyze_csv(const std::vector<AnalyzeRow>& rows) {
  std::ostringstream out;
  out << "# format: " << kFormatVersion << "\n";
  out << "# kind: analyze\n";
  out << "scheme,router,n,t,channels,lambda_analytic,lambda_analytic_float,"
         "l_bar,l_bar_float,efficiency,efficiency_float,rate_is_upper_bound\n";
  for (const AnalyzeRow& row : rows) {
    const EfficiencyReport& r = row.report;
    out << to_string(row.scheme) << ',' << to_string(row.router) << ','
        << r.n_nodes << ',' << r.n_transceivers << ',' << r.channels << ','
        << r.per_node_rate.str() << ','
        << fmt_double(r.per_node_rate.to_double()) << ',' << r.avg_hops.str()
        << ',' << fmt_double(r.avg_hops.to_double()) << ',' << r.eta.str()
        << ',' << fmt_double(r.eta.to_double()) << ','
        << (r.rate_is_upper_bound ? 1 : 0) << '\n';
  }
  return out.str();
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << "# format: " << kFormatVersion << "\n";
  out << "# kind: sweep\n";
  out << "scheme,n,t,channels,lambda_sat,lambda_sat_float,l_bar,l_bar_float,"
         "efficiency,efficiency_float,seed,horizon,warmup,scheduler,"
         "tolerance\n";
  for (const SweepRow& r : rows) {
    out << to_string(r.scheme) << ',' << r.n_nodes << ',' << r.n_transceivers
        << ',' << r.channels << ',' << r.lambda_sat.str() << ','
        << fmt_double(r.lambda_sat.to_double()) << ',' << r.l_bar.str() << ','
        << fmt_double(r.l_bar.to_double()) << ',' << r.efficiency.str() << ','
        << fmt_double(r.efficiency.to_double()) << ',' << r.seed << ','
        << r.horizon << ',' << r.warmup << ',' << to_string(r.scheduler)
        << ',' << r.tolerance.str() << '\n';
  }
  return out.str();
}

void atomic_write_file(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  fs::path target(path);
  if (target.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(target.parent_path(), ec);
    if (ec)
      throw InvalidSpec("cannot create directory " +
                        target.parent_path().string() + ": " + ec.message());
  }
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InvalidSpec("cannot open " + tmp.string() + " for write");
    out.write(content.data(),
              static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw InvalidSpec("short write to " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw InvalidSpec("cannot move " + tmp.string() + " into place: " +
                      ec.message());
  }
}

}  // namespace parklot
