#include "parklot/analysis.hpp"

#include <algorithm>

namespace parklot {

namespace {

int log2_exact(int m) {
  int l = 0;
  while ((1 << l) < m) ++l;
  return l;
}

void require_hint_params(int m, int t) {
  if (m < 2 || t < 2) throw InvalidSpec("hint forms require m >= 2, t >= 2");
}

void require_log2_base(int m) {
  if (m < 2 || (m & (m - 1)) != 0)
    throw InvalidSpec("log2 forms require a power-of-two base >= 2");
}

}  // namespace

Rational hint2_transceiver_load(const Rational& lambda, int m) {
  require_hint_params(m, 2);
  const std::int64_t n = static_cast<std::int64_t>(m) * m;
  return lambda * Rational(static_cast<std::int64_t>(m) * (m - 1), n - 1);
}

Rational hint2_lambda_max(int m) {
  require_hint_params(m, 2);
  // Load reaches the 1/m share exactly at (N-1)/(m^2 (m-1)) = 1/m + 1/m^2.
  const std::int64_t n = static_cast<std::int64_t>(m) * m;
  return Rational(n - 1, n * (m - 1));
}

Rational hintT_transceiver_load(const Rational& lambda, int m, int t, int k) {
  require_hint_params(m, t);
  if (k < 1 || k > t) throw InvalidSpec("transceiver index out of range");
  const std::int64_t mt = ipow_checked(m, t);
  const std::int64_t mt1 = ipow_checked(m, t - 1);
  // m^(t-k) sources each spread over (m-1)*m^(k-1) of the far destinations:
  // the product is independent of k.
  return lambda * Rational((m - 1) * mt1, mt - 1);
}

std::int64_t hintT_source_count(int m, int t, int k) {
  require_hint_params(m, t);
  if (k < 1 || k > t) throw InvalidSpec("transceiver index out of range");
  return ipow_checked(m, t - k);
}

Rational hintT_lambda_max(int m, int t) {
  require_hint_params(m, t);
  const std::int64_t mt = ipow_checked(m, t);
  return Rational(mt - 1, mt * (m - 1));
}

Rational log2_group_load_bound(const Rational& lambda, int m) {
  require_log2_base(m);
  const std::int64_t l = log2_exact(m);
  const std::int64_t n = static_cast<std::int64_t>(m) * l;
  return lambda * Rational(m * (l + 1) * l * l, n - 1);
}

std::int64_t log2_delta1_bound(int m) {
  require_log2_base(m);
  return static_cast<std::int64_t>(m) * (log2_exact(m) + 1);
}

std::int64_t log2_delta1_brute(const Assignment& a) {
  if (a.spec().scheme != Scheme::kLog2)
    throw InvalidSpec("delta1 is defined for log2 assignments");
  const int m = a.spec().group_base;
  const int l = log2_exact(m);

  std::int64_t delta = 0;
  for (int j = 1; j <= m; ++j) {
    int worst = 0;
    for (int si = 1; si <= l; ++si) {
      const int s = si;  // members of Tx-1 group 1 are nodes 1..l
      for (int di = 1; di <= l; ++di) {
        const int d = (j - 1) * l + di;
        if (d == s) continue;
        int tx1_hops = 0;
        try {
          for (const Hop& h : route_log2(a, s, d).hops)
            if (h.tx == 1) ++tx1_hops;
        } catch (const UnreachableError&) {
          continue;  // base 2 only: no pair is routable
        }
        worst = std::max(worst, tx1_hops);
      }
    }
    delta += worst;
  }
  return delta;
}

AnalyticRate analytic_rate(const Assignment& a) {
  const NetworkSpec& spec = a.spec();
  AnalyticRate out;
  out.channels = channels_used(a);
  switch (spec.scheme) {
    case Scheme::kHint:
      if (spec.padding != PaddingMode::kStrict)
        throw InvalidSpec("analytic rate is defined for exact constructions");
      out.per_node_rate = Rational(1, spec.group_base);
      break;
    case Scheme::kLog2: {
      const int l = log2_exact(spec.group_base);
      out.per_node_rate = Rational(1, static_cast<std::int64_t>(l) * l);
      break;
    }
    case Scheme::kRing:
    case Scheme::kGrid: {
      const Rational l_bar = avg_path_length(a, RouterKind::kBfs);
      out.per_node_rate =
          Rational(out.channels) / (Rational(a.n_nodes()) * l_bar);
      out.upper_bound = true;
      break;
    }
  }
  return out;
}

std::int64_t channels_used(const Assignment& a) { return a.total_channels(); }

Rational efficiency(std::int64_t n_nodes, const Rational& lambda,
                    std::int64_t channels) {
  if (channels <= 0) throw InvalidSpec("channel count must be positive");
  return Rational(n_nodes) * lambda / Rational(channels);
}

bool tradeoff_check(std::int64_t n_nodes, const Rational& lambda,
                    const Rational& avg_hops, std::int64_t channels) {
  return Rational(n_nodes) * lambda * avg_hops <= Rational(channels);
}

LoadReport offered_load_report(const Assignment& a, RouterKind kind,
                               const Rational& lambda) {
  const int n = a.n_nodes();
  const int t = a.n_transceivers();
  LoadReport report;
  report.lambda = lambda;
  report.node_tx_load.assign(static_cast<std::size_t>(n),
                             std::vector<Rational>(static_cast<std::size_t>(t)));
  report.channel_load.assign(static_cast<std::size_t>(a.total_channels()),
                             Rational(0));
  report.capacity_share.assign(
      static_cast<std::size_t>(n),
      std::vector<Rational>(static_cast<std::size_t>(t)));

  RouteTable table(a, kind);
  report.unroutable_pairs = table.unroutable_pairs();
  const Rational per_pair = lambda / Rational(n - 1);
  for (int s = 1; s <= n; ++s) {
    for (int d = 1; d <= n; ++d) {
      if (s == d || !table.is_routable(s, d)) continue;
      for (const Hop& h : table.at(s, d).hops) {
        report.node_tx_load[static_cast<std::size_t>(h.from - 1)]
                           [static_cast<std::size_t>(h.tx - 1)] += per_pair;
        report.channel_load[static_cast<std::size_t>(h.channel - 1)] +=
            per_pair;
      }
    }
  }

  // Capacity share of each (node, transceiver): the slot fraction the
  // scheme's schedule hands it on its group's channel.
  const Scheme scheme = a.spec().scheme;
  for (int node = 1; node <= n; ++node) {
    for (int tx = 1; tx <= t; ++tx) {
      const Group& g = a.group_of(node, tx);
      Rational share;
      if (scheme == Scheme::kLog2 && g.tx_index == 2)
        // Tx-2 channels belong entirely to the group's first member.
        share = (g.members.front() == node) ? Rational(1) : Rational(0);
      else
        share = Rational(1, static_cast<std::int64_t>(g.members.size()));
      report.capacity_share[static_cast<std::size_t>(node - 1)]
                           [static_cast<std::size_t>(tx - 1)] = share;
    }
  }

  report.per_transceiver_feasible = true;
  for (int node = 1; node <= n; ++node)
    for (int tx = 1; tx <= t; ++tx)
      if (report.node_tx_load[static_cast<std::size_t>(node - 1)]
                             [static_cast<std::size_t>(tx - 1)] >
          report.capacity_share[static_cast<std::size_t>(node - 1)]
                               [static_cast<std::size_t>(tx - 1)])
        report.per_transceiver_feasible = false;

  report.per_channel_feasible = true;
  for (const Rational& load : report.channel_load)
    if (load > Rational(1)) report.per_channel_feasible = false;

  return report;
}

EfficiencyReport efficiency_report(const Assignment& a, RouterKind kind) {
  EfficiencyReport row;
  row.n_nodes = a.n_nodes();
  row.n_transceivers = a.n_transceivers();
  row.channels = channels_used(a);
  AnalyticRate rate = analytic_rate(a);
  row.per_node_rate = rate.per_node_rate;
  row.rate_is_upper_bound = rate.upper_bound;
  row.avg_hops = avg_path_length(a, kind);
  row.eta = efficiency(row.n_nodes, row.per_node_rate, row.channels);
  return row;
}

}  // namespace parklot
