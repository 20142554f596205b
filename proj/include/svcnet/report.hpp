#pragma once

#include <cmath>
#include <cstdio>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "svcnet/community.hpp"
#include "svcnet/degree_fit.hpp"
#include "svcnet/error.hpp"
#include "svcnet/metrics.hpp"
#include "svcnet/network.hpp"
#include "svcnet/ontology.hpp"
#include "svcnet/rng.hpp"
#include "svcnet/service_model.hpp"

namespace svcnet {

struct AnalyzeOptions {
  bool all_levels = false;        // build all four operation networks
  MatchLevel level = MatchLevel::Exact;
  Invocation invocation = Invocation::Full;
  bool allow_vacuous = false;
  unsigned er_samples = 32;
  unsigned bootstrap_n = 100;
  std::size_t fit_xmin = 1;
  std::uint64_t seed = 1;
  unsigned walk_length = 4;
  unsigned threads = 1;
};

struct DecompositionSummary {
  std::size_t n_nodes = 0;
  std::size_t n_isolated = 0;
  std::size_t n_small_components = 0;
  std::size_t small_nodes = 0;
  std::size_t giant_nodes = 0;
  double frac_isolated = 0.0, frac_small = 0.0, frac_giant = 0.0;
};

struct GiantSummary {
  std::size_t nodes = 0;
  std::size_t links = 0;
  double link_proportion = 0.0;  // of the network without isolated nodes
  double density = 0.0;
};

struct CommunitySummary {
  std::size_t count = 0;
  double modularity = 0.0;
  double top3_share = 0.0;
  std::vector<std::size_t> sizes;
};

struct NetworkAnalysis {
  std::string name;  // "exact", "plugin", "subsume", "fitin", "parameter"
  NetworkKind kind = NetworkKind::Operation;
  MatchLevel level = MatchLevel::Exact;
  Invocation invocation = Invocation::Full;
  std::size_t n_nodes = 0, n_edges = 0;
  DecompositionSummary decomposition;
  std::optional<GiantSummary> giant;
  std::optional<TopologyReport> topology;         // giant component
  std::optional<CommunitySummary> communities;    // giant component
  std::optional<PowerLawFit> power_law;           // giant, total degree
  std::optional<ExponentialFit> exponential;
  std::vector<std::pair<std::size_t, double>> cumulative_degrees;  // giant, total
  std::vector<std::string> isolated_labels;
};

struct IsolatedOverlap {
  std::string a, b;
  std::optional<double> jaccard;  // null when both sets are empty
};

struct AnalysisBundle {
  AnalyzeOptions options;
  std::vector<NetworkAnalysis> networks;
  std::vector<IsolatedOverlap> isolated_overlap;  // operation networks, pairwise
};

namespace detail {

inline NetworkAnalysis analyze_network(const InteractionNetwork& net, std::string name,
                                       const AnalyzeOptions& opt) {
  NetworkAnalysis a;
  a.name = std::move(name);
  a.kind = net.kind;
  a.level = net.level;
  a.invocation = net.invocation;
  a.n_nodes = net.node_count();
  a.n_edges = net.edge_count();

  const ComponentDecomposition comps = decompose(net);
  a.decomposition.n_nodes = comps.n_nodes;
  a.decomposition.n_isolated = comps.isolated.size();
  a.decomposition.n_small_components = comps.small.size();
  for (const std::size_t i : comps.small) a.decomposition.small_nodes += comps.components[i].size();
  if (comps.giant) a.decomposition.giant_nodes = comps.components[*comps.giant].size();
  a.decomposition.frac_isolated = comps.frac_isolated;
  a.decomposition.frac_small = comps.frac_small;
  a.decomposition.frac_giant = comps.frac_giant;
  for (const std::uint32_t v : comps.isolated) a.isolated_labels.push_back(net.nodes[v]);

  if (!comps.giant) return a;
  const InteractionNetwork giant = induced_subnetwork(net, comps.components[*comps.giant]);

  GiantSummary gs;
  gs.nodes = giant.node_count();
  gs.links = giant.edge_count();
  gs.link_proportion = net.edge_count() == 0
                           ? 0.0
                           : static_cast<double>(giant.edge_count()) /
                                 static_cast<double>(net.edge_count());
  gs.density = density(giant);
  a.giant = gs;

  a.topology = topology_report(giant, opt.er_samples,
                               derive_seed(opt.seed, "er-" + a.name), opt.threads);

  const WalktrapResult wt = walktrap(giant, opt.walk_length);
  CommunitySummary cs;
  cs.count = wt.partition.communities.size();
  cs.modularity = wt.partition.modularity;
  cs.top3_share = top_community_share(wt.partition, 3);
  cs.sizes = wt.partition.sizes;
  a.communities = std::move(cs);

  const auto degrees = degree_sequence(giant, DegreeSide::Total);
  a.cumulative_degrees = cumulative_degree_series(degrees);
  FitOptions fo;
  fo.xmin = opt.fit_xmin;
  fo.bootstrap_n = opt.bootstrap_n;
  fo.seed = derive_seed(opt.seed, "fit-" + a.name);
  fo.threads = opt.threads;
  try {
    a.power_law = fit_power_law(degrees, fo);
  } catch (const ValidationError&) {
  }
  try {
    a.exponential = fit_exponential(degrees, opt.fit_xmin);
  } catch (const ValidationError&) {
  }
  return a;
}

inline std::set<std::pair<std::uint32_t, std::uint32_t>> edge_set(const InteractionNetwork& n) {
  std::set<std::pair<std::uint32_t, std::uint32_t>> s;
  for (const NetEdge& e : n.edges) s.emplace(e.src, e.dst);
  return s;
}

}  // namespace detail

/// Builds the requested networks, analyzes each, and cross-checks the
/// level-containment guarantee when all levels are built.
inline AnalysisBundle analyze_collection(const Collection& coll, const OntologyRegistry& onts,
                                         const AnalyzeOptions& opt = {}) {
  coll.validate_against(onts);
  AnalysisBundle bundle;
  bundle.options = opt;

  BuildOptions build_opt;
  build_opt.allow_vacuous = opt.allow_vacuous;
  build_opt.threads = opt.threads;

  std::vector<std::pair<std::string, InteractionNetwork>> nets;
  const auto levels = opt.all_levels
                          ? std::vector<MatchLevel>{MatchLevel::Exact, MatchLevel::Plugin,
                                                    MatchLevel::Subsume, MatchLevel::Fitin}
                          : std::vector<MatchLevel>{opt.level};
  for (const MatchLevel level : levels)
    nets.emplace_back(std::string(to_string(level)),
                      build_operation_network(coll, onts, level, opt.invocation, build_opt));
  nets.emplace_back("parameter", build_parameter_network(coll, onts));

  if (opt.all_levels) {
    const auto exact = detail::edge_set(nets[0].second);
    const auto plugin = detail::edge_set(nets[1].second);
    const auto fitin = detail::edge_set(nets[3].second);
    for (const auto& e : exact)
      if (!fitin.count(e)) throw Error("containment violated: exact edge missing from fitin");
    for (const auto& e : plugin)
      if (!fitin.count(e)) throw Error("containment violated: plugin edge missing from fitin");
  }

  for (const auto& [name, net] : nets)
    bundle.networks.push_back(detail::analyze_network(net, name, opt));

  for (std::size_t i = 0; i < bundle.networks.size(); ++i) {
    if (bundle.networks[i].kind != NetworkKind::Operation) continue;
    for (std::size_t j = i + 1; j < bundle.networks.size(); ++j) {
      if (bundle.networks[j].kind != NetworkKind::Operation) continue;
      const std::set<std::string> a(bundle.networks[i].isolated_labels.begin(),
                                    bundle.networks[i].isolated_labels.end());
      const std::set<std::string> b(bundle.networks[j].isolated_labels.begin(),
                                    bundle.networks[j].isolated_labels.end());
      std::size_t inter = 0;
      for (const std::string& x : a) inter += b.count(x);
      const std::size_t uni = a.size() + b.size() - inter;
      IsolatedOverlap ov;
      ov.a = bundle.networks[i].name;
      ov.b = bundle.networks[j].name;
      if (uni > 0) ov.jaccard = static_cast<double>(inter) / static_cast<double>(uni);
      bundle.isolated_overlap.push_back(std::move(ov));
    }
  }
  return bundle;
}

namespace detail {

inline std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

inline std::string pct(double fraction) { return fixed(fraction * 100.0, 2) + "%"; }

inline std::string opt_fixed(const std::optional<double>& v, int decimals) {
  return v ? fixed(*v, decimals) : "n/a";
}

inline double round_to(double v, int decimals) {
  const double scale = std::pow(10.0, decimals);
  return std::round(v * scale) / scale;
}

inline std::string csv_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace detail

inline std::string bundle_to_json(const AnalysisBundle& bundle) {
  using detail::round_to;
  nlohmann::ordered_json doc;
  doc["seed"] = bundle.options.seed;
  doc["er_samples"] = bundle.options.er_samples;
  doc["bootstrap"] = bundle.options.bootstrap_n;
  doc["all_levels"] = bundle.options.all_levels;
  auto& nets = doc["networks"] = nlohmann::ordered_json::array();
  const auto opt_num = [](const std::optional<double>& v) -> nlohmann::ordered_json {
    if (v) return *v;
    return nullptr;
  };
  for (const NetworkAnalysis& a : bundle.networks) {
    nlohmann::ordered_json j;
    j["name"] = a.name;
    j["kind"] = to_string(a.kind);
    if (a.kind == NetworkKind::Operation) {
      j["match_level"] = to_string(a.level);
      j["invocation"] = to_string(a.invocation);
    }
    j["nodes"] = a.n_nodes;
    j["edges"] = a.n_edges;
    j["decomposition"] = {{"isolated", a.decomposition.n_isolated},
                          {"small_components", a.decomposition.n_small_components},
                          {"small_nodes", a.decomposition.small_nodes},
                          {"giant_nodes", a.decomposition.giant_nodes},
                          {"frac_isolated", round_to(a.decomposition.frac_isolated, 4)},
                          {"frac_small", round_to(a.decomposition.frac_small, 4)},
                          {"frac_giant", round_to(a.decomposition.frac_giant, 4)}};
    if (a.giant) {
      j["giant"] = {{"nodes", a.giant->nodes},
                    {"links", a.giant->links},
                    {"link_proportion", a.giant->link_proportion},
                    {"density", a.giant->density}};
    } else {
      j["giant"] = nullptr;
    }
    if (a.topology) {
      const TopologyReport& t = *a.topology;
      j["topology"] = {{"avg_distance", t.avg_distance},
                       {"diameter", t.diameter},
                       {"clustering", opt_num(t.clustering)},
                       {"assortativity", opt_num(t.assortativity)},
                       {"l_er", t.l_er},
                       {"c_er", opt_num(t.c_er)},
                       {"l_ratio", opt_num(t.l_ratio)},
                       {"c_ratio", opt_num(t.c_ratio)},
                       {"er_samples", t.er_samples}};
    } else {
      j["topology"] = nullptr;
    }
    if (a.communities) {
      j["communities"] = {{"count", a.communities->count},
                          {"modularity", a.communities->modularity},
                          {"top3_share", a.communities->top3_share},
                          {"sizes", a.communities->sizes}};
    } else {
      j["communities"] = nullptr;
    }
    if (a.power_law) {
      j["power_law"] = {{"gamma", a.power_law->gamma},
                        {"xmin", a.power_law->xmin},
                        {"ks", a.power_law->ks},
                        {"p_value", a.power_law->p_value},
                        {"bootstrap_n", a.power_law->bootstrap_n},
                        {"n_tail", a.power_law->n_tail}};
    } else {
      j["power_law"] = nullptr;
    }
    if (a.exponential) {
      j["exponential"] = {{"rate", a.exponential->rate},
                          {"xmin", a.exponential->xmin},
                          {"ks", a.exponential->ks}};
    } else {
      j["exponential"] = nullptr;
    }
    nets.push_back(std::move(j));
  }
  auto& overlap = doc["isolated_overlap"] = nlohmann::ordered_json::array();
  for (const IsolatedOverlap& ov : bundle.isolated_overlap)
    overlap.push_back({{"a", ov.a}, {"b", ov.b}, {"jaccard", opt_num(ov.jaccard)}});
  return doc.dump(2) + "\n";
}

inline std::string bundle_to_markdown(const AnalysisBundle& bundle) {
  using namespace detail;
  std::string md;
  md += "# Interaction network analysis\n\n";
  md += "Seed: " + std::to_string(bundle.options.seed) +
        "; ER samples: " + std::to_string(bundle.options.er_samples) +
        "; bootstrap replicates: " + std::to_string(bundle.options.bootstrap_n) + "\n";

  md += "\n## Node distribution\n\n";
  md += "| Network | Isolated nodes | Small components | Giant component | Small + Giant components |\n";
  md += "|---|---|---|---|---|\n";
  for (const NetworkAnalysis& a : bundle.networks)
    md += "| " + a.name + " | " + pct(a.decomposition.frac_isolated) + " | " +
          pct(a.decomposition.frac_small) + " | " + pct(a.decomposition.frac_giant) + " | " +
          pct(a.decomposition.frac_small + a.decomposition.frac_giant) + " |\n";

  md += "\n## Giant component structure\n\n";
  md += "| Network | Number of nodes | Number of links | Proportion of links | Density |\n";
  md += "|---|---|---|---|---|\n";
  for (const NetworkAnalysis& a : bundle.networks) {
    if (!a.giant) {
      md += "| " + a.name + " | n/a | n/a | n/a | n/a |\n";
      continue;
    }
    md += "| " + a.name + " | " + std::to_string(a.giant->nodes) + " | " +
          std::to_string(a.giant->links) + " | " + pct(a.giant->link_proportion) + " | " +
          fixed(a.giant->density, 4) + " |\n";
  }

  md += "\n## Giant component topology\n\n";
  md += "| Network | L | L/L_ER | Diameter | C | C/C_ER | Assortativity |\n";
  md += "|---|---|---|---|---|---|---|\n";
  for (const NetworkAnalysis& a : bundle.networks) {
    if (!a.topology) {
      md += "| " + a.name + " | n/a | n/a | n/a | n/a | n/a | n/a |\n";
      continue;
    }
    const TopologyReport& t = *a.topology;
    md += "| " + a.name + " | " + fixed(t.avg_distance, 2) + " | " + opt_fixed(t.l_ratio, 2) +
          " | " + std::to_string(t.diameter) + " | " + opt_fixed(t.clustering, 3) + " | " +
          opt_fixed(t.c_ratio, 2) + " | " + opt_fixed(t.assortativity, 2) + " |\n";
  }

  md += "\n## Community structure\n\n";
  md += "| Network | Number of communities | Modularity | Top-3 share |\n";
  md += "|---|---|---|---|\n";
  for (const NetworkAnalysis& a : bundle.networks) {
    if (!a.communities) {
      md += "| " + a.name + " | n/a | n/a | n/a |\n";
      continue;
    }
    md += "| " + a.name + " | " + std::to_string(a.communities->count) + " | " +
          fixed(a.communities->modularity, 3) + " | " + pct(a.communities->top3_share) + " |\n";
  }

  md += "\n## Degree distribution fits (total degree)\n\n";
  md += "| Network | gamma | xmin | KS | p-value | lambda |\n";
  md += "|---|---|---|---|---|---|\n";
  for (const NetworkAnalysis& a : bundle.networks) {
    const std::string gamma = a.power_law ? fixed(a.power_law->gamma, 2) : "n/a";
    const std::string xmin = a.power_law ? std::to_string(a.power_law->xmin) : "n/a";
    const std::string ks = a.power_law ? fixed(a.power_law->ks, 3) : "n/a";
    const std::string p = a.power_law ? fixed(a.power_law->p_value, 2) : "n/a";
    const std::string lambda = a.exponential ? fixed(a.exponential->rate, 3) : "n/a";
    md += "| " + a.name + " | " + gamma + " | " + xmin + " | " + ks + " | " + p + " | " +
          lambda + " |\n";
  }

  if (!bundle.isolated_overlap.empty()) {
    md += "\n## Isolated-node overlap between operation networks\n\n";
    md += "| Network A | Network B | Jaccard |\n";
    md += "|---|---|---|\n";
    for (const IsolatedOverlap& ov : bundle.isolated_overlap)
      md += "| " + ov.a + " | " + ov.b + " | " + opt_fixed(ov.jaccard, 2) + " |\n";
  }
  return md;
}

inline std::string cumulative_degree_csv(
    const std::vector<std::pair<std::size_t, double>>& series) {
  std::string csv = "k,p_geq_k\n";
  for (const auto& [k, p] : series)
    csv += std::to_string(k) + "," + detail::csv_double(p) + "\n";
  return csv;
}

inline std::string community_size_csv(const Partition& p) {
  std::string csv = "rank,size\n";
  for (const auto& [rank, size] : community_size_distribution(p))
    csv += std::to_string(rank) + "," + std::to_string(size) + "\n";
  return csv;
}

inline std::string membership_csv(const Partition& p) {
  std::string csv = "node,community\n";
  for (std::size_t v = 0; v < p.labels.size(); ++v)
    csv += p.labels[v] + "," + std::to_string(p.assignment[v]) + "\n";
  return csv;
}

inline std::string partition_to_json(const Partition& p) {
  nlohmann::ordered_json doc;
  doc["modularity"] = p.modularity;
  auto& comms = doc["communities"] = nlohmann::ordered_json::array();
  for (const auto& members : p.communities) {
    nlohmann::ordered_json c = nlohmann::ordered_json::array();
    for (const std::uint32_t v : members) c.push_back(p.labels[v]);
    comms.push_back(std::move(c));
  }
  return doc.dump(2) + "\n";
}

inline std::string domain_mixing_csv(const DomainMixing& mix) {
  std::string csv = "community,domain,count\n";
  for (std::size_t c = 0; c < mix.counts.size(); ++c)
    for (std::size_t d = 0; d < mix.domains.size(); ++d)
      if (mix.counts[c][d] > 0)
        csv += std::to_string(c) + "," + mix.domains[d] + "," +
               std::to_string(mix.counts[c][d]) + "\n";
  return csv;
}

}  // namespace svcnet
