#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <json.hpp>

#include "svcnet/bitset.hpp"
#include "svcnet/digraph.hpp"
#include "svcnet/error.hpp"
#include "svcnet/ontology.hpp"
#include "svcnet/service_model.hpp"

namespace svcnet {

enum class NetworkKind : std::uint8_t { Operation, Parameter };
enum class Invocation : std::uint8_t { Full, Partial };

constexpr std::string_view to_string(NetworkKind k) {
  return k == NetworkKind::Operation ? "operation" : "parameter";
}
constexpr std::string_view to_string(Invocation i) {
  return i == Invocation::Full ? "full" : "partial";
}

inline Invocation parse_invocation(std::string_view s) {
  if (s == "full") return Invocation::Full;
  if (s == "partial") return Invocation::Partial;
  throw ParseError("unknown invocation '" + std::string(s) + "': expected full|partial");
}

struct NetEdge {
  std::uint32_t src, dst;
  auto operator<=>(const NetEdge&) const = default;
};

/// A directed simple interaction graph. Operation networks: nodes are
/// operation ids, one network per match level, full or partial invocation.
/// Parameter networks: nodes are distinct concepts (exact merge), edges are
/// within-operation input->output dependencies carrying the ids of the
/// operations each link materializes.
struct InteractionNetwork {
  NetworkKind kind = NetworkKind::Operation;
  MatchLevel level = MatchLevel::Exact;
  Invocation invocation = Invocation::Full;
  std::vector<std::string> nodes;
  std::vector<NetEdge> edges;  // sorted by (src, dst), unique, no self-loops
  std::vector<std::vector<std::string>> edge_ops;  // parameter nets: per-edge provenance

  std::size_t node_count() const { return nodes.size(); }
  std::size_t edge_count() const { return edges.size(); }

  Digraph digraph() const {
    Digraph g(nodes.size());
    for (const NetEdge& e : edges) g.add_edge(e.src, e.dst);
    return g;
  }
};

struct BuildOptions {
  /// Literal vacuous-truth reading of full invocation: operations with no
  /// inputs receive an edge from every other operation. Off by default.
  bool allow_vacuous = false;
  unsigned threads = 1;
};

namespace detail {

/// Distinct concepts of a collection (first-appearance order), resolved once.
struct ConceptTable {
  std::vector<ConceptRef> concepts;
  std::map<ConceptRef, std::uint32_t> index;
  std::vector<OntologyRegistry::Resolved> resolved;

  std::uint32_t add(const ConceptRef& ref, const OntologyRegistry& onts) {
    const auto it = index.find(ref);
    if (it != index.end()) return it->second;
    const auto id = static_cast<std::uint32_t>(concepts.size());
    resolved.push_back(onts.resolve(ref));
    concepts.push_back(ref);
    index.emplace(ref, id);
    return id;
  }

  MatchDegree degree(std::uint32_t out_c, std::uint32_t in_c) const {
    const auto& ro = resolved[out_c];
    const auto& ri = resolved[in_c];
    if (ro.ontology != ri.ontology) return MatchDegree::Fail;
    if (ro.concept_index == ri.concept_index) return MatchDegree::Exact;
    if (ro.ontology->subsumed_by(ro.concept_index, ri.concept_index))
      return MatchDegree::Plugin;
    if (ro.ontology->subsumed_by(ri.concept_index, ro.concept_index))
      return MatchDegree::Subsume;
    return MatchDegree::Fail;
  }
};

/// sat[u] = bitset of concepts v such that an output v satisfies an input u
/// at the given level.
inline std::vector<Bitset> satisfier_table(const ConceptTable& table, MatchLevel level) {
  const std::size_t d = table.concepts.size();
  std::vector<Bitset> sat(d, Bitset(d));
  for (std::uint32_t u = 0; u < d; ++u)
    for (std::uint32_t v = 0; v < d; ++v)
      if (satisfies(table.degree(v, u), level)) sat[u].set(v);
  return sat;
}

/// Per-operation distinct input/output concept sets over the concept table.
struct CollectionIndex {
  ConceptTable table;
  std::vector<std::vector<std::uint32_t>> op_inputs;   // distinct, first-appearance order
  std::vector<std::vector<std::uint32_t>> op_outputs;
  std::vector<Bitset> op_output_bits;
  std::vector<std::string> op_ids;

  static CollectionIndex build(const Collection& coll, const OntologyRegistry& onts) {
    CollectionIndex idx;
    for (const Operation& op : coll.operations()) {
      std::vector<std::uint32_t> ins, outs;
      for (const ConceptRef& c : op.inputs) {
        const std::uint32_t k = idx.table.add(c, onts);
        if (std::find(ins.begin(), ins.end(), k) == ins.end()) ins.push_back(k);
      }
      for (const ConceptRef& c : op.outputs) {
        const std::uint32_t k = idx.table.add(c, onts);
        if (std::find(outs.begin(), outs.end(), k) == outs.end()) outs.push_back(k);
      }
      idx.op_inputs.push_back(std::move(ins));
      idx.op_outputs.push_back(std::move(outs));
      idx.op_ids.push_back(op.id());
    }
    const std::size_t d = idx.table.concepts.size();
    idx.op_output_bits.reserve(idx.op_outputs.size());
    for (const auto& outs : idx.op_outputs) {
      Bitset b(d);
      for (const std::uint32_t c : outs) b.set(c);
      idx.op_output_bits.push_back(std::move(b));
    }
    return idx;
  }
};

/// Runs fn(i) for i in [0, n), partitioned across `threads` workers.
/// Results must be written to preallocated per-index slots.
template <typename Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
  if (threads <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += workers) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace detail

/// Builds the operation network at one match level. Edge i->j exists iff j
/// has at least one input and -- Full: every input of j is satisfied by some
/// output of i at the level; Partial: at least one is. Node order follows the
/// collection; the edge list is deterministic regardless of thread count.
inline InteractionNetwork build_operation_network(const Collection& coll,
                                                  const OntologyRegistry& onts,
                                                  MatchLevel level, Invocation invocation,
                                                  const BuildOptions& opt = {}) {
  const auto idx = detail::CollectionIndex::build(coll, onts);
  const auto sat = detail::satisfier_table(idx.table, level);
  const std::size_t n = idx.op_ids.size();

  InteractionNetwork net;
  net.kind = NetworkKind::Operation;
  net.level = level;
  net.invocation = invocation;
  net.nodes = idx.op_ids;

  std::vector<std::vector<std::uint32_t>> row_dsts(n);
  detail::parallel_for(n, opt.threads, [&](std::size_t i) {
    auto& dsts = row_dsts[i];
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const auto& inputs = idx.op_inputs[j];
      bool linked = false;
      if (inputs.empty()) {
        linked = opt.allow_vacuous && invocation == Invocation::Full;
      } else if (invocation == Invocation::Full) {
        linked = true;
        for (const std::uint32_t u : inputs)
          if (!idx.op_output_bits[i].intersects(sat[u])) {
            linked = false;
            break;
          }
      } else {
        for (const std::uint32_t u : inputs)
          if (idx.op_output_bits[i].intersects(sat[u])) {
            linked = true;
            break;
          }
      }
      if (linked) dsts.push_back(static_cast<std::uint32_t>(j));
    }
  });
  for (std::size_t i = 0; i < n; ++i)
    for (const std::uint32_t j : row_dsts[i])
      net.edges.push_back({static_cast<std::uint32_t>(i), j});
  return net;
}

/// Builds the exact-merge parameter network: nodes are the distinct concepts
/// of the collection, one edge per (input, output) concept pair of some
/// operation, with the contributing operations recorded per edge.
inline InteractionNetwork build_parameter_network(const Collection& coll,
                                                  const OntologyRegistry& onts) {
  const auto idx = detail::CollectionIndex::build(coll, onts);

  InteractionNetwork net;
  net.kind = NetworkKind::Parameter;
  net.level = MatchLevel::Exact;
  net.nodes.reserve(idx.table.concepts.size());
  for (const ConceptRef& c : idx.table.concepts) net.nodes.push_back(c.str());

  std::map<std::pair<std::uint32_t, std::uint32_t>, std::vector<std::string>> links;
  for (std::size_t k = 0; k < idx.op_ids.size(); ++k)
    for (const std::uint32_t u : idx.op_inputs[k])
      for (const std::uint32_t v : idx.op_outputs[k]) {
        if (u == v) continue;
        links[{u, v}].push_back(idx.op_ids[k]);
      }
  for (auto& [key, ops] : links) {
    net.edges.push_back({key.first, key.second});
    net.edge_ops.push_back(std::move(ops));
  }
  return net;
}

/// Weak-component decomposition: the giant (largest, ties by smallest member),
/// small components of size >= 2, and isolated singletons.
struct ComponentDecomposition {
  std::size_t n_nodes = 0;
  std::vector<std::vector<std::uint32_t>> components;  // size desc, min member asc
  std::optional<std::size_t> giant;                    // index into components
  std::vector<std::size_t> small;                      // indices, size >= 2, non-giant
  std::vector<std::uint32_t> isolated;                 // singleton nodes, ascending
  double frac_giant = 0.0, frac_small = 0.0, frac_isolated = 0.0;
};

inline ComponentDecomposition decompose(const InteractionNetwork& net) {
  ComponentDecomposition d;
  d.n_nodes = net.node_count();
  if (d.n_nodes == 0) return d;
  d.components = weak_components(net.digraph());

  std::size_t giant_nodes = 0, small_nodes = 0;
  if (d.components.front().size() >= 2) {
    d.giant = 0;
    giant_nodes = d.components.front().size();
  }
  for (std::size_t i = 0; i < d.components.size(); ++i) {
    if (d.giant && i == *d.giant) continue;
    if (d.components[i].size() >= 2) {
      d.small.push_back(i);
      small_nodes += d.components[i].size();
    } else {
      d.isolated.push_back(d.components[i].front());
    }
  }
  std::sort(d.isolated.begin(), d.isolated.end());
  const double n = static_cast<double>(d.n_nodes);
  d.frac_giant = static_cast<double>(giant_nodes) / n;
  d.frac_small = static_cast<double>(small_nodes) / n;
  d.frac_isolated = static_cast<double>(d.isolated.size()) / n;
  return d;
}

struct HubsAuthorities {
  std::vector<std::pair<std::string, std::size_t>> hubs;         // by out-degree
  std::vector<std::pair<std::string, std::size_t>> authorities;  // by in-degree
};

/// Top-k nodes by out-degree (hubs: can invoke many) and by in-degree
/// (authorities: invocable by many); ties broken by node label ascending.
inline HubsAuthorities hubs_and_authorities(const InteractionNetwork& net, std::size_t k) {
  const Digraph g = net.digraph();
  const auto rank = [&](const std::vector<std::size_t>& deg) {
    std::vector<std::uint32_t> order(net.node_count());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
      if (deg[a] != deg[b]) return deg[a] > deg[b];
      return net.nodes[a] < net.nodes[b];
    });
    std::vector<std::pair<std::string, std::size_t>> top;
    for (std::size_t i = 0; i < std::min(k, order.size()); ++i)
      top.emplace_back(net.nodes[order[i]], deg[order[i]]);
    return top;
  };
  return {rank(g.out_degrees()), rank(g.in_degrees())};
}

/// Subnetwork induced by the given nodes (any order; original node order is
/// preserved). Parameter-network provenance is carried over.
inline InteractionNetwork induced_subnetwork(const InteractionNetwork& net,
                                             std::span<const std::uint32_t> keep) {
  std::vector<std::uint32_t> sorted(keep.begin(), keep.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::uint32_t> remap(net.node_count(), UINT32_MAX);
  InteractionNetwork sub;
  sub.kind = net.kind;
  sub.level = net.level;
  sub.invocation = net.invocation;
  for (const std::uint32_t v : sorted) {
    remap[v] = static_cast<std::uint32_t>(sub.nodes.size());
    sub.nodes.push_back(net.nodes[v]);
  }
  for (std::size_t e = 0; e < net.edges.size(); ++e) {
    const auto [src, dst] = net.edges[e];
    if (remap[src] == UINT32_MAX || remap[dst] == UINT32_MAX) continue;
    sub.edges.push_back({remap[src], remap[dst]});
    if (!net.edge_ops.empty()) sub.edge_ops.push_back(net.edge_ops[e]);
  }
  return sub;
}

enum class ExportFormat : std::uint8_t { Tsv, Dot, Json };

inline ExportFormat parse_export_format(std::string_view s) {
  if (s == "tsv") return ExportFormat::Tsv;
  if (s == "dot") return ExportFormat::Dot;
  if (s == "json") return ExportFormat::Json;
  throw ParseError("unknown format '" + std::string(s) + "': expected tsv|dot|json");
}

namespace detail {

/// Edge indices sorted lexicographically by (src label, dst label).
inline std::vector<std::size_t> edges_by_label(const InteractionNetwork& net) {
  std::vector<std::size_t> order(net.edges.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& ea = net.edges[a];
    const auto& eb = net.edges[b];
    if (net.nodes[ea.src] != net.nodes[eb.src]) return net.nodes[ea.src] < net.nodes[eb.src];
    return net.nodes[ea.dst] < net.nodes[eb.dst];
  });
  return order;
}

inline std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace detail

/// Deterministic, bit-exact export. TSV: "src\tdst\n" per edge, sorted by
/// label pair. DOT: digraph with quoted labels, no layout hints. JSON: the
/// network schema with index-based edges ("ops" present for parameter nets).
inline std::string export_network(const InteractionNetwork& net, ExportFormat format) {
  const auto order = detail::edges_by_label(net);
  switch (format) {
    case ExportFormat::Tsv: {
      std::string out;
      for (const std::size_t e : order) {
        out += net.nodes[net.edges[e].src];
        out += '\t';
        out += net.nodes[net.edges[e].dst];
        out += '\n';
      }
      return out;
    }
    case ExportFormat::Dot: {
      std::string out = "digraph interaction {\n";
      for (const std::string& label : net.nodes)
        out += "  " + detail::dot_quote(label) + ";\n";
      for (const std::size_t e : order)
        out += "  " + detail::dot_quote(net.nodes[net.edges[e].src]) + " -> " +
               detail::dot_quote(net.nodes[net.edges[e].dst]) + ";\n";
      out += "}\n";
      return out;
    }
    case ExportFormat::Json: {
      nlohmann::ordered_json doc;
      doc["kind"] = to_string(net.kind);
      doc["match_level"] = to_string(net.level);
      if (net.kind == NetworkKind::Operation) doc["invocation"] = to_string(net.invocation);
      doc["nodes"] = net.nodes;
      auto& edges = doc["edges"] = nlohmann::ordered_json::array();
      for (const std::size_t e : order) {
        nlohmann::ordered_json je;
        je["src"] = net.edges[e].src;
        je["dst"] = net.edges[e].dst;
        if (net.kind == NetworkKind::Parameter) je["ops"] = net.edge_ops[e];
        edges.push_back(std::move(je));
      }
      return doc.dump(2) + "\n";
    }
  }
  throw Error("unreachable export format");
}

}  // namespace svcnet
