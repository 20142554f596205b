#include <doctest.h>

#include <set>

#include "oracles.hpp"
#include "svcnet/metrics.hpp"
#include "svcnet/network.hpp"

using namespace svcnet;

namespace {

struct Fig3 {
  OntologyRegistry onts;
  Collection coll;
};

Fig3 fig3() {
  Fig3 f;
  f.onts.add(load_ontology(oracles::read_fixture("fig3_ontology.json")));
  f.coll = load_collection(oracles::read_fixture("fig3_collection.json"));
  return f;
}

Collection small_collection(std::vector<Operation> ops) {
  std::vector<Service> services;
  for (Operation& op : ops) services.push_back({op.service, {op}});
  return Collection(std::move(services));
}

}  // namespace

TEST_CASE("figure-3 exact full operation network has exactly the two published edges") {
  const Fig3 f = fig3();
  const InteractionNetwork net =
      build_operation_network(f.coll, f.onts, MatchLevel::Exact, Invocation::Full);
  CHECK(net.node_count() == 4);
  CHECK(oracles::edge_labels(net) ==
        std::set<std::pair<std::string, std::string>>{{"α.2", "β.3"}, {"β.3", "γ.4"}});
}

TEST_CASE("level mismatch produces an empty network") {
  OntologyRegistry onts;
  onts.add(Ontology("o", {"super", "sub", "x"}, {{"sub", "super"}}));
  // One candidate pair which matches via Plugin only.
  const Collection coll = small_collection({
      {"a", "1", {{"o", "x"}}, {{"o", "sub"}}},
      {"b", "1", {{"o", "super"}}, {}},
  });
  CHECK(build_operation_network(coll, onts, MatchLevel::Exact, Invocation::Full).edges.empty());
  CHECK(build_operation_network(coll, onts, MatchLevel::Plugin, Invocation::Full).edge_count() == 1);
}

TEST_CASE("partial invocation links on a strict subset of satisfied inputs") {
  OntologyRegistry onts;
  onts.add(Ontology("o", {"xsuper", "xsub", "y", "z"}, {{"xsub", "xsuper"}}));
  const Collection coll = small_collection({
      {"A", "1", {{"o", "z"}}, {{"o", "xsub"}}},
      {"B", "1", {{"o", "xsuper"}, {"o", "y"}}, {}},
  });
  for (const MatchLevel level : {MatchLevel::Plugin, MatchLevel::Fitin}) {
    const auto full = build_operation_network(coll, onts, level, Invocation::Full);
    CHECK(full.edges.empty());
    const auto partial = build_operation_network(coll, onts, level, Invocation::Partial);
    CHECK(oracles::edge_labels(partial) ==
          std::set<std::pair<std::string, std::string>>{{"A.1", "B.1"}});
  }
}

TEST_CASE("operations with no inputs get no incoming edges unless vacuous mode") {
  OntologyRegistry onts;
  onts.add(Ontology("o", {"x"}, {}));
  const Collection coll = small_collection({
      {"src", "1", {}, {{"o", "x"}}},
      {"alsosrc", "1", {}, {{"o", "x"}}},
  });
  const auto net = build_operation_network(coll, onts, MatchLevel::Exact, Invocation::Full);
  CHECK(net.edges.empty());

  BuildOptions vacuous;
  vacuous.allow_vacuous = true;
  const auto literal =
      build_operation_network(coll, onts, MatchLevel::Exact, Invocation::Full, vacuous);
  CHECK(literal.edge_count() == 2);  // each can "invoke" the other vacuously
  // Partial invocation stays edgeless either way: there is no satisfied pair.
  const auto partial =
      build_operation_network(coll, onts, MatchLevel::Exact, Invocation::Partial, vacuous);
  CHECK(partial.edges.empty());
}

TEST_CASE("exact and plugin edges are not disjoint in general") {
  // One output matches an input exactly while a second output matches it via
  // plugin; the pair then appears in both level networks. The level networks
  // partition nothing; only per-parameter degrees are exclusive.
  OntologyRegistry onts;
  onts.add(Ontology("o", {"x", "xsub"}, {{"xsub", "x"}}));
  const Collection coll = small_collection({
      {"A", "1", {}, {{"o", "x"}, {"o", "xsub"}}},
      {"B", "1", {{"o", "x"}}, {}},
  });
  const auto exact = oracles::edge_labels(
      build_operation_network(coll, onts, MatchLevel::Exact, Invocation::Full));
  const auto plugin = oracles::edge_labels(
      build_operation_network(coll, onts, MatchLevel::Plugin, Invocation::Full));
  CHECK(exact.count({"A.1", "B.1"}) == 1);
  CHECK(plugin.count({"A.1", "B.1"}) == 1);
}

TEST_CASE("oracle equivalence and containment on random collections") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    Rng rng(derive_seed(7, "netgen", seed));
    const Ontology ont = oracles::random_dag_ontology("o", 3 + rng.index(13), rng);
    OntologyRegistry onts;
    onts.add(ont);
    const Collection coll = oracles::random_collection(*onts.find("o"), 2 + rng.index(19), rng);

    std::map<MatchLevel, std::set<std::pair<std::string, std::string>>> full_edges;
    for (const MatchLevel level :
         {MatchLevel::Exact, MatchLevel::Plugin, MatchLevel::Subsume, MatchLevel::Fitin}) {
      for (const Invocation inv : {Invocation::Full, Invocation::Partial}) {
        const auto built = build_operation_network(coll, onts, level, inv);
        CHECK(oracles::edge_labels(built) == oracles::naive_operation_edges(coll, onts, level, inv));
        if (inv == Invocation::Full) full_edges[level] = oracles::edge_labels(built);
      }
      // full ⊆ partial at the same level
      const auto full = oracles::naive_operation_edges(coll, onts, level, Invocation::Full);
      const auto partial = oracles::naive_operation_edges(coll, onts, level, Invocation::Partial);
      for (const auto& e : full) CHECK(partial.count(e) == 1);
    }
    // E(exact) ∪ E(plugin) ⊆ E(fitin)
    for (const auto& e : full_edges[MatchLevel::Exact])
      CHECK(full_edges[MatchLevel::Fitin].count(e) == 1);
    for (const auto& e : full_edges[MatchLevel::Plugin])
      CHECK(full_edges[MatchLevel::Fitin].count(e) == 1);
  }
}

TEST_CASE("threaded build matches serial build") {
  Rng rng(derive_seed(7, "netgen-threads", 0));
  const Ontology ont = oracles::random_dag_ontology("o", 12, rng);
  OntologyRegistry onts;
  onts.add(ont);
  const Collection coll = oracles::random_collection(*onts.find("o"), 30, rng);
  BuildOptions threaded;
  threaded.threads = 4;
  for (const MatchLevel level : {MatchLevel::Exact, MatchLevel::Fitin}) {
    const auto serial = build_operation_network(coll, onts, level, Invocation::Full);
    const auto parallel = build_operation_network(coll, onts, level, Invocation::Full, threaded);
    CHECK(serial.edges == parallel.edges);
    CHECK(serial.nodes == parallel.nodes);
  }
}

TEST_CASE("figure-3 parameter network merges shared concepts into 9 nodes") {
  const Fig3 f = fig3();
  const InteractionNetwork net = build_parameter_network(f.coll, f.onts);
  CHECK(net.node_count() == 9);
  CHECK(net.edge_count() == 8);

  const auto expected = oracles::naive_parameter_edges(f.coll);
  CHECK(net.edges.size() == expected.size());
  for (std::size_t e = 0; e < net.edges.size(); ++e) {
    const auto key = std::make_pair(net.nodes[net.edges[e].src], net.nodes[net.edges[e].dst]);
    REQUIRE(expected.count(key) == 1);
    const auto& ops = expected.at(key);
    CHECK(std::set<std::string>(net.edge_ops[e].begin(), net.edge_ops[e].end()) == ops);
  }
}

TEST_CASE("parameter link provenance collects every operation sharing the pair") {
  OntologyRegistry onts;
  onts.add(Ontology("o", {"Country", "TimeMeasure"}, {}));
  const Collection coll = small_collection({
      {"α", "1", {{"o", "Country"}}, {{"o", "TimeMeasure"}}},
      {"β", "1", {{"o", "Country"}}, {{"o", "TimeMeasure"}}},
      {"γ", "1", {{"o", "Country"}}, {{"o", "TimeMeasure"}}},
  });
  const InteractionNetwork net = build_parameter_network(coll, onts);
  CHECK(net.node_count() == 2);
  REQUIRE(net.edge_count() == 1);
  CHECK(net.edge_ops[0] == std::vector<std::string>{"α.1", "β.1", "γ.1"});
}

TEST_CASE("input-only operations contribute parameter nodes but no edges") {
  OntologyRegistry onts;
  onts.add(Ontology("o", {"a", "b"}, {}));
  const Collection coll = small_collection({{"s", "1", {{"o", "a"}, {"o", "b"}}, {}}});
  const InteractionNetwork net = build_parameter_network(coll, onts);
  CHECK(net.node_count() == 2);
  CHECK(net.edges.empty());
}

TEST_CASE("decompose identifies giant, small, and isolated structure") {
  const Fig3 f = fig3();
  const auto net = build_operation_network(f.coll, f.onts, MatchLevel::Exact, Invocation::Full);
  const ComponentDecomposition d = decompose(net);
  REQUIRE(d.giant.has_value());
  CHECK(d.components[*d.giant] == std::vector<std::uint32_t>{1, 2, 3});  // ops 2, 3, 4
  CHECK(d.small.empty());
  CHECK(d.isolated == std::vector<std::uint32_t>{0});  // op 1
  CHECK(d.frac_giant == doctest::Approx(0.75));
  CHECK(d.frac_isolated == doctest::Approx(0.25));
  CHECK(d.frac_giant + d.frac_small + d.frac_isolated == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("decompose of an edgeless network has no giant") {
  InteractionNetwork net;
  for (int i = 0; i < 5; ++i) net.nodes.push_back("n" + std::to_string(i));
  const ComponentDecomposition d = decompose(net);
  CHECK_FALSE(d.giant.has_value());
  CHECK(d.isolated.size() == 5);
  CHECK(d.frac_isolated == doctest::Approx(1.0));

  const ComponentDecomposition empty = decompose(InteractionNetwork{});
  CHECK(empty.components.empty());
  CHECK_FALSE(empty.giant.has_value());
}

TEST_CASE("decompose ties break on the smallest member") {
  // Two disjoint directed 3-cycles; the one containing node 0 wins the tie.
  const auto net = oracles::network_from_edges(
      6, {{3, 4}, {4, 5}, {5, 3}, {0, 1}, {1, 2}, {2, 0}});
  const ComponentDecomposition d = decompose(net);
  REQUIRE(d.giant.has_value());
  CHECK(d.components[*d.giant] == std::vector<std::uint32_t>{0, 1, 2});
  REQUIRE(d.small.size() == 1);
  CHECK(d.components[d.small[0]] == std::vector<std::uint32_t>{3, 4, 5});
}

TEST_CASE("hubs and authorities rank by degree with label tie-break") {
  const auto star = oracles::network_from_edges(4, {{0, 1}, {0, 2}, {0, 3}});
  const HubsAuthorities ha = hubs_and_authorities(star, 2);
  REQUIRE(ha.hubs.size() == 2);
  CHECK(ha.hubs[0] == std::pair<std::string, std::size_t>{"n0", 3});
  CHECK(ha.authorities[0] == std::pair<std::string, std::size_t>{"n1", 1});  // label ties

  const Fig3 f = fig3();
  const auto net = build_operation_network(f.coll, f.onts, MatchLevel::Exact, Invocation::Full);
  const HubsAuthorities top = hubs_and_authorities(net, 1);
  CHECK(top.hubs[0] == std::pair<std::string, std::size_t>{"α.2", 1});
  CHECK(top.authorities[0] == std::pair<std::string, std::size_t>{"β.3", 1});

  const HubsAuthorities none = hubs_and_authorities(InteractionNetwork{}, 3);
  CHECK(none.hubs.empty());
  CHECK(none.authorities.empty());
}

TEST_CASE("induced subnetwork keeps labels, edges, and provenance") {
  const Fig3 f = fig3();
  const auto param = build_parameter_network(f.coll, f.onts);
  const auto d = decompose(param);
  REQUIRE(d.giant.has_value());
  const auto giant = induced_subnetwork(param, d.components[*d.giant]);
  CHECK(giant.node_count() == 6);  // c, e, f, g, h, i
  CHECK(giant.edge_count() == 6);
  CHECK(giant.edge_ops.size() == giant.edge_count());
}

TEST_CASE("tsv export is bit-exact and sorted") {
  const Fig3 f = fig3();
  const auto net = build_operation_network(f.coll, f.onts, MatchLevel::Exact, Invocation::Full);
  CHECK(export_network(net, ExportFormat::Tsv) == "α.2\tβ.3\nβ.3\tγ.4\n");
  CHECK(export_network(InteractionNetwork{}, ExportFormat::Tsv).empty());
}

TEST_CASE("dot export quotes labels") {
  InteractionNetwork net;
  net.nodes = {"a\"b", "plain"};
  net.edges = {{0, 1}};
  const std::string dot = export_network(net, ExportFormat::Dot);
  CHECK(dot.find("digraph") == 0);
  CHECK(dot.find("\"a\\\"b\" -> \"plain\";") != std::string::npos);
}

TEST_CASE("json export carries provenance for parameter networks") {
  const Fig3 f = fig3();
  const auto param = build_parameter_network(f.coll, f.onts);
  const auto doc = nlohmann::json::parse(export_network(param, ExportFormat::Json));
  CHECK(doc["kind"] == "parameter");
  CHECK(doc["nodes"].size() == 9);
  CHECK(!doc.contains("invocation"));
  for (const auto& e : doc["edges"]) {
    CHECK(e.contains("ops"));
    CHECK(e["ops"].size() >= 1);
  }

  const auto opnet = build_operation_network(f.coll, f.onts, MatchLevel::Exact, Invocation::Full);
  const auto opdoc = nlohmann::json::parse(export_network(opnet, ExportFormat::Json));
  CHECK(opdoc["kind"] == "operation");
  CHECK(opdoc["match_level"] == "exact");
  CHECK(opdoc["invocation"] == "full");
  for (const auto& e : opdoc["edges"]) CHECK(!e.contains("ops"));
}
