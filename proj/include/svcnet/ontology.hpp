#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <queue>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "svcnet/bitset.hpp"
#include "svcnet/error.hpp"

namespace svcnet {

/// Reference to one ontological concept, serialized "ontology_id#local_name".
/// Identity is exact, case-sensitive string equality on both parts; two
/// concepts from different ontologies are never comparable.
struct ConceptRef {
  std::string ontology_id;
  std::string local_name;

  std::string str() const { return ontology_id + "#" + local_name; }
  auto operator<=>(const ConceptRef&) const = default;

  /// Splits at the first '#'; both parts must be non-empty.
  static ConceptRef parse(std::string_view text) {
    const auto pos = text.find('#');
    if (pos == std::string_view::npos || pos == 0 || pos + 1 == text.size())
      throw ParseError("malformed concept reference '" + std::string(text) +
                       "': expected ontology_id#local_name");
    return {std::string(text.substr(0, pos)), std::string(text.substr(pos + 1))};
  }
};

/// Subsumption match between an output concept and an input concept.
/// Relevance order: Exact > Fitin > Plugin > Subsume > Fail.
/// match_degree() itself never returns Fitin: Fitin is a link-level predicate
/// accepting Exact or Plugin per parameter (see satisfies()).
enum class MatchDegree : std::uint8_t { Exact, Fitin, Plugin, Subsume, Fail };

/// The match level an interaction network or a composition request is built at.
enum class MatchLevel : std::uint8_t { Exact, Plugin, Subsume, Fitin };

constexpr int relevance_rank(MatchDegree d) {
  switch (d) {
    case MatchDegree::Exact: return 4;
    case MatchDegree::Fitin: return 3;
    case MatchDegree::Plugin: return 2;
    case MatchDegree::Subsume: return 1;
    case MatchDegree::Fail: return 0;
  }
  return 0;
}

constexpr bool satisfies(MatchDegree found, MatchLevel level) {
  switch (level) {
    case MatchLevel::Exact: return found == MatchDegree::Exact;
    case MatchLevel::Plugin: return found == MatchDegree::Plugin;
    case MatchLevel::Subsume: return found == MatchDegree::Subsume;
    case MatchLevel::Fitin:
      return found == MatchDegree::Exact || found == MatchDegree::Plugin;
  }
  return false;
}

constexpr std::string_view to_string(MatchDegree d) {
  switch (d) {
    case MatchDegree::Exact: return "exact";
    case MatchDegree::Fitin: return "fitin";
    case MatchDegree::Plugin: return "plugin";
    case MatchDegree::Subsume: return "subsume";
    case MatchDegree::Fail: return "fail";
  }
  return "?";
}

constexpr std::string_view to_string(MatchLevel l) {
  switch (l) {
    case MatchLevel::Exact: return "exact";
    case MatchLevel::Plugin: return "plugin";
    case MatchLevel::Subsume: return "subsume";
    case MatchLevel::Fitin: return "fitin";
  }
  return "?";
}

inline MatchLevel parse_match_level(std::string_view s) {
  if (s == "exact") return MatchLevel::Exact;
  if (s == "plugin") return MatchLevel::Plugin;
  if (s == "subsume") return MatchLevel::Subsume;
  if (s == "fitin") return MatchLevel::Fitin;
  throw ParseError("unknown match level '" + std::string(s) +
                   "': expected exact|plugin|subsume|fitin");
}

/// One concept hierarchy: a DAG of (child, parent) subclass edges with the
/// reflexive-transitive subsumption closure precomputed as one ancestor
/// bitset per concept. Immutable once constructed; collections query the
/// closure millions of times during a network build.
class Ontology {
 public:
  Ontology(std::string id, std::vector<std::string> concepts,
           std::vector<std::pair<std::string, std::string>> subclass_edges)
      : id_(std::move(id)),
        names_(std::move(concepts)),
        edges_(std::move(subclass_edges)) {
    if (id_.empty()) throw ValidationError("ontology id must be non-empty");
    for (std::size_t i = 0; i < names_.size(); ++i) {
      if (names_[i].empty())
        throw ValidationError("ontology '" + id_ + "': empty concept name");
      if (!index_.emplace(names_[i], static_cast<std::uint32_t>(i)).second)
        throw ValidationError("ontology '" + id_ + "': duplicate concept '" +
                              names_[i] + "'");
    }
    build_closure();
  }

  const std::string& id() const { return id_; }
  std::size_t concept_count() const { return names_.size(); }
  const std::vector<std::string>& concept_names() const { return names_; }
  const std::vector<std::pair<std::string, std::string>>& subclass_edges() const {
    return edges_;
  }

  std::optional<std::uint32_t> index_of(std::string_view local_name) const {
    const auto it = index_.find(local_name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  /// Reflexive-transitive subsumption: is `descendant` equal to or below
  /// `ancestor` in the hierarchy?
  bool subsumed_by(std::uint32_t descendant, std::uint32_t ancestor) const {
    return ancestors_[descendant].test(ancestor);
  }

 private:
  void build_closure() {
    const std::size_t n = names_.size();
    std::vector<std::vector<std::uint32_t>> parents(n), children(n);
    for (const auto& [child, parent] : edges_) {
      const auto c = index_of(child), p = index_of(parent);
      if (!c || !p)
        throw ValidationError("ontology '" + id_ + "': subclass edge uses undeclared concept '" +
                              (c ? parent : child) + "'");
      parents[*c].push_back(*p);
      children[*p].push_back(*c);
    }
    // Process parents before children; if the queue drains early the edge
    // set has a directed cycle.
    std::vector<std::uint32_t> indegree(n, 0);
    for (std::size_t v = 0; v < n; ++v)
      indegree[v] = static_cast<std::uint32_t>(parents[v].size());
    std::queue<std::uint32_t> ready;
    for (std::size_t v = 0; v < n; ++v)
      if (indegree[v] == 0) ready.push(static_cast<std::uint32_t>(v));

    ancestors_.assign(n, Bitset(n));
    std::size_t processed = 0;
    while (!ready.empty()) {
      const std::uint32_t v = ready.front();
      ready.pop();
      ++processed;
      ancestors_[v].set(v);
      for (const std::uint32_t p : parents[v]) ancestors_[v].or_with(ancestors_[p]);
      for (const std::uint32_t c : children[v])
        if (--indegree[c] == 0) ready.push(c);
    }
    if (processed != n)
      throw ValidationError("ontology '" + id_ + "': subclass edges contain a cycle");
  }

  std::string id_;
  std::vector<std::string> names_;
  std::vector<std::pair<std::string, std::string>> edges_;
  std::map<std::string, std::uint32_t, std::less<>> index_;
  std::vector<Bitset> ancestors_;
};

/// Registry of loaded ontologies. Immutable after loading; all queries are
/// pure and safe for concurrent readers.
class OntologyRegistry {
 public:
  void add(Ontology ont) {
    const std::string id = ont.id();
    if (!onts_.emplace(id, std::move(ont)).second)
      throw ValidationError("duplicate ontology id '" + id + "'");
  }

  const Ontology* find(std::string_view id) const {
    const auto it = onts_.find(id);
    return it == onts_.end() ? nullptr : &it->second;
  }

  std::size_t size() const { return onts_.size(); }

  struct Resolved {
    const Ontology* ontology;
    std::uint32_t concept_index;
  };

  /// Throws ValidationError naming the reference when either the ontology or
  /// the concept is unknown.
  Resolved resolve(const ConceptRef& ref) const {
    const Ontology* ont = find(ref.ontology_id);
    if (!ont)
      throw ValidationError("unknown ontology in concept reference '" + ref.str() + "'");
    const auto idx = ont->index_of(ref.local_name);
    if (!idx)
      throw ValidationError("unknown concept in reference '" + ref.str() + "'");
    return {ont, *idx};
  }

  /// True iff both refs live in the same ontology and a is equal to or more
  /// specific than b. Cross-ontology pairs are never subconcepts.
  bool is_subconcept(const ConceptRef& a, const ConceptRef& b) const {
    const Resolved ra = resolve(a), rb = resolve(b);
    if (ra.ontology != rb.ontology) return false;
    return ra.ontology->subsumed_by(ra.concept_index, rb.concept_index);
  }

  /// Degree of match from an output concept to an input concept. Exact iff
  /// identical refs; Plugin iff the output is strictly more specific; Subsume
  /// iff strictly more general; Fail otherwise (including cross-ontology).
  MatchDegree match_degree(const ConceptRef& c_out, const ConceptRef& c_in) const {
    const Resolved ro = resolve(c_out), ri = resolve(c_in);
    if (ro.ontology != ri.ontology) return MatchDegree::Fail;
    if (ro.concept_index == ri.concept_index) return MatchDegree::Exact;
    if (ro.ontology->subsumed_by(ro.concept_index, ri.concept_index))
      return MatchDegree::Plugin;
    if (ro.ontology->subsumed_by(ri.concept_index, ro.concept_index))
      return MatchDegree::Subsume;
    return MatchDegree::Fail;
  }

 private:
  std::map<std::string, Ontology, std::less<>> onts_;
};

/// Parses the ontology file format:
///   {"id": "...", "concepts": ["..."], "subclass_of": [["child","parent"], ...]}
inline Ontology load_ontology(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid ontology JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("id") || !doc["id"].is_string())
    throw ParseError("ontology file: missing string field 'id'");
  if (!doc.contains("concepts") || !doc["concepts"].is_array())
    throw ParseError("ontology file: missing array field 'concepts'");

  std::vector<std::string> concepts;
  for (const auto& c : doc["concepts"]) {
    if (!c.is_string()) throw ParseError("ontology file: 'concepts' entries must be strings");
    concepts.push_back(c.get<std::string>());
  }
  std::vector<std::pair<std::string, std::string>> edges;
  if (doc.contains("subclass_of")) {
    if (!doc["subclass_of"].is_array())
      throw ParseError("ontology file: 'subclass_of' must be an array");
    for (const auto& e : doc["subclass_of"]) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string())
        throw ParseError("ontology file: 'subclass_of' entries must be [child, parent] pairs");
      edges.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
    }
  }
  return Ontology(doc["id"].get<std::string>(), std::move(concepts), std::move(edges));
}

/// Canonical form emitted by the generator; load_ontology round-trips it.
inline std::string serialize_ontology(const Ontology& ont) {
  nlohmann::ordered_json doc;
  doc["id"] = ont.id();
  doc["concepts"] = ont.concept_names();
  auto& edges = doc["subclass_of"] = nlohmann::ordered_json::array();
  for (const auto& [child, parent] : ont.subclass_edges())
    edges.push_back({child, parent});
  return doc.dump(2) + "\n";
}

}  // namespace svcnet
