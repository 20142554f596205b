#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "svcnet/error.hpp"
#include "svcnet/ontology.hpp"

namespace svcnet {

/// Atomic invocable unit of a service: input and output parameter concepts.
/// Inputs and outputs are multisets in storage (duplicates preserved for
/// parameter-instance accounting); matching treats them as sets.
struct Operation {
  std::string service;
  std::string name;
  std::vector<ConceptRef> inputs;
  std::vector<ConceptRef> outputs;

  std::string id() const { return service + "." + name; }

  bool operator==(const Operation&) const = default;
};

struct Service {
  std::string name;
  std::vector<Operation> operations;

  bool operator==(const Service&) const = default;
};

/// An immutable set of services with a flattened, file-ordered operation list.
class Collection {
 public:
  Collection() = default;

  explicit Collection(std::vector<Service> services) : services_(std::move(services)) {
    std::set<std::string, std::less<>> service_names, op_ids;
    for (const Service& s : services_) {
      if (!service_names.insert(s.name).second)
        throw ValidationError("duplicate service name '" + s.name + "'");
      for (const Operation& op : s.operations) {
        if (op.service != s.name)
          throw ValidationError("operation '" + op.id() + "' filed under service '" +
                                s.name + "'");
        if (!op_ids.insert(op.id()).second)
          throw ValidationError("duplicate operation id '" + op.id() + "'");
        operations_.push_back(op);
      }
    }
  }

  const std::vector<Service>& services() const { return services_; }

  /// All operations in file order.
  const std::vector<Operation>& operations() const { return operations_; }

  /// Total number of parameter instances (inputs + outputs, duplicates counted).
  std::size_t parameter_instance_count() const {
    std::size_t n = 0;
    for (const Operation& op : operations_) n += op.inputs.size() + op.outputs.size();
    return n;
  }

  std::vector<std::string> ontology_ids_referenced() const {
    std::set<std::string> ids;
    for (const Operation& op : operations_) {
      for (const ConceptRef& c : op.inputs) ids.insert(c.ontology_id);
      for (const ConceptRef& c : op.outputs) ids.insert(c.ontology_id);
    }
    return {ids.begin(), ids.end()};
  }

  /// Distinct concept refs in first-appearance order (per operation: inputs
  /// then outputs). This is the node order of the parameter network.
  std::vector<ConceptRef> distinct_concepts() const {
    std::vector<ConceptRef> out;
    std::set<ConceptRef> seen;
    for (const Operation& op : operations_) {
      for (const ConceptRef& c : op.inputs)
        if (seen.insert(c).second) out.push_back(c);
      for (const ConceptRef& c : op.outputs)
        if (seen.insert(c).second) out.push_back(c);
    }
    return out;
  }

  /// Throws unless every concept reference resolves against the registry.
  void validate_against(const OntologyRegistry& onts) const {
    for (const Operation& op : operations_) {
      for (const ConceptRef& c : op.inputs) onts.resolve(c);
      for (const ConceptRef& c : op.outputs) onts.resolve(c);
    }
  }

  bool operator==(const Collection& o) const { return services_ == o.services_; }

 private:
  std::vector<Service> services_;
  std::vector<Operation> operations_;
};

/// Parses the collection file format:
///   {"services":[{"name":"s","operations":[{"name":"o","inputs":["ont#C",...],
///    "outputs":["ont#C",...]}]}]}
inline Collection load_collection(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid collection JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("services") || !doc["services"].is_array())
    throw ParseError("collection file: missing array field 'services'");

  const auto parse_refs = [](const nlohmann::json& arr, const char* field) {
    std::vector<ConceptRef> refs;
    for (const auto& r : arr) {
      if (!r.is_string())
        throw ParseError(std::string("collection file: '") + field + "' entries must be strings");
      refs.push_back(ConceptRef::parse(r.get<std::string>()));
    }
    return refs;
  };

  std::vector<Service> services;
  for (const auto& s : doc["services"]) {
    if (!s.is_object() || !s.contains("name") || !s["name"].is_string())
      throw ParseError("collection file: service missing string field 'name'");
    Service service;
    service.name = s["name"].get<std::string>();
    if (s.contains("operations")) {
      if (!s["operations"].is_array())
        throw ParseError("collection file: 'operations' must be an array");
      for (const auto& o : s["operations"]) {
        if (!o.is_object() || !o.contains("name") || !o["name"].is_string())
          throw ParseError("collection file: operation missing string field 'name'");
        Operation op;
        op.service = service.name;
        op.name = o["name"].get<std::string>();
        if (o.contains("inputs")) op.inputs = parse_refs(o["inputs"], "inputs");
        if (o.contains("outputs")) op.outputs = parse_refs(o["outputs"], "outputs");
        service.operations.push_back(std::move(op));
      }
    }
    services.push_back(std::move(service));
  }
  return Collection(std::move(services));
}

/// Canonical serialization; load_collection(serialize_collection(c)) == c and
/// the canonical form is a serialization fixed point.
inline std::string serialize_collection(const Collection& coll) {
  nlohmann::ordered_json doc;
  auto& services = doc["services"] = nlohmann::ordered_json::array();
  for (const Service& s : coll.services()) {
    nlohmann::ordered_json js;
    js["name"] = s.name;
    auto& ops = js["operations"] = nlohmann::ordered_json::array();
    for (const Operation& op : s.operations) {
      nlohmann::ordered_json jo;
      jo["name"] = op.name;
      auto& in = jo["inputs"] = nlohmann::ordered_json::array();
      for (const ConceptRef& c : op.inputs) in.push_back(c.str());
      auto& out = jo["outputs"] = nlohmann::ordered_json::array();
      for (const ConceptRef& c : op.outputs) out.push_back(c.str());
      ops.push_back(std::move(jo));
    }
    services.push_back(std::move(js));
  }
  return doc.dump(2) + "\n";
}

}  // namespace svcnet
