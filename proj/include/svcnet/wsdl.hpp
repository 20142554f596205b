#pragma once

#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "svcnet/error.hpp"
#include "svcnet/service_model.hpp"

namespace svcnet {

struct WsdlImportReport {
  std::size_t files = 0;
  std::size_t services = 0;
  std::size_t operations_imported = 0;
  std::size_t operations_rejected = 0;  // zero annotated parts on both sides
  std::size_t parts_skipped = 0;        // parts without a modelReference
  std::vector<std::string> warnings;
};

namespace detail {

inline constexpr std::string_view kWsdlNs = "http://schemas.xmlsoap.org/wsdl/";
inline constexpr std::string_view kSawsdlNs = "http://www.w3.org/ns/sawsdl";
inline constexpr std::string_view kXsdNs = "http://www.w3.org/2001/XMLSchema";

/// property_tree keeps qualified names verbatim; this view resolves element
/// and attribute names against the in-scope xmlns declarations.
struct XmlElem {
  std::string ns, local;
  std::map<std::pair<std::string, std::string>, std::string> attrs;  // (ns, local) -> value
  std::vector<XmlElem> children;

  const std::string* attr(std::string_view ns_, std::string_view local_) const {
    const auto it = attrs.find({std::string(ns_), std::string(local_)});
    return it == attrs.end() ? nullptr : &it->second;
  }

  std::vector<const XmlElem*> find_all(std::string_view ns_, std::string_view local_) const {
    std::vector<const XmlElem*> out;
    for (const XmlElem& c : children)
      if (c.ns == ns_ && c.local == local_) out.push_back(&c);
    return out;
  }

  const XmlElem* find_first(std::string_view ns_, std::string_view local_) const {
    for (const XmlElem& c : children)
      if (c.ns == ns_ && c.local == local_) return &c;
    return nullptr;
  }
};

inline std::pair<std::string, std::string> split_qname(const std::string& qname) {
  const auto pos = qname.find(':');
  if (pos == std::string::npos) return {"", qname};
  return {qname.substr(0, pos), qname.substr(pos + 1)};
}

inline void build_resolved(const std::string& qname, const boost::property_tree::ptree& node,
                           std::map<std::string, std::string> scope, XmlElem& out) {
  // Collect xmlns declarations first; they apply to this element's own name.
  if (const auto attrs = node.get_child_optional("<xmlattr>")) {
    for (const auto& [name, value] : *attrs) {
      if (name == "xmlns")
        scope[""] = value.data();
      else if (name.rfind("xmlns:", 0) == 0)
        scope[name.substr(6)] = value.data();
    }
  }
  const auto [prefix, local] = split_qname(qname);
  out.local = local;
  const auto nsit = scope.find(prefix);
  out.ns = nsit == scope.end() ? "" : nsit->second;

  if (const auto attrs = node.get_child_optional("<xmlattr>")) {
    for (const auto& [name, value] : *attrs) {
      if (name == "xmlns" || name.rfind("xmlns:", 0) == 0) continue;
      const auto [aprefix, alocal] = split_qname(name);
      // Per XML namespaces, unprefixed attributes carry no namespace.
      std::string ans;
      if (!aprefix.empty()) {
        const auto it = scope.find(aprefix);
        ans = it == scope.end() ? "" : it->second;
      }
      out.attrs[{ans, alocal}] = value.data();
    }
  }
  for (const auto& [name, child] : node) {
    if (name == "<xmlattr>" || name == "<xmltext>" || name == "<xmlcomment>") continue;
    XmlElem ce;
    build_resolved(name, child, scope, ce);
    out.children.push_back(std::move(ce));
  }
}

inline XmlElem parse_xml(std::string_view text, std::string_view source_name) {
  boost::property_tree::ptree tree;
  std::istringstream in{std::string(text)};
  try {
    boost::property_tree::read_xml(in, tree);
  } catch (const boost::property_tree::xml_parser_error& e) {
    throw ParseError("malformed XML in " + std::string(source_name) + ": " + e.message());
  }
  for (const auto& [name, child] : tree) {
    if (name == "<xmlcomment>") continue;
    XmlElem root;
    build_resolved(name, child, {}, root);
    return root;
  }
  throw ParseError("malformed XML in " + std::string(source_name) + ": no root element");
}

/// First whitespace-separated token of a modelReference value, mapped to a
/// ConceptRef by splitting the IRI at its fragment.
inline ConceptRef concept_from_model_reference(const std::string& value,
                                               std::string_view source_name,
                                               std::vector<std::string>& warnings) {
  std::istringstream tokens(value);
  std::string iri, extra;
  tokens >> iri;
  if (tokens >> extra)
    warnings.push_back(std::string(source_name) + ": modelReference lists several IRIs; using '" +
                       iri + "'");
  const auto pos = iri.find('#');
  if (pos == std::string::npos || pos == 0 || pos + 1 == iri.size())
    throw ParseError("modelReference IRI '" + iri + "' in " + std::string(source_name) +
                     " has no usable fragment");
  return {iri.substr(0, pos), iri.substr(pos + 1)};
}

struct WsdlPart {
  std::string name;
  std::optional<std::string> model_reference;
  std::optional<std::string> element_ref;  // local name of a referenced element decl
};

}  // namespace detail

/// Imports the restricted WSDL 1.1 + SAWSDL subset: portType operations whose
/// message parts (or the element declarations they point at) carry
/// sawsdl:modelReference annotations. One Service per portType. Parts without
/// an annotation are skipped and counted; operations with no annotated part
/// on either side are rejected and counted.
inline std::vector<Service> import_wsdl(std::string_view xml_text, WsdlImportReport& report,
                                        std::string_view source_name = "wsdl") {
  using namespace detail;
  const XmlElem root = parse_xml(xml_text, source_name);
  if (root.ns != kWsdlNs || root.local != "definitions")
    throw ParseError(std::string(source_name) + ": root element is not a WSDL 1.1 definitions");

  // Element declarations (any depth under types) with a modelReference.
  std::map<std::string, std::string> element_refs;
  const auto scan_elements = [&](const XmlElem& elem, const auto& self) -> void {
    if (elem.ns == kXsdNs && elem.local == "element") {
      const std::string* name = elem.attr("", "name");
      const std::string* mr = elem.attr(kSawsdlNs, "modelReference");
      if (name && mr) element_refs.emplace(*name, *mr);
    }
    for (const XmlElem& c : elem.children) self(c, self);
  };
  for (const XmlElem* types : root.find_all(kWsdlNs, "types")) scan_elements(*types, scan_elements);

  // Messages: name -> parts.
  std::map<std::string, std::vector<WsdlPart>> messages;
  for (const XmlElem* message : root.find_all(kWsdlNs, "message")) {
    const std::string* name = message->attr("", "name");
    if (!name) throw ParseError(std::string(source_name) + ": message without a name");
    std::vector<WsdlPart> parts;
    for (const XmlElem* part : message->find_all(kWsdlNs, "part")) {
      WsdlPart p;
      if (const std::string* pn = part->attr("", "name")) p.name = *pn;
      if (const std::string* mr = part->attr(kSawsdlNs, "modelReference")) p.model_reference = *mr;
      if (const std::string* el = part->attr("", "element"))
        p.element_ref = split_qname(*el).second;
      parts.push_back(std::move(p));
    }
    messages.emplace(*name, std::move(parts));
  }

  const auto concepts_of = [&](const XmlElem* io, const std::string& op_name)
      -> std::vector<ConceptRef> {
    std::vector<ConceptRef> refs;
    if (!io) return refs;
    const std::string* message_qname = io->attr("", "message");
    if (!message_qname)
      throw ParseError(std::string(source_name) + ": operation '" + op_name +
                       "' input/output without a message attribute");
    const std::string message_name = split_qname(*message_qname).second;
    const auto it = messages.find(message_name);
    if (it == messages.end())
      throw ParseError(std::string(source_name) + ": operation '" + op_name +
                       "' references unknown message '" + message_name + "'");
    for (const WsdlPart& part : it->second) {
      std::optional<std::string> mr = part.model_reference;
      if (!mr && part.element_ref) {
        const auto el = element_refs.find(*part.element_ref);
        if (el != element_refs.end()) mr = el->second;
      }
      if (!mr) {
        ++report.parts_skipped;
        report.warnings.push_back(std::string(source_name) + ": part '" + part.name +
                                  "' of message '" + message_name + "' has no modelReference");
        continue;
      }
      refs.push_back(concept_from_model_reference(*mr, source_name, report.warnings));
    }
    return refs;
  };

  std::vector<Service> services;
  for (const XmlElem* port_type : root.find_all(kWsdlNs, "portType")) {
    const std::string* pt_name = port_type->attr("", "name");
    if (!pt_name) throw ParseError(std::string(source_name) + ": portType without a name");
    Service service;
    service.name = *pt_name;
    std::set<std::string> seen_ops;
    for (const XmlElem* operation : port_type->find_all(kWsdlNs, "operation")) {
      const std::string* op_name = operation->attr("", "name");
      if (!op_name)
        throw ParseError(std::string(source_name) + ": operation without a name in portType '" +
                         *pt_name + "'");
      if (!seen_ops.insert(*op_name).second)
        throw ValidationError(std::string(source_name) + ": duplicate operation '" + *op_name +
                              "' in portType '" + *pt_name + "'");
      Operation op;
      op.service = service.name;
      op.name = *op_name;
      op.inputs = concepts_of(operation->find_first(kWsdlNs, "input"), *op_name);
      op.outputs = concepts_of(operation->find_first(kWsdlNs, "output"), *op_name);
      if (op.inputs.empty() && op.outputs.empty()) {
        ++report.operations_rejected;
        report.warnings.push_back(std::string(source_name) + ": operation '" + *op_name +
                                  "' has no annotated part on either side; rejected");
        continue;
      }
      ++report.operations_imported;
      service.operations.push_back(std::move(op));
    }
    ++report.services;
    services.push_back(std::move(service));
  }
  return services;
}

}  // namespace svcnet
