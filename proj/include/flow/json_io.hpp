#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "term.hpp"

namespace flow {

// Versioned JSON documents. Terms serialize as a topologically ordered node
// list with document-local ids, children before parents, the root last:
//
//   {"version":1,
//    "nodes":[{"id":0,"kind":"node","entries":[]}, ...,
//             {"id":3,"kind":"omega","index":1}],
//    "root":7}
//
// Absent arguments encode the empty image, so no entry ever names the empty
// term; a document that does is malformed, not merely unusual.

inline std::string serialize(term_store& s, term_id root) {
  std::unordered_map<term_id, std::uint32_t> local;
  std::vector<term_id> order;
  std::vector<std::pair<term_id, std::size_t>> stack = {{root, 0}};
  while (!stack.empty()) {
    auto& [t, next] = stack.back();
    if (local.count(t)) {
      stack.pop_back();
      continue;
    }
    if (s.kind(t) == term_kind::node) {
      const term_graph& g = s.at(t).entries;
      if (next < 2 * g.size()) {
        const term_entry& e = g[next / 2];
        term_id child = next % 2 ? e.image : e.arg;
        ++next;
        if (!local.count(child)) stack.push_back({child, 0});
        continue;
      }
    }
    local.emplace(t, static_cast<std::uint32_t>(order.size()));
    order.push_back(t);
    stack.pop_back();
  }

  nlohmann::json nodes = nlohmann::json::array();
  for (term_id t : order) {
    nlohmann::json n;
    n["id"] = local.at(t);
    switch (s.kind(t)) {
      case term_kind::zero: n["kind"] = "zero"; break;
      case term_kind::one: n["kind"] = "one"; break;
      case term_kind::omega:
        n["kind"] = "omega";
        n["index"] = s.at(t).omega_index;
        break;
      case term_kind::node: {
        n["kind"] = "node";
        nlohmann::json es = nlohmann::json::array();
        for (const term_entry& e : s.at(t).entries)
          es.push_back({local.at(e.arg), local.at(e.image)});
        n["entries"] = std::move(es);
        break;
      }
    }
    nodes.push_back(std::move(n));
  }
  nlohmann::json doc;
  doc["version"] = 1;
  doc["nodes"] = std::move(nodes);
  doc["root"] = local.at(root);
  return doc.dump();
}

inline term_id deserialize(term_store& s, const std::string& text) {
  nlohmann::json doc = nlohmann::json::parse(text, nullptr, false);
  if (doc.is_discarded() || !doc.is_object())
    raise(errc::malformed_document, "the document is not a JSON object");
  if (!doc.contains("version") || !doc["version"].is_number_integer())
    raise(errc::malformed_document, "the document has no integer version");
  if (doc["version"].get<std::int64_t>() != 1)
    raise(errc::version_mismatch,
          "document version " + doc["version"].dump() + "; this build reads version 1");
  if (!doc.contains("nodes") || !doc["nodes"].is_array())
    raise(errc::malformed_document, "the document has no nodes array");
  if (!doc.contains("root") || !doc["root"].is_number_unsigned())
    raise(errc::malformed_document, "the document has no root id");

  std::unordered_map<std::uint64_t, term_id> by_id;
  auto resolve = [&](const nlohmann::json& v, const char* what) -> term_id {
    if (!v.is_number_unsigned())
      raise(errc::malformed_document, std::string(what) + " is not an id");
    auto it = by_id.find(v.get<std::uint64_t>());
    if (it == by_id.end())
      raise(errc::malformed_document,
            std::string(what) + " " + v.dump() + " does not name an earlier node");
    return it->second;
  };

  for (const nlohmann::json& n : doc["nodes"]) {
    if (!n.is_object() || !n.contains("id") || !n["id"].is_number_unsigned() ||
        !n.contains("kind") || !n["kind"].is_string())
      raise(errc::malformed_document, "every node needs an id and a kind");
    std::uint64_t id = n["id"].get<std::uint64_t>();
    if (by_id.count(id))
      raise(errc::malformed_document, "node id " + std::to_string(id) + " repeats");
    std::string kind = n["kind"].get<std::string>();
    term_id t;
    if (kind == "zero") {
      t = s.zero();
    } else if (kind == "one") {
      t = s.one();
    } else if (kind == "omega") {
      if (!n.contains("index") || !n["index"].is_number_unsigned())
        raise(errc::malformed_document, "an omega node needs an index");
      t = s.omega(n["index"].get<std::uint32_t>());
    } else if (kind == "node") {
      if (!n.contains("entries") || !n["entries"].is_array())
        raise(errc::malformed_document, "a graph node needs an entries array");
      term_graph g;
      for (const nlohmann::json& e : n["entries"]) {
        if (!e.is_array() || e.size() != 2)
          raise(errc::malformed_document, "an entry is an [argument, image] pair");
        term_id arg = resolve(e[0], "an entry argument");
        term_id img = resolve(e[1], "an entry image");
        if (img == s.zero())
          raise(errc::malformed_document,
                "an entry image is the empty term; absence encodes it");
        g.push_back({arg, img});
      }
      try {
        t = s.node(std::move(g));
      } catch (const error& err) {
        if (err.code == errc::invalid_entry || err.code == errc::cyclic_reference)
          raise(errc::malformed_document, std::string("invalid graph: ") + err.what());
        throw;
      }
    } else {
      raise(errc::malformed_document, "unknown node kind '" + kind + "'");
    }
    by_id.emplace(id, t);
  }
  return resolve(doc["root"], "the root");
}

}  // namespace flow
