#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "atoms.hpp"
#include "term.hpp"

namespace flow {

// Diagram rendering. One cluster rectangle per term, its label at the top
// left; inside, one node per supported argument with an arrow to its image,
// a circular self-arrow when the image is the argument itself. Images the
// term does not act on sit outside the rectangle, and the empty term is
// never drawn. The label of the rendered term itself carries no arrow; the
// self entry is implicit.
//
// depth controls nesting: at depth one every member is a plain label, at
// greater depths a member with no name of its own is rendered as a nested
// rectangle showing its internal structure.
struct dot_options {
  unsigned depth = 1;
  const brick* atoms = nullptr;  // names alpha/abar members when given
};

namespace detail {

struct dot_state {
  term_store& s;
  const dot_options& opt;
  std::string body;                       // node and cluster declarations
  std::vector<std::string> outside;       // image-only node declarations
  std::map<term_id, std::string> anchor;  // edge endpoint node per term
  std::map<term_id, std::string> cluster; // set when rendered as a cluster
  std::map<term_id, std::string> letters;
  // clusters in closing order; edges are generated only after every member
  // of every rectangle has its node, so an image is declared outside exactly
  // when nothing in the whole diagram acts on it
  std::vector<std::pair<term_id, std::vector<term_id>>> closed;
  unsigned n_nodes = 0;
  unsigned n_clusters = 0;
  unsigned n_letters = 0;

  std::string next_letter() {
    static const char* pool = "abcdeghijklmopqrstuvwxyz";  // f is the top label
    if (n_letters < 24) return std::string(1, pool[n_letters++]);
    return "t" + std::to_string(n_letters++);
  }

  bool named(term_id t) const {
    switch (s.kind(t)) {
      case term_kind::zero:
      case term_kind::one:
      case term_kind::omega:
        return true;
      case term_kind::node:
        break;
    }
    if (s.phi_index(t) >= 0) return true;
    return opt.atoms && opt.atoms->index_of(t).has_value();
  }

  std::string label_of(term_id t) {
    switch (s.kind(t)) {
      case term_kind::zero: return "zero";
      case term_kind::one: return "one";
      case term_kind::omega: return "omega " + std::to_string(s.at(t).omega_index);
      case term_kind::node: break;
    }
    if (s.phi_index(t) >= 0) return "phi " + std::to_string(s.phi_index(t));
    if (opt.atoms) {
      // conjugate pairs sit in adjacent slots, the bar variant at the odd one
      const std::vector<term_id>& as = opt.atoms->atoms;
      for (std::size_t i = 0; i < as.size(); ++i)
        if (as[i] == t)
          return (i % 2 ? "abar " : "alpha ") + std::to_string(opt.atoms->indices[i]);
    }
    auto it = letters.find(t);
    if (it != letters.end()) return it->second;
    return letters.emplace(t, next_letter()).first->second;
  }

  std::string declare_node(term_id t, const std::string& indent) {
    std::string id = "n" + std::to_string(n_nodes++);
    anchor[t] = id;
    body += indent + id + " [label=\"" + label_of(t) + "\"];\n";
    return id;
  }

  // Renders the cluster for t and returns the anchor node used for edges
  // that go to or from the cluster as a whole.
  std::string emit_cluster(term_id t, const std::string& top_label,
                           const std::string& indent, unsigned depth_left) {
    std::string cname = "cluster_" + std::to_string(n_clusters++);
    cluster[t] = cname;
    body += indent + "subgraph " + cname + " {\n";
    std::string in = indent + "  ";
    body += in + "label=\"" + top_label + "\";\n";
    body += in + "labeljust=\"l\";\n";
    if (s.kind(t) == term_kind::one) {
      body += in + "style=\"filled\";\n";
      body += in + "fillcolor=\"black\";\n";
    }

    std::string first_anchor;
    if (s.kind(t) == term_kind::node) {
      std::vector<term_id> members = s.support(t);
      s.canonical_sort(members);
      for (term_id m : members) {
        std::string a;
        if (depth_left > 1 && !named(m))
          a = emit_cluster(m, label_of(m), in, depth_left - 1);
        else
          a = declare_node(m, in);
        anchor[m] = a;
        if (first_anchor.empty()) first_anchor = a;
      }
      body += indent + "}\n";
      closed.emplace_back(t, std::move(members));
    } else {
      body += indent + "}\n";
    }
    return first_anchor.empty() ? std::string("n_" + cname) : first_anchor;
  }

  // One arrow per supported argument, rectangles in closing order, arguments
  // in the same canonical order as their declarations.
  std::vector<std::string> collect_edges() {
    std::vector<std::string> edges;
    for (const auto& [t, members] : closed) {
      for (term_id m : members) {
        term_id img = s.eval(t, m);
        if (anchor.find(img) == anchor.end()) {
          std::string id = "n" + std::to_string(n_nodes++);
          anchor[img] = id;
          outside.push_back("  " + id + " [label=\"" + label_of(img) + "\"];\n");
        }
        std::string e = "  " + anchor[m] + " -> " + anchor[img];
        std::vector<std::string> attrs;
        auto ct = cluster.find(m);
        if (ct != cluster.end()) attrs.push_back("ltail=" + ct->second);
        ct = cluster.find(img);
        if (ct != cluster.end()) attrs.push_back("lhead=" + ct->second);
        if (!attrs.empty()) {
          e += " [" + attrs[0];
          for (std::size_t i = 1; i < attrs.size(); ++i) e += ", " + attrs[i];
          e += "]";
        }
        edges.push_back(e + ";\n");
      }
    }
    return edges;
  }
};

}  // namespace detail

inline std::string render_dot(term_store& s, term_id t, const dot_options& opt = {}) {
  if (opt.depth < 1 || opt.depth > 6)
    raise(errc::bound_too_large, "diagram depth must be between 1 and 6");
  detail::dot_state st{s, opt};
  std::string top;
  if (st.named(t))
    top = st.label_of(t);
  else
    top = "f";
  st.emit_cluster(t, top, "  ", opt.depth);
  std::vector<std::string> edges = st.collect_edges();

  std::string out = "digraph flow {\n";
  out += "  compound=true;\n";
  out += "  rankdir=LR;\n";
  out += "  node [shape=plaintext];\n";
  out += st.body;
  for (const std::string& line : st.outside) out += line;
  for (const std::string& line : edges) out += line;
  out += "}\n";
  return out;
}

}  // namespace flow
