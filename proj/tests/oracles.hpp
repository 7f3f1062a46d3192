#pragma once

// Independent reference implementations used to cross-check the library.
// Everything here works on plain strings or naive data structures and shares
// no code with the implementation under test.

#include <map>
#include <set>
#include <string>
#include <vector>

#include <flow/term.hpp>

namespace oracle {

// Structural form of a term with entries sorted as strings. Distinct terms
// get distinct strings; equal terms get equal strings.
inline std::string str(const flow::term_store& s, flow::term_id t) {
  const flow::term_data& td = s.at(t);
  switch (td.kind) {
    case flow::term_kind::zero:
      return "Z";
    case flow::term_kind::one:
      return "U";
    case flow::term_kind::omega:
      return "W" + std::to_string(td.omega_index);
    case flow::term_kind::node: {
      std::vector<std::string> es;
      for (const flow::term_entry& e : td.entries)
        es.push_back(str(s, e.arg) + ">" + str(s, e.image));
      std::sort(es.begin(), es.end());
      std::string r = "{";
      for (std::size_t i = 0; i < es.size(); ++i) {
        if (i) r += ",";
        r += es[i];
      }
      return r + "}";
    }
  }
  return "?";
}

namespace detail {

inline std::string render(std::vector<std::pair<std::string, std::string>> g) {
  std::vector<std::string> es;
  for (auto& [a, b] : g) es.push_back(a + ">" + b);
  std::sort(es.begin(), es.end());
  std::string r = "{";
  for (std::size_t i = 0; i < es.size(); ++i) {
    if (i) r += ",";
    r += es[i];
  }
  return r + "}";
}

inline void assign(const std::vector<std::string>& base,
                   const std::vector<std::string>& args, std::size_t pos,
                   std::vector<std::pair<std::string, std::string>>& cur,
                   std::set<std::string>& out) {
  if (pos == args.size()) {
    out.insert(render(cur));
    return;
  }
  for (const std::string& img : base) {
    cur.push_back({args[pos], img});
    assign(base, args, pos + 1, cur, out);
    cur.pop_back();
  }
}

inline void choose(const std::vector<std::string>& base, std::size_t start,
                   unsigned width, std::vector<std::string>& args,
                   std::set<std::string>& out) {
  std::vector<std::pair<std::string, std::string>> cur;
  assign(base, args, 0, cur, out);
  if (args.size() == width) return;
  for (std::size_t i = start; i < base.size(); ++i) {
    args.push_back(base[i]);
    choose(base, i + 1, width, args, out);
    args.pop_back();
  }
}

}  // namespace detail

// All hereditary graph terms of nesting depth <= depth with at most `width`
// arguments per graph, as structural strings. Pure string recursion.
inline std::set<std::string> universe(unsigned depth, unsigned width) {
  std::set<std::string> all = {"{}"};
  for (unsigned d = 1; d <= depth; ++d) {
    std::vector<std::string> base(all.begin(), all.end());
    std::set<std::string> produced;
    std::vector<std::string> args;
    detail::choose(base, 0, width, args, produced);
    all.insert(produced.begin(), produced.end());
  }
  return all;
}

}  // namespace oracle

// Catch-style helper for asserting a flow::error with a specific code.
#define REQUIRE_FLOW_ERROR(expr, expected)                      \
  do {                                                          \
    bool caught_ = false;                                       \
    try {                                                       \
      (void)(expr);                                             \
    } catch (const flow::error& e_) {                           \
      caught_ = true;                                           \
      REQUIRE(e_.code == (expected));                           \
    }                                                           \
    REQUIRE(caught_);                                           \
  } while (0)
