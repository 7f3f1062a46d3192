#pragma once

#include <cctype>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "atoms.hpp"
#include "calculus.hpp"
#include "ordinals.hpp"

namespace flow {

// Surface syntax for terms. Literals name the distinguished constants, graph
// literals spell out an argument-to-image table, builder calls wrap the
// calculus operations, and let-bindings name intermediate results:
//
//   expr    := "let" IDENT "=" expr "in" expr | primary
//   primary := "zero" | "one" | "phi" NUM | "omega" NUM
//            | "alpha" NUM | "abar" NUM
//            | "{" [expr "->" expr ("," expr "->" expr)*] "}"
//            | NAME "(" expr ("," expr)* ")"      for the builder names
//            | IDENT | "(" expr ")"

struct texpr {
  enum class kind {
    zero,
    one,
    phi,
    omega,
    alpha,
    abar,
    graph,
    call,
    let,
    ref,
  };
  kind k = kind::zero;
  unsigned num = 0;                                   // phi/omega/alpha/abar
  std::string name;                                   // call/let/ref
  std::vector<texpr> args;                            // call args, let [value, body]
  std::vector<std::pair<texpr, texpr>> entries;       // graph
};

namespace detail {

struct texpr_token {
  enum class kind { ident, number, lbrace, rbrace, lparen, rparen, comma, arrow, eq, end };
  kind k;
  std::string text;
  unsigned num = 0;
  std::size_t pos = 0;
};

inline std::vector<texpr_token> lex_texpr(const std::string& src) {
  std::vector<texpr_token> out;
  std::size_t i = 0;
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t at = i;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_'))
        ++j;
      out.push_back({texpr_token::kind::ident, src.substr(i, j - i), 0, at});
      i = j;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      unsigned long v = 0;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) {
        v = v * 10 + static_cast<unsigned long>(src[j] - '0');
        if (v > 1000000)
          raise(errc::syntax_error, "number too large at position " + std::to_string(at));
        ++j;
      }
      out.push_back({texpr_token::kind::number, src.substr(i, j - i),
                     static_cast<unsigned>(v), at});
      i = j;
      continue;
    }
    switch (c) {
      case '{': out.push_back({texpr_token::kind::lbrace, "{", 0, at}); ++i; continue;
      case '}': out.push_back({texpr_token::kind::rbrace, "}", 0, at}); ++i; continue;
      case '(': out.push_back({texpr_token::kind::lparen, "(", 0, at}); ++i; continue;
      case ')': out.push_back({texpr_token::kind::rparen, ")", 0, at}); ++i; continue;
      case ',': out.push_back({texpr_token::kind::comma, ",", 0, at}); ++i; continue;
      case '=': out.push_back({texpr_token::kind::eq, "=", 0, at}); ++i; continue;
      case '-':
        if (i + 1 < src.size() && src[i + 1] == '>') {
          out.push_back({texpr_token::kind::arrow, "->", 0, at});
          i += 2;
          continue;
        }
        raise(errc::syntax_error, "stray '-' at position " + std::to_string(at));
      default:
        raise(errc::syntax_error, std::string("unexpected character '") + c +
                                      "' at position " + std::to_string(at));
    }
  }
  out.push_back({texpr_token::kind::end, "", 0, src.size()});
  return out;
}

inline bool texpr_builder_name(const std::string& w, std::size_t& arity) {
  if (w == "compose" || w == "pair") {
    arity = 2;
    return true;
  }
  if (w == "succ" || w == "power" || w == "fullpower" || w == "union" || w == "kernel") {
    arity = 1;
    return true;
  }
  return false;
}

inline bool texpr_reserved(const std::string& w) {
  std::size_t arity = 0;
  return w == "zero" || w == "one" || w == "phi" || w == "omega" || w == "alpha" ||
         w == "abar" || w == "let" || w == "in" || texpr_builder_name(w, arity);
}

struct texpr_parser {
  const std::vector<texpr_token>& ts;
  std::size_t i = 0;

  const texpr_token& peek() const { return ts[i]; }
  const texpr_token& take() { return ts[i++]; }

  [[noreturn]] void fail(const std::string& want) {
    const texpr_token& t = peek();
    std::string got = t.k == texpr_token::kind::end ? "end of input" : "'" + t.text + "'";
    raise(errc::syntax_error,
          "expected " + want + ", got " + got + " at position " + std::to_string(t.pos));
  }

  void expect(texpr_token::kind k, const char* what) {
    if (peek().k != k) fail(what);
    take();
  }

  unsigned number(const char* what) {
    if (peek().k != texpr_token::kind::number) fail(what);
    return take().num;
  }

  texpr parse() {
    if (peek().k == texpr_token::kind::ident && peek().text == "let") {
      take();
      if (peek().k != texpr_token::kind::ident || texpr_reserved(peek().text))
        fail("a binding name");
      texpr e;
      e.k = texpr::kind::let;
      e.name = take().text;
      expect(texpr_token::kind::eq, "'='");
      e.args.push_back(parse());
      if (peek().k != texpr_token::kind::ident || peek().text != "in") fail("'in'");
      take();
      e.args.push_back(parse());
      return e;
    }
    return primary();
  }

  texpr primary() {
    const texpr_token& t = peek();
    if (t.k == texpr_token::kind::lparen) {
      take();
      texpr e = parse();
      expect(texpr_token::kind::rparen, "')'");
      return e;
    }
    if (t.k == texpr_token::kind::lbrace) {
      take();
      texpr e;
      e.k = texpr::kind::graph;
      if (peek().k != texpr_token::kind::rbrace) {
        while (true) {
          texpr arg = parse();
          expect(texpr_token::kind::arrow, "'->'");
          texpr img = parse();
          e.entries.emplace_back(std::move(arg), std::move(img));
          if (peek().k != texpr_token::kind::comma) break;
          take();
        }
      }
      expect(texpr_token::kind::rbrace, "'}'");
      return e;
    }
    if (t.k != texpr_token::kind::ident) fail("a term");
    std::string w = take().text;
    texpr e;
    if (w == "zero") {
      e.k = texpr::kind::zero;
      return e;
    }
    if (w == "one") {
      e.k = texpr::kind::one;
      return e;
    }
    if (w == "phi" || w == "omega" || w == "alpha" || w == "abar") {
      e.k = w == "phi"     ? texpr::kind::phi
            : w == "omega" ? texpr::kind::omega
            : w == "alpha" ? texpr::kind::alpha
                           : texpr::kind::abar;
      e.num = number("an index");
      return e;
    }
    std::size_t arity = 0;
    if (texpr_builder_name(w, arity)) {
      e.k = texpr::kind::call;
      e.name = w;
      expect(texpr_token::kind::lparen, "'('");
      for (std::size_t n = 0; n < arity; ++n) {
        if (n) expect(texpr_token::kind::comma, "','");
        e.args.push_back(parse());
      }
      expect(texpr_token::kind::rparen, "')'");
      return e;
    }
    if (w == "let" || w == "in") fail("a term");
    e.k = texpr::kind::ref;
    e.name = w;
    return e;
  }
};

}  // namespace detail

inline texpr parse_term_expr(const std::string& src) {
  std::vector<detail::texpr_token> ts = detail::lex_texpr(src);
  detail::texpr_parser p{ts};
  texpr e = p.parse();
  if (p.peek().k != detail::texpr_token::kind::end) p.fail("end of input");
  return e;
}

inline std::string print_term_expr(const texpr& e) {
  switch (e.k) {
    case texpr::kind::zero: return "zero";
    case texpr::kind::one: return "one";
    case texpr::kind::phi: return "phi " + std::to_string(e.num);
    case texpr::kind::omega: return "omega " + std::to_string(e.num);
    case texpr::kind::alpha: return "alpha " + std::to_string(e.num);
    case texpr::kind::abar: return "abar " + std::to_string(e.num);
    case texpr::kind::graph: {
      std::string out = "{";
      for (std::size_t i = 0; i < e.entries.size(); ++i) {
        if (i) out += ", ";
        out += print_term_expr(e.entries[i].first) + " -> " +
               print_term_expr(e.entries[i].second);
      }
      return out + "}";
    }
    case texpr::kind::call: {
      std::string out = e.name + "(";
      for (std::size_t i = 0; i < e.args.size(); ++i) {
        if (i) out += ", ";
        out += print_term_expr(e.args[i]);
      }
      return out + ")";
    }
    case texpr::kind::let:
      return "let " + e.name + " = " + print_term_expr(e.args[0]) + " in " +
             print_term_expr(e.args[1]);
    case texpr::kind::ref: return e.name;
  }
  return {};
}

// Elaboration turns surface syntax into interned terms. Atom references share
// one brick, built on first use; the phi chain is materialized, so its index
// stays small.
struct elab_env {
  term_store& s;
  unsigned brick_size = 2;
  std::optional<brick> atoms;
  std::vector<std::pair<std::string, term_id>> binds;

  const brick& the_brick() {
    if (!atoms) atoms = appropriate_brick(s, brick_size);
    return *atoms;
  }
};

inline term_id elaborate(elab_env& env, const texpr& e) {
  term_store& s = env.s;
  switch (e.k) {
    case texpr::kind::zero: return s.zero();
    case texpr::kind::one: return s.one();
    case texpr::kind::phi:
      if (e.num > 64)
        raise(errc::bound_too_large,
              "phi " + std::to_string(e.num) + " materializes the whole chain; keep the index at most 64");
      return s.phi(e.num);
    case texpr::kind::omega: return s.omega(e.num);
    case texpr::kind::alpha:
    case texpr::kind::abar: {
      if (e.num >= env.brick_size)
        raise(errc::elaboration_error,
              "atom index " + std::to_string(e.num) + " needs a brick of at least " +
                  std::to_string(e.num + 1) + " conjugate pairs");
      const brick& a = env.the_brick();
      return a.atoms[2 * e.num + (e.k == texpr::kind::abar ? 1 : 0)];
    }
    case texpr::kind::graph: {
      term_graph g;
      g.reserve(e.entries.size());
      for (const auto& [ae, ie] : e.entries) {
        term_id arg = elaborate(env, ae);
        term_id img = elaborate(env, ie);
        g.push_back({arg, img});
      }
      return s.node(std::move(g));
    }
    case texpr::kind::call: {
      std::vector<term_id> xs;
      for (const texpr& a : e.args) xs.push_back(elaborate(env, a));
      if (e.name == "compose") return compose(s, xs[0], xs[1]);
      if (e.name == "pair") return make_pair(s, xs[0], xs[1]);
      if (e.name == "succ") return successor(s, xs[0]);
      if (e.name == "power") return restricted_power(s, xs[0]);
      if (e.name == "fullpower") return full_power(s, xs[0]);
      if (e.name == "union") return arbitrary_union(s, xs[0]);
      if (e.name == "kernel") return kernel(s, xs[0]);
      raise(errc::elaboration_error, "unknown builder '" + e.name + "'");
    }
    case texpr::kind::let: {
      term_id v = elaborate(env, e.args[0]);
      env.binds.emplace_back(e.name, v);
      term_id out = elaborate(env, e.args[1]);
      env.binds.pop_back();
      return out;
    }
    case texpr::kind::ref: {
      for (auto it = env.binds.rbegin(); it != env.binds.rend(); ++it)
        if (it->first == e.name) return it->second;
      raise(errc::elaboration_error, "unbound name '" + e.name + "'");
    }
  }
  raise(errc::elaboration_error, "malformed surface tree");
}

inline term_id parse_term(term_store& s, const std::string& src, unsigned brick_size = 2) {
  elab_env env{s, brick_size};
  return elaborate(env, parse_term_expr(src));
}

// Canonical surface rendering of an interned term: named constants print by
// name, everything else spells out its graph.
inline std::string print_term(const term_store& s, term_id t) {
  switch (s.kind(t)) {
    case term_kind::zero: return "zero";
    case term_kind::one: return "one";
    case term_kind::omega: return "omega " + std::to_string(s.at(t).omega_index);
    case term_kind::node: break;
  }
  if (s.phi_index(t) >= 0) return "phi " + std::to_string(s.phi_index(t));
  std::string out = "{";
  const term_graph& g = s.at(t).entries;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (i) out += ", ";
    out += print_term(s, g[i].arg) + " -> " + print_term(s, g[i].image);
  }
  return out + "}";
}

}  // namespace flow
