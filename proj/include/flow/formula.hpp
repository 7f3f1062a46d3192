#pragma once

#include <cctype>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"

namespace flow {

// First-order formulas over membership and equality. The input language has
// two quantifier sorts, plain and set-sorted; the two translations retarget
// them at the atomic universe (atoms plus Levy Mengen, or Levy Mengen only)
// or at the hereditary pure sets.
enum class quant_sort : std::uint8_t { plain, sets, universe, menge, zf };

// Membership symbols: the untranslated one, the reading through the atomic
// model, and the reading through the pure-set model.
enum class mem_sort : std::uint8_t { plain, levy, zf };

struct fterm {
  enum class kind : std::uint8_t { var, empty_set, atom_set };
  kind k = kind::var;
  std::string name;  // variable name, empty for the constants
  friend bool operator==(const fterm&, const fterm&) = default;
};

inline fterm fvar(std::string name) { return {fterm::kind::var, std::move(name)}; }
inline fterm fempty() { return {fterm::kind::empty_set, {}}; }
inline fterm fatoms() { return {fterm::kind::atom_set, {}}; }

struct formula;
using formula_ptr = std::shared_ptr<const formula>;

struct formula {
  enum class kind : std::uint8_t {
    member, equal, lnot, land, lor, implies, iff, forall, exists
  };
  kind k = kind::equal;
  fterm lhs, rhs;               // member, equal
  mem_sort ms = mem_sort::plain;
  formula_ptr a, b;             // connectives: a alone for lnot
  std::string var;              // quantifiers
  quant_sort qs = quant_sort::plain;
};

inline formula_ptr f_member(fterm l, fterm r, mem_sort ms = mem_sort::plain) {
  auto f = std::make_shared<formula>();
  f->k = formula::kind::member;
  f->lhs = std::move(l);
  f->rhs = std::move(r);
  f->ms = ms;
  return f;
}

inline formula_ptr f_equal(fterm l, fterm r) {
  auto f = std::make_shared<formula>();
  f->k = formula::kind::equal;
  f->lhs = std::move(l);
  f->rhs = std::move(r);
  return f;
}

inline formula_ptr f_not(formula_ptr a) {
  auto f = std::make_shared<formula>();
  f->k = formula::kind::lnot;
  f->a = std::move(a);
  return f;
}

namespace detail {

inline formula_ptr f_binary(formula::kind k, formula_ptr a, formula_ptr b) {
  auto f = std::make_shared<formula>();
  f->k = k;
  f->a = std::move(a);
  f->b = std::move(b);
  return f;
}

}  // namespace detail

inline formula_ptr f_and(formula_ptr a, formula_ptr b) {
  return detail::f_binary(formula::kind::land, std::move(a), std::move(b));
}
inline formula_ptr f_or(formula_ptr a, formula_ptr b) {
  return detail::f_binary(formula::kind::lor, std::move(a), std::move(b));
}
inline formula_ptr f_implies(formula_ptr a, formula_ptr b) {
  return detail::f_binary(formula::kind::implies, std::move(a), std::move(b));
}
inline formula_ptr f_iff(formula_ptr a, formula_ptr b) {
  return detail::f_binary(formula::kind::iff, std::move(a), std::move(b));
}

inline formula_ptr f_quant(formula::kind k, std::string var, quant_sort qs,
                           formula_ptr body) {
  auto f = std::make_shared<formula>();
  f->k = k;
  f->var = std::move(var);
  f->qs = qs;
  f->a = std::move(body);
  return f;
}

inline formula_ptr f_forall(std::string var, quant_sort qs, formula_ptr body) {
  return f_quant(formula::kind::forall, std::move(var), qs, std::move(body));
}
inline formula_ptr f_exists(std::string var, quant_sort qs, formula_ptr body) {
  return f_quant(formula::kind::exists, std::move(var), qs, std::move(body));
}

inline bool same_formula(const formula_ptr& x, const formula_ptr& y) {
  if (x == y) return true;
  if (!x || !y) return false;
  if (x->k != y->k) return false;
  switch (x->k) {
    case formula::kind::member:
      return x->ms == y->ms && x->lhs == y->lhs && x->rhs == y->rhs;
    case formula::kind::equal:
      return x->lhs == y->lhs && x->rhs == y->rhs;
    case formula::kind::lnot:
      return same_formula(x->a, y->a);
    case formula::kind::land:
    case formula::kind::lor:
    case formula::kind::implies:
    case formula::kind::iff:
      return same_formula(x->a, y->a) && same_formula(x->b, y->b);
    case formula::kind::forall:
    case formula::kind::exists:
      return x->var == y->var && x->qs == y->qs && same_formula(x->a, y->a);
  }
  return false;
}

// Rename a free variable. Binders for the same name shadow it, so the walk
// stops below them; binders for the new name cannot capture because callers
// only rename to fresh names.
inline formula_ptr rename_free(const formula_ptr& f, const std::string& from,
                               const std::string& to) {
  auto ren = [&](const fterm& t) {
    if (t.k == fterm::kind::var && t.name == from) return fvar(to);
    return t;
  };
  switch (f->k) {
    case formula::kind::member:
      return f_member(ren(f->lhs), ren(f->rhs), f->ms);
    case formula::kind::equal:
      return f_equal(ren(f->lhs), ren(f->rhs));
    case formula::kind::lnot:
      return f_not(rename_free(f->a, from, to));
    case formula::kind::land:
    case formula::kind::lor:
    case formula::kind::implies:
    case formula::kind::iff:
      return detail::f_binary(f->k, rename_free(f->a, from, to),
                              rename_free(f->b, from, to));
    case formula::kind::forall:
    case formula::kind::exists:
      if (f->var == from) return f;
      return f_quant(f->k, f->var, f->qs, rename_free(f->a, from, to));
  }
  return f;
}

// ---------------------------------------------------------------------------
// Parsing. The surface syntax:
//
//   formula := quantifier | iff
//   iff     := implies ("<->" implies)*
//   implies := or ("->" implies)?
//   or      := and ("|" and)*
//   and     := unary ("&" unary)*
//   unary   := "~" unary | quantifier | primary
//   primary := "(" formula ")" | term rel term
//   rel     := "in" | "in_a" | "in_Z" | "=" | "!="
//   term    := IDENT | "Empty" | "A"
//
// Quantifiers are "forall"/"exists" with an optional sort suffix (_S for the
// set sort, _U/_M/_Z for the translated sorts) followed by a variable and a
// greedy body: the body extends as far right as the enclosing parentheses
// allow. "a != b" abbreviates "~(a = b)".

namespace detail {

struct token {
  enum class kind : std::uint8_t { ident, sym, end };
  kind k = kind::end;
  std::string text;
  std::size_t pos = 0;
};

inline std::vector<token> lex_formula(const std::string& src) {
  std::vector<token> out;
  std::size_t i = 0;
  auto two = [&](char a, char b) {
    return i + 1 < src.size() && src[i] == a && src[i + 1] == b;
  };
  while (i < src.size()) {
    char ch = src[i];
    if (ch == ' ' || ch == '\t' || ch == '\n' || ch == '\r') {
      ++i;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      std::size_t start = i;
      while (i < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_'))
        ++i;
      out.push_back({token::kind::ident, src.substr(start, i - start), start});
      continue;
    }
    if (two('<', '-')) {
      if (i + 2 >= src.size() || src[i + 2] != '>')
        raise(errc::syntax_error,
              "expected '<->' at position " + std::to_string(i));
      out.push_back({token::kind::sym, "<->", i});
      i += 3;
      continue;
    }
    if (two('-', '>')) {
      out.push_back({token::kind::sym, "->", i});
      i += 2;
      continue;
    }
    if (two('!', '=')) {
      out.push_back({token::kind::sym, "!=", i});
      i += 2;
      continue;
    }
    if (ch == '(' || ch == ')' || ch == '~' || ch == '&' || ch == '|' ||
        ch == '=') {
      out.push_back({token::kind::sym, std::string(1, ch), i});
      ++i;
      continue;
    }
    raise(errc::syntax_error, "unexpected character '" + std::string(1, ch) +
                                  "' at position " + std::to_string(i));
  }
  out.push_back({token::kind::end, "", src.size()});
  return out;
}

struct formula_parser {
  std::vector<token> toks;
  std::size_t at = 0;

  const token& peek() const { return toks[at]; }
  token next() { return toks[at++]; }

  [[noreturn]] void fail(const std::string& what) {
    const token& t = peek();
    std::string got = t.k == token::kind::end ? "end of input" : "'" + t.text + "'";
    raise(errc::syntax_error,
          what + ", got " + got + " at position " + std::to_string(t.pos));
  }

  bool accept_sym(const char* s) {
    if (peek().k == token::kind::sym && peek().text == s) {
      ++at;
      return true;
    }
    return false;
  }

  void expect_sym(const char* s) {
    if (!accept_sym(s)) fail(std::string("expected '") + s + "'");
  }

  static bool quant_keyword(const std::string& w, bool& is_forall,
                            quant_sort& qs) {
    struct entry {
      const char* word;
      bool forall;
      quant_sort sort;
    };
    static const entry table[] = {
        {"forall", true, quant_sort::plain},
        {"exists", false, quant_sort::plain},
        {"forall_S", true, quant_sort::sets},
        {"exists_S", false, quant_sort::sets},
        {"forall_U", true, quant_sort::universe},
        {"exists_U", false, quant_sort::universe},
        {"forall_M", true, quant_sort::menge},
        {"exists_M", false, quant_sort::menge},
        {"forall_Z", true, quant_sort::zf},
        {"exists_Z", false, quant_sort::zf},
    };
    for (const entry& e : table)
      if (w == e.word) {
        is_forall = e.forall;
        qs = e.sort;
        return true;
      }
    return false;
  }

  static bool reserved(const std::string& w) {
    bool fa;
    quant_sort qs;
    return quant_keyword(w, fa, qs) || w == "in" || w == "in_a" || w == "in_Z" ||
           w == "Empty" || w == "A";
  }

  formula_ptr parse_formula() { return parse_iff(); }

  formula_ptr parse_iff() {
    formula_ptr lhs = parse_implies();
    while (accept_sym("<->")) lhs = f_iff(lhs, parse_implies());
    return lhs;
  }

  formula_ptr parse_implies() {
    formula_ptr lhs = parse_or();
    if (accept_sym("->")) return f_implies(lhs, parse_implies());
    return lhs;
  }

  formula_ptr parse_or() {
    formula_ptr lhs = parse_and();
    while (accept_sym("|")) lhs = f_or(lhs, parse_and());
    return lhs;
  }

  formula_ptr parse_and() {
    formula_ptr lhs = parse_unary();
    while (accept_sym("&")) lhs = f_and(lhs, parse_unary());
    return lhs;
  }

  formula_ptr parse_unary() {
    if (accept_sym("~")) return f_not(parse_unary());
    if (peek().k == token::kind::ident) {
      bool is_forall;
      quant_sort qs;
      if (quant_keyword(peek().text, is_forall, qs)) {
        next();
        if (peek().k != token::kind::ident || reserved(peek().text))
          fail("expected a variable after the quantifier");
        std::string var = next().text;
        formula_ptr body = parse_formula();
        return f_quant(is_forall ? formula::kind::forall : formula::kind::exists,
                       std::move(var), qs, std::move(body));
      }
    }
    return parse_primary();
  }

  fterm parse_term() {
    if (peek().k != token::kind::ident) fail("expected a term");
    std::string w = next().text;
    if (w == "Empty") return fempty();
    if (w == "A") return fatoms();
    if (reserved(w)) fail("'" + w + "' is a keyword, not a term");
    return fvar(std::move(w));
  }

  formula_ptr parse_primary() {
    if (accept_sym("(")) {
      formula_ptr f = parse_formula();
      expect_sym(")");
      return f;
    }
    fterm lhs = parse_term();
    if (peek().k == token::kind::ident) {
      std::string rel = peek().text;
      if (rel == "in" || rel == "in_a" || rel == "in_Z") {
        next();
        mem_sort ms = rel == "in"    ? mem_sort::plain
                      : rel == "in_a" ? mem_sort::levy
                                      : mem_sort::zf;
        return f_member(std::move(lhs), parse_term(), ms);
      }
    }
    if (accept_sym("=")) return f_equal(std::move(lhs), parse_term());
    if (accept_sym("!=")) return f_not(f_equal(std::move(lhs), parse_term()));
    fail("expected a relation symbol");
  }
};

}  // namespace detail

inline formula_ptr parse_formula(const std::string& src) {
  detail::formula_parser p{detail::lex_formula(src), 0};
  formula_ptr f = p.parse_formula();
  if (p.peek().k != detail::token::kind::end) p.fail("expected end of input");
  return f;
}

// ---------------------------------------------------------------------------
// Printing. The printer emits a canonical form that reparses to the same
// tree: binary connectives are parenthesized, quantifier bodies and negated
// compounds too, and a negated equality prints as "!=".

namespace detail {

inline std::string print_fterm(const fterm& t) {
  switch (t.k) {
    case fterm::kind::var: return t.name;
    case fterm::kind::empty_set: return "Empty";
    case fterm::kind::atom_set: return "A";
  }
  return {};
}

inline const char* quant_word(formula::kind k, quant_sort qs) {
  bool fa = k == formula::kind::forall;
  switch (qs) {
    case quant_sort::plain: return fa ? "forall" : "exists";
    case quant_sort::sets: return fa ? "forall_S" : "exists_S";
    case quant_sort::universe: return fa ? "forall_U" : "exists_U";
    case quant_sort::menge: return fa ? "forall_M" : "exists_M";
    case quant_sort::zf: return fa ? "forall_Z" : "exists_Z";
  }
  return "forall";
}

inline const char* mem_word(mem_sort ms) {
  switch (ms) {
    case mem_sort::plain: return "in";
    case mem_sort::levy: return "in_a";
    case mem_sort::zf: return "in_Z";
  }
  return "in";
}

inline std::string print_rec(const formula_ptr& f);

// A quantifier body is greedy, so a quantified operand of a binary connective
// needs its own parentheses or the connective would be read into the body.
inline std::string print_operand(const formula_ptr& f) {
  if (f->k == formula::kind::forall || f->k == formula::kind::exists)
    return "(" + print_rec(f) + ")";
  return print_rec(f);
}

inline std::string print_rec(const formula_ptr& f) {
  switch (f->k) {
    case formula::kind::member:
      return print_fterm(f->lhs) + " " + mem_word(f->ms) + " " +
             print_fterm(f->rhs);
    case formula::kind::equal:
      return print_fterm(f->lhs) + " = " + print_fterm(f->rhs);
    case formula::kind::lnot:
      if (f->a->k == formula::kind::equal)
        return print_fterm(f->a->lhs) + " != " + print_fterm(f->a->rhs);
      return "~(" + print_rec(f->a) + ")";
    case formula::kind::land:
      return "(" + print_operand(f->a) + " & " + print_operand(f->b) + ")";
    case formula::kind::lor:
      return "(" + print_operand(f->a) + " | " + print_operand(f->b) + ")";
    case formula::kind::implies:
      return "(" + print_operand(f->a) + " -> " + print_operand(f->b) + ")";
    case formula::kind::iff:
      return "(" + print_operand(f->a) + " <-> " + print_operand(f->b) + ")";
    case formula::kind::forall:
    case formula::kind::exists:
      return std::string(quant_word(f->k, f->qs)) + " " + f->var + " (" +
             print_rec(f->a) + ")";
  }
  return {};
}

}  // namespace detail

inline std::string print_formula(const formula_ptr& f) {
  return detail::print_rec(f);
}

// ---------------------------------------------------------------------------
// Translations. Both walk the tree compositionally and reject input that is
// already translated; the pure-set translation additionally has no reading
// for the atoms symbol.

inline formula_ptr translate_zfu(const formula_ptr& f) {
  switch (f->k) {
    case formula::kind::member:
      if (f->ms != mem_sort::plain)
        raise(errc::unsupported_construct,
              "the formula is already translated");
      return f_member(f->lhs, f->rhs, mem_sort::levy);
    case formula::kind::equal:
      return f;
    case formula::kind::lnot:
      return f_not(translate_zfu(f->a));
    case formula::kind::land:
    case formula::kind::lor:
    case formula::kind::implies:
    case formula::kind::iff:
      return detail::f_binary(f->k, translate_zfu(f->a), translate_zfu(f->b));
    case formula::kind::forall:
    case formula::kind::exists: {
      quant_sort qs;
      switch (f->qs) {
        case quant_sort::plain: qs = quant_sort::universe; break;
        case quant_sort::sets: qs = quant_sort::menge; break;
        default:
          raise(errc::unsupported_construct,
                "the formula is already translated");
      }
      return f_quant(f->k, f->var, qs, translate_zfu(f->a));
    }
  }
  return f;
}

inline bool mentions_atom_set(const fterm& t) {
  return t.k == fterm::kind::atom_set;
}

inline formula_ptr translate_zf(const formula_ptr& f) {
  switch (f->k) {
    case formula::kind::member:
      if (f->ms != mem_sort::plain)
        raise(errc::unsupported_construct,
              "the formula is already translated");
      if (mentions_atom_set(f->lhs) || mentions_atom_set(f->rhs))
        raise(errc::unsupported_construct,
              "the pure-set reading has no atoms symbol");
      return f_member(f->lhs, f->rhs, mem_sort::zf);
    case formula::kind::equal:
      if (mentions_atom_set(f->lhs) || mentions_atom_set(f->rhs))
        raise(errc::unsupported_construct,
              "the pure-set reading has no atoms symbol");
      return f;
    case formula::kind::lnot:
      return f_not(translate_zf(f->a));
    case formula::kind::land:
    case formula::kind::lor:
    case formula::kind::implies:
    case formula::kind::iff:
      return detail::f_binary(f->k, translate_zf(f->a), translate_zf(f->b));
    case formula::kind::forall:
    case formula::kind::exists: {
      if (f->qs != quant_sort::plain && f->qs != quant_sort::sets)
        raise(errc::unsupported_construct,
              "the formula is already translated");
      return f_quant(f->k, f->var, quant_sort::zf, translate_zf(f->a));
    }
  }
  return f;
}

}  // namespace flow
