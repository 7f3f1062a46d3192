#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "atoms.hpp"
#include "calculus.hpp"
#include "formula.hpp"
#include "ordinals.hpp"
#include "term.hpp"
#include "zfu.hpp"

namespace flow {

// Finite carrier of the atomic model: the brick's atoms together with every
// conjugation-closed Levy Menge whose rank stays within the bound. Mengen are
// listed by (rank, term order) and atoms precede them in the joint list, which
// fixes the enumeration order quantifiers sweep and counterexamples minimize.
struct carrier {
  brick a;
  unsigned rank_bound = 0;
  std::vector<term_id> atoms;
  std::vector<term_id> mengen;
  std::vector<term_id> all;
  std::vector<term_id> zf;   // the pure members among the mengen
  std::unordered_map<term_id, unsigned> ranks;
  std::unordered_map<term_id, std::vector<term_id>> members;
  std::unordered_set<term_id> menge_set;
  std::unordered_set<term_id> zf_set;

  bool has_menge(term_id t) const { return menge_set.count(t) != 0; }
  bool has(term_id t) const { return has_menge(t) || a.acts_on(t); }
};

// Every Menge of rank at most k is the identity over a conjugation-closed set
// of atoms joined with a set of Mengen of rank below k, and distinct choices
// give distinct terms, so each level regenerates the full list from the
// previous one: 2^pairs times 2^(previous count) Mengen, each built once.
inline carrier build_carrier(term_store& s, const brick& a,
                             unsigned rank_bound = 2) {
  if (a.atoms.size() > 6)
    raise(errc::bound_too_large,
          "carriers support bricks of at most three conjugate pairs");
  carrier c;
  c.a = a;
  c.rank_bound = rank_bound;
  c.atoms = a.atoms;

  const std::size_t pairs = a.atoms.size() / 2;
  std::vector<term_id> level = {s.phi0()};
  c.ranks[s.phi0()] = 0;
  for (unsigned k = 1; k <= rank_bound; ++k) {
    if (pairs + level.size() > 16)
      raise(errc::bound_too_large,
            "the carrier at rank " + std::to_string(k) + " would hold 2^" +
                std::to_string(pairs + level.size()) +
                " Mengen, beyond the 65536 cap");
    std::vector<term_id> next;
    next.reserve(std::size_t(1) << (pairs + level.size()));
    for (std::uint32_t amask = 0; amask < (1u << pairs); ++amask) {
      for (std::uint64_t mmask = 0; mmask < (std::uint64_t(1) << level.size());
           ++mmask) {
        std::vector<term_id> ms;
        unsigned rank = amask != 0 ? 1 : 0;
        for (std::size_t p = 0; p < pairs; ++p)
          if (amask & (1u << p)) {
            ms.push_back(a.atoms[2 * p]);
            ms.push_back(a.atoms[2 * p + 1]);
          }
        for (std::size_t i = 0; i < level.size(); ++i)
          if (mmask & (std::uint64_t(1) << i)) {
            ms.push_back(level[i]);
            rank = std::max(rank, c.ranks.at(level[i]) + 1);
          }
        term_id t = identity_over(s, std::move(ms));
        c.ranks[t] = rank;
        next.push_back(t);
      }
    }
    level = std::move(next);
  }

  std::sort(level.begin(), level.end(), [&](term_id x, term_id y) {
    unsigned rx = c.ranks.at(x), ry = c.ranks.at(y);
    if (rx != ry) return rx < ry;
    return s.cmp(x, y) < 0;
  });
  c.mengen = std::move(level);

  c.all = c.atoms;
  c.all.insert(c.all.end(), c.mengen.begin(), c.mengen.end());
  for (term_id t : c.mengen) {
    c.menge_set.insert(t);
    c.members.emplace(t, s.support(t));
    if (is_zf_set(s, t)) {
      c.zf.push_back(t);
      c.zf_set.insert(t);
    }
  }
  return c;
}

// Outcome of evaluating a formula or checking an axiom over a carrier. The
// mode records how the truth value was obtained: a plain sweep of the
// quantifiers, the constructive witness route, or the weakened prefix reading
// of the infinity axiom. A false verdict carries the first failing assignment
// of the leading universal variables in enumeration order.
struct verdict {
  bool truth = false;
  std::string mode = "search";
  std::string axiom;
  std::map<std::string, term_id> counterexample;
  std::map<std::string, term_id> witness;
  std::string note;
  explicit operator bool() const { return truth; }
};

namespace detail {

// Recursive evaluator. Quantifiers of a bounded shape shrink their domain to
// the elements of the bounding term: in exists v (v in u & ...) the conjunct
// is false outside them, in forall v (v in u -> ...) the implication is
// vacuous, so the restriction never changes the truth value.
struct formula_eval {
  term_store& s;
  const carrier& c;
  std::vector<term_id> extra;
  std::vector<std::pair<std::string, term_id>> binds;
  std::unordered_map<const formula*, const formula*> guard_cache;
  std::vector<term_id> scratch;

  bool in_extra(term_id t) const {
    return std::find(extra.begin(), extra.end(), t) != extra.end();
  }
  bool levy_in_model(term_id t) const {
    return c.has_menge(t) || in_extra(t);
  }
  bool zf_in_model(term_id t) {
    if (c.zf_set.count(t)) return true;
    return in_extra(t) && is_zf_set(s, t);
  }

  term_id resolve(const fterm& t) {
    switch (t.k) {
      case fterm::kind::empty_set:
        return s.phi0();
      case fterm::kind::atom_set:
        return c.a.menge;
      case fterm::kind::var:
        for (auto it = binds.rbegin(); it != binds.rend(); ++it)
          if (it->first == t.name) return it->second;
        raise(errc::elaboration_error, "unbound variable " + t.name);
    }
    raise(errc::elaboration_error, "malformed term");
  }

  bool mem(term_id x, term_id y, mem_sort ms) {
    switch (ms) {
      case mem_sort::levy:
        return levy_in_model(y) && s.acts_on(y, x);
      case mem_sort::zf:
        return zf_in_model(y) && s.acts_on(y, x);
      case mem_sort::plain:
        break;
    }
    raise(errc::unsupported_construct,
          "translate the formula before evaluating it");
  }

  bool sort_admits(quant_sort qs, term_id t) {
    switch (qs) {
      case quant_sort::universe:
        return c.a.acts_on(t) || levy_in_model(t);
      case quant_sort::menge:
        return levy_in_model(t);
      case quant_sort::zf:
        return zf_in_model(t);
      case quant_sort::plain:
      case quant_sort::sets:
        break;
    }
    raise(errc::unsupported_construct,
          "translate the formula before evaluating it");
  }

  const std::vector<term_id>* elements_of(term_id u) {
    auto it = c.members.find(u);
    if (it != c.members.end()) return &it->second;
    scratch = s.support(u);
    return &scratch;
  }

  static void flatten_and(const formula* f, std::vector<const formula*>& out) {
    if (f->k == formula::kind::land) {
      flatten_and(f->a.get(), out);
      flatten_and(f->b.get(), out);
    } else {
      out.push_back(f);
    }
  }

  // The bounding membership conjunct of a guarded quantifier, if any.
  const formula* guard_of(const formula* q) {
    auto it = guard_cache.find(q);
    if (it != guard_cache.end()) return it->second;
    const formula* found = nullptr;
    std::vector<const formula*> parts;
    const formula* body = q->a.get();
    if (q->k == formula::kind::exists) {
      flatten_and(body, parts);
    } else if (body->k == formula::kind::implies) {
      flatten_and(body->a.get(), parts);
    }
    for (const formula* p : parts) {
      if (p->k != formula::kind::member || p->ms == mem_sort::plain) continue;
      if (p->lhs.k != fterm::kind::var || p->lhs.name != q->var) continue;
      if (p->rhs.k == fterm::kind::var && p->rhs.name == q->var) continue;
      found = p;
      break;
    }
    guard_cache.emplace(q, found);
    return found;
  }

  bool run_bound(const formula_ptr& body, const std::string& var, term_id t) {
    binds.emplace_back(var, t);
    bool r = eval(body);
    binds.pop_back();
    return r;
  }

  bool eval_quant(const formula* f) {
    bool is_all = f->k == formula::kind::forall;
    if (const formula* g = guard_of(f)) {
      term_id u = 0;
      bool bound = true;
      if (g->rhs.k == fterm::kind::var) {
        bound = false;
        for (auto it = binds.rbegin(); it != binds.rend(); ++it)
          if (it->first == g->rhs.name) {
            u = it->second;
            bound = true;
            break;
          }
      } else {
        u = resolve(g->rhs);
      }
      if (bound) {
        bool model_ok = g->ms == mem_sort::levy ? levy_in_model(u)
                                                : zf_in_model(u);
        if (model_ok) {
          const std::vector<term_id>* ep = elements_of(u);
          std::vector<term_id> local;
          if (ep == &scratch) {
            local = scratch;
            ep = &local;
          }
          for (term_id t : *ep) {
            if (!sort_admits(f->qs, t)) continue;
            if (run_bound(f->a, f->var, t) != is_all) return !is_all;
          }
        }
        return is_all;
      }
    }
    auto sweep = [&](const std::vector<term_id>& list, bool filter_zf) {
      for (term_id t : list) {
        if (filter_zf && !zf_in_model(t)) continue;
        if (run_bound(f->a, f->var, t) != is_all) return true;
      }
      return false;
    };
    switch (f->qs) {
      case quant_sort::universe:
        if (sweep(c.atoms, false) || sweep(c.mengen, false) ||
            sweep(extra, false))
          return !is_all;
        return is_all;
      case quant_sort::menge:
        if (sweep(c.mengen, false) || sweep(extra, false)) return !is_all;
        return is_all;
      case quant_sort::zf:
        if (sweep(c.zf, false) || sweep(extra, true)) return !is_all;
        return is_all;
      case quant_sort::plain:
      case quant_sort::sets:
        break;
    }
    raise(errc::unsupported_construct,
          "translate the formula before evaluating it");
  }

  bool eval(const formula_ptr& f) {
    switch (f->k) {
      case formula::kind::member:
        return mem(resolve(f->lhs), resolve(f->rhs), f->ms);
      case formula::kind::equal:
        return resolve(f->lhs) == resolve(f->rhs);
      case formula::kind::lnot:
        return !eval(f->a);
      case formula::kind::land:
        return eval(f->a) && eval(f->b);
      case formula::kind::lor:
        return eval(f->a) || eval(f->b);
      case formula::kind::implies:
        return !eval(f->a) || eval(f->b);
      case formula::kind::iff:
        return eval(f->a) == eval(f->b);
      case formula::kind::forall:
      case formula::kind::exists:
        return eval_quant(f.get());
    }
    return false;
  }

  // First failing assignment of the leading universal prefix, in enumeration
  // order. The caller guarantees the formula is false under the current
  // bindings.
  void first_failure(const formula_ptr& f,
                     std::map<std::string, term_id>& out) {
    if (f->k != formula::kind::forall) return;
    auto try_one = [&](term_id t) {
      if (!sort_admits(f->qs, t)) return false;
      if (run_bound(f->a, f->var, t)) return false;
      out[f->var] = t;
      binds.emplace_back(f->var, t);
      first_failure(f->a, out);
      binds.pop_back();
      return true;
    };
    const formula* g = guard_of(f.get());
    if (g && (g->rhs.k != fterm::kind::var || resolve_opt(g->rhs.name))) {
      term_id u = resolve(g->rhs);
      bool model_ok =
          g->ms == mem_sort::levy ? levy_in_model(u) : zf_in_model(u);
      if (model_ok) {
        const std::vector<term_id>* ep = elements_of(u);
        std::vector<term_id> local;
        if (ep == &scratch) {
          local = scratch;
          ep = &local;
        }
        for (term_id t : *ep)
          if (try_one(t)) return;
      }
      return;
    }
    switch (f->qs) {
      case quant_sort::universe:
        for (term_id t : c.atoms)
          if (try_one(t)) return;
        [[fallthrough]];
      case quant_sort::menge:
        for (term_id t : c.mengen)
          if (try_one(t)) return;
        for (term_id t : extra)
          if (try_one(t)) return;
        return;
      case quant_sort::zf:
        for (term_id t : c.zf)
          if (try_one(t)) return;
        for (term_id t : extra)
          if (try_one(t)) return;
        return;
      default:
        return;
    }
  }

  bool resolve_opt(const std::string& name) const {
    for (auto it = binds.rbegin(); it != binds.rend(); ++it)
      if (it->first == name) return true;
    return false;
  }
};

}  // namespace detail

inline verdict eval_formula(term_store& s, const formula_ptr& f,
                            const carrier& c,
                            const std::map<std::string, term_id>& env = {},
                            const std::vector<term_id>& extension = {}) {
  detail::formula_eval ev{s, c, extension, {}, {}, {}};
  for (const auto& [name, t] : env) ev.binds.emplace_back(name, t);
  verdict v;
  v.mode = "search";
  v.truth = ev.eval(f);
  if (!v.truth && env.empty()) ev.first_failure(f, v.counterexample);
  return v;
}

// Readable rendering of a carrier element: atoms by name, finite ordinals by
// level, Mengen by their member lists.
inline std::string describe_term(term_store& s, const carrier& c, term_id t) {
  if (c.a.index_of(t)) return detail::brick_atom_name(c.a, t);
  if (s.kind(t) == term_kind::node && s.at(t).phi >= 0)
    return "phi " + std::to_string(s.at(t).phi);
  if (s.kind(t) == term_kind::node && is_emergent(s, t)) {
    bool ident = true;
    for (const term_entry& e : s.at(t).entries)
      if (e.arg != e.image) ident = false;
    if (ident) {
      std::string out = "{";
      bool first = true;
      for (term_id m : s.support(t)) {
        if (!first) out += ", ";
        first = false;
        out += describe_term(s, c, m);
      }
      return out + "}";
    }
  }
  return "term " + std::to_string(t);
}

// ---------------------------------------------------------------------------
// Witness constructions, one per existential axiom. Each returns the term the
// corresponding proof builds; check_axiom then re-verifies the defining
// property by evaluation over the carrier extended with the witness.

// The elements of x and y taken together with their conjugates. A pair of a
// lone atom therefore materializes as the two-element conjugate Menge, the
// convention the membership relation cannot see past.
inline std::vector<term_id> twin_closure(const brick& a,
                                         std::initializer_list<term_id> ts) {
  std::vector<term_id> out;
  for (term_id t : ts) {
    out.push_back(t);
    if (a.acts_on(t)) out.push_back(a.conjugate(t));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline term_id make_pair_set(term_store& s, term_id x, term_id y,
                             const brick& a) {
  return identity_over(s, twin_closure(a, {x, y}));
}

// All sub-Mengen of x: subsets of its members that keep conjugate atom pairs
// together. Atom members of a Levy Menge come in full pairs, so the subsets
// are enumerated pair-slot by pair-slot.
inline term_id levy_power(term_store& s, term_id x, const carrier& c) {
  std::vector<std::pair<term_id, term_id>> slots;
  std::vector<term_id> rest;
  std::vector<term_id> seen_pairs;
  for (term_id m : s.support(x)) {
    if (auto idx = c.a.index_of(m)) {
      term_id lo = std::min(m, c.a.conjugate(m));
      if (std::find(seen_pairs.begin(), seen_pairs.end(), lo) ==
          seen_pairs.end()) {
        seen_pairs.push_back(lo);
        slots.emplace_back(m, c.a.conjugate(m));
      }
      continue;
    }
    rest.push_back(m);
  }
  std::vector<term_id> subs;
  for (std::uint32_t am = 0; am < (1u << slots.size()); ++am) {
    for (std::uint64_t mm = 0; mm < (std::uint64_t(1) << rest.size()); ++mm) {
      std::vector<term_id> ms;
      for (std::size_t p = 0; p < slots.size(); ++p)
        if (am & (1u << p)) {
          ms.push_back(slots[p].first);
          ms.push_back(slots[p].second);
        }
      for (std::size_t i = 0; i < rest.size(); ++i)
        if (mm & (std::uint64_t(1) << i)) ms.push_back(rest[i]);
      subs.push_back(identity_over(s, std::move(ms)));
    }
  }
  return identity_over(s, std::move(subs));
}

// Union of the elements of the Menge elements of x; atoms contribute nothing.
inline term_id levy_union(term_store& s, term_id x, const carrier& c) {
  std::vector<term_id> ms;
  for (term_id m : s.support(x)) {
    if (c.a.index_of(m)) continue;
    for (term_id e : s.support(m)) ms.push_back(e);
  }
  return identity_over(s, std::move(ms));
}

}  // namespace flow
