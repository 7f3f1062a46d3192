#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "atoms.hpp"
#include "ordinals.hpp"

namespace flow {

// A finitely supported function f lifts to the set of its ordered pairs:
// the identity restriction over {(u, f(u)) : f[u]}. Components that equal
// the identity term cannot sit inside a pair and are rejected downstream.
inline term_id func_to_pairs(term_store& s, term_id f) {
  if (s.kind(f) == term_kind::one || s.kind(f) == term_kind::omega)
    raise(errc::infinite_support, "only a finitely supported function lifts to a pair set");
  if (!is_emergent(s, f)) raise(errc::not_emergent, "a rigid term encodes no function");
  std::vector<term_id> pairs;
  for (const term_entry& e : s.at(f).entries) pairs.push_back(make_pair(s, e.arg, e.image));
  return identity_over(s, std::move(pairs));
}

// Inverse of func_to_pairs: reads a finite identity restriction over pair
// terms back as a function graph. Pairs touching the empty term are refused;
// (u,0) would assert an action without a value, and nothing acts on 0.
inline term_id pairs_to_func(term_store& s, term_id p) {
  if (s.kind(p) != term_kind::node)
    raise(errc::not_a_pair_set, "a pair set is a finite identity restriction");
  std::map<term_id, term_id> graph;
  for (const term_entry& e : s.at(p).entries) {
    if (e.image != e.arg) raise(errc::not_a_pair_set, "a pair set fixes each of its members");
    auto parts = detail::try_decode_pair(s, e.arg);
    if (!parts) raise(errc::not_a_pair_set, "a member of the set is not an ordered pair");
    if (parts->left == s.zero())
      raise(errc::not_a_function, "the empty term is never acted on");
    if (parts->right == s.zero())
      raise(errc::not_a_function, "a pair with empty right side asserts an action without a value");
    auto [it, fresh] = graph.emplace(parts->left, parts->right);
    if (!fresh && it->second != parts->right)
      raise(errc::not_a_function, "two pairs give the same argument different values");
  }
  term_graph g;
  g.reserve(graph.size());
  for (const auto& [u, v] : graph) g.push_back({u, v});
  return s.node(std::move(g));
}

inline term_id zfu_domain(term_store& s, term_id p) {
  term_id f = pairs_to_func(s, p);
  return identity_over(s, s.support(f));
}

inline term_id zfu_range(term_store& s, term_id p) {
  term_id f = pairs_to_func(s, p);
  return identity_over(s, s.image_set(f));
}

// A ZFU-function is a Menge of ordered pairs, single valued, with components
// drawn from the universe (brick atoms or Mengen). With dagger set, the pair
// set must live in the Levy fragment; that is what rules out any function
// whose domain or range touches an atom, because the inner singleton of an
// ordered pair then strands one atom without its conjugate.
inline bool is_zfu_function(term_store& s, term_id p, const brick& a, bool dagger = false) {
  if (s.kind(p) != term_kind::node) return false;
  if (!(dagger ? is_levy_menge(s, p, a) : is_menge(s, p, a))) return false;
  std::map<term_id, term_id> vals;
  for (const term_entry& e : s.at(p).entries) {
    auto parts = detail::try_decode_pair(s, e.arg);
    if (!parts) return false;
    if (parts->left == s.zero() || parts->right == s.zero()) return false;
    if (!a.acts_on(parts->left) && !is_menge(s, parts->left, a)) return false;
    if (!a.acts_on(parts->right) && !is_menge(s, parts->right, a)) return false;
    auto [it, fresh] = vals.emplace(parts->left, parts->right);
    if (!fresh && it->second != parts->right) return false;
  }
  return true;
}

// The partition witness: send every image y of f to the least preimage,
// least in the store's canonical order. Distinct images have disjoint
// preimage fibers, so the witness is injective by construction.
inline term_id partition_choice(term_store& s, term_id f) {
  if (s.kind(f) == term_kind::one || s.kind(f) == term_kind::omega)
    raise(errc::infinite_support, "the partition witness needs a finitely supported function");
  if (!is_emergent(s, f)) raise(errc::not_emergent, "a rigid term encodes no function");
  std::map<term_id, term_id> least;
  for (const term_entry& e : s.at(f).entries) {
    auto [it, fresh] = least.emplace(e.image, e.arg);
    if (!fresh && s.cmp(e.arg, it->second) < 0) it->second = e.arg;
  }
  term_graph g;
  g.reserve(least.size());
  for (const auto& [y, u] : least) g.push_back({y, u});
  return s.node(std::move(g));
}

// Membership in the Levy model: y takes x as a member when y acts on x and
// y is a Levy Menge. For a brick atom the definition also asks for every
// indiscernible twin, which is the conjugate; a Levy Menge carries it
// automatically, but checking keeps the definition honest. For Mengen the
// twin clause collapses to the two conjuncts already tested.
inline bool mem_a(term_store& s, term_id x, term_id y, const brick& a) {
  if (!s.acts_on(y, x) || !is_levy_menge(s, y, a)) return false;
  if (a.acts_on(x)) return s.acts_on(y, a.conjugate(x));
  return true;
}

struct pp_verdict {
  bool ok = false;
  term_id function = term_id(0);  // the plain function read off the pair set
  term_id choice = term_id(0);    // the partition witness for it
  term_id converse = term_id(0);  // the witness lifted back to a pair set
  bool choice_injective = false;
  bool choice_zfu = false;
  levy_verdict choice_levy;
  explicit operator bool() const { return ok; }
};

// One instance of the partition principle: from a dagger ZFU-function build
// the choice of least preimages and verify that its pair set is again a
// dagger ZFU-function, injective, with domain the image of the original.
inline pp_verdict check_pp(term_store& s, term_id p, const brick& a) {
  if (!is_zfu_function(s, p, a, true))
    raise(errc::not_a_function, "the partition principle is checked on dagger ZFU-functions");
  pp_verdict v;
  v.function = pairs_to_func(s, p);
  v.choice = partition_choice(s, v.function);
  v.converse = func_to_pairs(s, v.choice);
  v.choice_injective = is_injective(s, v.choice);
  v.choice_levy = check_levy_menge(s, v.converse, a);
  v.choice_zfu = is_zfu_function(s, v.converse, a, true);
  v.ok = v.choice_injective && v.choice_levy.is_menge && v.choice_zfu;
  return v;
}

namespace detail {

inline std::string brick_atom_name(const brick& a, term_id t) {
  for (std::size_t i = 0; i < a.atoms.size(); ++i)
    if (a.atoms[i] == t)
      return (i % 2 ? "abar_" : "alpha_") + std::to_string(a.indices[i]);
  return "?";
}

// Follows foreign_member witnesses inward until the root cause of a failed
// Levy check surfaces, typically a missing conjugate deep inside a pair.
inline levy_verdict deep_levy_fault(term_store& s, term_id f, const brick& a) {
  levy_verdict v = check_levy_menge(s, f, a);
  while (!v.is_menge && v.why == levy_verdict::fault::foreign_member) {
    levy_verdict inner = check_levy_menge(s, v.witness, a);
    if (inner.is_menge) break;
    v = inner;
  }
  return v;
}

inline std::string describe_levy_fault(const levy_verdict& v, const brick& a) {
  switch (v.why) {
    case levy_verdict::fault::none:
      return "no fault";
    case levy_verdict::fault::not_an_identity_restriction:
      return "not an identity restriction";
    case levy_verdict::fault::not_emergent:
      return "not emergent";
    case levy_verdict::fault::foreign_member:
      return "member outside the universe";
    case levy_verdict::fault::missing_conjugate:
      return "missing conjugate " + brick_atom_name(a, v.witness);
  }
  return "no fault";
}

}  // namespace detail

struct ac_report {
  unsigned long candidates = 0;
  unsigned long admissible = 0;
  std::string text;  // one line per candidate plus a summary count
};

// Exhausts every candidate injection of a conjugation closed atom family
// into the ordinals phi_0..phi_bound, encoded as a pair set, and checks each
// for dagger ZFU-function status. Any injection of atoms must take this
// shape, and none passes: each ordered pair holds the singleton of a lone
// atom, which no Levy Menge may contain. That is the failure of choice.
inline ac_report demonstrate_ac_failure(term_store& s, const brick& a, unsigned ordinal_bound) {
  if (a.atoms.size() > 8 || ordinal_bound > 8)
    raise(errc::bound_too_large, "the injection search is exhaustive; keep brick and bound small");
  ac_report rep;
  unsigned pairs = static_cast<unsigned>(a.atoms.size() / 2);
  unsigned n_ord = ordinal_bound + 1;
  std::vector<term_id> ordinals;
  for (unsigned n = 0; n < n_ord; ++n) ordinals.push_back(s.phi(n));
  for (unsigned mask = 1; mask < (1u << pairs); ++mask) {
    std::vector<term_id> family;
    for (unsigned i = 0; i < pairs; ++i)
      if (mask & (1u << i)) {
        family.push_back(a.atoms[2 * i]);
        family.push_back(a.atoms[2 * i + 1]);
      }
    unsigned k = static_cast<unsigned>(family.size());
    if (k > n_ord) continue;  // no injective assignment exists
    std::vector<unsigned> assign(k, 0);
    std::vector<bool> used(n_ord, false);
    auto emit = [&]() {
      ++rep.candidates;
      std::vector<term_id> body;
      std::string desc;
      for (unsigned i = 0; i < k; ++i) {
        body.push_back(make_pair(s, family[i], ordinals[assign[i]]));
        if (i) desc += ", ";
        desc += detail::brick_atom_name(a, family[i]) + " -> phi_" + std::to_string(assign[i]);
      }
      term_id p = identity_over(s, std::move(body));
      rep.text += "candidate " + std::to_string(rep.candidates) + ": " + desc;
      if (is_zfu_function(s, p, a, true)) {
        ++rep.admissible;
        rep.text += " | admitted\n";
      } else {
        levy_verdict lv = detail::deep_levy_fault(s, p, a);
        rep.text += " | rejected: " + detail::describe_levy_fault(lv, a) + "\n";
      }
    };
    auto rec = [&](auto&& self, unsigned slot) -> void {
      if (slot == k) {
        emit();
        return;
      }
      for (unsigned o = 0; o < n_ord; ++o) {
        if (used[o]) continue;
        used[o] = true;
        assign[slot] = o;
        self(self, slot + 1);
        used[o] = false;
      }
    };
    rec(rec, 0);
  }
  rep.text += std::to_string(rep.candidates) + " candidates, " +
              std::to_string(rep.admissible) + " admissible\n";
  return rep;
}

}  // namespace flow
