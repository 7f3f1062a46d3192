#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <unordered_map>
#include <vector>

#include "flow/ordinals.hpp"

namespace flow {

// The two conjugate template atoms. Both act only on symbolic limit
// ordinals, so they stay atoms no matter how many finite ordinals a
// brick consumes: mu swaps omega(0) and omega(1), mu_prime swaps
// omega(1) and omega(2).
inline term_id mu(term_store& s) {
  return s.node({{s.omega(0), s.omega(1)}, {s.omega(1), s.omega(0)}});
}

inline term_id mu_prime(term_store& s) {
  return s.node({{s.omega(1), s.omega(2)}, {s.omega(2), s.omega(1)}});
}

// Brick indices stay small: every alpha_atom(r) drags phi(r) into its
// graph and the engine only ever needs single-digit bricks.
inline constexpr unsigned max_brick_index = 8;

// alpha_r cycles phi_r -> mu -> mu' -> phi_r; its conjugate abar_r runs
// the same cycle backwards. Each one is empty of ZF content (degree 2),
// yet kernels cannot tell it from its conjugate.
inline term_id alpha_atom(term_store& s, unsigned r) {
  if (r > max_brick_index)
    raise(errc::bound_too_large,
          "atom index " + std::to_string(r) + " exceeds the brick cap " +
              std::to_string(max_brick_index));
  term_id m = mu(s), mp = mu_prime(s);
  return s.node({{s.phi(r), m}, {m, mp}, {mp, s.phi(r)}});
}

inline term_id abar_atom(term_store& s, unsigned r) {
  if (r > max_brick_index)
    raise(errc::bound_too_large,
          "atom index " + std::to_string(r) + " exceeds the brick cap " +
              std::to_string(max_brick_index));
  term_id m = mu(s), mp = mu_prime(s);
  return s.node({{s.phi(r), mp}, {mp, m}, {m, s.phi(r)}});
}

// A brick is the atom supply of an atomic von Neumann universe: a
// conjugation-closed family of atoms together with the identity term
// that collects them.
struct brick {
  std::vector<term_id> atoms;       // alpha_0, abar_0, alpha_1, ...
  std::vector<unsigned> indices;    // the finite ordinal index per atom
  term_id menge = term_id(0);       // identity restriction over the atoms

  bool acts_on(term_id t) const {
    return std::find(atoms.begin(), atoms.end(), t) != atoms.end();
  }

  std::optional<unsigned> index_of(term_id t) const {
    for (std::size_t i = 0; i < atoms.size(); ++i)
      if (atoms[i] == t) return indices[i];
    return std::nullopt;
  }

  // conjugation pairs alpha_r with abar_r; atoms are laid out in
  // conjugate pairs, so the partner sits at the neighbouring slot.
  term_id conjugate(term_id t) const {
    for (std::size_t i = 0; i < atoms.size(); ++i)
      if (atoms[i] == t) return atoms[i ^ 1u];
    raise(errc::invalid_component, "the term is not an atom of this brick");
  }
};

inline brick appropriate_brick(term_store& s, unsigned k) {
  if (k > max_brick_index)
    raise(errc::bound_too_large,
          "brick size " + std::to_string(k) + " exceeds the cap " +
              std::to_string(max_brick_index));
  brick a;
  for (unsigned r = 0; r < k; ++r) {
    a.atoms.push_back(alpha_atom(s, r));
    a.atoms.push_back(abar_atom(s, r));
    a.indices.push_back(r);
    a.indices.push_back(r);
  }
  a.menge = identity_over(s, a.atoms);
  return a;
}

inline std::optional<unsigned> zf_emergent_degree(term_store& s, term_id f,
                                                  unsigned max_degree = 16) {
  return degree_of(s, f, degree_limits{max_degree});
}

namespace detail {

// Hereditary Menge check: an identity restriction is a Menge of the
// universe over a brick when every member is either one of the brick's
// atoms or a Menge itself. The dagger variant additionally requires the
// conjugate of every atom member to be present, level by level.
struct menge_checker {
  term_store& s;
  const brick& a;
  bool dagger = false;
  std::unordered_map<term_id, bool> seen;

  bool run(term_id f) {
    if (f == s.zero() || f == s.one()) return false;
    if (s.kind(f) == term_kind::omega) return true;
    auto it = seen.find(f);
    if (it != seen.end()) return it->second;
    seen.emplace(f, false);  // interning is acyclic, so this is just a guard
    bool ok = check(f);
    seen[f] = ok;
    return ok;
  }

  bool check(term_id f) {
    if (!is_emergent(s, f)) return false;
    for (const term_entry& e : s.at(f).entries) {
      if (e.arg != e.image) return false;
      term_id x = e.arg;
      if (a.acts_on(x)) {
        if (dagger && !s.acts_on(f, a.conjugate(x))) return false;
        continue;
      }
      if (!run(x)) return false;
    }
    return true;
  }
};

}  // namespace detail

inline bool is_menge(term_store& s, term_id f, const brick& a) {
  detail::menge_checker c{s, a, false, {}};
  return c.run(f);
}

inline bool mem_in(term_store& s, term_id x, term_id y, const brick& a) {
  return is_menge(s, y, a) && s.acts_on(y, x);
}

// Verdict of the Levy universe test. Negative verdicts carry the member
// that breaks the check, or the conjugate that ought to be present.
struct levy_verdict {
  bool is_menge = false;
  enum class fault {
    none,
    not_an_identity_restriction,
    not_emergent,
    foreign_member,
    missing_conjugate,
  } why = fault::none;
  term_id witness = term_id(0);
  explicit operator bool() const { return is_menge; }
};

namespace detail {

struct levy_checker {
  term_store& s;
  const brick& a;
  std::unordered_map<term_id, bool> seen;

  levy_verdict run(term_id f) {
    levy_verdict v;
    if (f == s.zero() || f == s.one()) {
      v.why = levy_verdict::fault::not_an_identity_restriction;
      v.witness = f;
      return v;
    }
    if (s.kind(f) == term_kind::omega) {
      v.is_menge = true;
      return v;
    }
    if (!is_emergent(s, f)) {
      v.why = levy_verdict::fault::not_emergent;
      v.witness = f;
      return v;
    }
    for (const term_entry& e : s.at(f).entries) {
      if (e.arg != e.image) {
        v.why = levy_verdict::fault::not_an_identity_restriction;
        v.witness = e.arg;
        return v;
      }
      term_id x = e.arg;
      if (a.acts_on(x)) {
        // atoms only ever enter a Levy Menge next to their conjugates;
        // extensionality cannot tell the two apart, so neither may a set
        term_id twin = a.conjugate(x);
        if (!s.acts_on(f, twin)) {
          v.why = levy_verdict::fault::missing_conjugate;
          v.witness = twin;
          return v;
        }
        continue;
      }
      if (!member_ok(x)) {
        v.why = levy_verdict::fault::foreign_member;
        v.witness = x;
        return v;
      }
    }
    v.is_menge = true;
    return v;
  }

  bool member_ok(term_id x) {
    auto it = seen.find(x);
    if (it != seen.end()) return it->second;
    seen.emplace(x, false);
    bool ok = run(x).is_menge;
    seen[x] = ok;
    return ok;
  }
};

}  // namespace detail

inline levy_verdict check_levy_menge(term_store& s, term_id f, const brick& a) {
  detail::levy_checker c{s, a, {}};
  return c.run(f);
}

inline bool is_levy_menge(term_store& s, term_id f, const brick& a) {
  return check_levy_menge(s, f, a).is_menge;
}

struct indiscernible_limits {
  unsigned max_rank = 64;
};

// Rank inside an atomic universe: atoms sit in the ground stage, so they
// carry rank 0 and a Menge ranks one above its highest-ranked member.
// On pure ZF-sets this coincides with the plain finite rank.
inline unsigned menge_rank(term_store& s, term_id u, const brick& a,
                           indiscernible_limits lim = {}) {
  if (a.acts_on(u)) return 0;
  if (s.kind(u) == term_kind::omega)
    raise(errc::infinite_support, "limit ordinals have no finite rank");
  if (u == s.zero() || u == s.one())
    raise(errc::not_a_zf_set, "rank is defined for atoms and Mengen only");
  unsigned best = 0;
  for (term_id m : s.support(u)) {
    unsigned r = menge_rank(s, m, a, lim) + 1;
    if (r > lim.max_rank)
      raise(errc::rank_bound_exceeded,
            "rank exceeds the configured bound " + std::to_string(lim.max_rank));
    if (r > best) best = r;
  }
  return best;
}

namespace detail {

// Class profile of a set of brick atoms: how many members of each
// conjugate pair are present. Two sub-bricks are indiscernible exactly
// when the profiles match, because the class of any atom within a
// sub-brick is its conjugate-pair slice.
using pair_profile = std::map<unsigned, unsigned>;

inline pair_profile subbrick_profile(term_store& s, term_id x, const brick& a) {
  pair_profile p;
  for (term_id m : s.support(x)) {
    auto idx = a.index_of(m);
    if (idx) ++p[*idx];
  }
  return p;
}

// Atom content of the transitive closure of the given members.
inline pair_profile tc_atom_profile(term_store& s,
                                    const std::vector<term_id>& members,
                                    const brick& a) {
  pair_profile p;
  std::vector<term_id> queue = members;
  std::unordered_map<term_id, bool> seen;
  while (!queue.empty()) {
    term_id t = queue.back();
    queue.pop_back();
    if (seen.count(t)) continue;
    seen.emplace(t, true);
    auto idx = a.index_of(t);
    if (idx) {
      ++p[*idx];
      continue;
    }
    if (s.kind(t) != term_kind::node) continue;
    for (const term_entry& e : s.at(t).entries)
      if (e.arg == e.image) queue.push_back(e.arg);
  }
  return p;
}

inline bool is_twin_pair_menge(term_store& s, term_id x, const brick& a) {
  if (s.kind(x) != term_kind::node) return false;
  const term_graph& g = s.at(x).entries;
  if (g.size() != 2) return false;
  if (g[0].arg != g[0].image || g[1].arg != g[1].image) return false;
  auto i0 = a.index_of(g[0].arg);
  auto i1 = a.index_of(g[1].arg);
  return i0 && i1 && *i0 == *i1;
}

}  // namespace detail

// Indiscernibility relative to a brick. The cases, in order: a ZF-set is
// indiscernible only of itself; two brick atoms are indiscernible when
// their kernels and the kernels of both compositions agree; an atom
// never matches a non-atom; the doubleton of a conjugate pair matches
// nothing but itself; sub-bricks match by class profile; general Mengen
// match when their ranks agree and every pair of rank slices exposes the
// same atom content in its transitive closure.
//
// The last case inherits the coarseness of the slice comparison: members
// free of atoms are invisible to it, so distinct Mengen that differ only
// in pure content (or that merge the same atoms into fewer members)
// compare as indiscernible. The tests pin concrete instances.
inline bool indiscernible(term_store& s, term_id x, term_id y, const brick& a,
                          indiscernible_limits lim = {}) {
  if (x == y) return true;
  if (is_zf_set(s, x) || is_zf_set(s, y)) return false;
  bool ax = a.acts_on(x), ay = a.acts_on(y);
  if (ax && ay) {
    if (kernel(s, x) != kernel(s, y)) return false;
    return kernel(s, compose(s, x, y)) == kernel(s, compose(s, y, x));
  }
  if (ax || ay) return false;
  if (detail::is_twin_pair_menge(s, x, a) || detail::is_twin_pair_menge(s, y, a))
    return false;
  bool sx = subset_of(s, x, a.menge), sy = subset_of(s, y, a.menge);
  if (sx && sy)
    return detail::subbrick_profile(s, x, a) == detail::subbrick_profile(s, y, a);
  if (!is_menge(s, x, a) || !is_menge(s, y, a)) return false;
  unsigned rx = menge_rank(s, x, a, lim);
  unsigned ry = menge_rank(s, y, a, lim);
  if (rx != ry) return false;
  auto buckets = [&](term_id t) {
    std::map<unsigned, std::vector<term_id>> b;
    for (term_id m : s.support(t)) b[menge_rank(s, m, a, lim)].push_back(m);
    return b;
  };
  auto bx = buckets(x), by = buckets(y);
  for (unsigned r = 0; r < rx; ++r) {
    for (unsigned q = r; q < rx; ++q) {
      std::vector<term_id> mx, my;
      for (unsigned v : {r, q}) {
        if (auto it = bx.find(v); it != bx.end())
          mx.insert(mx.end(), it->second.begin(), it->second.end());
        if (auto it = by.find(v); it != by.end())
          my.insert(my.end(), it->second.begin(), it->second.end());
        if (r == q) break;
      }
      if (detail::tc_atom_profile(s, mx, a) != detail::tc_atom_profile(s, my, a))
        return false;
    }
  }
  return true;
}

}  // namespace flow
