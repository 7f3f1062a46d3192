#pragma once

#include <string>
#include <unordered_set>
#include <vector>

#include "term.hpp"

namespace flow {

// f is neither rigid nor comprehensive, acts only away from the identity, and
// never produces the identity.
inline bool is_emergent(const term_store& s, term_id f) {
  switch (s.kind(f)) {
    case term_kind::zero:
    case term_kind::one:
      return false;
    case term_kind::omega:
      return true;
    case term_kind::node: {
      for (const term_entry& e : s.at(f).entries)
        if (e.arg == s.one() || e.image == s.one()) return false;
      return true;
    }
  }
  return false;
}

inline bool is_comprehensive(const term_store& s, term_id f) { return f == s.one(); }

// g != zero and every action of g is an action of f with the same value.
inline bool subset_of(const term_store& s, term_id g, term_id f) {
  if (g == s.zero()) return false;
  if (g == f) return true;
  switch (s.kind(g)) {
    case term_kind::one:
      return false;
    case term_kind::omega: {
      if (f == s.one()) return true;
      if (s.kind(f) == term_kind::omega)
        return s.at(g).omega_index <= s.at(f).omega_index;
      return false;
    }
    case term_kind::node: {
      for (const term_entry& e : s.at(g).entries) {
        if (!s.acts_on(f, e.arg)) return false;
        if (s.eval(f, e.arg) != e.image) return false;
      }
      return true;
    }
    default:
      return false;
  }
}

inline bool proper_subset_of(const term_store& s, term_id g, term_id f) {
  return g != f && subset_of(s, g, f);
}

// The composition h of f after g: h(x) = f(g(x)) away from f, g and h itself,
// and h never acts on f or g. Interning makes the three-way case split of the
// defining conditions collapse: when the computed graph coincides with f's or
// g's, the handle returned is f or g.
inline term_id compose(term_store& s, term_id f, term_id g) {
  term_id z = s.zero(), u = s.one();
  if (f == z || g == z) return s.phi0();
  bool f_sym = !s.finite(f);
  bool g_sym = !s.finite(g);
  if (f == u && g == u) return u;
  if (f == u) {
    if (g_sym) return g;  // the identity composed with a symbolic term leaves it alone
    term_graph m;
    for (const term_entry& e : s.at(g).entries)
      if (e.arg != u) m.push_back(e);
    return s.node(std::move(m));
  }
  if (g == u) {
    if (f_sym) return f;
    term_graph m;
    for (const term_entry& e : s.at(f).entries)
      if (e.arg != u) m.push_back(e);
    return s.node(std::move(m));
  }
  if (f_sym && g_sym)
    raise(errc::infinite_support, "composition of two symbolic terms lies outside the finite fragment");

  term_graph m;
  if (!g_sym) {
    for (const term_entry& e : s.at(g).entries) {
      if (e.arg == f) continue;
      term_id y = s.eval(f, e.image);
      if (y != z) m.push_back({e.arg, y});
    }
  } else {
    // g is an omega level: g fixes the ordinals below it, so the composition
    // is f cut down to those ordinals.
    std::uint8_t k = s.at(g).omega_index;
    for (const term_entry& e : s.at(f).entries) {
      if (e.arg == g) continue;
      const term_data& tx = s.at(e.arg);
      bool below = tx.phi >= 0 || (tx.kind == term_kind::omega && tx.omega_index < k);
      if (below) m.push_back(e);
    }
  }
  term_id h = s.node(std::move(m));
  if (g != h && f != h && g != u && f != u) {
    term_id gh = s.eval(g, h);
    // Unreachable: if g(h) lands back in an action of f, the candidate graph
    // would contain an entry at h itself, and no such graph can be interned.
    if (gh != z && s.eval(f, gh) != z)
      raise(errc::ambiguous_composition, "composition result is acted on by its factors");
  }
  return h;
}

inline term_id successor(term_store& s, term_id f) {
  switch (s.kind(f)) {
    case term_kind::zero:
    case term_kind::one:
      return s.zero();
    case term_kind::omega: {
      std::uint8_t k = s.at(f).omega_index;
      if (k >= 2)
        raise(errc::omega_cap_exceeded, "successor beyond the third omega level is not representable");
      return s.omega(k + 1);
    }
    case term_kind::node: {
      term_graph g = s.at(f).entries;
      g.push_back({f, f});
      return s.node(std::move(g));
    }
  }
  return s.zero();
}

template <typename Pred>
term_id restrict_term(term_store& s, term_id f, Pred keep) {
  if (!s.finite(f))
    raise(errc::infinite_support, "cannot filter a comprehensive or symbolic term");
  term_graph g;
  if (s.kind(f) == term_kind::node)
    for (const term_entry& e : s.at(f).entries)
      if (keep(e.arg)) g.push_back(e);
  return s.node(std::move(g));
}

template <typename Pred>
term_id restrict_identity(term_store& s, const std::vector<term_id>& carrier, Pred keep) {
  term_graph g;
  for (term_id t : carrier)
    if (keep(t)) g.push_back({t, t});
  return s.node(std::move(g));
}

inline term_id identity_over(term_store& s, std::vector<term_id> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  term_graph g;
  for (term_id t : members) g.push_back({t, t});
  return s.node(std::move(g));
}

// g produced from an emergent f by the assignment a: g maps each point of
// f's support to its a-value. Raises when a second term satisfies the same
// defining conditions, which happens when some t in the support already
// carries the rest of the graph and a(t) is neither zero nor f(t).
inline term_id create(term_store& s, term_id f, term_id a) {
  if (!is_emergent(s, f)) raise(errc::not_emergent, "creation needs an emergent base");
  if (!s.finite(f)) raise(errc::infinite_support, "creation over a symbolic base");
  term_id z = s.zero();
  term_graph m;
  for (const term_entry& e : s.at(f).entries) {
    term_id y = s.eval(a, e.arg);
    if (y != z) m.push_back({e.arg, y});
  }
  term_id g = s.node(term_graph(m));
  for (const term_entry& e : m) {
    term_id t = e.arg;
    if (s.kind(t) != term_kind::node) continue;
    if (e.image == s.eval(f, t)) continue;  // the trailing condition disqualifies t
    term_graph rest;
    for (const term_entry& o : m)
      if (o.arg != t) rest.push_back(o);
    if (s.at(t).entries == rest)
      raise(errc::ambiguous_creation, "a support term satisfies the same creation conditions");
  }
  if (s.acts_on(f, g) && s.eval(a, g) == s.eval(f, g))
    raise(errc::ambiguous_creation, "creation result collides with its base");
  return g;
}

namespace detail {

// Membership in supp(f) together with f's explicit images; the self-image
// does not count.
inline bool in_action_field(const term_store& s, term_id f, term_id t) {
  switch (s.kind(f)) {
    case term_kind::zero:
      return false;
    case term_kind::one:
      return t != s.one();
    case term_kind::omega: {
      const term_data& tt = s.at(t);
      return tt.phi >= 0 ||
             (tt.kind == term_kind::omega && tt.omega_index < s.at(f).omega_index);
    }
    case term_kind::node: {
      for (const term_entry& e : s.at(f).entries)
        if (e.arg == t || e.image == t) return true;
      return false;
    }
  }
  return false;
}

}  // namespace detail

// Every action of g stays inside f's support and explicit images.
inline bool lurks(const term_store& s, term_id g, term_id f) {
  if (g == s.zero()) return false;
  switch (s.kind(g)) {
    case term_kind::node: {
      for (const term_entry& e : s.at(g).entries) {
        if (!detail::in_action_field(s, f, e.arg)) return false;
        if (!detail::in_action_field(s, f, e.image)) return false;
      }
      return true;
    }
    case term_kind::one: {
      // the identity acts on terms far outside any finite action field
      return f == s.one();
    }
    case term_kind::omega: {
      if (f == s.one()) return true;
      if (s.kind(f) == term_kind::omega)
        return s.at(g).omega_index <= s.at(f).omega_index;
      return false;
    }
    default:
      return false;
  }
}

struct power_limits {
  std::uint64_t max_lurkers = 2'000'000;
  std::uint32_t max_power_bits = 12;
};

// All terms lurking f, in deterministic order. There are (|A|+1)^|A| of them
// for an action field A: each point of A is either absent or mapped anywhere
// in A.
inline std::vector<term_id> enumerate_lurkers(term_store& s, term_id f,
                                              const power_limits& lim = {}) {
  if (!s.finite(f))
    raise(errc::infinite_support, "lurkers of a comprehensive or symbolic term");
  std::vector<term_id> a = s.support(f);
  for (term_id y : s.image_set(f)) a.push_back(y);
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  s.canonical_sort(a);

  std::uint64_t total = 1;
  for (std::size_t i = 0; i < a.size(); ++i)
    total = detail::sat_mul(total, a.size() + 1);
  if (total > lim.max_lurkers)
    raise(errc::bound_too_large,
          "lurker family has " + std::to_string(total) + " members, cap is " +
              std::to_string(lim.max_lurkers));

  std::vector<term_id> out;
  out.reserve(total);
  std::vector<std::size_t> digit(a.size(), 0);  // 0 = absent, i = a[i-1]
  while (true) {
    term_graph g;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (digit[i]) g.push_back({a[i], a[digit[i] - 1]});
    out.push_back(s.node(std::move(g)));
    std::size_t d = 0;
    while (d < a.size() && digit[d] == a.size()) digit[d++] = 0;
    if (d == a.size()) break;
    ++digit[d];
  }
  return out;
}

inline term_id full_power(term_store& s, term_id f, const power_limits& lim = {}) {
  return identity_over(s, enumerate_lurkers(s, f, lim));
}

// Identity over the restrictions of f. For the rigid term the value is pinned
// to phi_0 by convention.
inline term_id restricted_power(term_store& s, term_id f, const power_limits& lim = {}) {
  if (f == s.zero()) return s.phi0();
  if (!s.finite(f))
    raise(errc::infinite_support, "restrictions of a comprehensive or symbolic term");
  const term_graph& g = s.at(f).entries;
  if (g.size() > lim.max_power_bits)
    raise(errc::bound_too_large,
          "restricted power over " + std::to_string(g.size()) + " entries has " +
              std::to_string(std::uint64_t{1} << g.size()) + " members");
  std::vector<term_id> members;
  members.reserve(std::size_t{1} << g.size());
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << g.size()); ++mask) {
    term_graph sub;
    for (std::size_t i = 0; i < g.size(); ++i)
      if (mask & (std::uint64_t{1} << i)) sub.push_back(g[i]);
    members.push_back(s.node(std::move(sub)));
  }
  return identity_over(s, std::move(members));
}

// Identity over the union of the members' supports.
inline term_id arbitrary_union(term_store& s, term_id f) {
  std::vector<term_id> members = s.support(f);
  std::vector<term_id> pts;
  for (term_id m : members)
    for (term_id t : s.support(m)) pts.push_back(t);
  return identity_over(s, std::move(pts));
}

// Identity over the intersection of the members' supports. An empty family
// puts no constraint at all, so the result is the identity itself.
inline term_id arbitrary_intersection(term_store& s, term_id f) {
  std::vector<term_id> members = s.support(f);
  if (members.empty()) return s.one();
  std::vector<term_id> acc = s.support(members[0]);
  std::sort(acc.begin(), acc.end());
  for (std::size_t i = 1; i < members.size(); ++i) {
    std::vector<term_id> cur = s.support(members[i]);
    std::sort(cur.begin(), cur.end());
    std::vector<term_id> keep;
    std::set_intersection(acc.begin(), acc.end(), cur.begin(), cur.end(),
                          std::back_inserter(keep));
    acc = std::move(keep);
  }
  return identity_over(s, std::move(acc));
}

inline bool is_injective(const term_store& s, term_id f) {
  if (!s.finite(f)) return true;
  std::vector<term_id> imgs;
  for (const term_entry& e : s.at(f).entries) imgs.push_back(e.image);
  std::sort(imgs.begin(), imgs.end());
  return std::adjacent_find(imgs.begin(), imgs.end()) == imgs.end();
}

inline bool are_equipotent(const term_store& s, term_id f, term_id g) {
  return s.support_size(f) == s.support_size(g);
}

// A connector between equipotent f and g: an involution fixing the common
// support and swapping the private parts pairwise in canonical order.
inline term_id build_connector(term_store& s, term_id f, term_id g) {
  std::vector<term_id> sf = s.support(f);
  std::vector<term_id> sg = s.support(g);
  if (sf.size() != sg.size())
    raise(errc::no_connector, "supports have different sizes");
  std::sort(sf.begin(), sf.end());
  std::sort(sg.begin(), sg.end());
  std::vector<term_id> common, fo, go;
  std::set_intersection(sf.begin(), sf.end(), sg.begin(), sg.end(), std::back_inserter(common));
  std::set_difference(sf.begin(), sf.end(), sg.begin(), sg.end(), std::back_inserter(fo));
  std::set_difference(sg.begin(), sg.end(), sf.begin(), sf.end(), std::back_inserter(go));
  s.canonical_sort(fo);
  s.canonical_sort(go);
  term_graph m;
  for (term_id t : common) m.push_back({t, t});
  for (std::size_t i = 0; i < fo.size(); ++i) {
    m.push_back({fo[i], go[i]});
    m.push_back({go[i], fo[i]});
  }
  return s.node(std::move(m));
}

}  // namespace flow
