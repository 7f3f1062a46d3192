#pragma once
// Ordinals, ZF-sets, von Neumann stages, ranks, ordered pairs, kernels,
// membership, and the degree hierarchy that separates sets from atoms.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <flow/calculus.hpp>
#include <flow/error.hpp>
#include <flow/term.hpp>

namespace flow {

// An ordinal is an emergent restriction of the identity that is transitive,
// totally ordered by actions, and well ordered by actions. The well-ordering
// clause quantifies over subsets; for a finite term it is equivalent to the
// action relation on the support having no cycle, since a cycle is exactly a
// nonempty subset without an action-least element.
inline bool is_ordinal(term_store& s, term_id t) {
  switch (s.kind(t)) {
    case term_kind::zero: return false;
    case term_kind::one: return false;
    case term_kind::omega: return true;
    case term_kind::node: break;
  }
  if (!subset_of(s, t, s.one())) return false;
  if (!is_emergent(s, t)) return false;
  const term_graph& g = s.at(t).entries;
  for (const term_entry& e : g)
    if (!subset_of(s, e.arg, t)) return false;
  for (const term_entry& e1 : g)
    for (const term_entry& e2 : g) {
      if (e1.arg == e2.arg) continue;
      if (s.eval(e1.arg, e2.arg) == s.zero() && s.eval(e2.arg, e1.arg) == s.zero())
        return false;
    }
  std::vector<term_id> order;
  std::set<term_id> placed;
  bool progress = true;
  while (progress && placed.size() < g.size()) {
    progress = false;
    for (const term_entry& e : g) {
      if (placed.count(e.arg)) continue;
      bool minimal = true;
      for (const term_entry& o : g) {
        if (o.arg == e.arg || placed.count(o.arg)) continue;
        if (s.eval(e.arg, o.arg) != s.zero()) { minimal = false; break; }
      }
      if (minimal) { placed.insert(e.arg); progress = true; }
    }
  }
  return placed.size() == g.size();
}

// r < q among ordinals means q acts on r
inline bool ordinal_less(term_store& s, term_id r, term_id q) {
  return r != q && s.eval(q, r) != s.zero();
}

inline bool is_finite_ordinal(term_store& s, term_id t) {
  return s.kind(t) == term_kind::node && s.phi_index(t) >= 0;
}

// a limit ordinal is an ordinal that is no successor
inline bool is_limit_ordinal(term_store& s, term_id t) {
  if (!is_ordinal(s, t)) return false;
  if (s.kind(t) == term_kind::omega) return s.at(t).omega_index == 0;
  const term_graph& g = s.at(t).entries;
  for (const term_entry& e : g) {
    term_graph rest;
    for (const term_entry& o : g)
      if (o.arg != e.arg) rest.push_back(o);
    if (s.node(rest) == e.arg) return false;
  }
  return true;
}

// a ZF-set is an emergent restriction of the identity all of whose members
// are ZF-sets; the symbolic limit levels stand for identities over finite
// ordinals and qualify
inline bool is_zf_set(term_store& s, term_id t) {
  switch (s.kind(t)) {
    case term_kind::zero: return false;
    case term_kind::one: return false;
    case term_kind::omega: return true;
    case term_kind::node: break;
  }
  for (const term_entry& e : s.at(t).entries) {
    if (e.image != e.arg) return false;
    if (!is_zf_set(s, e.arg)) return false;
  }
  return true;
}

// x belongs to f when f is a proper restriction of the identity acting on the
// ZF-set x
inline bool mem_z(term_store& s, term_id x, term_id f) {
  if (f == s.one() || f == s.zero()) return false;
  if (!subset_of(s, f, s.one())) return false;
  return is_zf_set(s, x) && s.acts_on(f, x);
}

// ordinal-valued rank, either a finite level or finitely many steps past the
// first limit level
struct rank_value {
  bool past_omega = false;
  std::uint32_t index = 0;
  friend bool operator==(const rank_value&, const rank_value&) = default;
};

inline bool rank_less(const rank_value& a, const rank_value& b) {
  if (a.past_omega != b.past_omega) return b.past_omega;
  return a.index < b.index;
}

inline std::string rank_name(const rank_value& r) {
  if (!r.past_omega) return "phi " + std::to_string(r.index);
  if (r.index == 0) return "omega";
  return "omega+" + std::to_string(r.index);
}

inline rank_value rank_of(term_store& s, term_id u) {
  if (!is_zf_set(s, u))
    raise(errc::not_a_zf_set, "rank is defined for ZF-sets only");
  if (s.kind(u) == term_kind::omega) return {true, s.at(u).omega_index};
  rank_value best{false, 0};
  for (const term_entry& e : s.at(u).entries) {
    rank_value r = rank_of(s, e.arg);
    ++r.index;
    if (rank_less(best, r)) best = r;
  }
  return best;
}

inline term_id rank_term(term_store& s, const rank_value& r) {
  return r.past_omega ? s.omega(r.index) : s.phi(r.index);
}

// cumulative stages: the stage at level 0 is the empty function, each next
// stage is the restricted power of the previous one
inline term_id vn_stage(term_store& s, unsigned level,
                        const power_limits& lim = power_limits{}) {
  term_id v = s.phi0();
  for (unsigned i = 0; i < level; ++i) v = restricted_power(s, v, lim);
  return v;
}

// the von Neumann function of a finite ordinal maps each lower ordinal to its
// stage; at limit levels the graph would be infinite
inline term_id vn_function(term_store& s, term_id r,
                           const power_limits& lim = power_limits{}) {
  if (s.kind(r) == term_kind::omega)
    raise(errc::infinite_support,
          "the von Neumann function of a limit level has infinite support");
  if (!is_finite_ordinal(s, r))
    raise(errc::invalid_component, "von Neumann functions are indexed by ordinals");
  unsigned n = static_cast<unsigned>(s.phi_index(r));
  term_graph g;
  for (unsigned k = 0; k < n; ++k) g.push_back({s.phi(k), vn_stage(s, k, lim)});
  return s.node(g);
}

enum class pair_kind { both_zero, right_zero, diagonal, kuratowski, non_kuratowski };

struct pair_parts {
  term_id left = 0;
  term_id right = 0;
  pair_kind kind = pair_kind::both_zero;
};

// an ordered pair (a, b) is the identity over the singleton of a and the
// doubleton of a and b; pairs with empty components follow the conventions
// (0,0) = phi1 and (a,0) = identity over the singleton of a plus phi0
inline term_id make_pair(term_store& s, term_id a, term_id b) {
  if (a == s.zero() && b == s.zero()) return s.phi(1);
  if (a == s.zero())
    raise(errc::invalid_component,
          "no ordered pair has an empty left component against a nonempty right one");
  if (a == s.one() || b == s.one())
    raise(errc::invalid_component, "the identity cannot be a pair component");
  term_id alpha = identity_over(s, {a});
  if (b == s.zero()) return identity_over(s, {alpha, s.phi0()});
  term_id beta = identity_over(s, {a, b});
  return identity_over(s, {alpha, beta});
}

namespace detail {

inline std::optional<pair_parts> try_decode_pair(term_store& s, term_id f) {
  if (f == s.phi(1)) return pair_parts{s.zero(), s.zero(), pair_kind::both_zero};
  if (s.kind(f) != term_kind::node || !subset_of(s, f, s.one())) return std::nullopt;
  const term_graph& g = s.at(f).entries;
  auto singleton_member = [&](term_id t) -> std::optional<term_id> {
    if (s.kind(t) != term_kind::node || !subset_of(s, t, s.one())) return std::nullopt;
    const term_graph& tg = s.at(t).entries;
    if (tg.size() != 1) return std::nullopt;
    return tg[0].arg;
  };
  if (g.size() == 1) {
    if (auto a = singleton_member(g[0].arg)) return pair_parts{*a, *a, pair_kind::diagonal};
    return std::nullopt;
  }
  if (g.size() != 2) return std::nullopt;
  for (int swap = 0; swap < 2; ++swap) {
    term_id alpha = g[swap].arg, beta = g[1 - swap].arg;
    auto a = singleton_member(alpha);
    if (!a) continue;
    if (beta == s.phi0()) return pair_parts{*a, s.zero(), pair_kind::right_zero};
    if (s.kind(beta) != term_kind::node || !subset_of(s, beta, s.one())) continue;
    const term_graph& bg = s.at(beta).entries;
    if (bg.size() != 2) continue;
    term_id b;
    if (bg[0].arg == *a) b = bg[1].arg;
    else if (bg[1].arg == *a) b = bg[0].arg;
    else continue;
    return pair_parts{*a, b,
                      b == alpha ? pair_kind::non_kuratowski : pair_kind::kuratowski};
  }
  return std::nullopt;
}

}  // namespace detail

inline bool is_ordered_pair(term_store& s, term_id f) {
  return detail::try_decode_pair(s, f).has_value();
}

inline pair_parts decode_pair(term_store& s, term_id f) {
  if (auto p = detail::try_decode_pair(s, f)) return *p;
  raise(errc::not_a_pair, "the term has no ordered pair shape");
}

// the kernel of x is the identity over every ZF-set that x acts on or takes
// as a value; by self-evaluation the values of x include x itself
inline term_id kernel(term_store& s, term_id x) {
  if (x == s.one() || s.kind(x) == term_kind::omega)
    raise(errc::infinite_support, "the kernel of a comprehensive or limit term is infinite");
  std::vector<term_id> members;
  if (s.kind(x) == term_kind::node) {
    for (const term_entry& e : s.at(x).entries) {
      if (is_zf_set(s, e.arg)) members.push_back(e.arg);
      if (is_zf_set(s, e.image)) members.push_back(e.image);
    }
    if (is_zf_set(s, x)) members.push_back(x);
  }
  return identity_over(s, members);
}

// degree hierarchy: degree 0 functions are the ZF-sets; degree 1 functions
// leave the identity pattern but act between ZF-sets; each next degree allows
// members and images one level deeper, with at least one witness at the
// previous level
inline bool z_degree(term_store& s, term_id f, unsigned k) {
  if (k == 0) return is_zf_set(s, f);
  if (s.kind(f) != term_kind::node) return false;
  if (!is_emergent(s, f)) return false;
  const term_graph& g = s.at(f).entries;
  if (k == 1) {
    if (f != s.zero() && subset_of(s, f, s.one())) return false;
    for (const term_entry& e : g)
      if (!is_zf_set(s, e.arg) || !is_zf_set(s, e.image)) return false;
    return true;
  }
  bool witness = false;
  for (const term_entry& e : g)
    if (z_degree(s, e.arg, k - 1) || z_degree(s, e.image, k - 1)) { witness = true; break; }
  if (!witness) return false;
  for (const term_entry& e : g) {
    if (z_degree(s, e.arg, k - 1)) continue;
    bool ok = false;
    for (unsigned t = 0; t + 1 < k && !ok; ++t)
      ok = z_degree(s, e.image, t) || z_degree(s, e.image, k - 1);
    if (!ok) return false;
    bool graded = false;
    for (unsigned w = 0; w + 1 < k && !graded; ++w) graded = z_degree(s, e.arg, w);
    if (!graded) return false;
  }
  return true;
}

struct degree_limits {
  unsigned max_degree = 16;
};

// least degree at which f is ZF-emergent, if any; the search is complete
// because a term's degree never exceeds its construction depth by more than
// two levels
inline std::optional<unsigned> degree_of(term_store& s, term_id f,
                                         const degree_limits& lim = degree_limits{}) {
  unsigned bound = 2;
  if (s.kind(f) == term_kind::node) bound = s.depth(f) + 2;
  for (unsigned k = 0; k <= bound; ++k) {
    if (!z_degree(s, f, k)) continue;
    if (k > lim.max_degree)
      raise(errc::degree_bound_exceeded,
            "ZF-emergent at degree " + std::to_string(k) + " which exceeds the bound " +
                std::to_string(lim.max_degree));
    return k;
  }
  return std::nullopt;
}

// an atom is a ZF-emergent function that is no restriction of the identity
inline bool is_atom(term_store& s, term_id f,
                    const degree_limits& lim = degree_limits{}) {
  if (f != s.zero() && subset_of(s, f, s.one())) return false;
  if (s.kind(f) == term_kind::omega) return false;
  return degree_of(s, f, lim).has_value();
}

// members, members of members, and so on; identity restrictions expose their
// support as members while all other terms are leaves
inline std::vector<term_id> transitive_closure(term_store& s, term_id f) {
  std::vector<term_id> queue = s.support(f);
  std::set<term_id> seen(queue.begin(), queue.end());
  for (std::size_t i = 0; i < queue.size(); ++i) {
    term_id t = queue[i];
    if (s.kind(t) != term_kind::node || !subset_of(s, t, s.one())) continue;
    for (const term_entry& e : s.at(t).entries)
      if (seen.insert(e.arg).second) queue.push_back(e.arg);
  }
  std::vector<term_id> out(seen.begin(), seen.end());
  s.canonical_sort(out);
  return out;
}

}  // namespace flow
