#pragma once

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "logic.hpp"

namespace flow {

namespace detail {

enum class axiom_strategy {
  search,       // translate and sweep the carrier
  rows,         // extensionality via membership rows
  pair,         // constructive pair witness
  power,        // constructive power witness
  separation,   // restriction witness per formula instance
  replacement,  // image witness per assignment instance
  unions,       // union-of-elements witness
  infinity,     // prefix reading over the finite carrier
  choice,       // selector search with literal one-element intersections
};

struct axiom_def {
  const char* name;
  bool atomic;  // atomic-model reading or pure-set reading
  axiom_strategy strat;
  std::vector<const char*> texts;     // one entry per schema instance
  std::vector<const char*> premises;  // replacement: uniqueness premise
  std::vector<const char*> bodies;    // separation: F(x); replacement: alpha(s, t)
};

inline const std::vector<axiom_def>& axiom_table() {
  static const std::vector<axiom_def> defs = {
      {"ZFU1", true, axiom_strategy::search,
       {"forall z (z in A <-> (z != Empty & ~exists x (x in z)))"},
       {},
       {}},
      {"ZFU2", true, axiom_strategy::rows,
       {"forall_S x forall_S y ((forall z (z in x <-> z in y)) -> x = y)"},
       {},
       {}},
      {"ZFU3", true, axiom_strategy::search,
       {"forall y (~(y in Empty))"},
       {},
       {}},
      {"ZFU4", true, axiom_strategy::pair,
       {"forall x forall y exists_S z (forall t (t in z <-> (t = x | t = y)))"},
       {},
       {}},
      {"ZFU5", true, axiom_strategy::power,
       {"forall_S x exists_S y (forall_S z (z in y <-> forall t (t in z -> t in x)))"},
       {},
       {}},
      {"ZFU6", true, axiom_strategy::separation,
       {"forall_S z exists_S y (forall x (x in y <-> (x in z & x in A)))",
        "forall_S z exists_S y (forall x (x in y <-> (x in z & x != Empty)))",
        "forall_S z exists_S y (forall x (x in y <-> (x in z & exists u (u in x))))"},
       {},
       {"x in A", "x != Empty", "exists u (u in x)"}},
      {"ZFU7", true, axiom_strategy::replacement,
       {"(forall x exists y (y = x & forall u (u = x -> u = y))) -> "
        "(forall_S z exists_S w (forall t (t in w <-> exists s (s in z & t = s))))",
        "(forall x exists y (y = Empty & forall u (u = Empty -> u = y))) -> "
        "(forall_S z exists_S w (forall t (t in w <-> exists s (s in z & t = Empty))))",
        "(forall x exists y (((x in A & y = x) | (~(x in A) & y = Empty)) & "
        "forall u (((x in A & u = x) | (~(x in A) & u = Empty)) -> u = y))) -> "
        "(forall_S z exists_S w (forall t (t in w <-> exists s (s in z & "
        "((s in A & t = s) | (~(s in A) & t = Empty))))))"},
       {"forall x exists y (y = x & forall u (u = x -> u = y))",
        "forall x exists y (y = Empty & forall u (u = Empty -> u = y))",
        "forall x exists y (((x in A & y = x) | (~(x in A) & y = Empty)) & "
        "forall u (((x in A & u = x) | (~(x in A) & u = Empty)) -> u = y))"},
       {"t = s", "t = Empty",
        "((s in A & t = s) | (~(s in A) & t = Empty))"}},
      {"ZFU8", true, axiom_strategy::unions,
       {"forall_S x exists_S y (forall z (z in y <-> exists t (z in t & t in x)))"},
       {},
       {}},
      {"ZFU9", true, axiom_strategy::infinity,
       {"exists_S x (Empty in x & forall_S y (y in x -> exists_S u (u in x & "
        "forall t (t in u <-> (t in y | t = y)))))"},
       {},
       {}},
      {"ZFU10", true, axiom_strategy::choice,
       {"forall_S x ((forall_S y (y in x -> y != Empty) & forall_S y forall_S z "
        "((y in x & z in x & y != z) -> ~exists t (t in y & t in z))) -> "
        "exists_S y (forall_S z (z in x -> exists w (forall t ((t in y & t in z) "
        "<-> t = w)))))"},
       {},
       {}},
      {"ZFU11", true, axiom_strategy::search,
       {"forall_S x (x != Empty -> exists y (y in x & ~exists t (t in x & t in y)))"},
       {},
       {}},
      {"ZF1", false, axiom_strategy::search,
       {"forall x forall y ((forall z (z in x <-> z in y)) -> x = y)"},
       {},
       {}},
      {"ZF2", false, axiom_strategy::search,
       {"forall y (~(y in Empty))"},
       {},
       {}},
      {"ZF3", false, axiom_strategy::pair,
       {"forall x forall y exists z (forall t (t in z <-> (t = x | t = y)))"},
       {},
       {}},
      {"ZF4", false, axiom_strategy::power,
       {"forall x exists y (forall z (z in y <-> forall t (t in z -> t in x)))"},
       {},
       {}},
      {"ZF5", false, axiom_strategy::separation,
       {"forall z exists y (forall x (x in y <-> (x in z & x != Empty)))",
        "forall z exists y (forall x (x in y <-> (x in z & exists u (u in x))))",
        "forall z exists y (forall x (x in y <-> (x in z & ~exists u (u in x))))"},
       {},
       {"x != Empty", "exists u (u in x)", "~exists u (u in x)"}},
      {"ZF6", false, axiom_strategy::replacement,
       {"(forall x exists y (y = x & forall u (u = x -> u = y))) -> "
        "(forall z exists w (forall t (t in w <-> exists s (s in z & t = s))))",
        "(forall x exists y (y = Empty & forall u (u = Empty -> u = y))) -> "
        "(forall z exists w (forall t (t in w <-> exists s (s in z & t = Empty))))"},
       {"forall x exists y (y = x & forall u (u = x -> u = y))",
        "forall x exists y (y = Empty & forall u (u = Empty -> u = y))"},
       {"t = s", "t = Empty"}},
      {"ZF7", false, axiom_strategy::unions,
       {"forall x exists y (forall z (z in y <-> exists t (z in t & t in x)))"},
       {},
       {}},
      {"ZF8", false, axiom_strategy::infinity,
       {"exists x (Empty in x & forall y (y in x -> exists u (u in x & "
        "forall t (t in u <-> (t in y | t = y)))))"},
       {},
       {}},
      {"ZF9", false, axiom_strategy::search,
       {"forall x (x != Empty -> exists y (y in x & ~exists t (t in x & t in y)))"},
       {},
       {}},
  };
  return defs;
}

inline formula_ptr parse_translated(const char* text, bool atomic) {
  formula_ptr f = parse_formula(text);
  return atomic ? translate_zfu(f) : translate_zf(f);
}

inline quant_sort univ_sort(bool atomic) {
  return atomic ? quant_sort::universe : quant_sort::zf;
}
inline quant_sort sets_sort(bool atomic) {
  return atomic ? quant_sort::menge : quant_sort::zf;
}
inline mem_sort model_mem(bool atomic) {
  return atomic ? mem_sort::levy : mem_sort::zf;
}

inline const std::vector<term_id>& sets_domain(const carrier& c, bool atomic) {
  return atomic ? c.mengen : c.zf;
}

inline void require_members_in_carrier(term_store& s, const carrier& c,
                                       term_id witness, bool atomic) {
  for (term_id m : s.support(witness)) {
    bool ok = atomic ? c.has(m) : c.zf_set.count(m) != 0;
    if (!ok)
      raise(errc::carrier_incomplete,
            "a witness member lies outside the carrier: " +
                describe_term(s, c, m));
  }
}

inline verdict check_search(term_store& s, const carrier& c,
                            const axiom_def& d) {
  verdict v;
  v.mode = "search";
  v.truth = true;
  for (std::size_t i = 0; i < d.texts.size(); ++i) {
    formula_ptr f = parse_translated(d.texts[i], d.atomic);
    verdict r = eval_formula(s, f, c);
    if (!r.truth) {
      v.truth = false;
      v.counterexample = r.counterexample;
      if (d.texts.size() > 1)
        v.note = "instance " + std::to_string(i + 1) + " of " +
                 std::to_string(d.texts.size()) + " fails";
      return v;
    }
  }
  return v;
}

// Extensionality. Distinct Mengen of the carrier are compared through their
// membership rows; small carriers run the quantifier sweep directly, larger
// ones compare the rows pairwise through a map, which is equivalent because
// a Menge's row is exactly its member list.
inline verdict check_rows(term_store& s, const carrier& c,
                          const axiom_def& d) {
  if (sets_domain(c, d.atomic).size() <= 64) {
    verdict v = check_search(s, c, d);
    v.note = "evaluated directly at this carrier size";
    return v;
  }
  verdict v;
  v.mode = "search";
  v.truth = true;
  v.note = "membership rows compared pairwise";
  std::map<std::vector<term_id>, term_id> rows;
  for (term_id m : sets_domain(c, d.atomic)) {
    auto [it, fresh] = rows.emplace(s.support(m), m);
    if (!fresh && it->second != m) {
      v.truth = false;
      v.counterexample["x"] = it->second;
      v.counterexample["y"] = m;
      return v;
    }
  }
  return v;
}

// Pairing. The witness for arguments x, y is the identity over the twin
// closure of {x, y}: an atom argument brings its conjugate along, because no
// Levy Menge can hold one atom of a pair without the other. The biconditional
// is therefore verified in that closed form; the literal form with equality
// on atoms fails at lone-atom arguments, and search-mode evaluation of the
// axiom text reports exactly that divergence.
inline verdict check_pair(term_store& s, const carrier& c,
                          const axiom_def& d) {
  verdict v;
  v.mode = "witness";
  v.truth = true;
  const std::vector<term_id>& dom = d.atomic ? c.all : c.zf;

  auto contract = [&](term_id x, term_id y, term_id z) {
    term_id xc = d.atomic && c.a.acts_on(x) ? c.a.conjugate(x) : x;
    term_id yc = d.atomic && c.a.acts_on(y) ? c.a.conjugate(y) : y;
    formula_ptr eqs = f_or(
        f_or(f_equal(fvar("t"), fvar("x")), f_equal(fvar("t"), fvar("xc"))),
        f_or(f_equal(fvar("t"), fvar("y")), f_equal(fvar("t"), fvar("yc"))));
    formula_ptr body = f_forall(
        "t", univ_sort(d.atomic),
        f_iff(f_member(fvar("t"), fvar("z"), model_mem(d.atomic)), eqs));
    std::map<std::string, term_id> env{
        {"x", x}, {"xc", xc}, {"y", y}, {"yc", yc}, {"z", z}};
    return eval_formula(s, body, c, env, {z}).truth;
  };

  if (d.atomic) {
    std::uint64_t pairs_checked = 0;
    for (std::size_t i = 0; i < dom.size(); ++i) {
      for (std::size_t j = i; j < dom.size(); ++j) {
        std::vector<term_id> w = twin_closure(c.a, {dom[i], dom[j]});
        for (term_id m : w) {
          if (!c.has(m))
            raise(errc::carrier_incomplete,
                  "a pair witness member lies outside the carrier: " +
                      describe_term(s, c, m));
          if (c.a.acts_on(m) &&
              std::find(w.begin(), w.end(), c.a.conjugate(m)) == w.end()) {
            v.truth = false;
            v.counterexample["x"] = dom[i];
            v.counterexample["y"] = dom[j];
            return v;
          }
        }
        ++pairs_checked;
      }
    }
    std::vector<std::pair<term_id, term_id>> picks;
    if (!c.atoms.empty()) {
      picks.emplace_back(c.atoms[0], c.atoms[0]);
      picks.emplace_back(c.atoms[0], c.atoms[1]);
      picks.emplace_back(c.atoms[0], s.phi0());
      if (c.atoms.size() >= 4) picks.emplace_back(c.atoms[0], c.atoms[2]);
    }
    picks.emplace_back(s.phi0(), s.phi0());
    picks.emplace_back(c.mengen.back(), c.mengen.back());
    std::mt19937 rng(20260819u);
    std::uniform_int_distribution<std::size_t> pick(0, dom.size() - 1);
    for (int k = 0; k < 256; ++k)
      picks.emplace_back(dom[pick(rng)], dom[pick(rng)]);
    std::size_t sampled = picks.size();
    for (auto [x, y] : picks) {
      term_id z = make_pair_set(s, x, y, c.a);
      if (!is_levy_menge(s, z, c.a) || !contract(x, y, z)) {
        v.truth = false;
        v.counterexample["x"] = x;
        v.counterexample["y"] = y;
        return v;
      }
    }
    v.note = "pair witnesses take conjugates along; twin closures checked for "
             "all " +
             std::to_string(pairs_checked) + " argument pairs, " +
             std::to_string(sampled) +
             " witnesses built and re-evaluated; the literal biconditional "
             "fails at lone-atom arguments in search mode";
    return v;
  }

  for (term_id x : dom) {
    for (term_id y : dom) {
      term_id z = identity_over(s, {x, y});
      require_members_in_carrier(s, c, z, d.atomic);
      if (!contract(x, y, z)) {
        v.truth = false;
        v.counterexample["x"] = x;
        v.counterexample["y"] = y;
        return v;
      }
    }
  }
  return v;
}

// Power. The witness collects every sub-Menge of x; its defining biconditional
// is then evaluated over the carrier extended with the witness.
inline verdict check_power(term_store& s, const carrier& c,
                           const axiom_def& d) {
  verdict v;
  v.mode = "witness";
  v.truth = true;
  formula_ptr sub = f_forall(
      "t", univ_sort(d.atomic),
      f_implies(f_member(fvar("t"), fvar("z"), model_mem(d.atomic)),
                f_member(fvar("t"), fvar("x"), model_mem(d.atomic))));
  formula_ptr body = f_forall(
      "z", sets_sort(d.atomic),
      f_iff(f_member(fvar("z"), fvar("y"), model_mem(d.atomic)), sub));
  for (term_id x : sets_domain(c, d.atomic)) {
    term_id y = levy_power(s, x, c);
    require_members_in_carrier(s, c, y, d.atomic);
    std::map<std::string, term_id> env{{"x", x}, {"y", y}};
    if (!eval_formula(s, body, c, env, {y}).truth) {
      v.truth = false;
      v.counterexample["x"] = x;
      return v;
    }
  }
  return v;
}

// Separation. For an atom member the instance formula decides the whole
// conjugate pair: it enters the restriction when the formula holds of either
// twin. Instance formulas cannot name atoms, so they never tell twins apart
// and the closure never changes the literal member list.
inline verdict check_separation(term_store& s, const carrier& c,
                                const axiom_def& d) {
  verdict v;
  v.mode = "witness";
  v.truth = true;
  for (std::size_t i = 0; i < d.bodies.size(); ++i) {
    formula_ptr pred = parse_translated(d.bodies[i], d.atomic);
    formula_ptr body = f_forall(
        "x", univ_sort(d.atomic),
        f_iff(f_member(fvar("x"), fvar("y"), model_mem(d.atomic)),
              f_and(f_member(fvar("x"), fvar("z"), model_mem(d.atomic)),
                    pred)));
    for (term_id z : sets_domain(c, d.atomic)) {
      std::vector<term_id> ms;
      for (term_id m : s.support(z)) {
        bool keep = eval_formula(s, pred, c, {{"x", m}}).truth;
        if (!keep && d.atomic && c.a.acts_on(m))
          keep = eval_formula(s, pred, c, {{"x", c.a.conjugate(m)}}).truth;
        if (keep) ms.push_back(m);
      }
      term_id y = identity_over(s, std::move(ms));
      require_members_in_carrier(s, c, y, d.atomic);
      std::map<std::string, term_id> env{{"z", z}, {"y", y}};
      if (!eval_formula(s, body, c, env, {y}).truth) {
        v.truth = false;
        v.counterexample["z"] = z;
        v.note = "instance " + std::to_string(i + 1) + " of " +
                 std::to_string(d.bodies.size()) + " fails";
        return v;
      }
    }
  }
  return v;
}

// Replacement. When the uniqueness premise holds, the witness collects the
// image of the Menge under the assignment and closes atom images under
// conjugation; assignments cannot tell twins apart, so the closure is
// vacuous and the literal biconditional re-verifies.
inline verdict check_replacement(term_store& s, const carrier& c,
                                 const axiom_def& d) {
  verdict v;
  v.mode = "witness";
  v.truth = true;
  for (std::size_t i = 0; i < d.bodies.size(); ++i) {
    formula_ptr premise = parse_translated(d.premises[i], d.atomic);
    if (!eval_formula(s, premise, c).truth) {
      v.note += "instance " + std::to_string(i + 1) +
                " holds vacuously, its premise fails; ";
      continue;
    }
    formula_ptr alpha = parse_translated(d.bodies[i], d.atomic);
    formula_ptr body = f_forall(
        "t", univ_sort(d.atomic),
        f_iff(f_member(fvar("t"), fvar("w"), model_mem(d.atomic)),
              f_exists("s", univ_sort(d.atomic),
                       f_and(f_member(fvar("s"), fvar("z"),
                                      model_mem(d.atomic)),
                             alpha))));
    const std::vector<term_id>& univ = d.atomic ? c.all : c.zf;
    for (term_id z : sets_domain(c, d.atomic)) {
      detail::formula_eval ev{s, c, {}, {}, {}, {}};
      std::vector<term_id> ms;
      for (term_id t : univ) {
        bool hit = false;
        for (term_id src : s.support(z)) {
          ev.binds.clear();
          ev.binds.emplace_back("s", src);
          ev.binds.emplace_back("t", t);
          if (ev.eval(alpha)) {
            hit = true;
            break;
          }
        }
        if (hit) ms.push_back(t);
      }
      if (d.atomic) {
        std::vector<term_id> closed = ms;
        for (term_id m : ms)
          if (c.a.acts_on(m)) closed.push_back(c.a.conjugate(m));
        std::sort(closed.begin(), closed.end());
        closed.erase(std::unique(closed.begin(), closed.end()), closed.end());
        ms = std::move(closed);
      }
      term_id w = identity_over(s, std::move(ms));
      require_members_in_carrier(s, c, w, d.atomic);
      std::map<std::string, term_id> env{{"z", z}, {"w", w}};
      if (!eval_formula(s, body, c, env, {w}).truth) {
        v.truth = false;
        v.counterexample["z"] = z;
        v.note = "instance " + std::to_string(i + 1) + " of " +
                 std::to_string(d.bodies.size()) + " fails";
        return v;
      }
    }
  }
  return v;
}

// Union. The witness gathers the elements of the Menge elements of x.
inline verdict check_unions(term_store& s, const carrier& c,
                            const axiom_def& d) {
  verdict v;
  v.mode = "witness";
  v.truth = true;
  formula_ptr body = f_forall(
      "z", univ_sort(d.atomic),
      f_iff(f_member(fvar("z"), fvar("y"), model_mem(d.atomic)),
            f_exists("t", univ_sort(d.atomic),
                     f_and(f_member(fvar("z"), fvar("t"), model_mem(d.atomic)),
                           f_member(fvar("t"), fvar("x"),
                                    model_mem(d.atomic))))));
  for (term_id x : sets_domain(c, d.atomic)) {
    term_id y = levy_union(s, x, c);
    require_members_in_carrier(s, c, y, d.atomic);
    std::map<std::string, term_id> env{{"x", x}, {"y", y}};
    if (!eval_formula(s, body, c, env, {y}).truth) {
      v.truth = false;
      v.counterexample["x"] = x;
      return v;
    }
  }
  return v;
}

// Infinity, prefix reading: the literal axiom wants every member's successor
// strictly inside some Menge, which no finite carrier can grant. The check
// searches instead for a Menge holding the empty term whose members' suc-
// cessors stay inside it or reach the Menge itself, and records the weakened
// mode in the verdict.
inline verdict check_infinity(term_store& s, const carrier& c,
                              const axiom_def& d) {
  verdict v;
  v.mode = "prefix";
  for (term_id x : sets_domain(c, d.atomic)) {
    if (!s.acts_on(x, s.phi0())) continue;
    bool ok = true;
    for (term_id y : s.support(x)) {
      term_id sy = successor(s, y);
      if (sy != x && !s.acts_on(x, sy)) {
        ok = false;
        break;
      }
    }
    if (ok) {
      v.truth = true;
      v.witness["x"] = x;
      v.note = "witness " + describe_term(s, c, x) +
               "; each member's successor stays inside or reaches the "
               "witness itself";
      return v;
    }
  }
  v.truth = false;
  v.note = "no prefix witness at this rank bound";
  return v;
}

// Choice, literal reading: a selector must meet every member of the family in
// exactly one element. Levy Mengen take atoms only in conjugate pairs, so a
// family with a member whose elements are atoms alone defeats every selector.
// The premise adds that members are nonempty, otherwise the empty Menge would
// pad any family into a counterexample of no interest.
inline verdict check_choice(term_store& s, const carrier& c,
                            const axiom_def& d) {
  verdict v;
  v.mode = "search";
  v.truth = true;
  auto common_count = [&](const std::vector<term_id>& a,
                          const std::vector<term_id>& b) {
    std::size_t i = 0, j = 0, n = 0;
    while (i < a.size() && j < b.size()) {
      if (a[i] < b[j]) {
        ++i;
      } else if (b[j] < a[i]) {
        ++j;
      } else {
        ++n;
        ++i;
        ++j;
      }
    }
    return n;
  };
  for (term_id x : sets_domain(c, d.atomic)) {
    std::vector<const std::vector<term_id>*> fam;
    bool prem = true;
    const std::vector<term_id>& xs = c.members.at(x);
    for (term_id m : xs) {
      if (d.atomic && c.a.acts_on(m)) continue;  // set-sorted members only
      const std::vector<term_id>& es = c.members.at(m);
      if (es.empty()) {
        prem = false;
        break;
      }
      fam.push_back(&es);
    }
    if (!prem || fam.empty()) continue;
    for (std::size_t i = 0; i + 1 < fam.size() && prem; ++i)
      for (std::size_t j = i + 1; j < fam.size(); ++j)
        if (common_count(*fam[i], *fam[j]) != 0) {
          prem = false;
          break;
        }
    if (!prem) continue;
    bool found = false;
    for (term_id y : sets_domain(c, d.atomic)) {
      const std::vector<term_id>& ys = c.members.at(y);
      bool ok = true;
      for (const auto* es : fam)
        if (common_count(ys, *es) != 1) {
          ok = false;
          break;
        }
      if (ok) {
        found = true;
        break;
      }
    }
    if (!found) {
      v.truth = false;
      v.counterexample["x"] = x;
      for (term_id m : xs) {
        if (c.a.acts_on(m)) continue;
        bool pure_atoms = true;
        for (term_id e : c.members.at(m))
          if (!c.a.acts_on(e)) pure_atoms = false;
        if (pure_atoms) {
          v.note = "the family " + describe_term(s, c, x) +
                   " admits no selector: its member " +
                   describe_term(s, c, m) +
                   " meets every Levy Menge in a full conjugate pair or not "
                   "at all, never in a lone element";
          break;
        }
      }
      return v;
    }
  }
  return v;
}

}  // namespace detail

inline std::vector<std::string> axiom_names() {
  std::vector<std::string> out;
  for (const detail::axiom_def& d : detail::axiom_table()) out.push_back(d.name);
  return out;
}

inline const std::vector<const char*>& axiom_texts(const std::string& name) {
  for (const detail::axiom_def& d : detail::axiom_table())
    if (name == d.name) return d.texts;
  raise(errc::unknown_axiom, "unknown axiom " + name);
}

inline verdict check_axiom(term_store& s, const std::string& name,
                           const carrier& c) {
  for (const detail::axiom_def& d : detail::axiom_table()) {
    if (name != d.name) continue;
    verdict v;
    switch (d.strat) {
      case detail::axiom_strategy::search: v = detail::check_search(s, c, d); break;
      case detail::axiom_strategy::rows: v = detail::check_rows(s, c, d); break;
      case detail::axiom_strategy::pair: v = detail::check_pair(s, c, d); break;
      case detail::axiom_strategy::power: v = detail::check_power(s, c, d); break;
      case detail::axiom_strategy::separation:
        v = detail::check_separation(s, c, d);
        break;
      case detail::axiom_strategy::replacement:
        v = detail::check_replacement(s, c, d);
        break;
      case detail::axiom_strategy::unions: v = detail::check_unions(s, c, d); break;
      case detail::axiom_strategy::infinity:
        v = detail::check_infinity(s, c, d);
        break;
      case detail::axiom_strategy::choice: v = detail::check_choice(s, c, d); break;
    }
    v.axiom = name;
    return v;
  }
  raise(errc::unknown_axiom, "unknown axiom " + name);
}

}  // namespace flow
