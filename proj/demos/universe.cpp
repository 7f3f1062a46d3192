// Enumerates the small finite universes level by level and reports how the
// population splits into ordinals, ZF-sets and unruly functions.

#include <iostream>

#include "flow/calculus.hpp"
#include "flow/ordinals.hpp"
#include "flow/term.hpp"
#include "flow/termexpr.hpp"

int main() {
  flow::term_store s;
  for (unsigned depth = 1; depth <= 3; ++depth) {
    for (unsigned width = 1; width <= 3; ++width) {
      std::vector<flow::term_id> uni = s.enumerate_universe(depth, width);
      unsigned ordinals = 0, zf = 0, identityish = 0;
      for (flow::term_id t : uni) {
        if (flow::is_ordinal(s, t)) ++ordinals;
        if (s.kind(t) == flow::term_kind::node && flow::is_zf_set(s, t)) ++zf;
        if (t != s.zero() && flow::subset_of(s, t, s.one())) ++identityish;
      }
      std::cout << "universe(" << depth << ", " << width << "): " << uni.size()
                << " terms, " << ordinals << " ordinals, " << zf
                << " ZF-sets, " << identityish << " identity restrictions\n";
    }
  }
  std::cout << "\na few depth-2 terms in canonical order:\n";
  std::vector<flow::term_id> uni = s.enumerate_universe(2, 2);
  for (flow::term_id t : uni) std::cout << "  " << flow::print_term(s, t) << "\n";
  return 0;
}
