// Walks the two power constructions up the ordinal chain: the full power
// collects every function over the members (count (n+1)^n), the restricted
// power collects the restrictions (count 2^n), and the cumulative stages
// iterate the restricted power from the empty function.

#include <iostream>

#include "flow/calculus.hpp"
#include "flow/ordinals.hpp"
#include "flow/term.hpp"
#include "flow/termexpr.hpp"

int main() {
  flow::term_store s;
  for (unsigned n = 0; n <= 4; ++n) {
    flow::term_id p = s.phi(n);
    std::cout << "phi " << n << ": full power has " << s.support_size(flow::full_power(s, p))
              << " members, restricted power has "
              << s.support_size(flow::restricted_power(s, p)) << "\n";
  }
  std::cout << "\nthe restricted power of phi 2 is "
            << flow::print_term(s, flow::restricted_power(s, s.phi(2))) << "\n";
  std::cout << "its members are phi 0, phi 1, phi 2 and the off-chain set {phi 1}\n\n";
  for (unsigned level = 0; level <= 4; ++level)
    std::cout << "stage " << level << " has " << s.support_size(flow::vn_stage(s, level))
              << " members\n";
  std::cout << "stage 5 would have 65536 members\n";
  return 0;
}
