#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <thread>

#include <flow/term.hpp>

#include "oracles.hpp"

using namespace flow;

TEST_CASE("constants are pre-interned and distinct") {
  term_store s;
  REQUIRE(s.size() == 6);
  std::set<term_id> ids = {s.zero(), s.one(), s.phi0(), s.omega(0), s.omega(1), s.omega(2)};
  REQUIRE(ids.size() == 6);
  REQUIRE(s.kind(s.zero()) == term_kind::zero);
  REQUIRE(s.kind(s.one()) == term_kind::one);
  REQUIRE(s.kind(s.phi0()) == term_kind::node);
  REQUIRE(s.kind(s.omega(2)) == term_kind::omega);
  REQUIRE(s.phi_index(s.phi0()) == 0);
  REQUIRE(s.phi_index(s.zero()) == -1);
  REQUIRE(s.phi_index(s.omega(0)) == -1);
  REQUIRE_FLOW_ERROR(s.omega(3), errc::omega_cap_exceeded);
}

TEST_CASE("interning is canonical") {
  term_store s;
  term_id p1 = s.phi(1);
  REQUIRE(p1 == s.node({{s.phi0(), s.phi0()}}));
  term_id p2 = s.phi(2);
  term_id again = s.node({{p1, p1}, {s.phi0(), s.phi0()}});
  term_id swapped = s.node({{s.phi0(), s.phi0()}, {p1, p1}});
  REQUIRE(again == p2);
  REQUIRE(swapped == p2);
  REQUIRE(s.phi_index(p2) == 2);

  term_id g = s.node({{p1, p1}});
  REQUIRE(s.phi_index(g) == -1);
  REQUIRE(g != p1);
  REQUIRE(g != p2);
}

TEST_CASE("graph validation") {
  term_store s;
  term_id p0 = s.phi0();
  term_id p1 = s.phi(1);
  REQUIRE_FLOW_ERROR(s.node({{p0, p0}, {p0, p1}}), errc::invalid_entry);
  REQUIRE_FLOW_ERROR(s.node({{s.zero(), p0}}), errc::invalid_entry);
  REQUIRE_FLOW_ERROR(s.node({{p0, s.zero()}}), errc::invalid_entry);
  REQUIRE_FLOW_ERROR(s.node({{s.one(), s.one()}}), errc::invalid_entry);
  REQUIRE_FLOW_ERROR(s.node({{p1, s.one()}, {s.one(), p1}}), errc::invalid_entry);
  REQUIRE_FLOW_ERROR(s.node({{term_id{9999}, p0}}), errc::invalid_entry);
  // acting on the identity with some other image is representable
  REQUIRE_NOTHROW(s.node({{s.one(), p0}}));
}

TEST_CASE("evaluation") {
  term_store s;
  term_id z = s.zero(), u = s.one(), p0 = s.phi0();
  term_id p1 = s.phi(1), p2 = s.phi(2);
  term_id gamma = s.node({{p1, p1}});
  term_id f = s.node({{p0, p1}, {p1, p0}});

  SECTION("self-evaluation") {
    for (term_id t : {z, u, p0, p1, gamma, s.omega(1)}) REQUIRE(s.eval(t, t) == t);
  }
  SECTION("rigid term") {
    for (term_id t : {z, u, p0, p1, gamma}) REQUIRE(s.eval(z, t) == z);
  }
  SECTION("identity") {
    for (term_id t : {z, p0, p1, gamma, s.omega(2)}) REQUIRE(s.eval(u, t) == t);
  }
  SECTION("graphs") {
    REQUIRE(s.eval(p2, p0) == p0);
    REQUIRE(s.eval(p2, p1) == p1);
    REQUIRE(s.eval(p2, gamma) == z);
    REQUIRE(s.eval(gamma, p1) == p1);
    REQUIRE(s.eval(gamma, p0) == z);
    REQUIRE(s.eval(f, p0) == p1);
    REQUIRE(s.eval(f, p1) == p0);
    REQUIRE(s.eval(p0, p1) == z);
    REQUIRE(s.eval(p0, z) == z);
  }
  SECTION("omega acts on the ordinals below it") {
    for (unsigned n = 0; n <= 5; ++n) REQUIRE(s.eval(s.omega(0), s.phi(n)) == s.phi(n));
    REQUIRE(s.eval(s.omega(1), s.omega(0)) == s.omega(0));
    REQUIRE(s.eval(s.omega(2), s.omega(1)) == s.omega(1));
    REQUIRE(s.eval(s.omega(2), s.omega(0)) == s.omega(0));
    REQUIRE(s.eval(s.omega(0), s.omega(1)) == z);
    REQUIRE(s.eval(s.omega(0), s.omega(2)) == z);
    REQUIRE(s.eval(s.omega(1), gamma) == z);
    REQUIRE(s.eval(s.omega(1), u) == z);
    REQUIRE(s.eval(s.omega(1), z) == z);
  }
}

TEST_CASE("support and image set") {
  term_store s;
  term_id p0 = s.phi0(), p1 = s.phi(1), p2 = s.phi(2);
  REQUIRE(s.support(p2) == std::vector<term_id>{p0, p1});
  REQUIRE(s.image_set(p2) == std::vector<term_id>{p0, p1});
  REQUIRE(s.support(s.zero()).empty());
  REQUIRE(s.support(p0).empty());
  REQUIRE_FLOW_ERROR(s.support(s.one()), errc::infinite_support);
  REQUIRE_FLOW_ERROR(s.support(s.omega(0)), errc::infinite_support);
  REQUIRE_FLOW_ERROR(s.image_set(s.omega(1)), errc::infinite_support);

  term_id f = s.node({{p0, p1}, {p1, p1}});
  REQUIRE(s.image_set(f) == std::vector<term_id>{p1});
  // the implicit self-image is not part of the image set
  REQUIRE(s.image_set(p2) == std::vector<term_id>{p0, p1});
}

TEST_CASE("acts_on") {
  term_store s;
  term_id p0 = s.phi0(), p1 = s.phi(1);
  term_id gamma = s.node({{p1, p1}});
  REQUIRE(s.acts_on(p1, p0));
  REQUIRE_FALSE(s.acts_on(p1, p1));
  REQUIRE_FALSE(s.acts_on(p0, p1));
  REQUIRE_FALSE(s.acts_on(s.zero(), p1));
  REQUIRE_FALSE(s.acts_on(s.one(), s.zero()));
  REQUIRE(s.acts_on(s.one(), gamma));
  REQUIRE(s.acts_on(s.omega(0), s.phi(3)));
  REQUIRE_FALSE(s.acts_on(s.omega(0), gamma));
  REQUIRE(s.acts_on(s.omega(1), s.omega(0)));
  REQUIRE_FALSE(s.acts_on(s.omega(0), s.omega(1)));
}

TEST_CASE("canonical order is total") {
  term_store s;
  std::vector<term_id> sample = s.enumerate_universe(2, 2);
  sample.push_back(s.omega(0));
  sample.push_back(s.omega(1));
  sample.push_back(s.omega(2));

  for (term_id a : sample) REQUIRE(s.cmp(a, a) == 0);
  for (term_id a : sample)
    for (term_id b : sample) {
      REQUIRE(s.cmp(a, b) == -s.cmp(b, a));
      if (a != b) REQUIRE(s.cmp(a, b) != 0);
    }
  for (term_id a : sample)
    for (term_id b : sample)
      for (term_id c : sample)
        if (s.cmp(a, b) < 0 && s.cmp(b, c) < 0) REQUIRE(s.cmp(a, c) < 0);

  // pinned low end of the order
  REQUIRE(s.cmp(s.zero(), s.phi0()) < 0);
  REQUIRE(s.cmp(s.phi0(), s.one()) < 0);
  REQUIRE(s.cmp(s.one(), s.omega(0)) < 0);
  REQUIRE(s.cmp(s.omega(0), s.omega(1)) < 0);
  REQUIRE(s.cmp(s.omega(1), s.omega(2)) < 0);
  REQUIRE(s.cmp(s.omega(2), s.phi(1)) < 0);
  REQUIRE(s.cmp(s.phi(1), s.phi(2)) < 0);
}

TEST_CASE("clones") {
  term_store s;
  std::vector<term_id> sample = s.enumerate_universe(2, 2);
  sample.push_back(s.omega(0));
  sample.push_back(s.omega(1));
  sample.push_back(s.omega(2));

  REQUIRE(s.sim(s.zero(), s.phi0()));
  REQUIRE(s.sim(s.phi0(), s.zero()));
  for (term_id t : sample) REQUIRE(s.sim(t, t));
  REQUIRE_FALSE(s.sim(s.phi(1), s.phi(2)));
  REQUIRE_FALSE(s.sim(s.omega(0), s.omega(1)));

  int clone_pairs = 0;
  for (term_id a : sample)
    for (term_id b : sample)
      if (a < b && s.sim(a, b)) {
        ++clone_pairs;
        REQUIRE(((a == s.zero() && b == s.phi0()) || (a == s.phi0() && b == s.zero())));
      }
  REQUIRE(clone_pairs == 1);
}

TEST_CASE("universe enumeration matches the reference enumeration") {
  term_store s;

  std::vector<term_id> u11 = s.enumerate_universe(1, 1);
  REQUIRE(u11 == std::vector<term_id>{s.zero(), s.one(), s.phi0(), s.phi(1)});

  std::vector<term_id> u22 = s.enumerate_universe(2, 2);
  REQUIRE(u22.size() == 11);

  std::set<std::string> got22;
  for (term_id t : u22)
    if (s.kind(t) == term_kind::node) got22.insert(oracle::str(s, t));
  REQUIRE(got22.size() == 9);
  REQUIRE(got22 == oracle::universe(2, 2));

  std::vector<term_id> u32 = s.enumerate_universe(3, 2);
  std::set<std::string> got32;
  for (term_id t : u32)
    if (s.kind(t) == term_kind::node) got32.insert(oracle::str(s, t));
  REQUIRE(u32.size() == got32.size() + 2);
  REQUIRE(got32 == oracle::universe(3, 2));
  REQUIRE(got32.size() == 2998);
}

TEST_CASE("universe (3,3) has the expected cardinality") {
  term_store s;
  std::vector<term_id> u = s.enumerate_universe(3, 3);

  // graphs over the 9-term depth-2 universe with at most 3 arguments
  std::uint64_t expect = 0;
  std::uint64_t choose = 1, power = 1;
  for (unsigned k = 0; k <= 3; ++k) {
    if (k > 0) {
      choose = choose * (9 - k + 1) / k;
      power *= 9;
    }
    expect += choose * power;
  }
  REQUIRE(expect == 64234);
  REQUIRE(u.size() == expect + 2);

  std::set<term_id> dedup(u.begin(), u.end());
  REQUIRE(dedup.size() == u.size());
}

TEST_CASE("universe bounds") {
  term_store s;
  REQUIRE_FLOW_ERROR(s.enumerate_universe(5, 2), errc::bound_too_large);
  REQUIRE_FLOW_ERROR(s.enumerate_universe(2, 5), errc::bound_too_large);
  REQUIRE_FLOW_ERROR(s.enumerate_universe(4, 3), errc::bound_too_large);
  enum_limits tight;
  tight.max_depth = 2;
  REQUIRE_FLOW_ERROR(s.enumerate_universe(3, 2, tight), errc::bound_too_large);
}

TEST_CASE("enumeration is deterministic across stores") {
  term_store a, b;
  std::vector<term_id> ua = a.enumerate_universe(2, 2);
  std::vector<term_id> ub = b.enumerate_universe(2, 2);
  REQUIRE(ua.size() == ub.size());
  for (std::size_t i = 0; i < ua.size(); ++i)
    REQUIRE(oracle::str(a, ua[i]) == oracle::str(b, ub[i]));
  REQUIRE(a.enumerate_universe(2, 2) == ua);
}

TEST_CASE("sampling is seeded and hits the requested stratum") {
  term_store s;
  std::vector<term_id> x = s.sample_universe(4, 3, 40, 7);
  std::vector<term_id> y = s.sample_universe(4, 3, 40, 7);
  REQUIRE(x == y);
  REQUIRE(x.size() == 40);
  std::set<term_id> dedup(x.begin(), x.end());
  REQUIRE(dedup.size() == 40);
  for (term_id t : x) {
    REQUIRE(s.kind(t) == term_kind::node);
    REQUIRE(s.depth(t) == 4);
  }
  std::vector<term_id> z = s.sample_universe(4, 3, 40, 8);
  REQUIRE(x != z);
}

TEST_CASE("depth bookkeeping") {
  term_store s;
  REQUIRE(s.depth(s.phi0()) == 0);
  REQUIRE(s.depth(s.zero()) == 0);
  REQUIRE(s.depth(s.phi(1)) == 1);
  REQUIRE(s.depth(s.phi(2)) == 2);
  term_id gamma = s.node({{s.phi(1), s.phi(1)}});
  REQUIRE(s.depth(gamma) == 2);
  REQUIRE(s.depth(s.node({{s.phi0(), gamma}})) == 3);
}

TEST_CASE("phi chain") {
  term_store s;
  term_id p4 = s.phi(4);
  REQUIRE(s.phi_index(p4) == 4);
  term_graph g = s.at(p4).entries;
  REQUIRE(g.size() == 4);
  for (const term_entry& e : g) REQUIRE(e.arg == e.image);
  term_id manual = s.node({{s.phi(0), s.phi(0)},
                           {s.phi(1), s.phi(1)},
                           {s.phi(2), s.phi(2)},
                           {s.phi(3), s.phi(3)}});
  REQUIRE(manual == p4);
}

TEST_CASE("concurrent interning yields one id per structure") {
  std::vector<std::vector<term_id>> results(8);
  term_store s;
  auto work = [&s](std::vector<term_id>& out) {
    for (unsigned n = 0; n < 60; ++n) out.push_back(s.phi(n));
    for (unsigned i = 0; i < 20; ++i)
      for (unsigned j = 0; j < 20; ++j) out.push_back(s.node({{s.phi(i), s.phi(j)}}));
  };
  std::vector<std::thread> pool;
  for (auto& r : results) pool.emplace_back(work, std::ref(r));
  for (auto& t : pool) t.join();
  for (std::size_t i = 1; i < results.size(); ++i) REQUIRE(results[i] == results[0]);
}
