#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include <flow/atoms.hpp>
#include <flow/calculus.hpp>
#include <flow/dot.hpp>
#include <flow/json_io.hpp>
#include <flow/ordinals.hpp>
#include <flow/term.hpp>
#include <flow/termexpr.hpp>

#include "oracles.hpp"

using namespace flow;

static std::string golden(const std::string& name) {
  std::string path = std::string(FLOW_GOLDEN_DIR) + "/" + name;
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST_CASE("surface expressions elaborate to the expected terms") {
  term_store s;
  REQUIRE(parse_term(s, "zero") == s.zero());
  REQUIRE(parse_term(s, "one") == s.one());
  REQUIRE(parse_term(s, "phi 2") == s.phi(2));
  REQUIRE(parse_term(s, "omega 1") == s.omega(1));
  REQUIRE(parse_term(s, "{phi 0 -> phi 1, phi 1 -> phi 2}") ==
          s.node({{s.phi0(), s.phi(1)}, {s.phi(1), s.phi(2)}}));
  REQUIRE(parse_term(s, "compose(zero, zero)") == s.phi0());
  REQUIRE(parse_term(s, "succ(phi 1)") == s.phi(2));
  REQUIRE(parse_term(s, "power(phi 2)") == restricted_power(s, s.phi(2)));
  REQUIRE(parse_term(s, "fullpower(phi 1)") == full_power(s, s.phi(1)));
  REQUIRE(parse_term(s, "union(phi 3)") == arbitrary_union(s, s.phi(3)));
  REQUIRE(parse_term(s, "kernel({phi 1 -> phi 2})") ==
          kernel(s, s.node({{s.phi(1), s.phi(2)}})));
  REQUIRE(parse_term(s, "pair(phi 1, phi 0)") == make_pair(s, s.phi(1), s.phi0()));
  REQUIRE(parse_term(s, "let x = phi 1 in pair(x, x)") ==
          make_pair(s, s.phi(1), s.phi(1)));
  REQUIRE(parse_term(s, "let x = phi 1 in let x = succ(x) in x") == s.phi(2));
  REQUIRE(parse_term(s, "(((phi 1)))") == s.phi(1));

  brick a = appropriate_brick(s, 2);
  REQUIRE(parse_term(s, "alpha 0") == a.atoms[0]);
  REQUIRE(parse_term(s, "abar 0") == a.atoms[1]);
  REQUIRE(parse_term(s, "alpha 1", 2) == a.atoms[2]);
  REQUIRE(parse_term(s, "{alpha 0 -> abar 0}") == s.node({{a.atoms[0], a.atoms[1]}}));
}

TEST_CASE("surface parse and print are mutually inverse") {
  const char* fixtures[] = {
      "zero",
      "one",
      "phi 4",
      "omega 2",
      "alpha 1",
      "abar 0",
      "{phi 0 -> phi 1}",
      "{phi 0 -> phi 1, phi 1 -> phi 0}",
      "compose(phi 1, phi 2)",
      "pair({phi 0 -> phi 1}, zero)",
      "succ(power(fullpower(phi 1)))",
      "union(kernel(phi 2))",
      "let x = phi 1 in {x -> x}",
      "let x = phi 1 in let y = succ(x) in pair(x, y)",
  };
  for (const char* src : fixtures) {
    texpr e = parse_term_expr(src);
    std::string printed = print_term_expr(e);
    REQUIRE(printed == src);
    REQUIRE(print_term_expr(parse_term_expr(printed)) == printed);
  }

  // an interned term prints to a parseable expression that elaborates back
  // to the identical handle
  term_store s;
  std::vector<term_id> uni = s.enumerate_universe(3, 2);
  for (term_id t : uni) {
    std::string text = print_term(s, t);
    REQUIRE(parse_term(s, text) == t);
  }
  brick a = appropriate_brick(s, 2);
  for (term_id atom : a.atoms) {
    REQUIRE(parse_term(s, print_term(s, atom)) == atom);
  }
  REQUIRE(print_term(s, s.phi(3)) == "phi 3");
  REQUIRE(print_term(s, s.one()) == "one");
  REQUIRE(print_term(s, s.omega(0)) == "omega 0");
  REQUIRE(print_term(s, s.node({{s.phi(1), s.phi(2)}})) == "{phi 1 -> phi 2}");
}

TEST_CASE("malformed surface input is rejected with positions") {
  term_store s;
  struct bad_case {
    const char* src;
    errc code;
  };
  const bad_case cases[] = {
      {"", errc::syntax_error},
      {"phi", errc::syntax_error},
      {"phi x", errc::syntax_error},
      {"compose(zero)", errc::syntax_error},
      {"compose(zero, zero, zero)", errc::syntax_error},
      {"{zero -> }", errc::syntax_error},
      {"{zero zero}", errc::syntax_error},
      {"zero one", errc::syntax_error},
      {"pair(zero, zero", errc::syntax_error},
      {"let zero = one in zero", errc::syntax_error},
      {"let x = one in", errc::syntax_error},
      {"let x one in x", errc::syntax_error},
      {"phi 2000000000", errc::syntax_error},
      {"@", errc::syntax_error},
      {"a - b", errc::syntax_error},
      {"phi 70", errc::bound_too_large},
      {"alpha 2", errc::elaboration_error},
      {"abar 9", errc::elaboration_error},
      {"y", errc::elaboration_error},
      {"let x = phi 1 in y", errc::elaboration_error},
      {"{one -> one}", errc::invalid_entry},
  };
  for (const bad_case& c : cases) REQUIRE_FLOW_ERROR(parse_term(s, c.src), c.code);

  try {
    parse_term(s, "compose(zero; zero)");
    REQUIRE(false);
  } catch (const error& e) {
    REQUIRE(e.code == errc::syntax_error);
    REQUIRE(std::string(e.what()).find("position 12") != std::string::npos);
  }
}

TEST_CASE("json documents round-trip to the identical handle") {
  term_store s;
  REQUIRE(deserialize(s, serialize(s, s.phi(3))) == s.phi(3));
  REQUIRE(deserialize(s, serialize(s, s.zero())) == s.zero());
  REQUIRE(deserialize(s, serialize(s, s.one())) == s.one());
  REQUIRE(deserialize(s, serialize(s, s.omega(2))) == s.omega(2));

  brick a = appropriate_brick(s, 3);
  for (term_id atom : a.atoms) REQUIRE(deserialize(s, serialize(s, atom)) == atom);
  REQUIRE(deserialize(s, serialize(s, a.menge)) == a.menge);

  std::vector<term_id> uni = s.enumerate_universe(3, 2);
  for (term_id t : uni) REQUIRE(deserialize(s, serialize(s, t)) == t);

  // documents are stable bytes: serializing twice gives the same text
  term_id f = make_pair(s, s.phi(2), a.atoms[0]);
  REQUIRE(serialize(s, f) == serialize(s, f));

  // a fresh store accepts a document produced elsewhere
  std::string doc = serialize(s, restricted_power(s, s.phi(2)));
  term_store other;
  term_id imported = deserialize(other, doc);
  REQUIRE(imported == restricted_power(other, other.phi(2)));
}

TEST_CASE("broken json documents are rejected by cause") {
  term_store s;
  const char* malformed[] = {
      "][",
      "42",
      "{}",
      R"({"version":1})",
      R"({"version":"1","nodes":[],"root":0})",
      R"({"version":1,"nodes":[{"id":0,"kind":"zero"}]})",
      R"({"version":1,"nodes":[{"id":0,"kind":"mystery"}],"root":0})",
      R"({"version":1,"nodes":[{"id":0,"kind":"node"}],"root":0})",
      R"({"version":1,"nodes":[{"id":0,"kind":"omega"}],"root":0})",
      R"({"version":1,"nodes":[{"id":0,"kind":"zero"},{"id":0,"kind":"one"}],"root":0})",
      R"({"version":1,"nodes":[{"id":0,"kind":"node","entries":[[1,1]]},{"id":1,"kind":"node","entries":[]}],"root":0})",
      R"({"version":1,"nodes":[{"id":0,"kind":"node","entries":[]}],"root":7})",
      R"({"version":1,"nodes":[{"id":0,"kind":"zero"},{"id":1,"kind":"node","entries":[[0,0]]}],"root":1})",
  };
  for (const char* doc : malformed)
    REQUIRE_FLOW_ERROR(deserialize(s, doc), errc::malformed_document);

  // an image spelled as the empty term must be absent instead
  const char* zero_image =
      R"({"version":1,"nodes":[{"id":0,"kind":"zero"},{"id":1,"kind":"node","entries":[]},{"id":2,"kind":"node","entries":[[1,0]]}],"root":2})";
  REQUIRE_FLOW_ERROR(deserialize(s, zero_image), errc::malformed_document);

  REQUIRE_FLOW_ERROR(
      deserialize(s, R"({"version":2,"nodes":[{"id":0,"kind":"zero"}],"root":0})"),
      errc::version_mismatch);
}

TEST_CASE("diagrams match the goldens byte for byte") {
  term_store s;
  REQUIRE(render_dot(s, s.phi0()) == golden("phi0.dot"));
  REQUIRE(render_dot(s, s.phi(1)) == golden("phi1.dot"));
  REQUIRE(render_dot(s, s.phi(2)) == golden("phi2.dot"));

  // a three-step action chain: the head of the chain acts on a and b, the
  // final image c sits outside the rectangle because nothing acts on it
  term_id a = identity_over(s, {s.phi(1)});
  term_id b = identity_over(s, {s.phi(2)});
  term_id c = identity_over(s, {s.phi(1), s.phi(2)});
  term_id f = s.node({{a, b}, {b, c}});
  REQUIRE(render_dot(s, f) == golden("figure_f.dot"));

  dot_options nested;
  nested.depth = 2;
  REQUIRE(render_dot(s, make_pair(s, s.phi(1), s.phi0()), nested) ==
          golden("kuratowskian_pair.dot"));
  REQUIRE(render_dot(s, make_pair(s, s.phi0(), s.phi(1)), nested) ==
          golden("nonkuratowskian_pair.dot"));

  dot_options deep;
  deep.depth = 0;
  REQUIRE_FLOW_ERROR(render_dot(s, s.phi0(), deep), errc::bound_too_large);
  deep.depth = 7;
  REQUIRE_FLOW_ERROR(render_dot(s, s.phi0(), deep), errc::bound_too_large);
}

TEST_CASE("diagram structure reflects the term") {
  term_store s;

  // the blank and the filled rectangle
  std::string z = render_dot(s, s.zero());
  REQUIRE(z.find("label=\"zero\"") != std::string::npos);
  std::string u = render_dot(s, s.one());
  REQUIRE(u.find("fillcolor=\"black\"") != std::string::npos);

  // the identity entry of phi 1 draws a self-loop on phi 0
  std::string p1 = render_dot(s, s.phi(1));
  REQUIRE(p1.find("label=\"phi 0\"") != std::string::npos);

  // the empty term never appears as a member even when an image collapses
  term_id g = s.node({{s.phi(1), s.phi0()}});
  std::string gd = render_dot(s, g);
  REQUIRE(gd.find("label=\"phi 1\"") != std::string::npos);
  REQUIRE(gd.find("label=\"zero\"") == std::string::npos);

  // atoms are labeled by their brick names when the brick is supplied
  brick a = appropriate_brick(s, 1);
  dot_options with_atoms;
  with_atoms.atoms = &a;
  std::string m = render_dot(s, a.menge, with_atoms);
  REQUIRE(m.find("label=\"alpha 0\"") != std::string::npos);
  REQUIRE(m.find("label=\"abar 0\"") != std::string::npos);
}

TEST_CASE("documents conform to the published schema") {
  // a light structural validation driven by the schema file itself: required
  // keys, the kind enumeration, and the per-kind payload rules
  std::ifstream in(FLOW_SCHEMA_FILE);
  REQUIRE(in.good());
  nlohmann::json schema = nlohmann::json::parse(in, nullptr, false);
  REQUIRE(!schema.is_discarded());
  const auto& props = schema.at("properties");
  std::set<std::string> doc_required;
  for (const auto& k : schema.at("required")) doc_required.insert(k.get<std::string>());
  std::set<std::string> kinds;
  for (const auto& k : props.at("nodes").at("items").at("properties").at("kind").at("enum"))
    kinds.insert(k.get<std::string>());
  std::set<std::string> node_keys;
  for (const auto& [key, val] : props.at("nodes").at("items").at("properties").items())
    node_keys.insert(key);

  term_store s;
  brick a = appropriate_brick(s, 2);
  const term_id subjects[] = {s.zero(), s.one(), s.omega(1), s.phi(3), a.atoms[0], a.menge,
                              make_pair(s, a.atoms[0], s.phi(1))};
  bool saw_omega = false;
  for (term_id t : subjects) {
    nlohmann::json doc = nlohmann::json::parse(serialize(s, t));
    REQUIRE(doc.is_object());
    for (const std::string& key : doc_required) REQUIRE(doc.contains(key));
    for (const auto& [key, val] : doc.items()) REQUIRE(doc_required.count(key) == 1);
    REQUIRE(doc.at("version") == props.at("version").at("const"));
    REQUIRE(doc.at("root").is_number_unsigned());
    REQUIRE(doc.at("nodes").is_array());
    REQUIRE(!doc.at("nodes").empty());
    for (const auto& node : doc.at("nodes")) {
      REQUIRE(node.is_object());
      REQUIRE(node.at("id").is_number_unsigned());
      std::string kind = node.at("kind").get<std::string>();
      REQUIRE(kinds.count(kind) == 1);
      for (const auto& [key, val] : node.items()) REQUIRE(node_keys.count(key) == 1);
      if (kind == "omega") {
        saw_omega = true;
        REQUIRE(node.at("index").is_number_unsigned());
        REQUIRE(node.at("index").get<unsigned>() <= 2);
      }
      if (kind == "node") {
        REQUIRE(node.at("entries").is_array());
        for (const auto& entry : node.at("entries")) {
          REQUIRE(entry.is_array());
          REQUIRE(entry.size() == 2);
          REQUIRE(entry[0].is_number_unsigned());
          REQUIRE(entry[1].is_number_unsigned());
        }
      }
    }
  }
  // the atom document reaches its symbolic members through kind tags
  REQUIRE(saw_omega);
  std::string atom_doc = serialize(s, a.atoms[0]);
  REQUIRE(atom_doc.find("\"kind\":\"omega\"") != std::string::npos);
}

TEST_CASE("sampled terms survive a serialization round trip") {
  term_store s;
  std::vector<term_id> sampled = s.sample_universe(3, 3, 400, 99);
  for (term_id t : sampled) {
    REQUIRE(deserialize(s, serialize(s, t)) == t);
  }
}
