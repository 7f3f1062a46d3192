#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "flow/atoms.hpp"
#include "flow/axioms.hpp"
#include "flow/calculus.hpp"
#include "flow/dot.hpp"
#include "flow/error.hpp"
#include "flow/json_io.hpp"
#include "flow/logic.hpp"
#include "flow/ordinals.hpp"
#include "flow/suites.hpp"
#include "flow/term.hpp"
#include "flow/termexpr.hpp"
#include "flow/zfu.hpp"

namespace {

struct options {
  std::string format = "text";
  unsigned depth = 3;
  unsigned width = 3;
  unsigned brick_size = 2;
  unsigned rank_bound = 2;
  std::uint64_t seed = 2026;
};

// text shows the canonical surface syntax, json the versioned document,
// dot the diagram with --depth levels of nested rectangles
void emit_term(flow::term_store& s, flow::term_id t, const options& opt) {
  if (opt.format == "json") {
    std::cout << flow::serialize(s, t) << "\n";
  } else if (opt.format == "dot") {
    flow::brick a = flow::appropriate_brick(s, opt.brick_size);
    flow::dot_options d;
    d.depth = opt.depth;
    d.atoms = &a;
    std::cout << flow::render_dot(s, t, d);
  } else {
    std::cout << flow::print_term(s, t) << "\n";
  }
}

// predicate mini-language for restrict: "in { e, e, ... }" keeps arguments
// listed in the set, "= e" keeps one argument, "rank < N" / "rank <= N" /
// "rank = N" keep ZF-set arguments by rank
struct predicate {
  enum class kind { in_set, equals, rank_lt, rank_le, rank_eq };
  kind k = kind::equals;
  std::vector<flow::term_id> set;
  flow::term_id rhs = flow::term_id(0);
  std::uint32_t bound = 0;
};

std::vector<std::string> split_top_level(const std::string& body, std::size_t base) {
  std::vector<std::string> parts;
  int depth = 0;
  std::string cur;
  for (std::size_t i = 0; i < body.size(); ++i) {
    char c = body[i];
    if (c == '{' || c == '(') ++depth;
    if (c == '}' || c == ')') {
      if (--depth < 0)
        flow::raise(flow::errc::syntax_error,
                    "unbalanced brackets at position " + std::to_string(base + i));
    }
    if (c == ',' && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (depth != 0) flow::raise(flow::errc::syntax_error, "unbalanced brackets in the set list");
  parts.push_back(cur);
  return parts;
}

predicate parse_predicate(flow::term_store& s, const std::string& text, unsigned brick_size) {
  std::size_t i = 0;
  auto skip = [&] { while (i < text.size() && std::isspace((unsigned char)text[i])) ++i; };
  skip();
  predicate p;
  if (text.compare(i, 2, "in") == 0 &&
      (i + 2 == text.size() || !std::isalnum((unsigned char)text[i + 2]))) {
    i += 2;
    skip();
    if (i >= text.size() || text[i] != '{')
      flow::raise(flow::errc::syntax_error,
                  "expected '{' after 'in' at position " + std::to_string(i));
    std::size_t close = text.rfind('}');
    if (close == std::string::npos || close < i)
      flow::raise(flow::errc::syntax_error, "missing '}' in the set list");
    for (std::size_t j = close + 1; j < text.size(); ++j)
      if (!std::isspace((unsigned char)text[j]))
        flow::raise(flow::errc::syntax_error,
                    "trailing input after the set list at position " + std::to_string(j));
    p.k = predicate::kind::in_set;
    std::string body = text.substr(i + 1, close - i - 1);
    bool blank = body.find_first_not_of(" \t\n") == std::string::npos;
    if (!blank)
      for (const std::string& part : split_top_level(body, i + 1))
        p.set.push_back(flow::parse_term(s, part, brick_size));
    return p;
  }
  if (text[i] == '=') {
    p.k = predicate::kind::equals;
    p.rhs = flow::parse_term(s, text.substr(i + 1), brick_size);
    return p;
  }
  if (text.compare(i, 4, "rank") == 0) {
    i += 4;
    skip();
    if (text.compare(i, 2, "<=") == 0) {
      p.k = predicate::kind::rank_le;
      i += 2;
    } else if (i < text.size() && text[i] == '<') {
      p.k = predicate::kind::rank_lt;
      ++i;
    } else if (i < text.size() && text[i] == '=') {
      p.k = predicate::kind::rank_eq;
      ++i;
    } else {
      flow::raise(flow::errc::syntax_error,
                  "expected '<', '<=' or '=' after 'rank' at position " + std::to_string(i));
    }
    skip();
    std::size_t used = 0;
    unsigned long n = 0;
    try {
      n = std::stoul(text.substr(i), &used);
    } catch (const std::exception&) {
      flow::raise(flow::errc::syntax_error,
                  "expected a number after the comparison at position " + std::to_string(i));
    }
    for (std::size_t j = i + used; j < text.size(); ++j)
      if (!std::isspace((unsigned char)text[j]))
        flow::raise(flow::errc::syntax_error,
                    "trailing input after the rank bound at position " + std::to_string(j));
    p.bound = static_cast<std::uint32_t>(n);
    return p;
  }
  flow::raise(flow::errc::syntax_error,
              "a predicate starts with 'in', '=' or 'rank' (position " + std::to_string(i) + ")");
}

bool satisfies(flow::term_store& s, flow::term_id arg, const predicate& p) {
  switch (p.k) {
    case predicate::kind::in_set:
      return std::find(p.set.begin(), p.set.end(), arg) != p.set.end();
    case predicate::kind::equals: return arg == p.rhs;
    default: break;
  }
  if (!flow::is_zf_set(s, arg)) return false;
  flow::rank_value r = flow::rank_of(s, arg);
  flow::rank_value b{false, p.bound};
  switch (p.k) {
    case predicate::kind::rank_lt: return flow::rank_less(r, b);
    case predicate::kind::rank_le: return flow::rank_less(r, b) || r == b;
    default: return r == b;
  }
}

// stage sizes follow |stage n+1| = 2^|stage n|; past the materialization
// range the count is reported symbolically
std::string stage_size_name(unsigned level) {
  std::uint64_t size = 0;
  for (unsigned i = 1; i <= level; ++i) {
    if (size >= 63) {
      std::string inner = stage_size_name(level - 1);
      return "2^" + inner;
    }
    size = std::uint64_t{1} << size;
  }
  return std::to_string(size);
}

const char* yes_no(bool b) { return b ? "yes" : "no"; }

int run(int argc, char** argv) {
  CLI::App app{"a calculus of functions: evaluate, compose, classify and check"};
  app.require_subcommand(1);
  app.fallthrough();
  options opt;
  app.add_option("--format", opt.format, "output format for term results")
      ->check(CLI::IsMember({"text", "json", "dot"}))
      ->capture_default_str();
  app.add_option("--depth", opt.depth, "universe depth for checks, nesting depth for dot")
      ->capture_default_str();
  app.add_option("--width", opt.width, "universe width for checks")->capture_default_str();
  app.add_option("--brick-size", opt.brick_size, "conjugate atom pairs in the brick")
      ->capture_default_str();
  app.add_option("--rank-bound", opt.rank_bound, "carrier rank bound for axiom checks")
      ->capture_default_str();
  app.add_option("--seed", opt.seed, "seed for sampled property sweeps")->capture_default_str();
  app.set_config("--config", "", "key=value file mirroring the flags");

  std::string lhs, rhs, pred;
  unsigned level = 0;
  std::string suite = "theorems";
  std::string demo_what;

  CLI::App* c_eval = app.add_subcommand("eval", "apply one term to another");
  c_eval->add_option("function", lhs)->required();
  c_eval->add_option("argument", rhs)->required();
  CLI::App* c_compose = app.add_subcommand("compose", "compose two terms");
  c_compose->add_option("outer", lhs)->required();
  c_compose->add_option("inner", rhs)->required();
  CLI::App* c_succ = app.add_subcommand("succ", "successor of a term");
  c_succ->add_option("term", lhs)->required();
  CLI::App* c_restrict =
      app.add_subcommand("restrict", "keep the entries whose argument satisfies a predicate");
  c_restrict->add_option("term", lhs)->required();
  c_restrict->add_option("predicate", pred)->required();
  CLI::App* c_pair = app.add_subcommand("pair", "ordered pair of two terms");
  c_pair->add_option("left", lhs)->required();
  c_pair->add_option("right", rhs)->required();
  CLI::App* c_decode = app.add_subcommand("decode-pair", "split an ordered pair");
  c_decode->add_option("term", lhs)->required();
  CLI::App* c_rank = app.add_subcommand("rank", "ordinal rank of a ZF-set");
  c_rank->add_option("term", lhs)->required();
  CLI::App* c_classify = app.add_subcommand("classify", "which fragments a term belongs to");
  c_classify->add_option("term", lhs)->required();
  CLI::App* c_kernel = app.add_subcommand("kernel", "identity over the ZF-sets a term touches");
  c_kernel->add_option("term", lhs)->required();
  CLI::App* c_power = app.add_subcommand("power", "identity over the restrictions of a term");
  c_power->add_option("term", lhs)->required();
  CLI::App* c_fullpower = app.add_subcommand("fullpower", "identity over the lurkers of a term");
  c_fullpower->add_option("term", lhs)->required();
  CLI::App* c_vn = app.add_subcommand("vn-stage", "cumulative stage at a finite level");
  c_vn->add_option("level", level)->required();
  CLI::App* c_dot = app.add_subcommand("dot", "diagram of a term");
  c_dot->add_option("term", lhs)->required();
  CLI::App* c_json = app.add_subcommand("json", "serialized document of a term");
  c_json->add_option("term", lhs)->required();
  CLI::App* c_check = app.add_subcommand("check", "run a verification suite");
  c_check->add_option("--suite", suite, "theorems, zfu-axioms or pp-ac")
      ->check(CLI::IsMember({"theorems", "zfu-axioms", "pp-ac"}))
      ->capture_default_str();
  CLI::App* c_demo = app.add_subcommand("demo", "walk through a prepared scenario");
  c_demo->add_option("scenario", demo_what)->required()->check(CLI::IsMember({"pp-ac"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  flow::term_store s;
  auto term_arg = [&](const std::string& src) {
    return flow::parse_term(s, src, opt.brick_size);
  };

  if (c_eval->parsed()) {
    emit_term(s, s.eval(term_arg(lhs), term_arg(rhs)), opt);
  } else if (c_compose->parsed()) {
    emit_term(s, flow::compose(s, term_arg(lhs), term_arg(rhs)), opt);
  } else if (c_succ->parsed()) {
    emit_term(s, flow::successor(s, term_arg(lhs)), opt);
  } else if (c_restrict->parsed()) {
    flow::term_id f = term_arg(lhs);
    predicate p = parse_predicate(s, pred, opt.brick_size);
    if (!s.finite(f))
      flow::raise(flow::errc::infinite_support,
                  "restriction needs a term with finitely many entries");
    flow::term_graph kept;
    if (s.kind(f) == flow::term_kind::node)
      for (const flow::term_entry& e : s.at(f).entries)
        if (satisfies(s, e.arg, p)) kept.push_back(e);
    emit_term(s, s.node(std::move(kept)), opt);
  } else if (c_pair->parsed()) {
    emit_term(s, flow::make_pair(s, term_arg(lhs), term_arg(rhs)), opt);
  } else if (c_decode->parsed()) {
    flow::pair_parts parts = flow::decode_pair(s, term_arg(lhs));
    std::cout << "left = " << flow::print_term(s, parts.left) << "\n"
              << "right = " << flow::print_term(s, parts.right) << "\n";
  } else if (c_rank->parsed()) {
    std::cout << flow::rank_name(flow::rank_of(s, term_arg(lhs))) << "\n";
  } else if (c_classify->parsed()) {
    flow::term_id t = term_arg(lhs);
    flow::brick a = flow::appropriate_brick(s, opt.brick_size);
    std::cout << "ordinal: " << yes_no(flow::is_ordinal(s, t)) << "\n"
              << "zf-set: " << yes_no(flow::is_zf_set(s, t)) << "\n"
              << "atom: " << yes_no(flow::is_atom(s, t)) << "\n"
              << "menge: " << yes_no(flow::is_menge(s, t, a)) << "\n"
              << "levy-menge: " << yes_no(flow::is_levy_menge(s, t, a)) << "\n";
  } else if (c_kernel->parsed()) {
    emit_term(s, flow::kernel(s, term_arg(lhs)), opt);
  } else if (c_power->parsed()) {
    emit_term(s, flow::restricted_power(s, term_arg(lhs)), opt);
  } else if (c_fullpower->parsed()) {
    emit_term(s, flow::full_power(s, term_arg(lhs)), opt);
  } else if (c_vn->parsed()) {
    if (level <= 4) {
      emit_term(s, flow::vn_stage(s, level), opt);
    } else if (level <= 8) {
      std::cout << "stage " << level << " has " << stage_size_name(level)
                << " members; not materialized\n";
    } else {
      flow::raise(flow::errc::bound_too_large,
                  "stage sizes past level 8 are towers with no readable name");
    }
  } else if (c_dot->parsed()) {
    options o = opt;
    o.format = "dot";
    emit_term(s, term_arg(lhs), o);
  } else if (c_json->parsed()) {
    options o = opt;
    o.format = "json";
    emit_term(s, term_arg(lhs), o);
  } else if (c_check->parsed()) {
    std::vector<flow::property_result> results;
    std::string transcript;
    if (suite == "theorems") {
      std::cout << "checking the theorem properties over universe(" << opt.depth << ", "
                << opt.width << "), seed " << opt.seed << "\n";
      results = flow::theorem_suite(s, opt.depth, opt.width, opt.seed);
    } else if (suite == "zfu-axioms") {
      std::cout << "checking the axioms over a brick of " << opt.brick_size
                << " conjugate pairs, carrier rank " << opt.rank_bound << "\n";
      results = flow::axiom_suite(s, opt.brick_size, opt.rank_bound, &transcript);
    } else {
      std::cout << "checking the partition principle and the choice failure over a brick of "
                << opt.brick_size << " conjugate pairs\n";
      results = flow::pp_ac_suite(s, opt.brick_size, opt.rank_bound, 2 * opt.brick_size,
                                  &transcript);
    }
    std::cout << transcript;
    unsigned failed = 0;
    for (const flow::property_result& r : results) {
      if (r.ok) {
        std::cout << "property " << r.name << ": satisfied (" << r.checked << " checks)\n";
      } else {
        ++failed;
        std::cout << "property " << r.name << ": FAILED after " << r.checked
                  << " checks: " << r.note << "\n";
      }
    }
    if (failed) {
      std::cout << failed << (failed == 1 ? " property" : " properties") << " failed\n";
      return 1;
    }
    std::cout << "every property satisfied\n";
  } else if (c_demo->parsed()) {
    flow::brick a = flow::appropriate_brick(s, opt.brick_size);
    flow::ac_report rep = flow::demonstrate_ac_failure(s, a, 2 * opt.brick_size);
    std::cout << rep.text;
    if (rep.admissible != 0 || rep.candidates == 0) {
      std::cout << "a choice injection exists; the demonstration failed\n";
      return 1;
    }
    std::cout << "no candidate survives: the atoms admit no choice injection\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const flow::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.code) {
      case flow::errc::syntax_error:
      case flow::errc::elaboration_error:
      case flow::errc::unknown_axiom:
        return 2;
      case flow::errc::bound_too_large:
      case flow::errc::rank_bound_exceeded:
      case flow::errc::degree_bound_exceeded:
      case flow::errc::omega_cap_exceeded:
        return 3;
      default: return 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
