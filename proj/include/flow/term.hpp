#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <cassert>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "error.hpp"

namespace flow {

using term_id = std::uint32_t;

enum class term_kind : std::uint8_t { zero, one, omega, node };

struct term_entry {
  term_id arg;
  term_id image;
  friend bool operator==(const term_entry&, const term_entry&) = default;
};

// Entries sorted by arg id, args unique. The graph never stores the implicit
// self-evaluation f(f) = f, an image equal to zero, or an argument equal to
// zero or to the term itself.
using term_graph = std::vector<term_entry>;

struct term_data {
  term_kind kind = term_kind::node;
  std::uint8_t omega_index = 0;
  std::int32_t phi = -1;      // n when this term is the finite ordinal phi_n
  std::uint32_t depth = 0;    // nesting depth of the graph, phi_0 has depth 0
  term_graph entries;
  std::vector<std::uint32_t> canon;  // entry indices in canonical order
};

struct enum_limits {
  std::uint32_t max_depth = 4;
  std::uint32_t max_width = 4;
  std::uint64_t max_candidates = 4'000'000;
};

namespace detail {

struct graph_hash {
  std::size_t operator()(const term_graph& g) const {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](std::uint64_t v) {
      h ^= v;
      h *= 1099511628211ull;
    };
    for (const term_entry& e : g) {
      mix(e.arg);
      mix(e.image + 0x9e3779b97f4a7c15ull);
    }
    return static_cast<std::size_t>(h);
  }
};

inline std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = a + b;
  return r < a ? ~0ull : r;
}

inline std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  if (a > ~0ull / b) return ~0ull;
  return a * b;
}

}  // namespace detail

// Interning store for terms. Every structurally distinct term gets exactly one
// id, so handle equality is term equality. Ids are stable; storage is an
// append-only chunked arena, readable without locking while other threads
// intern (the published count is the synchronization point).
class term_store {
 public:
  term_store() {
    id_zero_ = intern_special(term_kind::zero, 0);
    id_one_ = intern_special(term_kind::one, 0);
    id_phi0_ = intern_node_locked({});
    id_omega_[0] = intern_special(term_kind::omega, 0);
    id_omega_[1] = intern_special(term_kind::omega, 1);
    id_omega_[2] = intern_special(term_kind::omega, 2);
    phi_chain_ = {id_phi0_};
  }

  term_store(const term_store&) = delete;
  term_store& operator=(const term_store&) = delete;

  term_id zero() const { return id_zero_; }
  term_id one() const { return id_one_; }
  term_id phi0() const { return id_phi0_; }

  term_id omega(unsigned k) const {
    if (k > 2) raise(errc::omega_cap_exceeded, "omega index " + std::to_string(k) + " exceeds the symbolic cap of 2");
    return id_omega_[k];
  }

  std::uint32_t size() const { return count_.load(std::memory_order_acquire); }

  const term_data& at(term_id t) const {
    assert(t < size());
    return chunks_[t >> chunk_bits][t & (chunk_size - 1)];
  }

  term_kind kind(term_id t) const { return at(t).kind; }

  // -1 when t is not a finite ordinal.
  std::int32_t phi_index(term_id t) const { return at(t).phi; }

  std::uint32_t depth(term_id t) const { return at(t).depth; }

  term_id node(term_graph g) {
    std::sort(g.begin(), g.end(), [](const term_entry& a, const term_entry& b) { return a.arg < b.arg; });
    std::lock_guard<std::mutex> lock(mu_);
    return intern_node_locked(std::move(g));
  }

  term_id phi(std::uint32_t n) {
    if (n > 100000) raise(errc::bound_too_large, "phi index " + std::to_string(n));
    std::lock_guard<std::mutex> lock(mu_);
    while (phi_chain_.size() <= n) {
      term_graph g;
      g.reserve(phi_chain_.size());
      for (term_id p : phi_chain_) g.push_back({p, p});
      phi_chain_.push_back(intern_node_locked(std::move(g)));
    }
    return phi_chain_[n];
  }

  // f applied to x.
  term_id eval(term_id f, term_id x) const {
    if (f == x) return f;
    const term_data& tf = at(f);
    switch (tf.kind) {
      case term_kind::zero:
        return id_zero_;
      case term_kind::one:
        return x;
      case term_kind::omega: {
        const term_data& tx = at(x);
        if (tx.phi >= 0) return x;
        if (tx.kind == term_kind::omega && tx.omega_index < tf.omega_index) return x;
        return id_zero_;
      }
      case term_kind::node: {
        const term_graph& g = tf.entries;
        auto it = std::lower_bound(g.begin(), g.end(), x,
                                   [](const term_entry& e, term_id v) { return e.arg < v; });
        if (it != g.end() && it->arg == x) return it->image;
        return id_zero_;
      }
    }
    return id_zero_;
  }

  bool acts_on(term_id f, term_id x) const { return x != f && eval(f, x) != id_zero_; }

  bool finite(term_id t) const {
    term_kind k = kind(t);
    return k == term_kind::zero || k == term_kind::node;
  }

  std::vector<term_id> support(term_id t) const {
    const term_data& td = at(t);
    switch (td.kind) {
      case term_kind::zero:
        return {};
      case term_kind::node: {
        std::vector<term_id> s;
        s.reserve(td.entries.size());
        for (const term_entry& e : td.entries) s.push_back(e.arg);
        return s;
      }
      default:
        raise(errc::infinite_support, "support of a comprehensive or symbolic term");
    }
  }

  // Distinct explicit images, ascending by id. The implicit self-image is not
  // part of the graph and is deliberately not included.
  std::vector<term_id> image_set(term_id t) const {
    const term_data& td = at(t);
    switch (td.kind) {
      case term_kind::zero:
        return {};
      case term_kind::node: {
        std::vector<term_id> s;
        s.reserve(td.entries.size());
        for (const term_entry& e : td.entries) s.push_back(e.image);
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        return s;
      }
      default:
        raise(errc::infinite_support, "image set of a comprehensive or symbolic term");
    }
  }

  std::uint32_t support_size(term_id t) const {
    const term_data& td = at(t);
    if (td.kind == term_kind::zero) return 0;
    if (td.kind == term_kind::node) return static_cast<std::uint32_t>(td.entries.size());
    raise(errc::infinite_support, "support size of a comprehensive or symbolic term");
  }

  // Total order on terms: zero, then phi_0, then one, then the omega chain,
  // then remaining nodes by support size and entrywise comparison.
  int cmp(term_id a, term_id b) const {
    if (a == b) return 0;
    const term_data& ta = at(a);
    const term_data& tb = at(b);
    int ca = order_class(ta);
    int cb = order_class(tb);
    if (ca != cb) return ca < cb ? -1 : 1;
    if (ta.kind == term_kind::omega)
      return ta.omega_index < tb.omega_index ? -1 : 1;
    if (ta.entries.size() != tb.entries.size())
      return ta.entries.size() < tb.entries.size() ? -1 : 1;
    for (std::size_t i = 0; i < ta.entries.size(); ++i) {
      const term_entry& ea = ta.entries[ta.canon[i]];
      const term_entry& eb = tb.entries[tb.canon[i]];
      if (int c = cmp(ea.arg, eb.arg)) return c;
      if (int c = cmp(ea.image, eb.image)) return c;
    }
    return 0;
  }

  void canonical_sort(std::vector<term_id>& v) const {
    std::sort(v.begin(), v.end(), [this](term_id a, term_id b) { return cmp(a, b) < 0; });
  }

  // Clone test: f and g act on exactly the same terms, and their values agree
  // everywhere except possibly at f and g themselves. For finite terms this
  // collapses to graph equality (a graph entry at f or g would break the
  // action match), so the only distinct clones are zero and phi_0. A successor
  // is never a clone of its base: the successor acts on the base, the base
  // does not act on itself.
  bool sim(term_id f, term_id g) const {
    if (f == g) return true;
    bool ff = finite(f), fg = finite(g);
    if (ff != fg) return false;
    if (!ff) {
      // Distinct comprehensive or symbolic terms always disagree on actions:
      // each omega level acts on the level below, never on itself, and the
      // identity acts on nearly everything.
      return false;
    }
    return at(f).entries == at(g).entries;
  }

  // All hereditary node terms of nesting depth <= depth whose graphs take at
  // most `width` arguments, plus zero and one. Deterministic order.
  std::vector<term_id> enumerate_universe(std::uint32_t depth, std::uint32_t width,
                                          const enum_limits& lim = {}) {
    if (depth > lim.max_depth)
      raise(errc::bound_too_large, "universe depth " + std::to_string(depth) + " exceeds cap " + std::to_string(lim.max_depth));
    if (width > lim.max_width)
      raise(errc::bound_too_large, "universe width " + std::to_string(width) + " exceeds cap " + std::to_string(lim.max_width));

    std::vector<term_id> out = {id_zero_, id_one_, id_phi0_};
    std::vector<term_id> base = {id_phi0_};
    std::unordered_set<term_id> seen = {id_phi0_};
    std::uint64_t budget = 0;
    for (std::uint32_t d = 1; d <= depth; ++d) {
      budget = detail::sat_add(budget, level_candidates(base.size(), width));
      if (budget > lim.max_candidates)
        raise(errc::bound_too_large, "universe(" + std::to_string(depth) + "," + std::to_string(width) +
                                         ") needs more than " + std::to_string(lim.max_candidates) + " candidates");
      std::vector<term_id> fresh;
      for_each_graph(base, width, [&](const term_graph& g) {
        term_id t = node(term_graph(g));
        if (seen.insert(t).second) {
          fresh.push_back(t);
          out.push_back(t);
        }
      });
      base.insert(base.end(), fresh.begin(), fresh.end());
      canonical_sort(base);
    }
    return out;
  }

  // `count` distinct node terms of nesting depth exactly `depth`, drawn with a
  // seeded generator over the full universe one level down.
  std::vector<term_id> sample_universe(std::uint32_t depth, std::uint32_t width,
                                       std::uint32_t count, std::uint64_t seed,
                                       const enum_limits& lim = {}) {
    if (depth == 0 || width == 0) raise(errc::bound_too_large, "sample needs positive depth and width");
    if (count > 100000) raise(errc::bound_too_large, "sample count " + std::to_string(count));
    std::vector<term_id> pool = enumerate_universe(depth - 1, width, lim);
    std::erase_if(pool, [this](term_id t) { return kind(t) != term_kind::node; });

    std::mt19937_64 rng(seed);
    std::unordered_set<term_id> seen;
    std::vector<term_id> out;
    std::uint64_t tries = 0;
    std::uint64_t max_tries = 1000ull + 200ull * count;
    while (out.size() < count) {
      if (++tries > max_tries)
        raise(errc::bound_too_large, "sampling stalled; stratum too small for " + std::to_string(count) + " terms");
      std::uint32_t k = 1 + static_cast<std::uint32_t>(rng() % width);
      if (k > pool.size()) continue;
      std::unordered_set<term_id> args;
      while (args.size() < k) args.insert(pool[rng() % pool.size()]);
      term_graph g;
      bool deep = false;
      for (term_id a : args) {
        term_id img = pool[rng() % pool.size()];
        deep = deep || depth_of_ref(a) == depth - 1 || depth_of_ref(img) == depth - 1;
        g.push_back({a, img});
      }
      if (!deep) continue;
      term_id t = node(std::move(g));
      if (seen.insert(t).second) out.push_back(t);
    }
    return out;
  }

 private:
  static constexpr std::uint32_t chunk_bits = 12;
  static constexpr std::size_t chunk_size = std::size_t{1} << chunk_bits;
  static constexpr std::size_t max_chunks = std::size_t{1} << 14;

  std::array<std::unique_ptr<term_data[]>, max_chunks> chunks_;
  std::atomic<std::uint32_t> count_{0};
  mutable std::mutex mu_;
  std::unordered_map<term_graph, term_id, detail::graph_hash> node_index_;
  std::vector<term_id> phi_chain_;
  term_id id_zero_ = 0, id_one_ = 0, id_phi0_ = 0;
  term_id id_omega_[3] = {0, 0, 0};

  static int order_class(const term_data& t) {
    switch (t.kind) {
      case term_kind::zero: return 0;
      case term_kind::node: return t.entries.empty() ? 1 : 4;
      case term_kind::one: return 2;
      case term_kind::omega: return 3;
    }
    return 5;
  }

  std::uint32_t depth_of_ref(term_id t) const { return at(t).depth; }

  term_id append_locked(term_data&& td) {
    std::uint32_t id = count_.load(std::memory_order_relaxed);
    std::size_t c = id >> chunk_bits;
    if (c >= max_chunks) raise(errc::bound_too_large, "term store is full");
    if (!chunks_[c]) chunks_[c] = std::make_unique<term_data[]>(chunk_size);
    chunks_[c][id & (chunk_size - 1)] = std::move(td);
    count_.store(id + 1, std::memory_order_release);
    return id;
  }

  term_id intern_special(term_kind k, std::uint8_t idx) {
    term_data td;
    td.kind = k;
    td.omega_index = idx;
    std::lock_guard<std::mutex> lock(mu_);
    return append_locked(std::move(td));
  }

  // Expects entries sorted by arg. Validates the graph, computes the phi
  // index, depth and canonical entry order, and returns the unique id.
  term_id intern_node_locked(term_graph g) {
    auto it = node_index_.find(g);
    if (it != node_index_.end()) return it->second;

    std::uint32_t published = count_.load(std::memory_order_relaxed);
    std::uint32_t dep = 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      const term_entry& e = g[i];
      if (e.arg >= published || e.image >= published)
        raise(errc::invalid_entry, "entry references an unknown term");
      if (i > 0 && g[i - 1].arg == e.arg)
        raise(errc::invalid_entry, "repeated argument");
      if (e.arg == id_zero_)
        raise(errc::invalid_entry, "the rigid term cannot be acted on");
      if (e.image == id_zero_)
        raise(errc::invalid_entry, "an explicit image cannot be the rigid term");
      if (e.arg == id_one_ && e.image == id_one_)
        raise(errc::invalid_entry, "only the identity maps the identity to itself");
      dep = std::max({dep, at(e.arg).depth + 1, at(e.image).depth + 1});
    }
    // A graph with x -> one and one -> x would name a function the theory
    // refutes, so it is rejected at construction.
    for (const term_entry& e : g) {
      if (e.image != id_one_ || e.arg == id_one_) continue;
      for (const term_entry& f : g)
        if (f.arg == id_one_ && f.image == e.arg)
          raise(errc::invalid_entry, "a term cannot swap with the identity");
    }

    term_data td;
    td.kind = term_kind::node;
    td.depth = dep;
    td.entries = std::move(g);
    td.phi = phi_index_locked(td.entries);
    td.canon.resize(td.entries.size());
    for (std::uint32_t i = 0; i < td.canon.size(); ++i) td.canon[i] = i;
    std::sort(td.canon.begin(), td.canon.end(), [&](std::uint32_t a, std::uint32_t b) {
      const term_entry& ea = td.entries[a];
      const term_entry& eb = td.entries[b];
      if (int c = cmp(ea.arg, eb.arg)) return c < 0;
      return cmp(ea.image, eb.image) < 0;
    });

    term_graph key = td.entries;
    term_id id = append_locked(std::move(td));
    node_index_.emplace(std::move(key), id);
    return id;
  }

  std::int32_t phi_index_locked(const term_graph& g) const {
    std::size_t n = g.size();
    std::vector<bool> seen(n, false);
    for (const term_entry& e : g) {
      if (e.arg != e.image) return -1;
      std::int32_t p = at(e.arg).phi;
      if (p < 0 || static_cast<std::size_t>(p) >= n || seen[p]) return -1;
      seen[p] = true;
    }
    return static_cast<std::int32_t>(n);
  }

  static std::uint64_t level_candidates(std::size_t base, std::uint32_t width) {
    std::uint64_t total = 0;
    std::uint64_t choose = 1;  // C(base, k)
    std::uint64_t power = 1;   // base^k
    for (std::uint32_t k = 0; k <= width; ++k) {
      if (k > 0) {
        if (k > base) break;
        choose = detail::sat_mul(choose, base - k + 1) / k;
        power = detail::sat_mul(power, base);
      }
      total = detail::sat_add(total, detail::sat_mul(choose, power));
    }
    return total;
  }

  // All graphs with args a k-subset of base (k <= width) and images in base,
  // in deterministic order.
  template <typename Fn>
  void for_each_graph(const std::vector<term_id>& base, std::uint32_t width, Fn&& fn) {
    std::size_t n = base.size();
    std::vector<std::size_t> subset;
    std::vector<std::size_t> images;
    term_graph g;
    auto emit = [&]() {
      g.clear();
      for (std::size_t i = 0; i < subset.size(); ++i) g.push_back({base[subset[i]], base[images[i]]});
      fn(g);
    };
    // k = 0: the empty graph.
    emit();
    for (std::uint32_t k = 1; k <= width && k <= n; ++k) {
      subset.assign(k, 0);
      for (std::size_t i = 0; i < k; ++i) subset[i] = i;
      while (true) {
        images.assign(k, 0);
        while (true) {
          emit();
          std::size_t d = k;
          while (d > 0 && images[d - 1] + 1 == n) images[--d] = 0;
          if (d == 0) break;
          ++images[d - 1];
        }
        // next k-subset in lexicographic order
        std::size_t i = k;
        while (i > 0 && subset[i - 1] == n - k + i - 1) --i;
        if (i == 0) break;
        ++subset[i - 1];
        for (std::size_t j = i; j < k; ++j) subset[j] = subset[j - 1] + 1;
      }
    }
  }
};

}  // namespace flow
