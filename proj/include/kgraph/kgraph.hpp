#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "kgraph/degree.hpp"
#include "kgraph/errors.hpp"

namespace kgraph {

using VertexId = std::int32_t;
using EdgeId = std::int32_t;

struct Edge {
  std::string name;
  int color;  // 0-based
  VertexId range;
  VertexId source;
};

namespace detail {

inline std::uint64_t pack_pair(EdgeId a, EdgeId b) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
         static_cast<std::uint32_t>(b);
}

struct KGraphImpl {
  int rank = 1;
  std::vector<std::string> vnames;
  std::map<std::string, VertexId> vindex;
  std::vector<Edge> edges;
  std::map<std::string, EdgeId> eindex;
  // by_range[v][color] = edges e with r(e) = v  (the set vΛ^{e_color})
  std::vector<std::vector<std::vector<EdgeId>>> by_range;
  std::vector<std::vector<std::vector<EdgeId>>> by_source;
  // squares: key = word (f,g) with s(f)=r(g); value = the other factorization (g',f')
  std::unordered_map<std::uint64_t, std::pair<EdgeId, EdgeId>> squares;
  std::vector<std::array<EdgeId, 4>> square_list;  // (f,g,g',f') as declared

  // Lazy provenance. Empty spec means the graph is complete (finite).
  std::string gen_spec;
  Deg window;
  std::function<bool(const KGraphImpl&, VertexId, const Deg&)> out_complete_fn;

  bool acyclic_cached = false;
  bool acyclic_value = false;
};

}  // namespace detail

/// Immutable, validated k-graph presentation: colored skeleton + complete
/// square relations. Copies share the underlying storage.
class KGraph {
 public:
  KGraph() = default;

  int rank() const { return p_->rank; }
  int vertex_count() const { return static_cast<int>(p_->vnames.size()); }
  int edge_count() const { return static_cast<int>(p_->edges.size()); }

  const std::string& vertex_name(VertexId v) const { return p_->vnames[static_cast<size_t>(v)]; }
  const Edge& edge(EdgeId e) const { return p_->edges[static_cast<size_t>(e)]; }
  const std::vector<Edge>& edges() const { return p_->edges; }
  const std::vector<std::array<EdgeId, 4>>& square_list() const { return p_->square_list; }

  VertexId vertex_id(const std::string& name) const {
    auto it = p_->vindex.find(name);
    if (it == p_->vindex.end()) fail(Errc::invalid_argument, "unknown vertex " + name);
    return it->second;
  }
  bool has_vertex(const std::string& name) const { return p_->vindex.count(name) > 0; }
  EdgeId edge_id(const std::string& name) const {
    auto it = p_->eindex.find(name);
    if (it == p_->eindex.end()) fail(Errc::invalid_argument, "unknown edge " + name);
    return it->second;
  }
  bool has_edge(const std::string& name) const { return p_->eindex.count(name) > 0; }

  /// vΛ^{e_c}: edges with range v and color c.
  const std::vector<EdgeId>& out_edges(VertexId v, int color) const {
    return p_->by_range[static_cast<size_t>(v)][static_cast<size_t>(color)];
  }
  const std::vector<EdgeId>& in_edges(VertexId v, int color) const {
    return p_->by_source[static_cast<size_t>(v)][static_cast<size_t>(color)];
  }

  /// The other factorization of the degree-2 word f∘g (s(f) = r(g), distinct
  /// colors): returns (g', f') with f∘g = g'∘f'.
  std::pair<EdgeId, EdgeId> square_swap(EdgeId f, EdgeId g) const {
    auto it = p_->squares.find(detail::pack_pair(f, g));
    if (it == p_->squares.end())
      fail(Errc::missing_square, "no square for word " + edge(f).name + "." + edge(g).name);
    return it->second;
  }

  bool is_lazy() const { return !p_->gen_spec.empty(); }
  const std::string& generator_spec() const { return p_->gen_spec; }
  const Deg& window() const { return p_->window; }

  /// Exact: is the out-neighborhood vΛ^{≤cap} fully materialized? Always true
  /// for complete (finite) graphs.
  bool out_complete(VertexId v, const Deg& cap) const {
    if (!p_->out_complete_fn) return true;
    return p_->out_complete_fn(*p_, v, cap);
  }

  /// No directed cycle in the skeleton (following edges range→source), so the
  /// path set vΛ is finite for every v.
  bool acyclic() const {
    if (!p_->acyclic_cached) {
      auto* m = const_cast<detail::KGraphImpl*>(p_.get());
      m->acyclic_value = compute_acyclic();
      m->acyclic_cached = true;
    }
    return p_->acyclic_value;
  }

  bool same_object(const KGraph& o) const { return p_ == o.p_; }

  friend class KGraphBuilder;

 private:
  bool compute_acyclic() const {
    int n = vertex_count();
    std::vector<int> state(static_cast<size_t>(n), 0);
    std::vector<VertexId> stack;
    for (VertexId s = 0; s < n; ++s) {
      if (state[static_cast<size_t>(s)]) continue;
      // iterative DFS over arcs v -> s(e), e ∈ vΛ^{e_i}
      std::vector<std::pair<VertexId, size_t>> frames;
      frames.push_back({s, 0});
      state[static_cast<size_t>(s)] = 1;
      while (!frames.empty()) {
        auto& [v, idx] = frames.back();
        // flatten successor list on the fly
        std::vector<VertexId> succ;
        for (int c = 0; c < rank(); ++c)
          for (EdgeId e : out_edges(v, c)) succ.push_back(edge(e).source);
        if (idx >= succ.size()) {
          state[static_cast<size_t>(v)] = 2;
          frames.pop_back();
          continue;
        }
        VertexId w = succ[idx++];
        if (state[static_cast<size_t>(w)] == 1) return false;
        if (state[static_cast<size_t>(w)] == 0) {
          state[static_cast<size_t>(w)] = 1;
          frames.push_back({w, 0});
        }
      }
    }
    return true;
  }

  std::shared_ptr<const detail::KGraphImpl> p_ = std::make_shared<detail::KGraphImpl>();
};

/// Assembles and validates a k-graph presentation. build() checks the
/// factorization property at degree e_i+e_j (complete, unambiguous squares)
/// and, for k ≥ 3, the cubic coherence of square rewriting.
class KGraphBuilder {
 public:
  explicit KGraphBuilder(int rank) {
    if (rank < 1) fail(Errc::invalid_argument, "rank must be >= 1");
    impl_ = std::make_shared<detail::KGraphImpl>();
    impl_->rank = rank;
  }

  VertexId add_vertex(const std::string& name) {
    auto it = impl_->vindex.find(name);
    if (it != impl_->vindex.end()) return it->second;
    VertexId id = static_cast<VertexId>(impl_->vnames.size());
    impl_->vnames.push_back(name);
    impl_->vindex[name] = id;
    impl_->by_range.emplace_back(static_cast<size_t>(impl_->rank));
    impl_->by_source.emplace_back(static_cast<size_t>(impl_->rank));
    return id;
  }

  /// color is 1-based on this surface, matching the .kg text format.
  EdgeId add_edge(const std::string& name, int color1, const std::string& range,
                  const std::string& source) {
    if (color1 < 1 || color1 > impl_->rank)
      fail(Errc::invalid_argument, "edge " + name + ": color out of range");
    if (impl_->eindex.count(name)) fail(Errc::invalid_argument, "duplicate edge " + name);
    VertexId r = add_vertex(range), s = add_vertex(source);
    EdgeId id = static_cast<EdgeId>(impl_->edges.size());
    impl_->edges.push_back(Edge{name, color1 - 1, r, s});
    impl_->eindex[name] = id;
    impl_->by_range[static_cast<size_t>(r)][static_cast<size_t>(color1 - 1)].push_back(id);
    impl_->by_source[static_cast<size_t>(s)][static_cast<size_t>(color1 - 1)].push_back(id);
    return id;
  }

  /// Declares f∘g = g'∘f' (words f.g and g'.f' are the two factorizations of
  /// one degree-(e_i+e_j) path).
  void add_square(const std::string& f, const std::string& g, const std::string& g2,
                  const std::string& f2) {
    EdgeId ef = eid(f), eg = eid(g), eg2 = eid(g2), ef2 = eid(f2);
    check_square_shape(ef, eg, eg2, ef2);
    insert_rule(ef, eg, eg2, ef2);
    insert_rule(eg2, ef2, ef, eg);
    impl_->square_list.push_back({ef, eg, eg2, ef2});
  }

  void set_generator(const std::string& spec, const Deg& window,
                     std::function<bool(const detail::KGraphImpl&, VertexId, const Deg&)> oracle) {
    impl_->gen_spec = spec;
    impl_->window = window;
    impl_->out_complete_fn = std::move(oracle);
  }

  KGraph build() {
    validate_squares_complete();
    if (impl_->rank >= 3) validate_cubic();
    KGraph g;
    g.p_ = impl_;
    impl_ = nullptr;
    return g;
  }

 private:
  EdgeId eid(const std::string& n) const {
    auto it = impl_->eindex.find(n);
    if (it == impl_->eindex.end()) fail(Errc::invalid_argument, "square names unknown edge " + n);
    return it->second;
  }

  const Edge& E(EdgeId e) const { return impl_->edges[static_cast<size_t>(e)]; }

  void check_square_shape(EdgeId f, EdgeId g, EdgeId g2, EdgeId f2) const {
    const Edge &ef = E(f), &eg = E(g), &eg2 = E(g2), &ef2 = E(f2);
    if (ef.color == eg.color) fail(Errc::invalid_argument, "square colors must differ");
    if (ef.source != eg.range)
      fail(Errc::invalid_argument, "square word " + ef.name + "." + eg.name + " not composable");
    if (eg2.source != ef2.range)
      fail(Errc::invalid_argument, "square word " + eg2.name + "." + ef2.name + " not composable");
    if (eg2.color != eg.color || ef2.color != ef.color)
      fail(Errc::invalid_argument, "square sides must swap the color pair");
    if (eg2.range != ef.range || ef2.source != eg.source)
      fail(Errc::invalid_argument, "square endpoints disagree");
  }

  void insert_rule(EdgeId a, EdgeId b, EdgeId c, EdgeId d) {
    auto key = detail::pack_pair(a, b);
    auto it = impl_->squares.find(key);
    if (it != impl_->squares.end()) {
      if (it->second != std::make_pair(c, d))
        fail(Errc::ambiguous_square,
             "two rules for word " + E(a).name + "." + E(b).name);
      return;
    }
    impl_->squares[key] = {c, d};
  }

  void validate_squares_complete() const {
    // every composable bi-colored word must have exactly one rule
    for (const Edge& f : impl_->edges) {
      EdgeId fid = impl_->eindex.at(f.name);
      for (int c = 0; c < impl_->rank; ++c) {
        if (c == f.color) continue;
        for (EdgeId gid :
             impl_->by_range[static_cast<size_t>(f.source)][static_cast<size_t>(c)]) {
          if (!impl_->squares.count(detail::pack_pair(fid, gid)))
            fail(Errc::missing_square,
                 "composable pair (" + f.name + ", " + E(gid).name + ") has no square");
        }
      }
    }
    // injectivity: the swap map restricted to (i,j)-words must not merge words
    std::unordered_map<std::uint64_t, std::uint64_t> seen;
    for (const auto& [key, val] : impl_->squares) {
      auto tgt = detail::pack_pair(val.first, val.second);
      auto it = seen.find(tgt);
      if (it != seen.end() && it->second != key)
        fail(Errc::ambiguous_square, "square map is not a bijection on degree-2 words");
      seen[tgt] = key;
    }
  }

  // For k ≥ 3: both resorting orders of any tri-colored word of 3 edges agree.
  void validate_cubic() const {
    auto swap_at = [&](std::array<EdgeId, 3>& w, int pos) {
      auto it = impl_->squares.find(detail::pack_pair(w[static_cast<size_t>(pos)],
                                                      w[static_cast<size_t>(pos) + 1]));
      if (it == impl_->squares.end())
        fail(Errc::missing_square, "missing square during cubic check");
      w[static_cast<size_t>(pos)] = it->second.first;
      w[static_cast<size_t>(pos) + 1] = it->second.second;
    };
    auto sorted_colors = [&](const std::array<EdgeId, 3>& w) {
      return E(w[0]).color < E(w[1]).color && E(w[1]).color < E(w[2]).color;
    };
    auto normalize = [&](std::array<EdgeId, 3> w, bool left_first) {
      // bubble to ascending color order with the stated strategy
      for (int step = 0; step < 8 && !sorted_colors(w); ++step) {
        int a = left_first ? 0 : 1, b = left_first ? 1 : 0;
        if (E(w[static_cast<size_t>(a)]).color > E(w[static_cast<size_t>(a) + 1]).color)
          swap_at(w, a);
        else if (E(w[static_cast<size_t>(b)]).color > E(w[static_cast<size_t>(b) + 1]).color)
          swap_at(w, b);
      }
      return w;
    };
    for (const Edge& e1 : impl_->edges) {
      EdgeId id1 = impl_->eindex.at(e1.name);
      for (int c2 = 0; c2 < impl_->rank; ++c2) {
        if (c2 == e1.color) continue;
        for (EdgeId id2 :
             impl_->by_range[static_cast<size_t>(e1.source)][static_cast<size_t>(c2)]) {
          const Edge& e2 = E(id2);
          for (int c3 = 0; c3 < impl_->rank; ++c3) {
            if (c3 == e1.color || c3 == c2) continue;
            for (EdgeId id3 :
                 impl_->by_range[static_cast<size_t>(e2.source)][static_cast<size_t>(c3)]) {
              std::array<EdgeId, 3> w = {id1, id2, id3};
              auto a = normalize(w, true);
              auto b = normalize(w, false);
              if (a != b)
                fail(Errc::associativity_failure,
                     "cubic check fails on word " + e1.name + "." + e2.name + "." +
                         E(id3).name);
            }
          }
        }
      }
    }
  }

  std::shared_ptr<detail::KGraphImpl> impl_;
};

}  // namespace kgraph
