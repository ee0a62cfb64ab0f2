#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "kgraph/kgraph.hpp"

namespace kgraph {

/// A finite path: edge word in color-normal form (colors non-decreasing along
/// the word), read range-to-source. A degree-0 path is its range vertex.
struct Path {
  VertexId range = -1;
  std::vector<EdgeId> word;  // normal form
  Deg deg;

  bool is_vertex() const { return word.empty(); }

  friend bool operator==(const Path& a, const Path& b) {
    return a.range == b.range && a.word == b.word;
  }
  friend bool operator!=(const Path& a, const Path& b) { return !(a == b); }
  friend bool operator<(const Path& a, const Path& b) {
    if (a.range != b.range) return a.range < b.range;
    return a.word < b.word;
  }
};

inline VertexId path_source(const KGraph& g, const Path& p) {
  return p.word.empty() ? p.range : g.edge(p.word.back()).source;
}

inline Deg word_degree(const KGraph& g, const std::vector<EdgeId>& w) {
  Deg d(g.rank(), 0);
  for (EdgeId e : w) d.at(g.edge(e).color)++;
  return d;
}

/// Rewrite a composable edge word to color-normal form in place (leftmost
/// out-of-order swap first). Each swap applies the graph's square rule.
inline void normalize_word(const KGraph& g, std::vector<EdgeId>& w) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i + 1 < w.size(); ++i) {
      if (g.edge(w[i]).color > g.edge(w[i + 1]).color) {
        auto [a, b] = g.square_swap(w[i], w[i + 1]);
        w[i] = a;
        w[i + 1] = b;
        changed = true;
      }
    }
  }
}

/// Permute a composable word so its color sequence matches `target`
/// (a rearrangement of the word's color multiset), via adjacent square swaps.
inline void rearrange_word(const KGraph& g, std::vector<EdgeId>& w,
                           const std::vector<int>& target) {
  for (size_t p = 0; p < w.size(); ++p) {
    if (g.edge(w[p]).color == target[p]) continue;
    size_t q = p + 1;
    while (q < w.size() && g.edge(w[q]).color != target[p]) ++q;
    if (q == w.size()) fail(Errc::invalid_argument, "rearrange: color pattern mismatch");
    for (size_t j = q; j > p; --j) {
      auto [a, b] = g.square_swap(w[j - 1], w[j]);
      w[j - 1] = a;
      w[j] = b;
    }
  }
}

/// Validates composability, normalizes, computes the degree.
inline Path make_path(const KGraph& g, VertexId range, std::vector<EdgeId> word) {
  VertexId at = range;
  for (EdgeId e : word) {
    if (g.edge(e).range != at)
      fail(Errc::not_composable, "word not composable at edge " + g.edge(e).name);
    at = g.edge(e).source;
  }
  normalize_word(g, word);
  Path p;
  p.range = range;
  p.deg = word_degree(g, word);
  p.word = std::move(word);
  return p;
}

inline Path vertex_path(const KGraph& g, VertexId v) {
  Path p;
  p.range = v;
  p.deg = Deg::zero(g.rank());
  return p;
}

inline Path edge_path(const KGraph& g, EdgeId e) {
  return make_path(g, g.edge(e).range, {e});
}

inline std::string path_str(const KGraph& g, const Path& p) {
  if (p.is_vertex()) return g.vertex_name(p.range);
  std::string s;
  for (size_t i = 0; i < p.word.size(); ++i) {
    if (i) s += '.';
    s += g.edge(p.word[i]).name;
  }
  return s;
}

/// Ascending color pattern of a degree vector: color 0 repeated d[0] times, ...
inline void append_pattern(std::vector<int>& pat, const Deg& d) {
  for (int c = 0; c < d.rank(); ++c)
    for (int j = 0; j < d[c]; ++j) pat.push_back(c);
}

/// λ(p,q): the unique middle factor of λ = λ'·λ''·λ''' with d(λ') = p,
/// d(λ'') = q−p.
inline Path factor_segment(const KGraph& g, const Path& lam, const Deg& p, const Deg& q) {
  if (!(p.leq(q) && q.leq(lam.deg)))
    fail(Errc::out_of_range, "factor_segment: need p <= q <= d(path)");
  std::vector<int> pattern;
  append_pattern(pattern, p);
  append_pattern(pattern, q - p);
  append_pattern(pattern, lam.deg - q);
  std::vector<EdgeId> w = lam.word;
  rearrange_word(g, w, pattern);
  size_t np = static_cast<size_t>(p.total());
  size_t nq = static_cast<size_t>(q.total());
  VertexId mid_range = lam.range;
  for (size_t i = 0; i < np; ++i) mid_range = g.edge(w[i]).source;
  std::vector<EdgeId> mid(w.begin() + static_cast<long>(np), w.begin() + static_cast<long>(nq));
  return make_path(g, mid_range, std::move(mid));
}

/// λ(n): the vertex s(λ(0,n)).
inline VertexId path_base(const KGraph& g, const Path& lam, const Deg& n) {
  return path_source(g, factor_segment(g, lam, Deg::zero(g.rank()), n));
}

inline Path compose(const KGraph& g, const Path& a, const Path& b) {
  if (path_source(g, a) != b.range)
    fail(Errc::not_composable, "compose: s(first) != r(second)");
  std::vector<EdgeId> w = a.word;
  w.insert(w.end(), b.word.begin(), b.word.end());
  return make_path(g, a.range, std::move(w));
}

/// vΛ^m: all paths with range v and degree m, each listed once (normal forms).
/// Requires the window to cover the reach: out_complete(v, m).
inline std::vector<Path> enumerate_paths(const KGraph& g, VertexId v, const Deg& m) {
  m.require_finite("enumerate_paths");
  if (!g.out_complete(v, m))
    fail(Errc::window_exceeded, "enumerate_paths: window does not cover " +
                                    g.vertex_name(v) + " up to degree " + m.str());
  std::vector<Path> out;
  std::vector<EdgeId> word;
  // extend color blocks in ascending order; every normal word arises once
  std::function<void(VertexId, int, int)> rec = [&](VertexId at, int color, int left) {
    if (color == g.rank()) {
      out.push_back(make_path(g, v, word));
      return;
    }
    if (left == 0) {
      rec(at, color + 1, color + 1 < g.rank() ? m[color + 1] : 0);
      return;
    }
    for (EdgeId e : g.out_edges(at, color)) {
      word.push_back(e);
      rec(g.edge(e).source, color, left - 1);
      word.pop_back();
    }
  };
  rec(v, 0, m[0]);
  return out;
}

/// vΛ^{≤m}: all paths with range v and degree ≤ m.
inline std::vector<Path> enumerate_paths_upto(const KGraph& g, VertexId v, const Deg& m) {
  std::vector<Path> out;
  for_each_leq(m, [&](const Deg& d) {
    auto part = enumerate_paths(g, v, d);
    out.insert(out.end(), part.begin(), part.end());
  });
  return out;
}

/// All paths of a complete acyclic graph, grouped per range vertex on demand.
/// Throws InfiniteBoundary if the graph is lazy or has cycles.
inline std::vector<Path> enumerate_all_paths(const KGraph& g, VertexId v) {
  if (g.is_lazy() || !g.acyclic())
    fail(Errc::infinite_boundary, "path set is not finitely enumerable");
  std::vector<Path> out;
  std::vector<EdgeId> word;
  std::function<void(VertexId, int)> rec = [&](VertexId at, int min_color) {
    out.push_back(make_path(g, v, word));
    for (int c = min_color; c < g.rank(); ++c) {
      for (EdgeId e : g.out_edges(at, c)) {
        word.push_back(e);
        rec(g.edge(e).source, c);
        word.pop_back();
      }
    }
  };
  rec(v, 0);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace kgraph
