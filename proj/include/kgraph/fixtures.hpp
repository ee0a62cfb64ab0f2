#pragma once

#include <mutex>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "kgraph/genpath.hpp"
#include "kgraph/kgraph.hpp"

namespace kgraph::fixtures {

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

inline Deg parse_deg(const std::string& s) {
  auto parts = split(s, ',');
  Deg d(static_cast<int>(parts.size()));
  for (size_t i = 0; i < parts.size(); ++i) {
    if (parts[i] == "inf")
      d.at(static_cast<int>(i)) = Deg::kInf;
    else
      d.at(static_cast<int>(i)) = std::stoi(parts[i]);
  }
  return d;
}

inline int column_of(const std::string& vname) { return std::stoi(vname.substr(1)); }

}  // namespace detail

/// Single vertex, no edges.
inline KGraph triv() {
  KGraphBuilder b(1);
  b.add_vertex("v");
  return b.build();
}

/// One edge e: v ← w. The vertex w is a source; ∂Λ = {e, w}.
inline KGraph src1() {
  KGraphBuilder b(1);
  b.add_edge("e", 1, "v", "w");
  return b.build();
}

/// Non-locally-convex 2-vertex shape: lam (color 1, v ← w) and mu (color 2,
/// v ← u); no composable bi-colored pairs, so no squares.
inline KGraph nlc() {
  KGraphBuilder b(2);
  b.add_edge("lam", 1, "v", "w");
  b.add_edge("mu", 2, "v", "u");
  return b.build();
}

/// Two sources feeding one center: a: c ← s1, b: c ← s2.
inline KGraph star2() {
  KGraphBuilder b(1);
  b.add_edge("a", 1, "c", "s1");
  b.add_edge("b", 1, "c", "s2");
  return b.build();
}

/// Directed n-cycle: g0: c0 ← c1, ..., g_{n-1}: c_{n-1} ← c0.
inline KGraph loop(int n) {
  if (n < 1) fail(Errc::invalid_argument, "loop: need n >= 1");
  KGraphBuilder b(1);
  for (int i = 0; i < n; ++i)
    b.add_edge("g" + std::to_string(i), 1, "c" + std::to_string(i),
               "c" + std::to_string((i + 1) % n));
  return b.build();
}

/// Chain v0 ← v1 ← ... ← vn; vn is a source.
inline KGraph chain(int n) {
  if (n < 1) fail(Errc::invalid_argument, "chain: need n >= 1");
  KGraphBuilder b(1);
  for (int i = 0; i < n; ++i)
    b.add_edge("e" + std::to_string(i), 1, "v" + std::to_string(i), "v" + std::to_string(i + 1));
  return b.build();
}

/// Ω_{k,m}: objects p ≤ m, one morphism (p,q) per p ≤ q. Infinite coordinates
/// are materialized up to the window and carry an exactness oracle.
inline KGraph omega(int k, const Deg& m, const Deg& window) {
  if (m.rank() != k) fail(Errc::invalid_argument, "omega: m has wrong rank");
  Deg cap(k);
  bool lazy = false;
  for (int i = 0; i < k; ++i) {
    if (m[i] == Deg::kInf) {
      cap.at(i) = window.rank() == k ? window[i] : 0;
      lazy = true;
    } else {
      cap.at(i) = m[i];
    }
  }
  KGraphBuilder b(k);
  auto vname = [&](const Deg& p) {
    std::string s = "v";
    for (int i = 0; i < k; ++i) s += (i ? "_" : "") + std::to_string(p[i]);
    return s;
  };
  auto ename = [&](int c, const Deg& p) {
    std::string s = "e" + std::to_string(c + 1);
    for (int i = 0; i < k; ++i) s += "_" + std::to_string(p[i]);
    return s;
  };
  for_each_leq(cap, [&](const Deg& p) { b.add_vertex(vname(p)); });
  for_each_leq(cap, [&](const Deg& p) {
    for (int c = 0; c < k; ++c) {
      Deg q = p + Deg::unit(k, c);
      if (q.leq(cap)) b.add_edge(ename(c, p), c + 1, vname(p), vname(q));
    }
  });
  // squares: (p,p+e_i)·(p+e_i,p+e_i+e_j) = (p,p+e_j)·(p+e_j,p+e_i+e_j)
  for_each_leq(cap, [&](const Deg& p) {
    for (int i = 0; i < k; ++i)
      for (int j = i + 1; j < k; ++j) {
        Deg pi = p + Deg::unit(k, i), pj = p + Deg::unit(k, j);
        Deg pij = pi + Deg::unit(k, j);
        if (!pij.leq(cap)) continue;
        b.add_square(ename(i, p), ename(j, pi), ename(j, p), ename(i, pj));
      }
  });
  if (lazy) {
    Deg mm = m, capc = cap;
    b.set_generator("omega:" + std::to_string(k) + ":" + m.str(), window,
                    [mm, capc](const kgraph::detail::KGraphImpl& im, VertexId v, const Deg& d) {
                      // vertex v sits at p (parse from name); reach p+d must stay in cap
                      auto parts = detail::split(im.vnames[static_cast<size_t>(v)].substr(1), '_');
                      for (size_t i = 0; i < parts.size(); ++i) {
                        int pi = std::stoi(parts[i]);
                        int di = d[static_cast<int>(i)];
                        if (mm[static_cast<int>(i)] == Deg::kInf &&
                            (di == Deg::kInf || pi + di > capc[static_cast<int>(i)]))
                          return false;
                      }
                      return true;
                    });
  }
  return b.build();
}

/// The running 2-graph example: columns of vertices v_n (middle), u_n (top),
/// w_n (bottom); solid edges x_n: v_n ← v_{n+1}, t_n: u_n ← u_{n+1},
/// om_n: v_n ← w_n; dashed edges f_n: v_n ← u_n; squares x_n.f_{n+1} = f_n.t_n.
/// Materialized to columns 0..window[0]; w_n are genuine sources.
inline KGraph paper_ex(const Deg& window) {
  if (window.rank() != 2) fail(Errc::invalid_argument, "paper-ex: window must have rank 2");
  int M = window[0];
  if (M < 1) M = 1;
  KGraphBuilder b(2);
  for (int n = 0; n <= M; ++n) {
    b.add_vertex("v" + std::to_string(n));
    b.add_vertex("u" + std::to_string(n));
    b.add_vertex("w" + std::to_string(n));
  }
  for (int n = 0; n <= M; ++n) {
    b.add_edge("f" + std::to_string(n), 2, "v" + std::to_string(n), "u" + std::to_string(n));
    b.add_edge("om" + std::to_string(n), 1, "v" + std::to_string(n), "w" + std::to_string(n));
    if (n < M) {
      b.add_edge("x" + std::to_string(n), 1, "v" + std::to_string(n), "v" + std::to_string(n + 1));
      b.add_edge("t" + std::to_string(n), 1, "u" + std::to_string(n), "u" + std::to_string(n + 1));
    }
  }
  for (int n = 0; n < M; ++n)
    b.add_square("x" + std::to_string(n), "f" + std::to_string(n + 1), "f" + std::to_string(n),
                 "t" + std::to_string(n));
  int cap = M;
  b.set_generator("paper-ex", window,
                  [cap](const kgraph::detail::KGraphImpl& im, VertexId v, const Deg& d) {
                    const std::string& name = im.vnames[static_cast<size_t>(v)];
                    if (name[0] == 'w') return true;  // genuine source
                    if (d[0] == Deg::kInf) return false;
                    return detail::column_of(name) + d[0] <= cap;
                  });
  return b.build();
}

inline KGraph from_spec(const std::string& spec, const Deg& window) {
  auto parts = detail::split(spec, ':');
  const std::string& name = parts[0];
  if (name == "triv") return triv();
  if (name == "src1") return src1();
  if (name == "nlc") return nlc();
  if (name == "star2") return star2();
  if (name == "loop") return loop(parts.size() > 1 ? std::stoi(parts[1]) : 1);
  if (name == "chain") return chain(parts.size() > 1 ? std::stoi(parts[1]) : 1);
  if (name == "paper-ex") return paper_ex(window.rank() == 2 ? window : Deg{4, 1});
  if (name == "omega") {
    if (parts.size() < 2) fail(Errc::invalid_argument, "omega spec needs degrees: omega:2,2");
    Deg m = detail::parse_deg(parts[1]);
    return omega(m.rank(), m, window);
  }
  fail(Errc::invalid_argument, "unknown fixture " + spec);
}

inline std::vector<std::string> builtin_names() {
  return {"triv", "src1", "nlc", "star2", "loop:N", "chain:N", "omega:M1,M2,...", "paper-ex"};
}

/// Re-materialize a lazy graph at (at least) window W. Deterministic and
/// monotone; results are memoized so concurrent requests share one extension.
inline KGraph ensure_window(const KGraph& g, const Deg& W) {
  if (!g.is_lazy()) return g;
  if (W.leq(g.window())) return g;
  Deg target = W.join(g.window());
  static std::mutex mu;
  static std::map<std::pair<std::string, Deg>, KGraph> memo;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(g.generator_spec(), target);
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;
  auto spec = g.generator_spec();
  KGraph out;
  if (spec.rfind("omega:", 0) == 0) {
    auto parts = detail::split(spec, ':');
    out = omega(std::stoi(parts[1]), detail::parse_deg(parts[2]), target);
  } else if (spec == "paper-ex") {
    out = paper_ex(target);
  } else {
    fail(Errc::invalid_argument, "cannot extend unknown generator " + spec);
  }
  memo[key] = out;
  return out;
}

// ---- paper-ex path helpers -------------------------------------------------

/// x = x_0 x_1 ... as a windowed path of degree (inf, 0).
inline GPath px_x(const KGraph& g) {
  int cap = g.window()[0];
  KGraph gc = g;
  Deg deg(2);
  deg.at(0) = Deg::kInf;
  return gp_windowed(deg, Deg{cap, 0}, [gc](const Deg& n) {
    std::vector<EdgeId> w;
    for (int i = 0; i < n[0]; ++i) w.push_back(gc.edge_id("x" + std::to_string(i)));
    return make_path(gc, gc.vertex_id("v0"), w);
  });
}

/// ω^n = x_0 ... x_{n-1} om_n (finite, degree (n+1, 0)).
inline Path px_omega_path(const KGraph& g, int n) {
  std::vector<EdgeId> w;
  for (int i = 0; i < n; ++i) w.push_back(g.edge_id("x" + std::to_string(i)));
  w.push_back(g.edge_id("om" + std::to_string(n)));
  return make_path(g, g.vertex_id("v0"), w);
}

/// y = f_0 t_0 t_1 ... : the boundary path beginning with f_0, degree (inf, 1).
inline GPath px_y(const KGraph& g) {
  int cap = g.window()[0];
  KGraph gc = g;
  Deg deg(2);
  deg.at(0) = Deg::kInf;
  deg.at(1) = 1;
  return gp_windowed(deg, Deg{cap, 1}, [gc](const Deg& n) {
    std::vector<EdgeId> w;
    if (n[1] > 0) w.push_back(gc.edge_id("f0"));
    for (int i = 0; i < n[0]; ++i)
      w.push_back(gc.edge_id((n[1] > 0 ? "t" : "x") + std::to_string(i)));
    return make_path(gc, gc.vertex_id("v0"), w);
  });
}

// ---- random fixtures -------------------------------------------------------

struct Random1GraphOpts {
  int max_vertices = 8;
  bool acyclic = true;
  double edge_prob = 0.5;
  int max_out = 2;  // cap on |vΛ^{e_1}| to keep path counts modest
};

inline KGraph random_1graph(std::mt19937_64& rng, const Random1GraphOpts& opts) {
  std::uniform_int_distribution<int> nv(2, opts.max_vertices);
  int n = nv(rng);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  KGraphBuilder b(1);
  for (int i = 0; i < n; ++i) b.add_vertex("q" + std::to_string(i));
  int eid = 0;
  std::vector<int> outdeg(static_cast<size_t>(n), 0);
  for (int r = 0; r < n; ++r) {
    for (int s = opts.acyclic ? r + 1 : 0; s < n; ++s) {
      if (outdeg[static_cast<size_t>(r)] >= opts.max_out) break;
      if (opts.acyclic && s <= r) continue;
      if (coin(rng) < opts.edge_prob) {
        b.add_edge("a" + std::to_string(eid++), 1, "q" + std::to_string(r),
                   "q" + std::to_string(s));
        outdeg[static_cast<size_t>(r)]++;
      }
    }
  }
  return b.build();
}

struct RandomProductOpts {
  int max_factor_vertices = 5;
  bool acyclic = true;
  bool twist = true;  // randomly re-pair squares within (range,source) buckets
};

/// Product of two random 1-graphs, optionally with its squares re-paired
/// bucketwise. Products are locally convex; re-pairing keeps the skeleton (so
/// local convexity and acyclicity) while changing the factorization rules.
inline KGraph random_product_2graph(std::mt19937_64& rng, const RandomProductOpts& opts) {
  Random1GraphOpts o1;
  o1.max_vertices = opts.max_factor_vertices;
  o1.acyclic = opts.acyclic;
  KGraph A = random_1graph(rng, o1);
  KGraph B = random_1graph(rng, o1);
  KGraphBuilder b(2);
  auto vn = [&](VertexId a, VertexId bb) {
    return A.vertex_name(a) + "x" + B.vertex_name(bb);
  };
  for (VertexId a = 0; a < A.vertex_count(); ++a)
    for (VertexId bb = 0; bb < B.vertex_count(); ++bb) b.add_vertex(vn(a, bb));
  // color 1 from A-edges, color 2 from B-edges
  for (const Edge& e : A.edges())
    for (VertexId bb = 0; bb < B.vertex_count(); ++bb)
      b.add_edge(e.name + "x" + B.vertex_name(bb), 1, vn(e.range, bb), vn(e.source, bb));
  for (const Edge& e : B.edges())
    for (VertexId a = 0; a < A.vertex_count(); ++a)
      b.add_edge(A.vertex_name(a) + "x" + e.name, 2, vn(a, e.range), vn(a, e.source));
  // squares per bucket ((1,2)-words from (a,b) to (a',b')), possibly permuted
  struct Word {
    std::string first, second;
  };
  std::map<std::pair<std::string, std::string>, std::vector<Word>> fwd, bwd;
  for (const Edge& ea : A.edges())
    for (const Edge& eb : B.edges()) {
      auto key = std::make_pair(vn(ea.range, eb.range), vn(ea.source, eb.source));
      // (1,2): color-1 edge at b=r(eb), then color-2 edge at a=s(ea)
      fwd[key].push_back({ea.name + "x" + B.vertex_name(eb.range),
                          A.vertex_name(ea.source) + "x" + eb.name});
      // (2,1): color-2 edge at a=r(ea), then color-1 edge at b=s(eb)
      bwd[key].push_back({A.vertex_name(ea.range) + "x" + eb.name,
                          ea.name + "x" + B.vertex_name(eb.source)});
    }
  for (auto& [key, words] : fwd) {
    auto& other = bwd[key];
    std::vector<size_t> perm(words.size());
    for (size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    if (opts.twist) std::shuffle(perm.begin(), perm.end(), rng);
    for (size_t i = 0; i < words.size(); ++i)
      b.add_square(words[i].first, words[i].second, other[perm[i]].first, other[perm[i]].second);
  }
  return b.build();
}

}  // namespace kgraph::fixtures
