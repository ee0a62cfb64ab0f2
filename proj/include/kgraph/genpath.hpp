#pragma once

#include <functional>
#include <optional>
#include <utility>

#include "kgraph/path.hpp"

namespace kgraph {

/// A point of the path space W: a finite path, an eventually periodic
/// infinite path (prefix + cycle), or a window-limited rule n ↦ x(0,n)
/// certified coherent up to a bound. Exact equality of windowed paths is not
/// decidable; comparisons against them are window-certified.
struct GPath {
  enum class Kind { finite, periodic, windowed };
  Kind kind = Kind::finite;

  Path fin;             // finite
  Path prefix, cycle;   // periodic: prefix then cycle^∞, s(cycle)=r(cycle)=s(prefix)
  Deg deg;              // extended degree
  Deg wbound;           // windowed: coherence certified for n ≤ wbound
  std::function<Path(const Deg&)> rule;  // windowed: n ↦ x(0,n)
};

inline GPath gp_finite(const Path& p) {
  GPath x;
  x.kind = GPath::Kind::finite;
  x.fin = p;
  x.deg = p.deg;
  return x;
}

inline GPath gp_periodic(const KGraph& g, const Path& prefix, const Path& cycle) {
  if (cycle.deg.is_zero()) fail(Errc::invalid_argument, "periodic: cycle must have degree > 0");
  if (cycle.range != path_source(g, cycle) || cycle.range != path_source(g, prefix))
    fail(Errc::invalid_argument, "periodic: need s(cycle) = r(cycle) = s(prefix)");
  GPath x;
  x.kind = GPath::Kind::periodic;
  x.prefix = prefix;
  x.cycle = cycle;
  x.deg = Deg(g.rank());
  for (int i = 0; i < g.rank(); ++i)
    x.deg.at(i) = cycle.deg[i] > 0 ? Deg::kInf : prefix.deg[i];
  return x;
}

inline GPath gp_windowed(const Deg& deg, const Deg& wbound,
                         std::function<Path(const Deg&)> rule) {
  wbound.require_finite("gp_windowed");
  GPath x;
  x.kind = GPath::Kind::windowed;
  x.deg = deg;
  x.wbound = wbound;
  x.rule = std::move(rule);
  return x;
}

inline const Deg& gp_degree(const GPath& x) { return x.deg; }

namespace detail {
/// prefix·cycle^j with degree ≥ upto on the cycle's support.
inline Path unroll_periodic(const KGraph& g, const GPath& x, const Deg& upto) {
  Path acc = x.prefix;
  int reps = 0;
  for (int i = 0; i < g.rank(); ++i) {
    if (x.cycle.deg[i] == 0) continue;
    int need = upto[i] - x.prefix.deg[i];
    if (need > 0) reps = std::max(reps, (need + x.cycle.deg[i] - 1) / x.cycle.deg[i]);
  }
  for (int j = 0; j < reps; ++j) acc = compose(g, acc, x.cycle);
  return acc;
}
}  // namespace detail

/// x(0,n) for finite n ≤ d(x).
inline Path gp_prefix_path(const KGraph& g, const GPath& x, const Deg& n) {
  n.require_finite("gp_prefix_path");
  if (!n.leq(x.deg)) fail(Errc::out_of_range, "prefix degree exceeds d(x)");
  switch (x.kind) {
    case GPath::Kind::finite:
      return factor_segment(g, x.fin, Deg::zero(g.rank()), n);
    case GPath::Kind::periodic: {
      Path u = detail::unroll_periodic(g, x, n);
      return factor_segment(g, u, Deg::zero(g.rank()), n);
    }
    case GPath::Kind::windowed: {
      if (!n.leq(x.wbound))
        fail(Errc::window_exceeded, "windowed path only certified up to " + x.wbound.str());
      Path p = x.rule(n);
      if (p.deg != n) fail(Errc::incoherent_family, "windowed rule returned wrong degree");
      return p;
    }
  }
  fail(Errc::invalid_argument, "unreachable");
}

/// x(p,q) for finite p ≤ q ≤ d(x).
inline Path gp_segment(const KGraph& g, const GPath& x, const Deg& p, const Deg& q) {
  Path pre = gp_prefix_path(g, x, q);
  return factor_segment(g, pre, p, q);
}

inline VertexId gp_range(const KGraph& g, const GPath& x) {
  switch (x.kind) {
    case GPath::Kind::finite: return x.fin.range;
    case GPath::Kind::periodic: return x.prefix.range;
    case GPath::Kind::windowed: return x.rule(Deg::zero(x.deg.rank())).range;
  }
  return -1;
}

/// x(n) = s(x(0,n)).
inline VertexId gp_base(const KGraph& g, const GPath& x, const Deg& n) {
  return path_source(g, gp_prefix_path(g, x, n));
}

/// σ^m(x): the shift, degree d(x) − m.
inline GPath gp_shift(const KGraph& g, const GPath& x, const Deg& m) {
  m.require_finite("gp_shift");
  if (!m.leq(x.deg)) fail(Errc::out_of_range, "shift exceeds d(x)");
  switch (x.kind) {
    case GPath::Kind::finite:
      return gp_finite(factor_segment(g, x.fin, m, x.fin.deg));
    case GPath::Kind::periodic: {
      // cut at the first cycle-phase boundary past m ∨ d(prefix)
      Deg cut(g.rank());
      for (int i = 0; i < g.rank(); ++i) {
        if (x.cycle.deg[i] == 0) {
          cut.at(i) = x.prefix.deg[i];
        } else {
          int over = std::max(0, m[i] - x.prefix.deg[i]);
          int reps = (over + x.cycle.deg[i] - 1) / x.cycle.deg[i];
          cut.at(i) = x.prefix.deg[i] + reps * x.cycle.deg[i];
        }
      }
      Path u = detail::unroll_periodic(g, x, cut);
      Path new_prefix = factor_segment(g, u, m, cut);
      return gp_periodic(g, new_prefix, x.cycle);
    }
    case GPath::Kind::windowed: {
      Deg nb = x.wbound - m.meet(x.wbound);
      KGraph gc = g;
      GPath base = x;
      Deg mm = m;
      return gp_windowed(x.deg - m, nb, [gc, base, mm](const Deg& n) {
        return gp_segment(gc, base, mm, mm + n);
      });
    }
  }
  fail(Errc::invalid_argument, "unreachable");
}

/// λx: compose a finite path with a path-space point (s(λ) = r(x)).
inline GPath gp_compose(const KGraph& g, const Path& lam, const GPath& x) {
  if (path_source(g, lam) != gp_range(g, x))
    fail(Errc::not_composable, "compose: s(lambda) != r(x)");
  switch (x.kind) {
    case GPath::Kind::finite:
      return gp_finite(compose(g, lam, x.fin));
    case GPath::Kind::periodic:
      return gp_periodic(g, compose(g, lam, x.prefix), x.cycle);
    case GPath::Kind::windowed: {
      KGraph gc = g;
      GPath base = x;
      Path l = lam;
      return gp_windowed(lam.deg + x.deg, lam.deg + x.wbound, [gc, base, l](const Deg& n) {
        Deg m(n.rank());
        for (int i = 0; i < n.rank(); ++i) m.at(i) = std::max(0, n[i] - l.deg[i]);
        Path whole = compose(gc, l, gp_prefix_path(gc, base, m));
        return factor_segment(gc, whole, Deg::zero(n.rank()), n);
      });
    }
  }
  fail(Errc::invalid_argument, "unreachable");
}

/// Do x and y agree as partial morphisms up to degree n: same clipped degree
/// n ∧ d and equal prefixes there.
inline bool gp_agree_up_to(const KGraph& g, const GPath& x, const GPath& y, const Deg& n) {
  Deg cx = n.meet(x.deg), cy = n.meet(y.deg);
  if (cx != cy) return false;
  return gp_prefix_path(g, x, cx) == gp_prefix_path(g, y, cy);
}

/// Equality, certified where decidable: exact for finite/finite and (via one
/// period of agreement) periodic/periodic; windowed comparisons are certified
/// only up to the windows involved.
inline bool gp_equal(const KGraph& g, const GPath& x, const GPath& y) {
  if (x.deg != y.deg) return false;
  if (x.kind == GPath::Kind::finite && y.kind == GPath::Kind::finite) return x.fin == y.fin;
  Deg bound(g.rank());
  for (int i = 0; i < g.rank(); ++i) {
    if (x.deg[i] != Deg::kInf) {
      bound.at(i) = x.deg[i];
      continue;
    }
    int b = 0;
    auto add = [&](const GPath& z) {
      if (z.kind == GPath::Kind::periodic)
        b += z.prefix.deg[i] + 2 * z.cycle.deg[i];
      else if (z.kind == GPath::Kind::windowed)
        b = std::max(b, z.wbound[i]);
    };
    add(x);
    add(y);
    bound.at(i) = b;
  }
  if (x.kind == GPath::Kind::windowed) bound = bound.meet(x.wbound);
  if (y.kind == GPath::Kind::windowed) bound = bound.meet(y.wbound);
  return gp_agree_up_to(g, x, y, bound);
}

inline std::string gp_str(const KGraph& g, const GPath& x) {
  switch (x.kind) {
    case GPath::Kind::finite: return path_str(g, x.fin);
    case GPath::Kind::periodic:
      return path_str(g, x.prefix) + "(" + path_str(g, x.cycle) + ")^inf";
    case GPath::Kind::windowed:
      return "<windowed deg=" + x.deg.str() + " upto=" + x.wbound.str() + ">";
  }
  return "?";
}

/// A coherent nested family ν^(0) ≤ ν^(1) ≤ ..., given as a finite list or a
/// generating rule; `limit` declares ⋁ d(ν^(n)) for infinite families.
struct NestedFamily {
  std::function<Path(int)> at;
  int count = -1;  // -1: infinite rule
  Deg limit;
  std::optional<std::pair<Path, Path>> cycle_cert;  // claimed (prefix, cycle)
};

/// Lemma-style join: the unique ω with ω(0, d(ν^(n))) = ν^(n). Coherence is
/// checked up to `window`; violations raise IncoherentFamily with the index.
inline GPath join_nested(const KGraph& g, const NestedFamily& fam, const Deg& window) {
  auto check_pair = [&](const Path& a, const Path& b, int idx) {
    if (!a.deg.leq(b.deg))
      fail(Errc::incoherent_family, "degree not monotone at index " + std::to_string(idx));
    if (factor_segment(g, b, Deg::zero(g.rank()), a.deg) != a)
      fail(Errc::incoherent_family, "prefix mismatch at index " + std::to_string(idx));
  };
  if (fam.count == 0) fail(Errc::invalid_argument, "empty family");
  if (fam.count > 0) {
    Path prev = fam.at(0);
    for (int j = 1; j < fam.count; ++j) {
      Path cur = fam.at(j);
      check_pair(prev, cur, j);
      prev = cur;
    }
    return gp_finite(prev);
  }
  // infinite rule: verify coherence until the window is covered
  Deg target = window;
  for (int i = 0; i < g.rank(); ++i)
    if (fam.limit[i] != Deg::kInf) target.at(i) = std::min(target[i], fam.limit[i]);
  Path prev = fam.at(0);
  const int kMaxScan = 100000;
  int j = 1;
  for (; j < kMaxScan && !target.leq(prev.deg); ++j) {
    Path cur = fam.at(j);
    check_pair(prev, cur, j);
    prev = cur;
  }
  if (!target.leq(prev.deg))
    fail(Errc::window_exceeded, "family does not reach the window bound");
  if (fam.cycle_cert) {
    GPath per = gp_periodic(g, fam.cycle_cert->first, fam.cycle_cert->second);
    if (fam.limit != per.deg)
      fail(Errc::incoherent_family, "cycle certificate degree mismatch");
    for (int i = 0; i < j; ++i) {
      Path v = fam.at(i);
      if (!v.deg.leq(per.deg) || gp_prefix_path(g, per, v.deg) != v)
        fail(Errc::incoherent_family, "cycle certificate mismatch at index " + std::to_string(i));
    }
    return per;
  }
  auto fn = fam.at;
  KGraph gc = g;
  return gp_windowed(fam.limit, target, [gc, fn](const Deg& n) {
    Path cur = fn(0);
    for (int i = 1; i < 100000 && !n.leq(cur.deg); ++i) cur = fn(i);
    if (!n.leq(cur.deg)) fail(Errc::window_exceeded, "rule never covers requested degree");
    return factor_segment(gc, cur, Deg::zero(n.rank()), n);
  });
}

}  // namespace kgraph
