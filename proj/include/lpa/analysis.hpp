#ifndef LPA_ANALYSIS_HPP
#define LPA_ANALYSIS_HPP

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lpa/algebra.hpp"
#include "lpa/errors.hpp"
#include "lpa/graph.hpp"

namespace lpa {

/// A closed path based at a vertex. SimpleClosed revisits the base only at
/// its endpoints; Cycle additionally repeats no vertex at all.
struct ClosedPathWitness {
  enum class Kind { SimpleClosed, Cycle };
  VertexIndex base = -1;
  Path path;
  Kind kind = Kind::SimpleClosed;
};

namespace detail {

/// Strongly connected components, iterative Tarjan. Returns the component id
/// of each vertex plus the member lists.
struct SccResult {
  std::vector<int> comp;
  std::vector<std::vector<VertexIndex>> members;
};

inline SccResult strongly_connected_components(const Graph& g) {
  const VertexIndex n = g.vertex_count();
  std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
  std::vector<bool> on_stack(n, false);
  std::vector<VertexIndex> stack;
  std::vector<std::vector<VertexIndex>> members;
  int counter = 0;

  struct Frame {
    VertexIndex v;
    std::size_t next_edge;
  };

  for (VertexIndex root = 0; root < n; ++root) {
    if (index[root] != -1) continue;
    std::vector<Frame> frames{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      Frame& f = frames.back();
      if (f.next_edge < g.out_edges(f.v).size()) {
        EdgeIndex e = g.out_edges(f.v)[f.next_edge++];
        VertexIndex w = g.range(e);
        if (index[w] == -1) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
      } else {
        VertexIndex v = f.v;
        if (low[v] == index[v]) {
          std::vector<VertexIndex> scc;
          VertexIndex w;
          do {
            w = stack.back();
            stack.pop_back();
            on_stack[w] = false;
            comp[w] = static_cast<int>(members.size());
            scc.push_back(w);
          } while (w != v);
          std::sort(scc.begin(), scc.end());
          members.push_back(std::move(scc));
        }
        frames.pop_back();
        if (!frames.empty()) low[frames.back().v] = std::min(low[frames.back().v], low[v]);
      }
    }
  }
  return {std::move(comp), std::move(members)};
}

}  // namespace detail

/// Condition (L): every cycle has an exit. An exit-free cycle consists
/// entirely of unflagged vertices of out-degree exactly one (flagged
/// vertices always provide exits), so it suffices to chase the functional
/// subgraph on those vertices. Returns the lexicographically least exit-free
/// cycle as a counterexample, rotated to start at its least vertex.
inline std::pair<bool, std::optional<ClosedPathWitness>> condition_L(const Graph& g) {
  const VertexIndex n = g.vertex_count();
  auto restricted = [&](VertexIndex v) { return !g.flagged(v) && g.out_edges(v).size() == 1; };
  std::vector<int> state(n, 0);  // 0 new, 1 on current walk, 2 done
  for (VertexIndex start = 0; start < n; ++start) {
    if (!restricted(start) || state[start] != 0) continue;
    std::vector<VertexIndex> walk;
    VertexIndex v = start;
    while (restricted(v) && state[v] == 0) {
      state[v] = 1;
      walk.push_back(v);
      v = g.range(g.out_edges(v)[0]);
    }
    if (restricted(v) && state[v] == 1) {
      // cycle: the tail of the walk starting at v
      auto it = std::find(walk.begin(), walk.end(), v);
      std::vector<VertexIndex> cycle(it, walk.end());
      auto least = std::min_element(cycle.begin(), cycle.end());
      std::rotate(cycle.begin(), least, cycle.end());
      ClosedPathWitness w;
      w.base = cycle.front();
      w.path.base = cycle.front();
      for (VertexIndex u : cycle) w.path.edges.push_back(g.out_edges(u)[0]);
      w.kind = ClosedPathWitness::Kind::Cycle;
      for (VertexIndex u : walk) state[u] = 2;
      return {false, w};
    }
    for (VertexIndex u : walk) state[u] = 2;
  }
  return {true, std::nullopt};
}

/// Condition (K): no vertex is the base of precisely one simple closed path.
/// A vertex bases exactly one iff its strongly connected component is a lone
/// cycle: at least one internal edge and internal out-degree exactly one at
/// every member. Flagged vertices participate through their listed edges.
/// Returns the least vertex of the least failing component as witness.
inline std::pair<bool, std::optional<VertexIndex>> condition_K(const Graph& g) {
  auto scc = detail::strongly_connected_components(g);
  std::optional<VertexIndex> witness;
  for (const auto& comp_members : scc.members) {
    int comp_id = scc.comp[comp_members.front()];
    std::size_t internal_edges = 0;
    bool lone_cycle = true;
    for (VertexIndex v : comp_members) {
      std::size_t internal_out = 0;
      for (EdgeIndex e : g.out_edges(v))
        if (scc.comp[g.range(e)] == comp_id) ++internal_out;
      internal_edges += internal_out;
      if (internal_out != 1) lone_cycle = false;
    }
    if (internal_edges >= 1 && lone_cycle) {
      VertexIndex v = comp_members.front();
      if (!witness || v < *witness) witness = v;
    }
  }
  if (witness) return {false, witness};
  return {true, std::nullopt};
}

/// Exhaustive enumeration of the simple closed paths based at v of length at
/// most max_len (never revisiting v internally; other vertices may repeat).
/// Results in depth-first order over lexicographically ascending edges; at
/// most max_count results are returned.
inline std::vector<ClosedPathWitness> simple_closed_paths_bounded(
    const Graph& g, VertexIndex v, std::size_t max_len,
    std::size_t max_count = std::numeric_limits<std::size_t>::max()) {
  if (max_len < 1) throw InputError("max_len must be at least 1");
  if (v < 0 || v >= g.vertex_count()) throw InputError("unknown vertex");
  std::vector<ClosedPathWitness> found;
  std::vector<EdgeIndex> current;

  auto classify_kind = [&](const std::vector<EdgeIndex>& edges) {
    std::vector<VertexIndex> sources;
    for (EdgeIndex e : edges) sources.push_back(g.source(e));
    std::sort(sources.begin(), sources.end());
    bool repeats = std::adjacent_find(sources.begin(), sources.end()) != sources.end();
    return repeats ? ClosedPathWitness::Kind::SimpleClosed : ClosedPathWitness::Kind::Cycle;
  };

  auto dfs = [&](auto&& self, VertexIndex u) -> void {
    if (found.size() >= max_count) return;
    for (EdgeIndex e : g.out_edges(u)) {
      if (found.size() >= max_count) return;
      VertexIndex w = g.range(e);
      current.push_back(e);
      if (w == v) {
        ClosedPathWitness wit;
        wit.base = v;
        wit.path = Path{v, current};
        wit.kind = classify_kind(current);
        found.push_back(std::move(wit));
      } else if (current.size() < max_len) {
        self(self, w);
      }
      current.pop_back();
    }
  };
  dfs(dfs, v);
  return found;
}

inline bool is_hereditary(const Graph& g, const std::vector<bool>& in_set) {
  for (EdgeIndex e = 0; e < g.edge_count(); ++e)
    if (in_set[g.source(e)] && !in_set[g.range(e)]) return false;
  return true;
}

inline bool is_saturated(const Graph& g, const std::vector<bool>& in_set) {
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    if (in_set[v] || !g.is_regular(v)) continue;
    bool all_in = true;
    for (EdgeIndex e : g.out_edges(v))
      if (!in_set[g.range(e)]) { all_in = false; break; }
    if (all_in) return false;
  }
  return true;
}

/// Least saturated hereditary subset containing the seed: the fixpoint of
/// adding ranges of edges leaving the set and adding regular vertices whose
/// out-ranges all lie in the set.
inline std::vector<VertexIndex> hereditary_saturated_closure(const Graph& g,
                                                             const std::vector<VertexIndex>& seed) {
  std::vector<bool> in_set(g.vertex_count(), false);
  for (VertexIndex v : seed) {
    if (v < 0 || v >= g.vertex_count()) throw InputError("unknown vertex in seed");
    in_set[v] = true;
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (EdgeIndex e = 0; e < g.edge_count(); ++e)
      if (in_set[g.source(e)] && !in_set[g.range(e)]) {
        in_set[g.range(e)] = true;
        changed = true;
      }
    for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
      if (in_set[v] || !g.is_regular(v)) continue;
      bool all_in = true;
      for (EdgeIndex e : g.out_edges(v))
        if (!in_set[g.range(e)]) { all_in = false; break; }
      if (all_in) {
        in_set[v] = true;
        changed = true;
      }
    }
  }
  std::vector<VertexIndex> out;
  for (VertexIndex v = 0; v < g.vertex_count(); ++v)
    if (in_set[v]) out.push_back(v);
  return out;
}

/// All saturated hereditary subsets by power-set scan, in ascending mask
/// order (bit i = vertex i). Guarded: throws GuardError above max_vertices.
inline std::vector<std::vector<VertexIndex>> enumerate_hsat(const Graph& g,
                                                            VertexIndex max_vertices = 16) {
  const VertexIndex n = g.vertex_count();
  if (n > max_vertices)
    throw GuardError("hereditary/saturated enumeration limited to " +
                     std::to_string(max_vertices) + " vertices (graph has " +
                     std::to_string(n) + ")");
  std::vector<std::vector<VertexIndex>> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << n); ++mask) {
    std::vector<bool> in_set(n, false);
    for (VertexIndex v = 0; v < n; ++v) in_set[v] = (mask >> v) & 1;
    if (!is_hereditary(g, in_set) || !is_saturated(g, in_set)) continue;
    std::vector<VertexIndex> s;
    for (VertexIndex v = 0; v < n; ++v)
      if (in_set[v]) s.push_back(v);
    out.push_back(std::move(s));
  }
  return out;
}

/// Why a graph fails simplicity: an exit-free cycle, or a vertex whose
/// saturated hereditary closure is proper.
struct SimplicityCertificate {
  std::optional<ClosedPathWitness> cycle;
  std::optional<VertexIndex> seed;
  std::optional<std::vector<VertexIndex>> proper_closure;
};

/// Simplicity of the Leavitt path algebra: condition (L) plus every vertex
/// generating the full vertex set as saturated hereditary closure.
inline std::pair<bool, SimplicityCertificate> is_simple(const Graph& g) {
  SimplicityCertificate cert;
  auto [l_ok, l_witness] = condition_L(g);
  if (!l_ok) {
    cert.cycle = l_witness;
    return {false, cert};
  }
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    auto closure = hereditary_saturated_closure(g, {v});
    if (static_cast<VertexIndex>(closure.size()) != g.vertex_count()) {
      cert.seed = v;
      cert.proper_closure = closure;
      return {false, cert};
    }
  }
  return {true, cert};
}

inline bool is_exchange(const Graph& g) { return condition_K(g).first; }

inline bool ideals_all_homogeneous(const Graph& g) { return condition_K(g).first; }

/// Bounded probe for a vertex inside the two-sided ideal generated by a:
/// closes the linear span of a under one-generator products for at most
/// `depth` rounds (stopping early at a fixpoint or at `row_cap` independent
/// rows) and reports a vertex lying in the span. A returned vertex is
/// re-checked by reduction against the span basis; absence is inconclusive.
template <class Field>
std::optional<VertexIndex> vertex_in_ideal_probe(const LeavittEngine<Field>& engine,
                                                 const AlgebraElement<Field>& a,
                                                 std::size_t depth,
                                                 std::size_t row_cap = 50000) {
  using Element = AlgebraElement<Field>;
  if (a.is_zero()) throw InputError("ideal probe requires a nonzero element");
  const Graph& g = engine.graph();
  const Field& field = engine.field();

  std::map<Monomial, Element> pivots;  // leading monomial -> normalized row

  auto reduce_row = [&](Element x) {
    while (!x.is_zero()) {
      auto lead = x.terms.begin();
      auto it = pivots.find(lead->first);
      if (it == pivots.end()) break;
      x = engine.sub(x, engine.scale(lead->second, it->second));
    }
    return x;
  };

  auto insert_row = [&](const Element& x) -> std::optional<Element> {
    Element r = reduce_row(x);
    if (r.is_zero()) return std::nullopt;
    Element normalized = engine.scale(field.div(field.one(), r.terms.begin()->second), r);
    pivots.emplace(normalized.terms.begin()->first, normalized);
    return normalized;
  };

  auto find_vertex = [&]() -> std::optional<VertexIndex> {
    for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
      if (reduce_row(engine.vertex_element(v)).is_zero()) {
        // verify: an independent second reduction must also vanish
        if (!reduce_row(engine.vertex_element(v)).is_zero()) continue;
        return v;
      }
    }
    return std::nullopt;
  };

  std::vector<Element> generators;
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) generators.push_back(engine.vertex_element(v));
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    generators.push_back(engine.edge_element(e));
    generators.push_back(engine.ghost_element(e));
  }

  std::vector<Element> frontier;
  if (auto r = insert_row(a)) frontier.push_back(*r);
  if (auto v = find_vertex()) return v;

  for (std::size_t round = 0; round < depth && !frontier.empty(); ++round) {
    std::vector<Element> next;
    for (const Element& x : frontier) {
      for (const Element& gen : generators) {
        for (const Element& y : {engine.mul(gen, x), engine.mul(x, gen)}) {
          if (y.is_zero()) continue;
          if (auto r = insert_row(y)) next.push_back(*r);
          if (pivots.size() > row_cap) return std::nullopt;
        }
      }
    }
    if (auto v = find_vertex()) return v;
    frontier = std::move(next);
  }
  return std::nullopt;
}

inline std::size_t default_probe_depth(const Graph& g) {
  return 2 * static_cast<std::size_t>(g.vertex_count() + g.edge_count());
}

/// Aggregate report over the graph-theoretic criteria.
struct AnalysisReport {
  bool row_finite = false;
  bool condition_k = false;
  std::optional<VertexIndex> k_witness;
  bool condition_l = false;
  std::optional<ClosedPathWitness> l_witness;
  bool simple = false;
  SimplicityCertificate simplicity;
  bool exchange = false;
  bool all_ideals_homogeneous = false;
  std::optional<std::vector<std::vector<VertexIndex>>> hsat_lattice;  // absent if guarded
};

inline AnalysisReport analyze(const Graph& g, VertexIndex hsat_guard = 16) {
  AnalysisReport r;
  r.row_finite = is_row_finite(g);
  auto k = condition_K(g);
  r.condition_k = k.first;
  r.k_witness = k.second;
  auto l = condition_L(g);
  r.condition_l = l.first;
  r.l_witness = l.second;
  auto s = is_simple(g);
  r.simple = s.first;
  r.simplicity = s.second;
  r.exchange = r.condition_k;
  r.all_ideals_homogeneous = r.condition_k;
  try {
    r.hsat_lattice = enumerate_hsat(g, hsat_guard);
  } catch (const GuardError&) {
    r.hsat_lattice = std::nullopt;
  }
  return r;
}

}  // namespace lpa

#endif  // LPA_ANALYSIS_HPP
