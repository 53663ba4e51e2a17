#ifndef LPA_GRAPH_HPP
#define LPA_GRAPH_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "lpa/errors.hpp"

namespace lpa {

using VertexIndex = std::int32_t;
using EdgeIndex = std::int32_t;

/// Trichotomy of vertices: a sink emits nothing, an infinite emitter is a
/// vertex explicitly flagged as emitting edges beyond the listed ones, and a
/// regular vertex emits at least one and finitely many edges.
enum class VertexClass { Sink, Regular, InfiniteEmitter };

inline const char* to_string(VertexClass c) {
  switch (c) {
    case VertexClass::Sink: return "sink";
    case VertexClass::Regular: return "regular";
    case VertexClass::InfiniteEmitter: return "infinite_emitter";
  }
  return "?";
}

struct VertexDecl {
  std::string id;
  bool infinite = false;
};

struct EdgeDecl {
  std::string id;
  std::string source;
  std::string range;
};

/// A finite directed graph with string-labelled vertices and edges and a
/// per-vertex infinite-emitter flag. Immutable after construction. Vertices
/// and edges are stored sorted by id, so every internal index order is the
/// lexicographic id order.
class Graph {
 public:
  Graph() = default;

  /// Validates and builds. Throws InputError on duplicate ids, ids shared
  /// between the vertex and edge namespaces, or edges whose endpoints are
  /// not declared vertices.
  static Graph build(std::vector<VertexDecl> vertices, std::vector<EdgeDecl> edges) {
    Graph g;
    std::sort(vertices.begin(), vertices.end(),
              [](const VertexDecl& a, const VertexDecl& b) { return a.id < b.id; });
    for (const auto& v : vertices) {
      if (v.id.empty()) throw InputError("empty vertex id");
      if (!g.vertex_ids_.empty() && g.vertex_ids_.back() == v.id)
        throw InputError("duplicate vertex id '" + v.id + "'");
      g.vertex_ids_.push_back(v.id);
      g.flagged_.push_back(v.infinite);
    }

    std::sort(edges.begin(), edges.end(),
              [](const EdgeDecl& a, const EdgeDecl& b) { return a.id < b.id; });
    for (const auto& e : edges) {
      if (e.id.empty()) throw InputError("empty edge id");
      if (!g.edge_ids_.empty() && g.edge_ids_.back() == e.id)
        throw InputError("duplicate edge id '" + e.id + "'");
      if (g.find_vertex(e.id))
        throw InputError("id '" + e.id + "' used for both a vertex and an edge");
      auto s = g.find_vertex(e.source);
      if (!s) throw InputError("edge '" + e.id + "' references undeclared vertex '" + e.source + "'");
      auto r = g.find_vertex(e.range);
      if (!r) throw InputError("edge '" + e.id + "' references undeclared vertex '" + e.range + "'");
      g.edge_ids_.push_back(e.id);
      g.edge_source_.push_back(*s);
      g.edge_range_.push_back(*r);
    }

    g.out_edges_.assign(g.vertex_ids_.size(), {});
    g.in_edges_.assign(g.vertex_ids_.size(), {});
    for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
      g.out_edges_[g.edge_source_[e]].push_back(e);
      g.in_edges_[g.edge_range_[e]].push_back(e);
    }
    return g;
  }

  VertexIndex vertex_count() const { return static_cast<VertexIndex>(vertex_ids_.size()); }
  EdgeIndex edge_count() const { return static_cast<EdgeIndex>(edge_ids_.size()); }

  const std::string& vertex_id(VertexIndex v) const { return vertex_ids_.at(v); }
  const std::string& edge_id(EdgeIndex e) const { return edge_ids_.at(e); }
  VertexIndex source(EdgeIndex e) const { return edge_source_.at(e); }
  VertexIndex range(EdgeIndex e) const { return edge_range_.at(e); }
  bool flagged(VertexIndex v) const { return flagged_.at(v); }

  /// Out-edges of v, ascending by edge index (= lexicographic by edge id).
  const std::vector<EdgeIndex>& out_edges(VertexIndex v) const { return out_edges_.at(v); }
  const std::vector<EdgeIndex>& in_edges(VertexIndex v) const { return in_edges_.at(v); }

  std::optional<VertexIndex> find_vertex(const std::string& id) const {
    auto it = std::lower_bound(vertex_ids_.begin(), vertex_ids_.end(), id);
    if (it == vertex_ids_.end() || *it != id) return std::nullopt;
    return static_cast<VertexIndex>(it - vertex_ids_.begin());
  }

  std::optional<EdgeIndex> find_edge(const std::string& id) const {
    auto it = std::lower_bound(edge_ids_.begin(), edge_ids_.end(), id);
    if (it == edge_ids_.end() || *it != id) return std::nullopt;
    return static_cast<EdgeIndex>(it - edge_ids_.begin());
  }

  VertexIndex require_vertex(const std::string& id) const {
    auto v = find_vertex(id);
    if (!v) throw InputError("unknown vertex '" + id + "'");
    return *v;
  }

  EdgeIndex require_edge(const std::string& id) const {
    auto e = find_edge(id);
    if (!e) throw InputError("unknown edge '" + id + "'");
    return *e;
  }

  /// The flag is authoritative: a flagged vertex with no listed edges is an
  /// infinite emitter, not a sink.
  VertexClass classify(VertexIndex v) const {
    if (flagged(v)) return VertexClass::InfiniteEmitter;
    return out_edges(v).empty() ? VertexClass::Sink : VertexClass::Regular;
  }

  bool is_regular(VertexIndex v) const { return classify(v) == VertexClass::Regular; }

  bool operator==(const Graph& other) const {
    return vertex_ids_ == other.vertex_ids_ && flagged_ == other.flagged_ &&
           edge_ids_ == other.edge_ids_ && edge_source_ == other.edge_source_ &&
           edge_range_ == other.edge_range_;
  }

 private:
  std::vector<std::string> vertex_ids_;
  std::vector<bool> flagged_;
  std::vector<std::string> edge_ids_;
  std::vector<VertexIndex> edge_source_;
  std::vector<VertexIndex> edge_range_;
  std::vector<std::vector<EdgeIndex>> out_edges_;
  std::vector<std::vector<EdgeIndex>> in_edges_;
};

inline bool is_row_finite(const Graph& g) {
  for (VertexIndex v = 0; v < g.vertex_count(); ++v)
    if (g.flagged(v)) return false;
  return true;
}

/// Reverses every edge: e becomes e* with source and range swapped.
/// Infinite-emitter flags are dropped (an infinite emitter dualizes to an
/// "infinite receiver", which this data model does not represent); when that
/// happens *dropped_flags is set.
inline Graph dual(const Graph& g, bool* dropped_flags = nullptr) {
  if (dropped_flags) *dropped_flags = false;
  std::vector<VertexDecl> vs;
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    if (g.flagged(v) && dropped_flags) *dropped_flags = true;
    vs.push_back({g.vertex_id(v), false});
  }
  std::vector<EdgeDecl> es;
  for (EdgeIndex e = 0; e < g.edge_count(); ++e)
    es.push_back({g.edge_id(e) + "*", g.vertex_id(g.range(e)), g.vertex_id(g.source(e))});
  return Graph::build(std::move(vs), std::move(es));
}

/// The double (extended graph): the union of g and its dual. Ghost edge ids
/// are the real ids suffixed with '*'.
inline Graph double_graph(const Graph& g) {
  std::vector<VertexDecl> vs;
  for (VertexIndex v = 0; v < g.vertex_count(); ++v)
    vs.push_back({g.vertex_id(v), g.flagged(v)});
  std::vector<EdgeDecl> es;
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    es.push_back({g.edge_id(e), g.vertex_id(g.source(e)), g.vertex_id(g.range(e))});
    es.push_back({g.edge_id(e) + "*", g.vertex_id(g.range(e)), g.vertex_id(g.source(e))});
  }
  return Graph::build(std::move(vs), std::move(es));
}

/// A directed path: a base vertex plus a (possibly empty) edge sequence in
/// which consecutive edges compose. The base always equals the source.
struct Path {
  VertexIndex base = -1;
  std::vector<EdgeIndex> edges;

  static Path trivial(VertexIndex v) { return Path{v, {}}; }

  VertexIndex source() const { return base; }
  VertexIndex range(const Graph& g) const {
    return edges.empty() ? base : g.range(edges.back());
  }
  std::size_t length() const { return edges.size(); }

  bool valid(const Graph& g) const {
    if (base < 0 || base >= g.vertex_count()) return false;
    VertexIndex at = base;
    for (EdgeIndex e : edges) {
      if (e < 0 || e >= g.edge_count() || g.source(e) != at) return false;
      at = g.range(e);
    }
    return true;
  }

  Path then(const Graph& g, EdgeIndex e) const {
    Path r = *this;
    (void)g;
    r.edges.push_back(e);
    return r;
  }

  auto operator<=>(const Path&) const = default;
};

}  // namespace lpa

#endif  // LPA_GRAPH_HPP
