#ifndef LPA_MORPHISM_HPP
#define LPA_MORPHISM_HPP

#include <map>
#include <set>
#include <string>
#include <vector>

#include "lpa/errors.hpp"
#include "lpa/graph.hpp"

namespace lpa {

/// General < VertexInjective < CK; classify_morphism returns the strongest
/// class a morphism satisfies.
enum class MorphismClass { General, VertexInjective, CK };

inline const char* to_string(MorphismClass c) {
  switch (c) {
    case MorphismClass::General: return "general";
    case MorphismClass::VertexInjective: return "vertex_injective";
    case MorphismClass::CK: return "ck";
  }
  return "?";
}

/// A graph morphism: vertex and edge maps commuting with source and range.
/// Stores copies of both graphs; maps are index-based on the sorted orders.
class GraphMorphism {
 public:
  GraphMorphism(Graph source, Graph target, std::vector<VertexIndex> vmap,
                std::vector<EdgeIndex> emap)
      : source_(std::move(source)),
        target_(std::move(target)),
        vmap_(std::move(vmap)),
        emap_(std::move(emap)) {
    validate();
  }

  /// Builds from id-level maps. Throws InputError if a vertex or edge of the
  /// source is unmapped, a target id is unknown, or the maps do not commute
  /// with source/range.
  static GraphMorphism from_ids(const Graph& source, const Graph& target,
                                const std::map<std::string, std::string>& vertex_map,
                                const std::map<std::string, std::string>& edge_map) {
    std::vector<VertexIndex> vmap(source.vertex_count(), -1);
    std::vector<EdgeIndex> emap(source.edge_count(), -1);
    for (const auto& [from, to] : vertex_map)
      vmap[source.require_vertex(from)] = target.require_vertex(to);
    for (const auto& [from, to] : edge_map)
      emap[source.require_edge(from)] = target.require_edge(to);
    for (VertexIndex v = 0; v < source.vertex_count(); ++v)
      if (vmap[v] < 0) throw InputError("unmapped vertex '" + source.vertex_id(v) + "'");
    for (EdgeIndex e = 0; e < source.edge_count(); ++e)
      if (emap[e] < 0) throw InputError("unmapped edge '" + source.edge_id(e) + "'");
    return GraphMorphism(source, target, std::move(vmap), std::move(emap));
  }

  /// The inclusion of a subgraph. Throws InputError if sub is not a subgraph
  /// of super (missing ids or incidence mismatch).
  static GraphMorphism inclusion(const Graph& sub, const Graph& super) {
    std::vector<VertexIndex> vmap(sub.vertex_count());
    std::vector<EdgeIndex> emap(sub.edge_count());
    for (VertexIndex v = 0; v < sub.vertex_count(); ++v) {
      auto t = super.find_vertex(sub.vertex_id(v));
      if (!t) throw InputError("not a subgraph: vertex '" + sub.vertex_id(v) + "' missing");
      vmap[v] = *t;
    }
    for (EdgeIndex e = 0; e < sub.edge_count(); ++e) {
      auto t = super.find_edge(sub.edge_id(e));
      if (!t) throw InputError("not a subgraph: edge '" + sub.edge_id(e) + "' missing");
      if (super.vertex_id(super.source(*t)) != sub.vertex_id(sub.source(e)) ||
          super.vertex_id(super.range(*t)) != sub.vertex_id(sub.range(e)))
        throw InputError("not a subgraph: edge '" + sub.edge_id(e) + "' incidence mismatch");
      emap[e] = *t;
    }
    return GraphMorphism(sub, super, std::move(vmap), std::move(emap));
  }

  static GraphMorphism identity(const Graph& g) {
    std::vector<VertexIndex> vmap(g.vertex_count());
    std::vector<EdgeIndex> emap(g.edge_count());
    for (VertexIndex v = 0; v < g.vertex_count(); ++v) vmap[v] = v;
    for (EdgeIndex e = 0; e < g.edge_count(); ++e) emap[e] = e;
    return GraphMorphism(g, g, std::move(vmap), std::move(emap));
  }

  const Graph& source_graph() const { return source_; }
  const Graph& target_graph() const { return target_; }
  VertexIndex map_vertex(VertexIndex v) const { return vmap_.at(v); }
  EdgeIndex map_edge(EdgeIndex e) const { return emap_.at(e); }
  const std::vector<VertexIndex>& vertex_map() const { return vmap_; }
  const std::vector<EdgeIndex>& edge_map() const { return emap_; }

  Path map_path(const Path& p) const {
    Path r;
    r.base = vmap_.at(p.base);
    r.edges.reserve(p.edges.size());
    for (EdgeIndex e : p.edges) r.edges.push_back(emap_.at(e));
    return r;
  }

 private:
  void validate() const {
    if (static_cast<VertexIndex>(vmap_.size()) != source_.vertex_count() ||
        static_cast<EdgeIndex>(emap_.size()) != source_.edge_count())
      throw InputError("morphism map sizes do not match the source graph");
    for (VertexIndex t : vmap_)
      if (t < 0 || t >= target_.vertex_count()) throw InputError("vertex map out of range");
    for (EdgeIndex e = 0; e < source_.edge_count(); ++e) {
      EdgeIndex t = emap_[e];
      if (t < 0 || t >= target_.edge_count()) throw InputError("edge map out of range");
      if (target_.source(t) != vmap_[source_.source(e)] ||
          target_.range(t) != vmap_[source_.range(e)])
        throw InputError("maps do not commute with source/range at edge '" +
                         source_.edge_id(e) + "'");
    }
  }

  Graph source_;
  Graph target_;
  std::vector<VertexIndex> vmap_;
  std::vector<EdgeIndex> emap_;
};

/// g after f (apply f first). Throws InputError unless f's target equals g's
/// source graph.
inline GraphMorphism compose(const GraphMorphism& g, const GraphMorphism& f) {
  if (!(f.target_graph() == g.source_graph()))
    throw InputError("morphisms are not composable");
  std::vector<VertexIndex> vmap(f.source_graph().vertex_count());
  std::vector<EdgeIndex> emap(f.source_graph().edge_count());
  for (VertexIndex v = 0; v < f.source_graph().vertex_count(); ++v)
    vmap[v] = g.map_vertex(f.map_vertex(v));
  for (EdgeIndex e = 0; e < f.source_graph().edge_count(); ++e)
    emap[e] = g.map_edge(f.map_edge(e));
  return GraphMorphism(f.source_graph(), g.target_graph(), std::move(vmap), std::move(emap));
}

inline bool same_maps(const GraphMorphism& a, const GraphMorphism& b) {
  return a.vertex_map() == b.vertex_map() && a.edge_map() == b.edge_map();
}

/// Strongest class of a (already validated) morphism.
///
/// The CK conditions, applied to this data model where the flag is the
/// witness for unlisted edges:
///   - both maps injective;
///   - flagged vertices map to flagged vertices (a flagged source asserts
///     unlisted edges, which cannot land on an unflagged target);
///   - regular vertices map to regular vertices (the source CK2 relation
///     must be available at the image);
///   - wherever the image vertex is regular in the target, the edge map
///     restricts to a bijection between the listed out-edges.
inline MorphismClass classify_morphism(const GraphMorphism& m) {
  const Graph& e = m.source_graph();
  const Graph& f = m.target_graph();

  std::set<VertexIndex> vimg(m.vertex_map().begin(), m.vertex_map().end());
  bool vertex_injective = static_cast<VertexIndex>(vimg.size()) == e.vertex_count();
  if (!vertex_injective) return MorphismClass::General;

  std::set<EdgeIndex> eimg(m.edge_map().begin(), m.edge_map().end());
  bool edge_injective = static_cast<EdgeIndex>(eimg.size()) == e.edge_count();
  if (!edge_injective) return MorphismClass::VertexInjective;

  for (VertexIndex v = 0; v < e.vertex_count(); ++v) {
    VertexIndex w = m.map_vertex(v);
    if (e.flagged(v) && !f.flagged(w)) return MorphismClass::VertexInjective;
    if (e.is_regular(v) && !f.is_regular(w)) return MorphismClass::VertexInjective;
    if (f.is_regular(w)) {
      // Injectivity makes the restricted map injective into out(w); a count
      // match makes it a bijection.
      if (e.out_edges(v).size() != f.out_edges(w).size()) return MorphismClass::VertexInjective;
    }
  }
  return MorphismClass::CK;
}

/// True iff the inclusion sub -> super is a CK-morphism. Throws InputError
/// when sub is not a subgraph of super.
inline bool is_ck_subgraph(const Graph& sub, const Graph& super) {
  return classify_morphism(GraphMorphism::inclusion(sub, super)) == MorphismClass::CK;
}

/// Smallest CK-subgraph of g containing the given vertices and edges, built
/// by alternating incidence closure with full out-edge adjunction at
/// unflagged non-sink vertices. At flagged vertices all listed edges are
/// adjoined (the listed edges stand proxy for a countably infinite
/// adjunction), so minimality is only guaranteed on unflagged graphs.
/// Flags are inherited from g.
inline Graph ck_closure(const Graph& g, const std::vector<std::string>& vertex_seed,
                        const std::vector<std::string>& edge_seed) {
  std::vector<bool> v_in(g.vertex_count(), false), e_in(g.edge_count(), false);
  for (const auto& id : vertex_seed) v_in[g.require_vertex(id)] = true;
  for (const auto& id : edge_seed) e_in[g.require_edge(id)] = true;

  bool changed = true;
  while (changed) {
    changed = false;
    for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
      if (!e_in[e]) continue;
      for (VertexIndex v : {g.source(e), g.range(e)}) {
        if (!v_in[v]) { v_in[v] = true; changed = true; }
      }
    }
    for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
      if (!v_in[v]) continue;
      for (EdgeIndex e : g.out_edges(v)) {
        if (!e_in[e]) { e_in[e] = true; changed = true; }
      }
    }
  }

  std::vector<VertexDecl> vs;
  for (VertexIndex v = 0; v < g.vertex_count(); ++v)
    if (v_in[v]) vs.push_back({g.vertex_id(v), g.flagged(v)});
  std::vector<EdgeDecl> es;
  for (EdgeIndex e = 0; e < g.edge_count(); ++e)
    if (e_in[e])
      es.push_back({g.edge_id(e), g.vertex_id(g.source(e)), g.vertex_id(g.range(e))});
  return Graph::build(std::move(vs), std::move(es));
}

}  // namespace lpa

#endif  // LPA_MORPHISM_HPP
