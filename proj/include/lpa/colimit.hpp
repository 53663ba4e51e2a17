#ifndef LPA_COLIMIT_HPP
#define LPA_COLIMIT_HPP

#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "lpa/errors.hpp"
#include "lpa/graph.hpp"
#include "lpa/morphism.hpp"

namespace lpa {

namespace detail {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a); b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }
 private:
  std::vector<std::size_t> parent_;
};

}  // namespace detail

/// A finite diagram of graphs: named nodes plus one morphism per related
/// pair of the underlying partial order. Nodes are kept sorted by name.
class GraphDiagram {
 public:
  void add_graph(const std::string& name, Graph g) {
    if (name_to_index_.count(name)) throw InputError("duplicate graph name '" + name + "'");
    name_to_index_[name] = names_.size();
    names_.push_back(name);
    graphs_.push_back(std::move(g));
  }

  void add_morphism(const std::string& from, const std::string& to, GraphMorphism m) {
    std::size_t i = require(from), j = require(to);
    if (!(m.source_graph() == graphs_[i]) || !(m.target_graph() == graphs_[j]))
      throw InputError("morphism '" + from + "' -> '" + to +
                       "' does not match the named graphs");
    auto key = std::make_pair(i, j);
    if (arrows_.count(key))
      throw InputError("more than one morphism for pair '" + from + "' -> '" + to + "'");
    arrows_.emplace(key, std::move(m));
  }

  std::size_t size() const { return graphs_.size(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const Graph& graph(std::size_t i) const { return graphs_.at(i); }
  std::size_t require(const std::string& name) const {
    auto it = name_to_index_.find(name);
    if (it == name_to_index_.end()) throw InputError("unknown graph name '" + name + "'");
    return it->second;
  }
  const std::map<std::pair<std::size_t, std::size_t>, GraphMorphism>& arrows() const {
    return arrows_;
  }

  /// Checks partial-order shape and functoriality: no non-identity arrow in
  /// both directions, explicit identities must be identities, and whenever
  /// i->j and j->k are present the composite i->k must be present and equal.
  void validate() const {
    for (const auto& [key, m] : arrows_) {
      auto [i, j] = key;
      if (i == j && !same_maps(m, GraphMorphism::identity(graphs_[i])))
        throw InputError("incoherent diagram: self-arrow on '" + names_[i] +
                         "' is not the identity");
      if (i != j && arrows_.count({j, i}))
        throw InputError("incoherent diagram: arrows both ways between '" + names_[i] +
                         "' and '" + names_[j] + "'");
    }
    for (const auto& [key_ij, m_ij] : arrows_) {
      auto [i, j] = key_ij;
      for (const auto& [key_jk, m_jk] : arrows_) {
        auto [j2, k] = key_jk;
        if (j2 != j || i == j || j == k) continue;
        auto it = arrows_.find({i, k});
        if (it == arrows_.end())
          throw InputError("incoherent diagram: missing composite '" + names_[i] + "' -> '" +
                           names_[k] + "'");
        if (!same_maps(it->second, compose(m_jk, m_ij)))
          throw InputError("incoherent diagram: composite '" + names_[i] + "' -> '" +
                           names_[k] + "' does not match");
      }
    }
  }

  bool related(std::size_t i, std::size_t j) const {
    return i == j || arrows_.count({i, j}) > 0;
  }

  /// Upward directed: every pair has an upper bound under the arrow relation.
  bool is_directed() const {
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t j = 0; j < size(); ++j) {
        bool ok = false;
        for (std::size_t k = 0; k < size() && !ok; ++k)
          ok = related(i, k) && related(j, k);
        if (!ok) return false;
      }
    return true;
  }

 private:
  std::vector<std::string> names_;
  std::vector<Graph> graphs_;
  std::map<std::string, std::size_t> name_to_index_;
  std::map<std::pair<std::size_t, std::size_t>, GraphMorphism> arrows_;
};

struct ColimitResult {
  Graph graph;
  std::vector<GraphMorphism> limit_maps;  // one per diagram node, in node order
};

/// Colimit by quotienting the disjoint unions of vertices and edges by the
/// equivalence generated by the diagram maps, with induced source/range.
/// Element names are '<node>:<id>' for the lexicographically least member
/// (node, id) of each class. A class is flagged when any member is flagged.
inline ColimitResult colimit(const GraphDiagram& d) {
  d.validate();
  const std::size_t n = d.size();
  if (n == 0) return {Graph::build({}, {}), {}};

  std::vector<std::size_t> v_off(n + 1, 0), e_off(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    v_off[i + 1] = v_off[i] + static_cast<std::size_t>(d.graph(i).vertex_count());
    e_off[i + 1] = e_off[i] + static_cast<std::size_t>(d.graph(i).edge_count());
  }

  detail::UnionFind vuf(v_off[n]), euf(e_off[n]);
  for (const auto& [key, m] : d.arrows()) {
    auto [i, j] = key;
    for (VertexIndex v = 0; v < d.graph(i).vertex_count(); ++v)
      vuf.unite(v_off[i] + v, v_off[j] + m.map_vertex(v));
    for (EdgeIndex e = 0; e < d.graph(i).edge_count(); ++e)
      euf.unite(e_off[i] + e, e_off[j] + m.map_edge(e));
  }

  // Name each class after its least (node, id) member. Nodes are already in
  // name order and vertex/edge indices in id order, but id order across
  // different graphs is not the global index order, so do a proper scan.
  auto class_names = [&](detail::UnionFind& uf, std::size_t total, const std::vector<std::size_t>& off,
                         auto id_of) {
    std::map<std::size_t, std::pair<std::size_t, std::string>> best;  // root -> (node, id)
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t count = off[i + 1] - off[i];
      for (std::size_t x = 0; x < count; ++x) {
        std::size_t root = uf.find(off[i] + x);
        auto cand = std::make_pair(i, id_of(i, x));
        auto it = best.find(root);
        if (it == best.end() ||
            std::make_pair(d.name(cand.first), cand.second) <
                std::make_pair(d.name(it->second.first), it->second.second))
          best[root] = cand;
      }
    }
    std::vector<std::string> names(total);
    for (std::size_t x = 0; x < total; ++x) {
      const auto& [node, id] = best.at(uf.find(x));
      names[x] = d.name(node) + ":" + id;
    }
    return names;
  };

  std::vector<std::string> vname = class_names(
      vuf, v_off[n], v_off, [&](std::size_t i, std::size_t v) {
        return d.graph(i).vertex_id(static_cast<VertexIndex>(v));
      });
  std::vector<std::string> ename = class_names(
      euf, e_off[n], e_off, [&](std::size_t i, std::size_t e) {
        return d.graph(i).edge_id(static_cast<EdgeIndex>(e));
      });

  std::map<std::string, bool> v_flag;
  for (std::size_t i = 0; i < n; ++i)
    for (VertexIndex v = 0; v < d.graph(i).vertex_count(); ++v) {
      auto& f = v_flag[vname[v_off[i] + v]];
      f = f || d.graph(i).flagged(v);
    }

  std::map<std::string, EdgeDecl> e_decl;
  for (std::size_t i = 0; i < n; ++i)
    for (EdgeIndex e = 0; e < d.graph(i).edge_count(); ++e) {
      const Graph& g = d.graph(i);
      // Induced incidence; well-defined because every generating relation
      // respects source and range.
      e_decl[ename[e_off[i] + e]] = {ename[e_off[i] + e], vname[v_off[i] + g.source(e)],
                                     vname[v_off[i] + g.range(e)]};
    }

  std::vector<VertexDecl> vs;
  for (const auto& [id, flag] : v_flag) vs.push_back({id, flag});
  std::vector<EdgeDecl> es;
  for (const auto& [id, decl] : e_decl) es.push_back(decl);
  Graph limit = Graph::build(std::move(vs), std::move(es));

  std::vector<GraphMorphism> maps;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<VertexIndex> vmap(d.graph(i).vertex_count());
    std::vector<EdgeIndex> emap(d.graph(i).edge_count());
    for (VertexIndex v = 0; v < d.graph(i).vertex_count(); ++v)
      vmap[v] = limit.require_vertex(vname[v_off[i] + v]);
    for (EdgeIndex e = 0; e < d.graph(i).edge_count(); ++e)
      emap[e] = limit.require_edge(ename[e_off[i] + e]);
    maps.emplace_back(d.graph(i), limit, std::move(vmap), std::move(emap));
  }
  return {std::move(limit), std::move(maps)};
}

}  // namespace lpa

#endif  // LPA_COLIMIT_HPP
