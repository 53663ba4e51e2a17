#ifndef LPA_ALGEBRA_HPP
#define LPA_ALGEBRA_HPP

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "lpa/errors.hpp"
#include "lpa/graph.hpp"
#include "lpa/morphism.hpp"

namespace lpa {

/// A basis monomial p.q* : two real paths with a common range. Its degree
/// under the canonical Z-grading is length(p) - length(q).
struct Monomial {
  Path p;
  Path q;

  int degree() const { return static_cast<int>(p.length()) - static_cast<int>(q.length()); }

  std::strong_ordering operator<=>(const Monomial& other) const {
    auto total = p.length() + q.length();
    auto other_total = other.p.length() + other.q.length();
    if (auto c = total <=> other_total; c != 0) return c;
    if (auto c = p <=> other.p; c != 0) return c;
    return q <=> other.q;
  }
  bool operator==(const Monomial& other) const { return p == other.p && q == other.q; }
};

enum class GenKind { Vertex, Edge, Ghost };

/// One generator of the path algebra of the double graph: a vertex, a real
/// edge, or a ghost edge.
struct GenSymbol {
  GenKind kind;
  std::int32_t index;  // vertex index or edge index
};

using TermWord = std::vector<GenSymbol>;

/// A finitely supported scalar combination of basis monomials, kept in
/// reduced form: the zero element is the empty map and no stored coefficient
/// is zero.
template <class Field>
struct AlgebraElement {
  using Value = typename Field::Value;
  std::map<Monomial, Value> terms;

  bool is_zero() const { return terms.empty(); }
  std::size_t size() const { return terms.size(); }
  bool operator==(const AlgebraElement& other) const { return terms == other.terms; }
};

/// Normal-form arithmetic in the Leavitt path algebra of a graph over an
/// exact field. An engine instance fixes the graph, the field, and a special
/// out-edge at each regular vertex; all operations are pure.
///
/// The normal form: a monomial p.q* is reduced unless p and q both have
/// positive length and end in the same edge g with g the special edge of its
/// (regular) source vertex, in which case
///   p'.g (q'.g)*  ->  p'.q'*  -  sum over f != g emitted by s(g) of (p'f)(q'f)*
/// is applied until no reducible monomial remains. Each application either
/// shortens the monomial or produces monomials whose final edges are not
/// special, so reduction terminates.
template <class Field>
class LeavittEngine {
 public:
  using Value = typename Field::Value;
  using Element = AlgebraElement<Field>;

  LeavittEngine(Graph graph, Field field)
      : graph_(std::move(graph)), field_(std::move(field)) {
    special_.assign(graph_.vertex_count(), -1);
    for (VertexIndex v = 0; v < graph_.vertex_count(); ++v)
      if (graph_.is_regular(v)) special_[v] = graph_.out_edges(v).front();
  }

  /// As above but with an explicit special-edge choice for some or all
  /// regular vertices (vertex id -> out-edge id); unmentioned regular
  /// vertices keep the lexicographically least out-edge.
  LeavittEngine(Graph graph, Field field, const std::map<std::string, std::string>& special)
      : LeavittEngine(std::move(graph), std::move(field)) {
    for (const auto& [vid, eid] : special) {
      VertexIndex v = graph_.require_vertex(vid);
      EdgeIndex e = graph_.require_edge(eid);
      if (!graph_.is_regular(v))
        throw InputError("special edge assigned to non-regular vertex '" + vid + "'");
      if (graph_.source(e) != v)
        throw InputError("special edge '" + eid + "' is not emitted by '" + vid + "'");
      special_[v] = e;
    }
  }

  const Graph& graph() const { return graph_; }
  const Field& field() const { return field_; }
  EdgeIndex special_edge(VertexIndex v) const { return special_.at(v); }

  // ---- element constructors ----

  Element zero() const { return {}; }

  Element vertex_element(VertexIndex v) const {
    Element r;
    r.terms[{Path::trivial(v), Path::trivial(v)}] = field_.one();
    return r;
  }

  Element edge_element(EdgeIndex e) const {
    Element r;
    r.terms[{Path{graph_.source(e), {e}}, Path::trivial(graph_.range(e))}] = field_.one();
    return r;
  }

  Element ghost_element(EdgeIndex e) const {
    Element r;
    r.terms[{Path::trivial(graph_.range(e)), Path{graph_.source(e), {e}}}] = field_.one();
    return r;
  }

  Element symbol_element(GenSymbol s) const {
    switch (s.kind) {
      case GenKind::Vertex: return vertex_element(s.index);
      case GenKind::Edge: return edge_element(s.index);
      case GenKind::Ghost: return ghost_element(s.index);
    }
    throw InputError("bad generator symbol");
  }

  /// p.q* as an element (reduced if necessary). Throws on invalid paths or
  /// mismatched ranges.
  Element monomial_element(const Path& p, const Path& q) const {
    if (!p.valid(graph_) || !q.valid(graph_)) throw InputError("invalid path");
    if (p.range(graph_) != q.range(graph_)) throw InputError("monomial paths must share a range");
    Element r;
    add_collapsed(r.terms, p, q, field_.one());
    return r;
  }

  // ---- linear structure ----

  Element add(const Element& a, const Element& b) const {
    Element r = a;
    for (const auto& [m, c] : b.terms) add_term(r.terms, m, c);
    return r;
  }

  Element negate(const Element& a) const {
    Element r = a;
    for (auto& [m, c] : r.terms) c = field_.neg(c);
    return r;
  }

  Element sub(const Element& a, const Element& b) const { return add(a, negate(b)); }

  Element scale(const Value& c, const Element& a) const {
    Element r;
    if (field_.is_zero(c)) return r;
    for (const auto& [m, v] : a.terms) r.terms[m] = field_.mul(c, v);
    return r;
  }

  // ---- ring structure ----

  /// Bilinear product. On monomials, the ghost block q1* absorbs a matching
  /// prefix of p2 (or vice versa) and the result is re-reduced.
  Element mul(const Element& a, const Element& b) const {
    Element r;
    for (const auto& [m1, c1] : a.terms)
      for (const auto& [m2, c2] : b.terms) {
        if (m1.q.source() != m2.p.source()) continue;
        const auto& q1 = m1.q.edges;
        const auto& p2 = m2.p.edges;
        if (q1.size() <= p2.size()) {
          if (!std::equal(q1.begin(), q1.end(), p2.begin())) continue;
          Path left = m1.p;  // p1 . t
          left.edges.insert(left.edges.end(), p2.begin() + q1.size(), p2.end());
          add_collapsed(r.terms, left, m2.q, field_.mul(c1, c2));
        } else {
          if (!std::equal(p2.begin(), p2.end(), q1.begin())) continue;
          Path right = m2.q;  // q2 . u
          right.edges.insert(right.edges.end(), q1.begin() + p2.size(), q1.end());
          add_collapsed(r.terms, m1.p, right, field_.mul(c1, c2));
        }
      }
    return r;
  }

  /// The star anti-automorphism: p.q* -> q.p*, extended linearly.
  Element star(const Element& a) const {
    Element r;
    for (const auto& [m, c] : a.terms) add_collapsed(r.terms, m.q, m.p, c);
    return r;
  }

  /// Image of a scalar-weighted sum of generator words under the quotient
  /// map onto the Leavitt path algebra.
  Element reduce(const std::vector<std::pair<Value, TermWord>>& words) const {
    Element r;
    for (const auto& [c, word] : words) {
      if (word.empty()) throw InputError("empty generator word");
      Element w = symbol_element(word.front());
      for (std::size_t i = 1; i < word.size(); ++i)
        w = mul(w, symbol_element(word[i]));
      r = add(r, scale(c, w));
    }
    return r;
  }

  /// Splits into homogeneous parts by monomial degree. Empty for zero.
  std::map<int, Element> degree_split(const Element& a) const {
    std::map<int, Element> parts;
    for (const auto& [m, c] : a.terms) parts[m.degree()].terms[m] = c;
    return parts;
  }

  /// The idempotent q = sum of the distinct vertices appearing as sources in
  /// a's support; satisfies q.a = a.q = a.
  Element local_unit(const Element& a) const {
    std::set<VertexIndex> vs;
    for (const auto& [m, c] : a.terms) {
      vs.insert(m.p.source());
      vs.insert(m.q.source());
    }
    Element r;
    for (VertexIndex v : vs) r.terms[{Path::trivial(v), Path::trivial(v)}] = field_.one();
    return r;
  }

  /// All reduced basis monomials with both path lengths <= max_path_length,
  /// in canonical order.
  std::vector<Monomial> basis_monomials(std::size_t max_path_length) const {
    // paths grouped by range vertex
    std::vector<std::vector<Path>> by_range(graph_.vertex_count());
    std::vector<Path> frontier;
    for (VertexIndex v = 0; v < graph_.vertex_count(); ++v) frontier.push_back(Path::trivial(v));
    for (const Path& p : frontier) by_range[p.range(graph_)].push_back(p);
    for (std::size_t len = 1; len <= max_path_length; ++len) {
      std::vector<Path> next;
      for (const Path& p : frontier)
        for (EdgeIndex e : graph_.out_edges(p.range(graph_))) {
          Path ext = p.then(graph_, e);
          by_range[ext.range(graph_)].push_back(ext);
          next.push_back(std::move(ext));
        }
      frontier = std::move(next);
      if (frontier.empty()) break;
    }

    std::vector<Monomial> out;
    for (VertexIndex v = 0; v < graph_.vertex_count(); ++v)
      for (const Path& p : by_range[v])
        for (const Path& q : by_range[v]) {
          if (!in_basis_form(p, q)) continue;
          out.push_back({p, q});
        }
    std::sort(out.begin(), out.end());
    return out;
  }

  bool in_basis_form(const Path& p, const Path& q) const {
    if (p.edges.empty() || q.edges.empty()) return true;
    EdgeIndex last = p.edges.back();
    if (q.edges.back() != last) return true;
    return special_[graph_.source(last)] != last;
  }

  /// Accumulates c * p.q* into acc, applying the collapse rule to reach
  /// normal form.
  void add_collapsed(std::map<Monomial, Value>& acc, Path p, Path q, Value c) const {
    if (field_.is_zero(c)) return;
    for (;;) {
      if (p.edges.empty() || q.edges.empty()) break;
      EdgeIndex last = p.edges.back();
      if (q.edges.back() != last) break;
      VertexIndex v = graph_.source(last);
      if (special_[v] != last) break;
      p.edges.pop_back();
      q.edges.pop_back();
      for (EdgeIndex f : graph_.out_edges(v)) {
        if (f == last) continue;
        Path pf = p;
        pf.edges.push_back(f);
        Path qf = q;
        qf.edges.push_back(f);
        // f is not special at v, so this monomial is already reduced.
        add_term(acc, {std::move(pf), std::move(qf)}, field_.neg(c));
      }
    }
    add_term(acc, {std::move(p), std::move(q)}, c);
  }

  void add_term(std::map<Monomial, Value>& acc, Monomial m, const Value& c) const {
    if (field_.is_zero(c)) return;
    auto [it, inserted] = acc.emplace(std::move(m), c);
    if (!inserted) {
      it->second = field_.add(it->second, c);
      if (field_.is_zero(it->second)) acc.erase(it);
    }
  }

 private:
  Graph graph_;
  Field field_;
  std::vector<EdgeIndex> special_;
};

/// The algebra homomorphism induced by a CK-morphism: renames every monomial
/// along the morphism and re-reduces in the target's normal form. Injective
/// whenever the morphism is CK.
template <class Field>
AlgebraElement<Field> induced_hom(const GraphMorphism& m, const LeavittEngine<Field>& src,
                                  const LeavittEngine<Field>& dst,
                                  const AlgebraElement<Field>& a) {
  if (!(m.source_graph() == src.graph()) || !(m.target_graph() == dst.graph()))
    throw InputError("morphism endpoints do not match the engines");
  if (!(src.field() == dst.field())) throw InputError("field mismatch");
  if (classify_morphism(m) != MorphismClass::CK)
    throw InputError("induced homomorphism requires a CK-morphism");
  AlgebraElement<Field> r;
  for (const auto& [mono, c] : a.terms)
    dst.add_collapsed(r.terms, m.map_path(mono.p), m.map_path(mono.q), c);
  return r;
}

}  // namespace lpa

#endif  // LPA_ALGEBRA_HPP
