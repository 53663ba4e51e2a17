#ifndef LPA_MONOID_HPP
#define LPA_MONOID_HPP

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "lpa/errors.hpp"
#include "lpa/graph.hpp"

namespace lpa {

/// An element of the graph monoid: one multiplicity per vertex, in the
/// graph's vertex order. The zero vector is the identity.
using MonoidElement = std::vector<std::uint32_t>;

inline std::uint32_t coordinate_sum(const MonoidElement& a) {
  return std::accumulate(a.begin(), a.end(), std::uint32_t{0});
}

inline MonoidElement monoid_add(const MonoidElement& a, const MonoidElement& b) {
  MonoidElement r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline MonoidElement monoid_scale(std::uint32_t n, const MonoidElement& a) {
  MonoidElement r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = n * a[i];
  return r;
}

inline bool monoid_geq(const MonoidElement& a, const MonoidElement& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] < b[i]) return false;
  return true;
}

/// Formats as a sum of vertex generators, e.g. "v + 2*w"; "0" for the
/// identity.
inline std::string monoid_to_string(const Graph& g, const MonoidElement& a) {
  std::string out;
  for (std::size_t v = 0; v < a.size(); ++v) {
    if (a[v] == 0) continue;
    if (!out.empty()) out += " + ";
    if (a[v] > 1) out += std::to_string(a[v]) + "*";
    out += g.vertex_id(static_cast<VertexIndex>(v));
  }
  return out.empty() ? "0" : out;
}

/// The defining relations: v = sum of ranges of the out-edges at each
/// unflagged regular vertex.
struct MonoidRelation {
  VertexIndex vertex;
  MonoidElement rhs;
};

inline std::vector<MonoidRelation> monoid_relations(const Graph& g) {
  std::vector<MonoidRelation> rels;
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    if (!g.is_regular(v)) continue;
    MonoidElement rhs(g.vertex_count(), 0);
    for (EdgeIndex e : g.out_edges(v)) ++rhs[g.range(e)];
    rels.push_back({v, std::move(rhs)});
  }
  return rels;
}

/// One application of a relation: forward replaces a generator by its
/// relation right-hand side, backward folds the right-hand side back in.
struct CongruenceStep {
  VertexIndex vertex;
  bool forward;
};

/// Equal carries a replayable chain of relation applications from a to b;
/// Distinct is relative to the bound only.
struct CongruenceVerdict {
  bool equal = false;
  std::vector<CongruenceStep> trace;
  std::uint32_t bound = 0;
};

namespace detail {

inline std::optional<MonoidElement> apply_step(const Graph& g,
                                               const std::vector<MonoidRelation>& rels,
                                               const MonoidElement& s, CongruenceStep step,
                                               std::uint32_t bound) {
  const MonoidRelation* rel = nullptr;
  for (const auto& r : rels)
    if (r.vertex == step.vertex) { rel = &r; break; }
  if (!rel) return std::nullopt;
  (void)g;
  MonoidElement t = s;
  if (step.forward) {
    if (t[rel->vertex] == 0) return std::nullopt;
    --t[rel->vertex];
    for (std::size_t i = 0; i < t.size(); ++i) t[i] += rel->rhs[i];
  } else {
    if (!monoid_geq(t, rel->rhs)) return std::nullopt;
    for (std::size_t i = 0; i < t.size(); ++i) t[i] -= rel->rhs[i];
    ++t[rel->vertex];
  }
  if (coordinate_sum(t) > bound) return std::nullopt;
  return t;
}

}  // namespace detail

/// Breadth-first word problem over the congruence generated by the vertex
/// relations, pruning states whose coordinate sum exceeds the bound.
inline CongruenceVerdict congruent(const Graph& g, const MonoidElement& a,
                                   const MonoidElement& b, std::uint32_t bound) {
  if (a.size() != static_cast<std::size_t>(g.vertex_count()) || a.size() != b.size())
    throw InputError("monoid element size does not match the graph");
  if (coordinate_sum(a) > bound || coordinate_sum(b) > bound)
    throw GuardError("congruence bound " + std::to_string(bound) +
                     " is smaller than the inputs");
  CongruenceVerdict verdict;
  verdict.bound = bound;
  auto rels = monoid_relations(g);

  std::map<MonoidElement, std::pair<MonoidElement, CongruenceStep>> parent;
  std::map<MonoidElement, bool> seen;
  std::deque<MonoidElement> queue;
  seen[a] = true;
  queue.push_back(a);
  bool found = (a == b);
  while (!queue.empty() && !found) {
    MonoidElement s = queue.front();
    queue.pop_front();
    for (const auto& rel : rels) {
      for (bool forward : {true, false}) {
        CongruenceStep step{rel.vertex, forward};
        auto t = detail::apply_step(g, rels, s, step, bound);
        if (!t || seen.count(*t)) continue;
        seen[*t] = true;
        parent.emplace(*t, std::make_pair(s, step));
        if (*t == b) { found = true; break; }
        queue.push_back(*t);
      }
      if (found) break;
    }
  }
  if (!found) return verdict;
  verdict.equal = true;
  MonoidElement cur = b;
  while (!(cur == a)) {
    const auto& [prev, step] = parent.at(cur);
    verdict.trace.push_back(step);
    cur = prev;
  }
  std::reverse(verdict.trace.begin(), verdict.trace.end());
  return verdict;
}

/// Replays a trace from a; nullopt if some step does not apply.
inline std::optional<MonoidElement> replay_trace(const Graph& g, const MonoidElement& a,
                                                 const std::vector<CongruenceStep>& trace,
                                                 std::uint32_t bound) {
  auto rels = monoid_relations(g);
  MonoidElement cur = a;
  for (const auto& step : trace) {
    auto next = detail::apply_step(g, rels, cur, step, bound);
    if (!next) return std::nullopt;
    cur = *next;
  }
  return cur;
}

/// The algebraic preorder, bound-relative: a <= b iff some element congruent
/// to b (within the bound) dominates a coordinatewise.
inline bool leq(const Graph& g, const MonoidElement& a, const MonoidElement& b,
                std::uint32_t bound) {
  if (coordinate_sum(a) > bound || coordinate_sum(b) > bound)
    throw GuardError("leq bound " + std::to_string(bound) + " is smaller than the inputs");
  auto rels = monoid_relations(g);
  std::map<MonoidElement, bool> seen;
  std::deque<MonoidElement> queue;
  seen[b] = true;
  queue.push_back(b);
  while (!queue.empty()) {
    MonoidElement s = queue.front();
    queue.pop_front();
    if (monoid_geq(s, a)) return true;
    for (const auto& rel : rels)
      for (bool forward : {true, false}) {
        auto t = detail::apply_step(g, rels, s, {rel.vertex, forward}, bound);
        if (!t || seen.count(*t)) continue;
        seen[*t] = true;
        queue.push_back(*t);
      }
  }
  return false;
}

namespace detail {

/// All monoid elements of coordinate sum <= ball, with the congruence
/// restricted to that ball as a union-find partition. Enumeration is graded
/// lexicographic, so the least member index of a class is its canonical
/// representative.
class MonoidUniverse {
 public:
  MonoidUniverse(const Graph& g, std::uint32_t ball, std::size_t state_cap = 3000000)
      : ball_(ball) {
    const std::size_t n = static_cast<std::size_t>(g.vertex_count());
    MonoidElement cur(n, 0);
    for (std::uint32_t total = 0; total <= ball; ++total) enumerate(cur, 0, total, state_cap);
    parent_.resize(states_.size());
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    auto rels = monoid_relations(g);
    for (std::size_t i = 0; i < states_.size(); ++i)
      for (const auto& rel : rels) {
        if (states_[i][rel.vertex] == 0) continue;
        MonoidElement t = states_[i];
        --t[rel.vertex];
        for (std::size_t k = 0; k < t.size(); ++k) t[k] += rel.rhs[k];
        if (coordinate_sum(t) > ball) continue;
        unite(i, index_of_.at(t));
      }
  }

  std::uint32_t ball() const { return ball_; }
  std::size_t state_count() const { return states_.size(); }
  const MonoidElement& state(std::size_t i) const { return states_[i]; }

  std::size_t index_of(const MonoidElement& v) const {
    auto it = index_of_.find(v);
    if (it == index_of_.end()) throw GuardError("monoid element outside the search ball");
    return it->second;
  }

  std::size_t cls(const MonoidElement& v) { return find(index_of(v)); }
  std::size_t cls_of_index(std::size_t i) { return find(i); }

  /// Members of a class with coordinate sum <= max_sum, ascending index.
  std::vector<std::size_t> members(std::size_t cls_id, std::uint32_t max_sum) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < states_.size(); ++i)
      if (find(i) == cls_id && coordinate_sum(states_[i]) <= max_sum) out.push_back(i);
    return out;
  }

 private:
  void enumerate(MonoidElement& cur, std::size_t pos, std::uint32_t remaining,
                 std::size_t state_cap) {
    if (cur.empty()) {
      if (remaining == 0) record(cur, state_cap);
      return;
    }
    if (pos + 1 == cur.size()) {
      cur[pos] = remaining;
      record(cur, state_cap);
      cur[pos] = 0;
      return;
    }
    for (std::uint32_t c = 0; c <= remaining; ++c) {
      cur[pos] = c;
      enumerate(cur, pos + 1, remaining - c, state_cap);
    }
    cur[pos] = 0;
  }

  void record(const MonoidElement& v, std::size_t state_cap) {
    if (states_.size() >= state_cap)
      throw GuardError("monoid search space exceeds " + std::to_string(state_cap) + " states");
    index_of_[v] = states_.size();
    states_.push_back(v);
  }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a); b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

  std::uint32_t ball_;
  std::vector<MonoidElement> states_;
  std::map<MonoidElement, std::size_t> index_of_;
  std::vector<std::size_t> parent_;
};

}  // namespace detail

struct RefinementFailure {
  MonoidElement x1, x2, y1, y2;
};
struct RefinementReport {
  bool passed = true;
  std::uint32_t bound = 0;
  std::vector<RefinementFailure> failures;
};

struct SeparativityFailure {
  MonoidElement x, y;
};
struct SeparativityReport {
  bool passed = true;
  std::uint32_t bound = 0;
  std::vector<SeparativityFailure> failures;
};

struct UnperforationFailure {
  std::uint32_t n;
  MonoidElement x, y;
};
struct UnperforationReport {
  bool passed = true;
  std::uint32_t bound = 0;
  std::uint32_t n_max = 0;
  std::vector<UnperforationFailure> failures;
};

/// Riesz refinement, exhaustively over class representatives of elements of
/// coordinate sum <= bound: whenever x1+x2 = y1+y2 in the monoid, a 2x2
/// matrix z with the right row and column sums is searched for (each z entry
/// of coordinate sum <= bound, congruences decided within a ball of
/// 2*bound). A reported failure is relative to those internal bounds.
inline RefinementReport check_refinement(const Graph& g, std::uint32_t bound) {
  RefinementReport report;
  report.bound = bound;
  detail::MonoidUniverse u(g, 2 * bound);

  // classes with a representative of sum <= bound, canonical reps
  std::vector<std::size_t> class_ids;
  std::map<std::size_t, MonoidElement> rep;
  for (std::size_t i = 0; i < u.state_count(); ++i) {
    if (coordinate_sum(u.state(i)) > bound) continue;
    std::size_t c = u.cls_of_index(i);
    if (!rep.count(c)) {
      rep[c] = u.state(i);
      class_ids.push_back(c);
    }
  }

  auto sum_class = [&](std::size_t c1, std::size_t c2) {
    return u.cls(monoid_add(rep.at(c1), rep.at(c2)));
  };

  // splits of s into ordered pairs (z1, z2) with z1 of sum <= bound on each side
  auto for_each_split = [&](const MonoidElement& s, auto&& fn) {
    MonoidElement z1(s.size(), 0);
    for (;;) {
      if (coordinate_sum(z1) <= bound) {
        MonoidElement z2(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) z2[i] = s[i] - z1[i];
        if (coordinate_sum(z2) <= bound && fn(z1, z2)) return true;
      }
      std::size_t i = 0;
      while (i < z1.size() && z1[i] == s[i]) { z1[i] = 0; ++i; }
      if (i == z1.size()) return false;
      ++z1[i];
    }
  };

  auto solve = [&](std::size_t cx1, std::size_t cx2, std::size_t cy1, std::size_t cy2) {
    const MonoidElement &x1 = rep.at(cx1), &x2 = rep.at(cx2);
    const MonoidElement &y1 = rep.at(cy1), &y2 = rep.at(cy2);
    // direct matches
    if (cx1 == cy1 && cx2 == cy2) return true;  // z = (x1 0 / 0 x2)
    if (cx1 == cy2 && cx2 == cy1) return true;  // z = (0 x1 / x2 0)
    // exact vector identity: coordinatewise min split
    if (monoid_add(x1, x2) == monoid_add(y1, y2)) {
      MonoidElement z11(x1.size());
      for (std::size_t i = 0; i < x1.size(); ++i) z11[i] = std::min(x1[i], y1[i]);
      // rows/columns then sum exactly right; nothing further to check
      return true;
    }
    // full bounded search over members of the x-classes and their splits
    std::uint32_t ball = u.ball();
    for (std::size_t s1_idx : u.members(cx1, ball)) {
      const MonoidElement& s1 = u.state(s1_idx);
      bool done = for_each_split(s1, [&](const MonoidElement& z11, const MonoidElement& z12) {
        for (std::size_t s2_idx : u.members(cx2, ball)) {
          const MonoidElement& s2 = u.state(s2_idx);
          bool hit = for_each_split(s2, [&](const MonoidElement& z21, const MonoidElement& z22) {
            MonoidElement c1 = monoid_add(z11, z21), c2 = monoid_add(z12, z22);
            if (coordinate_sum(c1) > ball || coordinate_sum(c2) > ball) return false;
            return u.cls(c1) == cy1 && u.cls(c2) == cy2;
          });
          if (hit) return true;
        }
        return false;
      });
      if (done) return true;
    }
    return false;
  };

  std::map<std::array<std::size_t, 4>, bool> memo;
  for (std::size_t cx1 : class_ids)
    for (std::size_t cx2 : class_ids) {
      if (cx2 < cx1) continue;
      std::size_t sx = sum_class(cx1, cx2);
      for (std::size_t cy1 : class_ids)
        for (std::size_t cy2 : class_ids) {
          if (cy2 < cy1) continue;
          if (sum_class(cy1, cy2) != sx) continue;
          std::array<std::size_t, 4> key{cx1, cx2, cy1, cy2};
          std::array<std::size_t, 4> flipped{cy1, cy2, cx1, cx2};
          if (flipped < key) key = flipped;  // refinement transposes
          auto it = memo.find(key);
          bool ok;
          if (it != memo.end()) {
            ok = it->second;
          } else {
            ok = solve(key[0], key[1], key[2], key[3]);
            memo.emplace(key, ok);
          }
          if (!ok) {
            report.passed = false;
            report.failures.push_back({rep.at(cx1), rep.at(cx2), rep.at(cy1), rep.at(cy2)});
          }
        }
    }
  return report;
}

/// Separativity: x+x = x+y = y+y forces x = y, exhaustively over elements of
/// coordinate sum <= bound (congruences within 2*bound).
inline SeparativityReport check_separative(const Graph& g, std::uint32_t bound) {
  SeparativityReport report;
  report.bound = bound;
  detail::MonoidUniverse u(g, 2 * bound);
  std::vector<std::size_t> small;
  for (std::size_t i = 0; i < u.state_count(); ++i)
    if (coordinate_sum(u.state(i)) <= bound) small.push_back(i);
  for (std::size_t a : small)
    for (std::size_t b : small) {
      if (b <= a) continue;
      const MonoidElement &x = u.state(a), &y = u.state(b);
      if (u.cls_of_index(a) == u.cls_of_index(b)) continue;
      std::size_t xx = u.cls(monoid_add(x, x));
      if (xx != u.cls(monoid_add(x, y)) || xx != u.cls(monoid_add(y, y))) continue;
      report.passed = false;
      report.failures.push_back({x, y});
    }
  return report;
}

/// Unperforation: n*x <= n*y forces x <= y for 2 <= n <= n_max, exhaustively
/// over elements of coordinate sum <= bound. The preorder is decided with an
/// enlarged internal ball of max(2, n_max) * bound.
inline UnperforationReport check_unperforated(const Graph& g, std::uint32_t bound,
                                              std::uint32_t n_max) {
  if (n_max < 2) throw InputError("n_max must be at least 2");
  UnperforationReport report;
  report.bound = bound;
  report.n_max = n_max;
  std::uint32_t ball = std::max<std::uint32_t>(2, n_max) * bound;
  detail::MonoidUniverse u(g, ball);

  std::vector<std::size_t> small;
  for (std::size_t i = 0; i < u.state_count(); ++i)
    if (coordinate_sum(u.state(i)) <= bound) small.push_back(i);

  // bounded preorder: some member of b's class dominates a
  std::map<std::size_t, std::vector<std::size_t>> class_members;
  auto dominated = [&](const MonoidElement& a, const MonoidElement& b) {
    std::size_t c = u.cls(b);
    auto it = class_members.find(c);
    if (it == class_members.end()) it = class_members.emplace(c, u.members(c, ball)).first;
    for (std::size_t s : it->second)
      if (monoid_geq(u.state(s), a)) return true;
    return false;
  };

  for (std::size_t a : small)
    for (std::size_t b : small) {
      const MonoidElement &x = u.state(a), &y = u.state(b);
      for (std::uint32_t n = 2; n <= n_max; ++n) {
        if (!dominated(monoid_scale(n, x), monoid_scale(n, y))) continue;
        if (dominated(x, y)) continue;
        report.passed = false;
        report.failures.push_back({n, x, y});
      }
    }
  return report;
}

}  // namespace lpa

#endif  // LPA_MONOID_HPP
