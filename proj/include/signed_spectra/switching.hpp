#pragma once

#include <cstddef>
#include <cstdint>
#include <iterator>
#include <limits>
#include <vector>

#include "signed_spectra/bit_vector.hpp"
#include "signed_spectra/errors.hpp"
#include "signed_spectra/graph.hpp"

namespace signed_spectra {

/// Vertex subset U; switching negates every edge with exactly one end in U.
using SwitchingSet = BitVector;

inline SwitchingSet complement(const SwitchingSet& s) {
  SwitchingSet c(s.size());
  for (std::size_t v = 0; v < s.size(); ++v) c.set(v, !s.test(v));
  return c;
}

inline SignedGraph apply_switch(const SignedGraph& g, const SwitchingSet& s) {
  if (s.size() != g.n()) {
    throw ValidationError("switching set has " + std::to_string(s.size()) + " vertices, graph has " +
                          std::to_string(g.n()));
  }
  BitVector signs = g.signs();
  for (std::size_t t = 0; t < g.m(); ++t) {
    const auto& e = g.base().edge(t);
    if (s.test(e.u) != s.test(e.v)) signs.flip(t);
  }
  return SignedGraph(g.base(), std::move(signs));
}

/// BFS tree from vertex 0; neighbours are scanned in canonical edge order.
struct SpanningTree {
  std::vector<std::size_t> order;        ///< vertices in BFS order, root first
  std::vector<Vertex> parent;            ///< parent[root] = root
  std::vector<std::size_t> parent_edge;  ///< canonical index of the edge to parent
  std::vector<bool> is_tree_edge;        ///< per canonical edge
};

inline SpanningTree bfs_spanning_tree(const SimpleGraph& g) {
  if (!is_connected(g)) throw ValidationError("base graph is disconnected; switching classes need a connected graph");
  const auto adj = incidence_lists(g);
  SpanningTree tree;
  tree.parent.assign(g.n(), 0);
  tree.parent_edge.assign(g.n(), 0);
  tree.is_tree_edge.assign(g.m(), false);
  std::vector<char> seen(g.n(), 0);
  tree.order.push_back(0);
  seen[0] = 1;
  for (std::size_t head = 0; head < tree.order.size(); ++head) {
    const auto u = static_cast<Vertex>(tree.order[head]);
    for (auto [w, t] : adj[u]) {
      if (seen[w]) continue;
      seen[w] = 1;
      tree.parent[w] = u;
      tree.parent_edge[w] = t;
      tree.is_tree_edge[t] = true;
      tree.order.push_back(w);
    }
  }
  return tree;
}

struct CanonicalSigning {
  SignedGraph graph;   ///< every spanning-tree edge positive
  SwitchingSet applied;  ///< the switch that maps the input onto `graph`
};

/// Unique member of the switching class whose BFS-tree edges are all positive.
inline CanonicalSigning canonical_representative(const SignedGraph& g, const SpanningTree& tree) {
  SwitchingSet s(g.n());
  for (std::size_t i = 1; i < tree.order.size(); ++i) {
    const auto v = tree.order[i];
    s.set(v, s.test(tree.parent[v]) != g.is_negative(tree.parent_edge[v]));
  }
  return {apply_switch(g, s), std::move(s)};
}

inline CanonicalSigning canonical_representative(const SignedGraph& g) {
  return canonical_representative(g, bfs_spanning_tree(g.base()));
}

/// One canonical signing per switching class of a connected base graph:
/// tree edges fixed positive, the m - n + 1 non-tree edges free. Class index r
/// sets non-tree edge j negative iff bit j of r is set; since non-tree edges
/// are kept in canonical order, ascending r gives ascending sign bitmasks.
class ClassSpace {
public:
  explicit ClassSpace(SimpleGraph base) : base_(std::move(base)), tree_(bfs_spanning_tree(base_)) {
    for (std::size_t t = 0; t < base_.m(); ++t) {
      if (!tree_.is_tree_edge[t]) free_edges_.push_back(t);
    }
  }

  const SimpleGraph& base() const noexcept { return base_; }
  const SpanningTree& tree() const noexcept { return tree_; }
  /// Canonical indices of the non-tree edges, ascending.
  const std::vector<std::size_t>& free_edges() const noexcept { return free_edges_; }
  /// m - n + 1.
  std::size_t dimension() const noexcept { return free_edges_.size(); }

  /// 2^(m-n+1); throws when that does not fit in 63 bits.
  std::uint64_t count() const {
    if (dimension() > 62) throw ValidationError("switching class space of 2^" + std::to_string(dimension()) +
                                                " classes is too large to enumerate");
    return std::uint64_t{1} << dimension();
  }

  SignedGraph signing(std::uint64_t r) const {
    BitVector signs(base_.m());
    for (std::size_t j = 0; j < free_edges_.size() && j < 64; ++j) {
      if ((r >> j) & 1U) signs.set(free_edges_[j], true);
    }
    return SignedGraph(base_, std::move(signs));
  }

  /// Class index given as a bit vector of length dimension().
  SignedGraph signing(const BitVector& r) const {
    BitVector signs(base_.m());
    for (std::size_t j = 0; j < free_edges_.size(); ++j) {
      if (r.test(j)) signs.set(free_edges_[j], true);
    }
    return SignedGraph(base_, std::move(signs));
  }

  CanonicalSigning canonicalize(const SignedGraph& g) const { return canonical_representative(g, tree_); }

  /// Forward range over class indices [begin, end), yielding canonical signings.
  class Range {
  public:
    class iterator {
    public:
      using value_type = SignedGraph;
      using difference_type = std::ptrdiff_t;
      using iterator_category = std::input_iterator_tag;

      iterator() = default;
      iterator(const ClassSpace* space, std::uint64_t r) : space_(space), r_(r) {}

      SignedGraph operator*() const { return space_->signing(r_); }
      std::uint64_t index() const noexcept { return r_; }
      iterator& operator++() {
        ++r_;
        return *this;
      }
      iterator operator++(int) {
        auto copy = *this;
        ++r_;
        return copy;
      }
      friend bool operator==(const iterator& a, const iterator& b) { return a.r_ == b.r_; }

    private:
      const ClassSpace* space_ = nullptr;
      std::uint64_t r_ = 0;
    };

    Range(const ClassSpace* space, std::uint64_t begin, std::uint64_t end) : space_(space), begin_(begin), end_(end) {}

    iterator begin() const { return {space_, begin_}; }
    iterator end() const { return {space_, end_}; }
    std::uint64_t size() const noexcept { return end_ - begin_; }

  private:
    const ClassSpace* space_;
    std::uint64_t begin_;
    std::uint64_t end_;
  };

  Range range(std::uint64_t begin, std::uint64_t end) const {
    if (begin > end || end > count()) throw std::out_of_range("ClassSpace::range: bad bounds");
    return {this, begin, end};
  }

  Range all() const { return {this, 0, count()}; }

private:
  SimpleGraph base_;
  SpanningTree tree_;
  std::vector<std::size_t> free_edges_;
};

/// Every switching class of `base`, one canonical signing each, ascending bitmask order.
/// The returned space owns the base graph; iterate `space.all()` or split with `space.range()`.
inline ClassSpace enumerate_classes(const SimpleGraph& base) { return ClassSpace(base); }

}  // namespace signed_spectra
