#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "signed_spectra/bit_vector.hpp"
#include "signed_spectra/errors.hpp"

namespace signed_spectra {

using Vertex = std::uint32_t;

/// Undirected edge with u < v. Lexicographic order is the canonical edge order.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Vertex count plus the canonically ordered edge list. Immutable.
class SimpleGraph {
public:
  SimpleGraph() = default;

  /// Accepts edges in any order and orientation; rejects self-loops,
  /// duplicates and out-of-range endpoints.
  static SimpleGraph from_edges(std::size_t n, std::vector<std::pair<Vertex, Vertex>> pairs) {
    if (n == 0) throw ValidationError("graph must have at least one vertex");
    std::vector<Edge> edges;
    edges.reserve(pairs.size());
    for (auto [a, b] : pairs) {
      if (a >= n || b >= n) {
        throw ValidationError("edge (" + std::to_string(a) + ", " + std::to_string(b) +
                              ") has a vertex index >= n = " + std::to_string(n));
      }
      if (a == b) throw ValidationError("self-loop at vertex " + std::to_string(a));
      edges.push_back(a < b ? Edge{a, b} : Edge{b, a});
    }
    std::sort(edges.begin(), edges.end());
    if (auto dup = std::adjacent_find(edges.begin(), edges.end()); dup != edges.end()) {
      throw ValidationError("duplicate edge (" + std::to_string(dup->u) + ", " +
                            std::to_string(dup->v) + ")");
    }
    SimpleGraph g;
    g.n_ = n;
    g.edges_ = std::move(edges);
    return g;
  }

  std::size_t n() const noexcept { return n_; }
  std::size_t m() const noexcept { return edges_.size(); }
  std::span<const Edge> edges() const noexcept { return edges_; }
  const Edge& edge(std::size_t t) const { return edges_[t]; }

  /// Canonical index of edge {a, b}, if present.
  std::optional<std::size_t> edge_index(Vertex a, Vertex b) const {
    const Edge key = a < b ? Edge{a, b} : Edge{b, a};
    auto it = std::lower_bound(edges_.begin(), edges_.end(), key);
    if (it == edges_.end() || *it != key) return std::nullopt;
    return static_cast<std::size_t>(it - edges_.begin());
  }

  bool is_complete() const noexcept { return 2 * m() == n_ * (n_ - 1); }

  friend bool operator==(const SimpleGraph&, const SimpleGraph&) = default;

private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
};

/// A base graph plus one sign bit per canonical edge (1 = negative edge).
class SignedGraph {
public:
  SignedGraph() = default;

  /// All edges positive.
  explicit SignedGraph(SimpleGraph base) : base_(std::move(base)), signs_(base_.m()) {}

  SignedGraph(SimpleGraph base, BitVector signs) : base_(std::move(base)), signs_(std::move(signs)) {
    if (signs_.size() != base_.m()) {
      throw ValidationError("sign vector has " + std::to_string(signs_.size()) +
                            " bits but the base graph has " + std::to_string(base_.m()) + " edges");
    }
  }

  const SimpleGraph& base() const noexcept { return base_; }
  const BitVector& signs() const noexcept { return signs_; }
  std::size_t n() const noexcept { return base_.n(); }
  std::size_t m() const noexcept { return base_.m(); }

  bool is_negative(std::size_t t) const noexcept { return signs_.test(t); }
  /// sigma(edge_t) as +1 / -1.
  int sign(std::size_t t) const noexcept { return signs_.test(t) ? -1 : 1; }

  friend bool operator==(const SignedGraph&, const SignedGraph&) = default;

private:
  SimpleGraph base_;
  BitVector signs_;
};

/// deg[v] counts incident edges regardless of sign.
struct DegreeSequence {
  std::vector<std::size_t> deg;

  friend bool operator==(const DegreeSequence&, const DegreeSequence&) = default;
};

inline SimpleGraph complete_graph(std::size_t n) {
  if (n == 0) throw ValidationError("complete graph needs n >= 1");
  std::vector<std::pair<Vertex, Vertex>> pairs;
  pairs.reserve(n * (n - 1) / 2);
  for (Vertex i = 0; i < n; ++i) {
    for (Vertex j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  }
  return SimpleGraph::from_edges(n, std::move(pairs));
}

inline DegreeSequence degree_sequence(const SimpleGraph& g) {
  DegreeSequence d{std::vector<std::size_t>(g.n(), 0)};
  for (const auto& e : g.edges()) {
    ++d.deg[e.u];
    ++d.deg[e.v];
  }
  return d;
}

/// Neighbour lists; each list is in canonical edge order. Pairs are (neighbour, edge index).
inline std::vector<std::vector<std::pair<Vertex, std::size_t>>> incidence_lists(const SimpleGraph& g) {
  std::vector<std::vector<std::pair<Vertex, std::size_t>>> adj(g.n());
  for (std::size_t t = 0; t < g.m(); ++t) {
    const auto& e = g.edge(t);
    adj[e.u].emplace_back(e.v, t);
    adj[e.v].emplace_back(e.u, t);
  }
  for (auto& list : adj) {
    std::sort(list.begin(), list.end(), [](const auto& a, const auto& b) { return a.second < b.second; });
  }
  return adj;
}

inline bool is_connected(const SimpleGraph& g) {
  if (g.n() <= 1) return true;
  const auto adj = incidence_lists(g);
  std::vector<char> seen(g.n(), 0);
  std::vector<Vertex> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const Vertex u = stack.back();
    stack.pop_back();
    for (auto [w, t] : adj[u]) {
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  return reached == g.n();
}

/// 64-bit FNV-1a. Stable across platforms, used for file fingerprints.
inline std::uint64_t fnv1a(std::string_view bytes, std::uint64_t h = 14695981039346656037ULL) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

/// "K<n>" for complete graphs, otherwise "G<n>.<m>.<fingerprint>".
inline std::string describe(const SimpleGraph& g) {
  if (g.is_complete()) return "K" + std::to_string(g.n());
  std::string topology = std::to_string(g.n());
  for (const auto& e : g.edges()) topology += ";" + std::to_string(e.u) + "," + std::to_string(e.v);
  static constexpr char kDigits[] = "0123456789abcdef";
  const std::uint64_t h = fnv1a(topology);
  std::string hex(8, '0');
  for (int i = 0; i < 8; ++i) hex[7 - i] = kDigits[(h >> (4 * i)) & 0xF];
  return "G" + std::to_string(g.n()) + "." + std::to_string(g.m()) + "." + hex;
}

}  // namespace signed_spectra
