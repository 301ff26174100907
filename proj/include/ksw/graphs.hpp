#pragma once

#include "ksw/rational.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace ksw {

struct Edge {
  std::size_t src = 0;
  std::size_t dst = 0;
  Rational weight = 1;
  std::optional<double> phase;
};

// Simple directed graph with positive rational edge weights.
class WeightedDigraph {
 public:
  WeightedDigraph() = default;
  // Throws std::invalid_argument on duplicate labels, loops, parallel edges or nonpositive weights.
  WeightedDigraph(std::vector<std::string> labels, std::vector<Edge> edges);

  std::size_t num_vertices() const { return labels_.size(); }
  std::size_t num_edges() const { return edges_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(std::size_t v) const { return labels_.at(v); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(std::size_t e) const { return edges_.at(e); }

  std::size_t index_of(const std::string& label) const;
  // Edge joining u and v in either direction.
  std::optional<std::size_t> edge_between(std::size_t u, std::size_t v) const;
  // Edge indices incident to v, in edge order.
  const std::vector<std::size_t>& incident(std::size_t v) const { return incident_.at(v); }
  std::size_t degree(std::size_t v) const { return incident_.at(v).size(); }
  std::size_t other_end(std::size_t e, std::size_t v) const;

  double phase_or(std::size_t e, double fallback) const;
  // Vertex indices sorted by label.
  std::vector<std::size_t> vertices_by_label() const;

  WeightedDigraph with_edge_reversed(std::size_t e) const;
  WeightedDigraph with_phases(const std::vector<double>& phases) const;

 private:
  std::vector<std::string> labels_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> incident_;
};

// Undirected shortest path length; nullopt means +infinity.
std::optional<Rational> geodesic_distance(const WeightedDigraph& g, std::size_t i, std::size_t j);

struct AcyclicityWitness {
  bool acyclic = false;
  // Topological order when acyclic; otherwise a closed directed cycle (first == last).
  std::vector<std::size_t> sequence;
};

// Kahn's algorithm with lexicographic tie-breaking; on failure the shortest
// directed cycle, rotated to start at its smallest label.
AcyclicityWitness acyclicity_witness(const WeightedDigraph& g);

// Component id per vertex, numbered in order of each component's smallest label.
std::vector<std::size_t> connected_components(const WeightedDigraph& g);

// DFS spanning forest, roots at the smallest label of each component.
struct SpanningForest {
  std::vector<std::optional<std::size_t>> parent_edge;
  std::vector<std::size_t> parent;
  std::vector<std::size_t> depth;
  std::vector<std::size_t> root;
  std::vector<bool> tree_edge;
};

SpanningForest spanning_forest(const WeightedDigraph& g);
// Vertex path from a to b inside the forest (same component required).
std::vector<std::size_t> tree_path(const WeightedDigraph& g, const SpanningForest& f, std::size_t a, std::size_t b);

// One closed vertex path per non-tree edge, in edge order.
std::vector<std::vector<std::size_t>> fundamental_cycles(const WeightedDigraph& g);

struct SplitEntry {
  std::size_t edge = 0;
  int sign = -1;
  bool operator==(const SplitEntry&) const = default;
};
using SplitGraph = std::vector<SplitEntry>;

SplitGraph split_graph(const WeightedDigraph& g);

}  // namespace ksw
