#include "ksw/graphs.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <queue>
#include <set>
#include <stdexcept>

namespace ksw {

WeightedDigraph::WeightedDigraph(std::vector<std::string> labels, std::vector<Edge> edges)
    : labels_(std::move(labels)), edges_(std::move(edges)), incident_(labels_.size()) {
  std::set<std::string> seen(labels_.begin(), labels_.end());
  if (seen.size() != labels_.size()) throw std::invalid_argument("graph: duplicate vertex label");
  std::set<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const Edge& ed = edges_[e];
    if (ed.src >= labels_.size() || ed.dst >= labels_.size()) throw std::invalid_argument("graph: edge endpoint out of range");
    if (ed.src == ed.dst) throw std::invalid_argument("graph: self-loop at " + labels_[ed.src]);
    if (ed.weight <= 0) throw std::invalid_argument("graph: nonpositive weight on edge " + std::to_string(e));
    auto key = std::minmax(ed.src, ed.dst);
    if (!pairs.insert(key).second)
      throw std::invalid_argument("graph: parallel edge between " + labels_[ed.src] + " and " + labels_[ed.dst]);
    incident_[ed.src].push_back(e);
    incident_[ed.dst].push_back(e);
  }
}

std::size_t WeightedDigraph::index_of(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) throw std::invalid_argument("graph: unknown vertex '" + label + "'");
  return static_cast<std::size_t>(it - labels_.begin());
}

std::optional<std::size_t> WeightedDigraph::edge_between(std::size_t u, std::size_t v) const {
  for (std::size_t e : incident_.at(u))
    if (other_end(e, u) == v) return e;
  return std::nullopt;
}

std::size_t WeightedDigraph::other_end(std::size_t e, std::size_t v) const {
  const Edge& ed = edges_.at(e);
  if (ed.src == v) return ed.dst;
  if (ed.dst == v) return ed.src;
  throw std::invalid_argument("graph: vertex not on edge");
}

double WeightedDigraph::phase_or(std::size_t e, double fallback) const {
  const auto& p = edges_.at(e).phase;
  return p ? *p : fallback;
}

std::vector<std::size_t> WeightedDigraph::vertices_by_label() const {
  std::vector<std::size_t> order(labels_.size());
  for (std::size_t v = 0; v < order.size(); ++v) order[v] = v;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return labels_[a] < labels_[b]; });
  return order;
}

WeightedDigraph WeightedDigraph::with_edge_reversed(std::size_t e) const {
  auto edges = edges_;
  std::swap(edges.at(e).src, edges.at(e).dst);
  return WeightedDigraph(labels_, std::move(edges));
}

WeightedDigraph WeightedDigraph::with_phases(const std::vector<double>& phases) const {
  if (phases.size() != edges_.size()) throw std::invalid_argument("graph: phase vector size mismatch");
  auto edges = edges_;
  for (std::size_t e = 0; e < edges.size(); ++e) edges[e].phase = phases[e];
  return WeightedDigraph(labels_, std::move(edges));
}

std::optional<Rational> geodesic_distance(const WeightedDigraph& g, std::size_t i, std::size_t j) {
  const std::size_t n = g.num_vertices();
  if (i >= n || j >= n) throw std::invalid_argument("geodesic_distance: unknown vertex");
  std::vector<std::optional<Rational>> dist(n);
  std::vector<bool> done(n, false);
  dist[i] = Rational(0);
  for (;;) {
    std::optional<std::size_t> best;
    for (std::size_t v = 0; v < n; ++v)
      if (!done[v] && dist[v] && (!best || *dist[v] < *dist[*best])) best = v;
    if (!best) break;
    std::size_t u = *best;
    if (u == j) return dist[u];
    done[u] = true;
    for (std::size_t e : g.incident(u)) {
      std::size_t w = g.other_end(e, u);
      Rational cand = *dist[u] + g.edge(e).weight;
      if (!done[w] && (!dist[w] || cand < *dist[w])) dist[w] = cand;
    }
  }
  return dist[j];
}

namespace {

std::vector<std::size_t> out_neighbors_sorted(const WeightedDigraph& g, std::size_t v) {
  std::vector<std::size_t> out;
  for (std::size_t e : g.incident(v))
    if (g.edge(e).src == v) out.push_back(g.edge(e).dst);
  std::sort(out.begin(), out.end(), [&](std::size_t a, std::size_t b) { return g.label(a) < g.label(b); });
  return out;
}

std::vector<std::size_t> neighbors_sorted(const WeightedDigraph& g, std::size_t v) {
  std::vector<std::size_t> out;
  for (std::size_t e : g.incident(v)) out.push_back(g.other_end(e, v));
  std::sort(out.begin(), out.end(), [&](std::size_t a, std::size_t b) { return g.label(a) < g.label(b); });
  return out;
}

}  // namespace

AcyclicityWitness acyclicity_witness(const WeightedDigraph& g) {
  const std::size_t n = g.num_vertices();
  std::vector<std::size_t> indeg(n, 0);
  for (const auto& e : g.edges()) ++indeg[e.dst];
  auto cmp = [&](std::size_t a, std::size_t b) { return g.label(a) > g.label(b); };
  std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(cmp)> ready(cmp);
  for (std::size_t v = 0; v < n; ++v)
    if (indeg[v] == 0) ready.push(v);
  AcyclicityWitness w;
  while (!ready.empty()) {
    std::size_t v = ready.top();
    ready.pop();
    w.sequence.push_back(v);
    for (std::size_t u : out_neighbors_sorted(g, v))
      if (--indeg[u] == 0) ready.push(u);
  }
  if (w.sequence.size() == n) {
    w.acyclic = true;
    return w;
  }
  // Shortest directed cycle via BFS from each vertex in label order.
  std::vector<std::size_t> best;
  for (std::size_t s : g.vertices_by_label()) {
    std::vector<std::optional<std::size_t>> prev(n);
    std::vector<bool> seen(n, false);
    std::deque<std::size_t> queue{s};
    seen[s] = true;
    std::optional<std::size_t> closing;
    while (!queue.empty() && !closing) {
      std::size_t v = queue.front();
      queue.pop_front();
      for (std::size_t u : out_neighbors_sorted(g, v)) {
        if (u == s) {
          closing = v;
          break;
        }
        if (!seen[u]) {
          seen[u] = true;
          prev[u] = v;
          queue.push_back(u);
        }
      }
    }
    if (!closing) continue;
    std::vector<std::size_t> cyc{s};
    for (std::size_t v = *closing; v != s; v = *prev[v]) cyc.push_back(v);
    std::reverse(cyc.begin() + 1, cyc.end());
    cyc.push_back(s);
    if (best.empty() || cyc.size() < best.size()) best = std::move(cyc);
  }
  w.acyclic = false;
  w.sequence = std::move(best);
  return w;
}

std::vector<std::size_t> connected_components(const WeightedDigraph& g) {
  auto forest = spanning_forest(g);
  std::map<std::size_t, std::size_t> ids;
  std::vector<std::size_t> comp(g.num_vertices());
  for (std::size_t v : g.vertices_by_label()) {
    auto it = ids.find(forest.root[v]);
    if (it == ids.end()) it = ids.emplace(forest.root[v], ids.size()).first;
    comp[v] = it->second;
  }
  return comp;
}

SpanningForest spanning_forest(const WeightedDigraph& g) {
  const std::size_t n = g.num_vertices();
  SpanningForest f;
  f.parent_edge.assign(n, std::nullopt);
  f.parent.assign(n, 0);
  f.depth.assign(n, 0);
  f.root.assign(n, n);
  f.tree_edge.assign(g.num_edges(), false);
  for (std::size_t r : g.vertices_by_label()) {
    if (f.root[r] != n) continue;
    f.root[r] = r;
    f.parent[r] = r;
    std::function<void(std::size_t)> dfs = [&](std::size_t v) {
      for (std::size_t u : neighbors_sorted(g, v)) {
        if (f.root[u] != n) continue;
        std::size_t e = *g.edge_between(v, u);
        f.root[u] = r;
        f.parent[u] = v;
        f.parent_edge[u] = e;
        f.depth[u] = f.depth[v] + 1;
        f.tree_edge[e] = true;
        dfs(u);
      }
    };
    dfs(r);
  }
  return f;
}

std::vector<std::size_t> tree_path(const WeightedDigraph& g, const SpanningForest& f, std::size_t a, std::size_t b) {
  if (a >= g.num_vertices() || b >= g.num_vertices()) throw std::invalid_argument("tree_path: unknown vertex");
  if (f.root[a] != f.root[b]) throw std::invalid_argument("tree_path: vertices in different components");
  std::vector<std::size_t> up{a}, down{b};
  std::size_t x = a, y = b;
  while (f.depth[x] > f.depth[y]) up.push_back(x = f.parent[x]);
  while (f.depth[y] > f.depth[x]) down.push_back(y = f.parent[y]);
  while (x != y) {
    up.push_back(x = f.parent[x]);
    down.push_back(y = f.parent[y]);
  }
  down.pop_back();
  up.insert(up.end(), down.rbegin(), down.rend());
  return up;
}

std::vector<std::vector<std::size_t>> fundamental_cycles(const WeightedDigraph& g) {
  auto f = spanning_forest(g);
  std::vector<std::vector<std::size_t>> cycles;
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    if (f.tree_edge[e]) continue;
    const Edge& ed = g.edge(e);
    std::vector<std::size_t> cyc{ed.src};
    auto back = tree_path(g, f, ed.dst, ed.src);
    cyc.insert(cyc.end(), back.begin(), back.end());
    cycles.push_back(std::move(cyc));
  }
  return cycles;
}

SplitGraph split_graph(const WeightedDigraph& g) {
  SplitGraph s;
  s.reserve(2 * g.num_edges());
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    s.push_back({e, -1});
    s.push_back({e, +1});
  }
  return s;
}

}  // namespace ksw
