#include "ricciflow/graph.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>

namespace ricciflow {

WeightedGraph::WeightedGraph(std::vector<std::string> labels,
                             const std::vector<Edge>& edges,
                             std::vector<Vertex> boundary)
    : labels_(std::move(labels)) {
  const int n = num_vertices();
  if (n == 0) throw std::invalid_argument("graph: empty vertex set");
  {
    std::set<std::string> seen;
    for (const auto& l : labels_) {
      if (l.empty()) throw std::invalid_argument("graph: empty vertex label");
      if (!seen.insert(l).second)
        throw std::invalid_argument("graph: duplicate vertex label '" + l + "'");
    }
  }
  adjacency_.assign(n, {});
  std::set<std::pair<Vertex, Vertex>> seen_edges;
  for (const Edge& e : edges) {
    if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n)
      throw std::invalid_argument("graph: edge endpoint out of range");
    if (e.u == e.v)
      throw std::invalid_argument("graph: self-loop at '" + labels_[e.u] + "'");
    if (!(e.w > 0.0))
      throw std::invalid_argument("graph: nonpositive weight on edge '" +
                                  labels_[e.u] + "'-'" + labels_[e.v] + "'");
    Vertex a = std::min(e.u, e.v), b = std::max(e.u, e.v);
    if (!seen_edges.insert({a, b}).second)
      throw std::invalid_argument("graph: parallel edge '" + labels_[a] + "'-'" +
                                  labels_[b] + "'");
    edges_.push_back({a, b, e.w});
    adjacency_[a].push_back({b, e.w});
    adjacency_[b].push_back({a, e.w});
  }
  std::sort(edges_.begin(), edges_.end(), [](const Edge& l, const Edge& r) {
    return std::pair(l.u, l.v) < std::pair(r.u, r.v);
  });
  for (auto& nb : adjacency_) std::sort(nb.begin(), nb.end());

  // connectivity
  std::vector<char> vis(n, 0);
  std::queue<Vertex> q;
  q.push(0);
  vis[0] = 1;
  int reached = 1;
  while (!q.empty()) {
    Vertex x = q.front();
    q.pop();
    for (auto [y, w] : adjacency_[x]) {
      (void)w;
      if (!vis[y]) {
        vis[y] = 1;
        ++reached;
        q.push(y);
      }
    }
  }
  if (reached != n) throw std::invalid_argument("graph: not connected");

  for (Vertex b : boundary) {
    if (b < 0 || b >= n)
      throw std::invalid_argument("graph: boundary vertex out of range");
  }
  boundary_ = std::move(boundary);
  std::sort(boundary_.begin(), boundary_.end());
}

std::optional<Vertex> WeightedGraph::find(const std::string& label) const {
  for (int i = 0; i < num_vertices(); ++i)
    if (labels_[i] == label) return i;
  return std::nullopt;
}

bool WeightedGraph::adjacent(Vertex x, Vertex y) const {
  for (auto [z, w] : adjacency_.at(x)) {
    (void)w;
    if (z == y) return true;
  }
  return false;
}

VertexMeasure::VertexMeasure(std::vector<double> values)
    : values_(std::move(values)) {
  if (values_.empty()) throw std::invalid_argument("measure: empty");
  for (double v : values_)
    if (!(v > 0.0)) throw std::invalid_argument("measure: nonpositive entry");
}

VertexMeasure VertexMeasure::uniform(int n, double value) {
  return VertexMeasure(std::vector<double>(n, value));
}

double VertexMeasure::volume() const {
  double s = 0.0;
  for (double v : values_) s += v;
  return s;
}

double VertexMeasure::min() const {
  return *std::min_element(values_.begin(), values_.end());
}

double VertexMeasure::max() const {
  return *std::max_element(values_.begin(), values_.end());
}

static std::vector<std::string> index_labels(int k) {
  std::vector<std::string> labels(k);
  for (int i = 0; i < k; ++i) labels[i] = std::to_string(i);
  return labels;
}

WeightedGraph make_cycle(int k) {
  if (k < 3) throw std::invalid_argument("cycle: need k >= 3");
  std::vector<Edge> edges;
  for (int i = 0; i < k; ++i) edges.push_back({i, (i + 1) % k, 1.0});
  return WeightedGraph(index_labels(k), edges);
}

WeightedGraph make_path(int k) {
  if (k < 2) throw std::invalid_argument("path: need k >= 2");
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < k; ++i) edges.push_back({i, i + 1, 1.0});
  return WeightedGraph(index_labels(k), edges);
}

WeightedGraph make_complete(int k) {
  if (k < 2) throw std::invalid_argument("complete: need k >= 2");
  std::vector<Edge> edges;
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) edges.push_back({i, j, 1.0});
  return WeightedGraph(index_labels(k), edges);
}

WeightedGraph make_star(int k) {
  if (k < 1) throw std::invalid_argument("star: need k >= 1 leaves");
  std::vector<Edge> edges;
  for (int i = 1; i <= k; ++i) edges.push_back({0, i, 1.0});
  return WeightedGraph(index_labels(k + 1), edges);
}

WeightedGraph make_tree_t3() {
  std::vector<std::string> labels;
  for (int i = 1; i <= 10; ++i) labels.push_back("x" + std::to_string(i));
  // x1 ~ x2,x3,x4; branch children: x2 ~ x5,x6; x3 ~ x7,x8; x4 ~ x9,x10
  std::vector<Edge> edges = {{0, 1, 1.0}, {0, 2, 1.0}, {0, 3, 1.0},
                             {1, 4, 1.0}, {1, 5, 1.0}, {2, 6, 1.0},
                             {2, 7, 1.0}, {3, 8, 1.0}, {3, 9, 1.0}};
  return WeightedGraph(std::move(labels), edges, {4, 5, 6, 7, 8, 9});
}

WeightedGraph generate(GraphFamily family, int k) {
  switch (family) {
    case GraphFamily::Cycle: return make_cycle(k);
    case GraphFamily::Path: return make_path(k);
    case GraphFamily::Complete: return make_complete(k);
    case GraphFamily::Star: return make_star(k);
    case GraphFamily::TreeT3: return make_tree_t3();
  }
  throw std::invalid_argument("generate: unknown family");
}

static void check_domain(const WeightedGraph& g, const VertexMeasure& m,
                         const GraphFunction& f, Vertex x) {
  if (x < 0 || x >= g.num_vertices())
    throw std::invalid_argument("evaluator: vertex out of range");
  if (m.size() != g.num_vertices())
    throw std::invalid_argument("evaluator: measure domain mismatch");
  if (static_cast<int>(f.size()) != g.num_vertices())
    throw std::invalid_argument("evaluator: function domain mismatch");
}

double laplacian_at(const WeightedGraph& g, const VertexMeasure& m,
                    const GraphFunction& f, Vertex x) {
  check_domain(g, m, f, x);
  double acc = 0.0;
  for (auto [y, w] : g.neighbors(x)) acc += w * (f[y] - f[x]);
  return acc / m[x];
}

double gamma_at(const WeightedGraph& g, const VertexMeasure& m,
                const GraphFunction& f, const GraphFunction& h, Vertex x) {
  check_domain(g, m, f, x);
  if (h.size() != f.size())
    throw std::invalid_argument("evaluator: function domain mismatch");
  // 1/2 (Delta(fh) - f(x) Delta h - h(x) Delta f)(x), grouped per neighbor
  double acc = 0.0;
  for (auto [y, w] : g.neighbors(x)) {
    acc += w * ((f[y] * h[y] - f[x] * h[x]) - f[x] * (h[y] - h[x]) -
                h[x] * (f[y] - f[x]));
  }
  return acc / (2.0 * m[x]);
}

double gamma2_at(const WeightedGraph& g, const VertexMeasure& m,
                 const GraphFunction& f, Vertex x) {
  check_domain(g, m, f, x);
  // Gamma(f) and Delta f as functions on the closed 1-ball of x; their values
  // elsewhere never enter Delta(.)(x) or Gamma(., f)(x).
  GraphFunction gamma_f(f.size(), 0.0), delta_f(f.size(), 0.0);
  gamma_f[x] = gamma_at(g, m, f, f, x);
  delta_f[x] = laplacian_at(g, m, f, x);
  for (auto [y, w] : g.neighbors(x)) {
    (void)w;
    gamma_f[y] = gamma_at(g, m, f, f, y);
    delta_f[y] = laplacian_at(g, m, f, y);
  }
  return 0.5 * laplacian_at(g, m, gamma_f, x) - gamma_at(g, m, delta_f, f, x);
}

Spheres spheres(const WeightedGraph& g, Vertex x) {
  if (x < 0 || x >= g.num_vertices())
    throw std::invalid_argument("spheres: vertex out of range");
  Spheres out;
  std::vector<char> dist1(g.num_vertices(), 0);
  for (auto [y, w] : g.neighbors(x)) {
    (void)w;
    out.s1.push_back(y);
    dist1[y] = 1;
  }
  std::set<Vertex> second;
  for (Vertex y : out.s1)
    for (auto [z, w] : g.neighbors(y)) {
      (void)w;
      if (z != x && !dist1[z]) second.insert(z);
    }
  out.s2.assign(second.begin(), second.end());
  return out;
}

}  // namespace ricciflow
