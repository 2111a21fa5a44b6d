#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace ricciflow {

// Vertices are dense indices into a fixed, user-supplied order; labels are
// display metadata only. Ties (argmax/argmin and similar) break toward the
// lowest index.
using Vertex = int;

struct Edge {
  Vertex u = 0;
  Vertex v = 0;
  double w = 1.0;
};

// Finite, simple, connected, undirected graph with symmetric positive edge
// weights. Immutable after construction; safe to share across threads.
class WeightedGraph {
 public:
  WeightedGraph(std::vector<std::string> labels, const std::vector<Edge>& edges,
                std::vector<Vertex> boundary = {});

  int num_vertices() const { return static_cast<int>(labels_.size()); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(Vertex x) const { return labels_.at(x); }
  // Index of a label, or nullopt if unknown.
  std::optional<Vertex> find(const std::string& label) const;

  int degree(Vertex x) const { return static_cast<int>(adjacency_.at(x).size()); }
  // Neighbors of x with edge weights, sorted by vertex index.
  std::span<const std::pair<Vertex, double>> neighbors(Vertex x) const {
    return adjacency_.at(x);
  }
  bool adjacent(Vertex x, Vertex y) const;
  // Normalized edge list (u < v), sorted lexicographically.
  const std::vector<Edge>& edges() const { return edges_; }
  // Optional boundary subset (sorted); empty when not designated.
  const std::vector<Vertex>& boundary() const { return boundary_; }

 private:
  std::vector<std::string> labels_;
  std::vector<std::vector<std::pair<Vertex, double>>> adjacency_;
  std::vector<Edge> edges_;
  std::vector<Vertex> boundary_;
};

// Strictly positive vertex weights over a graph's vertex set (the flow state).
class VertexMeasure {
 public:
  explicit VertexMeasure(std::vector<double> values);
  static VertexMeasure uniform(int n, double value = 1.0);

  int size() const { return static_cast<int>(values_.size()); }
  double operator[](Vertex x) const { return values_[x]; }
  const std::vector<double>& values() const { return values_; }
  double volume() const;
  double min() const;
  double max() const;

 private:
  std::vector<double> values_;
};

// Test function f: V -> R, indexed by vertex.
using GraphFunction = std::vector<double>;

enum class GraphFamily { Cycle, Path, Complete, Star, TreeT3 };

WeightedGraph make_cycle(int k);     // k >= 3, unit weights, labels "0".."k-1"
WeightedGraph make_path(int k);      // k >= 2
WeightedGraph make_complete(int k);  // k >= 2
WeightedGraph make_star(int k);      // center "0" plus k leaves
// The 10-vertex tree with center x1 ~ x2,x3,x4, two leaf children per branch,
// boundary {x5..x10}. Labels "x1".."x10".
WeightedGraph make_tree_t3();
WeightedGraph generate(GraphFamily family, int k = 0);

// Delta f(x) = sum_{y~x} w(x,y)/m(x) (f(y) - f(x)).
double laplacian_at(const WeightedGraph& g, const VertexMeasure& m,
                    const GraphFunction& f, Vertex x);

// Carre du champ: 1/2 (Delta(fg) - f Delta g - g Delta f)(x).
double gamma_at(const WeightedGraph& g, const VertexMeasure& m,
                const GraphFunction& f, const GraphFunction& h, Vertex x);

// Iterated form: 1/2 Delta Gamma(f)(x) - Gamma(Delta f, f)(x), composed from
// the two evaluators above. Depends on f only through the closed 2-ball of x.
double gamma2_at(const WeightedGraph& g, const VertexMeasure& m,
                 const GraphFunction& f, Vertex x);

struct Spheres {
  std::vector<Vertex> s1;  // distance exactly 1, index order
  std::vector<Vertex> s2;  // distance exactly 2, index order
};
Spheres spheres(const WeightedGraph& g, Vertex x);

}  // namespace ricciflow
