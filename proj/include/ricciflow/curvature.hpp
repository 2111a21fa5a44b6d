#pragma once

#include <vector>

#include "ricciflow/graph.hpp"

namespace ricciflow {

// Dimension parameter n in (0, inf]. Infinity is a distinguished state, not a
// large float; inverse() is exactly 0 there.
class Dimension {
 public:
  static Dimension infinite() { return Dimension(); }
  static Dimension finite(double n);

  bool is_infinite() const { return infinite_; }
  double value() const;  // finite dimensions only
  double inverse() const { return infinite_ ? 0.0 : 1.0 / n_; }
  bool operator==(const Dimension& o) const {
    return infinite_ == o.infinite_ && (infinite_ || n_ == o.n_);
  }

 private:
  Dimension() = default;
  double n_ = 0.0;
  bool infinite_ = true;
};

// Minimal dense row-major matrix, sized by vertex degrees (small).
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols)
      : rows_(rows), cols_(cols),
        a_(static_cast<size_t>(rows) * static_cast<size_t>(cols), 0.0) {}
  static Matrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  double& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
  double operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }
  double frobenius() const;
  double max_abs() const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> a_;
};

// Curvature matrix A_{n,m}(x): symmetric, size deg(x); its minimal eigenvalue
// is the Bakry-Emery curvature at x.
using CurvatureMatrix = Matrix;

// Block quadratic form of q(f) = Gamma2(f)(x) - (1/n)(Delta f(x))^2 in the
// gauge f(x) = 0, variables ordered (S1, S2), plus the diagonal Gamma form G.
struct LocalCurvatureProblem {
  Vertex center = 0;
  std::vector<Vertex> s1;
  std::vector<Vertex> s2;
  Matrix a;                    // S1 x S1 block
  Matrix b;                    // S1 x S2 block
  Matrix d;                    // S2 x S2 block (positive definite)
  std::vector<double> g_diag;  // G_yy = w(x,y) / (2 m(x)), y in S1
};

// Builds the blocks by polarizing q over the basis functions supported on
// S1 u S2. The (Delta f)^2 term is omitted entirely for n = infinity.
LocalCurvatureProblem assemble_local_form(const WeightedGraph& g,
                                          const VertexMeasure& m, Dimension n,
                                          Vertex x);

// G^{-1/2} (A - B D^{-1} B^T) G^{-1/2}; the Schur complement performs the
// exact inner minimization of q over the S2 values.
CurvatureMatrix curvature_matrix(const LocalCurvatureProblem& p);

struct EigenPair {
  double value = 0.0;
  std::vector<double> vector;  // unit eigenvector
};

// Smallest eigenvalue of a symmetric matrix via cyclic Jacobi rotations with
// fixed sweep order. Deterministic for identical input.
EigenPair min_eig_sym(const Matrix& m);

// Bakry-Emery curvature Ric_{n,m}(x).
double ricci(const WeightedGraph& g, const VertexMeasure& m, Dimension n,
             Vertex x);
std::vector<double> ricci_all(const WeightedGraph& g, const VertexMeasure& m,
                              Dimension n);

// Minimizing test function: f(x) = 0, S1 values pulled back through G^{-1/2},
// S2 values at the Schur-complement minimizer, zero elsewhere. Satisfies
// Gamma(f)(x) = 1 and q(f) = ricci(x).
GraphFunction witness(const WeightedGraph& g, const VertexMeasure& m,
                      Dimension n, Vertex x);

}  // namespace ricciflow
