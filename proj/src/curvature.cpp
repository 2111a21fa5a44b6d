#include "ricciflow/curvature.hpp"

#include <cmath>
#include <stdexcept>

namespace ricciflow {

Dimension Dimension::finite(double n) {
  if (!(n > 0.0)) throw std::invalid_argument("dimension: need n > 0");
  Dimension d;
  d.n_ = n;
  d.infinite_ = false;
  return d;
}

double Dimension::value() const {
  if (infinite_) throw std::logic_error("dimension: value() of infinity");
  return n_;
}

Matrix Matrix::identity(int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

double Matrix::frobenius() const {
  double s = 0.0;
  for (double v : a_) s += v * v;
  return std::sqrt(s);
}

double Matrix::max_abs() const {
  double s = 0.0;
  for (double v : a_) s = std::max(s, std::abs(v));
  return s;
}

LocalCurvatureProblem assemble_local_form(const WeightedGraph& g,
                                          const VertexMeasure& m, Dimension n,
                                          Vertex x) {
  if (x < 0 || x >= g.num_vertices())
    throw std::invalid_argument("assemble: vertex out of range");
  if (g.degree(x) < 1) throw std::invalid_argument("assemble: isolated vertex");

  LocalCurvatureProblem p;
  p.center = x;
  Spheres sph = spheres(g, x);
  p.s1 = std::move(sph.s1);
  p.s2 = std::move(sph.s2);
  const int k1 = static_cast<int>(p.s1.size());
  const int k2 = static_cast<int>(p.s2.size());
  const int nb = k1 + k2;
  std::vector<Vertex> basis = p.s1;
  basis.insert(basis.end(), p.s2.begin(), p.s2.end());

  const double inv_n = n.inverse();
  GraphFunction f(g.num_vertices(), 0.0);
  auto q = [&](const std::vector<double>& vals) {
    for (int i = 0; i < nb; ++i) f[basis[i]] = vals[i];
    double lf = laplacian_at(g, m, f, x);
    double val = gamma2_at(g, m, f, x) - inv_n * lf * lf;
    for (int i = 0; i < nb; ++i) f[basis[i]] = 0.0;
    return val;
  };

  Matrix full(nb, nb);
  std::vector<double> e(nb, 0.0), qe(nb, 0.0);
  for (int i = 0; i < nb; ++i) {
    e[i] = 1.0;
    qe[i] = q(e);
    e[i] = 0.0;
    full(i, i) = qe[i];
  }
  for (int i = 0; i < nb; ++i)
    for (int j = i + 1; j < nb; ++j) {
      e[i] = 1.0;
      e[j] = 1.0;
      double mixed = 0.5 * (q(e) - qe[i] - qe[j]);
      e[i] = 0.0;
      e[j] = 0.0;
      full(i, j) = mixed;
      full(j, i) = mixed;
    }

  p.a = Matrix(k1, k1);
  p.b = Matrix(k1, k2);
  p.d = Matrix(k2, k2);
  for (int i = 0; i < k1; ++i)
    for (int j = 0; j < k1; ++j) p.a(i, j) = full(i, j);
  for (int i = 0; i < k1; ++i)
    for (int j = 0; j < k2; ++j) p.b(i, j) = full(i, k1 + j);
  for (int i = 0; i < k2; ++i)
    for (int j = 0; j < k2; ++j) p.d(i, j) = full(k1 + i, k1 + j);
  for (int i = 0; i < k2; ++i)
    if (p.d(i, i) <= 1e-14)
      throw std::invalid_argument("assemble: D diagonal entry not positive");

  p.g_diag.resize(k1);
  for (int i = 0; i < k1; ++i) {
    double w = 0.0;
    for (auto [y, wy] : g.neighbors(x))
      if (y == p.s1[i]) w = wy;
    p.g_diag[i] = w / (2.0 * m[x]);
  }
  return p;
}

// Cholesky factor (lower) in place; throws if not positive definite.
static Matrix cholesky(const Matrix& d) {
  const int n = d.rows();
  Matrix l(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      double s = d(i, j);
      for (int k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      if (i == j) {
        if (s <= 0.0)
          throw std::invalid_argument("curvature: D block not positive definite");
        l(i, i) = std::sqrt(s);
      } else {
        l(i, j) = s / l(j, j);
      }
    }
  }
  return l;
}

// Solves D y = rhs given the Cholesky factor of D.
static std::vector<double> cholesky_solve(const Matrix& l,
                                          std::vector<double> rhs) {
  const int n = l.rows();
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < i; ++k) rhs[i] -= l(i, k) * rhs[k];
    rhs[i] /= l(i, i);
  }
  for (int i = n - 1; i >= 0; --i) {
    for (int k = i + 1; k < n; ++k) rhs[i] -= l(k, i) * rhs[k];
    rhs[i] /= l(i, i);
  }
  return rhs;
}

static std::vector<double> schur_minimizer(const LocalCurvatureProblem& p,
                                           const std::vector<double>& f_s1) {
  const int k1 = static_cast<int>(p.s1.size());
  const int k2 = static_cast<int>(p.s2.size());
  Matrix l = cholesky(p.d);
  std::vector<double> rhs(k2, 0.0);
  for (int j = 0; j < k2; ++j)
    for (int i = 0; i < k1; ++i) rhs[j] += p.b(i, j) * f_s1[i];
  std::vector<double> y = cholesky_solve(l, std::move(rhs));
  for (double& v : y) v = -v;
  return y;
}

CurvatureMatrix curvature_matrix(const LocalCurvatureProblem& p) {
  const int k1 = static_cast<int>(p.s1.size());
  const int k2 = static_cast<int>(p.s2.size());
  Matrix s = p.a;
  if (k2 > 0) {
    Matrix l = cholesky(p.d);
    // columns of Y solve D Y = B^T
    for (int i = 0; i < k1; ++i) {
      std::vector<double> col(k2);
      for (int j = 0; j < k2; ++j) col[j] = p.b(i, j);
      std::vector<double> y = cholesky_solve(l, std::move(col));
      for (int j = i; j < k1; ++j) {
        double dot = 0.0;
        for (int r = 0; r < k2; ++r) dot += p.b(j, r) * y[r];
        s(i, j) -= dot;
        if (j != i) s(j, i) = s(i, j);
      }
    }
  }
  CurvatureMatrix cm(k1, k1);
  for (int i = 0; i < k1; ++i)
    for (int j = 0; j < k1; ++j)
      cm(i, j) = s(i, j) / std::sqrt(p.g_diag[i] * p.g_diag[j]);
  return cm;
}

EigenPair min_eig_sym(const Matrix& m) {
  const int n = m.rows();
  if (n == 0 || m.cols() != n)
    throw std::invalid_argument("min_eig_sym: not square");
  const double scale = m.max_abs();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (std::abs(m(i, j) - m(j, i)) > 1e-12 * (1.0 + scale))
        throw std::invalid_argument("min_eig_sym: matrix not symmetric");

  Matrix a = m;
  Matrix v = Matrix::identity(n);
  const double norm = a.frobenius();
  const double tol = 1e-13 * norm;
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off += 2.0 * a(i, j) * a(i, j);
    if (std::sqrt(off) <= tol || norm == 0.0) break;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        double apq = a(p, q);
        if (apq == 0.0) continue;
        double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        double t = (theta >= 0.0 ? 1.0 : -1.0) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double s = t * c;
        double tau = s / (1.0 + c);
        double app = a(p, p), aqq = a(q, q);
        a(p, p) = app - t * apq;
        a(q, q) = aqq + t * apq;
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (int r = 0; r < n; ++r) {
          if (r != p && r != q) {
            double arp = a(r, p), arq = a(r, q);
            a(r, p) = arp - s * (arq + tau * arp);
            a(p, r) = a(r, p);
            a(r, q) = arq + s * (arp - tau * arq);
            a(q, r) = a(r, q);
          }
          double vrp = v(r, p), vrq = v(r, q);
          v(r, p) = vrp - s * (vrq + tau * vrp);
          v(r, q) = vrq + s * (vrp - tau * vrq);
        }
      }
    }
  }

  int arg = 0;
  for (int i = 1; i < n; ++i)
    if (a(i, i) < a(arg, arg)) arg = i;
  EigenPair out;
  out.value = a(arg, arg);
  out.vector.resize(n);
  double nrm = 0.0;
  for (int i = 0; i < n; ++i) {
    out.vector[i] = v(i, arg);
    nrm += out.vector[i] * out.vector[i];
  }
  nrm = std::sqrt(nrm);
  int big = 0;
  for (int i = 1; i < n; ++i)
    if (std::abs(out.vector[i]) > std::abs(out.vector[big])) big = i;
  double sign = out.vector[big] < 0.0 ? -1.0 : 1.0;
  for (double& c : out.vector) c *= sign / nrm;
  return out;
}

double ricci(const WeightedGraph& g, const VertexMeasure& m, Dimension n,
             Vertex x) {
  return min_eig_sym(curvature_matrix(assemble_local_form(g, m, n, x))).value;
}

std::vector<double> ricci_all(const WeightedGraph& g, const VertexMeasure& m,
                              Dimension n) {
  std::vector<double> out(g.num_vertices());
  for (Vertex x = 0; x < g.num_vertices(); ++x) out[x] = ricci(g, m, n, x);
  return out;
}

GraphFunction witness(const WeightedGraph& g, const VertexMeasure& m,
                      Dimension n, Vertex x) {
  LocalCurvatureProblem p = assemble_local_form(g, m, n, x);
  EigenPair eig = min_eig_sym(curvature_matrix(p));
  const int k1 = static_cast<int>(p.s1.size());
  std::vector<double> f_s1(k1);
  for (int i = 0; i < k1; ++i)
    f_s1[i] = eig.vector[i] / std::sqrt(p.g_diag[i]);
  GraphFunction f(g.num_vertices(), 0.0);
  for (int i = 0; i < k1; ++i) f[p.s1[i]] = f_s1[i];
  if (!p.s2.empty()) {
    std::vector<double> f_s2 = schur_minimizer(p, f_s1);
    for (size_t j = 0; j < p.s2.size(); ++j) f[p.s2[j]] = f_s2[j];
  }
  return f;
}

}  // namespace ricciflow
