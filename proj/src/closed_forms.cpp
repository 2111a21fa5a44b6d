#include "ricciflow/closed_forms.hpp"

#include <cmath>
#include <stdexcept>

namespace ricciflow {
namespace closed_forms {

static void check_measure(const std::vector<double>& m, size_t size,
                          const char* who) {
  if (m.size() != size)
    throw std::invalid_argument(std::string(who) + ": wrong measure size");
  for (double v : m)
    if (!(v > 0.0))
      throw std::invalid_argument(std::string(who) + ": nonpositive measure");
}

static int wrap(int i, int k) { return ((i % k) + k) % k; }

double ric_c3(const std::vector<double>& m, int i) {
  check_measure(m, 3, "ric_c3");
  i = wrap(i, 3);
  const double a = 1.0 / m[i];
  const double b = 1.0 / m[wrap(i - 1, 3)];
  const double c = 1.0 / m[wrap(i + 1, 3)];
  return 1.75 * (b + c) -
         std::sqrt((a - b - c) * (a - b - c) +
                   (25.0 / 16.0) * (b - c) * (b - c));
}

double ric_c4(const std::vector<double>& m, int i) {
  check_measure(m, 4, "ric_c4");
  i = wrap(i, 4);
  const double mm = m[wrap(i - 1, 4)];
  const double mp = m[wrap(i + 1, 4)];
  const double t1 = (mm + mp) / (2.0 * mm * mp);
  const double t2 = 2.0 / (mm + mp);
  const double r1 = 1.0 / m[i] - t2;
  const double r2 = (mp - mm) / (2.0 * mm * mp);
  return t1 + t2 - std::sqrt(r1 * r1 + r2 * r2);
}

double ric_ck(const std::vector<double>& m, int i) {
  const int k = static_cast<int>(m.size());
  if (k < 5) throw std::invalid_argument("ric_ck: need k >= 5");
  check_measure(m, m.size(), "ric_ck");
  i = wrap(i, k);
  const double u = 1.0 / m[wrap(i - 1, k)];
  const double v = 1.0 / m[wrap(i + 1, k)];
  const double w = 1.0 / m[i];
  return 0.5 * (u + v) - 0.5 * std::sqrt((u - v) * (u - v) + 4.0 * w * w);
}

Matrix t3_center_matrix(const std::vector<double>& m) {
  check_measure(m, 10, "ric_t3");
  Matrix a(3, 3);
  const double off = 1.0 / m[0];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) a(i, j) = off;
  for (int j = 0; j < 3; ++j) a(j, j) = 0.5 * (1.0 / m[1 + j] - 1.0 / m[0]);
  return a;
}

Matrix t3_branch_matrix(const std::vector<double>& m, Vertex branch) {
  check_measure(m, 10, "ric_t3");
  if (branch < 1 || branch > 3)
    throw std::invalid_argument("ric_t3: not a branch vertex");
  const int c1 = 2 + 2 * branch;  // first leaf child (x5 for x2, ...)
  const int c2 = c1 + 1;
  Matrix a(3, 3);
  const double off = 1.0 / m[branch];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) a(i, j) = off;
  a(0, 0) = 0.5 * (3.0 / m[c1] - 1.0 / m[branch]);
  a(1, 1) = 0.5 * (3.0 / m[c2] - 1.0 / m[branch]);
  a(2, 2) = 0.5 * (1.0 / m[0] - 1.0 / m[branch]);
  return a;
}

double ric_t3(const std::vector<double>& m, Vertex x) {
  check_measure(m, 10, "ric_t3");
  if (x == 0) return min_eig_sym(t3_center_matrix(m)).value;
  if (x >= 1 && x <= 3) return min_eig_sym(t3_branch_matrix(m, x)).value;
  if (x >= 4 && x <= 9) {
    const int parent = (x - 4) / 2 + 1;
    return 0.5 * (1.0 / m[parent] + 1.0 / m[x]);
  }
  throw std::invalid_argument("ric_t3: vertex out of range");
}

}  // namespace closed_forms
}  // namespace ricciflow
