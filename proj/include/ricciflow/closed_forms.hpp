#pragma once

#include <vector>

#include "ricciflow/curvature.hpp"
#include "ricciflow/graph.hpp"

namespace ricciflow {
namespace closed_forms {

// Closed-form curvatures (n = infinity, unit edge weights) for the cycle and
// tree families, transcribed literally and used as independent oracles for
// the engine.

// Cycle of length 3; indices taken mod 3.
double ric_c3(const std::vector<double>& m, int i);

// Cycle of length 4; indices taken mod 4.
double ric_c4(const std::vector<double>& m, int i);

// Cycle of length k >= 5; the minimal eigenvalue of
// [[1/m(i-1), 1/m(i)], [1/m(i), 1/m(i+1)]], in radical form.
double ric_ck(const std::vector<double>& m, int i);

// The tree of make_tree_t3() (10 vertices, x1..x10 = indices 0..9):
// 3x3 matrices for the center and branch vertices, leaf formula
// 1/2 (1/m(parent) + 1/m(leaf)) for the boundary.
double ric_t3(const std::vector<double>& m, Vertex x);

// The displayed 3x3 matrices behind ric_t3, exposed for fixture tests.
Matrix t3_center_matrix(const std::vector<double>& m);
Matrix t3_branch_matrix(const std::vector<double>& m, Vertex branch);

}  // namespace closed_forms
}  // namespace ricciflow
