#pragma once

#include "conncurv/graph.hpp"

#include <string>
#include <tuple>
#include <vector>

namespace conncurv {

// d = 1 graph with unit weights and measures; each edge carries a sign.
ConnectionGraph signed_graph(const std::vector<std::tuple<std::string, std::string, int>>& edges);
// d = 2 graph with unit weights and measures; unlisted connections are I_2.
ConnectionGraph u2_graph(const std::vector<std::tuple<std::string, std::string, Mat>>& edges);

// [[0, i], [-i, 0]]
Mat quaternion_j();
// diag(1, i)
Mat phase_diag();

namespace fixtures {

ConnectionGraph g1_u2();            // square 1-2-4-3 with the diagonal 2-3 carrying quaternion_j
ConnectionGraph single_edge(int d = 1);  // vertices "x", "y"
ConnectionGraph u2_triangle();      // A, B, C with sigma_AC = quaternion_j
ConnectionGraph signed_triangle();  // A, B, C with sigma_AC = -1
ConnectionGraph u2_diamond();       // g1_u2 topology with sigma_23 = phase_diag
ConnectionGraph signed_diamond();   // g1_u2 topology with sigma_23 = -1
ConnectionGraph g2();
ConnectionGraph g3();
ConnectionGraph g3_tilde();         // g3 plus the negative edge 3-4
ConnectionGraph g4();               // path 4-2-1-3-5
ConnectionGraph g5();               // square 1-2-4-3
// Incomplete 2-ball of a vertex in the infinite positively curved signed
// strip; 1 has four neighbors 2..5 and four 2-sphere vertices 6..9.
ConnectionGraph positive_strip_ball();

}  // namespace fixtures

// Transcribed reference matrices. Scales follow the library: 2 Gamma,
// 4 Gamma_2, 4 Q.
namespace printed {

Mat g1_gamma();
Mat g1_gamma2();
Mat g1_q();
Mat g1_basis();
Mat g1_basis_q_basis();  // B0 2Q B0^H
Mat g1_curvature();
Mat strip_gamma();       // 4 Gamma (printed at that scale)
Mat strip_gamma2();
Mat strip_basis();
Mat strip_curvature();
Mat g2_curvature();
Mat g2_triangle_curvature();  // product at 1|A, lexicographic 1-sphere order

}  // namespace printed

struct ExampleResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Every reference example with its expected values; tol applies to the
// exact expected values, matrices are compared at 1e-12.
std::vector<ExampleResult> run_examples(double tol = 1e-9);

}  // namespace conncurv
