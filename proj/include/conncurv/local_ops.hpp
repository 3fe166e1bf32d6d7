#pragma once

#include "conncurv/curvature.hpp"
#include "conncurv/graph.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace conncurv {

struct EditReport {
  std::string vertex;
  double N = kInf;
  double before = 0.0;
  double after = 0.0;
  // 4 Gamma_2 difference is PSD (edge additions only).
  std::optional<bool> delta_psd;
  bool s1_in_regular = false;
  bool default_sigma = false;
};

// p_yx is the same for every y in the 1-sphere (relative tolerance 1e-12).
bool is_s1_in_regular(const LocalStructure& local);

// Adds the edge yi - yj inside the 1-sphere of x. Without sigma_new the
// connection sigma_yix sigma_xyj closes a balanced triangle; in that case,
// when x is S1-in regular, K must not decrease and the Gamma_2 difference
// must be PSD (CrossCheckError otherwise).
std::pair<ConnectionGraph, EditReport> add_spherical_edge(const ConnectionGraph& g, const std::string& x,
                                                          const std::string& yi, const std::string& yj,
                                                          double w_new = 1.0,
                                                          const std::optional<Mat>& sigma_new = std::nullopt);

// 4 Gamma_2(after) - 4 Gamma_2(before) at x, both switched so that every
// edge from x carries the identity. Requires equal local index layouts.
HermitianMatrix switched_gamma2_difference(const ConnectionGraph& before, const ConnectionGraph& after,
                                           const std::string& x);

// Identifies two 2-sphere vertices without common neighbors into "zk+zl"
// (weights and measures add, connections carried over). Asserts that K does
// not decrease on a fixed grid of N values.
std::pair<ConnectionGraph, EditReport> merge_s2(const ConnectionGraph& g, const std::string& x, const std::string& zk,
                                                const std::string& zl);

// Grid on which merge_s2 checks monotonicity.
const std::vector<double>& merge_check_grid();

}  // namespace conncurv
