#pragma once

#include "conncurv/graph.hpp"
#include "conncurv/linalg.hpp"

#include <functional>
#include <string>
#include <vector>

namespace conncurv {

enum class Lift { same_dimension, tensor };

struct ProductSpec {
  double alpha = 1.0;
  double beta = 1.0;
  Lift lift = Lift::same_dimension;
};

// Product vertex id "x|x2".
std::string product_vertex(const std::string& x, const std::string& x2);

// Replaces every connection sigma by I_left (x) sigma (x) I_right.
ConnectionGraph tensor_lift(const ConnectionGraph& g, int left, int right);

// mu(x,x') = mu_x mu_x'; w((x,x'),(y,x')) = alpha w_xy mu_x';
// w((x,x'),(x,y')) = beta w'_x'y' mu_x; connections copied from the factors
// (or lifted to sigma (x) I and I (x) sigma' with Lift::tensor).
ConnectionGraph cartesian_product(const ConnectionGraph& g, const ConnectionGraph& g2, const ProductSpec& spec);

struct ProductDecomposition {
  // Product curvature matrix reordered so the 1-sphere of x comes first,
  // then the 1-sphere of x2.
  HermitianMatrix product;
  HermitianMatrix block_diagonal;  // blockdiag(alpha A_N(x), beta A_N2(x2))
  HermitianMatrix r;
  HermitianMatrix j;
  double residual = 0.0;
  double r_min_eig = 0.0;
  double j_min_eig = 0.0;
  // order[k] = product 1-sphere position of the k-th reordered neighbor.
  std::vector<int> order;
};

// Checks A_{N+N2}(x,x2) = blockdiag(alpha A_N, beta A_N2) + R + J with R, J
// PSD. Refuses (ValidationError) when the connections do not commute;
// CrossCheckError when any check fails beyond 1e-9.
ProductDecomposition product_decomposition(const ConnectionGraph& g, const ConnectionGraph& g2, const ProductSpec& spec,
                                           const std::string& x, const std::string& x2, double N, double N2);

// f1*f2(t) = f1(t1) = f2(t2) with t1 + t2 = t; min of the limits at t = inf.
// Both functions must be monotone non-decreasing on (0, t].
double star_product(const std::function<double(double)>& f1, const std::function<double(double)>& f2, double t);

}  // namespace conncurv
