#pragma once

#include "conncurv/graph.hpp"
#include "conncurv/linalg.hpp"

#include <cstdint>

namespace conncurv {

// Tangent vector at x: md entries, block i is sigma_xyi f(yi) - f(x).
using TangentVector = Vec;

// Extends a 1-ball function to the 2-sphere by minimizing the Gamma_2 form.
Vec psi_extend(const LocalStructure& local, const Vec& w);

// d x md matrix P with phi(v) = P v: the center value that minimizes the Q
// form over all 1-ball functions with gradient v. Uses pinv(a); zero when
// the structure is locally balanced.
Mat phi_map(const LocalStructure& local);

// The 1-ball function (phi; sigma_xyi^{-1} (v_i + phi)).
Vec phi_extend(const LocalStructure& local, const TangentVector& v, const Mat& phi);

// max | p0^T (2Q) conj(Phi(v)) | for the given map; zero at an exact minimizer.
double phi_residual(const LocalStructure& local, const Mat& phi, const TangentVector& v);

struct RicMetric {
  cplx ric;
  cplx g;
};

RicMetric ric_and_metric(const LocalStructure& local, double N, const TangentVector& v1, const TangentVector& v2);

// Coordinates of v in the orthonormal frame induced by B.
Vec frame_coordinates(const LocalStructure& local, const Mat& B, const TangentVector& v);
// Inverse of frame_coordinates.
TangentVector tangent_from_frame(const LocalStructure& local, const Mat& B, const Vec& coords);

// Max residual over random unit tangent vectors of Ric = vB^T A_N conj(vB)
// and g = |vB|^2, together with Ric/g == lambda_min at the mapped
// eigenvector of A_N.
double tensor_matrix_check(const LocalStructure& local, double N, const Mat& B, std::uint64_t seed = 0);

}  // namespace conncurv
