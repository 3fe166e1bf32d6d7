#pragma once

#include "conncurv/graph.hpp"
#include "conncurv/linalg.hpp"

#include <map>
#include <string>

namespace conncurv {

// Local operator matrices at a vertex, in the block order of LocalStructure.
// Quadratic forms read f^T M conj(f). Stored scales: 2*Gamma, 4*Gamma_2, 4*Q.
struct LocalOperators {
  Mat delta;                 // (m+1)d x d
  HermitianMatrix gamma;     // 2 Gamma, (m+1)d square
  HermitianMatrix gamma2;    // 4 Gamma_2, (m+n+1)d square
  HermitianMatrix q;         // 4 Q, (m+1)d square
};

// Block rows -(d_x/mu_x) I, then (p_xy sigma_xy)^T, so that Delta^T f = (Delta f)(x).
Mat delta_matrix(const LocalStructure& local);
// 2 Gamma on the 1-ball.
HermitianMatrix gamma_matrix(const LocalStructure& local);
// 4 Gamma_2 on the incomplete 2-ball, assembled from closed-form blocks.
HermitianMatrix gamma2_matrix(const LocalStructure& local);
// 4 Q: the 2-sphere block of 4 Gamma_2 eliminated by a generic Schur
// complement, cross-checked against the closed-form blocks (CrossCheckError
// beyond 1e-9).
HermitianMatrix q_matrix(const LocalStructure& local);
HermitianMatrix q_matrix_closed_form(const LocalStructure& local);
LocalOperators local_operators(const LocalStructure& local);

// d x (m+1)d matrix (I, conj(sigma_xy1), ..., conj(sigma_xym)); its
// conjugate-transposed rows span the kernel of 2 Gamma.
Mat p0_transpose(const LocalStructure& local);

using VertexFunction = std::map<std::string, Vec>;

struct GammaForms {
  cplx gamma;
  cplx gamma2;
  Vec delta_f;
};

// Gamma(f,h)(x), Gamma_2(f,h)(x) and (Delta f)(x) straight from the
// recursive definitions on the graph; f and h must cover the 2-ball.
GammaForms gamma_forms(const ConnectionGraph& g, const VertexFunction& f, const VertexFunction& h,
                       const std::string& x);

}  // namespace conncurv
