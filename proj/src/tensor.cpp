#include "conncurv/tensor.hpp"

#include "conncurv/curvature.hpp"
#include "conncurv/operators.hpp"
#include "conncurv/random.hpp"

#include <algorithm>
#include <cmath>

namespace conncurv {

Vec psi_extend(const LocalStructure& local, const Vec& w) {
  const Index b1 = (local.m + 1) * local.d;
  if (w.size() != b1) throw std::invalid_argument("psi_extend: wrong vector length");
  if (local.n == 0) return w;
  const Mat g2 = gamma2_matrix(local).mat();
  const Index s2 = g2.rows() - b1;
  // The 2-sphere block is real diagonal.
  const Eigen::VectorXd diag = g2.bottomRightCorner(s2, s2).diagonal().real();
  const Vec rhs = g2.bottomLeftCorner(s2, b1).conjugate() * w;
  Vec out(g2.rows());
  out.head(b1) = w;
  out.tail(s2) = -(rhs.array() / diag.array().cast<cplx>()).matrix();
  return out;
}

namespace {

// (m+1)d x md matrix [0; blockdiag(sigma_xyi^T)].
Mat sigma_stack_transpose(const LocalStructure& local) {
  const int d = local.d;
  Mat s = Mat::Zero((local.m + 1) * d, local.m * d);
  for (int i = 1; i <= local.m; ++i) s.block(i * d, (i - 1) * d, d, d) = local.sigma(0, i).transpose();
  return s;
}

}  // namespace

Mat phi_map(const LocalStructure& local) {
  const Mat p0t = p0_transpose(local);
  const Mat q2 = q_matrix(local).mat() / 2.0;
  const Mat a = p0t * q2 * p0t.adjoint();
  const double floor = 1e-12 * std::max(1.0, max_abs(q2));
  const Mat a_pinv = pinv((a + a.adjoint()) / 2.0, 1e-10 * local.d, floor);
  // conj(phi) = -a^+ p0^T 2Q [0; sigma^T] conj(v)
  return (-a_pinv * p0t * q2 * sigma_stack_transpose(local)).conjugate();
}

Vec phi_extend(const LocalStructure& local, const TangentVector& v, const Mat& phi) {
  const int d = local.d;
  if (v.size() != local.m * d) throw std::invalid_argument("phi_extend: wrong tangent vector length");
  const Vec center = phi * v;
  Vec f((local.m + 1) * d);
  f.head(d) = center;
  for (int i = 1; i <= local.m; ++i)
    f.segment(i * d, d) = local.sigma(0, i).adjoint() * (v.segment((i - 1) * d, d) + center);
  return f;
}

double phi_residual(const LocalStructure& local, const Mat& phi, const TangentVector& v) {
  const Vec f = phi_extend(local, v, phi);
  const Mat q2 = q_matrix(local).mat() / 2.0;
  return max_abs(p0_transpose(local) * q2 * f.conjugate());
}

RicMetric ric_and_metric(const LocalStructure& local, double N, const TangentVector& v1, const TangentVector& v2) {
  const int d = local.d;
  const Mat phi = phi_map(local);
  const Vec f1 = phi_extend(local, v1, phi);
  const Vec f2 = phi_extend(local, v2, phi);
  const Vec e1 = psi_extend(local, f1);
  const Vec e2 = psi_extend(local, f2);
  const Mat g2 = gamma2_matrix(local).mat() / 2.0;
  const Mat delta = delta_matrix(local);

  RicMetric out;
  const Vec lap1 = delta.transpose() * f1;  // (Delta f1)(x)
  const Vec lap2 = delta.transpose() * f2;
  out.ric = (e1.transpose() * g2 * e2.conjugate())(0, 0) - two_over(N) * (lap1.transpose() * lap2.conjugate())(0, 0);
  cplx g = 0.0;
  for (int i = 1; i <= local.m; ++i)
    g += local.p(0, i) * (v1.segment((i - 1) * d, d).transpose() * v2.segment((i - 1) * d, d).conjugate())(0, 0);
  out.g = g;
  return out;
}

Vec frame_coordinates(const LocalStructure& local, const Mat& B, const TangentVector& v) {
  const Vec f = phi_extend(local, v, Mat::Zero(local.d, local.m * local.d));
  const Vec c = B.transpose().partialPivLu().solve(f);
  return c.tail(local.m * local.d);
}

TangentVector tangent_from_frame(const LocalStructure& local, const Mat& B, const Vec& coords) {
  const int d = local.d;
  Vec c = Vec::Zero(B.rows());
  c.tail(local.m * d) = coords;
  const Vec f = B.transpose() * c;
  TangentVector v(local.m * d);
  for (int i = 1; i <= local.m; ++i)
    v.segment((i - 1) * d, d) = local.sigma(0, i) * f.segment(i * d, d) - f.head(d);
  return v;
}

double tensor_matrix_check(const LocalStructure& local, double N, const Mat& B, std::uint64_t seed) {
  const HermitianMatrix an = curvature_matrix(local, N, B);
  const Index md = local.m * local.d;
  Rng rng(seed);
  double worst = 0.0;
  for (Index trial = 0; trial < md + 4; ++trial) {
    Vec v = random_gaussian(md, 1, rng);
    const double norm = std::sqrt(ric_and_metric(local, N, v, v).g.real());
    v /= norm;
    const RicMetric rm = ric_and_metric(local, N, v, v);
    const Vec vb = frame_coordinates(local, B, v);
    const cplx ric_frame = (vb.transpose() * an.mat() * vb.conjugate())(0, 0);
    worst = std::max(worst, std::abs(rm.ric - ric_frame));
    worst = std::max(worst, std::abs(rm.g - vb.squaredNorm()));
  }
  const MinEig e = min_eig_hermitian(an);
  const TangentVector v = tangent_from_frame(local, B, e.vector.conjugate());
  const RicMetric rm = ric_and_metric(local, N, v, v);
  worst = std::max(worst, std::abs(rm.ric / rm.g - e.value));
  return worst;
}

}  // namespace conncurv
