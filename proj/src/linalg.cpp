#include "conncurv/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace conncurv {

double max_abs(const Mat& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().maxCoeff();
}

double norm_inf(const Mat& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().rowwise().sum().maxCoeff();
}

HermitianMatrix::HermitianMatrix(const Mat& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("HermitianMatrix: matrix is not square");
  const double defect = max_abs(m - m.adjoint());
  if (defect > 1e-9) {
    throw std::invalid_argument("HermitianMatrix: deviation from Hermitian " + std::to_string(defect) +
                                " exceeds 1e-9");
  }
  m_ = (m + m.adjoint()) / 2.0;
}

HermitianMatrix HermitianMatrix::restrict(const std::vector<Index>& idx) const {
  const Index k = static_cast<Index>(idx.size());
  Mat out(k, k);
  for (Index i = 0; i < k; ++i)
    for (Index j = 0; j < k; ++j) out(i, j) = m_(idx[i], idx[j]);
  return HermitianMatrix(out);
}

Mat pinv(const Mat& m, double rtol) { return pinv(m, rtol, 0.0); }

Mat pinv(const Mat& m, double rtol, double atol) {
  if (m.size() == 0) return Mat::Zero(m.cols(), m.rows());
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::VectorXd& s = svd.singularValues();
  const double smax = s.size() > 0 ? s(0) : 0.0;
  Mat out = Mat::Zero(m.cols(), m.rows());
  if (smax == 0.0) return out;
  const double cutoff = std::max(rtol * smax, atol);
  for (Index i = 0; i < s.size(); ++i) {
    if (s(i) <= cutoff) continue;
    out += svd.matrixV().col(i) * (1.0 / s(i)) * svd.matrixU().col(i).adjoint();
  }
  return out;
}

Mat pinv(const Mat& m) {
  return pinv(m, 1e-10 * static_cast<double>(std::max(m.rows(), m.cols())));
}

namespace {

Mat take(const Mat& m, const std::vector<Index>& rows, const std::vector<Index>& cols) {
  Mat out(static_cast<Index>(rows.size()), static_cast<Index>(cols.size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) out(i, j) = m(rows[i], cols[j]);
  return out;
}

}  // namespace

HermitianMatrix schur_complement(const HermitianMatrix& s, const std::vector<Index>& keep) {
  if (keep.empty()) throw std::invalid_argument("schur_complement: empty keep set");
  std::vector<bool> kept(static_cast<std::size_t>(s.size()), false);
  for (Index k : keep) {
    if (k < 0 || k >= s.size()) throw std::invalid_argument("schur_complement: index out of range");
    kept[static_cast<std::size_t>(k)] = true;
  }
  std::vector<Index> elim;
  for (Index i = 0; i < s.size(); ++i)
    if (!kept[static_cast<std::size_t>(i)]) elim.push_back(i);

  const Mat s22 = take(s.mat(), keep, keep);
  if (elim.empty()) return HermitianMatrix(s22);
  const Mat s11 = take(s.mat(), elim, elim);
  const Mat s12 = take(s.mat(), elim, keep);
  const Mat s21 = take(s.mat(), keep, elim);
  const Mat out = s22 - s21 * pinv(s11, 1e-10 * static_cast<double>(s11.rows())) * s12;
  return HermitianMatrix((out + out.adjoint()) / 2.0);
}

bool albert_condition(const Mat& s11, const Mat& s12) {
  const HermitianMatrix h(s11);
  if (h.size() > 0 && eigenvalues(h)(0) < -1e-9) return false;
  const Mat resid = s11 * pinv(s11, 1e-10 * static_cast<double>(s11.rows())) * s12 - s12;
  return max_abs(resid) <= 1e-9 * (1.0 + max_abs(s12));
}

Eigen::VectorXd eigenvalues(const HermitianMatrix& m) {
  if (m.size() == 0) return Eigen::VectorXd();
  Eigen::SelfAdjointEigenSolver<Mat> es(m.mat(), Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

int multiplicity_of(const Eigen::VectorXd& sorted_eigs, double lambda) {
  const double thr = 1e-8 * std::max(1.0, std::abs(lambda));
  int count = 0;
  for (Index i = 0; i < sorted_eigs.size(); ++i)
    if (std::abs(sorted_eigs(i) - lambda) <= thr) ++count;
  return count;
}

MinEig min_eig_hermitian(const HermitianMatrix& m) {
  if (m.size() == 0) throw std::invalid_argument("min_eig_hermitian: empty matrix");
  Eigen::SelfAdjointEigenSolver<Mat> es(m.mat());
  MinEig out;
  out.value = es.eigenvalues()(0);
  out.vector = es.eigenvectors().col(0);
  out.multiplicity = multiplicity_of(es.eigenvalues(), out.value);
  return out;
}

bool is_psd(const HermitianMatrix& m) {
  if (m.size() == 0) return true;
  return eigenvalues(m)(0) >= -1e-9 * std::max(1.0, norm_inf(m.mat()));
}

namespace {

bool is_diagonal(const Mat& m) {
  Mat off = m;
  off.diagonal().setZero();
  return max_abs(off) <= 1e-12;
}

}  // namespace

SimultaneousDiag simultaneous_diagonalize(const HermitianMatrix& a, const HermitianMatrix& b) {
  if (a.size() != b.size()) throw std::invalid_argument("simultaneous_diagonalize: size mismatch");
  if (!is_psd(a) || !is_psd(b)) throw std::invalid_argument("simultaneous_diagonalize: inputs must be PSD");
  const Index n = a.size();
  SimultaneousDiag out;
  if (is_diagonal(a.mat()) && is_diagonal(b.mat())) {
    out.p = Mat::Identity(n, n);
  } else {
    // Whiten the range of A + B, then diagonalize A there; the kernel of
    // A + B is annihilated by both inputs.
    Eigen::SelfAdjointEigenSolver<Mat> es(a.mat() + b.mat());
    const Eigen::VectorXd& c = es.eigenvalues();
    const double cut = 1e-10 * std::max(1.0, c.cwiseAbs().maxCoeff()) * static_cast<double>(n);
    std::vector<Index> range, kernel;
    for (Index i = 0; i < n; ++i) (c(i) > cut ? range : kernel).push_back(i);
    const Index r = static_cast<Index>(range.size());
    Mat w(r, n);
    for (Index i = 0; i < r; ++i) w.row(i) = es.eigenvectors().col(range[i]).adjoint() / std::sqrt(c(range[i]));
    Mat at = w * a.mat() * w.adjoint();
    at = (at + at.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Mat> ea(at);
    out.p = Mat(n, n);
    out.p.topRows(r) = ea.eigenvectors().adjoint() * w;
    for (std::size_t k = 0; k < kernel.size(); ++k)
      out.p.row(r + static_cast<Index>(k)) = es.eigenvectors().col(kernel[k]).adjoint();
  }
  out.diag_a = (out.p * a.mat() * out.p.adjoint()).diagonal().real();
  out.diag_b = (out.p * b.mat() * out.p.adjoint()).diagonal().real();
  return out;
}

Mat polar_unitary(const Mat& m) {
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

double unitarity_defect(const Mat& m) {
  return max_abs(m * m.adjoint() - Mat::Identity(m.rows(), m.rows()));
}

}  // namespace conncurv
