#pragma once

#include <Eigen/Dense>

#include <complex>
#include <vector>

namespace conncurv {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using Index = Eigen::Index;

// Largest entry modulus.
double max_abs(const Mat& m);
// Induced infinity norm (max absolute row sum).
double norm_inf(const Mat& m);

// Dense Hermitian matrix. Construction rejects inputs further than 1e-9 from
// Hermitian and stores the symmetrized (M + M^H)/2.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  explicit HermitianMatrix(const Mat& m);

  const Mat& mat() const { return m_; }
  Index size() const { return m_.rows(); }
  double tol() const { return 1e-10 * static_cast<double>(m_.rows()); }

  // Sub-block with rows/cols in `idx` (in the given order).
  HermitianMatrix restrict(const std::vector<Index>& idx) const;

 private:
  Mat m_;
};

// Moore-Penrose pseudoinverse via SVD; singular values <= rtol * sigma_max are dropped.
Mat pinv(const Mat& m, double rtol);
// Same with the default cutoff 1e-10 * max(rows, cols).
Mat pinv(const Mat& m);
// Also drops singular values <= atol, so pure rounding noise maps to zero.
Mat pinv(const Mat& m, double rtol, double atol);

// S22 - S21 * pinv(S11) * S12, where S22 is the block on `keep` and S11 the rest.
HermitianMatrix schur_complement(const HermitianMatrix& s, const std::vector<Index>& keep);

// S11 is PSD and S11 * pinv(S11) * S12 == S12.
bool albert_condition(const Mat& s11, const Mat& s12);

struct MinEig {
  double value = 0.0;
  Vec vector;
  int multiplicity = 0;
};

// Eigenvalues in ascending order.
Eigen::VectorXd eigenvalues(const HermitianMatrix& m);
MinEig min_eig_hermitian(const HermitianMatrix& m);
// Number of eigenvalues within 1e-8 * max(1, |lambda|) of lambda.
int multiplicity_of(const Eigen::VectorXd& sorted_eigs, double lambda);

// lambda_min >= -1e-9 * max(1, ||M||_inf).
bool is_psd(const HermitianMatrix& m);

struct SimultaneousDiag {
  Mat p;
  Eigen::VectorXd diag_a;
  Eigen::VectorXd diag_b;
};

// Nonsingular P with P A P^H and P B P^H both diagonal. Inputs must be PSD.
SimultaneousDiag simultaneous_diagonalize(const HermitianMatrix& a, const HermitianMatrix& b);

// Nearest unitary matrix (polar factor U V^H of the SVD).
Mat polar_unitary(const Mat& m);

// || M M^H - I ||, entrywise max.
double unitarity_defect(const Mat& m);

}  // namespace conncurv
