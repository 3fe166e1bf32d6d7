#pragma once

#include "conncurv/graph.hpp"
#include "conncurv/linalg.hpp"

#include <cstdint>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

namespace conncurv {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// 2/N with 2/inf == 0 exactly; N must be positive.
double two_over(double N);

// Intermediates of the curvature matrix for one vertex and one basis B.
// With M = B (2Q) B^H partitioned after the first d rows:
//   a = M_11, omega_t = M_12 (omega transposed), v0 = rows d.. of B Delta.
struct CurvatureBundle {
  Mat B;
  HermitianMatrix a;
  Mat omega_t;
  Mat v0;
  HermitianMatrix a_inf;
  double N = kInf;
  HermitianMatrix a_n;
};

// First d rows (I, conj(sigma_xy)...), then diag(p_xy^{-1/2} I).
Mat canonical_basis(const LocalStructure& local);
// Random valid B: rows E p0^T, then a unitary mix of the scaled positive
// eigenvectors of 2 Gamma plus a random multiple of p0^T.
Mat general_basis(const LocalStructure& local, std::uint64_t seed);
// || B (2 Gamma) B^H - diag(0_d, I) ||, entrywise max.
double basis_defect(const LocalStructure& local, const Mat& B);

// Throws ValidationError when B fails the normalization beyond 1e-9.
CurvatureBundle curvature_bundle(const LocalStructure& local, double N, const Mat& B);
HermitianMatrix curvature_matrix(const LocalStructure& local, double N, const Mat& B);
HermitianMatrix curvature_matrix(const LocalStructure& local, double N);

struct CurvatureValue {
  double K = 0.0;
  int multiplicity = 0;
};

// Smallest eigenvalue of A_N for the canonical basis.
CurvatureValue curvature(const LocalStructure& local, double N);

// Largest K with 4 Gamma_2 - (4/N) Delta Delta^H - 2K (2 Gamma) PSD on the
// whole 2-ball, found by bisection to width eps.
double curvature_oracle(const LocalStructure& local, double N, double eps = 1e-10);

struct ProfileSample {
  double N = kInf;
  double K = 0.0;
  int multiplicity = 0;
};

struct CurvatureProfile {
  std::vector<ProfileSample> samples;
  // First grid point whose multiplicity exceeds d.
  std::optional<double> constant_from;
  // Sample index pairs (i, j), i < j, with equal K within 1e-9.
  std::vector<std::pair<std::size_t, std::size_t>> equal_pairs;
};

// Grid must be ascending (inf allowed last). Throws CrossCheckError when K is
// not constant after a multiplicity jump, or not monotone within 1e-7.
CurvatureProfile curvature_profile(const LocalStructure& local, const std::vector<double>& grid);

}  // namespace conncurv
