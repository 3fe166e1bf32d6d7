#include "conncurv/curvature.hpp"

#include "conncurv/errors.hpp"
#include "conncurv/operators.hpp"
#include "conncurv/random.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <limits>
#include <cmath>
#include <sstream>

namespace conncurv {

double two_over(double N) {
  if (!(N > 0.0)) throw std::invalid_argument("dimension parameter N must be positive");
  return std::isinf(N) ? 0.0 : 2.0 / N;
}

Mat canonical_basis(const LocalStructure& local) {
  const int d = local.d;
  const int size = (local.m + 1) * d;
  Mat B = Mat::Zero(size, size);
  B.topRows(d) = p0_transpose(local);
  for (int i = 1; i <= local.m; ++i)
    B.block(i * d, i * d, d, d) = Mat::Identity(d, d) / std::sqrt(local.p(0, i));
  return B;
}

Mat general_basis(const LocalStructure& local, std::uint64_t seed) {
  const int d = local.d;
  const int md = local.m * d;
  const HermitianMatrix g = gamma_matrix(local);
  Eigen::SelfAdjointEigenSolver<Mat> es(g.mat());
  // Ascending eigenvalues: the first d span the kernel.
  Mat scaled(md, g.size());
  for (int k = 0; k < md; ++k) {
    const double lambda = es.eigenvalues()(d + k);
    scaled.row(k) = es.eigenvectors().col(d + k).adjoint() / std::sqrt(lambda);
  }
  const Mat p0t = p0_transpose(local);
  Mat B(g.size(), g.size());
  if (seed == 0) {
    B.topRows(d) = p0t;
    B.bottomRows(md) = scaled;
    return B;
  }
  Rng rng(seed);
  const Mat E = random_gaussian(d, d, rng) + Mat::Identity(d, d);
  const Mat W = random_unitary(md, rng);
  const Mat F = random_gaussian(md, d, rng);
  B.topRows(d) = E * p0t;
  B.bottomRows(md) = W * scaled + F * p0t;
  return B;
}

double basis_defect(const LocalStructure& local, const Mat& B) {
  const HermitianMatrix g = gamma_matrix(local);
  const int d = local.d;
  if (B.rows() != g.size() || B.cols() != g.size()) return kInf;
  Mat target = Mat::Identity(g.size(), g.size());
  target.topLeftCorner(d, d).setZero();
  return max_abs(B * g.mat() * B.adjoint() - target);
}

CurvatureBundle curvature_bundle(const LocalStructure& local, double N, const Mat& B) {
  const double defect = basis_defect(local, B);
  if (defect > 1e-9) {
    std::ostringstream os;
    os << "basis fails B (2 Gamma) B^H = diag(0, I): residual " << defect << " > 1e-9";
    throw ValidationError(os.str());
  }
  const int d = local.d;
  const Index md = B.rows() - d;
  const HermitianMatrix q = q_matrix(local);
  const Mat m2 = B * (q.mat() / 2.0) * B.adjoint();

  CurvatureBundle out;
  out.B = B;
  out.N = N;
  out.a = HermitianMatrix(Mat(m2.topLeftCorner(d, d)));
  out.omega_t = m2.topRightCorner(d, md);
  const double floor = 1e-12 * std::max(1.0, max_abs(m2));
  const Mat a_pinv = pinv(out.a.mat(), 1e-10 * d, floor);
  const Mat rest = m2.bottomRightCorner(md, md);
  const Mat a_inf = rest - out.omega_t.adjoint() * a_pinv * out.omega_t;
  out.a_inf = HermitianMatrix((a_inf + a_inf.adjoint()) / 2.0);

  const Mat bd = B * delta_matrix(local);
  out.v0 = bd.bottomRows(md);
  out.a_n = HermitianMatrix(out.a_inf.mat() - two_over(N) * out.v0 * out.v0.adjoint());
  return out;
}

HermitianMatrix curvature_matrix(const LocalStructure& local, double N, const Mat& B) {
  return curvature_bundle(local, N, B).a_n;
}

HermitianMatrix curvature_matrix(const LocalStructure& local, double N) {
  return curvature_matrix(local, N, canonical_basis(local));
}

CurvatureValue curvature(const LocalStructure& local, double N) {
  const MinEig e = min_eig_hermitian(curvature_matrix(local, N));
  return {e.value, e.multiplicity};
}

double curvature_oracle(const LocalStructure& local, double N, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("curvature_oracle: eps must be positive");
  const int d = local.d;
  const Index ball1 = (local.m + 1) * d;
  const HermitianMatrix g2 = gamma2_matrix(local);
  const Index full = g2.size();
  const Mat delta = delta_matrix(local);

  Mat gamma = Mat::Zero(full, full);
  gamma.topLeftCorner(ball1, ball1) = gamma_matrix(local).mat();
  Mat dd = Mat::Zero(full, full);
  dd.topLeftCorner(ball1, ball1) = delta * delta.adjoint();
  // Everything below is four times Gamma_2 - (1/N) Delta Delta^H - K Gamma.
  const Mat base = g2.mat() - 2.0 * two_over(N) * dd;

  // Eigensolver rounding level of the probe. Any larger slack biases K upward
  // by roughly slack / (Gamma weight of the minimizing eigenvector), which can
  // be small.
  const double rounding = 8.0 * static_cast<double>(full) * std::numeric_limits<double>::epsilon();
  auto feasible = [&](double K) {
    const HermitianMatrix probe((base - 2.0 * K * gamma) / 4.0);
    return eigenvalues(probe)(0) >= -rounding * std::max(1.0, norm_inf(probe.mat()));
  };

  Eigen::SelfAdjointEigenSolver<Mat> es(gamma_matrix(local).mat(), Eigen::EigenvaluesOnly);
  const double lambda_plus = es.eigenvalues()(d);
  const double bound = (norm_inf(g2.mat()) + 2.0 * two_over(N) * norm_inf(dd)) / lambda_plus;
  double lo = -4.0 * bound;
  double hi = 4.0 * bound;
  for (int i = 0; i < 64 && !feasible(lo); ++i) lo *= 2.0;
  for (int i = 0; i < 64 && feasible(hi); ++i) hi = 2.0 * hi + 1.0;
  if (!feasible(lo) || feasible(hi)) throw CrossCheckError("curvature_oracle: could not bracket K");
  while (hi - lo > eps) {
    const double mid = 0.5 * (lo + hi);
    (feasible(mid) ? lo : hi) = mid;
  }
  return lo;
}

CurvatureProfile curvature_profile(const LocalStructure& local, const std::vector<double>& grid) {
  if (grid.empty()) throw std::invalid_argument("curvature_profile: empty grid");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0)) throw std::invalid_argument("curvature_profile: grid values must be positive");
    if (i > 0 && !(grid[i] > grid[i - 1])) throw std::invalid_argument("curvature_profile: grid must be ascending");
  }
  const Mat B = canonical_basis(local);
  CurvatureProfile prof;
  for (double N : grid) {
    const MinEig e = min_eig_hermitian(curvature_matrix(local, N, B));
    prof.samples.push_back({N, e.value, e.multiplicity});
  }
  const auto& s = prof.samples;
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (s[i].K < s[i - 1].K - 1e-7) {
      std::ostringstream os;
      os << "curvature profile at " << local.center << " decreases between N=" << s[i - 1].N << " and N=" << s[i].N;
      throw CrossCheckError(os.str());
    }
  }
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i].multiplicity > local.d) {
      prof.constant_from = s[i].N;
      for (std::size_t j = i + 1; j < s.size(); ++j) {
        if (std::abs(s[j].K - s[i].K) > 1e-9) {
          std::ostringstream os;
          os << "curvature at " << local.center << " has multiplicity " << s[i].multiplicity << " > d at N=" << s[i].N
             << " but changes by " << std::abs(s[j].K - s[i].K) << " at N=" << s[j].N << " (tolerance 1e-9)";
          throw CrossCheckError(os.str());
        }
      }
      break;
    }
  }
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j)
      if (std::abs(s[i].K - s[j].K) <= 1e-9) prof.equal_pairs.emplace_back(i, j);
  return prof;
}

}  // namespace conncurv
