#include "conncurv/linalg.hpp"
#include "conncurv/random.hpp"

#include <doctest.h>

using namespace conncurv;

namespace {

// Random Hermitian PSD matrix of the given size and rank.
Mat random_psd(Index n, Index rank, Rng& rng) {
  const Mat g = random_gaussian(n, rank, rng);
  return g * g.adjoint();
}

}  // namespace

TEST_CASE("HermitianMatrix rejects non-Hermitian input and symmetrizes small defects") {
  Mat m(2, 2);
  m << 1.0, cplx(0.0, 1.0), cplx(0.0, 1.0), 1.0;
  CHECK_THROWS_AS(HermitianMatrix{m}, std::invalid_argument);
  Mat n(2, 2);
  n << 1.0, cplx(2.0, 1e-11), cplx(2.0, 0.0), 3.0;
  const HermitianMatrix h(n);
  CHECK(max_abs(h.mat() - h.mat().adjoint()) == 0.0);
  CHECK(h.mat()(0, 1).imag() == doctest::Approx(5e-12));
}

TEST_CASE("restrict picks rows and columns in order") {
  Mat m(3, 3);
  m << 1, 2, 3, 2, 4, 5, 3, 5, 6;
  const HermitianMatrix r = HermitianMatrix(m).restrict({2, 0});
  CHECK(r.mat()(0, 0).real() == 6.0);
  CHECK(r.mat()(0, 1).real() == 3.0);
  CHECK(r.mat()(1, 1).real() == 1.0);
}

TEST_CASE("pinv satisfies the Moore-Penrose conditions") {
  Rng rng(1);
  for (int trial = 0; trial < 50; ++trial) {
    const Index n = 2 + static_cast<Index>(rng() % 5);
    const Index rank = 1 + static_cast<Index>(rng() % n);
    const Mat a = random_gaussian(n, rank, rng) * random_gaussian(rank, n, rng);
    const Mat p = pinv(a);
    CHECK(max_abs(a * p * a - a) <= 1e-9);
    CHECK(max_abs(p * a * p - p) <= 1e-9);
    CHECK(max_abs((a * p).adjoint() - a * p) <= 1e-9);
    CHECK(max_abs((p * a).adjoint() - p * a) <= 1e-9);
  }
}

TEST_CASE("pinv with an absolute floor maps rounding noise to zero") {
  Mat noise = Mat::Zero(2, 2);
  noise(0, 0) = 1e-17;
  CHECK(max_abs(pinv(noise, 1e-10, 1e-12)) == 0.0);
  CHECK(max_abs(pinv(Mat::Zero(3, 3))) == 0.0);
}

TEST_CASE("Schur complement matches the explicit inverse for definite blocks") {
  Rng rng(2);
  for (int trial = 0; trial < 30; ++trial) {
    const Mat s = random_psd(5, 5, rng) + Mat::Identity(5, 5);
    const HermitianMatrix sc = schur_complement(HermitianMatrix(s), {0, 1});
    const Mat want = s.topLeftCorner(2, 2) - s.topRightCorner(2, 3) * s.bottomRightCorner(3, 3).inverse() * s.bottomLeftCorner(3, 2);
    CHECK(max_abs(sc.mat() - want) <= 1e-10);
  }
}

TEST_CASE("a PSD matrix has a PSD Schur complement and satisfies Albert's condition") {
  Rng rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const Mat s = random_psd(6, 3, rng);
    CHECK(albert_condition(s.topLeftCorner(2, 2), s.topRightCorner(2, 4)));
    CHECK(is_psd(schur_complement(HermitianMatrix(s), {2, 3, 4, 5})));
  }
}

TEST_CASE("Albert's condition fails when the range condition fails") {
  Mat s11 = Mat::Zero(1, 1);
  Mat s12 = Mat::Ones(1, 1);
  CHECK_FALSE(albert_condition(s11, s12));
  Mat neg = -Mat::Identity(1, 1);
  CHECK_FALSE(albert_condition(neg, s12));
}

TEST_CASE("eigenvalues ascend and the minimum carries its multiplicity") {
  Mat m = Mat::Zero(4, 4);
  m.diagonal() << 3.0, 1.0, 1.0, 2.0;
  const HermitianMatrix h(m);
  const Eigen::VectorXd ev = eigenvalues(h);
  CHECK(ev(0) == 1.0);
  CHECK(ev(3) == 3.0);
  const MinEig e = min_eig_hermitian(h);
  CHECK(e.value == doctest::Approx(1.0));
  CHECK(e.multiplicity == 2);
  CHECK(max_abs(m * e.vector - e.value * e.vector) <= 1e-12);
  CHECK(multiplicity_of(ev, 1.0 + 1e-10) == 2);
  CHECK(multiplicity_of(ev, 2.0) == 1);
}

TEST_CASE("is_psd uses a scale-relative threshold") {
  Mat m = Mat::Zero(2, 2);
  m(0, 0) = 1e6;
  m(1, 1) = -1e-4;
  CHECK(is_psd(HermitianMatrix(m)));
  m(1, 1) = -1e-2;
  CHECK_FALSE(is_psd(HermitianMatrix(m)));
}

TEST_CASE("simultaneous diagonalization of PSD pairs") {
  Rng rng(4);
  for (int trial = 0; trial < 30; ++trial) {
    const Index n = 2 + static_cast<Index>(rng() % 4);
    const HermitianMatrix a(random_psd(n, 1 + static_cast<Index>(rng() % n), rng));
    const HermitianMatrix b(random_psd(n, n, rng));
    const SimultaneousDiag sd = simultaneous_diagonalize(a, b);
    const Mat da = sd.p * a.mat() * sd.p.adjoint();
    const Mat db = sd.p * b.mat() * sd.p.adjoint();
    Mat off_a = da;
    Mat off_b = db;
    off_a.diagonal().setZero();
    off_b.diagonal().setZero();
    CHECK(max_abs(off_a) <= 1e-9);
    CHECK(max_abs(off_b) <= 1e-9);
    CHECK((da.diagonal().real() - sd.diag_a).cwiseAbs().maxCoeff() <= 1e-9);
    CHECK((db.diagonal().real() - sd.diag_b).cwiseAbs().maxCoeff() <= 1e-9);
    CHECK(std::abs(sd.p.determinant()) > 1e-12);
  }
}

TEST_CASE("polar projection returns the nearest unitary") {
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const Mat u = random_unitary(3, rng);
    CHECK(unitarity_defect(u) <= 1e-12);
    CHECK(max_abs(polar_unitary(u) - u) <= 1e-12);
    const Mat noisy = u + 1e-10 * random_gaussian(3, 3, rng);
    const Mat fixed = polar_unitary(noisy);
    CHECK(unitarity_defect(fixed) <= 1e-14);
    CHECK(max_abs(fixed - u) <= 1e-9);
  }
  Mat d = Mat::Identity(2, 2);
  d(1, 1) = 2.0;
  CHECK(unitarity_defect(d) == doctest::Approx(3.0));
}

TEST_CASE("norms") {
  Mat m(2, 2);
  m << 1.0, -2.0, cplx(0.0, 3.0), 0.5;
  CHECK(max_abs(m) == 3.0);
  CHECK(norm_inf(m) == 3.5);
}
