#include "conncurv/operators.hpp"

#include "conncurv/errors.hpp"

#include <sstream>

namespace conncurv {

namespace {

using Block = Eigen::Block<Mat>;

Block block(Mat& m, int d, int u, int v) { return m.block(u * d, v * d, d, d); }

}  // namespace

Mat delta_matrix(const LocalStructure& local) {
  const int d = local.d;
  Mat out = Mat::Zero((local.m + 1) * d, d);
  out.topRows(d) = -local.dx_over_mux * Mat::Identity(d, d);
  for (int i = 1; i <= local.m; ++i) out.middleRows(i * d, d) = local.p(0, i) * local.sigma(0, i).transpose();
  return out;
}

HermitianMatrix gamma_matrix(const LocalStructure& local) {
  const int d = local.d;
  const Mat eye = Mat::Identity(d, d);
  Mat out = Mat::Zero((local.m + 1) * d, (local.m + 1) * d);
  for (int i = 1; i <= local.m; ++i) {
    const double p = local.p(0, i);
    block(out, d, 0, 0) += p * eye;
    block(out, d, 0, i) = -p * local.sigma(0, i).conjugate();
    block(out, d, i, 0) = -p * local.sigma(0, i).transpose();
    block(out, d, i, i) = p * eye;
  }
  return HermitianMatrix(out);
}

Mat p0_transpose(const LocalStructure& local) {
  const int d = local.d;
  Mat out(d, (local.m + 1) * d);
  out.leftCols(d) = Mat::Identity(d, d);
  for (int i = 1; i <= local.m; ++i) out.middleCols(i * d, d) = local.sigma(0, i).conjugate();
  return out;
}

HermitianMatrix gamma2_matrix(const LocalStructure& L) {
  const int d = L.d;
  const int m = L.m;
  const int size = L.size();
  const Mat eye = Mat::Identity(d, d);
  const double dx = L.dx_over_mux;
  const auto& p = L.p;
  auto sbar = [&](int u, int v) -> Mat { return L.sigma(u, v).conjugate(); };
  Mat M = Mat::Zero(size * d, size * d);

  // (x, x)
  double back = 0.0;
  for (int i = 1; i <= m; ++i) back += p(0, i) * p(i, 0);
  block(M, d, 0, 0) = (3.0 * back + dx * dx) * eye;

  for (int i = 1; i <= m; ++i) {
    const double dyi = L.degree_over_measure(i);
    // (x, y_i)
    Mat xy = -(2.0 * p(i, 0) + dyi + dx) * p(0, i) * sbar(0, i);
    for (int j = 1; j <= m; ++j)
      if (j != i && L.linked(j, i)) xy += p(0, j) * p(j, i) * sbar(0, j) * sbar(j, i);
    block(M, d, 0, i) = xy;
    block(M, d, i, 0) = xy.adjoint();

    // (y_i, y_i)
    double through = 0.0;
    for (int j = 1; j <= m; ++j)
      if (j != i) through += p(0, j) * p(j, i);
    block(M, d, i, i) = (through + (2.0 * p(0, i) + 3.0 * dyi - dx) * p(0, i)) * eye;

    // (y_i, y_j)
    for (int j = 1; j <= m; ++j) {
      if (j == i) continue;
      Mat yy = 2.0 * p(0, i) * p(0, j) * L.sigma(0, i).transpose() * sbar(0, j);
      if (L.linked(i, j)) yy -= 2.0 * (p(0, i) * p(i, j) + p(0, j) * p(j, i)) * sbar(i, j);
      block(M, d, i, j) = yy;
    }

    // (y_i, z_k)
    for (int k = m + 1; k < size; ++k) {
      if (!L.linked(i, k)) continue;
      const Mat yz = -2.0 * p(0, i) * p(i, k) * sbar(i, k);
      block(M, d, i, k) = yz;
      block(M, d, k, i) = yz.adjoint();
    }
  }

  for (int k = m + 1; k < size; ++k) {
    // (x, z_k) and (z_k, z_k); (z_k, z_l) stays zero.
    Mat xz = Mat::Zero(d, d);
    double reach = 0.0;
    for (int i = 1; i <= m; ++i) {
      if (!L.linked(i, k)) continue;
      xz += p(0, i) * p(i, k) * sbar(0, i) * sbar(i, k);
      reach += p(0, i) * p(i, k);
    }
    block(M, d, 0, k) = xz;
    block(M, d, k, 0) = xz.adjoint();
    block(M, d, k, k) = reach * eye;
  }
  return HermitianMatrix(M);
}

HermitianMatrix q_matrix_closed_form(const LocalStructure& L) {
  const HermitianMatrix g2 = gamma2_matrix(L);
  const int d = L.d;
  const int m = L.m;
  const int size = L.size();
  const auto& p = L.p;
  Mat Q = g2.mat().topLeftCorner((m + 1) * d, (m + 1) * d);

  for (int k = m + 1; k < size; ++k) {
    double reach = 0.0;
    Mat xz = Mat::Zero(d, d);
    for (int i = 1; i <= m; ++i) {
      if (!L.linked(i, k)) continue;
      reach += p(0, i) * p(i, k);
      xz += p(0, i) * p(i, k) * L.sigma(0, i).conjugate() * L.sigma(i, k).conjugate();
    }
    block(Q, d, 0, 0) -= xz * xz.adjoint() / reach;
    for (int i = 1; i <= m; ++i) {
      if (!L.linked(i, k)) continue;
      const double ci = p(0, i) * p(i, k);
      const Mat xy = 2.0 * xz * ci * L.sigma(i, k).transpose() / reach;
      block(Q, d, 0, i) += xy;
      block(Q, d, i, 0) += xy.adjoint();
      for (int j = 1; j <= m; ++j) {
        if (!L.linked(j, k)) continue;
        const double cj = p(0, j) * p(j, k);
        if (j == i) {
          block(Q, d, i, i) -= 4.0 * ci * ci / reach * Mat::Identity(d, d);
        } else {
          block(Q, d, i, j) -= 4.0 * ci * cj * L.sigma(i, k).conjugate() * L.sigma(j, k).transpose() / reach;
        }
      }
    }
  }
  return HermitianMatrix(Q);
}

HermitianMatrix q_matrix(const LocalStructure& L) {
  const HermitianMatrix g2 = gamma2_matrix(L);
  std::vector<Index> ball1;
  for (Index i = 0; i < (L.m + 1) * L.d; ++i) ball1.push_back(i);
  const HermitianMatrix generic = L.n == 0 ? g2.restrict(ball1) : schur_complement(g2, ball1);
  const HermitianMatrix closed = q_matrix_closed_form(L);
  const double resid = max_abs(generic.mat() - closed.mat());
  if (resid > 1e-9) {
    std::ostringstream os;
    os << "q_matrix at " << L.center << ": generic Schur complement and closed form differ by " << resid
       << " (tolerance 1e-9)";
    throw CrossCheckError(os.str());
  }
  return generic;
}

LocalOperators local_operators(const LocalStructure& local) {
  return {delta_matrix(local), gamma_matrix(local), gamma2_matrix(local), q_matrix(local)};
}

// ---------------------------------------------------------------------------
// Recursive evaluation

namespace {

const Vec& at(const VertexFunction& f, const std::string& v) {
  auto it = f.find(v);
  if (it == f.end()) throw std::invalid_argument("vertex function undefined at " + v);
  return it->second;
}

double rate(const ConnectionGraph& g, const std::string& u, const std::string& v) {
  return g.weight(u, v) / g.measure(u);
}

Vec laplacian(const ConnectionGraph& g, const VertexFunction& f, const std::string& u) {
  Vec out = Vec::Zero(g.dimension());
  for (const auto& v : g.neighbors(u)) out += rate(g, u, v) * (g.sigma(u, v) * at(f, v) - at(f, u));
  return out;
}

cplx carre(const ConnectionGraph& g, const VertexFunction& f, const VertexFunction& h, const std::string& u) {
  cplx s = 0.0;
  for (const auto& v : g.neighbors(u)) {
    const Vec df = g.sigma(u, v) * at(f, v) - at(f, u);
    const Vec dh = g.sigma(u, v) * at(h, v) - at(h, u);
    s += rate(g, u, v) * (df.transpose() * dh.conjugate())(0, 0);
  }
  return 0.5 * s;
}

}  // namespace

GammaForms gamma_forms(const ConnectionGraph& g, const VertexFunction& f, const VertexFunction& h,
                       const std::string& x) {
  const auto s1 = g.neighbors(x);
  VertexFunction lf = f;
  VertexFunction lh = h;
  lf[x] = laplacian(g, f, x);
  lh[x] = laplacian(g, h, x);
  for (const auto& y : s1) {
    lf[y] = laplacian(g, f, y);
    lh[y] = laplacian(g, h, y);
  }
  const cplx gx = carre(g, f, h, x);
  cplx lap_gamma = 0.0;
  for (const auto& y : s1) lap_gamma += rate(g, x, y) * (carre(g, f, h, y) - gx);
  GammaForms out;
  out.gamma = gx;
  out.gamma2 = 0.5 * (lap_gamma - carre(g, f, lh, x) - carre(g, lf, h, x));
  out.delta_f = lf.at(x);
  return out;
}

}  // namespace conncurv
