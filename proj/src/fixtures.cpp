#include "conncurv/fixtures.hpp"

#include "conncurv/curvature.hpp"
#include "conncurv/local_ops.hpp"
#include "conncurv/operators.hpp"
#include "conncurv/product.hpp"

#include <cmath>
#include <functional>
#include <set>
#include <sstream>

namespace conncurv {

namespace {

using namespace std::complex_literals;

std::vector<Vertex> unit_vertices(const std::set<std::string>& ids) {
  std::vector<Vertex> out;
  for (const auto& id : ids) out.push_back({id, 1.0});
  return out;
}

Mat from_rows(int n, std::initializer_list<cplx> data, double scale = 1.0) {
  Mat m(n, n);
  auto it = data.begin();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = *it++ * scale;
  return m;
}

}  // namespace

ConnectionGraph signed_graph(const std::vector<std::tuple<std::string, std::string, int>>& edges) {
  std::set<std::string> ids;
  std::vector<Edge> es;
  for (const auto& [u, v, s] : edges) {
    ids.insert(u);
    ids.insert(v);
    es.push_back({u, v, 1.0, Mat::Constant(1, 1, static_cast<double>(s))});
  }
  return ConnectionGraph(1, Field::real, unit_vertices(ids), std::move(es));
}

ConnectionGraph u2_graph(const std::vector<std::tuple<std::string, std::string, Mat>>& edges) {
  std::set<std::string> ids;
  std::vector<Edge> es;
  for (const auto& [u, v, s] : edges) {
    ids.insert(u);
    ids.insert(v);
    es.push_back({u, v, 1.0, s});
  }
  return ConnectionGraph(2, Field::complex, unit_vertices(ids), std::move(es));
}

Mat quaternion_j() { return from_rows(2, {0.0, 1i, -1i, 0.0}); }

Mat phase_diag() { return from_rows(2, {1.0, 0.0, 0.0, 1i}); }

namespace fixtures {

namespace {

const Mat I2 = Mat::Identity(2, 2);

ConnectionGraph diamond_u2(const Mat& s23) {
  return u2_graph({{"1", "2", I2}, {"1", "3", I2}, {"2", "4", I2}, {"3", "4", I2}, {"2", "3", s23}});
}

}  // namespace

ConnectionGraph g1_u2() { return diamond_u2(quaternion_j()); }

ConnectionGraph single_edge(int d) {
  const Field f = d == 1 ? Field::real : Field::complex;
  return ConnectionGraph(d, f, {{"x", 1.0}, {"y", 1.0}}, {{"x", "y", 1.0, Mat::Identity(d, d)}});
}

ConnectionGraph u2_triangle() { return u2_graph({{"A", "B", I2}, {"B", "C", I2}, {"A", "C", quaternion_j()}}); }

ConnectionGraph signed_triangle() { return signed_graph({{"A", "B", 1}, {"B", "C", 1}, {"A", "C", -1}}); }

ConnectionGraph u2_diamond() { return diamond_u2(phase_diag()); }

ConnectionGraph signed_diamond() {
  return signed_graph({{"1", "2", 1}, {"1", "3", 1}, {"2", "4", 1}, {"3", "4", 1}, {"2", "3", -1}});
}

ConnectionGraph g2() {
  return signed_graph({{"1", "2", 1}, {"2", "5", 1}, {"5", "4", 1}, {"4", "1", 1}, {"1", "3", 1}, {"3", "2", -1}, {"3", "6", 1}});
}

ConnectionGraph g3() {
  return signed_graph(
      {{"1", "2", 1}, {"2", "5", -1}, {"5", "4", 1}, {"4", "1", 1}, {"1", "3", 1}, {"3", "2", -1}, {"3", "6", 1}});
}

ConnectionGraph g3_tilde() {
  return signed_graph({{"1", "2", 1},
                       {"2", "5", -1},
                       {"5", "4", 1},
                       {"4", "1", 1},
                       {"1", "3", 1},
                       {"3", "2", -1},
                       {"3", "6", 1},
                       {"3", "4", -1}});
}

ConnectionGraph g4() { return signed_graph({{"1", "2", 1}, {"2", "4", 1}, {"1", "3", 1}, {"3", "5", 1}}); }

ConnectionGraph g5() { return signed_graph({{"1", "2", 1}, {"2", "4", 1}, {"4", "3", 1}, {"3", "1", 1}}); }

ConnectionGraph positive_strip_ball() {
  return signed_graph({{"1", "2", -1},
                       {"2", "6", -1},
                       {"1", "3", 1},
                       {"3", "7", -1},
                       {"7", "2", 1},
                       {"1", "4", 1},
                       {"4", "8", -1},
                       {"8", "5", 1},
                       {"1", "5", -1},
                       {"5", "9", -1},
                       {"2", "3", 1},
                       {"3", "4", -1},
                       {"4", "5", 1}});
}

}  // namespace fixtures

namespace printed {

Mat g1_gamma() {
  return from_rows(6, {2, 0, -1, 0, -1, 0,  //
                       0, 2, 0, -1, 0, -1,  //
                       -1, 0, 1, 0, 0, 0,   //
                       0, -1, 0, 1, 0, 0,   //
                       -1, 0, 0, 0, 1, 0,   //
                       0, -1, 0, 0, 0, 1});
}

Mat g1_gamma2() {
  return from_rows(8, {10.0, 0.0, -7.0, -1i, -7.0, -1i, 2.0, 0.0,    //
                       0.0, 10.0, 1i, -7.0, 1i, -7.0, 0.0, 2.0,      //
                       -7.0, -1i, 10.0, 0.0, 2.0, 4i, -2.0, 0.0,     //
                       1i, -7.0, 0.0, 10.0, -4i, 2.0, 0.0, -2.0,     //
                       -7.0, -1i, 2.0, 4i, 10.0, 0.0, -2.0, 0.0,     //
                       1i, -7.0, -4i, 2.0, 0.0, 10.0, 0.0, -2.0,     //
                       2.0, 0.0, -2.0, 0.0, -2.0, 0.0, 2.0, 0.0,     //
                       0.0, 2.0, 0.0, -2.0, 0.0, -2.0, 0.0, 2.0});
}

Mat g1_q() {
  return from_rows(6, {8.0, 0.0, -5.0, -1i, -5.0, -1i,  //
                       0.0, 8.0, 1i, -5.0, 1i, -5.0,    //
                       -5.0, -1i, 8.0, 0.0, 0.0, 4i,    //
                       1i, -5.0, 0.0, 8.0, -4i, 0.0,    //
                       -5.0, -1i, 0.0, 4i, 8.0, 0.0,    //
                       1i, -5.0, -4i, 0.0, 0.0, 8.0});
}

Mat g1_basis() {
  return from_rows(6, {1, 0, 1, 0, 1, 0,  //
                       0, 1, 0, 1, 0, 1,  //
                       0, 0, 1, 0, 0, 0,  //
                       0, 0, 0, 1, 0, 0,  //
                       0, 0, 0, 0, 1, 0,  //
                       0, 0, 0, 0, 0, 1});
}

Mat g1_basis_q_basis() {
  return from_rows(6,
                   {4.0, 4i, 3.0, 3i, 3.0, 3i,     //
                    -4i, 4.0, -3i, 3.0, -3i, 3.0,  //
                    3.0, 3i, 8.0, 0.0, 0.0, 4i,    //
                    -3i, 3.0, 0.0, 8.0, -4i, 0.0,  //
                    3.0, 3i, 0.0, 4i, 8.0, 0.0,    //
                    -3i, 3.0, -4i, 0.0, 0.0, 8.0},
                   0.5);
}

Mat g1_curvature() {
  return from_rows(4,
                   {23.0, -9i, -9.0, 7i,   //
                    9i, 23.0, -7i, -9.0,   //
                    -9.0, 7i, 23.0, -9i,   //
                    -7i, -9.0, 9i, 23.0},
                   1.0 / 8.0);
}

Mat strip_gamma() {
  return from_rows(5, {8, 2, -2, -2, 2,  //
                       2, 2, 0, 0, 0,    //
                       -2, 0, 2, 0, 0,   //
                       -2, 0, 0, 2, 0,   //
                       2, 0, 0, 0, 2});
}

Mat strip_gamma2() {
  return from_rows(9, {28, 11, -12, -12, 11, 1, -2, -2, 1,  //
                       11, 11, -6, -2, 2, 2, -2, 0, 0,      //
                       -12, -6, 12, 6, -2, 0, 2, 0, 0,      //
                       -12, -2, 6, 12, -6, 0, 0, 2, 0,      //
                       11, 2, -2, -6, 11, 0, 0, -2, 2,      //
                       1, 2, 0, 0, 0, 1, 0, 0, 0,           //
                       -2, -2, 2, 0, 0, 0, 2, 0, 0,         //
                       -2, 0, 0, 2, -2, 0, 0, 2, 0,         //
                       1, 0, 0, 0, 2, 0, 0, 0, 1});
}

Mat strip_basis() {
  return from_rows(5, {1, -1, 1, 1, -1,  //
                       0, 1, 0, 0, 0,    //
                       0, 0, 1, 0, 0,    //
                       0, 0, 0, 1, 0,    //
                       0, 0, 0, 0, 1});
}

Mat strip_curvature() {
  return from_rows(4,
                   {7, -2, 2, 1,  //
                    -2, 8, 0, 2,  //
                    2, 0, 8, -2,  //
                    1, 2, -2, 7},
                   0.25);
}

Mat g2_curvature() { return from_rows(3, {5, 3, 0, 3, 1, 4, 0, 4, 6}, 0.25); }

Mat g2_triangle_curvature() {
  return from_rows(5,
                   {19, -15, -9, -9, 0,  //
                    -15, 19, 9, 9, 0,    //
                    -9, 9, 19, 15, 0,    //
                    -9, 9, 15, 11, 8,    //
                    0, 0, 0, 8, 12},
                   0.125);
}

}  // namespace printed

namespace {

class Checker {
 public:
  explicit Checker(double tol) : tol_(tol) {}

  void value(const std::string& name, double got, double want, double tol) {
    std::ostringstream os;
    os.precision(12);
    os << "got " << got << ", expected " << want << " (tol " << tol << ")";
    results_.push_back({name, std::abs(got - want) <= tol, os.str()});
  }
  void exact(const std::string& name, double got, double want) { value(name, got, want, tol_); }
  void matrix(const std::string& name, const Mat& got, const Mat& want) {
    std::ostringstream os;
    bool ok = got.rows() == want.rows() && got.cols() == want.cols();
    if (ok) {
      const double err = max_abs(got - want);
      ok = err <= 1e-12;
      os << "max entry error " << err << " (tol 1e-12)";
    } else {
      os << "shape " << got.rows() << "x" << got.cols() << " vs " << want.rows() << "x" << want.cols();
    }
    results_.push_back({name, ok, os.str()});
  }
  void flag(const std::string& name, bool ok, const std::string& detail) { results_.push_back({name, ok, detail}); }
  // Runs a block and records any exception as a failure.
  void guard(const std::string& name, const std::function<void()>& body) {
    try {
      body();
    } catch (const std::exception& e) {
      results_.push_back({name, false, std::string("exception: ") + e.what()});
    }
  }

  std::vector<ExampleResult> take() { return std::move(results_); }

 private:
  double tol_;
  std::vector<ExampleResult> results_;
};

double k_inf(const ConnectionGraph& g, const std::string& x) { return curvature(local_structure(g, x), kInf).K; }

}  // namespace

std::vector<ExampleResult> run_examples(double tol) {
  Checker c(tol);

  c.guard("g1_u2", [&] {
    const LocalStructure l = local_structure(fixtures::g1_u2(), "1");
    c.flag("g1_u2.local", l.m == 2 && l.n == 1 && l.dx_over_mux == 2.0, "m=2, n=1, d_x/mu_x=2");
    c.flag("g1_u2.unbalanced", !is_locally_balanced(l), "locally unbalanced at 1");
    c.matrix("g1_u2.gamma", gamma_matrix(l).mat(), printed::g1_gamma());
    c.matrix("g1_u2.gamma2", gamma2_matrix(l).mat(), printed::g1_gamma2());
    c.matrix("g1_u2.q", q_matrix(l).mat(), printed::g1_q());
    const Mat B = canonical_basis(l);
    c.matrix("g1_u2.basis", B, printed::g1_basis());
    c.matrix("g1_u2.basis_q_basis", B * (q_matrix(l).mat() / 2.0) * B.adjoint(), printed::g1_basis_q_basis());
    const HermitianMatrix a = curvature_matrix(l, kInf);
    c.matrix("g1_u2.curvature_matrix", a.mat(), printed::g1_curvature());
    const Eigen::VectorXd ev = eigenvalues(a);
    const double want[] = {1.5, 2.0, 2.0, 6.0};
    for (int i = 0; i < 4; ++i) c.exact("g1_u2.eigenvalue" + std::to_string(i), ev(i), want[i]);
    c.exact("g1_u2.K", curvature(l, kInf).K, 1.5);
  });

  c.guard("single_edge", [&] {
    const LocalStructure l = local_structure(fixtures::single_edge(), "x");
    c.flag("single_edge.local", l.m == 1 && l.n == 0, "m=1, n=0");
    const double k = curvature(l, kInf).K;
    c.value("single_edge.oracle", curvature_oracle(l, kInf), k, 1e-8);
  });

  c.guard("strip", [&] {
    const LocalStructure l = local_structure(fixtures::positive_strip_ball(), "1");
    c.flag("strip.local", l.m == 4 && l.n == 4, "m=4, n=4");
    c.matrix("strip.gamma", 2.0 * gamma_matrix(l).mat(), printed::strip_gamma());
    c.matrix("strip.gamma2", gamma2_matrix(l).mat(), printed::strip_gamma2());
    c.matrix("strip.basis", canonical_basis(l), printed::strip_basis());
    c.matrix("strip.curvature_matrix", curvature_matrix(l, kInf).mat(), printed::strip_curvature());
    const double k = curvature(l, kInf).K;
    c.exact("strip.K", k, (7.0 - std::sqrt(17.0)) / 4.0);
    c.flag("strip.K_positive", k > 0.0, "K > 0");
  });

  c.guard("signed", [&] {
    c.exact("signed_triangle.K", k_inf(fixtures::signed_triangle(), "A"), 0.5);
    c.exact("signed_diamond.K", k_inf(fixtures::signed_diamond(), "1"), 1.5);
    c.exact("u2_triangle.K", k_inf(fixtures::u2_triangle(), "A"), 0.5);
    c.exact("u2_diamond.K", k_inf(fixtures::u2_diamond(), "1"), 1.5);
    c.exact("g5.K", k_inf(fixtures::g5(), "1"), 2.0);
    c.flag("signed_diamond.unbalanced", !is_locally_balanced(local_structure(fixtures::signed_diamond(), "1")),
           "locally unbalanced at 1");
  });

  c.guard("edits", [&] {
    const Mat minus = -Mat::Identity(1, 1);
    const auto r3 = add_spherical_edge(fixtures::g3(), "1", "3", "4", 1.0, minus);
    c.value("g3.K", r3.second.before, -0.569, 1e-3);
    c.value("g3_tilde.K", r3.second.after, 0.36, 1e-3);
    c.value("g3_tilde.K_direct", k_inf(fixtures::g3_tilde(), "1"), r3.second.after, tol);
    const auto r4 = add_spherical_edge(fixtures::g4(), "1", "2", "3", 1.0, minus);
    c.exact("g4.K", r4.second.before, 0.0);
    c.exact("g4_tilde.K", r4.second.after, 0.0);
    const auto r5 = add_spherical_edge(fixtures::g5(), "1", "2", "3", 1.0, minus);
    c.exact("g5.K_before", r5.second.before, 2.0);
    c.exact("g5_tilde.K", r5.second.after, 1.5);
  });

  c.guard("products", [&] {
    const ProductSpec unit{1.0, 1.0, Lift::same_dimension};
    const ConnectionGraph sd = cartesian_product(fixtures::signed_triangle(), fixtures::signed_diamond(), unit);
    c.exact("signed_triangle_x_diamond.K", k_inf(sd, product_vertex("A", "1")), 0.5);

    const LocalStructure l2 = local_structure(fixtures::g2(), "1");
    c.matrix("g2.curvature_matrix", curvature_matrix(l2, kInf).mat(), printed::g2_curvature());
    c.value("g2.K", curvature(l2, kInf).K, -0.5502, 1e-3);
    const ConnectionGraph gt = cartesian_product(fixtures::g2(), fixtures::signed_triangle(), unit);
    const LocalStructure lp = local_structure(gt, product_vertex("1", "A"));
    c.matrix("g2_x_triangle.curvature_matrix", curvature_matrix(lp, kInf).mat(), printed::g2_triangle_curvature());
    c.value("g2_x_triangle.K", curvature(lp, kInf).K, -0.454, 1e-3);

    c.flag("u2_pair.noncommuting", !signature_groups_commute(fixtures::u2_triangle(), fixtures::u2_diamond()),
           "connections of the U(2) triangle and diamond do not commute");
    const ConnectionGraph uu = cartesian_product(fixtures::u2_triangle(), fixtures::u2_diamond(), unit);
    const LocalStructure lu = local_structure(uu, product_vertex("A", "1"));
    c.value("u2_pair.gamma2_min_eig", eigenvalues(gamma2_matrix(lu))(0), -0.7660, 1e-3);
    const double k = curvature(lu, kInf).K;
    std::ostringstream os;
    os << "K = " << k;
    c.flag("u2_pair.K_negative", k < 0.0, os.str());
  });

  return c.take();
}

}  // namespace conncurv
