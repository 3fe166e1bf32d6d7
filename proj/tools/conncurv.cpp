// Command-line front end for the connection graph curvature library.

#include "conncurv/curvature.hpp"
#include "conncurv/errors.hpp"
#include "conncurv/fixtures.hpp"
#include "conncurv/graph.hpp"
#include "conncurv/local_ops.hpp"
#include "conncurv/operators.hpp"
#include "conncurv/product.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace conncurv;
using json = nlohmann::ordered_json;

namespace {

std::string fixed9(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::ostringstream os;
  os << std::fixed << std::setprecision(9) << (std::abs(v) < 5e-10 ? 0.0 : v);
  return os.str();
}

double parse_n(const std::string& s) {
  if (s == "inf" || s == "Inf" || s == "infinity") return kInf;
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw ValidationError("cannot parse N value '" + s + "'");
  }
  if (pos != s.size() || !(v > 0.0)) throw ValidationError("N must be a positive number or inf, got '" + s + "'");
  return v;
}

json n_json(double N) { return std::isinf(N) ? json("inf") : json(N); }

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// 64-bit FNV-1a.
std::string digest(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

// "p/q" for q <= 16 when exact within 1e-9, 9 decimals otherwise.
std::string rational(double v) {
  for (int q = 1; q <= 16; ++q) {
    const double p = std::round(v * q);
    if (std::abs(v * q - p) <= 1e-9 * q) {
      const long long pi = static_cast<long long>(p);
      if (pi == 0) return "0";
      return q == 1 ? std::to_string(pi) : std::to_string(pi) + "/" + std::to_string(q);
    }
  }
  return fixed9(v);
}

std::string entry_text(cplx z) {
  const bool has_im = std::abs(z.imag()) > 1e-12;
  const bool has_re = std::abs(z.real()) > 1e-12;
  if (!has_im) return rational(z.real());
  std::string im = rational(z.imag()) + "i";
  if (!has_re) return im;
  return rational(z.real()) + (z.imag() < 0 ? "" : "+") + im;
}

std::string matrix_text(const Mat& m) {
  std::vector<std::vector<std::string>> cells(m.rows(), std::vector<std::string>(m.cols()));
  std::size_t width = 1;
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) {
      cells[i][j] = entry_text(m(i, j));
      width = std::max(width, cells[i][j].size());
    }
  std::ostringstream os;
  for (const auto& row : cells) {
    os << " ";
    for (const auto& c : row) os << " " << std::setw(static_cast<int>(width)) << c;
    os << "\n";
  }
  return os.str();
}

json matrix_json(const Mat& m) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
    rows.push_back(row);
  }
  return rows;
}

Mat parse_sigma(const std::string& text, int d) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("--sigma is not valid JSON: ") + e.what());
  }
  auto entry = [](const json& e) -> cplx {
    if (e.is_number()) return {e.get<double>(), 0.0};
    if (e.is_array() && e.size() == 2) return {e[0].get<double>(), e[1].get<double>()};
    throw ValidationError("--sigma entries must be numbers or [re, im]");
  };
  if (d == 1 && (j.is_number() || (j.is_array() && j.size() == 2 && j[0].is_number())))
    return Mat::Constant(1, 1, entry(j));
  if (!j.is_array() || static_cast<int>(j.size()) != d) throw ValidationError("--sigma must be a d x d matrix");
  Mat m(d, d);
  for (int r = 0; r < d; ++r) {
    if (!j[r].is_array() || static_cast<int>(j[r].size()) != d) throw ValidationError("--sigma must be a d x d matrix");
    for (int c = 0; c < d; ++c) m(r, c) = entry(j[r][c]);
  }
  return m;
}

double env_tolerance() {
  const char* s = std::getenv("CURV_TOL");
  if (s == nullptr || *s == '\0') return 1e-9;
  char* end = nullptr;
  const double v = std::strtod(s, &end);
  if (end == s || *end != '\0' || !(v > 0.0)) throw ValidationError(std::string("CURV_TOL must be a positive number, got ") + s);
  return v;
}

struct Report {
  json doc;
  std::ostringstream text;
};

struct Loaded {
  ConnectionGraph graph;
  std::string path;
  std::string hash;
};

// Records the input digest before parsing so failed loads still report it.
Loaded load(const std::string& path, Report& r) {
  const std::string bytes = read_file(path);
  const std::string hash = digest(bytes);
  r.doc["inputs"][path] = hash;
  return {load_graph(bytes), path, hash};
}

void write_graph(const ConnectionGraph& g, const std::string& out, Report& r) {
  if (out.empty()) return;
  std::ofstream f(out);
  if (!f) throw ValidationError("cannot write " + out);
  f << to_json(g) << "\n";
  r.doc["result"]["written"] = out;
  r.text << "wrote " << out << "\n";
}

void report_edit(const EditReport& e, Report& r) {
  json& res = r.doc["result"];
  res["vertex"] = e.vertex;
  res["N"] = n_json(e.N);
  res["K_before"] = e.before;
  res["K_after"] = e.after;
  res["s1_in_regular"] = e.s1_in_regular;
  if (e.delta_psd) res["gamma2_difference_psd"] = *e.delta_psd;
  r.text << "vertex " << e.vertex << "  N = inf\n";
  r.text << "K before = " << fixed9(e.before) << "\n";
  r.text << "K after  = " << fixed9(e.after) << "\n";
  r.text << "S1-in regular: " << (e.s1_in_regular ? "yes" : "no") << "\n";
  if (e.delta_psd) r.text << "Gamma_2 difference PSD: " << (*e.delta_psd ? "yes" : "no") << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bakry-Emery curvature of connection graphs via curvature matrices"};
  app.require_subcommand(1);
  bool as_json = false;
  std::uint64_t seed = 0;
  app.add_flag("--json", as_json, "Emit the report as JSON");
  app.add_option("--seed", seed, "Seed for every randomized step")->capture_default_str();

  std::string graph_path, graph2_path, vertex, n_text = "inf", grid_text, out_path, decompose, n_pair = "inf,inf";
  std::string yi, yj, zk, zl, sigma_text;
  bool oracle = false, show_matrix = false, tensor_lift_flag = false;
  double alpha = 1.0, beta = 1.0, weight = 1.0;

  auto* validate = app.add_subcommand("validate", "Check a graph document against the schema and invariants");
  validate->add_option("graph", graph_path)->required();

  auto* curv = app.add_subcommand("curvature", "Curvature K(N) at a vertex");
  curv->add_option("graph", graph_path)->required();
  curv->add_option("--vertex", vertex)->required();
  curv->add_option("--N", n_text, "Dimension parameter (number or inf)")->capture_default_str();
  curv->add_flag("--oracle", oracle, "Cross-check against the bisection oracle");
  curv->add_flag("--matrix", show_matrix, "Print the curvature matrix");

  auto* prof = app.add_subcommand("profile", "Curvature function on a grid of N values");
  prof->add_option("graph", graph_path)->required();
  prof->add_option("--vertex", vertex)->required();
  prof->add_option("--grid", grid_text, "Comma separated ascending N values, inf allowed last")->required();

  auto* prod = app.add_subcommand("product", "Weighted Cartesian product");
  prod->add_option("graph", graph_path)->required();
  prod->add_option("graph2", graph2_path)->required();
  prod->add_option("--alpha", alpha)->capture_default_str();
  prod->add_option("--beta", beta)->capture_default_str();
  prod->add_flag("--tensor", tensor_lift_flag, "Lift connections to sigma (x) I and I (x) sigma'");
  prod->add_option("--out", out_path, "Write the product graph here");
  prod->add_option("--decompose", decompose, "X,X' vertex pair for the R/J decomposition");
  prod->add_option("--N", n_pair, "N,N' for the decomposition")->capture_default_str();

  auto* bal = app.add_subcommand("balance", "Local balancedness at a vertex");
  bal->add_option("graph", graph_path)->required();
  bal->add_option("--vertex", vertex)->required();

  auto* add = app.add_subcommand("add-edge", "Add an edge inside the 1-sphere of a vertex");
  add->add_option("graph", graph_path)->required();
  add->add_option("--vertex", vertex)->required();
  add->add_option("--yi", yi)->required();
  add->add_option("--yj", yj)->required();
  add->add_option("--sigma", sigma_text, "Connection yi -> yj as JSON (default closes a balanced triangle)");
  add->add_option("--weight", weight)->capture_default_str();
  add->add_option("--out", out_path);

  auto* merge = app.add_subcommand("merge", "Merge two 2-sphere vertices without common neighbors");
  merge->add_option("graph", graph_path)->required();
  merge->add_option("--vertex", vertex)->required();
  merge->add_option("--zk", zk)->required();
  merge->add_option("--zl", zl)->required();
  merge->add_option("--out", out_path);

  auto* examples = app.add_subcommand("examples", "Reproduce every reference example");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  Report r;
  json cmd = json::array();
  for (int i = 1; i < argc; ++i) cmd.push_back(argv[i]);
  r.doc["command"] = cmd;
  r.doc["inputs"] = json::object();
  int exit_code = 0;

  try {
    const double tol = env_tolerance();
    r.doc["tolerance"] = tol;
    r.doc["seed"] = seed;
    r.doc["result"] = json::object();
    json& res = r.doc["result"];

    if (*validate) {
      const Loaded g = load(graph_path, r);
      res["valid"] = true;
      res["dimension"] = g.graph.dimension();
      res["field"] = g.graph.field() == Field::real ? "real" : "complex";
      res["vertices"] = g.graph.vertices().size();
      res["edges"] = g.graph.edges().size();
      r.text << "valid: d = " << g.graph.dimension() << ", " << g.graph.vertices().size() << " vertices, "
             << g.graph.edges().size() << " edges\n";
    } else if (*curv) {
      const Loaded g = load(graph_path, r);
      const double N = parse_n(n_text);
      const LocalStructure l = local_structure(g.graph, vertex);
      const Mat B = seed == 0 ? canonical_basis(l) : general_basis(l, seed);
      const HermitianMatrix a = curvature_matrix(l, N, B);
      const MinEig e = min_eig_hermitian(a);
      res["vertex"] = vertex;
      res["N"] = n_json(N);
      res["K"] = e.value;
      res["multiplicity"] = e.multiplicity;
      r.text << "vertex " << vertex << "  N = " << fixed9(N) << "\n";
      r.text << "K = " << fixed9(e.value) << "\n";
      r.text << "multiplicity = " << e.multiplicity << "\n";
      if (show_matrix) {
        res["curvature_matrix"] = matrix_json(a.mat());
        r.text << "A_N =\n" << matrix_text(a.mat());
      }
      if (oracle) {
        const double o = curvature_oracle(l, N);
        const double gap = std::abs(o - e.value);
        res["oracle"] = o;
        res["oracle_gap"] = gap;
        r.text << "oracle = " << fixed9(o) << "  gap = " << std::scientific << std::setprecision(2) << gap
               << std::defaultfloat << "\n";
        // Bisection stops at 1e-10; agreement is judged at 10x the tolerance.
        if (gap > 10.0 * tol) {
          std::ostringstream os;
          os << "oracle disagrees with the curvature matrix by " << gap << " (tolerance " << 10.0 * tol << ")";
          throw CrossCheckError(os.str());
        }
      }
    } else if (*prof) {
      const Loaded g = load(graph_path, r);
      std::vector<double> grid;
      for (const auto& s : split(grid_text, ',')) grid.push_back(parse_n(s));
      const CurvatureProfile p = curvature_profile(local_structure(g.graph, vertex), grid);
      json samples = json::array();
      r.text << std::setw(16) << "N" << std::setw(16) << "K" << std::setw(6) << "mult" << "\n";
      for (const auto& s : p.samples) {
        samples.push_back({{"N", n_json(s.N)}, {"K", s.K}, {"multiplicity", s.multiplicity}});
        r.text << std::setw(16) << fixed9(s.N) << std::setw(16) << fixed9(s.K) << std::setw(6) << s.multiplicity << "\n";
      }
      res["vertex"] = vertex;
      res["samples"] = samples;
      res["constant_from"] = p.constant_from ? n_json(*p.constant_from) : json(nullptr);
      if (p.constant_from) r.text << "constant from N = " << fixed9(*p.constant_from) << "\n";
    } else if (*prod) {
      const Loaded g = load(graph_path, r);
      const Loaded g2 = load(graph2_path, r);
      const ProductSpec spec{alpha, beta, tensor_lift_flag ? Lift::tensor : Lift::same_dimension};
      const ConnectionGraph p = cartesian_product(g.graph, g2.graph, spec);
      res["vertices"] = p.vertices().size();
      res["edges"] = p.edges().size();
      res["dimension"] = p.dimension();
      r.text << "product: d = " << p.dimension() << ", " << p.vertices().size() << " vertices, " << p.edges().size()
             << " edges\n";
      write_graph(p, out_path, r);
      if (!decompose.empty()) {
        const auto xs = split(decompose, ',');
        const auto ns = split(n_pair, ',');
        if (xs.size() != 2) throw ValidationError("--decompose expects X,X'");
        if (ns.size() != 2) throw ValidationError("--N expects N,N'");
        const ProductDecomposition dcmp =
            product_decomposition(g.graph, g2.graph, spec, xs[0], xs[1], parse_n(ns[0]), parse_n(ns[1]));
        res["decomposition"] = {{"vertex", product_vertex(xs[0], xs[1])},
                                {"residual", dcmp.residual},
                                {"r_min_eig", dcmp.r_min_eig},
                                {"j_min_eig", dcmp.j_min_eig},
                                {"R", matrix_json(dcmp.r.mat())},
                                {"J", matrix_json(dcmp.j.mat())}};
        r.text << "decomposition at " << product_vertex(xs[0], xs[1]) << "\n";
        r.text << "residual = " << std::scientific << std::setprecision(2) << dcmp.residual << std::defaultfloat << "\n";
        r.text << "lambda_min(R) = " << fixed9(dcmp.r_min_eig) << "\n";
        r.text << "lambda_min(J) = " << fixed9(dcmp.j_min_eig) << "\n";
        r.text << "R =\n" << matrix_text(dcmp.r.mat()) << "J =\n" << matrix_text(dcmp.j.mat());
      }
    } else if (*bal) {
      const Loaded g = load(graph_path, r);
      const bool b = is_locally_balanced(local_structure(g.graph, vertex));
      res["vertex"] = vertex;
      res["locally_balanced"] = b;
      r.text << "vertex " << vertex << ": " << (b ? "locally balanced" : "locally unbalanced") << "\n";
    } else if (*add) {
      const Loaded g = load(graph_path, r);
      std::optional<Mat> sigma;
      if (!sigma_text.empty()) sigma = parse_sigma(sigma_text, g.graph.dimension());
      const auto [out, e] = add_spherical_edge(g.graph, vertex, yi, yj, weight, sigma);
      report_edit(e, r);
      write_graph(out, out_path, r);
    } else if (*merge) {
      const Loaded g = load(graph_path, r);
      const auto [out, e] = merge_s2(g.graph, vertex, zk, zl);
      report_edit(e, r);
      write_graph(out, out_path, r);
    } else if (*examples) {
      json rows = json::array();
      int failed = 0;
      for (const auto& ex : run_examples(tol)) {
        rows.push_back({{"name", ex.name}, {"pass", ex.pass}, {"detail", ex.detail}});
        r.text << (ex.pass ? "PASS " : "FAIL ") << ex.name << "  " << ex.detail << "\n";
        failed += ex.pass ? 0 : 1;
      }
      res["examples"] = rows;
      res["failed"] = failed;
      r.text << (failed == 0 ? "all examples pass" : std::to_string(failed) + " example(s) failed") << "\n";
      if (failed > 0) exit_code = 2;
    }
  } catch (const CrossCheckError& e) {
    r.doc["error"] = {{"kind", "cross-check"}, {"message", e.what()}};
    r.text << "cross-check failure: " << e.what() << "\n";
    exit_code = 2;
  } catch (const ValidationError& e) {
    r.doc["error"] = {{"kind", "validation"}, {"message", e.what()}};
    r.text << "validation error: " << e.what() << "\n";
    exit_code = 1;
  } catch (const std::invalid_argument& e) {
    r.doc["error"] = {{"kind", "validation"}, {"message", e.what()}};
    r.text << "validation error: " << e.what() << "\n";
    exit_code = 1;
  }
  r.doc["exit_code"] = exit_code;

  std::ostream& os = exit_code == 0 || as_json ? std::cout : std::cerr;
  if (as_json) {
    os << r.doc.dump(2) << "\n";
  } else {
    os << r.text.str();
  }
  return exit_code;
}
