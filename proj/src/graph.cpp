#include "conncurv/graph.hpp"

#include "conncurv/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <deque>
#include <fstream>
#include <set>
#include <sstream>

namespace conncurv {

namespace {

std::string edge_name(const std::string& u, const std::string& v) { return "(" + u + "," + v + ")"; }

}  // namespace

ConnectionGraph::ConnectionGraph(int dimension, Field field, std::vector<Vertex> vertices, std::vector<Edge> edges)
    : d_(dimension), field_(field), vertices_(std::move(vertices)), edges_(std::move(edges)) {
  if (d_ < 1) throw ValidationError("dimension must be a positive integer");
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    const Vertex& v = vertices_[i];
    if (!(v.measure > 0.0)) throw ValidationError("vertex " + v.id + ": measure must be strictly positive");
    if (!index_.emplace(v.id, i).second) throw ValidationError("duplicate vertex id " + v.id);
  }
  adj_.resize(vertices_.size());
  for (std::size_t k = 0; k < edges_.size(); ++k) {
    Edge& e = edges_[k];
    const std::string name = edge_name(e.u, e.v);
    if (!has_vertex(e.u) || !has_vertex(e.v)) throw ValidationError("edge " + name + ": unknown endpoint");
    if (e.u == e.v) throw ValidationError("edge " + name + ": self-loop");
    if (!(e.weight > 0.0)) throw ValidationError("edge " + name + ": weight must be strictly positive");
    if (e.sigma.size() == 0) e.sigma = Mat::Identity(d_, d_);
    if (e.sigma.rows() != d_ || e.sigma.cols() != d_) {
      throw ValidationError("edge " + name + ": connection is not " + std::to_string(d_) + "x" + std::to_string(d_));
    }
    if (field_ == Field::real) {
      const double im = e.sigma.imag().cwiseAbs().maxCoeff();
      if (im > 1e-9) throw ValidationError("edge " + name + ": complex entry in a real connection");
      e.sigma = e.sigma.real().cast<cplx>();
    }
    const double defect = unitarity_defect(e.sigma);
    if (defect > 1e-9) {
      std::ostringstream os;
      os << "edge " << name << ": connection is not unitary (deviation " << defect << " > 1e-9)";
      throw ValidationError(os.str());
    }
    if (defect > 1e-12) {
      e.sigma = polar_unitary(e.sigma);
      if (field_ == Field::real) e.sigma = e.sigma.real().cast<cplx>();
    }
    auto& au = adj_[index_.at(e.u)];
    auto& av = adj_[index_.at(e.v)];
    if (au.count(e.v)) throw ValidationError("edge " + name + ": duplicate edge");
    au.emplace(e.v, std::make_pair(k, true));
    av.emplace(e.u, std::make_pair(k, false));
  }
}

std::size_t ConnectionGraph::vertex_index(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw ValidationError("unknown vertex " + id);
  return it->second;
}

double ConnectionGraph::measure(const std::string& id) const { return vertices_[vertex_index(id)].measure; }

bool ConnectionGraph::adjacent(const std::string& u, const std::string& v) const {
  return adj_[vertex_index(u)].count(v) > 0;
}

double ConnectionGraph::weight(const std::string& u, const std::string& v) const {
  const auto& a = adj_[vertex_index(u)];
  auto it = a.find(v);
  return it == a.end() ? 0.0 : edges_[it->second.first].weight;
}

Mat ConnectionGraph::sigma(const std::string& u, const std::string& v) const {
  const auto& a = adj_[vertex_index(u)];
  auto it = a.find(v);
  if (it == a.end()) throw ValidationError("no edge " + edge_name(u, v));
  const Mat& s = edges_[it->second.first].sigma;
  return it->second.second ? s : Mat(s.adjoint());
}

std::vector<std::string> ConnectionGraph::neighbors(const std::string& u) const {
  std::vector<std::string> out;
  for (const auto& [v, _] : adj_[vertex_index(u)]) out.push_back(v);
  return out;
}

double ConnectionGraph::degree(const std::string& u) const {
  double s = 0.0;
  for (const auto& [v, ref] : adj_[vertex_index(u)]) s += edges_[ref.first].weight;
  return s;
}

// ---------------------------------------------------------------------------
// JSON

namespace {

cplx parse_entry(const nlohmann::json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw ValidationError("sigma entry must be [re, im]");
}

}  // namespace

ConnectionGraph load_graph(const std::string& json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed JSON: ") + e.what());
  }
  try {
    const int d = doc.at("dimension").get<int>();
    const std::string field_name = doc.value("field", std::string("complex"));
    Field field;
    if (field_name == "real") {
      field = Field::real;
    } else if (field_name == "complex") {
      field = Field::complex;
    } else {
      throw ValidationError("field must be \"real\" or \"complex\"");
    }
    std::vector<Vertex> vertices;
    for (const auto& jv : doc.at("vertices")) {
      vertices.push_back({jv.at("id").get<std::string>(), jv.value("measure", 1.0)});
    }
    std::vector<Edge> edges;
    for (const auto& je : doc.at("edges")) {
      Edge e;
      e.u = je.at("u").get<std::string>();
      e.v = je.at("v").get<std::string>();
      e.weight = je.value("weight", 1.0);
      const std::string name = edge_name(e.u, e.v);
      if (je.contains("sigma") && je.contains("sign")) throw ValidationError("edge " + name + ": both sigma and sign");
      if (je.contains("sign")) {
        if (d != 1) throw ValidationError("edge " + name + ": sign shorthand requires dimension 1");
        const double s = je.at("sign").get<double>();
        if (s != 1.0 && s != -1.0) throw ValidationError("edge " + name + ": sign must be 1 or -1");
        e.sigma = Mat::Constant(1, 1, cplx(s, 0.0));
      } else if (je.contains("sigma")) {
        const auto& js = je.at("sigma");
        if (!js.is_array() || static_cast<int>(js.size()) != d)
          throw ValidationError("edge " + name + ": dimension mismatch in sigma");
        e.sigma = Mat(d, d);
        for (int r = 0; r < d; ++r) {
          if (!js[r].is_array() || static_cast<int>(js[r].size()) != d)
            throw ValidationError("edge " + name + ": dimension mismatch in sigma");
          for (int c = 0; c < d; ++c) e.sigma(r, c) = parse_entry(js[r][c]);
        }
      }
      edges.push_back(std::move(e));
    }
    return ConnectionGraph(d, field, std::move(vertices), std::move(edges));
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("schema violation: ") + e.what());
  }
}

ConnectionGraph load_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return load_graph(ss.str());
}

std::string to_json(const ConnectionGraph& g) {
  nlohmann::ordered_json doc;
  doc["dimension"] = g.dimension();
  doc["field"] = g.field() == Field::real ? "real" : "complex";
  doc["vertices"] = nlohmann::ordered_json::array();
  for (const auto& v : g.vertices()) doc["vertices"].push_back({{"id", v.id}, {"measure", v.measure}});
  doc["edges"] = nlohmann::ordered_json::array();
  for (const auto& e : g.edges()) {
    nlohmann::ordered_json je = {{"u", e.u}, {"v", e.v}, {"weight", e.weight}};
    if (g.dimension() == 1 && g.field() == Field::real) {
      je["sign"] = e.sigma(0, 0).real() < 0 ? -1 : 1;
    } else {
      nlohmann::ordered_json rows = nlohmann::ordered_json::array();
      for (Index r = 0; r < e.sigma.rows(); ++r) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (Index c = 0; c < e.sigma.cols(); ++c) row.push_back({e.sigma(r, c).real(), e.sigma(r, c).imag()});
        rows.push_back(row);
      }
      je["sigma"] = rows;
    }
    doc["edges"].push_back(je);
  }
  return doc.dump(2);
}

// ---------------------------------------------------------------------------
// Local structure

std::string LocalStructure::id(int u) const {
  if (u == 0) return center;
  if (u <= m) return s1[static_cast<std::size_t>(u - 1)];
  return s2[static_cast<std::size_t>(u - 1 - m)];
}

LocalStructure local_structure(const ConnectionGraph& g, const std::string& x) {
  if (!g.has_vertex(x)) throw ValidationError("unknown vertex " + x);
  LocalStructure loc;
  loc.center = x;
  loc.d = g.dimension();
  loc.s1 = g.neighbors(x);
  if (loc.s1.empty()) throw ValidationError("vertex " + x + " is isolated; curvature is undefined");
  std::set<std::string> sphere2;
  for (const auto& y : loc.s1)
    for (const auto& z : g.neighbors(y))
      if (z != x && !std::binary_search(loc.s1.begin(), loc.s1.end(), z)) sphere2.insert(z);
  loc.s2.assign(sphere2.begin(), sphere2.end());
  loc.m = static_cast<int>(loc.s1.size());
  loc.n = static_cast<int>(loc.s2.size());
  loc.dx_over_mux = g.degree(x) / g.measure(x);

  const int size = loc.size();
  loc.p = Eigen::MatrixXd::Zero(size, size);
  loc.sigma_store.assign(static_cast<std::size_t>(size * size), Mat());
  std::map<std::string, int> local_index;
  for (int u = 0; u < size; ++u) local_index[loc.id(u)] = u;
  for (int u = 0; u < size; ++u) {
    const std::string uid = loc.id(u);
    for (const auto& vid : g.neighbors(uid)) {
      auto it = local_index.find(vid);
      if (it == local_index.end()) continue;
      const int v = it->second;
      if (u > loc.m && v > loc.m) continue;
      loc.p(u, v) = g.weight(uid, vid) / g.measure(uid);
      loc.sigma_store[static_cast<std::size_t>(u * size + v)] = g.sigma(uid, vid);
    }
  }
  return loc;
}

ConnectionGraph switch_graph(const ConnectionGraph& g, const std::map<std::string, Mat>& tau) {
  const int d = g.dimension();
  for (const auto& v : g.vertices()) {
    auto it = tau.find(v.id);
    if (it == tau.end()) throw ValidationError("switching function missing vertex " + v.id);
    if (it->second.rows() != d || it->second.cols() != d)
      throw ValidationError("switching function at " + v.id + " has wrong dimension");
    if (unitarity_defect(it->second) > 1e-9) throw ValidationError("switching function at " + v.id + " is not unitary");
  }
  std::vector<Edge> edges = g.edges();
  for (auto& e : edges) e.sigma = tau.at(e.u).adjoint() * e.sigma * tau.at(e.v);
  const bool stays_real = std::all_of(edges.begin(), edges.end(), [](const Edge& e) {
    return e.sigma.imag().cwiseAbs().maxCoeff() <= 1e-12;
  });
  const Field field = g.field() == Field::real && stays_real ? Field::real : Field::complex;
  return ConnectionGraph(d, field, g.vertices(), std::move(edges));
}

bool is_locally_balanced(const LocalStructure& local) {
  const int size = local.size();
  const int d = local.d;
  std::vector<Mat> tau(static_cast<std::size_t>(size));
  std::vector<int> parent(static_cast<std::size_t>(size), -2);
  tau[0] = Mat::Identity(d, d);
  parent[0] = -1;
  std::deque<int> queue{0};
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (int v = 0; v < size; ++v) {
      if (!local.linked(u, v) || parent[static_cast<std::size_t>(v)] != -2) continue;
      parent[static_cast<std::size_t>(v)] = u;
      tau[static_cast<std::size_t>(v)] = local.sigma(u, v).adjoint() * tau[static_cast<std::size_t>(u)];
      queue.push_back(v);
    }
  }
  const Mat eye = Mat::Identity(d, d);
  for (int u = 0; u < size; ++u) {
    for (int v = u + 1; v < size; ++v) {
      if (!local.linked(u, v)) continue;
      const Mat switched =
          tau[static_cast<std::size_t>(u)].adjoint() * local.sigma(u, v) * tau[static_cast<std::size_t>(v)];
      if (max_abs(switched - eye) > 1e-9) return false;
    }
  }
  return true;
}

bool signature_groups_commute(const ConnectionGraph& g, const ConnectionGraph& g2) {
  if (g.dimension() != g2.dimension()) throw ValidationError("signature_groups_commute: dimension mismatch");
  for (const auto& e : g.edges())
    for (const auto& f : g2.edges())
      if (max_abs(e.sigma * f.sigma - f.sigma * e.sigma) > 1e-9) return false;
  return true;
}

}  // namespace conncurv
