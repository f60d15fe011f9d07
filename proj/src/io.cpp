#include "steklab/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace steklab {

namespace {

using nlohmann::json;

[[noreturn]] void reject(const std::string& msg) { throw std::invalid_argument(msg); }

json parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) reject("cannot open '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    reject("cannot parse '" + path + "': " + e.what());
  }
  return j;
}

void dump_file(const json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) reject("cannot write '" + path + "'");
  out << j.dump(2) << "\n";
}

}  // namespace

// --- meshes -----------------------------------------------------------------

Mesh load_mesh(const std::string& path) {
  json j = parse_file(path);
  Mesh m;
  try {
    for (const auto& v : j.at("vertices")) {
      m.vertices.push_back({v.at(0).get<double>(), v.at(1).get<double>()});
    }
    for (const auto& t : j.at("triangles")) {
      m.triangles.push_back({t.at(0).get<int>(), t.at(1).get<int>(), t.at(2).get<int>()});
    }
    for (const auto& b : j.at("boundary")) {
      BoundaryEdge e;
      e.a = b.at("edge").at(0).get<int>();
      e.b = b.at("edge").at(1).get<int>();
      std::string marker = b.at("marker").get<std::string>();
      if (marker == "S") {
        e.marker = Marker::Steklov;
      } else if (marker == "N") {
        e.marker = Marker::Neumann;
      } else {
        reject("mesh file '" + path + "': marker must be \"S\" or \"N\"");
      }
      e.component = b.at("component").get<int>();
      m.boundary.push_back(e);
    }
  } catch (const json::exception& e) {
    reject("mesh file '" + path + "' is malformed: " + e.what());
  }
  m.validate();
  return m;
}

void save_mesh(const Mesh& mesh, const std::string& path) {
  json j;
  j["vertices"] = json::array();
  for (const Vec2& v : mesh.vertices) j["vertices"].push_back({v.x, v.y});
  j["triangles"] = json::array();
  for (const auto& t : mesh.triangles) j["triangles"].push_back({t[0], t[1], t[2]});
  j["boundary"] = json::array();
  for (const BoundaryEdge& b : mesh.boundary) {
    j["boundary"].push_back({{"edge", {b.a, b.b}},
                             {"marker", b.marker == Marker::Steklov ? "S" : "N"},
                             {"component", b.component}});
  }
  dump_file(j, path);
}

// --- densities --------------------------------------------------------------

DensitySpec load_density(const std::string& path) {
  json j = parse_file(path);
  DensitySpec d;
  try {
    for (const auto& g : j.at("gamma")) d.gamma.push_back(g.get<double>());
    for (const auto& r : j.at("rho")) d.rho.push_back(r.get<double>());
  } catch (const json::exception& e) {
    reject("density file '" + path + "' is malformed: " + e.what());
  }
  return d;
}

void save_density(const DensitySpec& density, const std::string& path) {
  json j;
  j["gamma"] = density.gamma;
  j["rho"] = density.rho;
  dump_file(j, path);
}

// --- metric graphs ----------------------------------------------------------

MetricGraph load_graph(const std::string& path) {
  json j = parse_file(path);
  MetricGraph g;
  try {
    g.n = j.at("n").get<int>();
    for (const auto& e : j.at("edges")) {
      g.edges.push_back({e.at(0).get<int>(), e.at(1).get<int>(), e.at(2).get<double>()});
    }
    if (j.contains("mu")) g.mu = j.at("mu").get<std::vector<double>>();
    if (j.contains("V")) g.potential = j.at("V").get<std::vector<double>>();
  } catch (const json::exception& e) {
    reject("graph file '" + path + "' is malformed: " + e.what());
  }
  g.validate();
  return g;
}

void save_graph(const MetricGraph& graph, const std::string& path) {
  json j;
  j["n"] = graph.n;
  j["edges"] = json::array();
  for (const auto& e : graph.edges) j["edges"].push_back({json(e.u), json(e.v), json(e.length)});
  if (!graph.mu.empty()) j["mu"] = graph.mu;
  if (!graph.potential.empty()) j["V"] = graph.potential;
  dump_file(j, path);
}

// --- certificates -----------------------------------------------------------

EmbeddingCertificate load_certificate(const std::string& path) {
  json j = parse_file(path);
  EmbeddingCertificate cert;
  try {
    int n = j.at("n").get<int>();
    cert.rs.graph.n = n;
    cert.rs.rotation.resize(n);
    const auto& rotations = j.at("rotations");
    if ((int)rotations.size() != n) {
      reject("certificate '" + path + "': need one rotation per vertex");
    }
    for (int v = 0; v < n; ++v) {
      for (const auto& w : rotations.at(v)) cert.rs.rotation[v].push_back(w.get<int>() - 1);
    }
    for (const auto& [key, value] : j.at("signs").items()) {
      auto dash = key.find('-');
      if (dash == std::string::npos) reject("certificate '" + path + "': sign key must be \"u-v\"");
      int u = std::stoi(key.substr(0, dash)) - 1;
      int v = std::stoi(key.substr(dash + 1)) - 1;
      if (u > v) std::swap(u, v);
      cert.rs.graph.edges.push_back({u, v});
      cert.rs.edge_sign[{u, v}] = value.get<int>();
    }
    std::sort(cert.rs.graph.edges.begin(), cert.rs.graph.edges.end());
    for (const auto& f : j.at("removed_faces")) {
      Face face;
      for (const auto& v : f) face.push_back(v.get<int>() - 1);
      cert.removed_faces.push_back(face);
    }
    const auto& claims = j.at("claims");
    cert.claims.chi = claims.at("chi").get<int>();
    cert.claims.orientable = claims.at("orientable").get<bool>();
    cert.claims.p = claims.at("p").get<int>();
  } catch (const json::exception& e) {
    reject("certificate '" + path + "' is malformed: " + e.what());
  }
  cert.rs.validate();
  return cert;
}

void save_certificate(const EmbeddingCertificate& cert, const std::string& path) {
  json j;
  j["n"] = cert.rs.graph.n;
  j["rotations"] = json::array();
  for (const auto& rot : cert.rs.rotation) {
    json row = json::array();
    for (int w : rot) row.push_back(w + 1);
    j["rotations"].push_back(row);
  }
  j["signs"] = json::object();
  for (const auto& [edge, s] : cert.rs.edge_sign) {
    j["signs"][std::to_string(edge.first + 1) + "-" + std::to_string(edge.second + 1)] = s;
  }
  j["removed_faces"] = json::array();
  for (const Face& f : cert.removed_faces) {
    json row = json::array();
    for (int v : f) row.push_back(v + 1);
    j["removed_faces"].push_back(row);
  }
  j["claims"] = {{"chi", cert.claims.chi},
                 {"orientable", cert.claims.orientable},
                 {"p", cert.claims.p}};
  dump_file(j, path);
}

// --- CSV --------------------------------------------------------------------

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string spectrum_csv(const SpectrumResult& spectrum) {
  std::ostringstream out;
  out << "k,sigma,cluster\n";
  for (size_t k = 0; k < spectrum.eigenvalues.size(); ++k) {
    out << k << "," << format_double(spectrum.eigenvalues[k]) << ","
        << spectrum.cluster_of[k] << "\n";
  }
  return out.str();
}

std::string convergence_csv(const ConvergenceStudy& study) {
  std::ostringstream out;
  out << "epsilon,k,sigma,lambda_graph,abs_error\n";
  for (const ConvergenceRow& row : study.rows) {
    out << format_double(row.epsilon) << "," << row.k << "," << format_double(row.sigma)
        << "," << format_double(row.lambda_graph) << "," << format_double(row.abs_error)
        << "\n";
  }
  return out.str();
}

std::string nodal_csv(const NodalDecomposition& nodal) {
  std::ostringstream out;
  out << "triangle,domain,sign\n";
  for (size_t t = 0; t < nodal.triangle_domain.size(); ++t) {
    int d = nodal.triangle_domain[t];
    out << t << "," << d << "," << (int)nodal.domain_sign[d] << "\n";
  }
  return out.str();
}

// --- raw files --------------------------------------------------------------

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) reject("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) reject("cannot write '" + path + "'");
  out << content;
}

}  // namespace steklab
