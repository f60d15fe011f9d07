#include <cmath>
#include <cstdio>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "steklab/io.hpp"

namespace {

using namespace steklab;

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::cout << content;
  } else {
    write_text_file(out_path, content);
  }
}

struct SpectrumArgs {
  std::string mesh_path, density_path, out_path;
  int k = 5;
  double rel_tol = 1e-2;
  int refine = 0;
};

void run_spectrum(const SpectrumArgs& a) {
  Mesh mesh = load_mesh(a.mesh_path);
  for (int i = 0; i < a.refine; ++i) mesh = refine_uniform(mesh);
  DensitySpec density =
      a.density_path.empty() ? DensitySpec::uniform(mesh) : load_density(a.density_path);
  SpectrumResult sr = solve_steklov_neumann(mesh, density, a.k, a.rel_tol);
  emit(a.out_path, spectrum_csv(sr));
}

struct ConvergeArgs {
  std::string graph_path, out_path;
  std::vector<double> epsilons;
  int k = 0;  // 0 = vertex count
  double disk_radius = 0.45;
  double mesh_h = 0.05;
  double layout_radius = 0.0;  // 0 = unit-edge default
};

void run_converge(const ConvergeArgs& a) {
  MetricGraph g = load_graph(a.graph_path);
  TubularParams base;
  base.disk_radius = a.disk_radius;
  base.mesh_h = a.mesh_h;
  double radius = a.layout_radius;
  if (radius <= 0) {
    // Regular polygon with unit side; a lone vertex sits at the origin.
    radius = (g.n > 1) ? 0.5 / std::sin(std::numbers::pi / g.n) : 1.0;
  }
  base.layout = polygon_layout(g.n, radius);
  if (g.n == 1) base.layout = {Vec2{0.0, 0.0}};
  int count = (a.k > 0) ? a.k : g.n;
  ConvergenceStudy study = convergence_study(g, base, a.epsilons, count);
  emit(a.out_path, convergence_csv(study));
}

struct ChromArgs {
  std::string surface, out_path;
  int p = 1;
};

void run_chrom(const ChromArgs& a) {
  SurfaceSignature sig = parse_surface(a.surface);
  auto [lo, up] = chr0_bounds(sig, a.p);
  std::optional<int> exact = chr0_exact(sig, a.p);
  nlohmann::json j;
  j["surface"] = a.surface;
  j["chi"] = sig.chi;
  j["orientable"] = sig.orientable;
  j["p"] = a.p;
  j["chr_closed"] = chr_closed(sig);
  j["bounds"] = {lo, up};
  if (exact) {
    j["exact"] = *exact;
  } else {
    j["exact"] = nullptr;
  }
  emit(a.out_path, j.dump(2) + "\n");
}

struct VerifyArgs {
  std::string cert_path, out_path;
};

void run_embed_verify(const VerifyArgs& a) {
  EmbeddingCertificate cert = load_certificate(a.cert_path);
  std::vector<Face> faces = trace_faces(cert.rs);
  SurfaceSignature sig = classify_surface(cert.rs);
  bool proper = verify_proper(cert);
  bool claims_match = sig.chi == cert.claims.chi &&
                      sig.orientable == cert.claims.orientable &&
                      (int)cert.removed_faces.size() == cert.claims.p;
  nlohmann::json j;
  j["n"] = cert.rs.graph.n;
  j["faces"] = faces.size();
  j["chi"] = sig.chi;
  j["orientable"] = sig.orientable;
  j["p"] = cert.removed_faces.size();
  j["proper"] = proper;
  j["claims_match"] = claims_match;
  emit(a.out_path, j.dump(2) + "\n");
}

struct NodalArgs {
  std::string mesh_path, density_path, out_path;
  int k = 1;
};

void run_nodal(const NodalArgs& a) {
  Mesh mesh = load_mesh(a.mesh_path);
  DensitySpec density =
      a.density_path.empty() ? DensitySpec::uniform(mesh) : load_density(a.density_path);
  SpectrumResult sr = solve_steklov_neumann(mesh, density, a.k);
  NodalDecomposition nd = nodal_domains(mesh, sr.eigenvectors.col(a.k));
  emit(a.out_path, nodal_csv(nd));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Steklov spectra, graph limits, and relative chromatic numbers"};
  app.require_subcommand(1);

  SpectrumArgs sa;
  CLI::App* spectrum = app.add_subcommand("spectrum", "Solve a Steklov(-Neumann) eigenproblem");
  spectrum->add_option("--mesh", sa.mesh_path, "mesh JSON file")->required();
  spectrum->add_option("--density", sa.density_path, "density JSON file (default uniform)");
  spectrum->add_option("--k", sa.k, "largest eigenvalue index (default 5)");
  spectrum->add_option("--rel-tol", sa.rel_tol, "clustering tolerance (default 1e-2)");
  spectrum->add_option("--refine", sa.refine, "uniform refinement levels before solving");
  spectrum->add_option("--out", sa.out_path, "output CSV path (default stdout)");

  ConvergeArgs ca;
  CLI::App* converge = app.add_subcommand("converge", "Graph-neighborhood convergence study");
  converge->add_option("--graph", ca.graph_path, "metric graph JSON file")->required();
  converge->add_option("--epsilons", ca.epsilons, "decreasing strip half-widths")
      ->required()
      ->delimiter(',');
  converge->add_option("--k", ca.k, "eigenvalue count (default: vertex count)");
  converge->add_option("--disk-radius", ca.disk_radius, "vertex half-disk radius (default 0.45)");
  converge->add_option("--mesh-h", ca.mesh_h, "target mesh size (default 0.05)");
  converge->add_option("--layout-radius", ca.layout_radius,
                       "circumradius of the polygon layout (default: unit sides)");
  converge->add_option("--out", ca.out_path, "output CSV path (default stdout)");

  ChromArgs ha;
  CLI::App* chrom = app.add_subcommand("chrom", "Relative chromatic numbers of a surface");
  chrom->add_option("--surface", ha.surface, "sphere|projective|klein|torus|genus2o|sum<k>P|sum<k>T")
      ->required();
  chrom->add_option("--p", ha.p, "number of boundary disks (default 1)");
  chrom->add_option("--out", ha.out_path, "output JSON path (default stdout)");

  VerifyArgs va;
  CLI::App* verify = app.add_subcommand("embed-verify", "Check a proper-embedding certificate");
  verify->add_option("--cert", va.cert_path, "certificate JSON file")->required();
  verify->add_option("--out", va.out_path, "output JSON path (default stdout)");

  NodalArgs na;
  CLI::App* nodal = app.add_subcommand("nodal", "Nodal domains of one eigenfunction");
  nodal->add_option("--mesh", na.mesh_path, "mesh JSON file")->required();
  nodal->add_option("--density", na.density_path, "density JSON file (default uniform)");
  nodal->add_option("--k", na.k, "eigenfunction index (default 1)");
  nodal->add_option("--out", na.out_path, "output CSV path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (spectrum->parsed()) run_spectrum(sa);
    if (converge->parsed()) run_converge(ca);
    if (chrom->parsed()) run_chrom(ha);
    if (verify->parsed()) run_embed_verify(va);
    if (nodal->parsed()) run_nodal(na);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
