#pragma once

#include <string>

#include "steklab/chromatic.hpp"
#include "steklab/graph.hpp"
#include "steklab/mesh.hpp"
#include "steklab/nodal.hpp"
#include "steklab/steklov.hpp"
#include "steklab/tubular.hpp"

namespace steklab {

// Mesh files: {"vertices": [[x,y]...], "triangles": [[i,j,k]...],
// "boundary": [{"edge":[i,j], "marker":"S"|"N", "component":c}...]},
// all indices zero-based. The loaded mesh is validated.
Mesh load_mesh(const std::string& path);
void save_mesh(const Mesh& mesh, const std::string& path);

// Density files: {"gamma": [...], "rho": [...]}; checked against a mesh only
// when a solve uses them.
DensitySpec load_density(const std::string& path);
void save_density(const DensitySpec& density, const std::string& path);

// Graph files: {"n": int, "edges": [[i,j,length]...], "mu": [...], "V": [...]},
// vertices zero-based; "mu" and "V" may be omitted (defaults 1 and 0).
MetricGraph load_graph(const std::string& path);
void save_graph(const MetricGraph& graph, const std::string& path);

// Certificate files: {"n": int, "rotations": [[v...]...], "signs": {"u-v": s},
// "removed_faces": [[v...]...], "claims": {"chi": int, "orientable": bool,
// "p": int}}; vertices are labeled 1..n in the file, zero-based in memory.
EmbeddingCertificate load_certificate(const std::string& path);
void save_certificate(const EmbeddingCertificate& cert, const std::string& path);

// Full-precision decimal rendering (17 significant digits) used by every CSV
// so reruns are byte-identical.
std::string format_double(double v);

// CSV bodies, each with a header row.
std::string spectrum_csv(const SpectrumResult& spectrum);                  // k,sigma,cluster
std::string convergence_csv(const ConvergenceStudy& study);  // epsilon,k,sigma,lambda_graph,abs_error
std::string nodal_csv(const NodalDecomposition& nodal);      // triangle,domain,sign

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace steklab
