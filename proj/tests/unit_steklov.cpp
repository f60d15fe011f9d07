#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "steklab/mesh.hpp"
#include "steklab/steklov.hpp"
#include "support.hpp"

using namespace steklab;
using testsupport::annulus_reference;
using testsupport::mark_edges;
using testsupport::rectangle_mesh;

namespace {

// Single ccw unit right triangle (0,0)-(1,0)-(0,1) with boundary markers
// chosen per test.
Mesh unit_triangle(Marker m01, Marker m12, Marker m20) {
  Mesh m;
  m.vertices = {{0, 0}, {1, 0}, {0, 1}};
  m.triangles = {{0, 1, 2}};
  m.boundary = {{0, 1, m01, 0}, {1, 2, m12, 0}, {2, 0, m20, 0}};
  return m;
}

}  // namespace

TEST_CASE("element stiffness of the unit right triangle") {
  Mesh m = unit_triangle(Marker::Steklov, Marker::Steklov, Marker::Steklov);
  DensitySpec d = DensitySpec::uniform(m);
  Eigen::MatrixXd K = Eigen::MatrixXd(assemble_stiffness(m, d));
  Eigen::MatrixXd expect(3, 3);
  expect << 1.0, -0.5, -0.5, -0.5, 0.5, 0.0, -0.5, 0.0, 0.5;
  CHECK((K - expect).cwiseAbs().maxCoeff() == doctest::Approx(0.0).epsilon(1e-14));
  // Doubling the conductivity doubles the matrix.
  d.gamma[0] = 2.0;
  Eigen::MatrixXd K2 = Eigen::MatrixXd(assemble_stiffness(m, d));
  CHECK((K2 - 2.0 * expect).cwiseAbs().maxCoeff() == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("boundary mass uses only Steklov edges") {
  Mesh m = unit_triangle(Marker::Steklov, Marker::Neumann, Marker::Neumann);
  DensitySpec d = DensitySpec::uniform(m);
  d.rho[0] = 2.0;  // edge (0,1), length 1
  Eigen::MatrixXd M = Eigen::MatrixXd(assemble_boundary_mass(m, d));
  CHECK(M(0, 0) == doctest::Approx(2.0 / 3.0));
  CHECK(M(1, 1) == doctest::Approx(2.0 / 3.0));
  CHECK(M(0, 1) == doctest::Approx(1.0 / 3.0));
  CHECK(M(2, 2) == doctest::Approx(0.0));
  CHECK(M.sum() == doctest::Approx(2.0));  // integral of rho over the edge
}

TEST_CASE("schur reduction matches a hand computation") {
  // Path-graph Laplacian, eliminate the middle vertex.
  Eigen::SparseMatrix<double> K(3, 3);
  std::vector<Eigen::Triplet<double>> t{{0, 0, 1}, {0, 1, -1}, {1, 0, -1}, {1, 1, 2},
                                        {1, 2, -1}, {2, 1, -1}, {2, 2, 1}};
  K.setFromTriplets(t.begin(), t.end());
  Eigen::MatrixXd S = dtn_reduce(K, {0, 2});
  CHECK(S(0, 0) == doctest::Approx(0.5));
  CHECK(S(0, 1) == doctest::Approx(-0.5));
  CHECK(S(1, 0) == doctest::Approx(-0.5));
  CHECK(S(1, 1) == doctest::Approx(0.5));
  // No interior: reduction is the identity restriction.
  Eigen::MatrixXd full = dtn_reduce(K, {0, 1, 2});
  CHECK((full - Eigen::MatrixXd(K)).cwiseAbs().maxCoeff() == doctest::Approx(0.0));
  CHECK_THROWS_AS(dtn_reduce(K, {0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(dtn_reduce(K, {5}), std::invalid_argument);
  // Singular interior block (isolated interior vertex).
  Eigen::SparseMatrix<double> Z(2, 2);
  CHECK_THROWS_AS(dtn_reduce(Z, {0}), std::runtime_error);
}

TEST_CASE("schur route agrees with the full generalized pencil") {
  Mesh m = build_domain({Circle{{0, 0}, 1.0}, {}, 0.2});
  DensitySpec d = DensitySpec::uniform(m);
  int k = 6;
  SpectrumResult res = solve_steklov(m, d, k);

  // Independent route: solve M v = mu (K + M) v over all vertices and map
  // mu -> sigma = (1 - mu)/mu, descending mu giving ascending sigma.
  Eigen::MatrixXd Kd = Eigen::MatrixXd(assemble_stiffness(m, d));
  Eigen::MatrixXd Md = Eigen::MatrixXd(assemble_boundary_mass(m, d));
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(Md, Kd + Md);
  REQUIRE(es.info() == Eigen::Success);
  std::vector<double> sigma;
  for (int i = (int)Kd.rows() - 1; i >= 0 && (int)sigma.size() <= k; --i) {
    double mu = es.eigenvalues()[i];
    REQUIRE(mu > 0.0);
    sigma.push_back((1.0 - mu) / mu);
  }
  for (int i = 0; i <= k; ++i) {
    CHECK(std::abs(res.eigenvalues[i] - sigma[i]) <=
          1e-10 * std::max(1.0, std::abs(sigma[i])));
  }
}

TEST_CASE("unit disk spectrum matches the closed form") {
  Mesh m = build_domain({Circle{{0, 0}, 1.0}, {}, 0.04});
  DensitySpec d = DensitySpec::uniform(m);
  SpectrumResult res = solve_steklov(m, d, 6);
  std::vector<double> expect{0, 1, 1, 2, 2, 3, 3};
  CHECK(std::abs(res.eigenvalues[0]) < 1e-8);
  for (int i = 1; i <= 6; ++i) {
    CHECK(res.eigenvalues[i] == doctest::Approx(expect[i]).epsilon(0.015));
  }
  // Multiplicity pattern 1, 2, 2, 2 at one percent resolution.
  REQUIRE(res.clusters.size() == 4);
  CHECK(res.clusters[0].multiplicity == 1);
  CHECK(res.clusters[1].multiplicity == 2);
  CHECK(res.clusters[2].multiplicity == 2);
  CHECK(res.clusters[3].multiplicity == 2);
  // Eigenvectors are orthonormal in the boundary mass inner product.
  Eigen::MatrixXd Md = Eigen::MatrixXd(assemble_boundary_mass(m, d));
  Eigen::MatrixXd G = res.eigenvectors.transpose() * Md * res.eigenvectors;
  CHECK((G - Eigen::MatrixXd::Identity(7, 7)).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("mixed problem on a strip matches m tanh(m)") {
  double pi = std::acos(-1.0);
  Mesh m = rectangle_mesh(pi, 1.0, 96, 32);
  mark_edges(m, [](Vec2 p) { return p.y < 1e-12; });
  DensitySpec d = DensitySpec::uniform(m);
  SpectrumResult res = solve_steklov_neumann(m, d, 3);
  CHECK(std::abs(res.eigenvalues[0]) < 1e-8);
  for (int mm = 1; mm <= 3; ++mm) {
    CHECK(res.eigenvalues[mm] == doctest::Approx(mm * std::tanh(mm)).epsilon(0.01));
  }
}

TEST_CASE("annulus closed form constants are frozen") {
  // Radii 0.5 and 1: the per-mode quadratics have hand-computed integer-ish
  // coefficients. Mode 1: 1.5 s^2 - 7.5 s + 3; mode 2: 3.75 s^2 - 25.5 s + 30;
  // mode 3: 7.875 s^2 - 73.125 s + 141.75. The first seven eigenvalues are
  // zero and the three lower roots twice each.
  std::vector<double> ref = annulus_reference(0.5, 1.0, 7);
  auto low_root = [](double c2, double c1, double c0) {
    return (c1 - std::sqrt(c1 * c1 - 4.0 * c2 * c0)) / (2.0 * c2);
  };
  CHECK(ref[0] == doctest::Approx(0.0));
  CHECK(ref[1] == doctest::Approx((5.0 - std::sqrt(17.0)) / 2.0).epsilon(1e-12));
  CHECK(ref[2] == doctest::Approx(low_root(1.5, 7.5, 3.0)).epsilon(1e-12));
  CHECK(ref[3] == doctest::Approx(low_root(3.75, 25.5, 30.0)).epsilon(1e-12));
  CHECK(ref[4] == doctest::Approx(ref[3]).epsilon(1e-12));
  CHECK(ref[5] == doctest::Approx(low_root(7.875, 73.125, 141.75)).epsilon(1e-12));
  CHECK(ref[6] == doctest::Approx(ref[5]).epsilon(1e-12));
  // Coarse decimal pins against sign or transcription slips.
  CHECK(ref[1] == doctest::Approx(0.438447).epsilon(1e-5));
  CHECK(ref[3] == doctest::Approx(1.513204).epsilon(1e-5));
  CHECK(ref[5] == doctest::Approx(2.757089).epsilon(1e-5));
}

TEST_CASE("annulus spectrum matches the closed form") {
  Mesh m = build_domain({Circle{{0, 0}, 1.0}, {Circle{{0, 0}, 0.5}}, 0.04});
  DensitySpec d = DensitySpec::uniform(m);
  SpectrumResult res = solve_steklov(m, d, 6);
  std::vector<double> ref = annulus_reference(0.5, 1.0, 7);
  CHECK(std::abs(res.eigenvalues[0]) < 1e-8);
  for (int i = 1; i <= 6; ++i) {
    CHECK(res.eigenvalues[i] == doctest::Approx(ref[i]).epsilon(0.015));
  }
}

TEST_CASE("density scalings act exactly on the discrete spectrum") {
  Mesh m = build_domain({Circle{{0, 0}, 1.0}, {}, 0.15});
  DensitySpec d = DensitySpec::uniform(m);
  SpectrumResult base = solve_steklov(m, d, 4);
  DensitySpec heavier = d;
  for (double& r : heavier.rho) r *= 2.0;
  SpectrumResult slow = solve_steklov(m, heavier, 4);
  DensitySpec stiffer = d;
  for (double& g : stiffer.gamma) g *= 2.0;
  SpectrumResult fast = solve_steklov(m, stiffer, 4);
  for (int i = 0; i <= 4; ++i) {
    CHECK(std::abs(slow.eigenvalues[i] - 0.5 * base.eigenvalues[i]) <=
          1e-12 * std::max(1.0, base.eigenvalues[i]));
    CHECK(std::abs(fast.eigenvalues[i] - 2.0 * base.eigenvalues[i]) <=
          1e-12 * std::max(1.0, base.eigenvalues[i]));
  }
}

TEST_CASE("eigenvalue clustering") {
  std::vector<Cluster> c = cluster_multiplicities({0.0, 1.0, 1.0004, 2.0}, 1e-3);
  REQUIRE(c.size() == 3);
  CHECK(c[0].multiplicity == 1);
  CHECK(c[0].value == doctest::Approx(0.0));
  CHECK(c[1].multiplicity == 2);
  CHECK(c[1].value == doctest::Approx(1.0002));
  CHECK(c[1].first_index == 1);
  CHECK(c[2].multiplicity == 1);
  CHECK(c[2].first_index == 3);
  CHECK_THROWS_AS(cluster_multiplicities({1.0, 0.5}, 1e-3), std::invalid_argument);
  CHECK_THROWS_AS(cluster_multiplicities({0.0, 1.0}, -1.0), std::invalid_argument);
}

TEST_CASE("solver input validation") {
  Mesh m = build_domain({Circle{{0, 0}, 1.0}, {}, 0.5});
  DensitySpec d = DensitySpec::uniform(m);
  CHECK_THROWS_AS(solve_steklov(m, d, -1), std::invalid_argument);
  CHECK_THROWS_AS(solve_steklov(m, d, 500), std::invalid_argument);
  DensitySpec wrong = d;
  wrong.gamma.pop_back();
  CHECK_THROWS_AS(solve_steklov(m, wrong, 2), std::invalid_argument);
  DensitySpec neg = d;
  neg.gamma[0] = -1.0;
  CHECK_THROWS_AS(solve_steklov(m, neg, 2), std::invalid_argument);
  DensitySpec zero = d;
  zero.rho[0] = 0.0;
  CHECK_THROWS_AS(solve_steklov(m, zero, 2), std::invalid_argument);
  // Nonzero density on a Neumann edge is inconsistent.
  Mesh mixed = m;
  mixed.boundary[0].marker = Marker::Neumann;
  DensitySpec bad = DensitySpec::uniform(m);
  CHECK_THROWS_AS(bad.validate(mixed), std::invalid_argument);
  // A mesh with no Steklov edge cannot carry the problem.
  Mesh silent = m;
  for (BoundaryEdge& e : silent.boundary) e.marker = Marker::Neumann;
  CHECK_THROWS_AS(solve_steklov_neumann(silent, DensitySpec::uniform(silent), 1),
                  std::invalid_argument);
}
