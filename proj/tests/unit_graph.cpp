#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "steklab/graph.hpp"

using namespace steklab;

TEST_CASE("laplacian entries for small graphs") {
  MetricGraph k3 = MetricGraph::complete(3);
  Eigen::MatrixXd L = graph_laplacian(k3);
  Eigen::MatrixXd expect(3, 3);
  expect << 2, -1, -1, -1, 2, -1, -1, -1, 2;
  CHECK((L - expect).cwiseAbs().maxCoeff() == doctest::Approx(0.0));

  MetricGraph p2 = MetricGraph::path(2, 0.25);
  Eigen::MatrixXd Lp = graph_laplacian(p2);
  CHECK(Lp(0, 0) == doctest::Approx(4.0));
  CHECK(Lp(0, 1) == doctest::Approx(-4.0));
  CHECK(Lp(1, 1) == doctest::Approx(4.0));
}

TEST_CASE("complete graph spectra") {
  for (int n = 2; n <= 8; ++n) {
    MetricGraph g = MetricGraph::complete(n);
    GraphSpectrum s = graph_spectrum(g);
    REQUIRE((int)s.eigenvalues.size() == n);
    CHECK(std::abs(s.eigenvalues[0]) < 1e-10);
    for (int i = 1; i < n; ++i) {
      CHECK(std::abs(s.eigenvalues[i] - n) < 1e-10 * n);
    }
    CHECK(mu_reference(n) == n - 1);
  }
  CHECK_THROWS_AS(mu_reference(1), std::invalid_argument);
}

TEST_CASE("two-vertex path spectrum in closed form") {
  double l = 0.4;
  GraphSpectrum s = graph_spectrum(MetricGraph::path(2, l));
  CHECK(std::abs(s.eigenvalues[0]) < 1e-12);
  CHECK(s.eigenvalues[1] == doctest::Approx(2.0 / l).epsilon(1e-12));
  // Eigenvectors are mu-orthonormal.
  Eigen::MatrixXd G = s.eigenvectors.transpose() * s.eigenvectors;  // mu = identity
  CHECK((G - Eigen::MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("vertex measure and potential shift the pencil as expected") {
  MetricGraph g = MetricGraph::cycle(4);
  GraphSpectrum base = graph_spectrum(g);
  // Doubling every mu halves every eigenvalue.
  MetricGraph heavy = g;
  heavy.mu.assign(4, 2.0);
  GraphSpectrum h = graph_spectrum(heavy);
  for (int i = 0; i < 4; ++i) {
    CHECK(h.eigenvalues[i] == doctest::Approx(0.5 * base.eigenvalues[i]).epsilon(1e-10));
  }
  // Constant potential shifts the whole spectrum (unit mu).
  MetricGraph shifted = g;
  shifted.potential.assign(4, 3.0);
  GraphSpectrum s = graph_spectrum(shifted);
  for (int i = 0; i < 4; ++i) {
    CHECK(s.eigenvalues[i] == doctest::Approx(base.eigenvalues[i] + 3.0).epsilon(1e-10));
  }
}

TEST_CASE("graph validation") {
  MetricGraph g;
  g.n = 3;
  g.edges = {{0, 1, 1.0}};
  CHECK_FALSE(g.connected());
  CHECK_THROWS_AS(graph_spectrum(g), std::invalid_argument);
  MetricGraph loop;
  loop.n = 2;
  loop.edges = {{0, 0, 1.0}};
  CHECK_THROWS_AS(loop.validate(), std::invalid_argument);
  MetricGraph dup;
  dup.n = 2;
  dup.edges = {{0, 1, 1.0}, {1, 0, 2.0}};
  CHECK_THROWS_AS(dup.validate(), std::invalid_argument);
  MetricGraph neg;
  neg.n = 2;
  neg.edges = {{0, 1, -1.0}};
  CHECK_THROWS_AS(neg.validate(), std::invalid_argument);
  MetricGraph badmu = MetricGraph::path(2);
  badmu.mu = {1.0, 0.0};
  CHECK_THROWS_AS(badmu.validate(), std::invalid_argument);
}
