#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "hdx/complex.hpp"
#include "hdx/error.hpp"
#include "hdx/spectra.hpp"
#include "hdx/zoo.hpp"

using namespace hdx;

namespace {

WeightedComplex graph_complex(int n, const std::vector<std::pair<int, int>>& edges) {
  std::vector<FacetInput> in;
  for (auto [a, b] : edges) in.push_back({{std::to_string(a), std::to_string(b)}, 1.0});
  (void)n;
  return WeightedComplex::build(in);
}

SkeletonGraph random_graph(int n, double p, std::uint64_t seed) {
  PortableRng rng(seed);
  Eigen::MatrixXd W = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    W(i, (i + 1) % n) = W((i + 1) % n, i) = 0.5 + rng.uniform();  // a cycle keeps it connected
    for (int j = i + 2; j < n; ++j) {
      if (rng.uniform() < p) W(i, j) = W(j, i) = rng.uniform(0.1, 2.0);
    }
  }
  std::vector<Vertex> vs(n);
  for (int i = 0; i < n; ++i) vs[i] = static_cast<Vertex>(i);
  return graph_from_weights(vs, W);
}

// Second largest real part of the non-symmetric walk matrix spectrum.
double eigen_solver_lambda2(const SkeletonGraph& G) {
  const auto P = walk_matrices(G).P;
  Eigen::EigenSolver<Eigen::MatrixXd> es(P);
  std::vector<double> re;
  for (int i = 0; i < P.rows(); ++i) re.push_back(es.eigenvalues()[i].real());
  std::sort(re.rbegin(), re.rend());
  return re[1];
}

}  // namespace

TEST_CASE("complete graph has lambda_2 = -1/(n-1)") {
  for (int n = 3; n <= 9; ++n) {
    std::vector<std::pair<int, int>> edges;
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) edges.push_back({a, b});
    const auto X = graph_complex(n, edges);
    const auto G = skeleton(X, Face{});
    CHECK(second_eigenvalue(G) == doctest::Approx(-1.0 / (n - 1)).epsilon(1e-12));
  }
}

TEST_CASE("cycle has lambda_2 = cos(2 pi / n)") {
  for (int n = 3; n <= 12; ++n) {
    std::vector<std::pair<int, int>> edges;
    for (int a = 0; a < n; ++a) edges.push_back({a, (a + 1) % n});
    const auto G = skeleton(graph_complex(n, edges), Face{});
    CHECK(second_eigenvalue(G) == doctest::Approx(std::cos(2 * std::numbers::pi / n)).epsilon(1e-12));
  }
}

TEST_CASE("walk matrix is row-stochastic and reversible") {
  const auto G = random_graph(9, 0.4, 3);
  const auto [P, pi] = walk_matrices(G);
  CHECK(pi.sum() == doctest::Approx(1.0));
  for (int i = 0; i < P.rows(); ++i) CHECK(P.row(i).sum() == doctest::Approx(1.0));
  for (int i = 0; i < P.rows(); ++i)
    for (int j = 0; j < P.cols(); ++j) CHECK(pi(i) * P(i, j) == doctest::Approx(pi(j) * P(j, i)));
}

TEST_CASE("symmetrized solve agrees with the non-symmetric eigensolver") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto G = random_graph(5 + static_cast<int>(seed % 7), 0.35, seed);
    CHECK(second_eigenvalue(G) == doctest::Approx(eigen_solver_lambda2(G)).epsilon(1e-9));
  }
}

TEST_CASE("Lanczos path agrees with the dense path") {
  EigenOptions sparse;
  sparse.dense_limit = 4;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto G = random_graph(30 + static_cast<int>(seed), 0.2, 100 + seed);
    CHECK(second_eigenvalue(G, sparse) == doctest::Approx(second_eigenvalue(G)).epsilon(1e-7));
  }
}

TEST_CASE("disconnected and trivial graphs") {
  const auto X = graph_complex(4, {{0, 1}, {2, 3}});
  const auto G = skeleton(X, Face{});
  CHECK_FALSE(is_connected(G));
  CHECK_THROWS_AS(second_eigenvalue(G), Error);
  try {
    second_eigenvalue(G);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Disconnected);
  }
  const auto E = graph_complex(2, {{0, 1}});
  try {
    skeleton(E, E.facets()[0].vertices);
    FAIL("expected CodimTooSmall");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::CodimTooSmall);
  }
}

TEST_CASE("Cheeger lower bound and the mixing sandwich hold on random cuts") {
  PortableRng rng(77);
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    const auto G = random_graph(8, 0.4, 500 + seed);
    const double l2 = second_eigenvalue(G);
    const auto spectrum = walk_spectrum(G);
    const double lmin = spectrum(0);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<int> S;
      for (int v = 0; v < G.size(); ++v)
        if (rng.uniform() < 0.5) S.push_back(v);
      if (S.empty() || static_cast<int>(S.size()) == G.size()) continue;
      const auto cut = cut_diagnostics(G, S);
      CHECK(cut.conductance >= (1.0 - l2) / 2.0 - 1e-12);
      const double share = 1.0 - cut.volume / G.total_volume();
      CHECK(cut.signed_residual <= l2 * share + 1e-12);
      CHECK(cut.signed_residual >= lmin * share - 1e-12);
      CHECK(cut.mixing_residual == doctest::Approx(std::fabs(cut.signed_residual)));
    }
  }
  const auto G = random_graph(5, 0.5, 1);
  for (const auto& bad : {std::vector<int>{}, std::vector<int>{0, 1, 2, 3, 4}}) {
    try {
      cut_diagnostics(G, bad);
      FAIL("expected EmptyOrFullSet");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::EmptyOrFullSet);
    }
  }
}

TEST_CASE("spectral profile levels") {
  const auto X = complete_partite_complex({3, 3, 3});
  const auto profile = spectral_profile(X);
  REQUIRE(profile.levels.size() == 2);
  // Links of co-dimension 2 are K_{3,3}; the 1-skeleton is K_{3,3,3}. Both walks have lambda_2 = 0.
  CHECK(std::fabs(profile.gamma(2)) < 1e-12);
  CHECK(std::fabs(profile.gamma(3)) < 1e-12);
  CHECK(walk_spectrum(skeleton(X, Face{}))(0) == doctest::Approx(-0.5));
  CHECK(profile.totally_connected());
  try {
    profile.gamma(4);
    FAIL("expected IndexOutOfRange");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::IndexOutOfRange);
  }
}
