#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "corpus.hpp"
#include "hdx/error.hpp"
#include "hdx/partite.hpp"
#include "hdx/spectra.hpp"
#include "hdx/trickledown.hpp"

using namespace hdx;

namespace {

// A smaller slice of the acceptance corpus keeps this suite quick.
const std::vector<testing::CorpusEntry>& small_corpus() {
  static const auto c = testing::corpus(60, 20000);
  return c;
}

EpsilonTable random_table(int n, PortableRng& rng, double scale) {
  Eigen::MatrixXd v = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rng.uniform() < 0.6) v(i, j) = v(j, i) = scale * rng.uniform();
  return epsilon_table_from_values(v);
}

}  // namespace

TEST_CASE("soundness: passing conditions certify every link") {
  int certified = 0;
  for (const auto& entry : small_corpus()) {
    CAPTURE(entry.seed);
    const auto eps = epsilon_table(entry.complex);
    const auto G = dependency_graph(eps);
    const auto ds = max_feasible_delta(eps, G);
    if (!ds) continue;
    for (double delta : {*ds, *ds / 2}) {
      if (!check_main_conditions(eps, G, delta).pass) continue;
      const auto F = build_f_vectors(eps, G, delta);
      const auto scalar = verify_scalar_conditions(entry.complex, F);
      const auto matrix = verify_matrix_conditions(entry.complex, F);
      CHECK(scalar.pass);
      CHECK(matrix.pass);
      const auto profile = bound_profile(entry.complex, F);
      CHECK(profile.worst_face_slack >= -kVerifyTolerance);
      for (const auto& face : matrix.faces) CHECK(face.rho >= face.lambda2 - kVerifyTolerance);
      ++certified;
    }
  }
  CHECK(certified >= 20);
}

TEST_CASE("sum of eps over neighbors stays below 1 - delta under condition 2") {
  for (const auto& entry : small_corpus()) {
    const auto eps = epsilon_table(entry.complex);
    const auto G = dependency_graph(eps);
    const auto ds = max_feasible_delta(eps, G);
    if (!ds) continue;
    const auto D = inequality_diagnostics(build_f_vectors(eps, G, *ds));
    CHECK(D.worst_sumeps >= -1e-12);
    CHECK(D.worst_case1 >= -1e-12);
    CHECK(D.worst_case2 >= -1e-12);
  }
}

TEST_CASE("condition margins are monotone in eps and delta") {
  PortableRng rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 3 + rng.below(5);
    const auto eps = random_table(n, rng, 0.2);
    const auto G = dependency_graph(eps);
    const double d1 = rng.uniform(0.05, 0.9);
    const double d2 = d1 + rng.uniform(0.0, 0.95 - d1);
    const auto a = check_main_conditions(eps, G, d1);
    const auto b = check_main_conditions(eps, G, d2);
    for (int i = 0; i < n; ++i) {
      CHECK(b.cond2[i] <= a.cond2[i] + 1e-15);
      CHECK(b.cond1[i] >= a.cond1[i] - 1e-15);
    }
    // Raise one present entry: every margin can only shrink.
    Eigen::MatrixXd raised = eps.value;
    const int i = rng.below(n);
    const int j = (i + 1 + rng.below(n - 1)) % n;
    if (raised(i, j) == 0.0) continue;
    raised(i, j) = raised(j, i) = raised(i, j) * 1.5;
    const auto up = check_main_conditions(epsilon_table_from_values(raised), G, d1);
    for (int p = 0; p < n; ++p) {
      CHECK(up.cond1[p] <= a.cond1[p] + 1e-15);
      CHECK(up.cond2[p] <= a.cond2[p] + 1e-15);
    }
  }
}

TEST_CASE("max feasible delta sits on the boundary") {
  PortableRng rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    const auto eps = random_table(3 + rng.below(4), rng, 0.1);
    const auto G = dependency_graph(eps);
    const auto ds = max_feasible_delta(eps, G);
    if (!ds) continue;
    CHECK(check_main_conditions(eps, G, *ds).pass);
    if (*ds < 1.0 - 1e-6) CHECK_FALSE(check_main_conditions(eps, G, std::min(*ds + 1e-6, 1.0 - 1e-12)).pass);
  }
}

TEST_CASE("results do not depend on the thread count") {
  ProfileOptions one, four;
  one.sweep.threads = 1;
  four.sweep.threads = 4;
  for (std::size_t n = 0; n < small_corpus().size(); n += 6) {
    const auto& X = small_corpus()[n].complex;
    const auto a = link_spectra(X, one);
    const auto b = link_spectra(X, four);
    REQUIRE(a.size() == b.size());
    for (std::size_t f = 0; f < a.size(); ++f) {
      CHECK(a[f].face == b[f].face);
      CHECK(a[f].lambda2 == b[f].lambda2);
    }
    CHECK(epsilon_table(X, one).raw == epsilon_table(X, four).raw);
  }
}

TEST_CASE("eps dominates every co-dimension 2 link of its type") {
  for (const auto& entry : small_corpus()) {
    const auto& X = entry.complex;
    const auto eps = epsilon_table(X);
    ProfileOptions table;
    table.keep_table = true;
    const auto profile = spectral_profile(X, table);
    for (const auto& row : profile.table) {
      if (row.codim != 2) continue;
      std::vector<int> missing;
      for (int p = 0; p < X.num_parts(); ++p)
        if (!((row.type >> p) & 1)) missing.push_back(p);
      REQUIRE(missing.size() == 2);
      CHECK(row.lambda2 <= eps.raw(missing[0], missing[1]) + 1e-15);
    }
    CHECK(profile.gamma(2) == doctest::Approx(eps.raw.maxCoeff()).epsilon(1e-12));
  }
}
