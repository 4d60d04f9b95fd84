#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>

#include "hdx/error.hpp"
#include "hdx/io.hpp"
#include "hdx/spectra.hpp"
#include "hdx/zoo.hpp"

using namespace hdx;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::Internal;
}

using LabelSet = std::set<std::string>;

std::map<LabelSet, double> facet_map(const WeightedComplex& X) {
  std::map<LabelSet, double> out;
  for (const auto& f : X.facets()) {
    const auto labels = X.labels_of(f.vertices);
    out[LabelSet(labels.begin(), labels.end())] = f.weight;
  }
  return out;
}

// FNV-1a, stable across standard libraries.
std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

// Barbell graph written out from its description, independent of the generator.
struct Oracle {
  std::vector<std::string> names;
  std::vector<std::set<int>> adj;
  int id(const std::string& s) {
    auto it = std::find(names.begin(), names.end(), s);
    if (it != names.end()) return static_cast<int>(it - names.begin());
    names.push_back(s);
    adj.emplace_back();
    return static_cast<int>(names.size()) - 1;
  }
  void edge(const std::string& a, const std::string& b) {
    const int x = id(a), y = id(b);
    adj[x].insert(y);
    adj[y].insert(x);
  }
};

Oracle barbell_oracle(int d) {
  Oracle g;
  auto clique = [&](std::vector<std::string> vs) {
    for (std::size_t i = 0; i < vs.size(); ++i)
      for (std::size_t j = i + 1; j < vs.size(); ++j) g.edge(vs[i], vs[j]);
  };
  std::vector<std::string> k1{"x0"}, k2{"x" + std::to_string(d + 1)};
  for (int i = 1; i <= 2 * d - 1; ++i) {
    k1.push_back("a" + std::to_string(i));
    k2.push_back("b" + std::to_string(i));
  }
  clique(k1);
  clique(k2);
  for (int i = 0; i <= d; ++i) g.edge("x" + std::to_string(i), "x" + std::to_string(i + 1));
  return g;
}

std::set<LabelSet> connected_subsets(const Oracle& g, int d) {
  std::set<LabelSet> out;
  const int n = static_cast<int>(g.names.size());
  std::vector<int> pick;
  auto connected = [&] {
    std::set<int> in(pick.begin(), pick.end()), seen{pick[0]};
    std::vector<int> stack{pick[0]};
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (int u : g.adj[v])
        if (in.count(u) && seen.insert(u).second) stack.push_back(u);
    }
    return seen.size() == in.size();
  };
  auto rec = [&](auto&& self, int start) -> void {
    if (static_cast<int>(pick.size()) == d) {
      if (connected()) {
        LabelSet s;
        for (int v : pick) s.insert(g.names[v]);
        out.insert(s);
      }
      return;
    }
    for (int v = start; v < n; ++v) {
      pick.push_back(v);
      self(self, v + 1);
      pick.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

}  // namespace

TEST_CASE("hardcore complex is the independent sets of K_{d,d}") {
  CHECK(hardcore_complex(2, 1.0).facets().size() == 7);
  for (int d = 2; d <= 4; ++d) {
    const double lambda = 0.3;
    const auto X = hardcore_complex(d, lambda);
    CHECK(X.num_parts() == 2 * d);
    std::map<LabelSet, double> expect;
    double Z = 0.0;
    for (std::uint32_t I = 0; I < (1u << (2 * d)); ++I) {
      const bool left = (I & ((1u << d) - 1)) != 0;
      const bool right = (I >> d) != 0;
      if (left && right) continue;
      LabelSet s;
      for (int i = 1; i <= 2 * d; ++i) s.insert(std::to_string(i) + ((I >> (i - 1)) & 1 ? "_in" : "_out"));
      const double w = std::pow(lambda, std::popcount(I));
      expect[s] = w;
      Z += w;
    }
    const auto got = facet_map(X);
    REQUIRE(got.size() == expect.size());
    for (const auto& [s, w] : expect) {
      REQUIRE(got.count(s));
      CHECK(got.at(s) == doctest::Approx(w / Z).epsilon(1e-13));
    }
  }
  CHECK(kind_of([] { hardcore_complex(1, 1.0); }) == ErrorKind::BadParams);
  CHECK(kind_of([] { hardcore_complex(3, 0.0); }) == ErrorKind::BadParams);
}

TEST_CASE("barbell complex matches an independent enumeration") {
  for (int d = 3; d <= 4; ++d) {
    const auto X = barbell_complex(d);
    const auto expect = connected_subsets(barbell_oracle(d), d);
    std::set<LabelSet> got;
    for (const auto& [s, w] : facet_map(X)) {
      got.insert(s);
      CHECK(w == doctest::Approx(1.0 / expect.size()));
    }
    CHECK(got == expect);
  }
  CHECK(barbell_complex(4).facets().size() == 199);
  CHECK(kind_of([] { barbell_complex(2); }) == ErrorKind::BadParams);
}

TEST_CASE("barbell path link") {
  // The link of the inner path vertices x2..x(d-1) is itself a path.
  for (int d = 4; d <= 5; ++d) {
    const auto X = barbell_complex(d);
    std::vector<std::string> inner;
    for (int i = 2; i <= d - 1; ++i) inner.push_back("x" + std::to_string(i));
    const auto G = skeleton(X, X.face_from_labels(inner));
    CHECK(second_eigenvalue(G) == doctest::Approx(0.5).epsilon(1e-12));
  }
}

TEST_CASE("coloring complexes") {
  Graph empty;
  empty.n = 3;
  const auto P = coloring_complex(empty, {{0, 1}, {0, 1, 2}, {5}});
  CHECK(P.facets().size() == 6);
  CHECK(P.num_parts() == 3);
  for (const auto& f : P.facets()) CHECK(f.weight == doctest::Approx(1.0 / 6));

  const auto K3 = Graph::complete(3);
  const auto single = coloring_complex(K3, {{1}, {2}, {3}});
  REQUIRE(single.facets().size() == 1);
  CHECK(single.labels_of(single.facets()[0].vertices) == std::vector<std::string>{"v0:c1", "v1:c2", "v2:c3"});
  CHECK(coloring_complex(K3, {{0, 1, 2}, {0, 1, 2}, {0, 1, 2}}).facets().size() == 6);
  CHECK(kind_of([&] { coloring_complex(K3, {{0, 1}, {0, 1}, {0, 1}}); }) == ErrorKind::NoProperColoring);
  CHECK(kind_of([&] { coloring_complex(K3, {{0, 1}, {0, 1}}); }) == ErrorKind::BadParams);
}

TEST_CASE("complete partite complex") {
  const auto X = complete_partite_complex({2, 3, 4});
  CHECK(X.facets().size() == 24);
  CHECK(X.find("p1:2").has_value());
}

TEST_CASE("random partite complexes are deterministic under the seed") {
  RandomPartiteSpec spec;
  spec.parts = 4;
  spec.min_size = 3;
  spec.max_size = 3;
  spec.density = 0.6;
  const auto X = random_partite_complex(spec, 42);
  CHECK(X.facets().size() == 52);
  const auto& first = X.facets().front();
  CHECK(X.labels_of(first.vertices) == std::vector<std::string>{"p0:0", "p1:0", "p2:1", "p3:0"});
  CHECK(first.weight == doctest::Approx(1.0 / 52));
  const std::string dump = complex_to_json(X).dump();
  CHECK(dump == complex_to_json(random_partite_complex(spec, 42)).dump());
  CHECK(fnv1a(dump) == 14371493428355672941ull);
  CHECK(dump != complex_to_json(random_partite_complex(spec, 43)).dump());
  CHECK(connectivity_report(X).totally_connected);
}

TEST_CASE("random generator parameters") {
  RandomPartiteSpec bad;
  bad.parts = 1;
  CHECK(kind_of([&] { random_partite_complex(bad, 1); }) == ErrorKind::BadParams);
  RandomPartiteSpec sparse;
  sparse.parts = 5;
  sparse.min_size = sparse.max_size = 4;
  sparse.density = 0.01;
  sparse.max_retries = 3;
  CHECK(kind_of([&] { random_partite_complex(sparse, 1); }) == ErrorKind::ConnectivityUnreachable);
}

TEST_CASE("portable rng streams") {
  PortableRng a(7), b(7);
  for (int i = 0; i < 100; ++i) CHECK(a.uniform() == b.uniform());
  PortableRng c(11);
  double sum = 0.0, sq = 0.0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const double z = c.normal();
    sum += z;
    sq += z * z;
  }
  CHECK(std::fabs(sum / n) < 0.05);
  CHECK(std::fabs(sq / n - 1.0) < 0.05);
}
