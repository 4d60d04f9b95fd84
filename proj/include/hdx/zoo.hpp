#pragma once

// Generators: coloring, hardcore and barbell complexes, complete and random
// partite complexes, and products of random factors.

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "hdx/complex.hpp"

namespace hdx {

/// Simple graph on vertices 0..n-1.
struct Graph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;

  int degree(int v) const;
  int max_degree() const;
  static Graph complete(int n);
};

/// Parts are graph vertices; vertex labels are "v<i>:c<color>". Uniform
/// weights over proper list colorings. Throws NoProperColoring, BadParams,
/// SizeCap (more than 10^7 colorings).
WeightedComplex coloring_complex(const Graph& G, const std::vector<std::vector<int>>& lists);

/// Independent sets of K_{d,d} as a 2d-partite complex with parts
/// {i_in, i_out}, i = 1..2d; weight lambda^(number of in-elements).
/// Left side is 1..d, right side d+1..2d. Throws BadParams (d < 2, lambda <= 0).
WeightedComplex hardcore_complex(int d, double lambda);

/// Connected d-subsets of the barbell graph: cliques K1 = {x0, a1..a(2d-1)},
/// K2 = {x(d+1), b1..b(2d-1)} joined by the path x0 - x1 - ... - xd - x(d+1).
/// Unit weights. Throws BadParams (d < 3), SizeCap (C(5d, d) > 10^7).
WeightedComplex barbell_complex(int d);

/// The barbell graph itself: labels in the complex's order, adjacency as bit masks.
struct BarbellGraph {
  std::vector<std::string> labels;
  std::vector<std::uint64_t> adjacent;
};
BarbellGraph barbell_graph(int d);

/// Full product of parts with the given sizes; labels "p<i>:<v>", uniform weights.
WeightedComplex complete_partite_complex(const std::vector<int>& sizes, const std::string& prefix = "");

enum class WeightModel { Uniform, LogNormal, Coupled };

struct RandomPartiteSpec {
  int parts = 3;
  int min_size = 2;
  int max_size = 3;
  double density = 1.0;           // probability that each tuple is a facet
  WeightModel model = WeightModel::Uniform;
  double sigma = 1.0;             // lognormal spread, also the node potential spread of Coupled
  double coupling = 0.05;         // Coupled: pair factor 1 + coupling * U(-1, 1)
  double edge_probability = 0.5;  // Coupled: chance that a pair of parts interacts
  std::string prefix;             // label prefix, keeps product factors disjoint
  int max_retries = 1000;
};

/// Deterministic under the seed on every platform. Throws BadParams,
/// ConnectivityUnreachable, SizeCap (more than 10^6 tuples).
WeightedComplex random_partite_complex(const RandomPartiteSpec& spec, std::uint64_t seed);

/// Product of random factors with prefixes "f<t>."; factor t uses a seed derived from `seed`.
WeightedComplex random_product(std::vector<RandomPartiteSpec> factors, std::uint64_t seed);

/// Uniform doubles and normals built from raw 64-bit engine output, so
/// streams do not depend on the standard library's distributions.
class PortableRng {
 public:
  explicit PortableRng(std::uint64_t seed) : engine_(seed) {}
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  int below(int n) { return std::min(n - 1, static_cast<int>(uniform() * n)); }
  double normal();

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace hdx
