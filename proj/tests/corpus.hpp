#pragma once

// Random partite corpus shared by the property suites and the acceptance run.

#include <cmath>
#include <cstdint>
#include <vector>

#include "hdx/error.hpp"
#include "hdx/zoo.hpp"

namespace hdx::testing {

struct CorpusEntry {
  std::uint64_t seed = 0;
  RandomPartiteSpec spec;
  WeightedComplex complex;
};

/// Pairwise-coupled weights (a Markov random field over the parts) keep
/// non-interacting pairs at eps = 0, so dependency graphs are sparse and the
/// coupling strength sweeps across the feasibility boundary. A share of the
/// instances drop facets or use unstructured weights.
inline RandomPartiteSpec corpus_spec(std::uint64_t seed) {
  PortableRng rng(seed ^ 0x9e3779b97f4a7c15ull);
  RandomPartiteSpec spec;
  spec.parts = 3 + rng.below(5);  // d = 2 .. 6
  spec.min_size = 2;
  spec.max_size = spec.parts >= 6 ? 3 : 4;
  spec.model = WeightModel::Coupled;
  spec.sigma = rng.uniform(0.2, 1.5);
  spec.coupling = std::exp(rng.uniform(std::log(1e-3), std::log(0.3)));
  spec.edge_probability = rng.uniform(0.2, 1.0);
  const double kind = rng.uniform();
  if (kind < 0.1) {
    spec.density = rng.uniform(0.6, 0.95);
  } else if (kind < 0.15) {
    spec.model = WeightModel::LogNormal;
    spec.sigma = rng.uniform(0.05, 0.5);
  }
  return spec;
}

inline std::vector<CorpusEntry> corpus(int count, std::uint64_t base = 1000) {
  std::vector<CorpusEntry> out;
  for (int n = 0; n < count; ++n) {
    const std::uint64_t seed = base + n;
    RandomPartiteSpec spec = corpus_spec(seed);
    try {
      out.push_back({seed, spec, random_partite_complex(spec, seed)});
    } catch (const Error&) {
      // ConnectivityUnreachable: skipped, the corpus keeps its order.
    }
  }
  return out;
}

}  // namespace hdx::testing
