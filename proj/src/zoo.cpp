#include "hdx/zoo.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <numbers>

#include "hdx/error.hpp"

namespace hdx {

int Graph::degree(int v) const {
  int d = 0;
  for (auto [a, b] : edges) d += (a == v) + (b == v);
  return d;
}

int Graph::max_degree() const {
  int m = 0;
  for (int v = 0; v < n; ++v) m = std::max(m, degree(v));
  return m;
}

Graph Graph::complete(int n) {
  Graph G;
  G.n = n;
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) G.edges.emplace_back(a, b);
  }
  return G;
}

double PortableRng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u = 0.0;
  while (u <= 0.0) u = uniform();
  const double v = uniform();
  const double r = std::sqrt(-2.0 * std::log(u));
  spare_ = r * std::sin(2.0 * std::numbers::pi * v);
  has_spare_ = true;
  return r * std::cos(2.0 * std::numbers::pi * v);
}

namespace {

constexpr std::size_t kEnumerationCap = 10'000'000;

std::string color_label(int v, int c) { return "v" + std::to_string(v) + ":c" + std::to_string(c); }

}  // namespace

WeightedComplex coloring_complex(const Graph& G, const std::vector<std::vector<int>>& lists) {
  if (G.n < 1) throw Error(ErrorKind::BadParams, "coloring complex needs at least one vertex");
  if (static_cast<int>(lists.size()) != G.n) throw Error(ErrorKind::BadParams, "one color list per vertex");
  std::vector<std::vector<int>> nbr(G.n);
  for (auto [a, b] : G.edges) {
    if (a < 0 || b < 0 || a >= G.n || b >= G.n || a == b) throw Error(ErrorKind::BadParams, "bad graph edge");
    nbr[a].push_back(b);
    nbr[b].push_back(a);
  }
  for (int v = 0; v < G.n; ++v) {
    if (lists[v].empty()) throw Error(ErrorKind::NoProperColoring, "vertex " + std::to_string(v) + " has an empty list");
  }

  std::vector<FacetInput> facets;
  std::vector<int> sigma(G.n, -1);
  // Depth-first over vertices in index order; a color is allowed when no
  // earlier neighbor uses it.
  auto extend = [&](auto&& self, int v) -> void {
    if (v == G.n) {
      if (facets.size() >= kEnumerationCap) {
        throw Error(ErrorKind::SizeCap, "more than 10^7 proper colorings");
      }
      FacetInput f;
      for (int u = 0; u < G.n; ++u) f.vertices.push_back(color_label(u, sigma[u]));
      facets.push_back(std::move(f));
      return;
    }
    for (int c : lists[v]) {
      bool ok = true;
      for (int u : nbr[v]) {
        if (u < v && sigma[u] == c) ok = false;
      }
      if (!ok) continue;
      sigma[v] = c;
      self(self, v + 1);
    }
    sigma[v] = -1;
  };
  extend(extend, 0);
  if (facets.empty()) throw Error(ErrorKind::NoProperColoring, "no proper list coloring exists");

  std::map<std::string, int> types;
  for (const auto& f : facets) {
    for (int u = 0; u < G.n; ++u) types.emplace(f.vertices[u], u);
  }
  return WeightedComplex::build(facets, types);
}

WeightedComplex hardcore_complex(int d, double lambda) {
  if (d < 2) throw Error(ErrorKind::BadParams, "hardcore complex needs d >= 2");
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw Error(ErrorKind::BadParams, "activity must be positive");
  if (d > 12) throw Error(ErrorKind::SizeCap, "hardcore complex capped at d = 12");
  std::map<std::string, int> types;
  for (int i = 1; i <= 2 * d; ++i) {
    types[std::to_string(i) + "_in"] = i - 1;
    types[std::to_string(i) + "_out"] = i - 1;
  }
  std::vector<FacetInput> facets;
  // Independent sets of K_{d,d} lie entirely on one side.
  auto emit = [&](std::uint32_t in_mask) {
    FacetInput f;
    for (int i = 1; i <= 2 * d; ++i) f.vertices.push_back(std::to_string(i) + ((in_mask >> (i - 1)) & 1 ? "_in" : "_out"));
    f.weight = std::pow(lambda, std::popcount(in_mask));
    facets.push_back(std::move(f));
  };
  emit(0);
  for (std::uint32_t s = 1; s < (1u << d); ++s) {
    emit(s);
    emit(s << d);
  }
  return WeightedComplex::build(facets, types);
}

BarbellGraph barbell_graph(int d) {
  if (d < 3) throw Error(ErrorKind::BadParams, "barbell complex needs d >= 3");
  if (5 * d > 64) throw Error(ErrorKind::SizeCap, "barbell graph limited to 64 vertices");
  BarbellGraph B;
  std::vector<int> k1, k2;
  for (int i = 1; i < 2 * d; ++i) {
    k1.push_back(static_cast<int>(B.labels.size()));
    B.labels.push_back("a" + std::to_string(i));
  }
  for (int i = 1; i < 2 * d; ++i) {
    k2.push_back(static_cast<int>(B.labels.size()));
    B.labels.push_back("b" + std::to_string(i));
  }
  std::vector<int> path;
  for (int i = 0; i <= d + 1; ++i) {
    path.push_back(static_cast<int>(B.labels.size()));
    B.labels.push_back("x" + std::to_string(i));
  }
  k1.push_back(path.front());
  k2.push_back(path.back());
  B.adjacent.assign(B.labels.size(), 0);
  auto connect = [&](int a, int b) {
    B.adjacent[a] |= std::uint64_t{1} << b;
    B.adjacent[b] |= std::uint64_t{1} << a;
  };
  for (const auto* clique : {&k1, &k2}) {
    for (std::size_t i = 0; i < clique->size(); ++i) {
      for (std::size_t j = i + 1; j < clique->size(); ++j) connect((*clique)[i], (*clique)[j]);
    }
  }
  for (std::size_t i = 0; i + 1 < path.size(); ++i) connect(path[i], path[i + 1]);
  return B;
}

WeightedComplex barbell_complex(int d) {
  const BarbellGraph B = barbell_graph(d);
  const int n = static_cast<int>(B.labels.size());
  double candidates = 1.0;
  for (int i = 0; i < d; ++i) candidates = candidates * (n - i) / (i + 1);
  if (candidates > static_cast<double>(kEnumerationCap)) {
    throw Error(ErrorKind::SizeCap, "C(" + std::to_string(n) + ", " + std::to_string(d) + ") candidate subsets exceed 10^7");
  }
  auto connected = [&](std::uint64_t set) {
    std::uint64_t seen = set & (~set + 1);
    std::uint64_t frontier = seen;
    while (frontier) {
      std::uint64_t next = 0;
      for (std::uint64_t f = frontier; f; f &= f - 1) next |= B.adjacent[std::countr_zero(f)];
      next &= set & ~seen;
      seen |= next;
      frontier = next;
    }
    return seen == set;
  };
  std::vector<FacetInput> facets;
  std::vector<int> pick(d);
  for (int i = 0; i < d; ++i) pick[i] = i;
  while (true) {
    std::uint64_t set = 0;
    for (int v : pick) set |= std::uint64_t{1} << v;
    if (connected(set)) {
      FacetInput f;
      for (int v : pick) f.vertices.push_back(B.labels[v]);
      facets.push_back(std::move(f));
    }
    int i = d - 1;
    while (i >= 0 && pick[i] == n - d + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < d; ++j) pick[j] = pick[j - 1] + 1;
  }
  return WeightedComplex::build(facets);
}

namespace {

std::string part_label(const std::string& prefix, int part, int v) {
  return prefix + "p" + std::to_string(part) + ":" + std::to_string(v);
}

// All tuples of the given part sizes, last part varying fastest.
template <class Fn>
void for_each_tuple(const std::vector<int>& sizes, Fn&& fn) {
  std::vector<int> t(sizes.size(), 0);
  while (true) {
    fn(t);
    int i = static_cast<int>(sizes.size()) - 1;
    while (i >= 0 && ++t[i] == sizes[i]) t[i--] = 0;
    if (i < 0) return;
  }
}

std::map<std::string, int> types_of(const std::vector<FacetInput>& facets) {
  std::map<std::string, int> types;
  for (const auto& f : facets) {
    for (std::size_t p = 0; p < f.vertices.size(); ++p) types.emplace(f.vertices[p], static_cast<int>(p));
  }
  return types;
}

}  // namespace

WeightedComplex complete_partite_complex(const std::vector<int>& sizes, const std::string& prefix) {
  if (sizes.empty()) throw Error(ErrorKind::BadParams, "at least one part");
  double total = 1.0;
  for (int s : sizes) {
    if (s < 1) throw Error(ErrorKind::BadParams, "part sizes must be at least 1");
    total *= s;
  }
  if (total > 1e6) throw Error(ErrorKind::SizeCap, "more than 10^6 facets");
  std::vector<FacetInput> facets;
  for_each_tuple(sizes, [&](const std::vector<int>& t) {
    FacetInput f;
    for (std::size_t p = 0; p < t.size(); ++p) f.vertices.push_back(part_label(prefix, static_cast<int>(p), t[p]));
    facets.push_back(std::move(f));
  });
  return WeightedComplex::build(facets, types_of(facets));
}

WeightedComplex random_partite_complex(const RandomPartiteSpec& spec, std::uint64_t seed) {
  if (spec.parts < 2 || spec.parts > 20) throw Error(ErrorKind::BadParams, "parts must lie in [2, 20]");
  if (spec.min_size < 1 || spec.max_size < spec.min_size) throw Error(ErrorKind::BadParams, "bad part size range");
  if (!(spec.density > 0.0 && spec.density <= 1.0)) throw Error(ErrorKind::BadParams, "density must lie in (0, 1]");
  if (spec.model == WeightModel::Coupled && !(spec.coupling >= 0.0 && spec.coupling < 1.0)) {
    throw Error(ErrorKind::BadParams, "coupling must lie in [0, 1)");
  }
  PortableRng rng(seed);
  for (int attempt = 0; attempt < std::max(spec.max_retries, 1); ++attempt) {
    std::vector<int> sizes(spec.parts);
    double total = 1.0;
    for (auto& s : sizes) {
      s = spec.min_size + rng.below(spec.max_size - spec.min_size + 1);
      total *= s;
    }
    if (total > 1e6) throw Error(ErrorKind::SizeCap, "more than 10^6 tuples");

    std::vector<std::vector<double>> node(spec.parts);
    std::map<std::pair<int, int>, std::vector<double>> pair;
    if (spec.model == WeightModel::Coupled) {
      for (int p = 0; p < spec.parts; ++p) {
        for (int v = 0; v < sizes[p]; ++v) node[p].push_back(std::exp(spec.sigma * 0.5 * rng.normal()));
      }
      for (int a = 0; a < spec.parts; ++a) {
        for (int b = a + 1; b < spec.parts; ++b) {
          if (rng.uniform() >= spec.edge_probability) continue;
          auto& table = pair[{a, b}];
          for (int i = 0; i < sizes[a] * sizes[b]; ++i) table.push_back(1.0 + spec.coupling * rng.uniform(-1.0, 1.0));
        }
      }
    }

    std::vector<FacetInput> facets;
    for_each_tuple(sizes, [&](const std::vector<int>& t) {
      const bool keep = spec.density >= 1.0 || rng.uniform() < spec.density;
      double w = 1.0;
      if (spec.model == WeightModel::LogNormal) {
        w = std::exp(spec.sigma * rng.normal());
      } else if (spec.model == WeightModel::Coupled) {
        for (int p = 0; p < spec.parts; ++p) w *= node[p][t[p]];
        for (const auto& [ab, table] : pair) w *= table[t[ab.first] * sizes[ab.second] + t[ab.second]];
      }
      if (!keep) return;
      FacetInput f;
      for (std::size_t p = 0; p < t.size(); ++p) {
        f.vertices.push_back(part_label(spec.prefix, static_cast<int>(p), t[p]));
      }
      f.weight = w;
      facets.push_back(std::move(f));
    });
    if (facets.empty()) continue;
    WeightedComplex X = WeightedComplex::build(facets, types_of(facets));
    if (connectivity_report(X).totally_connected) return X;
  }
  throw Error(ErrorKind::ConnectivityUnreachable,
              "no totally connected complex after " + std::to_string(spec.max_retries) + " attempts");
}

WeightedComplex random_product(std::vector<RandomPartiteSpec> factors, std::uint64_t seed) {
  if (factors.empty()) throw Error(ErrorKind::BadParams, "at least one factor");
  std::vector<WeightedComplex> built;
  for (std::size_t t = 0; t < factors.size(); ++t) {
    factors[t].prefix = "f" + std::to_string(t) + "." + factors[t].prefix;
    built.push_back(random_partite_complex(factors[t], seed * 1000003ull + t));
  }
  return product(built);
}

}  // namespace hdx
