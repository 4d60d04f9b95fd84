#include "hdx/partite.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <unordered_map>

#include "hdx/error.hpp"
#include "hdx/numeric.hpp"

namespace hdx {

namespace {

std::string describe(const WeightedComplex& X, const Face& face) {
  std::string s = "{";
  for (std::size_t i = 0; i < face.size(); ++i) s += (i ? "," : "") + X.label(face[i]);
  return s + "}";
}

}  // namespace

EpsilonTable epsilon_table(const WeightedComplex& X, const std::vector<LinkSpectrum>& spectra) {
  if (!X.is_partite()) throw Error(ErrorKind::NotPartite, "eps table needs a partite complex");
  const int m = X.num_parts();
  EpsilonTable eps;
  eps.types = X.types();
  eps.value = Eigen::MatrixXd::Zero(m, m);
  eps.raw = Eigen::MatrixXd::Constant(m, m, -1.0);
  eps.raw.diagonal().setZero();
  std::vector<std::vector<char>> seen(m, std::vector<char>(m, 0));
  for (const auto& row : spectra) {
    if (row.codim != 2) continue;
    const TypeMask missing = X.full_mask() & ~row.type;
    const int i = std::countr_zero(missing);
    const int j = std::countr_zero(missing & (missing - 1));
    if (!row.connected) {
      throw Error(ErrorKind::Disconnected, "link of " + describe(X, row.face) + " has a disconnected 1-skeleton");
    }
    if (!seen[i][j] || row.lambda2 > eps.raw(i, j)) {
      eps.raw(i, j) = eps.raw(j, i) = row.lambda2;
      eps.argmax[{i, j}] = row.face;
      seen[i][j] = 1;
    }
  }
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      eps.value(i, j) = eps.value(j, i) = std::max(0.0, eps.raw(i, j));
    }
  }
  return eps;
}

EpsilonTable epsilon_table(const WeightedComplex& X, const ProfileOptions& options) {
  if (!X.is_partite()) throw Error(ErrorKind::NotPartite, "eps table needs a partite complex");
  check_sweep_cap(X, options.sweep);
  // Only co-dimension 2 links are needed.
  const int m = X.num_parts();
  std::vector<std::pair<TypeMask, FaceClass>> classes;
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      const TypeMask mask = X.full_mask() & ~((TypeMask{1} << i) | (TypeMask{1} << j));
      for (auto& cls : faces_by_type_mask(X, mask)) classes.emplace_back(mask, std::move(cls));
    }
  }
  std::vector<LinkSpectrum> spectra(classes.size());
  parallel_for(classes.size(), options.sweep.threads, [&](std::size_t n) {
    const auto& [mask, cls] = classes[n];
    auto& row = spectra[n];
    row.face = cls.face;
    row.codim = 2;
    row.type = mask;
    const SkeletonGraph G = skeleton(X, cls);
    row.connected = is_connected(G);
    row.lambda2 = row.connected ? second_eigenvalue(G, options.eigen) : 1.0;
  });
  return epsilon_table(X, spectra);
}

EpsilonTable epsilon_table_from_values(const Eigen::MatrixXd& values) {
  if (values.rows() != values.cols()) throw Error(ErrorKind::BadParams, "eps table must be square");
  const int m = static_cast<int>(values.rows());
  EpsilonTable eps;
  eps.types.resize(m);
  std::iota(eps.types.begin(), eps.types.end(), 0);
  eps.raw = 0.5 * (values + values.transpose());
  eps.raw.diagonal().setZero();
  eps.value = eps.raw.cwiseMax(0.0);
  return eps;
}

std::vector<int> DependencyGraph::neighbors(int i) const {
  std::vector<int> out;
  for (int j = 0; j < size(); ++j) {
    if (adjacent[i][j]) out.push_back(j);
  }
  return out;
}

int DependencyGraph::degree_outside(int i, TypeMask removed) const {
  int count = 0;
  for (int j = 0; j < size(); ++j) {
    if (adjacent[i][j] && !(removed & (TypeMask{1} << j))) ++count;
  }
  return count;
}

std::vector<std::vector<int>> DependencyGraph::components_outside(TypeMask removed) const {
  const int m = size();
  std::vector<int> label(m, -1);
  std::vector<std::vector<int>> out;
  for (int s = 0; s < m; ++s) {
    if ((removed & (TypeMask{1} << s)) || label[s] >= 0) continue;
    std::vector<int> comp{s};
    label[s] = static_cast<int>(out.size());
    for (std::size_t head = 0; head < comp.size(); ++head) {
      const int u = comp[head];
      for (int v = 0; v < m; ++v) {
        if (adjacent[u][v] && label[v] < 0 && !(removed & (TypeMask{1} << v))) {
          label[v] = label[s];
          comp.push_back(v);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

DependencyGraph dependency_graph(const EpsilonTable& eps, double tolerance) {
  if (tolerance < 0.0) throw Error(ErrorKind::BadParams, "dependency tolerance must be nonnegative");
  const int m = eps.size();
  DependencyGraph G;
  G.tolerance = tolerance;
  G.adjacent.assign(m, std::vector<char>(m, 0));
  G.degree.assign(m, 0);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (i != j && eps.value(i, j) > tolerance) {
        G.adjacent[i][j] = 1;
        ++G.degree[i];
      }
    }
  }
  G.max_degree = m ? *std::max_element(G.degree.begin(), G.degree.end()) : 0;
  G.components = G.components_outside(0);
  return G;
}

namespace {

struct FaceHash {
  std::size_t operator()(const Face& face) const noexcept {
    std::size_t h = 0xcbf29ce484222325ull;
    for (Vertex v : face) h = (h ^ v) * 0x100000001b3ull;
    return h;
  }
};

// Link distribution of an anchor keyed by the remaining vertices.
std::unordered_map<Face, double, FaceHash> distribution_of(const WeightedComplex& factor) {
  std::unordered_map<Face, double, FaceHash> out;
  for (const auto& f : factor.facets()) out.emplace(f.vertices, f.weight);
  return out;
}

Face project(const WeightedComplex& X, std::size_t facet, TypeMask mask) {
  Face out;
  for (int p = 0; p < X.num_parts(); ++p) {
    if (mask & (TypeMask{1} << p)) out.push_back(X.typed_vertex(facet, p));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

ProductDecomposition product_decomposition(const WeightedComplex& X, const DependencyGraph& graph, bool strict) {
  if (!X.is_partite()) throw Error(ErrorKind::NotPartite, "product decomposition needs a partite complex");
  if (graph.size() != X.num_parts()) throw Error(ErrorKind::BadParams, "dependency graph does not match the complex");

  ProductDecomposition out;
  out.strict = strict;
  std::vector<TypeMask> blocks;
  for (const auto& comp : graph.components) {
    TypeMask block = 0;
    for (int p : comp) block |= TypeMask{1} << p;
    blocks.push_back(block);
    std::vector<int> ids;
    for (int p : comp) ids.push_back(X.types()[p]);
    out.components.push_back(std::move(ids));
  }

  std::vector<std::unordered_map<Face, double, FaceHash>> dists;
  for (TypeMask block : blocks) {
    const TypeMask rest = X.full_mask() & ~block;
    // Anchor: the projection of the first facet onto the other blocks.
    Face anchor = project(X, 0, rest);
    out.anchors.push_back(anchor);
    out.factors.push_back(anchor.empty() ? X : link(X, anchor));
    dists.push_back(distribution_of(out.factors.back()));
  }

  // Facets of X against the product measure; mass of product tuples missing
  // from X shows up as 1 - (matched product mass).
  CompensatedSum matched;
  double worst = 0.0;
  for (std::size_t f = 0; f < X.facets().size(); ++f) {
    long double prod = 1.0L;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      auto it = dists[b].find(project(X, f, blocks[b]));
      prod *= it == dists[b].end() ? 0.0L : static_cast<long double>(it->second);
    }
    matched += prod;
    worst = std::max(worst, static_cast<double>(std::fabs(prod - X.facets()[f].weight)));
  }
  worst = std::max(worst, static_cast<double>(std::fabs(1.0L - matched.value())));
  out.residual = worst;

  if (strict) {
    double strict_worst = 0.0;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      const TypeMask rest = X.full_mask() & ~blocks[b];
      if (rest == 0) continue;
      for (const auto& cls : faces_by_type_mask(X, rest)) {
        const auto other = distribution_of(link(X, cls.face));
        double dev = 0.0;
        for (const auto& [face, w] : dists[b]) {
          auto it = other.find(face);
          dev = std::max(dev, std::fabs(w - (it == other.end() ? 0.0 : it->second)));
        }
        for (const auto& [face, w] : other) {
          if (!dists[b].count(face)) dev = std::max(dev, w);
        }
        strict_worst = std::max(strict_worst, dev);
      }
    }
    out.strict_residual = strict_worst;
  }
  return out;
}

ProductDecomposition product_decomposition(const WeightedComplex& X, double tolerance, bool strict,
                                           const ProfileOptions& options) {
  return product_decomposition(X, dependency_graph(epsilon_table(X, options), tolerance), strict);
}

Rank2Check rank2_product_check(const WeightedComplex& X, double tolerance) {
  if (X.dim() != 1 || !X.is_partite() || X.num_parts() != 2) {
    throw Error(ErrorKind::WrongDimension, "rank-2 check needs a 1-dimensional 2-partite complex");
  }
  std::vector<Vertex> left, right;
  for (Vertex v : X.vertices()) (X.local_type(v) == 0 ? left : right).push_back(v);
  auto pos = [](const std::vector<Vertex>& side, Vertex v) {
    return static_cast<int>(std::lower_bound(side.begin(), side.end(), v) - side.begin());
  };
  Eigen::MatrixXd block = Eigen::MatrixXd::Zero(left.size(), right.size());
  for (std::size_t f = 0; f < X.facets().size(); ++f) {
    block(pos(left, X.typed_vertex(f, 0)), pos(right, X.typed_vertex(f, 1))) = X.facets()[f].weight;
  }
  // The full adjacency [[0, B], [B^T, 0]] has singular values s_1, s_1, s_2, s_2, ...
  // so its third singular value is the block's second.
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(block);
  const auto& s = svd.singularValues();
  Rank2Check out;
  out.sigma_ratio = s.size() > 1 ? s(1) / s(0) : 0.0;
  out.is_product = out.sigma_ratio <= tolerance;

  const Eigen::VectorXd rows = block.rowwise().sum();
  const Eigen::VectorXd cols = block.colwise().sum().transpose();
  double worst = 0.0;
  for (Eigen::Index y = 0; y < block.rows(); ++y) {
    for (Eigen::Index z = 0; z < block.cols(); ++z) {
      const double w = block(y, z);
      // pi_y(z) = w / rows(y), pi_z(y) = w / cols(z)
      const double factored = (w / rows(y)) * (w / cols(z));
      if (out.is_product) {
        worst = std::max(worst, std::fabs(w - factored));
      } else {
        worst = std::max(worst, std::fabs(w - rows(y) * cols(z)));
      }
    }
  }
  out.factorization_residual = worst;
  return out;
}

}  // namespace hdx
