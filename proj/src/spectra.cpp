#include "hdx/spectra.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <random>

#include "hdx/error.hpp"
#include "hdx/numeric.hpp"

namespace hdx {

int SkeletonGraph::index_of(Vertex v) const {
  auto it = std::lower_bound(vertices.begin(), vertices.end(), v);
  if (it == vertices.end() || *it != v) return -1;
  return static_cast<int>(it - vertices.begin());
}

double SkeletonGraph::volume(const std::vector<int>& subset) const {
  CompensatedSum s;
  for (int i : subset) s += degrees(i);
  return static_cast<double>(s.value());
}

SkeletonGraph graph_from_weights(std::vector<Vertex> vertices, Eigen::MatrixXd weights) {
  if (weights.rows() != weights.cols() || weights.rows() != static_cast<Eigen::Index>(vertices.size())) {
    throw Error(ErrorKind::BadParams, "weight matrix does not match the vertex list");
  }
  if ((weights - weights.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, weights.cwiseAbs().maxCoeff())) {
    throw Error(ErrorKind::BadParams, "weight matrix is not symmetric");
  }
  if (weights.minCoeff() < 0.0) throw Error(ErrorKind::BadParams, "negative edge weight");
  SkeletonGraph G;
  G.vertices = std::move(vertices);
  G.weights = std::move(weights);
  G.degrees = G.weights.rowwise().sum();
  return G;
}

SkeletonGraph skeleton(const WeightedComplex& X, const FaceClass& face) {
  if (X.codim(face.face) < 2) {
    throw Error(ErrorKind::CodimTooSmall, "1-skeleton needs a face of co-dimension at least 2");
  }
  if (face.facets.empty()) throw Error(ErrorKind::FaceNotInComplex, "face is not contained in any facet");

  std::vector<Vertex> verts;
  for (auto f : face.facets) {
    for (Vertex v : X.facets()[f].vertices) verts.push_back(v);
  }
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  SkeletonGraph G;
  std::set_difference(verts.begin(), verts.end(), face.face.begin(), face.face.end(), std::back_inserter(G.vertices));

  const int n = G.size();
  G.weights = Eigen::MatrixXd::Zero(n, n);
  std::vector<int> local;
  double mass = 0.0;
  // Accumulate raw facet weights and normalize once.
  for (auto f : face.facets) {
    const auto& facet = X.facets()[f];
    local.clear();
    for (Vertex v : facet.vertices) {
      const int i = G.index_of(v);
      if (i >= 0) local.push_back(i);
    }
    for (std::size_t a = 0; a < local.size(); ++a) {
      for (std::size_t b = a + 1; b < local.size(); ++b) {
        G.weights(local[a], local[b]) += facet.weight;
        G.weights(local[b], local[a]) += facet.weight;
      }
    }
    mass += facet.weight;
  }
  G.weights /= mass;
  G.degrees = G.weights.rowwise().sum();
  return G;
}

SkeletonGraph skeleton(const WeightedComplex& X, const Face& tau) {
  if (X.codim(tau) < 2) throw Error(ErrorKind::CodimTooSmall, "1-skeleton needs a face of co-dimension at least 2");
  FaceClass cls;
  cls.face = tau;
  for (std::uint32_t f = 0; f < X.facets().size(); ++f) {
    const auto& verts = X.facets()[f].vertices;
    if (std::includes(verts.begin(), verts.end(), tau.begin(), tau.end())) cls.facets.push_back(f);
  }
  return skeleton(X, cls);
}

WalkMatrices walk_matrices(const SkeletonGraph& G) {
  WalkMatrices out;
  const int n = G.size();
  out.P = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    if (G.degrees(i) > 0.0) out.P.row(i) = G.weights.row(i) / G.degrees(i);
  }
  out.pi = G.degrees / G.total_volume();
  return out;
}

bool is_connected(const SkeletonGraph& G) {
  const int n = G.size();
  if (n <= 1) return true;
  std::vector<char> seen(n, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    for (int v = 0; v < n; ++v) {
      if (!seen[v] && G.weights(u, v) > 0.0) {
        seen[v] = 1;
        ++count;
        stack.push_back(v);
      }
    }
  }
  return count == n;
}

namespace {

// D^{-1/2} W D^{-1/2}, similar to the walk matrix.
Eigen::MatrixXd symmetrized(const SkeletonGraph& G) {
  const Eigen::VectorXd s = G.degrees.cwiseSqrt().cwiseInverse();
  Eigen::MatrixXd S = s.asDiagonal() * G.weights * s.asDiagonal();
  return 0.5 * (S + S.transpose());
}

// Largest eigenvalue of S restricted to the orthogonal complement of `top`
// (Lanczos with full reorthogonalization).
double deflated_lanczos(const Eigen::MatrixXd& S, const Eigen::VectorXd& top, const EigenOptions& options) {
  const Eigen::Index n = S.rows();
  const int steps = static_cast<int>(std::min<Eigen::Index>(n - 1, options.max_iterations));
  std::mt19937_64 rng(0x5eed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  Eigen::VectorXd q(n);
  for (Eigen::Index i = 0; i < n; ++i) q(i) = unit(rng);
  q -= top.dot(q) * top;
  q.normalize();

  std::vector<Eigen::VectorXd> basis{q};
  std::vector<double> alpha, beta;
  double estimate = 0.0;
  for (int j = 0; j < steps; ++j) {
    Eigen::VectorXd w = S * basis[j];
    w -= top.dot(w) * top;
    alpha.push_back(basis[j].dot(w));
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& b : basis) w -= b.dot(w) * b;
      w -= top.dot(w) * top;
    }
    const double b = w.norm();

    const int m = static_cast<int>(alpha.size());
    Eigen::VectorXd diag = Eigen::Map<Eigen::VectorXd>(alpha.data(), m);
    Eigen::VectorXd sub = m > 1 ? Eigen::VectorXd(Eigen::Map<Eigen::VectorXd>(beta.data(), m - 1)) : Eigen::VectorXd();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
    tri.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    estimate = tri.eigenvalues()(m - 1);
    const double residual = std::fabs(b * tri.eigenvectors()(m - 1, m - 1));
    if (residual < options.tolerance || b < options.tolerance) return estimate;
    beta.push_back(b);
    basis.push_back(w / b);
  }
  return estimate;
}

}  // namespace

double second_eigenvalue(const SkeletonGraph& G, const EigenOptions& options) {
  if (G.size() < 2) throw Error(ErrorKind::CodimTooSmall, "second eigenvalue of a graph with fewer than two vertices");
  if (!is_connected(G)) throw Error(ErrorKind::Disconnected, "link 1-skeleton is disconnected (lambda_2 = 1)");
  const Eigen::MatrixXd S = symmetrized(G);
  if (G.size() <= options.dense_limit) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(S, Eigen::EigenvaluesOnly);
    return solver.eigenvalues()(G.size() - 2);
  }
  const Eigen::VectorXd top = (G.degrees / G.total_volume()).cwiseSqrt();
  return deflated_lanczos(S, top, options);
}

Eigen::VectorXd walk_spectrum(const SkeletonGraph& G) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(symmetrized(G), Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

double SpectralProfile::gamma(int k) const {
  for (const auto& level : levels) {
    if (level.k == k) return level.gamma;
  }
  throw Error(ErrorKind::IndexOutOfRange, "no co-dimension " + std::to_string(k) + " in profile");
}

std::vector<LinkSpectrum> link_spectra(const WeightedComplex& X, const ProfileOptions& options) {
  check_sweep_cap(X, options.sweep);
  const int d = X.dim();
  // Enumerate face classes: by type set for partite complexes, by size otherwise.
  std::vector<std::pair<TypeMask, FaceClass>> classes;
  for (int k = 2; k <= d + 1; ++k) {
    const int size = d + 1 - k;
    if (X.is_partite()) {
      for (TypeMask mask = 0; mask <= X.full_mask(); ++mask) {
        if (std::popcount(mask) != size) continue;
        for (auto& cls : faces_by_type_mask(X, mask)) classes.emplace_back(mask, std::move(cls));
      }
    } else {
      for (auto& cls : faces_by_size(X, size)) classes.emplace_back(0, std::move(cls));
    }
  }
  std::vector<LinkSpectrum> out(classes.size());
  parallel_for(classes.size(), options.sweep.threads, [&](std::size_t i) {
    const auto& [mask, cls] = classes[i];
    LinkSpectrum& row = out[i];
    row.face = cls.face;
    row.codim = X.codim(cls.face);
    row.type = mask;
    const SkeletonGraph G = skeleton(X, cls);
    row.connected = is_connected(G);
    row.lambda2 = row.connected ? second_eigenvalue(G, options.eigen) : 1.0;
  });
  return out;
}

SpectralProfile spectral_profile(const WeightedComplex& X, std::vector<LinkSpectrum> spectra, bool keep_table) {
  SpectralProfile profile;
  const int d = X.dim();
  for (int k = 2; k <= d + 1; ++k) profile.levels.push_back(LevelSpectrum{k, -1.0, {}, 0});
  for (const auto& row : spectra) {
    auto& level = profile.levels[row.codim - 2];
    ++level.faces;
    if (!row.connected) {
      profile.witnesses.push_back(row.face);
      continue;
    }
    if (level.faces == 1 || row.lambda2 > level.gamma) {
      level.gamma = row.lambda2;
      level.argmax = row.face;
    }
    if (X.is_partite()) {
      auto [it, inserted] = profile.by_type.emplace(row.type, row.lambda2);
      if (!inserted) it->second = std::max(it->second, row.lambda2);
    }
  }
  if (keep_table) profile.table = std::move(spectra);
  return profile;
}

SpectralProfile spectral_profile(const WeightedComplex& X, const ProfileOptions& options) {
  return spectral_profile(X, link_spectra(X, options), options.keep_table);
}

CutDiagnostics cut_diagnostics(const SkeletonGraph& G, const std::vector<int>& subset) {
  const int n = G.size();
  std::vector<char> in(n, 0);
  for (int i : subset) {
    if (i < 0 || i >= n) throw Error(ErrorKind::IndexOutOfRange, "cut vertex index " + std::to_string(i));
    in[i] = 1;
  }
  const int count = static_cast<int>(std::count(in.begin(), in.end(), 1));
  if (count == 0 || count == n) throw Error(ErrorKind::EmptyOrFullSet, "cut must be a proper nonempty subset");

  CompensatedSum cut, internal, vol;
  for (int i = 0; i < n; ++i) {
    if (!in[i]) continue;
    vol += G.degrees(i);
    for (int j = 0; j < n; ++j) {
      if (in[j]) {
        internal += G.weights(i, j);
      } else {
        cut += G.weights(i, j);
      }
    }
  }
  CutDiagnostics out;
  out.cut_weight = static_cast<double>(cut.value());
  out.internal_weight = static_cast<double>(internal.value());
  out.volume = static_cast<double>(vol.value());
  const double total = G.total_volume();
  out.conductance = out.cut_weight / std::min(out.volume, total - out.volume);
  out.signed_residual = (out.internal_weight - out.volume * out.volume / total) / out.volume;
  out.mixing_residual = std::fabs(out.signed_residual);
  return out;
}

}  // namespace hdx
