#pragma once

// Weighted 1-skeletons of links, random-walk matrices and second eigenvalues.

#include <Eigen/Dense>
#include <map>
#include <vector>

#include "hdx/complex.hpp"

namespace hdx {

/// Weighted graph on X_tau(0). Edge weights are Pr_{sigma ~ pi_tau}[{x,y} ⊆ sigma];
/// the diagonal is zero unless loops were injected through graph_from_weights.
struct SkeletonGraph {
  std::vector<Vertex> vertices;
  Eigen::MatrixXd weights;
  Eigen::VectorXd degrees;

  int size() const { return static_cast<int>(vertices.size()); }
  /// Local index of a vertex, or -1.
  int index_of(Vertex v) const;
  double volume(const std::vector<int>& subset) const;
  double total_volume() const { return degrees.sum(); }
};

/// Graph from an explicit symmetric weight matrix (tests, loop-weighted aggregates).
SkeletonGraph graph_from_weights(std::vector<Vertex> vertices, Eigen::MatrixXd weights);

/// 1-skeleton of the link of tau. Throws CodimTooSmall, FaceNotInComplex.
SkeletonGraph skeleton(const WeightedComplex& X, const Face& tau);
/// Same, for a face whose containing facets are already known.
SkeletonGraph skeleton(const WeightedComplex& X, const FaceClass& face);

struct WalkMatrices {
  Eigen::MatrixXd P;   // row-stochastic on the skeleton's vertices
  Eigen::VectorXd pi;  // pi_{tau,0}: stationary distribution d_w / vol
};

WalkMatrices walk_matrices(const SkeletonGraph& G);

bool is_connected(const SkeletonGraph& G);

struct EigenOptions {
  /// Above this many vertices the Lanczos fallback is used.
  int dense_limit = 2000;
  double tolerance = 1e-10;
  int max_iterations = 5000;
};

/// Second-largest eigenvalue of the walk matrix, signed. Throws Disconnected
/// (where lambda_2 would be 1) and CodimTooSmall for single-vertex graphs.
double second_eigenvalue(const SkeletonGraph& G, const EigenOptions& options = {});

/// All eigenvalues of the walk matrix in ascending order (dense).
Eigen::VectorXd walk_spectrum(const SkeletonGraph& G);

/// One link of co-dimension >= 2 and its second eigenvalue.
struct LinkSpectrum {
  Face face;
  int codim = 0;
  TypeMask type = 0;  // partite only
  bool connected = true;
  double lambda2 = 0.0;  // 1 when disconnected
};

struct LevelSpectrum {
  int k = 0;
  double gamma = -1.0;
  Face argmax;
  std::size_t faces = 0;
};

struct SpectralProfile {
  std::vector<LevelSpectrum> levels;  // k = 2 .. d+1
  std::vector<Face> witnesses;        // faces whose link 1-skeleton is disconnected
  std::map<TypeMask, double> by_type; // partite: worst lambda_2 per type set
  std::vector<LinkSpectrum> table;    // every face, when requested

  double gamma(int k) const;
  bool totally_connected() const { return witnesses.empty(); }
};

struct ProfileOptions {
  SweepOptions sweep;
  EigenOptions eigen;
  bool keep_table = false;
};

/// lambda_2 of every link of co-dimension >= 2, in (co-dimension, face) order.
std::vector<LinkSpectrum> link_spectra(const WeightedComplex& X, const ProfileOptions& options = {});

SpectralProfile spectral_profile(const WeightedComplex& X, const ProfileOptions& options = {});
SpectralProfile spectral_profile(const WeightedComplex& X, std::vector<LinkSpectrum> spectra, bool keep_table);

struct CutDiagnostics {
  double cut_weight = 0.0;      // w(E(S, S̄))
  double internal_weight = 0.0; // 1_S^T W 1_S (each internal edge counted from both ends)
  double volume = 0.0;
  double conductance = 0.0;     // w(E(S,S̄)) / min(vol S, vol S̄)
  double signed_residual = 0.0; // (w(E(S)) - vol(S)^2/vol(V)) / vol(S)
  double mixing_residual = 0.0; // |signed_residual|
};

/// `subset` holds local vertex indices. Throws EmptyOrFullSet.
CutDiagnostics cut_diagnostics(const SkeletonGraph& G, const std::vector<int>& subset);

}  // namespace hdx
