#pragma once

// Per-type-pair link eigenvalues, the dependency graph between parts and
// product decompositions of partite complexes.

#include <Eigen/Dense>
#include <map>
#include <utility>
#include <vector>

#include "hdx/complex.hpp"
#include "hdx/spectra.hpp"

namespace hdx {

/// Parts whose co-dimension-2 links have lambda_2 at or below this value are
/// treated as 0-expanders when building the dependency graph.
inline constexpr double kZeroExpanderTolerance = 1e-9;

/// eps_{i,j} = max lambda_2(P_tau) over faces tau of type [d] \ {i,j}.
/// Indices are local part positions; `types` maps them to global type ids.
struct EpsilonTable {
  std::vector<int> types;
  Eigen::MatrixXd value;  // clamped below at 0, symmetric, zero diagonal
  Eigen::MatrixXd raw;    // signed maxima
  std::map<std::pair<int, int>, Face> argmax;  // keyed by (i, j) with i < j

  int size() const { return static_cast<int>(types.size()); }
  double operator()(int i, int j) const { return value(i, j); }
};

/// Throws NotPartite, Disconnected (with the failing face in the message).
EpsilonTable epsilon_table(const WeightedComplex& X, const ProfileOptions& options = {});
/// From an existing sweep (see link_spectra).
EpsilonTable epsilon_table(const WeightedComplex& X, const std::vector<LinkSpectrum>& spectra);
/// A declared table, e.g. a published eps pattern with no complex behind it.
EpsilonTable epsilon_table_from_values(const Eigen::MatrixXd& values);

struct DependencyGraph {
  double tolerance = kZeroExpanderTolerance;
  std::vector<std::vector<char>> adjacent;
  std::vector<int> degree;
  int max_degree = 0;
  std::vector<std::vector<int>> components;  // local part positions, sorted

  int size() const { return static_cast<int>(degree.size()); }
  bool edge(int i, int j) const { return adjacent[i][j] != 0; }
  std::vector<int> neighbors(int i) const;
  /// Degree of i in the subgraph induced on parts outside `removed`.
  int degree_outside(int i, TypeMask removed) const;
  /// Components of the subgraph induced on parts outside `removed`.
  std::vector<std::vector<int>> components_outside(TypeMask removed) const;
};

DependencyGraph dependency_graph(const EpsilonTable& eps, double tolerance = kZeroExpanderTolerance);

struct ProductDecomposition {
  std::vector<std::vector<int>> components;  // global type ids per block
  std::vector<Face> anchors;                 // the face sigma_{-i} chosen per block
  std::vector<WeightedComplex> factors;      // link of each anchor
  double residual = 0.0;                     // max |pi(tau) - prod_i pi_{sigma_-i}(tau ∩ I_i)|
  bool strict = false;
  double strict_residual = 0.0;              // max deviation across all anchor choices
};

ProductDecomposition product_decomposition(const WeightedComplex& X, const DependencyGraph& graph,
                                           bool strict = false);
ProductDecomposition product_decomposition(const WeightedComplex& X, double tolerance = kZeroExpanderTolerance,
                                           bool strict = false, const ProfileOptions& options = {});

struct Rank2Check {
  bool is_product = false;
  double sigma_ratio = 0.0;              // sigma_3 / sigma_1 of the bipartite adjacency matrix
  double factorization_residual = 0.0;   // max |pi({y,z}) - pi_y(z) pi_z(y)|
};

/// X must be 1-dimensional and 2-partite; throws WrongDimension otherwise.
Rank2Check rank2_product_check(const WeightedComplex& X, double tolerance = 1e-10);

}  // namespace hdx
