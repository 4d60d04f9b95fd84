#pragma once

// Weighted pure simplicial complexes, links, face enumeration and
// connectivity predicates.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace hdx {

using Vertex = std::uint32_t;

/// A face is a sorted list of vertex ids; identity is by vertex set.
using Face = std::vector<Vertex>;

/// Bit set over the local type positions of a partite complex.
using TypeMask = std::uint32_t;

struct Facet {
  Face vertices;
  double weight = 0.0;  // normalized: all facet weights of a complex sum to 1
};

/// Facet as it appears in input files: vertex labels plus a positive weight.
struct FacetInput {
  std::vector<std::string> vertices;
  double weight = 1.0;
};

/// Vertex labels and types shared by a complex and all of its links.
struct GroundTable {
  std::vector<std::string> labels;
  std::vector<int> types;  // empty when the complex is not partite
  std::unordered_map<std::string, Vertex> index;
};

class WeightedComplex {
 public:
  /// Validates and normalizes. Throws Error{EmptyInput, NonPure,
  /// PartiteViolation, NonpositiveWeight, DuplicateFacet, UnknownVertex}.
  static WeightedComplex build(const std::vector<FacetInput>& facets,
                               const std::optional<std::map<std::string, int>>& types = std::nullopt);

  /// Assembles a complex over an existing ground table. Facets need not be
  /// sorted or normalized; `types` lists the global type ids present.
  static WeightedComplex from_parts(std::shared_ptr<const GroundTable> ground, std::vector<Facet> facets,
                                    std::vector<int> types);

  int dim() const { return dim_; }
  bool is_partite() const { return !ground_->types.empty(); }
  /// Number of parts (d+1) of a partite complex, 0 otherwise.
  int num_parts() const { return static_cast<int>(types_.size()); }

  const std::vector<Facet>& facets() const { return facets_; }
  /// X(0), sorted.
  const std::vector<Vertex>& vertices() const { return vertices_; }

  const std::string& label(Vertex v) const { return ground_->labels.at(v); }
  std::vector<std::string> labels_of(const Face& face) const;
  std::optional<Vertex> find(std::string_view label) const;
  /// Sorted face from labels; throws UnknownVertex.
  Face face_from_labels(const std::vector<std::string>& labels) const;

  /// Global type ids present in this complex, sorted ascending.
  const std::vector<int>& types() const { return types_; }
  int type_of(Vertex v) const { return ground_->types.at(v); }
  /// Local position of a global type id, or -1.
  int type_position(int type) const;
  /// Local type position of a vertex.
  int local_type(Vertex v) const { return type_position(type_of(v)); }
  /// Vertex of the given local type in facet `facet` (partite only).
  Vertex typed_vertex(std::size_t facet, int position) const {
    return typed_[facet * types_.size() + static_cast<std::size_t>(position)];
  }
  TypeMask type_mask(const Face& face) const;
  TypeMask full_mask() const { return types_.size() >= 32 ? ~TypeMask{0} : (TypeMask{1} << types_.size()) - 1; }
  std::vector<int> types_of_mask(TypeMask mask) const;
  TypeMask mask_of_types(const std::vector<int>& types) const;

  bool contains_face(const Face& face) const;
  int codim(const Face& face) const { return dim_ + 1 - static_cast<int>(face.size()); }

  const std::shared_ptr<const GroundTable>& ground() const { return ground_; }

 private:
  WeightedComplex() = default;
  void finalize();

  std::shared_ptr<const GroundTable> ground_;
  std::vector<Facet> facets_;
  std::vector<Vertex> vertices_;
  std::vector<int> types_;
  std::vector<Vertex> typed_;
  int dim_ = -1;
};

/// A face together with the facets that contain it.
struct FaceClass {
  Face face;
  std::vector<std::uint32_t> facets;  // indices into WeightedComplex::facets()
  double mass = 0.0;                  // Pr_{sigma ~ pi}[face ⊆ sigma]
};

/// All faces whose type set is `mask`, in lexicographic order.
std::vector<FaceClass> faces_by_type_mask(const WeightedComplex& X, TypeMask mask);

/// All faces with exactly `size` vertices, in lexicographic order.
std::vector<FaceClass> faces_by_size(const WeightedComplex& X, int size);

/// Distinct projections of facets onto the given global types. Throws NotPartite.
std::vector<Face> faces_of_type(const WeightedComplex& X, const std::vector<int>& types);

/// Link of `tau` with renormalized weights. Throws FaceNotInComplex when tau
/// is not a face or has co-dimension 0.
WeightedComplex link(const WeightedComplex& X, const Face& tau);

struct FaceDistribution {
  int level = 0;
  std::vector<std::pair<Face, double>> weights;  // lexicographic by face
};

/// pi_i over X(i), 0 <= i <= d. Throws LevelOutOfRange.
FaceDistribution induced_distribution(const WeightedComplex& X, int level);

struct ConnectivityReport {
  bool totally_connected = true;
  std::optional<Face> witness;  // first face whose link 1-skeleton is disconnected
  /// Partite only: type set -> whether the 1-skeleton restricted to those types is connected.
  std::map<std::vector<int>, bool> type_connected;
  bool types_connected = true;
};

/// Limits for sweeps that enumerate every type subset or face.
struct SweepOptions {
  int threads = 1;
  int max_dim = 16;
};

ConnectivityReport connectivity_report(const WeightedComplex& X, const SweepOptions& options = {});

/// Whether the 1-skeleton of the link of the face class is connected.
bool link_connected(const WeightedComplex& X, const FaceClass& face);

/// Product of complexes on disjoint label sets. Types of later partite factors
/// are shifted past those of earlier ones. Throws GroundSetOverlap.
WeightedComplex product(const std::vector<WeightedComplex>& factors);

/// Throws SizeCap when a full sweep over X would exceed the dimension cap.
void check_sweep_cap(const WeightedComplex& X, const SweepOptions& options);

}  // namespace hdx
