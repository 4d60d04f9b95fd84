#include "hdx/complex.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <set>

#include "hdx/error.hpp"
#include "hdx/numeric.hpp"

namespace hdx {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::NonPure: return "NonPure";
    case ErrorKind::PartiteViolation: return "PartiteViolation";
    case ErrorKind::NonpositiveWeight: return "NonpositiveWeight";
    case ErrorKind::DuplicateFacet: return "DuplicateFacet";
    case ErrorKind::UnknownVertex: return "UnknownVertex";
    case ErrorKind::FaceNotInComplex: return "FaceNotInComplex";
    case ErrorKind::LevelOutOfRange: return "LevelOutOfRange";
    case ErrorKind::NotPartite: return "NotPartite";
    case ErrorKind::GroundSetOverlap: return "GroundSetOverlap";
    case ErrorKind::CodimTooSmall: return "CodimTooSmall";
    case ErrorKind::Disconnected: return "Disconnected";
    case ErrorKind::EmptyOrFullSet: return "EmptyOrFullSet";
    case ErrorKind::WrongDimension: return "WrongDimension";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::ConditionUnsatisfiable: return "ConditionUnsatisfiable";
    case ErrorKind::DeltaOutOfRange: return "DeltaOutOfRange";
    case ErrorKind::HypothesisViolated: return "HypothesisViolated";
    case ErrorKind::DenominatorNonpositive: return "DenominatorNonpositive";
    case ErrorKind::CertificateInvalid: return "CertificateInvalid";
    case ErrorKind::NoProperColoring: return "NoProperColoring";
    case ErrorKind::BadParams: return "BadParams";
    case ErrorKind::SizeCap: return "SizeCap";
    case ErrorKind::ConnectivityUnreachable: return "ConnectivityUnreachable";
    case ErrorKind::MalformedInput: return "MalformedInput";
    case ErrorKind::Internal: return "Internal";
  }
  return "Unknown";
}

WeightedComplex WeightedComplex::build(const std::vector<FacetInput>& input,
                                       const std::optional<std::map<std::string, int>>& types) {
  if (input.empty()) throw Error(ErrorKind::EmptyInput, "complex has no facets");

  auto ground = std::make_shared<GroundTable>();
  const std::size_t facet_size = input.front().vertices.size();
  if (facet_size == 0) throw Error(ErrorKind::NonPure, "facet with no vertices");

  std::vector<Facet> facets;
  facets.reserve(input.size());
  for (std::size_t f = 0; f < input.size(); ++f) {
    const auto& in = input[f];
    if (in.vertices.size() != facet_size) {
      throw Error(ErrorKind::NonPure, "facet " + std::to_string(f) + " has " + std::to_string(in.vertices.size()) +
                                          " vertices, expected " + std::to_string(facet_size));
    }
    if (!(in.weight > 0.0) || !std::isfinite(in.weight)) {
      throw Error(ErrorKind::NonpositiveWeight, "facet " + std::to_string(f) + " has weight " + std::to_string(in.weight));
    }
    Facet facet;
    facet.weight = in.weight;
    for (const auto& label : in.vertices) {
      auto [it, inserted] = ground->index.emplace(label, static_cast<Vertex>(ground->labels.size()));
      if (inserted) ground->labels.push_back(label);
      facet.vertices.push_back(it->second);
    }
    std::sort(facet.vertices.begin(), facet.vertices.end());
    if (std::adjacent_find(facet.vertices.begin(), facet.vertices.end()) != facet.vertices.end()) {
      throw Error(ErrorKind::NonPure, "facet " + std::to_string(f) + " repeats a vertex");
    }
    facets.push_back(std::move(facet));
  }

  const int d = static_cast<int>(facet_size) - 1;
  std::vector<int> type_ids;
  if (types) {
    ground->types.assign(ground->labels.size(), -1);
    for (const auto& [label, type] : *types) {
      auto it = ground->index.find(label);
      if (it == ground->index.end()) {
        throw Error(ErrorKind::UnknownVertex, "typed vertex '" + label + "' appears in no facet");
      }
      if (type < 0 || type > d) {
        throw Error(ErrorKind::PartiteViolation,
                    "vertex '" + label + "' has type " + std::to_string(type) + " outside [0, " + std::to_string(d) + "]");
      }
      ground->types[it->second] = type;
    }
    for (std::size_t v = 0; v < ground->labels.size(); ++v) {
      if (ground->types[v] < 0) throw Error(ErrorKind::PartiteViolation, "vertex '" + ground->labels[v] + "' has no type");
    }
    for (std::size_t f = 0; f < facets.size(); ++f) {
      std::vector<int> seen(facet_size, 0);
      for (Vertex v : facets[f].vertices) ++seen[ground->types[v]];
      for (int t = 0; t <= d; ++t) {
        if (seen[t] != 1) {
          throw Error(ErrorKind::PartiteViolation,
                      "facet " + std::to_string(f) + " has " + std::to_string(seen[t]) + " vertices of type " + std::to_string(t));
        }
      }
    }
    type_ids.resize(facet_size);
    std::iota(type_ids.begin(), type_ids.end(), 0);
  }
  return from_parts(std::move(ground), std::move(facets), std::move(type_ids));
}

WeightedComplex WeightedComplex::from_parts(std::shared_ptr<const GroundTable> ground, std::vector<Facet> facets,
                                            std::vector<int> types) {
  if (facets.empty()) throw Error(ErrorKind::EmptyInput, "complex has no facets");
  WeightedComplex X;
  X.ground_ = std::move(ground);
  X.facets_ = std::move(facets);
  X.types_ = std::move(types);
  X.dim_ = static_cast<int>(X.facets_.front().vertices.size()) - 1;
  X.finalize();
  return X;
}

void WeightedComplex::finalize() {
  std::sort(facets_.begin(), facets_.end(), [](const Facet& a, const Facet& b) { return a.vertices < b.vertices; });
  for (std::size_t f = 1; f < facets_.size(); ++f) {
    if (facets_[f].vertices == facets_[f - 1].vertices) {
      throw Error(ErrorKind::DuplicateFacet, "facet {" + std::to_string(f) + "} appears twice");
    }
  }
  CompensatedSum total;
  for (const auto& f : facets_) total += f.weight;
  const double z = static_cast<double>(total.value());
  for (auto& f : facets_) f.weight /= z;

  std::vector<Vertex> all;
  for (const auto& f : facets_) all.insert(all.end(), f.vertices.begin(), f.vertices.end());
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  vertices_ = std::move(all);

  typed_.clear();
  if (is_partite()) {
    std::sort(types_.begin(), types_.end());
    const std::size_t m = types_.size();
    typed_.assign(facets_.size() * m, 0);
    for (std::size_t f = 0; f < facets_.size(); ++f) {
      for (Vertex v : facets_[f].vertices) {
        const int pos = type_position(type_of(v));
        if (pos < 0) throw Error(ErrorKind::PartiteViolation, "vertex '" + label(v) + "' has a type not in the complex");
        typed_[f * m + pos] = v;
      }
    }
  }
}

std::vector<std::string> WeightedComplex::labels_of(const Face& face) const {
  std::vector<std::string> out;
  out.reserve(face.size());
  for (Vertex v : face) out.push_back(label(v));
  return out;
}

std::optional<Vertex> WeightedComplex::find(std::string_view label) const {
  auto it = ground_->index.find(std::string(label));
  if (it == ground_->index.end()) return std::nullopt;
  return it->second;
}

Face WeightedComplex::face_from_labels(const std::vector<std::string>& labels) const {
  Face face;
  for (const auto& l : labels) {
    auto v = find(l);
    if (!v) throw Error(ErrorKind::UnknownVertex, "no vertex labelled '" + l + "'");
    face.push_back(*v);
  }
  std::sort(face.begin(), face.end());
  face.erase(std::unique(face.begin(), face.end()), face.end());
  return face;
}

int WeightedComplex::type_position(int type) const {
  auto it = std::lower_bound(types_.begin(), types_.end(), type);
  if (it == types_.end() || *it != type) return -1;
  return static_cast<int>(it - types_.begin());
}

TypeMask WeightedComplex::type_mask(const Face& face) const {
  TypeMask mask = 0;
  for (Vertex v : face) {
    const int pos = local_type(v);
    if (pos < 0) throw Error(ErrorKind::FaceNotInComplex, "vertex '" + label(v) + "' has a type outside the complex");
    mask |= TypeMask{1} << pos;
  }
  return mask;
}

std::vector<int> WeightedComplex::types_of_mask(TypeMask mask) const {
  std::vector<int> out;
  for (std::size_t p = 0; p < types_.size(); ++p) {
    if (mask & (TypeMask{1} << p)) out.push_back(types_[p]);
  }
  return out;
}

TypeMask WeightedComplex::mask_of_types(const std::vector<int>& types) const {
  TypeMask mask = 0;
  for (int t : types) {
    const int pos = type_position(t);
    if (pos < 0) throw Error(ErrorKind::IndexOutOfRange, "type " + std::to_string(t) + " is not a part of the complex");
    mask |= TypeMask{1} << pos;
  }
  return mask;
}

bool WeightedComplex::contains_face(const Face& face) const {
  for (const auto& f : facets_) {
    if (std::includes(f.vertices.begin(), f.vertices.end(), face.begin(), face.end())) return true;
  }
  return false;
}

namespace {

struct FaceHash {
  std::size_t operator()(const Face& face) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (Vertex v : face) {
      h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
  }
};

std::vector<FaceClass> collect(std::unordered_map<Face, FaceClass, FaceHash>& groups, const WeightedComplex& X) {
  std::vector<FaceClass> out;
  out.reserve(groups.size());
  for (auto& [face, cls] : groups) out.push_back(std::move(cls));
  std::sort(out.begin(), out.end(), [](const FaceClass& a, const FaceClass& b) { return a.face < b.face; });
  for (auto& cls : out) {
    CompensatedSum mass;
    for (auto f : cls.facets) mass += X.facets()[f].weight;
    cls.mass = static_cast<double>(mass.value());
  }
  return out;
}

}  // namespace

std::vector<FaceClass> faces_by_type_mask(const WeightedComplex& X, TypeMask mask) {
  if (!X.is_partite()) throw Error(ErrorKind::NotPartite, "type enumeration on a non-partite complex");
  std::vector<int> positions;
  for (int p = 0; p < X.num_parts(); ++p) {
    if (mask & (TypeMask{1} << p)) positions.push_back(p);
  }
  std::unordered_map<Face, FaceClass, FaceHash> groups;
  Face key(positions.size());
  for (std::uint32_t f = 0; f < X.facets().size(); ++f) {
    for (std::size_t i = 0; i < positions.size(); ++i) key[i] = X.typed_vertex(f, positions[i]);
    std::sort(key.begin(), key.end());
    auto& cls = groups[key];
    if (cls.facets.empty()) cls.face = key;
    cls.facets.push_back(f);
  }
  return collect(groups, X);
}

std::vector<FaceClass> faces_by_size(const WeightedComplex& X, int size) {
  const int n = X.dim() + 1;
  if (size < 0 || size > n) throw Error(ErrorKind::LevelOutOfRange, "face size " + std::to_string(size));
  std::unordered_map<Face, FaceClass, FaceHash> groups;
  std::vector<int> pick(size);
  Face key(size);
  for (std::uint32_t f = 0; f < X.facets().size(); ++f) {
    const auto& verts = X.facets()[f].vertices;
    std::iota(pick.begin(), pick.end(), 0);
    while (true) {
      for (int i = 0; i < size; ++i) key[i] = verts[pick[i]];
      auto& cls = groups[key];
      if (cls.facets.empty()) cls.face = key;
      cls.facets.push_back(f);
      int i = size - 1;
      while (i >= 0 && pick[i] == n - size + i) --i;
      if (i < 0) break;
      ++pick[i];
      for (int j = i + 1; j < size; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  return collect(groups, X);
}

std::vector<Face> faces_of_type(const WeightedComplex& X, const std::vector<int>& types) {
  if (!X.is_partite()) throw Error(ErrorKind::NotPartite, "faces_of_type needs a partite complex");
  std::vector<Face> out;
  for (auto& cls : faces_by_type_mask(X, X.mask_of_types(types))) out.push_back(std::move(cls.face));
  return out;
}

WeightedComplex link(const WeightedComplex& X, const Face& tau) {
  if (X.codim(tau) < 1) {
    throw Error(ErrorKind::FaceNotInComplex, "link needs a face of co-dimension at least 1");
  }
  std::vector<Facet> facets;
  for (const auto& f : X.facets()) {
    if (!std::includes(f.vertices.begin(), f.vertices.end(), tau.begin(), tau.end())) continue;
    Facet g;
    g.weight = f.weight;
    std::set_difference(f.vertices.begin(), f.vertices.end(), tau.begin(), tau.end(), std::back_inserter(g.vertices));
    facets.push_back(std::move(g));
  }
  if (facets.empty()) throw Error(ErrorKind::FaceNotInComplex, "face is not contained in any facet");
  std::vector<int> types;
  if (X.is_partite()) {
    const TypeMask removed = X.type_mask(tau);
    for (int p = 0; p < X.num_parts(); ++p) {
      if (!(removed & (TypeMask{1} << p))) types.push_back(X.types()[p]);
    }
  }
  return WeightedComplex::from_parts(X.ground(), std::move(facets), std::move(types));
}

FaceDistribution induced_distribution(const WeightedComplex& X, int level) {
  if (level < 0 || level > X.dim()) {
    throw Error(ErrorKind::LevelOutOfRange, "level " + std::to_string(level) + " outside [0, " + std::to_string(X.dim()) + "]");
  }
  const auto classes = faces_by_size(X, level + 1);
  // binom(d+1, i+1)
  long double binom = 1.0L;
  for (int j = 0; j < level + 1; ++j) binom = binom * (X.dim() + 1 - j) / (j + 1);

  FaceDistribution out;
  out.level = level;
  out.weights.reserve(classes.size());
  for (const auto& cls : classes) out.weights.emplace_back(cls.face, static_cast<double>(cls.mass / binom));

  if (level == 0 && X.is_partite()) {
    // (d+1) pi_0(x) = Pr[x in sigma]; the marginals of each part sum to one.
    std::vector<CompensatedSum> per_type(X.num_parts());
    for (const auto& cls : classes) {
      per_type[X.local_type(cls.face.front())] += cls.mass;
    }
    for (const auto& s : per_type) {
      if (std::fabs(static_cast<double>(s.value()) - 1.0) > 1e-10) {
        throw Error(ErrorKind::Internal, "part marginals do not sum to one");
      }
    }
  }
  return out;
}

namespace {

struct DisjointSets {
  std::vector<int> parent;
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[b] = a;
    return true;
  }
};

}  // namespace

bool link_connected(const WeightedComplex& X, const FaceClass& cls) {
  std::vector<Vertex> verts;
  for (auto f : cls.facets) {
    for (Vertex v : X.facets()[f].vertices) verts.push_back(v);
  }
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  Face rest;
  rest.reserve(verts.size());
  std::set_difference(verts.begin(), verts.end(), cls.face.begin(), cls.face.end(), std::back_inserter(rest));
  if (rest.size() <= 1) return true;
  DisjointSets sets(rest.size());
  std::size_t components = rest.size();
  auto pos = [&](Vertex v) { return static_cast<int>(std::lower_bound(rest.begin(), rest.end(), v) - rest.begin()); };
  for (auto f : cls.facets) {
    int first = -1;
    for (Vertex v : X.facets()[f].vertices) {
      if (std::binary_search(cls.face.begin(), cls.face.end(), v)) continue;
      const int p = pos(v);
      if (first < 0) {
        first = p;
      } else if (sets.unite(first, p)) {
        --components;
      }
    }
  }
  return components == 1;
}

void check_sweep_cap(const WeightedComplex& X, const SweepOptions& options) {
  if (X.dim() > options.max_dim) {
    throw Error(ErrorKind::SizeCap, "dimension " + std::to_string(X.dim()) + " exceeds the sweep cap " +
                                        std::to_string(options.max_dim) + " (raise --max-dim to override)");
  }
}

ConnectivityReport connectivity_report(const WeightedComplex& X, const SweepOptions& options) {
  check_sweep_cap(X, options);
  ConnectivityReport report;
  // Faces of co-dimension >= 2 have at most d-1 vertices.
  for (int size = 0; size <= X.dim() - 1 && report.totally_connected; ++size) {
    for (const auto& cls : faces_by_size(X, size)) {
      if (!link_connected(X, cls)) {
        report.totally_connected = false;
        report.witness = cls.face;
        break;
      }
    }
  }
  if (!X.is_partite()) return report;

  // 1-skeleton of X restricted to vertices with types in S.
  const int m = X.num_parts();
  for (TypeMask mask = 1; mask <= X.full_mask(); ++mask) {
    if (std::popcount(mask) < 2) continue;
    std::vector<Vertex> verts;
    for (Vertex v : X.vertices()) {
      if (mask & (TypeMask{1} << X.local_type(v))) verts.push_back(v);
    }
    DisjointSets sets(verts.size());
    std::size_t components = verts.size();
    auto pos = [&](Vertex v) { return static_cast<int>(std::lower_bound(verts.begin(), verts.end(), v) - verts.begin()); };
    for (std::size_t f = 0; f < X.facets().size(); ++f) {
      int first = -1;
      for (int p = 0; p < m; ++p) {
        if (!(mask & (TypeMask{1} << p))) continue;
        const int q = pos(X.typed_vertex(f, p));
        if (first < 0) {
          first = q;
        } else if (sets.unite(first, q)) {
          --components;
        }
      }
    }
    const bool ok = components == 1;
    report.type_connected[X.types_of_mask(mask)] = ok;
    report.types_connected = report.types_connected && ok;
  }
  return report;
}

WeightedComplex product(const std::vector<WeightedComplex>& factors) {
  if (factors.empty()) throw Error(ErrorKind::EmptyInput, "product of no factors");
  bool partite = true;
  for (const auto& f : factors) partite = partite && f.is_partite();

  auto ground = std::make_shared<GroundTable>();
  std::vector<std::vector<Vertex>> remap(factors.size());
  int type_offset = 0;
  std::vector<int> types;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const auto& Y = factors[i];
    remap[i].assign(Y.ground()->labels.size(), 0);
    for (Vertex v : Y.vertices()) {
      const auto& l = Y.label(v);
      auto [it, inserted] = ground->index.emplace(l, static_cast<Vertex>(ground->labels.size()));
      if (!inserted) throw Error(ErrorKind::GroundSetOverlap, "vertex '" + l + "' appears in two factors");
      ground->labels.push_back(l);
      if (partite) ground->types.push_back(type_offset + Y.local_type(v));
      remap[i][v] = it->second;
    }
    if (partite) {
      for (int p = 0; p < Y.num_parts(); ++p) types.push_back(type_offset + p);
      type_offset += Y.num_parts();
    }
  }

  std::vector<Facet> facets{Facet{{}, 1.0}};
  for (std::size_t i = 0; i < factors.size(); ++i) {
    std::vector<Facet> next;
    next.reserve(facets.size() * factors[i].facets().size());
    for (const auto& partial : facets) {
      for (const auto& f : factors[i].facets()) {
        Facet g = partial;
        for (Vertex v : f.vertices) g.vertices.push_back(remap[i][v]);
        g.weight *= f.weight;
        next.push_back(std::move(g));
      }
    }
    facets = std::move(next);
  }
  for (auto& f : facets) std::sort(f.vertices.begin(), f.vertices.end());
  return WeightedComplex::from_parts(std::move(ground), std::move(facets), std::move(types));
}

}  // namespace hdx
