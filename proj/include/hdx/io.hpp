#pragma once

// JSON reading and writing for complexes and every report type.

#include <json.hpp>
#include <string>

#include "hdx/complex.hpp"
#include "hdx/partite.hpp"
#include "hdx/spectra.hpp"
#include "hdx/trickledown.hpp"

namespace hdx {

using json = nlohmann::ordered_json;

/// {"d": int, "types": {label: int} | null, "facets": [{"verts": [label...], "w": weight}]}.
/// Throws MalformedInput plus the build errors of WeightedComplex.
WeightedComplex complex_from_json(const json& j);
json complex_to_json(const WeightedComplex& X);

WeightedComplex read_complex(const std::string& path);
json read_json(const std::string& path);  // throws MalformedInput
void write_text(const std::string& path, const std::string& text);

json face_json(const WeightedComplex& X, const Face& face);
json mask_json(const std::vector<int>& types, TypeMask mask);

json profile_to_json(const WeightedComplex& X, const SpectralProfile& profile, const EigenOptions& eigen);
json epsilon_to_json(const WeightedComplex* X, const EpsilonTable& eps, const DependencyGraph& G);
json conditions_to_json(const ConditionReport& r);
json classical_to_json(const ClassicalBound& b);
json degree_bounds_to_json(const std::vector<DegreeBoundRow>& rows);
json fvectors_to_json(const FVectors& f);
json diagnostics_to_json(const InequalityDiagnostics& d);
json scalar_to_json(const FVectors& f, const ScalarReport& r);
json matrix_to_json(const WeightedComplex& X, const FVectors& f, const MatrixReport& r);
json bounds_to_json(const WeightedComplex& X, const FVectors& f, const BoundProfile& b);
json per_link_to_json(const WeightedComplex& X, const std::vector<LinkCondition>& rows);
json scenario_to_json(const ScenarioResult& r);
json decomposition_to_json(const WeightedComplex& X, const ProductDecomposition& p);

}  // namespace hdx
