#include "hdx/io.hpp"

#include <bit>
#include <fstream>
#include <sstream>

#include "hdx/error.hpp"

namespace hdx {

WeightedComplex complex_from_json(const json& j) {
  try {
    if (!j.is_object() || !j.contains("facets") || !j["facets"].is_array()) {
      throw Error(ErrorKind::MalformedInput, "expected an object with a \"facets\" array");
    }
    std::vector<FacetInput> facets;
    for (const auto& f : j["facets"]) {
      FacetInput in;
      in.vertices = f.at("verts").get<std::vector<std::string>>();
      in.weight = f.contains("w") ? f["w"].get<double>() : 1.0;
      facets.push_back(std::move(in));
    }
    std::optional<std::map<std::string, int>> types;
    if (j.contains("types") && !j["types"].is_null()) types = j["types"].get<std::map<std::string, int>>();
    WeightedComplex X = WeightedComplex::build(facets, types);
    if (j.contains("d") && !j["d"].is_null() && j["d"].get<int>() != X.dim()) {
      throw Error(ErrorKind::NonPure, "declared d = " + std::to_string(j["d"].get<int>()) +
                                          " but facets have dimension " + std::to_string(X.dim()));
    }
    return X;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::MalformedInput, e.what());
  }
}

json complex_to_json(const WeightedComplex& X) {
  json j;
  j["d"] = X.dim();
  if (X.is_partite()) {
    json types = json::object();
    for (Vertex v : X.vertices()) types[X.label(v)] = X.type_of(v);
    j["types"] = types;
  } else {
    j["types"] = nullptr;
  }
  json facets = json::array();
  for (const auto& f : X.facets()) facets.push_back({{"verts", X.labels_of(f.vertices)}, {"w", f.weight}});
  j["facets"] = facets;
  return j;
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::MalformedInput, "cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::MalformedInput, "'" + path + "': " + e.what());
  }
}

WeightedComplex read_complex(const std::string& path) { return complex_from_json(read_json(path)); }

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::MalformedInput, "cannot write '" + path + "'");
  out << text;
}

json face_json(const WeightedComplex& X, const Face& face) { return X.labels_of(face); }

json mask_json(const std::vector<int>& types, TypeMask mask) {
  json out = json::array();
  for (std::size_t p = 0; p < types.size(); ++p) {
    if (mask & (TypeMask{1} << p)) out.push_back(types[p]);
  }
  return out;
}

json profile_to_json(const WeightedComplex& X, const SpectralProfile& profile, const EigenOptions& eigen) {
  json j;
  j["eigen_tolerance"] = eigen.tolerance;
  j["totally_connected"] = profile.totally_connected();
  json gamma = json::array(), argmax = json::array(), counts = json::array();
  for (const auto& level : profile.levels) {
    gamma.push_back({{"k", level.k}, {"gamma", level.gamma}});
    argmax.push_back({{"k", level.k}, {"face", face_json(X, level.argmax)}});
    counts.push_back({{"k", level.k}, {"faces", level.faces}});
  }
  j["gamma"] = gamma;
  j["argmax_faces"] = argmax;
  j["face_counts"] = counts;
  json witnesses = json::array();
  for (const auto& w : profile.witnesses) witnesses.push_back(face_json(X, w));
  j["witnesses"] = witnesses;
  if (X.is_partite()) {
    json by_type = json::array();
    for (const auto& [mask, lambda] : profile.by_type) {
      by_type.push_back({{"type", mask_json(X.types(), mask)}, {"lambda2", lambda}});
    }
    j["by_type"] = by_type;
  }
  if (!profile.table.empty()) {
    json table = json::array();
    for (const auto& row : profile.table) {
      table.push_back({{"face", face_json(X, row.face)},
                       {"codim", row.codim},
                       {"connected", row.connected},
                       {"lambda2", row.lambda2}});
    }
    j["table"] = table;
  }
  return j;
}

json epsilon_to_json(const WeightedComplex* X, const EpsilonTable& eps, const DependencyGraph& G) {
  json j;
  j["types"] = eps.types;
  j["tolerance"] = G.tolerance;
  json rows = json::array(), raw = json::array();
  for (int i = 0; i < eps.size(); ++i) {
    json r = json::array(), rr = json::array();
    for (int k = 0; k < eps.size(); ++k) {
      r.push_back(eps.value(i, k));
      rr.push_back(eps.raw(i, k));
    }
    rows.push_back(r);
    raw.push_back(rr);
  }
  j["eps"] = rows;
  j["eps_raw"] = raw;
  if (X) {
    json arg = json::array();
    for (const auto& [ij, face] : eps.argmax) {
      arg.push_back({{"i", eps.types[ij.first]}, {"j", eps.types[ij.second]}, {"face", face_json(*X, face)}});
    }
    j["argmax_faces"] = arg;
  }
  j["Delta"] = {{"per_i", G.degree}, {"max", G.max_degree}};
  json comps = json::array();
  for (const auto& c : G.components) {
    json ids = json::array();
    for (int p : c) ids.push_back(eps.types[p]);
    comps.push_back(ids);
  }
  j["components"] = comps;
  return j;
}

json conditions_to_json(const ConditionReport& r) {
  return {{"variant", to_string(r.variant)},
          {"ordering", to_string(r.ordering)},
          {"delta", r.delta},
          {"margin_tol", r.margin_tol},
          {"Delta", r.max_degree},
          {"degree", r.degree},
          {"cond1_margins", r.cond1},
          {"cond2_margins", r.cond2},
          {"worst_cond1", r.worst_cond1},
          {"worst_cond2", r.worst_cond2},
          {"pass", r.pass}};
}

json classical_to_json(const ClassicalBound& b) {
  json rows = json::array();
  for (std::size_t i = 0; i < b.k.size(); ++i) rows.push_back({{"k", b.k[i]}, {"bound", b.bound[i]}});
  return {{"gamma2", b.gamma2}, {"d", b.d}, {"delta", b.delta}, {"bounds", rows}, {"coarse", b.coarse}};
}

json degree_bounds_to_json(const std::vector<DegreeBoundRow>& rows) {
  json out = json::array();
  for (const auto& r : rows) {
    json row = {{"k", r.k}, {"bound", r.bound}, {"stated", r.stated}, {"composed", r.composed},
                {"composed_tighter", r.composed_tighter}};
    row["delta_k"] = r.delta_k ? json(*r.delta_k) : json(nullptr);
    out.push_back(row);
  }
  return out;
}

json fvectors_to_json(const FVectors& f) {
  json j;
  j["types"] = f.eps.types;
  j["delta"] = f.delta;
  j["ordering"] = to_string(f.ordering);
  j["constants"] = {{"c13", f.c13}, {"c_prime", f.c_prime}, {"c", f.c}};
  j["Delta"] = f.max_degree;
  json sets = json::array();
  for (TypeMask S = 0; S < f.f.size(); ++S) {
    if (!f.defined(S)) continue;
    sets.push_back({{"S", mask_json(f.eps.types, S)}, {"k", f.parts - std::popcount(S)}, {"f", f.f[S]}});
  }
  j["f"] = sets;
  json g = json::array();
  for (int i = 0; i < f.parts; ++i) {
    for (int k = 0; k < f.parts; ++k) {
      if (f.g[i][k].empty()) continue;
      g.push_back({{"i", f.eps.types[i]}, {"j", f.eps.types[k]},
                   {"values", std::vector<double>(f.g[i][k].begin() + 1, f.g[i][k].end())}});
    }
  }
  j["g"] = g;
  json h = json::array();
  for (int i = 0; i < f.parts; ++i) {
    if (f.h[i].empty()) continue;
    h.push_back({{"i", f.eps.types[i]}, {"values", std::vector<double>(f.h[i].begin() + 1, f.h[i].end())}});
  }
  j["h"] = h;
  return j;
}

json diagnostics_to_json(const InequalityDiagnostics& d) {
  return {{"worst_case1", d.worst_case1}, {"case1_checks", d.case1_checks}, {"worst_case2", d.worst_case2},
          {"case2_checks", d.case2_checks}, {"worst_sumeps", d.worst_sumeps}};
}

json scalar_to_json(const FVectors& f, const ScalarReport& r) {
  json sets = json::array();
  for (const auto& c : r.sets) {
    json row = {{"S", mask_json(f.eps.types, c.S)}, {"k", c.k}, {"connected", c.connected}};
    if (c.connected) row["cap_margin"] = c.cap_margin;
    if (c.k == 2) row["base_margin"] = c.base_margin;
    if (c.connected && c.k >= 3) row["recursion_margin"] = c.recursion_margin;
    if (!c.connected) row["sum_rule_residual"] = c.sum_rule_residual;
    sets.push_back(row);
  }
  return {{"tolerance", r.tol},       {"pass", r.pass},
          {"worst_cap", r.worst_cap}, {"worst_base", r.worst_base},
          {"worst_recursion", r.worst_recursion}, {"worst_sum_rule", r.worst_sum_rule},
          {"sets", sets}};
}

json matrix_to_json(const WeightedComplex& X, const FVectors& f, const MatrixReport& r) {
  json j = {{"tolerance", r.tol},
            {"identity_tolerance", 1e-12},
            {"pass", r.pass},
            {"worst_lower", r.worst_lower},
            {"worst_upper", r.worst_upper},
            {"worst_recursion", r.worst_recursion},
            {"worst_identity_gap", r.worst_identity_gap},
            {"worst_product_residual", r.worst_product},
            {"worst_rho_slack", r.worst_rho_slack}};
  if (!r.faces.empty()) {
    json faces = json::array();
    for (const auto& c : r.faces) {
      const char* branch = c.branch == MatrixFaceCheck::Branch::Base        ? "base"
                           : c.branch == MatrixFaceCheck::Branch::Recursive ? "recursive"
                                                                            : "product";
      faces.push_back({{"face", face_json(X, c.face)},
                       {"S", mask_json(f.eps.types, c.S)},
                       {"k", c.k},
                       {"branch", branch},
                       {"lower", c.lower},
                       {"upper", c.upper},
                       {"recursion", c.recursion},
                       {"identity_gap", c.identity_gap},
                       {"product_residual", c.product_residual},
                       {"rho", c.rho},
                       {"lambda2", c.lambda2}});
    }
    j["faces"] = faces;
  }
  return j;
}

namespace {

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json bound_row(const FVectors& f, const BoundRow& r) {
  json row = {{"k", r.k}};
  if (r.S) row["S"] = mask_json(f.eps.types, *r.S);
  row["exact"] = r.exact;
  row["certified"] = r.certified;
  row["slack"] = r.slack;
  if (!r.S) {
    row["classical"] = optional_json(r.classical);
    row["degree_based"] = optional_json(r.degree_based);
    row["main"] = optional_json(r.main);
  }
  return row;
}

}  // namespace

json bounds_to_json(const WeightedComplex& X, const FVectors& f, const BoundProfile& b) {
  json by_k = json::array(), by_type = json::array();
  for (const auto& r : b.by_k) by_k.push_back(bound_row(f, r));
  for (const auto& r : b.by_type) by_type.push_back(bound_row(f, r));
  json j = {{"delta", b.delta}, {"tolerance", b.tol}, {"by_k", by_k}, {"by_type", by_type},
            {"worst_face_slack", b.worst_face_slack}};
  j["worst_face"] = b.worst_face ? face_json(X, *b.worst_face) : json(nullptr);
  return j;
}

json per_link_to_json(const WeightedComplex& X, const std::vector<LinkCondition>& rows) {
  json out = json::array();
  for (const auto& r : rows) {
    out.push_back({{"face", face_json(X, r.face)},
                   {"k", r.k},
                   {"Delta", r.max_degree},
                   {"pass", r.pass},
                   {"delta_star", optional_json(r.delta_star)},
                   {"bound", optional_json(r.bound)}});
  }
  return out;
}

json scenario_to_json(const ScenarioResult& r) {
  return {{"Delta", r.Delta},
          {"eps", r.eps},
          {"delta", optional_json(r.delta)},
          {"cond1_margin", r.cond1_margin},
          {"cond2_margin", r.cond2_margin},
          {"pass", r.pass},
          {"delta_star", optional_json(r.delta_star)},
          {"c", r.c},
          {"bound_coeff", r.bound_coeff}};
}

json decomposition_to_json(const WeightedComplex& X, const ProductDecomposition& p) {
  json blocks = json::array();
  for (std::size_t b = 0; b < p.components.size(); ++b) {
    blocks.push_back({{"types", p.components[b]}, {"anchor", face_json(X, p.anchors[b])},
                      {"facets", p.factors[b].facets().size()}});
  }
  json j = {{"blocks", blocks}, {"residual", p.residual}};
  if (p.strict) j["strict_residual"] = p.strict_residual;
  return j;
}

}  // namespace hdx
