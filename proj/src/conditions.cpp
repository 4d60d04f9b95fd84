#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>

#include "hdx/error.hpp"
#include "hdx/numeric.hpp"
#include "hdx/trickledown.hpp"

namespace hdx {

std::string to_string(Ordering o) { return o == Ordering::Decreasing ? "decreasing" : "increasing"; }

std::string to_string(Variant v) {
  switch (v) {
    case Variant::Main: return "main";
    case Variant::Averaged: return "averaged";
    case Variant::DeltaUniform: return "delta_uniform";
  }
  return "main";
}

Ordering parse_ordering(const std::string& s) {
  if (s == "decreasing") return Ordering::Decreasing;
  if (s == "increasing") return Ordering::Increasing;
  throw Error(ErrorKind::BadParams, "unknown ordering '" + s + "' (expected decreasing|increasing)");
}

Variant parse_variant(const std::string& s) {
  if (s == "main") return Variant::Main;
  if (s == "averaged") return Variant::Averaged;
  if (s == "delta_uniform") return Variant::DeltaUniform;
  throw Error(ErrorKind::BadParams, "unknown variant '" + s + "' (expected main|averaged|delta_uniform)");
}

ClassicalBound classical_bound(double gamma2, int d) {
  if (d < 1) throw Error(ErrorKind::BadParams, "dimension must be at least 1");
  const double g = std::max(gamma2, 0.0);
  if (g * d >= 1.0) {
    throw Error(ErrorKind::ConditionUnsatisfiable,
                "gamma_2 = " + std::to_string(gamma2) + " is not below 1/d = " + std::to_string(1.0 / d));
  }
  ClassicalBound out;
  out.gamma2 = gamma2;
  out.d = d;
  const double eta = d * g;  // 1 - delta
  out.delta = 1.0 - eta;
  for (int k = 2; k <= d + 1; ++k) {
    out.k.push_back(k);
    out.bound.push_back(eta / (d - (k - 2) * eta));
  }
  out.coarse = eta / (d * out.delta);
  return out;
}

namespace {

void check_delta(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw Error(ErrorKind::DeltaOutOfRange, "delta = " + std::to_string(delta) + " must lie in (0, 1)");
  }
}

// H_n(l-1) weights with the n = 0 floor of 1.
long double tail_weight(int n, int l) { return n == 0 ? 1.0L : static_cast<long double>(harmonic_tail(n, l - 1)); }

std::vector<double> ordered(std::vector<double> values, Ordering ordering) {
  if (ordering == Ordering::Decreasing) {
    std::sort(values.begin(), values.end(), std::greater<>());
  } else {
    std::sort(values.begin(), values.end());
  }
  return values;
}

void finish(ConditionReport& r) {
  r.worst_cond1 = r.cond1.empty() ? 0.0 : *std::min_element(r.cond1.begin(), r.cond1.end());
  r.worst_cond2 = r.cond2.empty() ? 0.0 : *std::min_element(r.cond2.begin(), r.cond2.end());
  r.pass = r.worst_cond1 >= -r.margin_tol && r.worst_cond2 >= -r.margin_tol;
}

double row_max(const EpsilonTable& eps, int i) {
  double m = 0.0;
  for (int j = 0; j < eps.size(); ++j) {
    if (j != i) m = std::max(m, eps(i, j));
  }
  return m;
}

}  // namespace

ConditionReport check_main_conditions(const EpsilonTable& eps, const DependencyGraph& G, double delta,
                                      Ordering ordering, double margin_tol) {
  check_delta(delta);
  if (G.size() != eps.size()) throw Error(ErrorKind::BadParams, "dependency graph does not match the eps table");
  ConditionReport r;
  r.variant = Variant::Main;
  r.ordering = ordering;
  r.delta = delta;
  r.margin_tol = margin_tol;
  r.max_degree = G.max_degree;
  r.degree = G.degree;
  const long double H = G.max_degree <= 1 ? 1.0L : harmonic(G.max_degree - 1);
  const long double rhs1 = static_cast<long double>(delta) * delta / 10.0L;
  for (int i = 0; i < eps.size(); ++i) {
    r.cond1.push_back(static_cast<double>(rhs1 - row_max(eps, i) * H));
    std::vector<double> row;
    for (int j : G.neighbors(i)) row.push_back(eps(i, j));
    row = ordered(std::move(row), ordering);
    const int n = static_cast<int>(row.size()) - 1;
    CompensatedSum s;
    s += 1.0L - static_cast<long double>(delta);
    for (int l = 1; l <= static_cast<int>(row.size()); ++l) s += -row[l - 1] * tail_weight(n, l);
    r.cond2.push_back(static_cast<double>(s.value()));
  }
  finish(r);
  return r;
}

ConditionReport check_averaged_conditions(const EpsilonTable& eps, double delta, Ordering ordering,
                                          double margin_tol) {
  check_delta(delta);
  ConditionReport r;
  r.variant = Variant::Averaged;
  r.ordering = ordering;
  r.delta = delta;
  r.margin_tol = margin_tol;
  const int d = eps.size() - 1;
  r.max_degree = d;
  r.degree.assign(eps.size(), d);
  const long double H = d >= 1 ? harmonic(d) : 0.0L;
  const long double rhs1 = static_cast<long double>(delta) * delta / 10.0L;
  for (int i = 0; i < eps.size(); ++i) {
    r.cond1.push_back(static_cast<double>(rhs1 - row_max(eps, i) * H));
    std::vector<double> row;
    for (int j = 0; j < eps.size(); ++j) {
      if (j != i) row.push_back(eps(i, j));
    }
    row = ordered(std::move(row), ordering);
    CompensatedSum s;
    s += (1.0L - static_cast<long double>(delta)) / d;
    for (int l = 1; l <= d; ++l) s += -row[l - 1] * static_cast<long double>(harmonic_tail(d, l - 1)) / d;
    r.cond2.push_back(static_cast<double>(s.value()));
  }
  finish(r);
  return r;
}

ConditionReport check_delta_uniform_conditions(const EpsilonTable& eps, const DependencyGraph& G, double delta,
                                               double margin_tol) {
  check_delta(delta);
  ConditionReport r;
  r.variant = Variant::DeltaUniform;
  r.delta = delta;
  r.margin_tol = margin_tol;
  r.max_degree = G.max_degree;
  r.degree = G.degree;
  const long double Delta = std::max(G.max_degree, 1);
  const long double ln = std::log(Delta);
  const long double rhs1 = static_cast<long double>(delta) * delta / (10.0L * (1.0L + ln));
  const long double rhs2 = (1.0L - static_cast<long double>(delta)) / (Delta + ln);
  for (int i = 0; i < eps.size(); ++i) {
    const double m = row_max(eps, i);
    r.cond1.push_back(static_cast<double>(rhs1 - m));
    r.cond2.push_back(static_cast<double>(rhs2 - m));
  }
  finish(r);
  return r;
}

ConditionReport check_conditions(const EpsilonTable& eps, const DependencyGraph& G, double delta, Variant variant,
                                 Ordering ordering, double margin_tol) {
  switch (variant) {
    case Variant::Main: return check_main_conditions(eps, G, delta, ordering, margin_tol);
    case Variant::Averaged: return check_averaged_conditions(eps, delta, ordering, margin_tol);
    case Variant::DeltaUniform: return check_delta_uniform_conditions(eps, G, delta, margin_tol);
  }
  throw Error(ErrorKind::Internal, "unknown variant");
}

std::optional<double> max_feasible_delta(const EpsilonTable& eps, const DependencyGraph& G, Variant variant,
                                         Ordering ordering, double margin_tol) {
  constexpr double kTop = 1.0 - 1e-9;
  auto report = [&](double delta) { return check_conditions(eps, G, delta, variant, ordering, margin_tol); };
  if (eps.size() < 2 || eps.value.maxCoeff() == 0.0) {
    return report(kTop).pass ? std::optional<double>(kTop) : std::nullopt;
  }
  // Condition 2 holds on an interval (0, delta_hi]; condition 1 on [delta_lo, 1).
  auto cond2_ok = [&](double delta) { return report(delta).worst_cond2 >= -margin_tol; };
  double lo = 1e-12;
  if (!cond2_ok(lo)) return std::nullopt;
  double hi = kTop;
  if (cond2_ok(hi)) {
    lo = hi;
  } else {
    while (hi - lo > 1e-13) {
      const double mid = 0.5 * (lo + hi);
      (cond2_ok(mid) ? lo : hi) = mid;
    }
  }
  if (!report(lo).pass) return std::nullopt;
  return lo;
}

std::vector<LinkCondition> per_link_conditions(const WeightedComplex& X, double delta, Ordering ordering,
                                               const ProfileOptions& options) {
  check_delta(delta);
  if (!X.is_partite()) throw Error(ErrorKind::NotPartite, "per-link conditions need a partite complex");
  check_sweep_cap(X, options.sweep);
  std::vector<FaceClass> faces;
  for (TypeMask mask = 0; mask <= X.full_mask(); ++mask) {
    if (X.num_parts() - std::popcount(mask) < 3) continue;
    for (auto& cls : faces_by_type_mask(X, mask)) faces.push_back(std::move(cls));
  }
  ProfileOptions inner = options;
  inner.sweep.threads = 1;
  std::vector<LinkCondition> out(faces.size());
  parallel_for(faces.size(), options.sweep.threads, [&](std::size_t n) {
    const WeightedComplex L = faces[n].face.empty() ? X : link(X, faces[n].face);
    const EpsilonTable eps = epsilon_table(L, inner);
    const DependencyGraph G = dependency_graph(eps);
    LinkCondition& row = out[n];
    row.face = faces[n].face;
    row.k = X.codim(row.face);
    row.max_degree = G.max_degree;
    row.pass = check_main_conditions(eps, G, delta, ordering).pass;
    row.delta_star = max_feasible_delta(eps, G, Variant::Main, ordering);
    if (row.delta_star) row.bound = main_bound(*row.delta_star, row.k);
  });
  return out;
}

}  // namespace hdx
