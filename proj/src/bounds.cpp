#include <algorithm>
#include <bit>
#include <cmath>
#include <map>

#include "hdx/error.hpp"
#include "hdx/trickledown.hpp"

namespace hdx {

double main_constant(double delta) { return 2.0 * (1.0 + delta * delta / 10.0) / (1.0 + delta); }

double main_bound(double delta, int k) {
  if (!(delta > 0.0 && delta <= 1.0)) {
    throw Error(ErrorKind::DeltaOutOfRange, "delta = " + std::to_string(delta) + " must lie in (0, 1]");
  }
  if (k < 2) throw Error(ErrorKind::CodimTooSmall, "bounds start at co-dimension 2");
  return main_constant(delta) * (1.0 - delta) / ((k - 1) * delta);
}

std::vector<DegreeBoundRow> degree_bounds(double gamma2, int Delta, double delta, int d) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw Error(ErrorKind::DeltaOutOfRange, "delta = " + std::to_string(delta) + " must lie in (0, 1)");
  }
  const double D = std::max(Delta, 1);
  const double lnD = std::log(D);
  const double h1 = delta * delta / (10.0 * (1.0 + lnD));
  const double h2 = (1.0 - delta) / (D + lnD);
  if (gamma2 > h1) {
    throw Error(ErrorKind::HypothesisViolated, "gamma_2 = " + std::to_string(gamma2) +
                                                   " > delta^2/(10(1+ln Delta)) = " + std::to_string(h1));
  }
  if (gamma2 > h2) {
    throw Error(ErrorKind::HypothesisViolated,
                "gamma_2 = " + std::to_string(gamma2) + " > (1-delta)/(Delta+ln Delta) = " + std::to_string(h2));
  }
  const double c = main_constant(delta);
  std::vector<DegreeBoundRow> rows;
  for (int k = 2; k <= d + 1; ++k) {
    DegreeBoundRow r;
    r.k = k;
    if (k >= Delta) {
      r.stated = c * (1.0 - delta) / (k * delta);
      r.composed = r.stated;
    } else {
      const double dk = 1.0 - (1.0 - delta) * (k + std::log(k)) / (D + lnD);
      r.delta_k = dk;
      r.stated = c * (1.0 - dk) / (k * delta);
      r.composed = main_constant(dk) * (1.0 - dk) / (k * dk);
    }
    r.composed_tighter = r.composed < r.stated;
    r.bound = r.stated;
    rows.push_back(r);
  }
  return rows;
}

BoundProfile bound_profile(const WeightedComplex& X, const FVectors& F, const ProfileOptions& options, double tol) {
  const ScalarReport scalar = verify_scalar_conditions(X, F, options, tol);
  if (!scalar.pass) {
    throw Error(ErrorKind::CertificateInvalid,
                "scalar conditions fail (cap " + std::to_string(scalar.worst_cap) + ", base " +
                    std::to_string(scalar.worst_base) + ", recursion " + std::to_string(scalar.worst_recursion) +
                    ", sum rule " + std::to_string(scalar.worst_sum_rule) + ")");
  }
  const std::vector<LinkSpectrum> spectra = link_spectra(X, options);
  const int d = X.dim();
  const int m = F.parts;

  BoundProfile out;
  out.delta = F.delta;
  out.tol = tol;
  std::map<TypeMask, double> exact;
  bool first = true;
  for (const auto& row : spectra) {
    auto [it, inserted] = exact.emplace(row.type, row.lambda2);
    if (!inserted) it->second = std::max(it->second, row.lambda2);
    const double slack = F.max_on(row.type) / (row.codim - 1) - row.lambda2;
    if (first || slack < out.worst_face_slack) {
      out.worst_face_slack = slack;
      out.worst_face = row.face;
      first = false;
    }
  }

  std::map<int, BoundRow> levels;
  for (const auto& [S, lambda] : exact) {
    BoundRow r;
    r.k = m - std::popcount(S);
    r.S = S;
    r.exact = lambda;
    r.certified = F.max_on(S) / (r.k - 1);
    r.slack = r.certified - r.exact;
    out.by_type.push_back(r);
    auto [it, inserted] = levels.emplace(r.k, r);
    if (!inserted) {
      it->second.exact = std::max(it->second.exact, r.exact);
      it->second.certified = std::max(it->second.certified, r.certified);
    }
  }

  const double gamma2 = levels.count(2) ? levels[2].exact : 0.0;
  std::optional<ClassicalBound> classical;
  if (std::max(gamma2, 0.0) * d < 1.0) classical = classical_bound(gamma2, d);
  std::optional<std::vector<DegreeBoundRow>> degree_based;
  try {
    degree_based = degree_bounds(std::max(gamma2, 0.0), F.graph.max_degree, F.delta, d);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::HypothesisViolated) throw;
  }
  const bool main_ok = check_main_conditions(F.eps, F.graph, F.delta, F.ordering).pass;

  for (auto& [k, r] : levels) {
    r.S.reset();
    r.slack = r.certified - r.exact;
    if (classical) r.classical = classical->bound[k - 2];
    if (degree_based) r.degree_based = (*degree_based)[k - 2].bound;
    if (main_ok) r.main = main_bound(F.delta, k);
    out.by_k.push_back(r);
  }
  return out;
}

}  // namespace hdx
