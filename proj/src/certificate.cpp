#include <algorithm>
#include <bit>
#include <functional>

#include "hdx/error.hpp"
#include "hdx/numeric.hpp"
#include "hdx/trickledown.hpp"

namespace hdx {

double FVectors::max_on(TypeMask S) const {
  double m = 0.0;
  for (int i = 0; i < parts; ++i) {
    if (!(S & (TypeMask{1} << i))) m = std::max(m, f[S][i]);
  }
  return m;
}

namespace {

// Neighbor eps of i in the order used by the h recursion.
std::vector<double> neighbor_eps(const EpsilonTable& eps, const DependencyGraph& G, int i, Ordering ordering) {
  std::vector<double> row;
  for (int j : G.neighbors(i)) row.push_back(eps(i, j));
  if (ordering == Ordering::Decreasing) {
    std::sort(row.begin(), row.end(), std::greater<>());
  } else {
    std::sort(row.begin(), row.end());
  }
  return row;
}

}  // namespace

FVectors build_f_vectors(const EpsilonTable& eps, const DependencyGraph& G, double delta, Ordering ordering) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw Error(ErrorKind::DeltaOutOfRange, "delta = " + std::to_string(delta) + " must lie in (0, 1)");
  }
  const int m = eps.size();
  if (m > 20) throw Error(ErrorKind::BadParams, "certificate needs at most 20 parts");
  if (m < 2) throw Error(ErrorKind::NotPartite, "certificate needs at least two parts");
  if (G.size() != m) throw Error(ErrorKind::BadParams, "dependency graph does not match the eps table");

  FVectors F;
  F.parts = m;
  F.delta = delta;
  F.ordering = ordering;
  F.c = 1.0 + F.c_prime * delta;
  F.max_degree = G.max_degree;
  F.eps = eps;
  F.graph = G;
  const int Delta = G.max_degree;

  F.g.assign(m, std::vector<std::vector<double>>(m));
  for (int i = 0; i < m; ++i) {
    for (int j : G.neighbors(i)) {
      auto& g = F.g[i][j];
      g.assign(Delta + 1, 0.0);
      g[1] = 1.0;
      for (int l = 2; l <= Delta; ++l) g[l] = 1.0 + F.c13 * eps(i, j) * harmonic(l - 1);
    }
  }

  F.h.assign(m, {});
  for (int i = 0; i < m; ++i) {
    const int Di = G.degree[i];
    if (Di == 0) continue;
    auto& h = F.h[i];
    h.assign(Di + 1, 0.0);
    for (int j : G.neighbors(i)) h[1] = std::max(h[1], F.g[i][j][Delta]);
    const std::vector<double> row = neighbor_eps(eps, G, i, ordering);
    for (int l = 2; l <= Di; ++l) {
      CompensatedSum s;
      for (int j = 1; j <= l; ++j) s += row[j - 1] * static_cast<long double>(harmonic_tail(l - 1, j - 1));
      const long double den = 1.0L - F.c * s.value();
      if (den <= 0.0L) {
        throw Error(ErrorKind::DenominatorNonpositive, "h_" + std::to_string(i) + "(" + std::to_string(l) +
                                                           ") has denominator " + std::to_string(double(den)) +
                                                           " (condition margin exhausted)");
      }
      h[l] = static_cast<double>(h[1] / den);
    }
  }

  const TypeMask full = (TypeMask{1} << m) - 1;
  F.f.assign(std::size_t{1} << m, {});
  // Larger S first: the disconnected rule reads f at supersets.
  for (int size = m - 2; size >= 0; --size) {
    for (TypeMask S = 0; S <= full; ++S) {
      if (std::popcount(S) != size) continue;
      std::vector<double> v(m, 0.0);
      const auto comps = G.components_outside(S);
      if (comps.size() > 1) {
        for (const auto& comp : comps) {
          if (comp.size() < 2) continue;
          TypeMask I = 0;
          for (int p : comp) I |= TypeMask{1} << p;
          const auto& part = F.f[full & ~I];
          for (int p : comp) v[p] += part[p];
        }
      } else {
        for (int i = 0; i < m; ++i) {
          if (S & (TypeMask{1} << i)) continue;
          const int dS = G.degree_outside(i, S);
          if (dS == 1) {
            int j = 0;
            while (!G.edge(i, j) || (S & (TypeMask{1} << j))) ++j;
            v[i] = eps(i, j) * F.g[i][j][G.degree_outside(j, S)];
          } else if (dS >= 2) {
            CompensatedSum s;
            for (int j = 0; j < m; ++j) {
              if (G.edge(i, j) && !(S & (TypeMask{1} << j))) s += eps(i, j);
            }
            v[i] = static_cast<double>(s.value() * F.h[i][dS]);
          }
        }
      }
      F.f[S] = std::move(v);
    }
  }
  return F;
}

InequalityDiagnostics inequality_diagnostics(const FVectors& F) {
  InequalityDiagnostics out;
  bool first1 = true, first2 = true;
  const int m = F.parts;
  const int Delta = F.max_degree;
  for (int i = 0; i < m; ++i) {
    for (int j : F.graph.neighbors(i)) {
      const long double e = F.eps(i, j);
      const auto& g = F.g[i][j];
      for (int t = 2; t <= Delta; ++t) {
        const long double margin = (t - 1) * e * (g[t] - g[t - 1]) - e * e * g[t] * g[t];
        out.worst_case1 = first1 ? double(margin) : std::min(out.worst_case1, double(margin));
        first1 = false;
        ++out.case1_checks;
      }
    }
    const int Di = F.graph.degree[i];
    if (Di >= 2) {
      std::vector<double> row;
      for (int j : F.graph.neighbors(i)) row.push_back(F.eps(i, j));
      std::sort(row.begin(), row.end(), std::greater<>());
      const auto& h = F.h[i];
      CompensatedSum alpha;
      alpha += row[0];
      for (int t = 2; t <= Di; ++t) {
        // Worst case over S: alpha is the sum of the t largest eps.
        alpha += row[t - 1];
        const long double margin = (t - 1) * static_cast<long double>(h[t] - h[t - 1]) -
                                   alpha.value() * h[t] * static_cast<long double>(h[t]);
        out.worst_case2 = first2 ? double(margin) : std::min(out.worst_case2, double(margin));
        first2 = false;
        ++out.case2_checks;
      }
    }
  }
  // Removing parts only drops terms, so S = {} is the worst set.
  bool first3 = true;
  for (int i = 0; i < m; ++i) {
    CompensatedSum s;
    s += 1.0L - static_cast<long double>(F.delta);
    for (int j : F.graph.neighbors(i)) s += -F.eps(i, j);
    out.worst_sumeps = first3 ? double(s.value()) : std::min(out.worst_sumeps, double(s.value()));
    first3 = false;
  }
  return out;
}

}  // namespace hdx
