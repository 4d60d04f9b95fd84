#include <algorithm>
#include <bit>
#include <cmath>
#include <map>

#include "hdx/error.hpp"
#include "hdx/numeric.hpp"
#include "hdx/trickledown.hpp"

namespace hdx {

namespace {

void check_shape(const WeightedComplex& X, const FVectors& F) {
  if (!X.is_partite()) throw Error(ErrorKind::NotPartite, "verification needs a partite complex");
  if (X.num_parts() != F.parts) {
    throw Error(ErrorKind::BadParams, "certificate has " + std::to_string(F.parts) + " parts, complex has " +
                                          std::to_string(X.num_parts()));
  }
}

TypeMask bit(int i) { return TypeMask{1} << i; }

double sum_rule_gap(const FVectors& F, TypeMask S, const std::vector<std::vector<int>>& comps) {
  const TypeMask full = (TypeMask{1} << F.parts) - 1;
  std::vector<double> expect(F.parts, 0.0);
  for (const auto& comp : comps) {
    if (comp.size() < 2) continue;
    TypeMask I = 0;
    for (int p : comp) I |= bit(p);
    for (int p : comp) expect[p] += F(full & ~I, p);
  }
  double gap = 0.0;
  for (int i = 0; i < F.parts; ++i) gap = std::max(gap, std::fabs(F(S, i) - expect[i]));
  return gap;
}

// lambda_min(A) / max(|A|_1, scale).
double psd_residual(const Eigen::MatrixXd& A, double scale) {
  const Eigen::MatrixXd sym = 0.5 * (A + A.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym, Eigen::EigenvaluesOnly);
  const double norm = sym.cwiseAbs().colwise().sum().maxCoeff();
  const double denom = std::max(norm, scale);
  return denom > 0.0 ? solver.eigenvalues()(0) / denom : 0.0;
}

}  // namespace

ScalarReport verify_scalar_conditions(const WeightedComplex& X, const FVectors& F, const ProfileOptions& options,
                                      double tol) {
  check_shape(X, F);
  const int m = F.parts;
  const EpsilonTable measured = epsilon_table(X, options);
  std::vector<TypeMask> sets;
  for (TypeMask S = 0; S < (TypeMask{1} << m); ++S) {
    if (F.defined(S)) sets.push_back(S);
  }

  ScalarReport report;
  report.tol = tol;
  report.sets.resize(sets.size());
  parallel_for(sets.size(), options.sweep.threads, [&](std::size_t n) {
    const TypeMask S = sets[n];
    ScalarSetCheck& c = report.sets[n];
    c.S = S;
    c.k = m - std::popcount(S);
    const auto comps = F.graph.components_outside(S);
    c.connected = comps.size() == 1;
    const double fmax = F.max_on(S);
    c.cap_margin = static_cast<double>((c.k - 1) * (c.k - 1)) / (3 * c.k - 1) - fmax;
    if (c.k == 2) {
      int i = 0;
      while (S & bit(i)) ++i;
      int j = i + 1;
      while (S & bit(j)) ++j;
      c.base_margin = fmax - measured.raw(i, j);
    }
    if (!c.connected) {
      c.sum_rule_residual = sum_rule_gap(F, S, comps);
    } else if (c.k >= 3) {
      bool first = true;
      for (int i = 0; i < m; ++i) {
        if (S & bit(i)) continue;
        CompensatedSum s;
        const long double fi = F(S, i);
        s += (c.k - 2) * fi;
        s += -fi * fi;
        for (int j = 0; j < m; ++j) {
          if (j != i && !(S & bit(j))) s += -static_cast<long double>(F(S | bit(j), i));
        }
        const double margin = static_cast<double>(s.value());
        c.recursion_margin = first ? margin : std::min(c.recursion_margin, margin);
        first = false;
      }
    }
  });

  for (const auto& c : report.sets) {
    if (c.connected) report.worst_cap = std::min(report.worst_cap, c.cap_margin);
    if (c.k == 2) report.worst_base = std::min(report.worst_base, c.base_margin);
    if (c.connected && c.k >= 3) report.worst_recursion = std::min(report.worst_recursion, c.recursion_margin);
    report.worst_sum_rule = std::max(report.worst_sum_rule, c.sum_rule_residual);
  }
  report.pass = report.worst_cap >= -tol && report.worst_base >= -tol && report.worst_recursion >= -tol &&
                report.worst_sum_rule <= tol;
  return report;
}

MatrixReport verify_matrix_conditions(const WeightedComplex& X, const FVectors& F, const ProfileOptions& options,
                                      double tol) {
  check_shape(X, F);
  check_sweep_cap(X, options.sweep);
  const int m = F.parts;
  const TypeMask full = X.full_mask();
  std::vector<std::pair<TypeMask, FaceClass>> faces;
  for (TypeMask S = 0; S <= full; ++S) {
    if (m - std::popcount(S) < 2) continue;
    for (auto& cls : faces_by_type_mask(X, S)) faces.emplace_back(S, std::move(cls));
  }

  std::vector<MatrixFaceCheck> checks(faces.size());
  parallel_for(faces.size(), options.sweep.threads, [&](std::size_t n) {
    const auto& [S, cls] = faces[n];
    MatrixFaceCheck& c = checks[n];
    c.face = cls.face;
    c.S = S;
    c.k = m - std::popcount(S);
    const int k = c.k;

    const SkeletonGraph G = skeleton(X, cls);
    const int size = G.size();
    const double vol = G.total_volume();
    const Eigen::VectorXd pi = G.degrees / vol;
    std::vector<int> type(size);
    for (int y = 0; y < size; ++y) type[y] = X.local_type(G.vertices[y]);
    Eigen::VectorXd M(size);
    for (int y = 0; y < size; ++y) M(y) = pi(y) * F(S, type[y]) / (k - 1);
    const double pi_scale = pi.maxCoeff();

    c.rho = F.max_on(S) / (k - 1);
    c.lambda2 = is_connected(G) ? second_eigenvalue(G, options.eigen) : 1.0;

    const auto comps = F.graph.components_outside(S);
    if (k == 2) {
      c.branch = MatrixFaceCheck::Branch::Base;
      Eigen::MatrixXd lower = Eigen::MatrixXd(M.asDiagonal()) - (G.weights / vol - 2.0 * pi * pi.transpose());
      c.lower = psd_residual(lower, pi_scale);
      c.upper = psd_residual(Eigen::MatrixXd((pi / 5.0 - M).asDiagonal()), pi_scale);
      return;
    }

    if (comps.size() == 1) {
      c.branch = MatrixFaceCheck::Branch::Recursive;
      const double cap = static_cast<double>(k - 1) / (3 * k - 1);
      c.upper = psd_residual(Eigen::MatrixXd((cap * pi - M).asDiagonal()), pi_scale);

      // E_{x ~ pi_tau,0} M_{tau+x}, with each link's vertex marginals read off its facets.
      Eigen::MatrixXd pair = Eigen::MatrixXd::Zero(size, size);
      Eigen::VectorXd mass = Eigen::VectorXd::Zero(size);
      std::vector<int> local;
      for (auto fi : cls.facets) {
        const auto& facet = X.facets()[fi];
        local.clear();
        for (Vertex v : facet.vertices) {
          const int y = G.index_of(v);
          if (y >= 0) local.push_back(y);
        }
        for (int x : local) {
          mass(x) += facet.weight;
          for (int y : local) {
            if (y != x) pair(x, y) += facet.weight;
          }
        }
      }
      Eigen::VectorXd direct = Eigen::VectorXd::Zero(size);
      for (int y = 0; y < size; ++y) {
        CompensatedSum s;
        for (int x = 0; x < size; ++x) {
          if (pair(x, y) == 0.0) continue;
          const double pi_link = pair(x, y) / mass(x) / (k - 1);
          s += pi(x) * pi_link * F(S | bit(type[x]), type[y]) / (k - 2);
        }
        direct(y) = static_cast<double>(s.value());
      }
      Eigen::VectorXd closed(size);
      for (int y = 0; y < size; ++y) {
        CompensatedSum s;
        for (int j = 0; j < m; ++j) {
          if (j != type[y] && !(S & bit(j))) s += F(S | bit(j), type[y]);
        }
        closed(y) = static_cast<double>(pi(y) * s.value() / ((k - 1) * (k - 2)));
      }
      c.identity_gap = (direct - closed).cwiseAbs().maxCoeff();

      Eigen::VectorXd R(size);
      for (int y = 0; y < size; ++y) {
        R(y) = M(y) - static_cast<double>(k - 1) / (k - 2) * M(y) * M(y) / pi(y) - direct(y);
      }
      c.recursion = psd_residual(Eigen::MatrixXd(R.asDiagonal()), pi_scale);
      return;
    }

    // Product branch: M_tau against the weighted sum over component links.
    c.branch = MatrixFaceCheck::Branch::Product;
    std::vector<char> covered(m, 0);
    double worst = 0.0;
    for (const auto& comp : comps) {
      if (comp.size() < 2) continue;
      TypeMask I = 0;
      for (int p : comp) I |= bit(p);
      for (int p : comp) covered[p] = 1;
      const int kj = static_cast<int>(comp.size());
      const double scale = static_cast<double>(kj * (kj - 1)) / (k * (k - 1));
      const TypeMask outside = full & ~S & ~I;
      // eta_{-j}: the part of each link facet outside block I.
      std::map<Face, std::pair<double, std::map<int, double>>> groups;
      for (auto fi : cls.facets) {
        const auto& facet = X.facets()[fi];
        Face key;
        for (int p = 0; p < m; ++p) {
          if (outside & bit(p)) key.push_back(X.typed_vertex(fi, p));
        }
        auto& [total, acc] = groups[key];
        total += facet.weight;
        for (int p : comp) acc[G.index_of(X.typed_vertex(fi, p))] += facet.weight;
      }
      const TypeMask block_set = full & ~I;
      for (const auto& [key, entry] : groups) {
        const auto& [total, acc] = entry;
        for (int y = 0; y < size; ++y) {
          if (!(I & bit(type[y]))) continue;
          auto it = acc.find(y);
          const double pi_rho = it == acc.end() ? 0.0 : it->second / (total * kj);
          const double rhs = scale * pi_rho * F(block_set, type[y]) / (kj - 1);
          worst = std::max(worst, std::fabs(M(y) - rhs));
        }
      }
    }
    for (int y = 0; y < size; ++y) {
      if (!covered[type[y]]) worst = std::max(worst, std::fabs(M(y)));
    }
    c.product_residual = worst;
  });

  MatrixReport report;
  report.tol = tol;
  bool first = true;
  for (const auto& c : checks) {
    report.worst_lower = std::min(report.worst_lower, c.lower);
    report.worst_upper = std::min(report.worst_upper, c.upper);
    report.worst_recursion = std::min(report.worst_recursion, c.recursion);
    report.worst_identity_gap = std::max(report.worst_identity_gap, c.identity_gap);
    report.worst_product = std::max(report.worst_product, c.product_residual);
    const double slack = c.rho - c.lambda2;
    report.worst_rho_slack = first ? slack : std::min(report.worst_rho_slack, slack);
    first = false;
  }
  report.pass = report.worst_lower >= -tol && report.worst_upper >= -tol && report.worst_recursion >= -tol &&
                report.worst_identity_gap <= 1e-12 && report.worst_product <= tol && report.worst_rho_slack >= -tol;
  if (options.keep_table) report.faces = std::move(checks);
  return report;
}

}  // namespace hdx
