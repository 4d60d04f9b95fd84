// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

#include "corpus.hpp"
#include "hdx/error.hpp"
#include "hdx/partite.hpp"
#include "hdx/spectra.hpp"
#include "hdx/trickledown.hpp"
#include "hdx/zoo.hpp"

using namespace hdx;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

double ground_lambda2(const WeightedComplex& X) { return second_eigenvalue(skeleton(X, Face{})); }

Outcome hardcore() {
  const auto start = std::chrono::steady_clock::now();
  bool ok = true;
  std::string detail;
  double ground4 = 0.0;
  for (int d : {3, 4}) {
    const WeightedComplex X = hardcore_complex(d, 0.2);
    const double g2 = spectral_profile(X).gamma(2);
    ok = ok && std::fabs(g2 - 1.0 / 6.0) <= 1e-9;
    detail += "d=" + std::to_string(d) + " gamma2=" + fmt("%.12f", g2) + " ";
    if (d == 4) ground4 = ground_lambda2(X);
  }
  ok = ok && ground4 >= 0.2 / (4 * 1.2);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  ok = ok && secs < 30.0;
  return {ok, detail + "ground(d=4)=" + fmt("%.6f", ground4) + " (>= 1/24) time=" + fmt("%.2fs", secs)};
}

Outcome barbell() {
  const auto start = std::chrono::steady_clock::now();
  bool ok_links = true;
  std::string detail;
  std::vector<double> ground;
  for (int d : {3, 4, 5}) {
    const WeightedComplex X = barbell_complex(d);
    const SpectralProfile p = spectral_profile(X);
    ground.push_back(ground_lambda2(X));
    if (d >= 4) {
      const double g2 = p.gamma(2);
      ok_links = ok_links && std::fabs(g2 - 0.5) <= 1e-9;
      detail += "d=" + std::to_string(d) + " max codim-2 lambda2=" + fmt("%.6f", g2) + " ";
    }
  }
  const bool monotone = ground[0] < ground[1] && ground[1] < ground[2];
  const bool trend = monotone && ground[2] > 0.9;
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  detail += "ground lambda2 d=3,4,5: " + fmt("%.5f", ground[0]) + "," + fmt("%.5f", ground[1]) + "," +
            fmt("%.5f", ground[2]) + (trend ? " (trend ok)" : " (trend FAIL)") + " time=" + fmt("%.2fs", secs);
  return {ok_links && trend && secs < 120.0, detail};
}

Outcome scenario() {
  const auto start = std::chrono::steady_clock::now();
  const double e193 = family_eps(ScenarioFamily::KO, 193);
  const ScenarioResult ko = scenario_calculator(2, e193, 1.0 - 2.0 * e193);
  const double e150 = family_eps(ScenarioFamily::KO, 150);
  const ScenarioResult ko150 = scenario_calculator(2, e150, 1.0 - 2.0 * e150);
  const double e376 = family_eps(ScenarioFamily::OP, 376);
  const ScenarioResult op = scenario_calculator(2, e376, 1.0 - 2.0 * e376);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool ok = ko.pass && std::fabs(ko.cond2_margin) <= 1e-12 && !ko150.pass &&
                  std::fabs(ko.c - 1.1565) <= 0.001 && op.pass && secs < 1.0;
  return {ok, "p=193 pass=" + std::to_string(ko.pass) + " m2=" + fmt("%.2e", ko.cond2_margin) +
                  " c=" + fmt("%.6f", ko.c) + "; p=150 pass=" + std::to_string(ko150.pass) +
                  "; op p=376 pass=" + std::to_string(op.pass) + " m1=" + fmt("%.2e", op.cond1_margin)};
}

struct CorpusStats {
  int instances = 0;
  int feasible = 0;
  int soundness_violations = 0;
  int build_failures = 0;
  int cond_fail_at_half = 0;
  double worst_psd = 0.0;
  double worst_face = 1.0;
  int classical_checked = 0;
  int classical_violations = 0;
  double worst_classical = 1.0;
  int diag_checked = 0;
  int diag_violations = 0;
  long diag_inequalities = 0;
  double worst_diag = 1.0;
};

CorpusStats run_corpus() {
  CorpusStats s;
  const auto entries = testing::corpus(420);
  s.instances = static_cast<int>(entries.size());
  for (const auto& e : entries) {
    const WeightedComplex& X = e.complex;
    const SpectralProfile profile = spectral_profile(X);
    const int d = X.dim();

    const double g2 = profile.gamma(2);
    if (std::max(g2, 0.0) * d < 1.0) {
      ++s.classical_checked;
      const ClassicalBound cb = classical_bound(g2, d);
      bool bad = false;
      for (std::size_t i = 0; i < cb.k.size(); ++i) {
        const double slack = cb.bound[i] + 1e-8 - profile.gamma(cb.k[i]);
        s.worst_classical = std::min(s.worst_classical, slack - 1e-8);
        bad = bad || slack < 0.0;
      }
      s.classical_violations += bad;
    }

    const EpsilonTable eps = epsilon_table(X);
    const DependencyGraph G = dependency_graph(eps);
    const auto star = max_feasible_delta(eps, G);
    if (!star || *star <= 0.0) continue;
    ++s.feasible;
    const double delta = *star / 2.0;
    const bool cond = check_main_conditions(eps, G, delta).pass;
    if (!cond) ++s.cond_fail_at_half;
    try {
      const FVectors f = build_f_vectors(eps, G, delta);
      const ScalarReport scalar = verify_scalar_conditions(X, f);
      const MatrixReport matrix = verify_matrix_conditions(X, f);
      const double psd = std::min({matrix.worst_lower, matrix.worst_upper, matrix.worst_recursion});
      s.worst_psd = std::min(s.worst_psd, psd);
      s.worst_face = std::min(s.worst_face, matrix.worst_rho_slack);
      const bool ok = scalar.pass && psd >= -1e-8 && matrix.worst_rho_slack >= -1e-8;
      if (!ok) {
        ++s.soundness_violations;
        std::fprintf(stderr, "soundness: seed %llu scalar=%d psd=%.3e face=%.3e\n",
                     static_cast<unsigned long long>(e.seed), scalar.pass, psd, matrix.worst_rho_slack);
      }
      // Internal inequalities at delta*/2 (when the conditions hold there) and at delta*.
      std::vector<FVectors> passing;
      if (cond) passing.push_back(f);
      passing.push_back(build_f_vectors(eps, G, *star));
      for (const auto& fv : passing) {
        const InequalityDiagnostics diag = inequality_diagnostics(fv);
        ++s.diag_checked;
        s.diag_inequalities += diag.case1_checks + diag.case2_checks;
        double worst = 1.0;
        if (diag.case1_checks) worst = std::min(worst, diag.worst_case1);
        if (diag.case2_checks) worst = std::min(worst, diag.worst_case2);
        s.worst_diag = std::min(s.worst_diag, worst);
        if (worst < -1e-10) ++s.diag_violations;
      }
    } catch (const Error& err) {
      ++s.build_failures;
      ++s.soundness_violations;
      std::fprintf(stderr, "soundness: seed %llu %s\n", static_cast<unsigned long long>(e.seed), err.what());
    }
  }
  return s;
}

Outcome certificate(const CorpusStats& s) {
  const bool ok = s.feasible >= 200 && s.soundness_violations == 0;
  return {ok, std::to_string(s.feasible) + " feasible of " + std::to_string(s.instances) + " instances, " +
                  std::to_string(s.soundness_violations) + " violations (" + std::to_string(s.build_failures) +
                  " build failures, " + std::to_string(s.cond_fail_at_half) +
                  " with conditions failing at delta*/2), worst PSD residual " + fmt("%.3e", s.worst_psd) +
                  ", worst face slack " + fmt("%.3e", s.worst_face)};
}

Outcome classical(const CorpusStats& s) {
  return {s.classical_checked > 0 && s.classical_violations == 0,
          std::to_string(s.classical_checked) + " instances with gamma2 < 1/d, " +
              std::to_string(s.classical_violations) + " violations, worst slack " + fmt("%.3e", s.worst_classical)};
}

Outcome products() {
  int recovered = 0, rank2_checked = 0, rank2_rejected = 0;
  double worst_residual = 0.0, worst_ratio = 0.0;
  for (int n = 0; n < 50; ++n) {
    PortableRng rng(7000 + n);
    std::vector<RandomPartiteSpec> specs(2);
    for (auto& spec : specs) {
      spec.parts = 2 + rng.below(2);
      spec.min_size = 2;
      spec.max_size = 3;
      spec.model = WeightModel::LogNormal;
      spec.sigma = 0.8;
    }
    const WeightedComplex X = random_product(specs, 7000 + n);
    const DependencyGraph G = dependency_graph(epsilon_table(X));
    const ProductDecomposition p = product_decomposition(X, G);
    std::vector<std::vector<int>> expect(2);
    for (int t = 0; t < specs[0].parts + specs[1].parts; ++t) expect[t < specs[0].parts ? 0 : 1].push_back(t);
    worst_residual = std::max(worst_residual, p.residual);
    if (p.components == expect && p.residual <= 1e-10) ++recovered;

    const int m = X.num_parts();
    for (int i = 0; i < specs[0].parts; ++i) {
      for (int j = specs[0].parts; j < m; ++j) {
        const TypeMask mask = X.full_mask() & ~((TypeMask{1} << i) | (TypeMask{1} << j));
        for (const auto& cls : faces_by_type_mask(X, mask)) {
          const Rank2Check r = rank2_product_check(link(X, cls.face));
          ++rank2_checked;
          worst_ratio = std::max(worst_ratio, r.sigma_ratio);
          if (!r.is_product) ++rank2_rejected;
        }
      }
    }
  }
  const WeightedComplex path = WeightedComplex::build({{{"a", "b"}, 1.0}, {{"c", "b"}, 1.0}, {{"c", "d"}, 1.0}},
                                                      std::map<std::string, int>{{"a", 0}, {"c", 0}, {"b", 1}, {"d", 1}});
  const Rank2Check r = rank2_product_check(path);
  const bool ok = recovered == 50 && rank2_rejected == 0 && !r.is_product;
  return {ok, std::to_string(recovered) + "/50 decompositions recovered (worst residual " + fmt("%.2e", worst_residual) +
                  "), " + std::to_string(rank2_checked - rank2_rejected) + "/" + std::to_string(rank2_checked) +
                  " cross links accepted (worst ratio " + fmt("%.2e", worst_ratio) + "), 4-path ratio " +
                  fmt("%.3f", r.sigma_ratio) + (r.is_product ? " accepted" : " rejected")};
}

Outcome coloring() {
  const std::vector<int> list{0, 1, 2, 3, 4};
  const Graph K3 = Graph::complete(3);
  const EpsilonTable eps = epsilon_table(coloring_complex(K3, {list, list, list}));
  const int Delta = K3.max_degree();
  // |L(i)| - Delta(i) >= (1 + eta) Delta
  const double eta = static_cast<double>(list.size() - Delta) / Delta - 1.0;
  const double cap = 1.0 / ((1 + eta) * Delta) + 1.0 / ((1 + eta) * (1 + eta) * Delta * Delta);
  double worst_edge = 0.0;
  for (auto [a, b] : K3.edges) worst_edge = std::max(worst_edge, eps(a, b));

  Graph G = K3;
  G.n = 4;
  const EpsilonTable eps4 = epsilon_table(coloring_complex(G, {list, list, list, list}));
  double worst_non_edge = 0.0;
  for (int v = 0; v < 3; ++v) worst_non_edge = std::max(worst_non_edge, std::fabs(eps4.raw(v, 3)));
  const bool ok = worst_edge <= cap && worst_non_edge <= 1e-10;
  return {ok, "edge eps=" + fmt("%.6f", worst_edge) + " <= " + fmt("%.6f", cap) + " (eta=" + fmt("%.2f", eta) +
                  "), non-edge |eps| on K3+K1=" + fmt("%.2e", worst_non_edge)};
}

Outcome diagnostics(const CorpusStats& s) {
  return {s.diag_checked > 0 && s.diag_violations == 0,
          std::to_string(s.diag_checked) + " (instance, delta) pairs passing conditions, " +
              std::to_string(s.diag_inequalities) + " inequalities, worst margin " + fmt("%.3e", s.worst_diag)};
}

}  // namespace

int main() {
  int failures = 0;
  auto report = [&](int id, const char* name, const std::function<Outcome()>& fn) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("%s criterion %d (%s): %s\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str());
    std::fflush(stdout);
  };
  report(1, "hardcore", hardcore);
  report(2, "barbell", barbell);
  report(3, "scenario arithmetic", scenario);
  CorpusStats stats;
  bool corpus_ok = true;
  std::string corpus_error;
  try {
    stats = run_corpus();
  } catch (const std::exception& e) {
    corpus_ok = false;
    corpus_error = e.what();
  }
  auto from_corpus = [&](Outcome (*fn)(const CorpusStats&)) {
    return [&, fn] { return corpus_ok ? fn(stats) : Outcome{false, "corpus failed: " + corpus_error}; };
  };
  report(4, "certificate soundness", from_corpus(certificate));
  report(5, "classical cross-check", from_corpus(classical));
  report(6, "product machinery", products);
  report(7, "coloring complex", coloring);
  report(8, "internal inequalities", from_corpus(diagnostics));
  return failures == 0 ? 0 : 1;
}
