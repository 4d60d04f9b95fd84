#pragma once

// Trickle-down bounds: harmonic weights, the partite condition families,
// the f_S certificate and its scalar / matrix verification.

#include <optional>
#include <string>
#include <vector>

#include "hdx/complex.hpp"
#include "hdx/partite.hpp"
#include "hdx/spectra.hpp"

namespace hdx {

/// H_n; H_0 = 0.
double harmonic(int n);
/// H_n(i) = sum_{j=i}^n 1/j with H_n(0) = H_n(1). Throws IndexOutOfRange.
double harmonic_tail(int n, int i);

/// Margins within this distance below zero still count as passing; several
/// published thresholds sit exactly on the boundary.
inline constexpr double kMarginTolerance = 1e-12;
/// Residual tolerance of the verifiers.
inline constexpr double kVerifyTolerance = 1e-8;

enum class Ordering { Decreasing, Increasing };
enum class Variant { Main, Averaged, DeltaUniform };

std::string to_string(Ordering o);
std::string to_string(Variant v);
Ordering parse_ordering(const std::string& s);  // throws BadParams
Variant parse_variant(const std::string& s);

struct ClassicalBound {
  double gamma2 = 0.0;
  int d = 0;
  double delta = 1.0;             // 1 - d * max(gamma2, 0)
  std::vector<int> k;             // 2 .. d+1
  std::vector<double> bound;      // (1-delta) / (d - (k-2)(1-delta))
  double coarse = 0.0;            // (1-delta) / (d delta)
};

/// Throws ConditionUnsatisfiable when gamma2 >= 1/d.
ClassicalBound classical_bound(double gamma2, int d);

struct ConditionReport {
  Variant variant = Variant::Main;
  Ordering ordering = Ordering::Decreasing;
  double delta = 0.0;
  double margin_tol = kMarginTolerance;
  int max_degree = 0;
  std::vector<int> degree;     // per part (dependency degree, or d for the averaged variant)
  std::vector<double> cond1;   // per part margin
  std::vector<double> cond2;   // per part margin
  double worst_cond1 = 0.0;
  double worst_cond2 = 0.0;
  bool pass = false;
};

/// Throws DeltaOutOfRange unless 0 < delta < 1.
ConditionReport check_main_conditions(const EpsilonTable& eps, const DependencyGraph& G, double delta,
                                      Ordering ordering = Ordering::Decreasing,
                                      double margin_tol = kMarginTolerance);
ConditionReport check_averaged_conditions(const EpsilonTable& eps, double delta,
                                          Ordering ordering = Ordering::Decreasing,
                                          double margin_tol = kMarginTolerance);
/// gamma2 <= delta^2/(10(1+ln Delta)) and gamma2 <= (1-delta)/(Delta+ln Delta);
/// per-part margins use the worst eps in each row.
ConditionReport check_delta_uniform_conditions(const EpsilonTable& eps, const DependencyGraph& G, double delta,
                                               double margin_tol = kMarginTolerance);
ConditionReport check_conditions(const EpsilonTable& eps, const DependencyGraph& G, double delta, Variant variant,
                                 Ordering ordering = Ordering::Decreasing, double margin_tol = kMarginTolerance);

/// Largest passing delta (bisection on condition 2, then condition 1 checked
/// there). 1 - 1e-9 when every eps is 0.
std::optional<double> max_feasible_delta(const EpsilonTable& eps, const DependencyGraph& G,
                                         Variant variant = Variant::Main, Ordering ordering = Ordering::Decreasing,
                                         double margin_tol = kMarginTolerance);

struct LinkCondition {
  Face face;
  int k = 0;
  int max_degree = 0;
  bool pass = false;                  // at the requested delta
  std::optional<double> delta_star;   // for the link on its own
  std::optional<double> bound;        // c(1-delta*)/((k-1) delta*)
};

/// Conditions re-evaluated on each link of co-dimension >= 3 with its own
/// eps table and dependency graph.
std::vector<LinkCondition> per_link_conditions(const WeightedComplex& X, double delta,
                                               Ordering ordering = Ordering::Decreasing,
                                               const ProfileOptions& options = {});

/// c = 2(1 + delta^2/10)/(1 + delta).
double main_constant(double delta);
/// c(1-delta)/((k-1) delta): the bound for links of co-dimension k >= 2.
double main_bound(double delta, int k);

struct DegreeBoundRow {
  int k = 0;
  std::optional<double> delta_k;  // only when k < Delta
  double stated = 0.0;            // c(1-delta_k)/(k delta), or c(1-delta)/(k delta) when k >= Delta
  double composed = 0.0;          // c(delta_k)(1-delta_k)/(k delta_k)
  bool composed_tighter = false;
  double bound = 0.0;             // = stated
};

/// Throws HypothesisViolated naming the failed inequality.
std::vector<DegreeBoundRow> degree_bounds(double gamma2, int Delta, double delta, int d);

struct FVectors {
  int parts = 0;
  double delta = 0.0;
  Ordering ordering = Ordering::Decreasing;
  double c13 = 1.3;
  double c_prime = 0.5;
  double c = 1.0;  // 1 + c' delta
  int max_degree = 0;
  EpsilonTable eps;
  DependencyGraph graph;
  /// f[S] for every mask S with |S| <= parts - 2; empty vectors elsewhere.
  std::vector<std::vector<double>> f;
  /// g[i][j][l] for l = 1..Delta (index 0 unused); empty unless i ~ j.
  std::vector<std::vector<std::vector<double>>> g;
  /// h[i][l] for l = 1..Delta(i) (index 0 unused).
  std::vector<std::vector<double>> h;

  bool defined(TypeMask S) const { return S < f.size() && !f[S].empty(); }
  double operator()(TypeMask S, int i) const { return f[S][i]; }
  double max_on(TypeMask S) const;
};

/// Throws DenominatorNonpositive, BadParams (more than 20 parts).
FVectors build_f_vectors(const EpsilonTable& eps, const DependencyGraph& G, double delta,
                         Ordering ordering = Ordering::Decreasing);

struct InequalityDiagnostics {
  double worst_case1 = 0.0;   // (t-1) eps (g(t)-g(t-1)) - eps^2 g(t)^2
  double worst_case2 = 0.0;   // (t-1)(h(t)-h(t-1)) - alpha h(t)^2
  double worst_sumeps = 0.0;  // (1-delta) - sum_{j ~_S i} eps_ij
  int case1_checks = 0;
  int case2_checks = 0;
};

InequalityDiagnostics inequality_diagnostics(const FVectors& f);

struct ScalarSetCheck {
  TypeMask S = 0;
  int k = 0;
  bool connected = true;
  double cap_margin = 0.0;        // (k-1)^2/(3k-1) - max f_S
  double base_margin = 0.0;       // k = 2: max f_S - max lambda_2 over faces of type S
  double recursion_margin = 0.0;  // k >= 3: min_i (k-2) f_S(i) - f_S(i)^2 - sum_j f_{S+j}(i)
  double sum_rule_residual = 0.0; // disconnected G_S
};

struct ScalarReport {
  double tol = kVerifyTolerance;
  std::vector<ScalarSetCheck> sets;
  double worst_cap = 0.0;
  double worst_base = 0.0;
  double worst_recursion = 0.0;
  double worst_sum_rule = 0.0;
  bool pass = false;
};

/// Base case eigenvalues are measured on X, not read from f.eps.
ScalarReport verify_scalar_conditions(const WeightedComplex& X, const FVectors& f, const ProfileOptions& options = {},
                                      double tol = kVerifyTolerance);

struct MatrixFaceCheck {
  Face face;
  TypeMask S = 0;
  int k = 0;
  enum class Branch { Base, Recursive, Product } branch = Branch::Base;
  double lower = 0.0;        // base: lambda_min(M - (Pi P - 2 pi pi^T)) / |.|_1
  double upper = 0.0;        // base: (1/5) Pi - M; recursive: ((k-1)/(3k-1)) Pi - M
  double recursion = 0.0;    // M - (k-1)/(k-2) M Pi^-1 M - E M_{tau+x}
  double identity_gap = 0.0; // |E M_{tau+x} direct - closed form|
  double product_residual = 0.0;
  double rho = 0.0;          // rho(Pi^-1 M) = max f_S/(k-1)
  double lambda2 = 0.0;
};

struct MatrixReport {
  double tol = kVerifyTolerance;
  std::vector<MatrixFaceCheck> faces;
  double worst_lower = 0.0;
  double worst_upper = 0.0;
  double worst_recursion = 0.0;
  double worst_identity_gap = 0.0;
  double worst_product = 0.0;
  double worst_rho_slack = 0.0;  // min rho - lambda2
  bool pass = false;
};

/// PSD tests pass when lambda_min >= -tol * |A|_1.
MatrixReport verify_matrix_conditions(const WeightedComplex& X, const FVectors& f, const ProfileOptions& options = {},
                                      double tol = kVerifyTolerance);

struct BoundRow {
  int k = 0;
  std::optional<TypeMask> S;  // aggregate rows have none
  double exact = 0.0;
  double certified = 0.0;     // max f_S/(k-1)
  std::optional<double> classical;
  std::optional<double> degree_based;
  std::optional<double> main;
  double slack = 0.0;         // certified - exact
};

struct BoundProfile {
  double delta = 0.0;
  double tol = kVerifyTolerance;
  std::vector<BoundRow> by_k;
  std::vector<BoundRow> by_type;
  double worst_face_slack = 0.0;
  std::optional<Face> worst_face;
};

/// Throws CertificateInvalid when verify_scalar_conditions fails.
BoundProfile bound_profile(const WeightedComplex& X, const FVectors& f, const ProfileOptions& options = {},
                           double tol = kVerifyTolerance);

enum class ScenarioFamily { KO, OP };
/// KO: eps = 1/sqrt(p); OP: eps = sqrt(2/p).
double family_eps(ScenarioFamily family, double p);
ScenarioFamily parse_family(const std::string& s);

/// sum_{l=1}^{Delta} H_{Delta-1}(l-1) with the Delta = 1 floor.
double uniform_weight_sum(int Delta);

struct ScenarioResult {
  int Delta = 0;
  double eps = 0.0;
  std::optional<double> delta;  // evaluated delta (given, or delta* when absent)
  double cond1_margin = 0.0;
  double cond2_margin = 0.0;
  bool pass = false;
  std::optional<double> delta_star;
  double c = 0.0;
  double bound_coeff = 0.0;     // c(1-delta)/delta
};

/// Throws BadParams for Delta < 1 or eps outside [0, 1).
ScenarioResult scenario_calculator(int Delta, double eps, std::optional<double> delta = std::nullopt,
                                   double margin_tol = kMarginTolerance);

struct MinimalP {
  std::optional<int> p;
  ScenarioResult at_p;
};

/// Smallest integer p in [2, limit] with eps = family_eps(p) and
/// delta = 1 - coef * eps passing both conditions.
MinimalP minimal_p(ScenarioFamily family, int Delta, double coef, int limit = 10000000,
                   double margin_tol = kMarginTolerance);

}  // namespace hdx
