#include <cmath>

#include "hdx/error.hpp"
#include "hdx/numeric.hpp"
#include "hdx/trickledown.hpp"

namespace hdx {

double family_eps(ScenarioFamily family, double p) {
  if (!(p > 0.0)) throw Error(ErrorKind::BadParams, "p must be positive");
  return family == ScenarioFamily::KO ? 1.0 / std::sqrt(p) : std::sqrt(2.0 / p);
}

ScenarioFamily parse_family(const std::string& s) {
  if (s == "ko") return ScenarioFamily::KO;
  if (s == "op") return ScenarioFamily::OP;
  throw Error(ErrorKind::BadParams, "unknown family '" + s + "' (expected ko|op)");
}

double uniform_weight_sum(int Delta) {
  if (Delta < 1) throw Error(ErrorKind::BadParams, "Delta must be at least 1");
  if (Delta == 1) return 1.0;
  CompensatedSum s;
  for (int l = 1; l <= Delta; ++l) s += harmonic_tail(Delta - 1, l - 1);
  return static_cast<double>(s.value());
}

ScenarioResult scenario_calculator(int Delta, double eps, std::optional<double> delta, double margin_tol) {
  if (Delta < 1) throw Error(ErrorKind::BadParams, "Delta must be at least 1");
  if (!(eps >= 0.0 && eps < 1.0)) throw Error(ErrorKind::BadParams, "uniform eps must lie in [0, 1)");
  ScenarioResult r;
  r.Delta = Delta;
  r.eps = eps;
  const long double W = uniform_weight_sum(Delta);
  const long double H = Delta <= 1 ? 1.0L : harmonic(Delta - 1);

  // Condition 2 caps delta at 1 - W eps; condition 1 then decides feasibility.
  const long double top = std::min<long double>(1.0L - W * eps, 1.0L - 1e-9L);
  if (top > 0.0L && static_cast<long double>(top) * top / 10.0L - eps * H >= -margin_tol) {
    r.delta_star = static_cast<double>(top);
  }
  r.delta = delta ? delta : r.delta_star;
  if (!r.delta) {
    r.cond2_margin = static_cast<double>(-W * eps);
    r.cond1_margin = static_cast<double>(-eps * H);
    return r;
  }
  const long double dl = *r.delta;
  if (!(dl > 0.0L && dl < 1.0L)) {
    throw Error(ErrorKind::DeltaOutOfRange, "delta = " + std::to_string(*r.delta) + " must lie in (0, 1)");
  }
  r.cond1_margin = static_cast<double>(dl * dl / 10.0L - eps * H);
  CompensatedSum s;
  s += 1.0L - dl;
  s += -W * eps;
  r.cond2_margin = static_cast<double>(s.value());
  r.pass = r.cond1_margin >= -margin_tol && r.cond2_margin >= -margin_tol;
  r.c = main_constant(*r.delta);
  r.bound_coeff = r.c * (1.0 - *r.delta) / *r.delta;
  return r;
}

MinimalP minimal_p(ScenarioFamily family, int Delta, double coef, int limit, double margin_tol) {
  MinimalP out;
  for (int p = 2; p <= limit; ++p) {
    const double eps = family_eps(family, p);
    if (eps >= 1.0) continue;
    const double delta = 1.0 - coef * eps;
    if (!(delta > 0.0 && delta < 1.0)) continue;
    ScenarioResult r = scenario_calculator(Delta, eps, delta, margin_tol);
    if (r.pass) {
      out.p = p;
      out.at_p = r;
      return out;
    }
  }
  return out;
}

}  // namespace hdx
