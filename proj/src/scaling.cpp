#include "kirchhoff/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "kirchhoff/ground_state.hpp"

namespace kirchhoff {
namespace {

double h_val(int n_dim, double a, double c, double g) {
  return a * g * g + c * std::pow(g, 4.0 - n_dim);
}

double h_deriv(int n_dim, double a, double c, double g) {
  return 2.0 * a * g + (4.0 - n_dim) * c * std::pow(g, 3.0 - n_dim);
}

// Root of h = 1 on a monotone branch bracketed by [lo, hi].
double branch_root(int n_dim, double a, double c, double lo, double hi, bool increasing) {
  for (int it = 0; it < 200 && hi - lo > 2e-16 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    const bool above = h_val(n_dim, a, c, mid) > 1.0;
    if (above == increasing) hi = mid; else lo = mid;
  }
  double g = 0.5 * (lo + hi);
  for (int it = 0; it < 3; ++it) {
    const double d = h_deriv(n_dim, a, c, g);
    if (d == 0.0) break;
    const double next = g - (h_val(n_dim, a, c, g) - 1.0) / d;
    if (next > 0.0) g = next;
  }
  return g;
}

}  // namespace

GammaRoots solve_gamma(int n_dim, double a, double b, double a_grad) {
  if (n_dim < 3) fail(errc::dimension_too_low, "need N >= 3");
  if (!(a > 0.0 && b > 0.0 && a_grad > 0.0))
    fail(errc::invalid_input, "need a, b and the gradient mass positive");
  const double c = b * a_grad;
  GammaRoots out;

  if (n_dim == 3) {
    // a g^2 + c g = 1; conjugate form avoids cancellation for large c
    out.count = 1;
    out.roots[0] = 2.0 / (c + std::sqrt(c * c + 4.0 * a));
    return out;
  }
  if (n_dim == 4) {
    // a g^2 + c = 1; h approaches its infimum c only as g -> 0
    out.h_min = c;
    if (c < 1.0) {
      out.count = 1;
      out.roots[0] = std::sqrt((1.0 - c) / a);
    }
    return out;
  }

  const double N = n_dim;
  const double gs = std::pow((N - 4.0) * c / (2.0 * a), 1.0 / (N - 2.0));
  out.gamma_star = gs;
  out.h_min = h_val(n_dim, a, c, gs);
  if (std::abs(out.h_min - 1.0) <= 1e-10) {
    out.count = 1;
    out.tangent = true;
    out.roots[0] = gs;
    return out;
  }
  if (out.h_min > 1.0) return out;

  double lo = gs;
  for (int it = 0; it < 2100 && h_val(n_dim, a, c, lo) < 1.0; ++it) lo *= 0.5;
  out.roots[0] = branch_root(n_dim, a, c, lo, gs, false);
  double hi = gs;
  for (int it = 0; it < 2100 && h_val(n_dim, a, c, hi) < 1.0; ++it) hi *= 2.0;
  out.roots[1] = branch_root(n_dim, a, c, gs, hi, true);
  out.count = 2;
  return out;
}

const char* existence_regime_name(ExistenceRegime r) {
  switch (r) {
    case ExistenceRegime::always: return "always";
    case ExistenceRegime::below_threshold: return "below_threshold";
    case ExistenceRegime::tangent: return "tangent";
    case ExistenceRegime::above_threshold: return "above_threshold";
  }
  return "above_threshold";
}

ExistenceReport classify_existence(const KirchhoffParams& params, double a_grad_lambda) {
  params.validate();
  if (!(a_grad_lambda > 0.0)) fail(errc::invalid_input, "need a positive gradient mass");
  ExistenceReport rep;
  rep.params = params;
  rep.a_grad = a_grad_lambda;
  rep.roots = solve_gamma(params.n_dim, params.a, params.b, a_grad_lambda);
  if (params.n_dim == 3) {
    rep.regime = ExistenceRegime::always;
    rep.critical_b = 0.0;
  } else if (params.n_dim == 4) {
    rep.critical_b = critical_b(4, params.a, a_grad_lambda);
    rep.regime = rep.roots.count == 1 ? ExistenceRegime::always : ExistenceRegime::above_threshold;
  } else {
    rep.critical_b = critical_b(params.n_dim, params.a, a_grad_lambda);
    if (rep.roots.tangent)
      rep.regime = ExistenceRegime::tangent;
    else
      rep.regime = rep.roots.count == 2 ? ExistenceRegime::below_threshold
                                        : ExistenceRegime::above_threshold;
  }
  return rep;
}

SolutionSet build_solutions(const RadialProfile& base, const KirchhoffParams& params,
                            bool with_profiles) {
  params.validate();
  base.validate_structure();
  if (base.n_dim != params.n_dim || base.p != params.p)
    fail(errc::invalid_input, "base profile does not match the equation dimension/exponent");

  const RadialProfile u_lambda = rescale_profile(base, params.lambda);
  SolutionSet set;
  set.report = classify_existence(params, u_lambda.functionals.A);
  for (int i = 0; i < set.report.roots.count; ++i) {
    const double gamma = set.report.roots.roots[i];
    KirchhoffSolution sol;
    sol.gamma = gamma;
    sol.functionals = dilate_triple(u_lambda.functionals, gamma);
    sol.energy = energy(params, sol.functionals);
    sol.cls = classify_pohozaev(params, sol.functionals);
    const double Q = sol.functionals.B / params.p - 0.5 * params.lambda * sol.functionals.C;
    if (params.n_dim >= 5 && Q > 0.0) {
      sol.threshold_ratio = threshold_ratio(params, sol.functionals);
      sol.has_threshold = true;
    }
    if (with_profiles) {
      sol.profile = dilate_profile(u_lambda, gamma);
      sol.has_profile = true;
    }
    set.solutions.push_back(std::move(sol));
  }
  return set;
}

AmplitudeForm amplitude_form(double lambda, double gamma, double p, double s) {
  if (!(lambda > 0.0)) fail(errc::invalid_lambda, "need lambda > 0");
  if (!(gamma > 0.0)) fail(errc::nonpositive_dilation, "need gamma > 0");
  if (!(p > 2.0)) fail(errc::invalid_exponent, "need p > 2");
  if (!(s > 0.0)) fail(errc::invalid_amplitude, "need s > 0");
  AmplitudeForm out;
  out.s = s;
  out.alpha = lambda / std::pow(s, p - 2.0);
  out.t = gamma * std::pow(s, 0.5 * (p - 2.0));
  return out;
}

}  // namespace kirchhoff
