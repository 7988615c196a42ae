#pragma once

// Reduction of the Kirchhoff equation
//   -(a + b ||grad u||^2) Lap(u) + lambda u = |u|^{p-2} u
// to the local ground state U_lambda: u = U_lambda(gamma .) solves it exactly
// when  a gamma^2 + b A_lambda gamma^{4-N} = 1,  A_lambda = ||grad U_lambda||^2.
// This module solves that scalar equation, classifies the existence regime,
// and assembles the full solution set with energies and manifold types.

#include <array>
#include <vector>

#include "kirchhoff/types.hpp"
#include "kirchhoff/variational.hpp"

namespace kirchhoff {

struct GammaRoots {
  int count = 0;                     // roots of a g^2 + b A g^{4-N} = 1 in (0, inf)
  bool tangent = false;              // N >= 5 and min h == 1 within band
  std::array<double, 2> roots{0.0, 0.0};  // ascending; [0] unused slots stay 0
  double gamma_star = 0.0;           // argmin of h (N >= 5; 0 otherwise)
  double h_min = 0.0;                // min of h over (0, inf) (N >= 5; limit value otherwise)
};

// N = 3: exactly one root, closed form.  N = 4: one root iff b A < 1.
// N >= 5: two, one (tangent) or zero roots depending on min h vs 1.
// Every returned root satisfies |a g^2 + b A g^{4-N} - 1| < 1e-12.
GammaRoots solve_gamma(int n_dim, double a, double b, double a_grad);

enum class ExistenceRegime {
  always,           // N = 3 or 4: no two-root regime; a single solution (when any)
  below_threshold,  // N >= 5, min h < 1: two solutions
  tangent,          // N >= 5, min h = 1: one degenerate solution
  above_threshold,  // min h > 1 (or N = 4 with b A >= 1): no solution
};

const char* existence_regime_name(ExistenceRegime r);

struct ExistenceReport {
  KirchhoffParams params;
  double a_grad = 0.0;     // ||grad U_lambda||^2 for the lambda in params
  ExistenceRegime regime = ExistenceRegime::always;
  GammaRoots roots;
  double critical_b = 0.0;  // b where the root count changes (0 for N = 3)
};

// a_grad_lambda must be the gradient mass of U_lambda at params.lambda.
ExistenceReport classify_existence(const KirchhoffParams& params, double a_grad_lambda);

struct KirchhoffSolution {
  double gamma = 0.0;
  FunctionalTriple functionals;   // of u = U_lambda(gamma .)
  double energy = 0.0;
  ManifoldClass cls = ManifoldClass::off_manifold;
  double threshold_ratio = 0.0;   // meaningful iff has_threshold
  bool has_threshold = false;     // N >= 5 and B/p - lambda C/2 > 0
  bool has_profile = false;
  RadialProfile profile;          // populated on request
};

struct SolutionSet {
  ExistenceReport report;
  std::vector<KirchhoffSolution> solutions;  // ascending gamma
};

// Rescales the given local ground state to params.lambda, solves the gamma
// equation and dilates.  base may carry any lambda but must match N and p.
SolutionSet build_solutions(const RadialProfile& base, const KirchhoffParams& params,
                            bool with_profiles);

struct AmplitudeForm {
  double s = 0.0;      // requested amplitude factor
  double alpha = 0.0;  // frequency of the rescaled base
  double t = 0.0;      // dilation applied to it
};

// Every solution u = U_lambda(gamma .) is also s U_alpha(t .) for any s > 0
// with alpha = lambda / s^{p-2} and t = gamma s^{(p-2)/2}.
AmplitudeForm amplitude_form(double lambda, double gamma, double p, double s);

}  // namespace kirchhoff
