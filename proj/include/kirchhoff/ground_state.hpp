#pragma once

// Radial shooting solver for the local ground state of
//   -Lap(U) + lambda*U = |U|^{p-2} U   on R^N,  N >= 3,  2 < p < 2N/(N-2),
// plus the exact rescaling/dilation transforms and quadrature of the
// functionals A = ||grad u||^2, B = ||u||_p^p, C = ||u||^2.

#include "kirchhoff/types.hpp"

namespace kirchhoff {

// Shoot on u(0) = beta: bisection between undershoot (u' hits 0 while u > 0)
// and overshoot (u crosses 0), then a dense final pass on a uniform grid with
// the three functionals accumulated as augmented state.  The far tail, where
// forward integration loses the decaying branch, is continued by a backward
// Riccati sweep of m = u'/u that keeps the |u|^{p-2} term, down to
// u <= decay_floor.
RadialProfile solve_ground_state(const GroundStateSpec& spec);

// U_{lambda_new} from U_{lambda_old} via u(x) -> mu^{1/(p-2)} u(sqrt(mu) x),
// mu = lambda_new/lambda_old: grid, values and functionals transform in closed
// form (no quadrature).  Extends the tail if the scaling lifted it above the
// stored decay floor.
RadialProfile rescale_profile(const RadialProfile& base, double lambda_new);

// u_t(r) = u(t r): exact resample (grid r/t, same values, slopes times t).
RadialProfile dilate_profile(const RadialProfile& base, double t);

// Outcome of a single shot at amplitude beta, for bracket diagnostics:
// overshoot = u crossed 0, undershoot = u' turned nonnegative while u > 0,
// decayed = u fell below 1e-9 beta with neither event.
TrialKind classify_shot(const GroundStateSpec& spec, double beta);

// Composite-Simpson quadrature of (A, B, C) from the stored grid values; the
// independent cross-check against the integrator-accumulated functionals.
FunctionalTriple compute_functionals(const RadialProfile& profile);

// Closed-form bound on the functional mass beyond r_max, from the exponential
// decay rate sqrt(lambda) with the centrifugal correction frozen at r_max.
TailBound tail_bound_beyond(const RadialProfile& profile);

// Cubic Hermite interpolation of u (and u') between grid points; 0 past r_max.
double eval_profile(const RadialProfile& profile, double r);
double eval_profile_deriv(const RadialProfile& profile, double r);

struct LocalIdentityReport {
  double nehari_rel = 0.0;    // |A + lambda C - B| / B
  double pohozaev_rel = 0.0;  // |(N-2)/(2N) A + lambda C/2 - B/p| / B
};

// Residuals of the two integral identities every decaying solution of the
// local equation satisfies; functionals are recomputed from the grid so the
// report is meaningful for perturbed or truncated profiles too.
LocalIdentityReport local_identity_report(const RadialProfile& profile);

}  // namespace kirchhoff
