#pragma once

// Independent numerical certification: equation residuals from grid values
// alone, integral identities with explicit tolerances, Sobolev-based a-priori
// bounds, brute-force root counting for the gamma equation, and sampled
// monotonicity of the dilation fibering map.

#include <cstddef>
#include <string>
#include <vector>

#include "kirchhoff/types.hpp"
#include "kirchhoff/variational.hpp"

namespace kirchhoff {

// Relative weighted-L2 residual of
//   -(a + b ||grad u||^2) (u'' + (N-1)/r u') + lambda u - |u|^{p-2} u
// over interior grid points (u'' by centered 5-point stencil, u' as stored),
// normalized by the same norm of lambda u.  The gradient mass is recomputed
// from the grid.  Pass a = 1, b = 0 to check the local equation.
double ode_residual(const RadialProfile& profile, double a, double b);

// Best constant in ||grad u||^2 >= S ||u||_{2N/(N-2)}^2, by quadrature of the
// extremal profile (1 + r^2)^{-(N-2)/2}; `subdivisions` controls refinement.
double sobolev_constant(int n_dim, int subdivisions = 128);

struct GradientBounds {
  double lower = 0.0;
  double upper = 0.0;
};

// Closed-form bounds every positive solution's gradient mass must satisfy
// (N >= 5): lower from the scaling identity plus the Sobolev/Hoelder chain,
// upper from the quadratic Kirchhoff term.
GradientBounds gradient_bounds(const KirchhoffParams& params);

// Upper bound for B through Hoelder interpolation between C and the critical
// norm controlled by A:  B <= S^{-q/2} C^{alpha} A^{q/2},
// q = 2*(p-2)/(2*-2) * ... evaluated with 2* = 2N/(N-2).
double interpolation_bound(int n_dim, double p, double grad_sq, double mass_sq);

struct IdentityCheck {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool pass = false;  // value <= tolerance
};

// Certification battery for a claimed solution profile of the full equation.
// Always: pohozaev, nehari, on_manifold_energy, f_prime_psi_link,
// ode_residual_norm.  For N >= 5 additionally: gradient_lower_bound,
// gradient_upper_bound, interpolation_inequality, trichotomy_consistent.
std::vector<IdentityCheck> identity_suite(const RadialProfile& profile,
                                          const KirchhoffParams& params);

// Precomputed log-spaced scan grid for brute-force root counting of
// a g^2 + c g^{4-N} = 1; reusable across many (a, c) pairs.
class GammaScanGrid {
 public:
  explicit GammaScanGrid(int n_dim, std::size_t count = 1'000'000, double g_min = 1e-6,
                         double g_max = 1e6);
  int dimension() const { return n_dim_; }
  int count_crossings(double a, double c) const;  // sign changes of h - 1
  double min_h(double a, double c) const;

 private:
  int n_dim_ = 0;
  std::vector<double> g2_, g4n_;
};

// Root count of the gamma equation by sign scanning; a crossing-free scan
// whose minimum touches 1 within the grid resolution counts as one tangent
// root (N >= 5 only).
int root_count_oracle(const GammaScanGrid& grid, double a, double b, double a_grad);

struct DerivativeCheck {
  double d1_rel_err = 0.0;
  double d2_rel_err = 0.0;
  bool pass = false;
};

// Central finite differences (h = 1e-5 t) against the closed-form first and
// second dilation derivatives; pass at 1e-6 / 1e-4 relative.
DerivativeCheck derivative_check(const KirchhoffParams& params, const FunctionalTriple& f,
                                 double t);

enum class FiberingShape { monotone_decreasing, three_interval, tangent_degenerate };

const char* fibering_shape_name(FiberingShape s);

struct MonotonicityCheck {
  FiberingShape shape = FiberingShape::monotone_decreasing;
  bool pass = false;   // sampled map follows the claimed pattern (tangent: vacuous)
  double t_min = 0.0;  // critical pair when shape == three_interval
  double t_max = 0.0;
};

// Samples the dilation fibering map (N >= 5): with no critical point it must
// decrease strictly; below the threshold it must decrease, rise between the
// two critical dilations, then decrease again.
MonotonicityCheck monotonicity_check(const KirchhoffParams& params, const FunctionalTriple& f);

}  // namespace kirchhoff
