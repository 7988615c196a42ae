#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace kirchhoff {

// Error conditions surfaced by the library.  The C API and the CLI map these
// onto coarse status / exit codes; tests match on the specific code.
enum class errc {
  invalid_input,
  invalid_exponent,
  invalid_lambda,
  invalid_amplitude,
  nonpositive_dilation,
  exponent_out_of_range,
  dimension_too_low,
  not_compactly_dilatable,  // B/p - lambda*C/2 <= 0, no optimal dilation
  not_below_threshold,      // threshold ratio >= 1 where < 1 is required
  zero_lp_norm,
  empty_grid,
  grid_too_coarse,
  no_bracket,
  non_convergence,
  io_error,
  parse_error,
};

const char* errc_name(errc code);

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  errc code() const { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

// Critical Sobolev exponent 2N/(N-2).
inline double critical_exponent(int n_dim) { return 2.0 * n_dim / (n_dim - 2.0); }

// Surface measure of the unit sphere S^{N-1}.
inline double sphere_area(int n_dim) {
  return 2.0 * std::pow(M_PI, 0.5 * n_dim) / std::tgamma(0.5 * n_dim);
}

// Coefficients of -(a + b*||grad u||^2) Lap(u) + lambda*u = |u|^{p-2} u on R^N.
struct KirchhoffParams {
  int n_dim = 3;
  double p = 3.0;
  double a = 1.0;
  double b = 1.0;
  double lambda = 1.0;

  void validate() const {
    if (n_dim < 3) fail(errc::dimension_too_low, "need N >= 3, got N = " + std::to_string(n_dim));
    if (!(p > 2.0) || !(p < critical_exponent(n_dim)))
      fail(errc::invalid_exponent, "need 2 < p < 2N/(N-2) = " +
                                       std::to_string(critical_exponent(n_dim)) +
                                       ", got p = " + std::to_string(p));
    if (!(a > 0.0) || !(b > 0.0)) fail(errc::invalid_input, "need a > 0 and b > 0");
    if (!(lambda > 0.0)) fail(errc::invalid_lambda, "need lambda > 0");
  }
};

// The three integrals every identity is built from:
//   A = ||grad u||_2^2,  B = ||u||_p^p,  C = ||u||_2^2.
struct FunctionalTriple {
  double A = 0.0;
  double B = 0.0;
  double C = 0.0;
  int n_dim = 0;
  double p = 0.0;

  void validate() const {
    if (n_dim < 3) fail(errc::dimension_too_low, "triple carries N < 3");
    if (!(p > 2.0)) fail(errc::invalid_exponent, "triple carries p <= 2");
    if (!(A >= 0.0 && B >= 0.0 && C >= 0.0))
      fail(errc::invalid_input, "functionals must be nonnegative");
  }
};

// Scaling of (A,B,C) under dilation u(t x): exact, no quadrature involved.
inline FunctionalTriple dilate_triple(const FunctionalTriple& f, double t) {
  if (!(t > 0.0)) fail(errc::nonpositive_dilation, "dilation must be positive");
  FunctionalTriple out = f;
  out.A = std::pow(t, 2.0 - f.n_dim) * f.A;
  out.B = std::pow(t, -f.n_dim) * f.B;
  out.C = std::pow(t, -f.n_dim) * f.C;
  return out;
}

// Problem statement for the radial shooting solver of
//   -Lap(U) + lambda*U = U^{p-1},  U > 0, radial, decaying.
struct GroundStateSpec {
  int n_dim = 3;
  double p = 3.0;
  double lambda = 1.0;
  double shoot_tol = 1e-12;    // relative bracket width the bisection must reach
  double ode_rel_tol = 1e-10;  // local relative error of the integrator
  double decay_floor = 1e-12;  // integrate/extend until u(r_max) <= decay_floor
  double r_start = 1e-4;       // series start radius avoiding the r=0 singularity

  void validate() const {
    if (n_dim < 3) fail(errc::dimension_too_low, "need N >= 3");
    if (!(p > 2.0) || !(p < critical_exponent(n_dim)))
      fail(errc::invalid_exponent, "need 2 < p < 2N/(N-2), got p = " + std::to_string(p));
    if (!(lambda > 0.0)) fail(errc::invalid_lambda, "need lambda > 0");
    if (!(shoot_tol > 0.0) || !(shoot_tol < 1e-6))
      fail(errc::invalid_input, "shoot_tol must lie in (0, 1e-6)");
    if (!(ode_rel_tol > 0.0) || !(decay_floor > 0.0) || !(r_start > 0.0))
      fail(errc::invalid_input, "tolerances must be positive");
  }
};

enum class TrialKind { undershoot, overshoot, decayed };

struct ShootDiagnostics {
  double beta_lo = 0.0;        // final bracket endpoints
  double beta_hi = 0.0;
  TrialKind lo_kind = TrialKind::undershoot;
  TrialKind hi_kind = TrialKind::overshoot;
  double bracket_rel_width = 0.0;
  int bisection_steps = 0;
};

// Conservative bounds on the integral mass neglected beyond r_max,
// obtained from u <= u(r_max) * exp(-sqrt(lambda) (r - r_max)).
struct TailBound {
  double A = 0.0;
  double B = 0.0;
  double C = 0.0;
};

// Radial profile sampled on a grid starting at r = 0.  u strictly positive and
// decreasing, du = u'.  `functionals` holds the integrator-accumulated (A,B,C);
// `error_estimate` is a per-functional relative accuracy estimate.
struct RadialProfile {
  int n_dim = 0;
  double p = 0.0;
  double lambda = 0.0;
  double beta = 0.0;         // u(0)
  double decay_floor = 0.0;  // floor the tail was driven below
  std::vector<double> r;
  std::vector<double> u;
  std::vector<double> du;
  FunctionalTriple functionals;
  TailBound tail_bound;
  double error_estimate = 0.0;  // relative, applies to each of A, B, C
  ShootDiagnostics diag;

  double r_max() const { return r.empty() ? 0.0 : r.back(); }
  size_t size() const { return r.size(); }

  void validate_structure() const {
    if (r.size() < 3) fail(errc::empty_grid, "profile grid has fewer than 3 points");
    if (r.size() != u.size() || r.size() != du.size())
      fail(errc::invalid_input, "profile arrays have mismatched lengths");
    if (r.front() != 0.0) fail(errc::invalid_input, "profile grid must start at r = 0");
    for (size_t i = 1; i < r.size(); ++i)
      if (!(r[i] > r[i - 1])) fail(errc::invalid_input, "profile grid must be increasing");
  }
};

}  // namespace kirchhoff
