#pragma once

// Energy, constraint functionals and fibering maps evaluated on a functional
// triple (A, B, C) = (||grad u||^2, ||u||_p^p, ||u||^2) for
//   E(u) = b/4 A^2 + a/2 A + lambda/2 C - B/p.
// Everything here is closed-form algebra in (N, p, a, b, lambda, A, B, C).

#include <array>

#include "kirchhoff/types.hpp"

namespace kirchhoff {

inline constexpr double kDefaultManifoldTol = 1e-6;
inline constexpr double kDefaultClassTol = 1e-8;

double energy(const KirchhoffParams& params, const FunctionalTriple& f);

// a A + b A^2 + lambda C - B: vanishes where d/ds E(s u) = 0 at s = 1.
double nehari_residual(const KirchhoffParams& params, const FunctionalTriple& f);

// (N-2)/(2N) (a A + b A^2) + lambda/2 C - B/p: the dilation-stationarity
// functional; its zero set is the natural constraint manifold.
double pohozaev(const KirchhoffParams& params, const FunctionalTriple& f);

// Same combination with every sign made positive: the magnitude against which
// |pohozaev| is compared when deciding manifold membership.
double pohozaev_scale(const KirchhoffParams& params, const FunctionalTriple& f);

// A/2 + lambda/2 C - B/p, the b = 0 energy of the local equation.
double local_energy(double lambda, const FunctionalTriple& f);

// (a A + lambda C) / B^{2/p}; scale-free quotient minimized by ground states
// of the frozen-coefficient local equation.
double rayleigh_quotient(const KirchhoffParams& params, const FunctionalTriple& f);

// (a/N) s + (4-N) b/(4N) s^2; on the constraint manifold the energy equals
// this function of A alone.
double manifold_energy(const KirchhoffParams& params, double s);

struct FiberingValue {
  double value = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};

// t -> E(u(t .)) through the exact dilation scaling of the triple.
FiberingValue fibering_dilation(const KirchhoffParams& params, const FunctionalTriple& f,
                                double t);

// s -> E(s u) through amplitude scaling: A -> s^2 A, B -> s^p B, C -> s^2 C.
FiberingValue fibering_amplitude(const KirchhoffParams& params, const FunctionalTriple& f,
                                 double s);

enum class ManifoldClass { off_manifold, m_minus, m_zero, m_plus };

const char* manifold_class_name(ManifoldClass c);

// Membership of the triple in the constraint manifold and, when on it, the
// stability type read off the second dilation derivative:
//   m_minus: F''(1) < 0 (local maximum along dilations)
//   m_plus:  F''(1) > 0 (local minimum along dilations)
//   m_zero:  |F''(1)| below the dead band.
ManifoldClass classify_pohozaev(const KirchhoffParams& params, const FunctionalTriple& f,
                                double tol_manifold = kDefaultManifoldTol,
                                double tol_class = kDefaultClassTol);

// Closed-form sign of F''(1) assuming the triple is exactly on the manifold:
// (N-2)/2 A ((N-4) b A - 2 a), with the same dead band as classify_pohozaev.
ManifoldClass classify_trichotomy(const KirchhoffParams& params, const FunctionalTriple& f,
                                  double tol_class = kDefaultClassTol);

struct DilationCriticalPoints {
  int count = 0;    // 0, 1 or 2 critical dilations
  bool tangent = false;
  double t_ref = 0.0;   // the dilation normalizing B/p - lambda C/2 against A
  std::array<double, 2> t{0.0, 0.0};             // ascending
  std::array<ManifoldClass, 2> cls{ManifoldClass::off_manifold, ManifoldClass::off_manifold};
};

// Critical points of the dilation fibering map.  Requires
// Q = B/p - lambda/2 C > 0; otherwise the map has no critical point and the
// triple admits no dilation onto the manifold (error not_compactly_dilatable).
DilationCriticalPoints dilation_critical_points(const KirchhoffParams& params,
                                                const FunctionalTriple& f);

struct AmplitudeCriticalPoints {
  int count = 0;
  std::array<double, 2> s{0.0, 0.0};  // ascending; first is the energy maximum
  double s_center = 0.0;              // argmin of g(s) = b A^2 s^2 + a A + lambda C - B s^{p-2}
  double gap = 0.0;                   // min of g; critical points exist iff gap < 0
};

// Critical points of the amplitude fibering map for 2 < p <= 4 (for p > 4 the
// map is dominated by the quartic term and the question degenerates: error
// exponent_out_of_range).  p = 4 admits at most one critical point.
AmplitudeCriticalPoints amplitude_critical_points(const KirchhoffParams& params,
                                                  const FunctionalTriple& f);

// Minimum over gamma > 0 of a gamma^2 + b A gamma^{4-N}; positive interior
// minimum exists only for N >= 5.
double gamma_map_minimum(int n_dim, double a, double b, double a_grad);

// The value of gamma_map_minimum after normalizing the triple by the t_ref
// dilation, in closed form:
//   (N-2)^2 a^{(N-4)/(N-2)} b^{2/(N-2)} A^{N/(N-2)}
//   / (2^{N/(N-2)} N (N-4)^{(N-4)/(N-2)} Q),   Q = B/p - lambda/2 C.
// Solutions with this ratio below 1 admit a pair of critical dilations.
double threshold_ratio(const KirchhoffParams& params, const FunctionalTriple& f);

// The coefficient b at which threshold_ratio crosses 1 for fixed a and
// gradient mass: N = 4 gives 1/A; N >= 5 the closed form below; N = 3 has no
// threshold (error dimension_too_low).
double critical_b(int n_dim, double a, double a_grad);

struct FiberingReport {
  double energy = 0.0;
  double nehari = 0.0;
  double pohozaev = 0.0;
  double dilation_d2 = 0.0;   // F''(1)
  double amplitude_d1 = 0.0;  // G'(1)
  double amplitude_d2 = 0.0;  // G''(1)
  ManifoldClass cls = ManifoldClass::off_manifold;
  ManifoldClass trichotomy = ManifoldClass::off_manifold;
};

FiberingReport analyze_triple(const KirchhoffParams& params, const FunctionalTriple& f);

}  // namespace kirchhoff
