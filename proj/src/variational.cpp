#include "kirchhoff/variational.hpp"

#include <algorithm>
#include <cmath>

#include "kirchhoff/scaling.hpp"

namespace kirchhoff {
namespace {

void check_pair(const KirchhoffParams& params, const FunctionalTriple& f) {
  params.validate();
  f.validate();
  if (f.n_dim != params.n_dim || f.p != params.p)
    fail(errc::invalid_input, "functional triple does not match the equation parameters");
}

// magnitude of the four functional terms; dead bands scale against it
double class_scale(const KirchhoffParams& params, const FunctionalTriple& f) {
  return params.b * f.A * f.A + params.a * f.A + params.lambda * f.C + f.B;
}

ManifoldClass side_of(double v, double band) {
  if (v < -band) return ManifoldClass::m_minus;
  if (v > band) return ManifoldClass::m_plus;
  return ManifoldClass::m_zero;
}

}  // namespace

double energy(const KirchhoffParams& params, const FunctionalTriple& f) {
  check_pair(params, f);
  return 0.25 * params.b * f.A * f.A + 0.5 * params.a * f.A + 0.5 * params.lambda * f.C -
         f.B / params.p;
}

double nehari_residual(const KirchhoffParams& params, const FunctionalTriple& f) {
  check_pair(params, f);
  return params.b * f.A * f.A + params.a * f.A + params.lambda * f.C - f.B;
}

double pohozaev(const KirchhoffParams& params, const FunctionalTriple& f) {
  check_pair(params, f);
  const double k = (params.n_dim - 2) / (2.0 * params.n_dim);
  return k * (params.a * f.A + params.b * f.A * f.A) + 0.5 * params.lambda * f.C - f.B / params.p;
}

double pohozaev_scale(const KirchhoffParams& params, const FunctionalTriple& f) {
  check_pair(params, f);
  const double k = (params.n_dim - 2) / (2.0 * params.n_dim);
  return k * (params.a * f.A + params.b * f.A * f.A) + 0.5 * params.lambda * f.C + f.B / params.p;
}

double local_energy(double lambda, const FunctionalTriple& f) {
  f.validate();
  if (!(lambda > 0.0)) fail(errc::invalid_lambda, "need lambda > 0");
  return 0.5 * f.A + 0.5 * lambda * f.C - f.B / f.p;
}

double rayleigh_quotient(const KirchhoffParams& params, const FunctionalTriple& f) {
  check_pair(params, f);
  if (!(f.B > 0.0)) fail(errc::zero_lp_norm, "quotient undefined at zero L^p mass");
  return (params.a * f.A + params.lambda * f.C) / std::pow(f.B, 2.0 / params.p);
}

double manifold_energy(const KirchhoffParams& params, double s) {
  params.validate();
  const int N = params.n_dim;
  return params.a / N * s + (4.0 - N) * params.b / (4.0 * N) * s * s;
}

FiberingValue fibering_dilation(const KirchhoffParams& params, const FunctionalTriple& f,
                                double t) {
  check_pair(params, f);
  if (!(t > 0.0)) fail(errc::nonpositive_dilation, "dilation must be positive");
  const int N = params.n_dim;
  const double q4 = 0.25 * params.b * f.A * f.A;
  const double q2 = 0.5 * params.a * f.A;
  const double q0 = 0.5 * params.lambda * f.C - f.B / params.p;
  const double e4 = 4.0 - 2.0 * N, e2 = 2.0 - N, e0 = -double(N);
  FiberingValue out;
  out.value = q4 * std::pow(t, e4) + q2 * std::pow(t, e2) + q0 * std::pow(t, e0);
  out.d1 = e4 * q4 * std::pow(t, e4 - 1.0) + e2 * q2 * std::pow(t, e2 - 1.0) +
           e0 * q0 * std::pow(t, e0 - 1.0);
  out.d2 = e4 * (e4 - 1.0) * q4 * std::pow(t, e4 - 2.0) +
           e2 * (e2 - 1.0) * q2 * std::pow(t, e2 - 2.0) +
           e0 * (e0 - 1.0) * q0 * std::pow(t, e0 - 2.0);
  return out;
}

FiberingValue fibering_amplitude(const KirchhoffParams& params, const FunctionalTriple& f,
                                 double s) {
  check_pair(params, f);
  if (!(s > 0.0)) fail(errc::invalid_amplitude, "amplitude must be positive");
  const double p = params.p;
  const double c4 = 0.25 * params.b * f.A * f.A;
  const double c2 = 0.5 * (params.a * f.A + params.lambda * f.C);
  FiberingValue out;
  out.value = c4 * s * s * s * s + c2 * s * s - f.B / p * std::pow(s, p);
  out.d1 = 4.0 * c4 * s * s * s + 2.0 * c2 * s - f.B * std::pow(s, p - 1.0);
  out.d2 = 12.0 * c4 * s * s + 2.0 * c2 - (p - 1.0) * f.B * std::pow(s, p - 2.0);
  return out;
}

const char* manifold_class_name(ManifoldClass c) {
  switch (c) {
    case ManifoldClass::off_manifold: return "OFF_MANIFOLD";
    case ManifoldClass::m_minus: return "M_MINUS";
    case ManifoldClass::m_zero: return "M_ZERO";
    case ManifoldClass::m_plus: return "M_PLUS";
  }
  return "OFF_MANIFOLD";
}

ManifoldClass classify_pohozaev(const KirchhoffParams& params, const FunctionalTriple& f,
                                double tol_manifold, double tol_class) {
  const double psi = pohozaev(params, f);
  if (std::abs(psi) > tol_manifold * pohozaev_scale(params, f))
    return ManifoldClass::off_manifold;
  const double d2 = fibering_dilation(params, f, 1.0).d2;
  return side_of(d2, tol_class * class_scale(params, f));
}

ManifoldClass classify_trichotomy(const KirchhoffParams& params, const FunctionalTriple& f,
                                  double tol_class) {
  check_pair(params, f);
  const int N = params.n_dim;
  const double t_val =
      0.5 * (N - 2) * f.A * ((N - 4) * params.b * f.A - 2.0 * params.a);
  return side_of(t_val, tol_class * class_scale(params, f));
}

DilationCriticalPoints dilation_critical_points(const KirchhoffParams& params,
                                                const FunctionalTriple& f) {
  check_pair(params, f);
  const int N = params.n_dim;
  const double Q = f.B / params.p - 0.5 * params.lambda * f.C;
  if (!(Q > 0.0))
    fail(errc::not_compactly_dilatable,
         "B/p - lambda C/2 <= 0: the dilation map has no critical point");
  const double k = (N - 2) / (2.0 * N);
  const double t0 = std::sqrt(Q / (k * f.A));
  const double a_t0 = std::pow(t0, 2.0 - N) * f.A;

  DilationCriticalPoints out;
  out.t_ref = t0;
  const GammaRoots roots = solve_gamma(N, params.a, params.b, a_t0);
  out.count = roots.count;
  out.tangent = roots.tangent;
  for (int i = 0; i < roots.count; ++i) {
    out.t[i] = t0 * roots.roots[i];
    out.cls[i] = classify_pohozaev(params, dilate_triple(f, out.t[i]));
  }
  return out;
}

AmplitudeCriticalPoints amplitude_critical_points(const KirchhoffParams& params,
                                                  const FunctionalTriple& f) {
  check_pair(params, f);
  const double p = params.p;
  if (p > 4.0)
    fail(errc::exponent_out_of_range, "amplitude critical points require 2 < p <= 4");
  const double bA2 = params.b * f.A * f.A;
  const double q = params.a * f.A + params.lambda * f.C;
  AmplitudeCriticalPoints out;

  if (p == 4.0) {
    out.gap = bA2 - f.B;
    if (out.gap < 0.0) {
      out.count = 1;
      out.s[0] = std::sqrt(q / (f.B - bA2));
      out.s_center = out.s[0];
    }
    return out;
  }

  // g(s) = bA^2 s^2 + q - B s^{p-2} is decreasing up to s_center, then increasing
  const auto g = [&](double s) { return bA2 * s * s + q - f.B * std::pow(s, p - 2.0); };
  const auto dg = [&](double s) { return 2.0 * bA2 * s - (p - 2.0) * f.B * std::pow(s, p - 3.0); };
  const double s_star = std::pow((p - 2.0) * f.B / (2.0 * bA2), 1.0 / (4.0 - p));
  out.s_center = s_star;
  out.gap = g(s_star);
  if (!(out.gap < 0.0)) return out;

  const auto bisect = [&](double lo, double hi, bool rising) {
    for (int it = 0; it < 200 && hi - lo > 4e-16 * hi; ++it) {
      const double mid = 0.5 * (lo + hi);
      const bool above = g(mid) > 0.0;
      if (above == rising) hi = mid; else lo = mid;
    }
    double s = 0.5 * (lo + hi);
    for (int it = 0; it < 3; ++it) {
      const double step = g(s) / dg(s);
      const double next = s - step;
      if (next > lo && next < hi) s = next;
    }
    return s;
  };

  double lo = std::pow(q / f.B, 1.0 / (p - 2.0));  // g > 0 here, left of the first root
  out.s[0] = bisect(lo, s_star, false);
  double hi = s_star;
  for (int it = 0; it < 400 && g(hi) < 0.0; ++it) hi *= 2.0;
  if (g(hi) < 0.0) fail(errc::non_convergence, "no upper bracket for the amplitude root");
  out.s[1] = bisect(s_star, hi, true);
  out.count = 2;
  return out;
}

double gamma_map_minimum(int n_dim, double a, double b, double a_grad) {
  if (n_dim < 5)
    fail(errc::dimension_too_low, "the gamma map has a positive interior minimum only for N >= 5");
  if (!(a > 0.0 && b > 0.0 && a_grad > 0.0))
    fail(errc::invalid_input, "need a, b and the gradient mass positive");
  const double N = n_dim;
  const double c = b * a_grad;
  return std::pow(0.5 * (N - 4.0) * c, 2.0 / (N - 2.0)) * (N - 2.0) *
         std::pow(a, (N - 4.0) / (N - 2.0)) / (N - 4.0);
}

double threshold_ratio(const KirchhoffParams& params, const FunctionalTriple& f) {
  check_pair(params, f);
  const double N = params.n_dim;
  if (params.n_dim < 5) fail(errc::dimension_too_low, "threshold ratio requires N >= 5");
  const double Q = f.B / params.p - 0.5 * params.lambda * f.C;
  if (!(Q > 0.0))
    fail(errc::not_compactly_dilatable, "B/p - lambda C/2 <= 0: no normalizing dilation");
  const double num = (N - 2.0) * (N - 2.0) * std::pow(params.a, (N - 4.0) / (N - 2.0)) *
                     std::pow(params.b, 2.0 / (N - 2.0)) * std::pow(f.A, N / (N - 2.0));
  const double den =
      std::pow(2.0, N / (N - 2.0)) * N * std::pow(N - 4.0, (N - 4.0) / (N - 2.0)) * Q;
  return num / den;
}

double critical_b(int n_dim, double a, double a_grad) {
  if (!(a > 0.0 && a_grad > 0.0)) fail(errc::invalid_input, "need a > 0 and gradient mass > 0");
  if (n_dim < 4)
    fail(errc::dimension_too_low, "the root count is b-independent for N = 3");
  if (n_dim == 4) return 1.0 / a_grad;
  const double N = n_dim;
  return 2.0 / ((N - 4.0) * a_grad) *
         std::pow((N - 4.0) / ((N - 2.0) * std::pow(a, (N - 4.0) / (N - 2.0))), 0.5 * (N - 2.0));
}

FiberingReport analyze_triple(const KirchhoffParams& params, const FunctionalTriple& f) {
  FiberingReport rep;
  rep.energy = energy(params, f);
  rep.nehari = nehari_residual(params, f);
  rep.pohozaev = pohozaev(params, f);
  rep.dilation_d2 = fibering_dilation(params, f, 1.0).d2;
  const auto amp = fibering_amplitude(params, f, 1.0);
  rep.amplitude_d1 = amp.d1;
  rep.amplitude_d2 = amp.d2;
  rep.cls = classify_pohozaev(params, f);
  rep.trichotomy = classify_trichotomy(params, f);
  return rep;
}

}  // namespace kirchhoff
