#include "kirchhoff/ground_state.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "dopri5.hpp"

namespace kirchhoff {
namespace {

using detail::StateVec;

constexpr double kEps = std::numeric_limits<double>::epsilon();

// |u|^{p-2} u, odd in u so overshooting trajectories stay well defined.
inline double odd_power(double u, double pm1) {
  return u >= 0.0 ? std::pow(u, pm1) : -std::pow(-u, pm1);
}

// Augmented state: (u, u', I_A, I_B, I_C) with the raw radial integrals
// I_A = int u'^2 r^{N-1}, I_B = int |u|^p r^{N-1}, I_C = int u^2 r^{N-1}.
struct Rhs {
  int n_dim;
  double p;
  double lambda;

  StateVec<5> operator()(double r, const StateVec<5>& y) const {
    const double u = y[0], v = y[1];
    const double rp = std::pow(r, n_dim - 1);
    StateVec<5> d;
    d[0] = v;
    d[1] = -(n_dim - 1) / r * v + lambda * u - odd_power(u, p - 1.0);
    d[2] = v * v * rp;
    d[3] = std::pow(std::abs(u), p) * rp;
    d[4] = u * u * rp;
    return d;
  }
};

// Series start at small r: u = beta + c r^2/(2N) + O(r^4), c = lambda beta - beta^{p-1}.
struct SeriesStart {
  double u, v;
};

SeriesStart series_at(const GroundStateSpec& spec, double beta, double r) {
  const double c = spec.lambda * beta - std::pow(beta, spec.p - 1.0);
  return {beta + c * r * r / (2.0 * spec.n_dim), c * r / spec.n_dim};
}

// Raw integrals of the three densities over [0, r_start] from the series.
std::array<double, 3> head_integrals(const GroundStateSpec& spec, double beta) {
  static constexpr double xi[4] = {-0.8611363115940526, -0.3399810435848563,
                                   0.3399810435848563, 0.8611363115940526};
  static constexpr double wt[4] = {0.3478548451374538, 0.6521451548625461, 0.6521451548625461,
                                   0.3478548451374538};
  std::array<double, 3> acc{0.0, 0.0, 0.0};
  for (int i = 0; i < 4; ++i) {
    const double x = 0.5 * spec.r_start * (1.0 + xi[i]);
    const double w = 0.5 * spec.r_start * wt[i];
    const auto s = series_at(spec, beta, x);
    const double rp = std::pow(x, spec.n_dim - 1);
    acc[0] += w * s.v * s.v * rp;
    acc[1] += w * std::pow(s.u, spec.p) * rp;
    acc[2] += w * s.u * s.u * rp;
  }
  return acc;
}

// Integration drift off the decaying branch is amplified by e^{2 sqrt(lambda) r}
// before the tail handoff, so the integrator runs with headroom below the
// requested tolerance; the reported error estimate keeps the requested value.
double run_tolerance(const GroundStateSpec& spec) {
  return std::max(spec.ode_rel_tol * 1e-3, 1e-14);
}

TrialKind run_trial(const GroundStateSpec& spec, double beta) {
  const Rhs rhs{spec.n_dim, spec.p, spec.lambda};
  const double sq = std::sqrt(spec.lambda);
  const double h_max = 0.25 / sq;
  const double r_cap = 100.0 * (1.0 + 1.0 / sq);
  const double atol = 1e-16 * std::max(1.0, beta);
  const double u_floor = 1e-9 * beta;

  double r = spec.r_start;
  const auto s0 = series_at(spec, beta, r);
  StateVec<5> y{s0.u, s0.v, 0.0, 0.0, 0.0};
  StateVec<5> k1 = rhs(r, y);
  double h = 1e-6;
  double u_prev = y[0];
  for (long step = 0; step < 4'000'000 && r < r_cap; ++step) {
    const double hstep = std::min(h, h_max);
    StateVec<5> y_new;
    const double err =
        detail::dopri5_try_step(rhs, r, y, hstep, y_new, k1, atol, run_tolerance(spec));
    if (err <= 1.0) {
      r += hstep;
      y = y_new;
      if (y[0] <= 0.0) return TrialKind::overshoot;
      if (y[1] >= 0.0 || y[0] > u_prev) return TrialKind::undershoot;
      if (y[0] <= u_floor) return TrialKind::decayed;
      u_prev = y[0];
    }
    h = detail::dopri5_next_h(hstep, err, 1e-12, h_max);
  }
  fail(errc::non_convergence,
       "shooting trial produced no event before r = " + std::to_string(r_cap));
}

struct BracketResult {
  double beta;
  ShootDiagnostics diag;
};

BracketResult shoot_bisect(const GroundStateSpec& spec) {
  const double beta_eq = std::pow(spec.lambda, 1.0 / (spec.p - 2.0));
  double lo = beta_eq * (1.0 + 1e-6);
  TrialKind lo_kind = run_trial(spec, lo);
  if (lo_kind == TrialKind::overshoot)
    fail(errc::no_bracket, "shot at the lower bracket endpoint already overshoots");

  ShootDiagnostics diag;
  if (lo_kind == TrialKind::decayed) {
    diag = {lo, lo, lo_kind, lo_kind, 0.0, 0};
    return {lo, diag};
  }

  double hi = lo;
  TrialKind hi_kind = lo_kind;
  for (int k = 0; k < 60 && hi_kind == TrialKind::undershoot; ++k) {
    lo = hi;
    hi *= 2.0;
    hi_kind = run_trial(spec, hi);
  }
  if (hi_kind == TrialKind::decayed) {
    diag = {hi, hi, hi_kind, hi_kind, 0.0, 0};
    return {hi, diag};
  }
  if (hi_kind != TrialKind::overshoot)
    fail(errc::no_bracket, "no overshoot found while doubling the shooting amplitude");

  int steps = 0;
  bool decayed_mid = false;
  for (; steps < 200; ++steps) {
    if (hi - lo <= 4.0 * kEps * hi) break;
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const TrialKind kind = run_trial(spec, mid);
    if (kind == TrialKind::overshoot) {
      hi = mid;
    } else if (kind == TrialKind::undershoot) {
      lo = mid;
    } else {
      lo = hi = mid;
      decayed_mid = true;
      break;
    }
  }
  const double beta = 0.5 * (lo + hi);
  diag.beta_lo = lo;
  diag.beta_hi = hi;
  diag.lo_kind = decayed_mid ? TrialKind::decayed : TrialKind::undershoot;
  diag.hi_kind = decayed_mid ? TrialKind::decayed : TrialKind::overshoot;
  diag.bracket_rel_width = (hi - lo) / beta;
  diag.bisection_steps = steps;
  if (diag.bracket_rel_width > spec.shoot_tol)
    fail(errc::non_convergence, "shooting bracket failed to reach shoot_tol");
  return {beta, diag};
}

struct FinalPass {
  std::vector<double> r, u, du;      // nodes h, 2h, ... (r = 0 prepended later)
  std::array<double, 3> integrals;   // raw integrals over [r_start, last node]
  bool needs_tail = false;
};

// The output grid must resolve the core's linearized frequency
// sqrt((p-1) beta^{p-2} - lambda) -- near the critical exponent it dwarfs the
// tail rate sqrt(lambda), and an underresolved core is what the fourth-order
// quadrature and verification stencils see first.
double output_step(const GroundStateSpec& spec, double beta) {
  const double sq = std::sqrt(spec.lambda);
  const double k_core = std::sqrt(std::max(
      (spec.p - 1.0) * std::pow(beta, spec.p - 2.0) - spec.lambda, spec.lambda));
  return std::max(std::min(0.01 / sq, 0.035 / k_core), 1e-4 / sq);
}

FinalPass integrate_final(const GroundStateSpec& spec, double beta) {
  const Rhs rhs{spec.n_dim, spec.p, spec.lambda};
  const double h_out = output_step(spec, beta);
  if (!(spec.r_start <= 0.25 * h_out))
    fail(errc::invalid_input, "r_start must be well below the output grid step");
  if (!(spec.decay_floor < 0.1 * beta))
    fail(errc::invalid_input, "decay_floor is not small compared to the amplitude");
  // Hand off to the Riccati tail while the trajectory is still clean: the
  // growing-mode contamination inherited from the finite shooting bracket
  // grows like (beta/u)^2 along the decay, while the backward sweep stays on
  // the decaying branch as long as lambda - u^{p-2} remains positive.
  const double beta_eq = std::pow(spec.lambda, 1.0 / (spec.p - 2.0));
  const double u_switch = std::min(1e-2 * beta, 0.25 * beta_eq);
  const double stop_level = std::max(u_switch, spec.decay_floor);
  const double atol = 1e-16 * std::max(1.0, beta);

  FinalPass out;
  double r = spec.r_start;
  const auto s0 = series_at(spec, beta, r);
  StateVec<5> y{s0.u, s0.v, 0.0, 0.0, 0.0};
  StateVec<5> k1 = rhs(r, y);
  double h = 1e-6;
  for (long node = 1; node < 4'000'000; ++node) {
    const double r_node = node * h_out;
    long guard = 0;
    while (r < r_node) {
      if (++guard > 1'000'000)
        fail(errc::non_convergence, "integrator stalled during the dense output pass");
      double hstep = std::min(h, r_node - r);
      const bool landing = (hstep >= r_node - r - 1e-14 * r_node);
      if (landing) hstep = r_node - r;
      StateVec<5> y_new;
      const double err =
          detail::dopri5_try_step(rhs, r, y, hstep, y_new, k1, atol, run_tolerance(spec));
      if (err <= 1.0) {
        r = landing ? r_node : r + hstep;
        y = y_new;
        if (y[0] <= 0.0 || y[1] >= 0.0)
          fail(errc::non_convergence,
               "trajectory lost the decaying branch before the tail switch");
      }
      h = detail::dopri5_next_h(hstep, err, 1e-13, h_out);
    }
    out.r.push_back(r_node);
    out.u.push_back(y[0]);
    out.du.push_back(y[1]);
    if (y[0] <= stop_level) {
      out.needs_tail = y[0] > spec.decay_floor;
      break;
    }
  }
  if (out.r.empty() || out.u.back() > stop_level)
    fail(errc::non_convergence, "dense output pass did not reach the tail switch level");
  out.integrals = {y[2], y[3], y[4]};
  return out;
}

// Nonlinear tail continuation.  m = u'/u obeys the Riccati equation
//   m' = lambda - u^{p-2} - m^2 - (N-1) m / r,
// whose decaying branch is stable when swept backward.  Three fixed-point
// passes couple the sweep with the reconstruction u' = m u.
struct TailResult {
  std::vector<double> r, u, du;
  std::vector<double> m, g;  // log-slope and its derivative at the nodes
  long first_below = 0;      // first index (into these arrays) with u <= floor
};

TailResult riccati_tail(int n_dim, double p, double lambda, double r_anchor, double u_anchor,
                        double h, double floor_abs) {
  const double sq = std::sqrt(lambda);
  const double c1 = (n_dim - 1) * (n_dim - 3) / (8.0 * sq);
  const auto m_asym = [&](double rr) {
    return -sq - (n_dim - 1) / (2.0 * rr) - c1 / (rr * (rr + c1));
  };
  const auto rhs_m = [&](double rr, double mm, double uu) {
    return lambda - std::pow(uu, p - 2.0) - mm * mm - (n_dim - 1) * mm / rr;
  };

  long K = (long)std::ceil((std::log(u_anchor / floor_abs) / sq * 1.5 + 6.0 / sq) / h) + 8;
  for (int attempt = 0; attempt < 6; ++attempt, K = K * 3 / 2) {
    std::vector<double> r(K + 1), u(K + 1), m(K + 1), g(K + 1);
    for (long k = 0; k <= K; ++k) r[k] = r_anchor + k * h;
    for (long k = 0; k <= K; ++k)
      u[k] = u_anchor * std::pow(r_anchor / r[k], 0.5 * (n_dim - 1)) *
             std::exp(-sq * (r[k] - r_anchor)) * ((1.0 + c1 / r[k]) / (1.0 + c1 / r_anchor));
    // The (m, u) alternation converges linearly, with a ratio that approaches
    // one as u_anchor^{p-2} approaches lambda; once the ratio of successive
    // anchor-slope increments stabilizes in the linear regime, an Aitken step
    // on log u removes the slow mode.
    double m0_prev = 0.0, d_prev = 0.0;
    bool have_m0 = false;
    std::vector<double> u_in(K + 1);
    for (int pass = 0; pass < 100; ++pass) {
      m[K] = m_asym(r[K]);
      for (long k = K; k > 0; --k) {
        const double u_mid = std::sqrt(u[k] * u[k - 1]);
        const double k1 = rhs_m(r[k], m[k], u[k]);
        const double k2 = rhs_m(r[k] - 0.5 * h, m[k] - 0.5 * h * k1, u_mid);
        const double k3 = rhs_m(r[k] - 0.5 * h, m[k] - 0.5 * h * k2, u_mid);
        const double k4 = rhs_m(r[k] - h, m[k] - h * k3, u[k - 1]);
        m[k - 1] = m[k] - h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      }
      const double d = have_m0 ? std::abs(m[0] - m0_prev) : 0.0;
      double extrap = 0.0;
      if (d_prev > 0.0 && d > 0.0) {
        const double rho = d / d_prev;
        if (rho > 0.3 && rho < 0.97) extrap = std::min(rho / (1.0 - rho), 30.0);
      }
      for (long k = 0; k <= K; ++k) g[k] = rhs_m(r[k], m[k], u[k]);
      u_in = u;
      u[0] = u_anchor;
      for (long k = 0; k < K; ++k) {
        const double intm = 0.5 * h * (m[k] + m[k + 1]) + h * h / 12.0 * (g[k] - g[k + 1]);
        u[k + 1] = u[k] * std::exp(intm);
      }
      if (have_m0 && d <= 1e-13 * std::abs(m[0])) break;
      if (extrap > 0.0) {
        for (long k = 1; k <= K; ++k) u[k] *= std::pow(u[k] / u_in[k], extrap);
        d_prev = 0.0;
      } else {
        d_prev = d;
      }
      m0_prev = m[0];
      have_m0 = true;
    }
    long first_below = -1;
    for (long k = 1; k <= K; ++k) {
      if (u[k] <= floor_abs) {
        first_below = k;
        break;
      }
    }
    if (first_below < 0 || first_below + 1 > K) continue;

    TailResult out;
    const long last = std::min(K, first_below + 2);
    out.first_below = first_below;
    out.r.assign(r.begin(), r.begin() + last + 1);
    out.u.assign(u.begin(), u.begin() + last + 1);
    out.m.assign(m.begin(), m.begin() + last + 1);
    for (long k = 0; k <= last; ++k) g[k] = rhs_m(r[k], m[k], u[k]);
    out.g.assign(g.begin(), g.begin() + last + 1);
    out.du.resize(last + 1);
    for (long k = 0; k <= last; ++k) out.du[k] = out.m[k] * out.u[k];
    return out;
  }
  fail(errc::non_convergence, "tail continuation failed to reach the decay floor");
}

// Corrected-trapezoid tail integrals of the three densities over tail nodes
// [0, upto]; derivative values come from u' = m u and u'' = u (m' + m^2).
std::array<double, 3> tail_integrals(const TailResult& t, int n_dim, double p, long upto) {
  std::array<double, 3> acc{0.0, 0.0, 0.0};
  auto fval = [&](long k, double* f, double* fp) {
    const double rr = t.r[k], uu = t.u[k], vv = t.du[k];
    const double rp = std::pow(rr, n_dim - 1);
    const double rq = (n_dim - 1) * std::pow(rr, n_dim - 2);
    const double upp = uu * (t.g[k] + t.m[k] * t.m[k]);
    f[0] = vv * vv * rp;
    fp[0] = 2.0 * vv * upp * rp + vv * vv * rq;
    f[1] = std::pow(uu, p) * rp;
    fp[1] = p * std::pow(uu, p - 1.0) * vv * rp + std::pow(uu, p) * rq;
    f[2] = uu * uu * rp;
    fp[2] = 2.0 * uu * vv * rp + uu * uu * rq;
  };
  double f0[3], fp0[3], f1[3], fp1[3];
  fval(0, f0, fp0);
  for (long k = 0; k < upto; ++k) {
    const double h = t.r[k + 1] - t.r[k];
    fval(k + 1, f1, fp1);
    for (int j = 0; j < 3; ++j)
      acc[j] += 0.5 * h * (f0[j] + f1[j]) + h * h / 12.0 * (fp0[j] - fp1[j]);
    std::copy(f1, f1 + 3, f0);
    std::copy(fp1, fp1 + 3, fp0);
  }
  return acc;
}

// Exact integral of r^{N-1} exp(-q (r - R)) over [R, inf).
double exp_moment(int n_dim, double R, double q) {
  double term = 1.0 / q, sum = 0.0, pow_r = std::pow(R, n_dim - 1);
  double falling = 1.0;
  for (int j = 0; j < n_dim; ++j) {
    sum += falling * pow_r * term;
    falling *= (n_dim - 1 - j);
    pow_r = (R > 0.0) ? pow_r / R : 0.0;
    term /= q;
  }
  return sum;
}

TailBound make_tail_bound(int n_dim, double p, double lambda, double r_max, double u_end,
                          double omega) {
  const double sq = std::sqrt(lambda);
  const double s_eff = sq + (n_dim - 1) / (2.0 * r_max);
  TailBound tb;
  tb.A = omega * s_eff * s_eff * u_end * u_end * exp_moment(n_dim, r_max, 2.0 * sq);
  tb.B = omega * std::pow(u_end, p) * exp_moment(n_dim, r_max, p * sq);
  tb.C = omega * u_end * u_end * exp_moment(n_dim, r_max, 2.0 * sq);
  return tb;
}

void append_tail_nodes(RadialProfile& prof, const TailResult& tail, long upto) {
  for (long k = 1; k <= upto; ++k) {
    prof.r.push_back(tail.r[k]);
    prof.u.push_back(tail.u[k]);
    prof.du.push_back(tail.du[k]);
  }
}

}  // namespace

TrialKind classify_shot(const GroundStateSpec& spec, double beta) {
  spec.validate();
  if (!(beta > 0.0)) fail(errc::invalid_input, "shot amplitude must be positive");
  return run_trial(spec, beta);
}

RadialProfile solve_ground_state(const GroundStateSpec& spec) {
  spec.validate();
  const auto bracket = shoot_bisect(spec);
  const double beta = bracket.beta;
  GroundStateSpec eff = spec;
  eff.r_start = std::min(spec.r_start, 0.25 * output_step(spec, beta));
  auto pass = integrate_final(eff, beta);
  const auto head = head_integrals(eff, beta);

  RadialProfile prof;
  prof.n_dim = spec.n_dim;
  prof.p = spec.p;
  prof.lambda = spec.lambda;
  prof.beta = beta;
  prof.decay_floor = spec.decay_floor;
  prof.diag = bracket.diag;

  prof.r.reserve(pass.r.size() + 4100);
  prof.u.reserve(pass.r.size() + 4100);
  prof.du.reserve(pass.r.size() + 4100);
  prof.r.push_back(0.0);
  prof.u.push_back(beta);
  prof.du.push_back(0.0);
  prof.r.insert(prof.r.end(), pass.r.begin(), pass.r.end());
  prof.u.insert(prof.u.end(), pass.u.begin(), pass.u.end());
  prof.du.insert(prof.du.end(), pass.du.begin(), pass.du.end());

  std::array<double, 3> raw{head[0] + pass.integrals[0], head[1] + pass.integrals[1],
                            head[2] + pass.integrals[2]};
  if (pass.needs_tail) {
    const double h = pass.r.size() > 1 ? pass.r[1] - pass.r[0] : pass.r[0];
    const auto tail = riccati_tail(spec.n_dim, spec.p, spec.lambda, pass.r.back(),
                                   pass.u.back(), h, spec.decay_floor);
    // keep the total interval count even so composite Simpson applies directly
    long upto = tail.first_below;
    if ((long(pass.r.size()) + upto) % 2 != 0) ++upto;
    const auto tacc = tail_integrals(tail, spec.n_dim, spec.p, upto);
    for (int j = 0; j < 3; ++j) raw[j] += tacc[j];
    append_tail_nodes(prof, tail, upto);
  }

  const double omega = sphere_area(spec.n_dim);
  prof.functionals = {omega * raw[0], omega * raw[1], omega * raw[2], spec.n_dim, spec.p};
  prof.tail_bound =
      make_tail_bound(spec.n_dim, spec.p, spec.lambda, prof.r_max(), prof.u.back(), omega);
  const double tail_rel =
      std::max({prof.tail_bound.A / prof.functionals.A, prof.tail_bound.B / prof.functionals.B,
                prof.tail_bound.C / prof.functionals.C});
  prof.error_estimate = spec.ode_rel_tol + tail_rel;
  prof.validate_structure();
  return prof;
}

RadialProfile rescale_profile(const RadialProfile& base, double lambda_new) {
  base.validate_structure();
  if (!(lambda_new > 0.0)) fail(errc::invalid_lambda, "need lambda > 0");
  if (lambda_new == base.lambda) return base;

  const int n_dim = base.n_dim;
  const double p = base.p;
  const double mu = lambda_new / base.lambda;
  const double amp = std::pow(mu, 1.0 / (p - 2.0));
  const double sq = std::sqrt(mu);

  RadialProfile out;
  out.n_dim = n_dim;
  out.p = p;
  out.lambda = lambda_new;
  out.beta = amp * base.beta;
  out.decay_floor = base.decay_floor;
  out.diag = base.diag;
  out.diag.beta_lo *= amp;
  out.diag.beta_hi *= amp;

  const size_t n = base.size();
  out.r.resize(n);
  out.u.resize(n);
  out.du.resize(n);
  for (size_t i = 0; i < n; ++i) {
    out.r[i] = base.r[i] / sq;
    out.u[i] = amp * base.u[i];
    out.du[i] = amp * sq * base.du[i];
  }

  const double eA = 2.0 / (p - 2.0) + 1.0 - 0.5 * n_dim;
  const double eB = p / (p - 2.0) - 0.5 * n_dim;
  const double eC = 2.0 / (p - 2.0) - 0.5 * n_dim;
  out.functionals = {std::pow(mu, eA) * base.functionals.A, std::pow(mu, eB) * base.functionals.B,
                     std::pow(mu, eC) * base.functionals.C, n_dim, p};
  out.tail_bound = {std::pow(mu, eA) * base.tail_bound.A, std::pow(mu, eB) * base.tail_bound.B,
                    std::pow(mu, eC) * base.tail_bound.C};
  out.error_estimate = base.error_estimate;

  if (out.decay_floor > 0.0 && out.u.back() > out.decay_floor) {
    const double h = out.r[1] - out.r[0];
    const auto tail = riccati_tail(n_dim, p, lambda_new, out.r.back(), out.u.back(), h,
                                   out.decay_floor);
    long upto = tail.first_below;
    if ((long(out.size()) - 1 + upto) % 2 != 0) ++upto;
    append_tail_nodes(out, tail, upto);
    const double omega = sphere_area(n_dim);
    out.tail_bound = make_tail_bound(n_dim, p, lambda_new, out.r_max(), out.u.back(), omega);
  }
  out.validate_structure();
  return out;
}

RadialProfile dilate_profile(const RadialProfile& base, double t) {
  base.validate_structure();
  if (!(t > 0.0)) fail(errc::nonpositive_dilation, "dilation must be positive");
  RadialProfile out = base;
  for (size_t i = 0; i < base.size(); ++i) {
    out.r[i] = base.r[i] / t;
    out.du[i] = t * base.du[i];
  }
  out.functionals = dilate_triple(base.functionals, t);
  const double sA = std::pow(t, 2.0 - base.n_dim), s0 = std::pow(t, -base.n_dim);
  out.tail_bound = {sA * base.tail_bound.A, s0 * base.tail_bound.B, s0 * base.tail_bound.C};
  return out;
}

namespace {

bool grid_is_uniform(const std::vector<double>& r, double* h_out) {
  const double h = r[1] - r[0];
  if (!(h > 0.0)) return false;
  for (size_t i = 1; i < r.size(); ++i)
    if (std::abs(r[i] - double(i) * h) > 1e-9 * std::max(1.0, r[i])) return false;
  *h_out = h;
  return true;
}

std::array<double, 3> simpson_raw(const std::vector<double>& r, const std::vector<double>& u,
                                  const std::vector<double>& du, int n_dim, double p, double h) {
  const size_t n = r.size();
  std::array<double, 3> acc{0.0, 0.0, 0.0};
  for (size_t i = 0; i < n; ++i) {
    const double w = (i == 0 || i + 1 == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    const double rp = std::pow(r[i], n_dim - 1);
    const double c = w * rp;
    acc[0] += c * du[i] * du[i];
    acc[1] += c * std::pow(std::abs(u[i]), p);
    acc[2] += c * u[i] * u[i];
  }
  for (auto& v : acc) v *= h / 3.0;
  return acc;
}

struct HermiteEval {
  double u, du;
};

HermiteEval hermite_at(const RadialProfile& prof, double r) {
  const auto& R = prof.r;
  const size_t n = R.size();
  if (r >= R.back()) return {r == R.back() ? prof.u.back() : 0.0, r == R.back() ? prof.du.back() : 0.0};
  const size_t hi = std::upper_bound(R.begin(), R.end(), r) - R.begin();
  const size_t i = hi == 0 ? 0 : hi - 1;
  const double h = R[i + 1] - R[i];
  const double t = (r - R[i]) / h;
  const double t2 = t * t, t3 = t2 * t;
  const double h00 = 2.0 * t3 - 3.0 * t2 + 1.0, h10 = t3 - 2.0 * t2 + t;
  const double h01 = -2.0 * t3 + 3.0 * t2, h11 = t3 - t2;
  const double d00 = (6.0 * t2 - 6.0 * t) / h, d10 = 3.0 * t2 - 4.0 * t + 1.0;
  const double d01 = (-6.0 * t2 + 6.0 * t) / h, d11 = 3.0 * t2 - 2.0 * t;
  HermiteEval out;
  out.u = h00 * prof.u[i] + h * h10 * prof.du[i] + h01 * prof.u[i + 1] + h * h11 * prof.du[i + 1];
  out.du = d00 * prof.u[i] + d10 * prof.du[i] + d01 * prof.u[i + 1] + d11 * prof.du[i + 1];
  return out;
}

}  // namespace

double eval_profile(const RadialProfile& prof, double r) {
  if (!(r >= 0.0)) fail(errc::invalid_input, "profile evaluated at negative radius");
  return hermite_at(prof, r).u;
}

double eval_profile_deriv(const RadialProfile& prof, double r) {
  if (!(r >= 0.0)) fail(errc::invalid_input, "profile evaluated at negative radius");
  return hermite_at(prof, r).du;
}

TailBound tail_bound_beyond(const RadialProfile& prof) {
  prof.validate_structure();
  return make_tail_bound(prof.n_dim, prof.p, prof.lambda, prof.r_max(), std::abs(prof.u.back()),
                         sphere_area(prof.n_dim));
}

FunctionalTriple compute_functionals(const RadialProfile& prof) {
  prof.validate_structure();
  const size_t n = prof.size();
  const double omega = sphere_area(prof.n_dim);
  double h = 0.0;
  std::array<double, 3> raw;
  if (n >= 5 && n % 2 == 1 && grid_is_uniform(prof.r, &h)) {
    raw = simpson_raw(prof.r, prof.u, prof.du, prof.n_dim, prof.p, h);
  } else {
    // resample through the Hermite interpolant onto a uniform odd-count grid
    size_t m = std::clamp<size_t>(4 * n, 2001, 400001);
    if (m % 2 == 0) ++m;
    const double hr = prof.r_max() / double(m - 1);
    std::vector<double> rr(m), uu(m), dd(m);
    for (size_t i = 0; i < m; ++i) {
      rr[i] = double(i) * hr;
      const auto e = hermite_at(prof, rr[i]);
      uu[i] = e.u;
      dd[i] = e.du;
    }
    raw = simpson_raw(rr, uu, dd, prof.n_dim, prof.p, hr);
  }
  return {omega * raw[0], omega * raw[1], omega * raw[2], prof.n_dim, prof.p};
}

LocalIdentityReport local_identity_report(const RadialProfile& prof) {
  const auto f = compute_functionals(prof);
  if (!(f.B > 0.0)) fail(errc::zero_lp_norm, "profile has vanishing L^p mass");
  const int N = prof.n_dim;
  LocalIdentityReport rep;
  rep.nehari_rel = std::abs(f.A + prof.lambda * f.C - f.B) / f.B;
  rep.pohozaev_rel =
      std::abs((N - 2) / (2.0 * N) * f.A + 0.5 * prof.lambda * f.C - f.B / prof.p) / f.B;
  return rep;
}

const char* errc_name(errc code) {
  switch (code) {
    case errc::invalid_input: return "InvalidInput";
    case errc::invalid_exponent: return "InvalidExponent";
    case errc::invalid_lambda: return "InvalidLambda";
    case errc::invalid_amplitude: return "InvalidS";
    case errc::nonpositive_dilation: return "NonpositiveT";
    case errc::exponent_out_of_range: return "ExponentOutOfRange";
    case errc::dimension_too_low: return "DimensionTooLow";
    case errc::not_compactly_dilatable: return "NotInC";
    case errc::not_below_threshold: return "NotInBMinus";
    case errc::zero_lp_norm: return "ZeroB";
    case errc::empty_grid: return "EmptyGrid";
    case errc::grid_too_coarse: return "GridTooCoarse";
    case errc::no_bracket: return "NoBracket";
    case errc::non_convergence: return "NonConvergence";
    case errc::io_error: return "IoError";
    case errc::parse_error: return "ParseError";
  }
  return "UnknownError";
}

}  // namespace kirchhoff
