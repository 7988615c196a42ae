#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "kirchhoff/ground_state.hpp"
#include "kirchhoff/scaling.hpp"
#include "kirchhoff/verification.hpp"

using namespace kirchhoff;

namespace {

// frozen quadrature-free reference values of the best constant in
// ||grad u||^2 >= S ||u||_{2N/(N-2)}^2
constexpr double kSobolev3 = 5.4779040895313319;
constexpr double kSobolev4 = 10.260398641294913;
constexpr double kSobolev5 = 14.811911720005934;
constexpr double kSobolev6 = 19.259456665473206;
constexpr double kSobolev7 = 23.651515700982420;

KirchhoffParams make_params(int n_dim, double p, double a, double b, double lambda) {
  KirchhoffParams params;
  params.n_dim = n_dim;
  params.p = p;
  params.a = a;
  params.b = b;
  params.lambda = lambda;
  return params;
}

FunctionalTriple make_triple(int n_dim, double p, double A, double B, double C) {
  FunctionalTriple f;
  f.n_dim = n_dim;
  f.p = p;
  f.A = A;
  f.B = B;
  f.C = C;
  return f;
}

const RadialProfile& solved(int n_dim, double p) {
  static RadialProfile c34, c52;
  RadialProfile& slot = (n_dim == 3) ? c34 : c52;
  if (slot.size() == 0) {
    GroundStateSpec spec;
    spec.n_dim = n_dim;
    spec.p = p;
    spec.lambda = 1.0;
    slot = solve_ground_state(spec);
  }
  return slot;
}

bool check_named(const std::vector<IdentityCheck>& checks, const std::string& name) {
  for (const IdentityCheck& c : checks)
    if (c.name == name) return c.pass;
  return false;
}

}  // namespace

TEST_CASE("sobolev constant matches frozen closed-form values") {
  CHECK(sobolev_constant(3) == doctest::Approx(kSobolev3).epsilon(1e-12));
  CHECK(sobolev_constant(4) == doctest::Approx(kSobolev4).epsilon(1e-12));
  CHECK(sobolev_constant(5) == doctest::Approx(kSobolev5).epsilon(1e-12));
  CHECK(sobolev_constant(6) == doctest::Approx(kSobolev6).epsilon(1e-12));
  CHECK(sobolev_constant(7) == doctest::Approx(kSobolev7).epsilon(1e-12));
  CHECK(sobolev_constant(5, 512) == doctest::Approx(sobolev_constant(5, 128)).epsilon(1e-13));
  CHECK_THROWS_AS(sobolev_constant(2), error);
  CHECK_THROWS_AS(sobolev_constant(5, 0), error);
}

TEST_CASE("gradient bounds reduce to hand-expanded closed forms") {
  // N = 6, p = 5/2: the interpolation exponent collapses to 1 and both bounds
  // become rational multiples of powers of the Sobolev constant
  const double s3 = kSobolev6 * kSobolev6 * kSobolev6;
  {
    const GradientBounds gb = gradient_bounds(make_params(6, 2.5, 1.0, 0.5, 1.0));
    CHECK(gb.lower == doctest::Approx((25.0 / 24.0) * (25.0 / 24.0) * s3).epsilon(1e-12));
    CHECK(gb.upper == doctest::Approx((0.96 / 0.5) * (0.96 / 0.5) / s3).epsilon(1e-12));
  }
  {
    const GradientBounds gb = gradient_bounds(make_params(5, 2.2, 2.0, 1e-6, 1.0));
    CHECK(gb.lower > 0.0);
    CHECK(gb.lower < gb.upper);
    const GradientBounds tighter = gradient_bounds(make_params(5, 2.2, 2.0, 1e-5, 1.0));
    CHECK(tighter.upper < gb.upper);
    CHECK(tighter.lower == doctest::Approx(gb.lower).epsilon(1e-15));
  }
  CHECK_THROWS_AS(gradient_bounds(make_params(4, 3.0, 1.0, 1.0, 1.0)), error);
}

TEST_CASE("interpolation bound reduces to the Hoelder-Sobolev chain") {
  // N = 3, p = 4: theta = 3/4, so B <= S^{-3/2} C^{1/2} A^{3/2}
  const double expected = std::pow(kSobolev3, -1.5) * std::sqrt(3.0) * std::pow(2.0, 1.5);
  CHECK(interpolation_bound(3, 4.0, 2.0, 3.0) == doctest::Approx(expected).epsilon(1e-12));
  CHECK_THROWS_AS(interpolation_bound(2, 3.0, 1.0, 1.0), error);
  CHECK_THROWS_AS(interpolation_bound(3, 6.5, 1.0, 1.0), error);
  CHECK_THROWS_AS(interpolation_bound(3, 4.0, 0.0, 1.0), error);

  const RadialProfile& prof = solved(3, 4.0);
  const FunctionalTriple f = prof.functionals;
  CHECK(f.B < interpolation_bound(3, 4.0, f.A, f.C));
}

TEST_CASE("equation residual separates solutions from impostors") {
  const RadialProfile& prof = solved(3, 4.0);
  CHECK(ode_residual(prof, 1.0, 0.0) <= 1e-5);

  RadialProfile bad = prof;
  for (size_t i = 0; i < bad.size(); ++i) {
    bad.u[i] *= 1.01;
    bad.du[i] *= 1.01;
  }
  CHECK(ode_residual(bad, 1.0, 0.0) > 1e-3);

  RadialProfile coarse;
  coarse.n_dim = 3;
  coarse.p = 3.0;
  coarse.lambda = 1.0;
  coarse.beta = 1.0;
  for (int i = 0; i < 50; ++i) {
    coarse.r.push_back(0.1 * i);
    coarse.u.push_back(std::exp(-0.1 * i));
    coarse.du.push_back(-std::exp(-0.1 * i));
  }
  try {
    ode_residual(coarse, 1.0, 0.0);
    FAIL("expected grid_too_coarse");
  } catch (const error& e) {
    CHECK(e.code() == errc::grid_too_coarse);
  }
}

TEST_CASE("identity suite certifies constructed solutions") {
  const std::vector<std::string> low_names = {"pohozaev", "nehari", "on_manifold_energy",
                                              "f_prime_psi_link", "ode_residual_norm"};
  const std::vector<std::string> high_names = {
      "pohozaev",          "nehari",
      "on_manifold_energy", "f_prime_psi_link",
      "ode_residual_norm",  "gradient_lower_bound",
      "gradient_upper_bound", "interpolation_inequality",
      "trichotomy_consistent"};

  {
    const KirchhoffParams params = make_params(3, 4.0, 1.0, 0.5, 1.0);
    const SolutionSet set = build_solutions(solved(3, 4.0), params, true);
    REQUIRE(set.solutions.size() == 1);
    const std::vector<IdentityCheck> checks = identity_suite(set.solutions[0].profile, params);
    REQUIRE(checks.size() == low_names.size());
    for (size_t i = 0; i < checks.size(); ++i) {
      CHECK(checks[i].name == low_names[i]);
      CAPTURE(checks[i].name);
      CAPTURE(checks[i].value);
      CHECK(checks[i].pass);
    }
  }
  {
    const KirchhoffParams params = make_params(5, 2.2, 2.0, 1e-6, 1.0);
    const SolutionSet set = build_solutions(solved(5, 2.2), params, true);
    REQUIRE(set.solutions.size() == 2);
    for (const KirchhoffSolution& sol : set.solutions) {
      const std::vector<IdentityCheck> checks = identity_suite(sol.profile, params);
      REQUIRE(checks.size() == high_names.size());
      for (size_t i = 0; i < checks.size(); ++i) {
        CHECK(checks[i].name == high_names[i]);
        CAPTURE(checks[i].name);
        CAPTURE(checks[i].value);
        CHECK(checks[i].pass);
      }
    }
  }
}

TEST_CASE("identity suite flags a tampered profile") {
  const KirchhoffParams params = make_params(3, 4.0, 1.0, 0.5, 1.0);
  const SolutionSet set = build_solutions(solved(3, 4.0), params, true);
  RadialProfile bad = set.solutions[0].profile;
  for (size_t i = 0; i < bad.size(); ++i) {
    bad.u[i] *= 1.01;
    bad.du[i] *= 1.01;
  }
  const std::vector<IdentityCheck> checks = identity_suite(bad, params);
  CHECK(!check_named(checks, "nehari"));
  CHECK(!check_named(checks, "pohozaev"));
}

TEST_CASE("scan-grid root counts agree with the dilation equation solver") {
  for (const int n_dim : {3, 4, 5, 6}) {
    CAPTURE(n_dim);
    const GammaScanGrid grid(n_dim);
    std::mt19937 rng(1000 + n_dim);
    std::uniform_real_distribution<double> ld(std::log(1e-2), std::log(1e2));
    for (int trial = 0; trial < 100; ++trial) {
      const double a = std::exp(ld(rng));
      const double c = std::exp(ld(rng));
      CAPTURE(a);
      CAPTURE(c);
      CHECK(root_count_oracle(grid, a, c, 1.0) == solve_gamma(n_dim, a, c, 1.0).count);
    }
  }
}

TEST_CASE("scan-grid counts across the four-dimensional threshold") {
  const GammaScanGrid grid(4);
  const double cs[] = {0.3, 0.7, 0.99, 1.01, 3.0};
  const int expected[] = {1, 1, 1, 0, 0};
  for (int i = 0; i < 5; ++i) {
    CAPTURE(cs[i]);
    CHECK(root_count_oracle(grid, 1.0, cs[i], 1.0) == expected[i]);
    CHECK(solve_gamma(4, 1.0, cs[i], 1.0).count == expected[i]);
  }
}

TEST_CASE("scan grid detects the tangent configuration") {
  const GammaScanGrid grid(5);
  const double c_star = 0.27216552697590868;  // min of 2 g^2 + c/g equals 1
  CHECK(root_count_oracle(grid, 2.0, c_star, 1.0) == 1);
  CHECK(solve_gamma(5, 2.0, c_star, 1.0).count == 1);
  CHECK(grid.min_h(2.0, c_star) == doctest::Approx(1.0).epsilon(1e-8));
  CHECK_THROWS_AS(GammaScanGrid(2), error);
  CHECK_THROWS_AS(root_count_oracle(grid, -1.0, 1.0, 1.0), error);
}

TEST_CASE("finite differences confirm the closed-form fibering derivatives") {
  const KirchhoffParams anchor = make_params(5, 3.0, 2.0, 0.125, 1.0);
  const FunctionalTriple f = make_triple(5, 3.0, 2.0, 6.0, 1.0);
  for (const double t : {0.7, 1.0, 1.3}) {
    const DerivativeCheck dc = derivative_check(anchor, f, t);
    CAPTURE(t);
    CAPTURE(dc.d1_rel_err);
    CAPTURE(dc.d2_rel_err);
    CHECK(dc.pass);
  }

  std::mt19937 rng(424242);
  std::uniform_real_distribution<double> ld(std::log(0.1), std::log(10.0));
  std::uniform_int_distribution<int> nd(3, 7);
  for (int trial = 0; trial < 20; ++trial) {
    const int n_dim = nd(rng);
    std::uniform_real_distribution<double> pd(2.05, critical_exponent(n_dim) - 0.05);
    const KirchhoffParams params =
        make_params(n_dim, pd(rng), std::exp(ld(rng)), std::exp(ld(rng)), std::exp(ld(rng)));
    const FunctionalTriple f2 =
        make_triple(n_dim, params.p, std::exp(ld(rng)), std::exp(ld(rng)), std::exp(ld(rng)));
    std::uniform_real_distribution<double> td(0.5, 2.0);
    const DerivativeCheck dc = derivative_check(params, f2, td(rng));
    CAPTURE(trial);
    CHECK(dc.pass);
  }
}

TEST_CASE("sampled fibering shape follows the threshold classification") {
  const KirchhoffParams anchor = make_params(5, 3.0, 2.0, 0.125, 1.0);
  const FunctionalTriple f = make_triple(5, 3.0, 2.0, 6.0, 1.0);
  {
    const MonotonicityCheck mc = monotonicity_check(anchor, f);
    CHECK(mc.shape == FiberingShape::three_interval);
    CHECK(mc.pass);
    const DilationCriticalPoints cp = dilation_critical_points(anchor, f);
    CHECK(mc.t_min == cp.t[0]);
    CHECK(mc.t_max == cp.t[1]);
  }
  {
    // same triple, nonlocal coefficient pushed past the threshold
    const MonotonicityCheck mc = monotonicity_check(make_params(5, 3.0, 2.0, 1.0, 1.0), f);
    CHECK(mc.shape == FiberingShape::monotone_decreasing);
    CHECK(mc.pass);
  }
  {
    // coefficient tuned so the threshold ratio equals one exactly: the ratio
    // scales as b^{2/3} from its frozen value 0.37797... at b = 1/8
    const double b_t = 0.125 * std::pow(0.37797631496846195, -1.5);
    const MonotonicityCheck mc = monotonicity_check(make_params(5, 3.0, 2.0, b_t, 1.0), f);
    CHECK(mc.shape == FiberingShape::tangent_degenerate);
    CHECK(mc.pass);
  }
  {
    // negative dilation-normalized mass: no critical point regardless of b
    const FunctionalTriple flat = make_triple(5, 3.0, 1.0, 1.0, 1.0);
    const MonotonicityCheck mc = monotonicity_check(make_params(5, 3.0, 1.0, 1.0, 1.0), flat);
    CHECK(mc.shape == FiberingShape::monotone_decreasing);
    CHECK(mc.pass);
  }
  CHECK_THROWS_AS(monotonicity_check(make_params(4, 3.0, 1.0, 1.0, 1.0), f), error);

  CHECK(std::string(fibering_shape_name(FiberingShape::monotone_decreasing)) ==
        "MONOTONE_DECREASING");
  CHECK(std::string(fibering_shape_name(FiberingShape::three_interval)) == "THREE_INTERVAL");
  CHECK(std::string(fibering_shape_name(FiberingShape::tangent_degenerate)) ==
        "TANGENT_DEGENERATE");
}
