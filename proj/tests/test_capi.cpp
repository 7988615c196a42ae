#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include <json.hpp>

#include "kirchhoff.h"

using nlohmann::json;

namespace {

std::string take_string(char* s) {
  REQUIRE(s != nullptr);
  std::string out(s);
  kh_string_free(s);
  return out;
}

struct ProfileHandle {
  kh_profile* p = nullptr;
  ~ProfileHandle() { kh_profile_free(p); }
};

struct SetHandle {
  kh_solution_set* s = nullptr;
  ~SetHandle() { kh_solution_set_free(s); }
};

}  // namespace

TEST_CASE("options struct carries the documented defaults") {
  kh_options opts;
  kh_options_init(&opts);
  CHECK(opts.shoot_tol == 1e-12);
  CHECK(opts.ode_rel_tol == 1e-10);
  CHECK(opts.decay_floor == 1e-12);
  CHECK(opts.r_start == 1e-4);
  CHECK(opts.class_tol == 1e-8);
  kh_options_init(nullptr);  // must be a harmless no-op
  CHECK(std::strcmp(kh_version(), "1.0.0") == 0);
}

TEST_CASE("ground state solve through the C interface") {
  ProfileHandle h;
  REQUIRE(kh_ground_state(3, 4.0, 1.0, nullptr, &h.p) == KH_OK);
  REQUIRE(h.p != nullptr);
  CHECK(std::strlen(kh_last_error()) == 0);

  const size_t n = kh_profile_size(h.p);
  CHECK(n > 1000);

  int n_dim = 0;
  double p = 0.0, lambda = 0.0, beta = 0.0, r_max = 0.0, err = 0.0;
  REQUIRE(kh_profile_info(h.p, &n_dim, &p, &lambda, &beta, &r_max, &err) == KH_OK);
  CHECK(n_dim == 3);
  CHECK(p == 4.0);
  CHECK(lambda == 1.0);
  CHECK(beta == doctest::Approx(4.3373876810).epsilon(1e-8));
  CHECK(r_max > 5.0);
  CHECK(err > 0.0);
  CHECK(err < 1e-6);

  double A = 0.0, B = 0.0, C = 0.0;
  REQUIRE(kh_profile_functionals(h.p, &A, &B, &C) == KH_OK);
  CHECK(A > 0.0);
  CHECK(B > 0.0);
  CHECK(C > 0.0);

  double nehari = 1.0, poho = 1.0;
  REQUIRE(kh_profile_identities(h.p, &nehari, &poho) == KH_OK);
  CHECK(nehari <= 1e-6);
  CHECK(poho <= 1e-6);

  std::vector<double> r(n), u(n), du(n);
  REQUIRE(kh_profile_copy_data(h.p, r.data(), u.data(), du.data()) == KH_OK);
  CHECK(r[0] == 0.0);
  CHECK(u[0] == beta);
  CHECK(du[0] == 0.0);
  CHECK(r[n - 1] == r_max);
  for (size_t i = 1; i < n; i += n / 7) CHECK(r[i] > r[i - 1]);

  std::vector<double> u_only(n, -1.0);
  REQUIRE(kh_profile_copy_data(h.p, nullptr, u_only.data(), nullptr) == KH_OK);
  CHECK(u_only[0] == beta);
}

TEST_CASE("invalid specifications surface status codes and messages") {
  kh_profile* out = reinterpret_cast<kh_profile*>(0x1);
  CHECK(kh_ground_state(2, 3.0, 1.0, nullptr, &out) == KH_ERR_INVALID_ARGUMENT);
  CHECK(out == nullptr);
  CHECK(std::strstr(kh_last_error(), "DimensionTooLow") != nullptr);

  CHECK(kh_ground_state(3, 7.0, 1.0, nullptr, &out) == KH_ERR_INVALID_ARGUMENT);
  CHECK(std::strstr(kh_last_error(), "InvalidExponent") != nullptr);

  CHECK(kh_ground_state(3, 3.0, 1.0, nullptr, nullptr) == KH_ERR_INVALID_ARGUMENT);

  kh_options opts;
  kh_options_init(&opts);
  opts.shoot_tol = 1e-5;  // outside the accepted (0, 1e-6) band
  CHECK(kh_ground_state(3, 3.0, 1.0, &opts, &out) == KH_ERR_INVALID_ARGUMENT);

  CHECK(kh_profile_size(nullptr) == 0);
  CHECK(kh_profile_info(nullptr, nullptr, nullptr, nullptr, nullptr, nullptr, nullptr) ==
        KH_ERR_INVALID_ARGUMENT);
  kh_profile_free(nullptr);       // must be safe
  kh_solution_set_free(nullptr);  // must be safe
  kh_string_free(nullptr);        // must be safe
}

TEST_CASE("closed-form rescaling through the C interface") {
  ProfileHandle base;
  REQUIRE(kh_ground_state(3, 3.0, 1.0, nullptr, &base.p) == KH_OK);
  double beta1 = 0.0;
  REQUIRE(kh_profile_info(base.p, nullptr, nullptr, nullptr, &beta1, nullptr, nullptr) == KH_OK);

  ProfileHandle scaled;
  REQUIRE(kh_profile_rescale(base.p, 4.0, &scaled.p) == KH_OK);
  double lambda2 = 0.0, beta2 = 0.0;
  REQUIRE(kh_profile_info(scaled.p, nullptr, nullptr, &lambda2, &beta2, nullptr, nullptr) ==
          KH_OK);
  CHECK(lambda2 == 4.0);
  CHECK(beta2 == 4.0 * beta1);  // mu^{1/(p-2)} with p = 3, mu = 4: exact in binary

  kh_profile* out = nullptr;
  CHECK(kh_profile_rescale(base.p, -1.0, &out) == KH_ERR_INVALID_ARGUMENT);
  CHECK(out == nullptr);
}

TEST_CASE("gamma equation and critical coefficient through the C interface") {
  kh_gamma_roots gr;
  REQUIRE(kh_solve_gamma(5, 2.0, 0.25, 1.0, &gr) == KH_OK);
  CHECK(gr.count == 2);
  CHECK(gr.tangent == 0);
  CHECK(gr.roots[0] == doctest::Approx(0.3090169943749474).epsilon(1e-12));
  CHECK(gr.roots[1] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(gr.gamma_star == doctest::Approx(0.39685026299204987).epsilon(1e-12));
  CHECK(gr.h_min == doctest::Approx(0.94494078742115487).epsilon(1e-12));

  CHECK(kh_solve_gamma(2, 1.0, 1.0, 1.0, &gr) == KH_ERR_INVALID_ARGUMENT);
  CHECK(kh_solve_gamma(5, 1.0, 1.0, 1.0, nullptr) == KH_ERR_INVALID_ARGUMENT);

  double b_crit = 0.0;
  REQUIRE(kh_critical_b(4, 1.0, 2.0, &b_crit) == KH_OK);
  CHECK(b_crit == doctest::Approx(0.5).epsilon(1e-14));
  REQUIRE(kh_critical_b(6, 1.0, 2.0, &b_crit) == KH_OK);
  CHECK(b_crit == doctest::Approx(0.125).epsilon(1e-14));
  CHECK(kh_critical_b(3, 1.0, 2.0, &b_crit) == KH_ERR_INVALID_ARGUMENT);
  CHECK(std::strstr(kh_last_error(), "DimensionTooLow") != nullptr);
}

TEST_CASE("solution sets, verification and reports through the C interface") {
  ProfileHandle base;
  REQUIRE(kh_ground_state(3, 4.0, 1.0, nullptr, &base.p) == KH_OK);

  SetHandle set;
  REQUIRE(kh_build_solutions(base.p, 1.0, 0.5, 1.0, 1, &set.s) == KH_OK);
  REQUIRE(set.s != nullptr);
  CHECK(kh_solution_count(set.s) == 1);
  CHECK(std::strcmp(kh_solution_regime(set.s), "always") == 0);

  double gamma = 0.0, A = 0.0, B = 0.0, C = 0.0, energy = 0.0;
  const char* cls = nullptr;
  REQUIRE(kh_solution_info(set.s, 0, &gamma, &A, &B, &C, &energy, &cls) == KH_OK);
  CHECK(gamma > 0.0);
  CHECK(gamma < 1.0);
  CHECK(A > 0.0);
  CHECK(B > 0.0);
  CHECK(C > 0.0);
  CHECK(energy > 0.0);
  CHECK(std::strcmp(cls, "M_MINUS") == 0);
  CHECK(kh_solution_info(set.s, 1, &gamma, nullptr, nullptr, nullptr, nullptr, nullptr) ==
        KH_ERR_INVALID_ARGUMENT);

  ProfileHandle sol;
  REQUIRE(kh_solution_profile(set.s, 0, &sol.p) == KH_OK);
  CHECK(kh_profile_size(sol.p) > 1000);

  int pass = 0;
  char* out = nullptr;
  REQUIRE(kh_verify_report_json(sol.p, 1.0, 0.5, 1.0, &pass, &out) == KH_OK);
  CHECK(pass == 1);
  const json verify = json::parse(take_string(out));
  CHECK(verify["pass"] == true);
  CHECK(verify["checks"]["nehari"]["pass"] == true);
  CHECK(verify["checks"]["ode_residual_norm"]["value"].get<double>() <= 1e-5);

  REQUIRE(kh_solution_report_json(set.s, &out) == KH_OK);
  const json sols = json::parse(take_string(out));
  CHECK(sols["regime"] == "always");
  REQUIRE(sols["solutions"].size() == 1);
  CHECK(sols["solutions"][0]["class"] == "M_MINUS");
  CHECK(sols["solutions"][0]["gamma"].get<double>() == gamma);

  REQUIRE(kh_existence_report_json(base.p, 1.0, 0.5, 1.0, &out) == KH_OK);
  const json exist = json::parse(take_string(out));
  CHECK(exist["regime"] == "always");
  CHECK(exist["roots"]["count"] == 1);

  SetHandle bare;
  REQUIRE(kh_build_solutions(base.p, 1.0, 0.5, 1.0, 0, &bare.s) == KH_OK);
  kh_profile* none = nullptr;
  CHECK(kh_solution_profile(bare.s, 0, &none) == KH_ERR_INVALID_ARGUMENT);
  CHECK(none == nullptr);
}

TEST_CASE("profile and classification JSON reports parse and repeat verbatim") {
  ProfileHandle h;
  REQUIRE(kh_ground_state(3, 4.0, 1.0, nullptr, &h.p) == KH_OK);

  char* out = nullptr;
  REQUIRE(kh_profile_report_json(h.p, &out) == KH_OK);
  const std::string first = take_string(out);
  const json j = json::parse(first);
  CHECK(j["N"] == 3);
  CHECK(j["p"] == 4.0);
  CHECK(j["nodes"].get<size_t>() == kh_profile_size(h.p));
  CHECK(j["identities"]["nehari_rel"].get<double>() <= 1e-6);
  CHECK(j["shooting"]["bisection_steps"].get<int>() > 10);

  REQUIRE(kh_profile_report_json(h.p, &out) == KH_OK);
  CHECK(take_string(out) == first);

  REQUIRE(kh_classify_report_json(h.p, 1.0, 0.5, 1.0, 1.0, &out) == KH_OK);
  const json cj = json::parse(take_string(out));
  CHECK(cj["class"] == "OFF_MANIFOLD");
  CHECK(cj["dilation_critical_points"]["count"] == 1);
  CHECK(cj["dilation_critical_points"]["classes"][0] == "M_MINUS");
  CHECK(cj["amplitude_critical_points"].contains("count"));
}

TEST_CASE("CSV persistence through the C interface") {
  ProfileHandle h;
  REQUIRE(kh_ground_state(3, 3.0, 1.0, nullptr, &h.p) == KH_OK);
  double beta = 0.0;
  REQUIRE(kh_profile_info(h.p, nullptr, nullptr, nullptr, &beta, nullptr, nullptr) == KH_OK);

  const char* path = "capi_roundtrip_profile.csv";
  REQUIRE(kh_profile_write_csv(h.p, path) == KH_OK);

  ProfileHandle back;
  REQUIRE(kh_profile_read_csv(path, &back.p) == KH_OK);
  CHECK(kh_profile_size(back.p) == kh_profile_size(h.p));
  double beta_back = 0.0;
  REQUIRE(kh_profile_info(back.p, nullptr, nullptr, nullptr, &beta_back, nullptr, nullptr) ==
          KH_OK);
  CHECK(beta_back == beta);
  std::remove(path);

  kh_profile* none = nullptr;
  CHECK(kh_profile_read_csv("no_such_file_anywhere.csv", &none) == KH_ERR_IO);
  CHECK(std::strstr(kh_last_error(), "IoError") != nullptr);
  CHECK(kh_profile_write_csv(h.p, "/nonexistent/dir/x.csv") == KH_ERR_IO);
}
