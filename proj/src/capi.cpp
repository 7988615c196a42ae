#include "kirchhoff.h"

#include <cstring>
#include <exception>
#include <memory>
#include <new>
#include <string>
#include <utility>

#include "kirchhoff/ground_state.hpp"
#include "kirchhoff/profile_io.hpp"
#include "kirchhoff/reports.hpp"
#include "kirchhoff/scaling.hpp"
#include "kirchhoff/verification.hpp"

struct kh_profile {
  kirchhoff::RadialProfile impl;
};

struct kh_solution_set {
  kirchhoff::SolutionSet impl;
};

namespace {

thread_local std::string g_last_error;

kh_status status_of(kirchhoff::errc code) {
  using kirchhoff::errc;
  switch (code) {
    case errc::no_bracket:
    case errc::non_convergence:
      return KH_ERR_NO_CONVERGENCE;
    case errc::io_error:
    case errc::parse_error:
      return KH_ERR_IO;
    default:
      return KH_ERR_INVALID_ARGUMENT;
  }
}

template <class Fn>
kh_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return KH_OK;
  } catch (const kirchhoff::error& e) {
    g_last_error = std::string(kirchhoff::errc_name(e.code())) + ": " + e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return KH_ERR_UNKNOWN;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return KH_ERR_UNKNOWN;
  } catch (...) {
    g_last_error = "unknown failure";
    return KH_ERR_UNKNOWN;
  }
}

kh_status require(bool ok, const char* message) {
  if (ok) return KH_OK;
  g_last_error = message;
  return KH_ERR_INVALID_ARGUMENT;
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

kirchhoff::GroundStateSpec spec_from(int n_dim, double p, double lambda,
                                     const kh_options* opts) {
  kirchhoff::GroundStateSpec spec;
  spec.n_dim = n_dim;
  spec.p = p;
  spec.lambda = lambda;
  if (opts) {
    spec.shoot_tol = opts->shoot_tol;
    spec.ode_rel_tol = opts->ode_rel_tol;
    spec.decay_floor = opts->decay_floor;
    spec.r_start = opts->r_start;
  }
  return spec;
}

}  // namespace

extern "C" {

void kh_options_init(kh_options* opts) {
  if (!opts) return;
  const kirchhoff::GroundStateSpec defaults;
  opts->shoot_tol = defaults.shoot_tol;
  opts->ode_rel_tol = defaults.ode_rel_tol;
  opts->decay_floor = defaults.decay_floor;
  opts->r_start = defaults.r_start;
  opts->class_tol = kirchhoff::kDefaultClassTol;
}

const char* kh_last_error(void) { return g_last_error.c_str(); }

const char* kh_version(void) { return "1.0.0"; }

kh_status kh_ground_state(int n_dim, double p, double lambda, const kh_options* opts,
                          kh_profile** out) {
  if (const kh_status s = require(out != nullptr, "out pointer is null")) return s;
  *out = nullptr;
  return guarded([&] {
    auto handle = std::make_unique<kh_profile>();
    handle->impl = kirchhoff::solve_ground_state(spec_from(n_dim, p, lambda, opts));
    *out = handle.release();
  });
}

kh_status kh_profile_rescale(const kh_profile* base, double lambda_new, kh_profile** out) {
  if (const kh_status s = require(base && out, "null handle or out pointer")) return s;
  *out = nullptr;
  return guarded([&] {
    auto handle = std::make_unique<kh_profile>();
    handle->impl = kirchhoff::rescale_profile(base->impl, lambda_new);
    *out = handle.release();
  });
}

void kh_profile_free(kh_profile* profile) { delete profile; }

size_t kh_profile_size(const kh_profile* profile) {
  return profile ? profile->impl.size() : 0;
}

kh_status kh_profile_copy_data(const kh_profile* profile, double* r, double* u, double* du) {
  if (const kh_status s = require(profile != nullptr, "null profile handle")) return s;
  const auto& impl = profile->impl;
  const size_t n = impl.size();
  if (r) std::memcpy(r, impl.r.data(), n * sizeof(double));
  if (u) std::memcpy(u, impl.u.data(), n * sizeof(double));
  if (du) std::memcpy(du, impl.du.data(), n * sizeof(double));
  g_last_error.clear();
  return KH_OK;
}

kh_status kh_profile_info(const kh_profile* profile, int* n_dim, double* p, double* lambda,
                          double* beta, double* r_max, double* error_estimate) {
  if (const kh_status s = require(profile != nullptr, "null profile handle")) return s;
  const auto& impl = profile->impl;
  if (n_dim) *n_dim = impl.n_dim;
  if (p) *p = impl.p;
  if (lambda) *lambda = impl.lambda;
  if (beta) *beta = impl.beta;
  if (r_max) *r_max = impl.r_max();
  if (error_estimate) *error_estimate = impl.error_estimate;
  g_last_error.clear();
  return KH_OK;
}

kh_status kh_profile_functionals(const kh_profile* profile, double* A, double* B, double* C) {
  if (const kh_status s = require(profile != nullptr, "null profile handle")) return s;
  if (A) *A = profile->impl.functionals.A;
  if (B) *B = profile->impl.functionals.B;
  if (C) *C = profile->impl.functionals.C;
  g_last_error.clear();
  return KH_OK;
}

kh_status kh_profile_identities(const kh_profile* profile, double* nehari_rel,
                                double* pohozaev_rel) {
  if (const kh_status s = require(profile != nullptr, "null profile handle")) return s;
  return guarded([&] {
    const auto rep = kirchhoff::local_identity_report(profile->impl);
    if (nehari_rel) *nehari_rel = rep.nehari_rel;
    if (pohozaev_rel) *pohozaev_rel = rep.pohozaev_rel;
  });
}

kh_status kh_profile_write_csv(const kh_profile* profile, const char* path) {
  if (const kh_status s = require(profile && path, "null profile handle or path")) return s;
  return guarded([&] { kirchhoff::write_profile_csv(profile->impl, std::string(path)); });
}

kh_status kh_profile_read_csv(const char* path, kh_profile** out) {
  if (const kh_status s = require(path && out, "null path or out pointer")) return s;
  *out = nullptr;
  return guarded([&] {
    auto handle = std::make_unique<kh_profile>();
    handle->impl = kirchhoff::read_profile_csv(std::string(path));
    *out = handle.release();
  });
}

kh_status kh_solve_gamma(int n_dim, double a, double b, double grad_mass, kh_gamma_roots* out) {
  if (const kh_status s = require(out != nullptr, "out pointer is null")) return s;
  return guarded([&] {
    const auto roots = kirchhoff::solve_gamma(n_dim, a, b, grad_mass);
    out->count = roots.count;
    out->tangent = roots.tangent ? 1 : 0;
    out->roots[0] = roots.roots[0];
    out->roots[1] = roots.roots[1];
    out->gamma_star = roots.gamma_star;
    out->h_min = roots.h_min;
  });
}

kh_status kh_critical_b(int n_dim, double a, double grad_mass, double* out) {
  if (const kh_status s = require(out != nullptr, "out pointer is null")) return s;
  return guarded([&] { *out = kirchhoff::critical_b(n_dim, a, grad_mass); });
}

kh_status kh_build_solutions(const kh_profile* base, double a, double b, double lambda,
                             int with_profiles, kh_solution_set** out) {
  if (const kh_status s = require(base && out, "null handle or out pointer")) return s;
  *out = nullptr;
  return guarded([&] {
    kirchhoff::KirchhoffParams params{base->impl.n_dim, base->impl.p, a, b, lambda};
    auto handle = std::make_unique<kh_solution_set>();
    handle->impl = kirchhoff::build_solutions(base->impl, params, with_profiles != 0);
    *out = handle.release();
  });
}

void kh_solution_set_free(kh_solution_set* set) { delete set; }

size_t kh_solution_count(const kh_solution_set* set) {
  return set ? set->impl.solutions.size() : 0;
}

const char* kh_solution_regime(const kh_solution_set* set) {
  if (!set) return "";
  return kirchhoff::existence_regime_name(set->impl.report.regime);
}

kh_status kh_solution_info(const kh_solution_set* set, size_t index, double* gamma, double* A,
                           double* B, double* C, double* energy, const char** cls) {
  if (const kh_status s = require(set != nullptr, "null solution set handle")) return s;
  if (const kh_status s = require(index < set->impl.solutions.size(), "solution index out of range"))
    return s;
  const auto& sol = set->impl.solutions[index];
  if (gamma) *gamma = sol.gamma;
  if (A) *A = sol.functionals.A;
  if (B) *B = sol.functionals.B;
  if (C) *C = sol.functionals.C;
  if (energy) *energy = sol.energy;
  if (cls) *cls = kirchhoff::manifold_class_name(sol.cls);
  g_last_error.clear();
  return KH_OK;
}

kh_status kh_solution_profile(const kh_solution_set* set, size_t index, kh_profile** out) {
  if (const kh_status s = require(set && out, "null handle or out pointer")) return s;
  *out = nullptr;
  if (const kh_status s = require(index < set->impl.solutions.size(), "solution index out of range"))
    return s;
  const auto& sol = set->impl.solutions[index];
  if (const kh_status s =
          require(sol.has_profile, "solution set was built without materialized profiles"))
    return s;
  return guarded([&] {
    auto handle = std::make_unique<kh_profile>();
    handle->impl = sol.profile;
    *out = handle.release();
  });
}

kh_status kh_profile_report_json(const kh_profile* profile, char** out) {
  if (const kh_status s = require(profile && out, "null handle or out pointer")) return s;
  *out = nullptr;
  return guarded([&] { *out = dup_string(kirchhoff::ground_state_report_json(profile->impl)); });
}

kh_status kh_classify_report_json(const kh_profile* profile, double a, double b, double lambda,
                                  double t, char** out) {
  if (const kh_status s = require(profile && out, "null handle or out pointer")) return s;
  *out = nullptr;
  return guarded([&] {
    kirchhoff::KirchhoffParams params{profile->impl.n_dim, profile->impl.p, a, b, lambda};
    params.validate();
    const auto f = kirchhoff::dilate_triple(profile->impl.functionals, t);
    *out = dup_string(kirchhoff::classify_report_json(params, f));
  });
}

kh_status kh_solution_report_json(const kh_solution_set* set, char** out) {
  if (const kh_status s = require(set && out, "null handle or out pointer")) return s;
  *out = nullptr;
  return guarded([&] { *out = dup_string(kirchhoff::solution_set_json(set->impl)); });
}

kh_status kh_existence_report_json(const kh_profile* base, double a, double b, double lambda,
                                   char** out) {
  if (const kh_status s = require(base && out, "null handle or out pointer")) return s;
  *out = nullptr;
  return guarded([&] {
    kirchhoff::KirchhoffParams params{base->impl.n_dim, base->impl.p, a, b, lambda};
    const auto u_lambda = kirchhoff::rescale_profile(base->impl, lambda);
    const auto report = kirchhoff::classify_existence(params, u_lambda.functionals.A);
    *out = dup_string(kirchhoff::existence_report_json(report));
  });
}

kh_status kh_verify_report_json(const kh_profile* profile, double a, double b, double lambda,
                                int* pass, char** out) {
  if (const kh_status s = require(profile && out, "null handle or out pointer")) return s;
  *out = nullptr;
  return guarded([&] {
    kirchhoff::KirchhoffParams params{profile->impl.n_dim, profile->impl.p, a, b, lambda};
    const auto checks = kirchhoff::identity_suite(profile->impl, params);
    bool all = true;
    for (const auto& c : checks) all = all && c.pass;
    if (pass) *pass = all ? 1 : 0;
    *out = dup_string(kirchhoff::verify_report_json(params, checks));
  });
}

void kh_string_free(char* s) { delete[] s; }

}  // extern "C"
