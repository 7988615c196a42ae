/*
 * C interface to the Kirchhoff ground-state library.
 *
 * The library constructs positive radial solutions of
 *   -(a + b ||grad u||^2) Lap(u) + lambda u = |u|^{p-2} u   on R^N
 * (N >= 3, 2 < p < 2N/(N-2), a, b, lambda > 0) from the local ground state
 * U_lambda of the b = 0 equation; u = U_lambda(gamma .) solves the full
 * equation exactly when a gamma^2 + b ||grad U_lambda||^2 gamma^{4-N} = 1.
 *
 * All functions return kh_status; kh_last_error() describes the most recent
 * failure on the calling thread.  Objects returned through out-parameters are
 * owned by the caller and released with the matching *_free function.
 */

#ifndef KIRCHHOFF_H
#define KIRCHHOFF_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum kh_status {
  KH_OK = 0,
  KH_ERR_INVALID_ARGUMENT = 1,
  KH_ERR_NO_CONVERGENCE = 2,
  KH_ERR_IO = 3,
  KH_ERR_UNKNOWN = 4
} kh_status;

typedef struct kh_profile kh_profile;
typedef struct kh_solution_set kh_solution_set;

typedef struct kh_options {
  double shoot_tol;   /* relative width target of the shooting bracket (1e-12) */
  double ode_rel_tol; /* integrator relative tolerance (1e-10) */
  double decay_floor; /* the tail is continued down to u = this value (1e-12) */
  double r_start;     /* series-to-integrator handoff radius (1e-4) */
  double class_tol;   /* dead band of the manifold classification (1e-8) */
} kh_options;

/* Fills opts with the defaults listed above. */
void kh_options_init(kh_options* opts);

/* Message for the last failing call on this thread; empty string if none. */
const char* kh_last_error(void);

const char* kh_version(void);

/* --- local ground state ------------------------------------------------- */

/* Solves the b = 0 equation by radial shooting.  opts may be NULL. */
kh_status kh_ground_state(int n_dim, double p, double lambda, const kh_options* opts,
                          kh_profile** out);

/* Closed-form rescaling of a profile to another frequency. */
kh_status kh_profile_rescale(const kh_profile* base, double lambda_new, kh_profile** out);

void kh_profile_free(kh_profile* profile);

/* Number of radial grid nodes. */
size_t kh_profile_size(const kh_profile* profile);

/* Copies grid columns into caller buffers of length kh_profile_size(); any of
 * r, u, du may be NULL to skip that column. */
kh_status kh_profile_copy_data(const kh_profile* profile, double* r, double* u, double* du);

/* Scalar metadata; every out-parameter may be NULL. */
kh_status kh_profile_info(const kh_profile* profile, int* n_dim, double* p, double* lambda,
                          double* beta, double* r_max, double* error_estimate);

/* A = ||grad u||^2, B = ||u||_p^p, C = ||u||^2 as accumulated alongside the
 * integration (not a re-quadrature of the grid). */
kh_status kh_profile_functionals(const kh_profile* profile, double* A, double* B, double* C);

/* Relative residuals of the two local integral identities, recomputed by
 * quadrature of the stored grid. */
kh_status kh_profile_identities(const kh_profile* profile, double* nehari_rel,
                                double* pohozaev_rel);

/* Path "-" means stdout / stdin. */
kh_status kh_profile_write_csv(const kh_profile* profile, const char* path);
kh_status kh_profile_read_csv(const char* path, kh_profile** out);

/* --- the gamma equation and the solution set ----------------------------- */

typedef struct kh_gamma_roots {
  int count;         /* number of roots in (0, inf): 0, 1 or 2 */
  int tangent;       /* 1 when the single root is the degenerate tangent root */
  double roots[2];   /* ascending; unused entries are 0 */
  double gamma_star; /* argmin of the map (N >= 5; otherwise 0) */
  double h_min;      /* min of the map (N >= 5; N = 4: the limit value b*A) */
} kh_gamma_roots;

/* Roots of a g^2 + b grad_mass g^{4-N} = 1, where grad_mass must be
 * ||grad U_lambda||^2 of the profile at the intended lambda. */
kh_status kh_solve_gamma(int n_dim, double a, double b, double grad_mass, kh_gamma_roots* out);

/* The b at which the root count of the gamma equation changes for fixed a and
 * gradient mass (N >= 4 only; for N = 3 the count is always 1). */
kh_status kh_critical_b(int n_dim, double a, double grad_mass, double* out);

/* Rescales base to lambda, solves the gamma equation and dilates.  Dimensions
 * and exponent come from the base profile.  with_profiles != 0 materializes
 * the solution grids (otherwise only functionals/energies are stored). */
kh_status kh_build_solutions(const kh_profile* base, double a, double b, double lambda,
                             int with_profiles, kh_solution_set** out);

void kh_solution_set_free(kh_solution_set* set);

size_t kh_solution_count(const kh_solution_set* set);

/* One of: "always", "below_threshold", "tangent", "above_threshold". */
const char* kh_solution_regime(const kh_solution_set* set);

/* Scalars of the index-th solution (ascending gamma).  Out-parameters may be
 * NULL; cls receives a pointer to a static class name such as "M_MINUS". */
kh_status kh_solution_info(const kh_solution_set* set, size_t index, double* gamma, double* A,
                           double* B, double* C, double* energy, const char** cls);

/* Copies the index-th solution profile (requires with_profiles at build). */
kh_status kh_solution_profile(const kh_solution_set* set, size_t index, kh_profile** out);

/* --- JSON reports; free the returned string with kh_string_free ---------- */

/* Grid, functionals, identity residuals and shooting diagnostics. */
kh_status kh_profile_report_json(const kh_profile* profile, char** out);

/* Fibering values, manifold class and critical points of the profile's
 * functional triple dilated by t, under the parameters (a, b, lambda). */
kh_status kh_classify_report_json(const kh_profile* profile, double a, double b, double lambda,
                                  double t, char** out);

kh_status kh_solution_report_json(const kh_solution_set* set, char** out);

kh_status kh_existence_report_json(const kh_profile* base, double a, double b, double lambda,
                                   char** out);

/* Runs the certification battery on a claimed solution profile for the
 * parameters (a, b, lambda); *pass (nullable) receives the overall verdict. */
kh_status kh_verify_report_json(const kh_profile* profile, double a, double b, double lambda,
                                int* pass, char** out);

void kh_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* KIRCHHOFF_H */
