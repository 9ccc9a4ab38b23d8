#ifndef POLCAT_POLCAT_H_
#define POLCAT_POLCAT_H_

/* C interface to the polcat engine: exact superpositions of two-mode coherent
 * states for a pair of orthogonally polarized fields coupled to an atomic
 * ensemble, their conditioned evolution, observables, a truncated-Fock
 * brute-force oracle, and a mean-field validator of the adiabatic
 * elimination.
 *
 * Every function returns a polcat_status code; POLCAT_OK is 0. On failure the
 * thread-local message from polcat_last_error() describes the cause. Handles
 * are created by polcat_* constructors and released with the matching
 * *_free(); passing NULL to a *_free() is a no-op.
 */

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

/* Opaque handles */

typedef struct polcat_state_t polcat_state_t;       /* coherent superposition */
typedef struct polcat_branches_t polcat_branches_t; /* pre-conditioning joint branches */
typedef struct polcat_mf_traj_t polcat_mf_traj_t;   /* mean-field trajectory */

/* Status codes */

enum {
    POLCAT_OK = 0,
    POLCAT_ERR_INVALID_ARGUMENT = 1,
    POLCAT_ERR_DEGENERATE_STATE = 2,
    POLCAT_ERR_CUTOFF_TOO_SMALL = 3,
    POLCAT_ERR_UNSUPPORTED_BASIS = 4,
    POLCAT_ERR_STEP_TOO_LARGE = 5,
    POLCAT_ERR_NON_PHYSICAL = 6,
    POLCAT_ERR_NOT_STATIONARY = 7,
    POLCAT_ERR_NUMERIC = 8,
    POLCAT_ERR_INTERNAL = 9
};

enum { POLCAT_BASIS_CIRCULAR = 0, POLCAT_BASIS_LINEAR = 1 };
enum { POLCAT_AXIS_X = 0, POLCAT_AXIS_Y = 1 };
enum { POLCAT_PARITY_EVEN = 0, POLCAT_PARITY_ODD = 1 };
enum { POLCAT_MOMENT_A = 0, POLCAT_MOMENT_AA = 1, POLCAT_MOMENT_ADAG_A = 2 };
enum { POLCAT_PREP_MACRO = 0, POLCAT_PREP_PRODUCT = 1 };

const char* polcat_version(void);
const char* polcat_status_name(int status);
/* Message for the most recent failure on this thread; empty string if none. */
const char* polcat_last_error(void);

/* Dimensionless evolution frame: tau = |lambda2| t, ratio = lambda1/|lambda2|
 * in [0, 1), lambda2_sign in {-1, +1}. */
typedef struct polcat_frame {
    double tau;
    double ratio;
    int lambda2_sign;
} polcat_frame;

/* Atomic register preparation. kind POLCAT_PREP_MACRO uses `sign` as the
 * conditioning outcome; POLCAT_PREP_PRODUCT uses n_atoms (1..50). */
typedef struct polcat_prep {
    int kind;
    int sign;
    int n_atoms;
} polcat_prep;

/* States */

int polcat_state_coherent(int basis, double a0_re, double a0_im, double a1_re, double a1_im,
                          polcat_state_t** out);
int polcat_state_cat_y(double alpha_re, double alpha_im, int parity, polcat_state_t** out);
int polcat_state_entangled_coherent(double alpha_re, double alpha_im, int sign,
                                    polcat_state_t** out);
void polcat_state_free(polcat_state_t* s);

int polcat_state_basis(const polcat_state_t* s, int* basis);
int polcat_state_term_count(const polcat_state_t* s, int* count);
int polcat_state_term(const polcat_state_t* s, int index, double* coeff_re, double* coeff_im,
                      double* a0_re, double* a0_im, double* a1_re, double* a1_im);
int polcat_state_is_normalized(const polcat_state_t* s, int* flag);
int polcat_state_norm2(const polcat_state_t* s, double* out);
int polcat_state_normalize(const polcat_state_t* s, polcat_state_t** out);
int polcat_state_change_basis(const polcat_state_t* s, int target_basis, polcat_state_t** out);
/* <lhs|rhs>; both states must share a basis. */
int polcat_state_overlap(const polcat_state_t* lhs, const polcat_state_t* rhs, double* re,
                         double* im);
int polcat_state_moment(const polcat_state_t* s, int kind, int m, int n, double* re, double* im);

/* Dynamics */

int polcat_evolve_joint(const polcat_state_t* initial, polcat_prep prep, polcat_frame frame,
                        int weighted, polcat_branches_t** out);
void polcat_branches_free(polcat_branches_t* b);
int polcat_branches_count(const polcat_branches_t* b, int* count);
int polcat_branches_get(const polcat_branches_t* b, int index, int* atom_label, double* w_re,
                        double* w_im, double* a0_re, double* a0_im, double* a1_re, double* a1_im);
int polcat_condition(const polcat_branches_t* b, polcat_prep prep, polcat_state_t** out,
                     double* probability);
int polcat_norm_factors(double alpha_re, double alpha_im, double beta_re, double beta_im,
                        polcat_frame frame, double* n_plus, double* n_minus);

/* Observables (state must be normalized) */

int polcat_quadrature_variance(const polcat_state_t* s, int mode, int axis, double* out);
int polcat_inseparability(const polcat_state_t* s, double* out);
int polcat_linear_entropy(const polcat_state_t* s, int mode, double* out);
int polcat_squeezed_vacuum_fidelity(const polcat_state_t* s, int mode, double magnitude,
                                    double theta, double* out);

/* Truncated-Fock oracle: recomputes observables by dense number-basis algebra.
 * cutoff is the highest kept occupation per mode. */

int polcat_oracle_variance(const polcat_state_t* s, int mode, int axis, int cutoff, double* out);
int polcat_oracle_inseparability(const polcat_state_t* s, int cutoff, double* out);
int polcat_oracle_linear_entropy(const polcat_state_t* s, int mode, int cutoff, double* out);
int polcat_oracle_fidelity(const polcat_state_t* s, int mode, double magnitude, double theta,
                           int cutoff, double* out);

/* Mean-field validation of the adiabatic elimination */

typedef struct polcat_mf_params {
    double g, gamma, gamma_par, gamma_perp, delta; /* rad/s */
    double aplus_re, aplus_im, aminus_re, aminus_im;
    int vacuum_term; /* nonzero: include the symmetric-ordering exchange term */
} polcat_mf_params;

typedef struct polcat_mf_report {
    int coherence14_applicable, coherence23_applicable;
    double coherence14_residual, coherence23_residual;
    double population44_residual, population33_residual;
    double phase14_error;
    double max_relative_drift;
} polcat_mf_report;

/* lambda1, lambda2 from (g, gamma, delta). */
int polcat_derived_coupling(double g, double gamma, double delta, double* lambda1,
                            double* lambda2);
/* init[8] = {s11, s22, s33, s44, Re s14, Im s14, Re s23, Im s23}. */
int polcat_mf_integrate(polcat_mf_params params, const double init[8], double t_end, double dt,
                        polcat_mf_traj_t** out);
void polcat_mf_traj_free(polcat_mf_traj_t* traj);
int polcat_mf_traj_rows(const polcat_mf_traj_t* traj, int* rows);
/* row[9] = {t, s11, s22, s33, s44, Re s14, Im s14, Re s23, Im s23}. */
int polcat_mf_traj_row(const polcat_mf_traj_t* traj, int index, double row[9]);
int polcat_mf_stationary_check(const polcat_mf_traj_t* traj, polcat_mf_params params,
                               polcat_mf_report* out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* POLCAT_POLCAT_H_ */
