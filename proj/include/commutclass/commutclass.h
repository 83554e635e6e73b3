/*
 * commutclass - C API for the Gamow/Krein resonance algebra and the
 * energy-kernel scattering algebra.
 *
 * All functions return a status code (CC_OK on success) unless documented
 * otherwise. On failure, cc_last_error() returns a thread-local message
 * naming the offending field. Objects returned through out-parameters are
 * owned by the caller and released with the matching _destroy function.
 */
#ifndef COMMUTCLASS_H
#define COMMUTCLASS_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define COMMUTCLASS_API __declspec(dllexport)
#else
#define COMMUTCLASS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

enum cc_status {
    CC_OK = 0,
    CC_ERR_INVALID = 1,  /* contract violation; message names the field */
    CC_ERR_PARSE = 2,    /* malformed expression text */
    CC_ERR_EVAL = 3,     /* expression produced a non-finite value */
    CC_ERR_INTERNAL = 4
};

enum cc_family {
    CC_FAMILY_DECAYING = 0,
    CC_FAMILY_GROWING = 1,
    CC_FAMILY_FULL = 2,
    CC_FAMILY_ASYMMETRIC = 3
};

enum cc_order {
    CC_ORDER_EVOLVE_THEN_COMMUTE = 0,
    CC_ORDER_COMMUTE_THEN_EVOLVE = 1
};

enum cc_tag { CC_TAG_FREE = 0, CC_TAG_IN = 1, CC_TAG_OUT = 2 };

typedef struct cc_complex {
    double re;
    double im;
} cc_complex;

typedef struct cc_resonances cc_resonances;
typedef struct cc_gamow_scan cc_gamow_scan;
typedef struct cc_grid cc_grid;
typedef struct cc_expr cc_expr;
typedef struct cc_kernel cc_kernel;
typedef struct cc_functional cc_functional;
typedef struct cc_curve cc_curve;
typedef struct cc_selfcheck cc_selfcheck;

/* Thread-local message for the most recent failure on this thread. */
COMMUTCLASS_API const char* cc_last_error(void);

COMMUTCLASS_API const char* cc_version(void);

/* Caps worker threads for sweeps; 0 restores the hardware default. */
COMMUTCLASS_API void cc_set_max_threads(unsigned n);

/* --- resonances -------------------------------------------------------- */

COMMUTCLASS_API int cc_resonances_create(const double* e_r, const double* gamma, size_t count,
                                         cc_resonances** out);
COMMUTCLASS_API void cc_resonances_destroy(cc_resonances* res);
COMMUTCLASS_API size_t cc_resonances_count(const cc_resonances* res);

/* Survival probability of resonance j (1-based) at time t >= 0. */
COMMUTCLASS_API int cc_survival_probability(const cc_resonances* res, size_t j, int family,
                                            double t, double* out);

/* --- commutator decay scans on the Gamow algebra ------------------------ */

/*
 * Draws two dense random operators from the seed, evolves them in the given
 * family, and records the commutator max-norm over the time sweep.
 */
COMMUTCLASS_API int cc_gamow_scan_run(const cc_resonances* res, int family, int order,
                                      const double* times, size_t count, uint64_t seed,
                                      cc_gamow_scan** out);
COMMUTCLASS_API void cc_gamow_scan_destroy(cc_gamow_scan* scan);
COMMUTCLASS_API size_t cc_gamow_scan_count(const cc_gamow_scan* scan);
COMMUTCLASS_API int cc_gamow_scan_point(const cc_gamow_scan* scan, size_t index, double* t,
                                        double* norm, double* log_norm);
/* defined = 0 when the commutator was identically zero over the sweep. */
COMMUTCLASS_API int cc_gamow_scan_fitted_rate(const cc_gamow_scan* scan, int* defined,
                                              double* rate);

/* --- time reversal ------------------------------------------------------ */

typedef struct cc_invariance_report {
    cc_complex lhs;          /* (psi|H|psi) */
    cc_complex rhs;          /* (psi|THT|psi) */
    cc_complex gap;          /* lhs - rhs */
    cc_complex bra_d_psi;    /* (psi^D|psi) */
    cc_complex psi_ket_d;    /* (psi|psi^D) */
    cc_complex bra_d_t_psi;  /* (psi^D|T|psi) */
    cc_complex psi_t_ket_d;  /* (psi|T|psi^D) */
} cc_invariance_report;

COMMUTCLASS_API int cc_invariance_gap(cc_complex a, cc_complex b, double e_r, double gamma,
                                      cc_invariance_report* out);

/* Max deviation of T|psi_i^D) = |psi_i^G) and back over all blocks of an
 * N-resonance system. */
COMMUTCLASS_API int cc_time_reversal_swap_error(size_t n, double* max_error);

/* --- expressions -------------------------------------------------------- */

COMMUTCLASS_API int cc_expr_parse(const char* text, cc_expr** out);
COMMUTCLASS_API void cc_expr_destroy(cc_expr* expr);
COMMUTCLASS_API int cc_expr_eval(const cc_expr* expr, double e, double ep, cc_complex* out);
COMMUTCLASS_API int cc_expr_uses_ep(const cc_expr* expr, int* out);
/* Canonical form. Returns the required length through needed; copies at most
 * cap bytes (including the terminator) into buf when buf is non-null. */
COMMUTCLASS_API int cc_expr_print(const cc_expr* expr, char* buf, size_t cap, size_t* needed);

/* --- energy grid and kernels -------------------------------------------- */

COMMUTCLASS_API int cc_grid_create(double e_max, size_t cells, cc_grid** out);
COMMUTCLASS_API void cc_grid_destroy(cc_grid* grid);
COMMUTCLASS_API int cc_grid_nyquist_tmax(const cc_grid* grid, double* out);
COMMUTCLASS_API size_t cc_grid_cells(const cc_grid* grid);
COMMUTCLASS_API double cc_grid_e_max(const cc_grid* grid);

/* diag/offdiag are expression strings; either may be NULL for zero. */
COMMUTCLASS_API int cc_kernel_from_exprs(const cc_grid* grid, const char* diag,
                                         const char* offdiag, int tag, cc_kernel** out);
/* d has length cells; k is row-major cells*cells; either may be NULL. */
COMMUTCLASS_API int cc_kernel_create(const cc_grid* grid, int tag, const cc_complex* d,
                                     const cc_complex* k, cc_kernel** out);
COMMUTCLASS_API void cc_kernel_destroy(cc_kernel* kernel);
COMMUTCLASS_API int cc_kernel_tag(const cc_kernel* kernel, int* out);
COMMUTCLASS_API size_t cc_kernel_cells(const cc_kernel* kernel);
COMMUTCLASS_API double cc_kernel_e_max(const cc_kernel* kernel);
/* Copies the diagonal (length cells) and row-major kernel (cells*cells). */
COMMUTCLASS_API int cc_kernel_data(const cc_kernel* kernel, cc_complex* d, cc_complex* k);
COMMUTCLASS_API int cc_kernel_retag(const cc_kernel* kernel, int tag, cc_kernel** out);
COMMUTCLASS_API int cc_kernel_weak_limit(const cc_kernel* kernel, cc_kernel** out);
COMMUTCLASS_API int cc_kernel_commutator(const cc_kernel* a, const cc_kernel* b, cc_kernel** out);
COMMUTCLASS_API int cc_kernel_evolve(const cc_kernel* kernel, double t, int allow_aliasing,
                                     cc_kernel** out);
COMMUTCLASS_API int cc_kernel_is_observable(const cc_kernel* kernel, int* out);

COMMUTCLASS_API int cc_functional_from_exprs(const cc_grid* grid, const char* diag,
                                             const char* offdiag, int tag, cc_functional** out);
COMMUTCLASS_API int cc_functional_create(const cc_grid* grid, int tag, const cc_complex* d,
                                         const cc_complex* k, cc_functional** out);
COMMUTCLASS_API void cc_functional_destroy(cc_functional* rho);
COMMUTCLASS_API int cc_functional_data(const cc_functional* rho, cc_complex* d, cc_complex* k);
COMMUTCLASS_API int cc_functional_retag(const cc_functional* rho, int tag, cc_functional** out);

COMMUTCLASS_API int cc_pair(const cc_functional* rho, const cc_kernel* kernel, double t,
                            cc_complex* out);

/* value(t) = pair(rho, [O1(t), O2(t)]) over the sweep. */
COMMUTCLASS_API int cc_decay_curve_run(const cc_functional* rho, const cc_kernel* o1,
                                       const cc_kernel* o2, const double* times, size_t count,
                                       int allow_aliasing, cc_curve** out);
COMMUTCLASS_API void cc_curve_destroy(cc_curve* curve);
COMMUTCLASS_API size_t cc_curve_count(const cc_curve* curve);
COMMUTCLASS_API int cc_curve_point(const cc_curve* curve, size_t index, double* t,
                                   cc_complex* value, double* magnitude);

/* --- invariant suite ----------------------------------------------------- */

/*
 * Runs the registered invariants with draws fixed by the seed. break_name
 * (may be NULL) artificially breaks one named invariant; this is the hook
 * used to verify that failures are detected and reported.
 */
COMMUTCLASS_API int cc_selfcheck_run(uint64_t seed, const char* break_name, cc_selfcheck** out);
COMMUTCLASS_API void cc_selfcheck_destroy(cc_selfcheck* report);
COMMUTCLASS_API size_t cc_selfcheck_count(const cc_selfcheck* report);
COMMUTCLASS_API int cc_selfcheck_item(const cc_selfcheck* report, size_t index, const char** name,
                                      int* passed, double* deviation, double* tolerance);
COMMUTCLASS_API int cc_selfcheck_passed(const cc_selfcheck* report, int* out);

#ifdef __cplusplus
}
#endif

#endif /* COMMUTCLASS_H */
