/* C interface to the converse library: rigorous non-existence proofs for
 * invariant tori of 4-D symplectic maps, and the (non-rigorous) periodic
 * orbit lab. Every function returns a cv_status; results go through out
 * pointers. After an error, cv_last_error() holds a message for this thread. */
#ifndef CONVERSE_CONVERSE_H
#define CONVERSE_CONVERSE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define CV_API __declspec(dllexport)
#elif defined(__GNUC__)
#define CV_API __attribute__((visibility("default")))
#else
#define CV_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cv_status {
    CV_OK = 0,
    CV_ERR_DIVISION_BY_ZERO = 1,
    CV_ERR_DOMAIN = 2,
    CV_ERR_PRECISION_LOSS = 3,
    CV_ERR_SINGULAR = 4,
    CV_ERR_PARSE = 5,
    CV_ERR_IO = 6,
    CV_ERR_INVALID_ARGUMENT = 7,
    CV_ERR_NULL_POINTER = 8,
    CV_ERR_INTERNAL = 9
} cv_status;

CV_API const char* cv_status_name(cv_status s);
/* message of the last failed call on this thread ("" if none) */
CV_API const char* cv_last_error(void);
CV_API const char* cv_version(void);
/* strings handed out by the library (cv_*_text, cv_spiral_mean) */
CV_API void cv_free_string(char* s);

/* ---- proofs ------------------------------------------------------------ */

typedef struct cv_proof cv_proof;

typedef enum cv_start { CV_START_HERMAN = 0, CV_START_LEAST_LAMBDA = 1 } cv_start;
typedef enum cv_outcome { CV_PROVEN = 0, CV_DEPTH_EXCEEDED = 1, CV_HALTED = 2 } cv_outcome;
typedef enum cv_tile_status { CV_TILE_NO_TORI = 0, CV_TILE_SYMMETRIC = 1, CV_TILE_MAYBE = 2 } cv_tile_status;

typedef struct cv_proof_config {
    long dp;               /* decimal places, default 35 */
    long safety_dp;        /* extra working digits, default 5 */
    int max_depth;         /* cuts per prism, default 30 */
    int stubborn;          /* nonzero: give up on a prism and carry on */
    int verbose;           /* nonzero: a line on stderr per success */
    int budget;            /* map steps per prism, default 25 */
    double min_angle_deg;  /* column-rotor angle threshold, default 27 */
    cv_start start;
    int backup_every;      /* prisms between backup writes, default 20 */
    long halt_after;       /* stop after this many prisms; < 0 never */
    const char* graphics;  /* NULL, "" or "off": none; .ps/.eps PostScript, else SVG */
    const char* backup;    /* NULL or "": none */
} cv_proof_config;

typedef struct cv_proof_stats {
    long quick, semi, rigorous, successes, symmetric;
    int deepest, longest_semi, longest_success;
    long by_trace, by_lambda;
    long winner[4]; /* budget cap, trace, max lambda, min lambda */
    double seconds;
} cv_proof_stats;

typedef struct cv_tile {
    double v0_lo, v0_hi, v1_lo, v1_hi;
    cv_tile_status status;
} cv_tile;

CV_API void cv_proof_config_default(cv_proof_config* cfg);
/* input_text: the six-line input file plus comments */
CV_API cv_status cv_proof_create(const char* input_text, const cv_proof_config* cfg, cv_proof** out);
/* everything but the paths and halt_after comes from the backup file */
CV_API cv_status cv_proof_restore(const char* backup_path, const char* new_backup, const char* graphics,
                                  long halt_after, cv_proof** out);
CV_API cv_status cv_proof_run(cv_proof* p, cv_outcome* outcome);
/* valid until the next run or destroy */
CV_API cv_status cv_proof_report(const cv_proof* p, const char** text);
CV_API cv_status cv_proof_get_stats(const cv_proof* p, cv_proof_stats* stats);
CV_API cv_status cv_proof_tile_count(const cv_proof* p, size_t* n);
CV_API cv_status cv_proof_tile(const cv_proof* p, size_t i, cv_tile* tile);
/* cut history of the prism that exceeded the depth, as "axis:half " pairs */
CV_API cv_status cv_proof_failing_history(const cv_proof* p, const char** text);
CV_API cv_status cv_proof_pending(const cv_proof* p, size_t* n);
CV_API void cv_proof_destroy(cv_proof* p);
/* report with the timing line removed, for comparing runs */
CV_API cv_status cv_strip_timing(const char* report, char** out);

/* ---- periodic orbits ----------------------------------------------------- */

typedef enum cv_perturbation { CV_TRIGONOMETRIC = 0, CV_POLYNOMIAL = 1, CV_FAST_FROSCHLE = 2 } cv_perturbation;

typedef struct cv_path cv_path;

typedef struct cv_step_info {
    double eps;
    double shadow, grad_size;
    double action;
    double deviation;
    long morse; /* negative Hessian eigenvalues; -1 unknown */
} cv_step_info;

CV_API cv_status cv_perturbation_from_name(const char* name, cv_perturbation* out);

/* Minimizing states for rotation vector (p0, p1)/q along an eps schedule,
 * starting from the unperturbed state (entry 0 has eps = 0). */
CV_API cv_status cv_continuation(long p0, long p1, long q, cv_perturbation kind, const double* schedule,
                                 size_t n_schedule, double jitter, uint64_t seed, double target, cv_path** out);
CV_API cv_status cv_path_size(const cv_path* path, size_t* n);
CV_API cv_status cv_path_period(const cv_path* path, long* q);
CV_API cv_status cv_path_step(const cv_path* path, size_t i, cv_step_info* info);
/* x and p each take 2q doubles, interleaved (x_j0, x_j1); either may be NULL */
CV_API cv_status cv_path_points(const cv_path* path, size_t i, double* x, double* p);
/* exponents per step, largest first; out takes n_vectors doubles */
CV_API cv_status cv_path_lyapunov(const cv_path* path, size_t i, int n_vectors, int cycles, int warmup,
                                  double* out);
/* up to m closest pairs: lipschitz[k] = |dp|/|dx|, dx[k] = |dx|; *count set */
CV_API cv_status cv_path_smoothness(const cv_path* path, size_t i, size_t m, double* lipschitz, double* dx,
                                    size_t* count);
CV_API void cv_path_destroy(cv_path* path);

/* Lyapunov exponents of the standard map at a fixed point x (k given):
 * `warmup` unrecorded steps, then `steps` recorded ones. */
CV_API cv_status cv_std_fixed_point_lyapunov(double k, double x, int steps, int warmup, double out[2]);

/* ---- rational approximation -------------------------------------------- */

/* partial quotients of omega, at most n+1 of them; *count set */
CV_API cv_status cv_cfrac(double omega, int n, long* out, size_t cap, size_t* count);
/* lines "p q address" for levels 0..levels; "-" marks the empty address */
CV_API cv_status cv_farey_text(double omega, int levels, char** text);
/* lines "p0 p1 q address" */
CV_API cv_status cv_farey_triangle_text(double w0, double w1, int levels, char** text);
/* decimal strings for (tau^-2, tau^-1), tau^3 = tau + 1, dp places */
CV_API cv_status cv_spiral_mean(long dp, char** w0, char** w1);

#ifdef __cplusplus
}
#endif

#endif
