#pragma once

// Non-existence criteria. In 2-D: the flux test, the two classical criteria
// and the scalar d-recursion. In 4-D: the uniform cones for d_j, starting
// points, and the per-step suite of upper bounds on lambda_-(d_j).

#include <optional>
#include <vector>

#include "map.hpp"

namespace converse {

enum class Verdict { no_circles, inconclusive };

// ---- 2-D ----------------------------------------------------------------------

struct FluxResult {
    double mean = 0;   // integral of f over a period
    double error = 0;  // quadrature error estimate
    Verdict verdict = Verdict::inconclusive;
};
FluxResult flux_test(const StdFamily& fam);

struct Criterion1Result {
    Verdict verdict = Verdict::inconclusive;
    Interval min_beta;  // encloses min_v beta(v)
    Dec k_threshold;    // k above which the verdict is no_circles
};
// Standard family with f = -(k/2pi) sin 2pi x, beta = 2 - k cos 2pi x.
Criterion1Result criterion1_standard(const Dec& k, const TrigConfig& cfg);
// Any family, by fine sampling of beta (not validated).
Criterion1Result criterion1(const StdFamily& fam);

struct Cone2 {
    Dec lo, hi;  // l_-, rounded down, and l_+, rounded up
};
// Roots of l^2 - M l + 1.
Cone2 uniform_cone_2d(const Dec& big_m, long dp);

struct Criterion2Result {
    Verdict verdict = Verdict::inconclusive;
    Cone2 cone;
};
// No circles iff l_- > m - 1/l_+ (compared with outward rounding).
Criterion2Result criterion2(const Dec& m, const Dec& big_m, long dp);

struct DRecursion {
    Verdict verdict = Verdict::inconclusive;
    int steps = 0;        // number of d_j computed
    std::vector<Dec> ub;  // upper bounds on d_0, d_1, ...
};
// d_{j+1} = beta_{j+1} - 1/d_j from d_{-1} = l_+ (or d_start); stops once an
// upper bound drops below l_-.
DRecursion d_recursion_2d(const std::vector<Interval>& betas, const Dec& big_m, long dp,
                          std::optional<Dec> d_start = std::nullopt);

// ---- 4-D ----------------------------------------------------------------------

struct GlobalBounds {
    Dec t, big_t;  // bounds on Tr beta
    Dec b, big_b;  // b = 4 - B bounds lambda_-(beta) below; B bounds lambda_+(beta) above
    Dec tr_min, tr_max;
    Dec lam_min, lam_max;
    double x_trace[2] = {0, 0};  // where Tr beta is largest
    double x_lam[2] = {0, 0};    // where lambda_+ beta is largest
};

// Newton search in double precision for the extrema over v at the centre
// parameters, plus margins for the rounding of the search and the parameter
// widths; cone constants are then computed with outward rounding.
GlobalBounds global_bounds_4d(const AbcParams& p, long dp);

enum class StartKind { herman, least_lambda };
// Angle theta with x* = (theta, theta) minimising Tr beta (herman) or
// lambda_- beta (least_lambda) on the diagonal, at the centre parameters.
Dec starting_angle(const AbcParams& p, StartKind kind);

struct DiagStats {
    Dec ub_lam;    // upper bound on lambda_-(d_j)
    Dec ub_trace;  // upper bound on Tr d_j
};

struct SuiteStep {
    DiagStats next;
    int winner = 0;  // which inequality gave ub_lam: 1..3, 0 if the cone cap did
    bool vacuous = false;
    bool success = false;  // next.ub_lam < lam_min or next.ub_trace < tr_min
};

struct BetaBounds {
    Dec ub_trace, ub_lam_minus, ub_lam_plus;
};
BetaBounds beta_bounds(const PhaseBounds& pb, long dp);

SuiteStep eigen_suite_step(const BetaBounds& bb, const DiagStats& prev, const GlobalBounds& gb, long dp);
DiagStats initial_stats(const GlobalBounds& gb);

// epsilon at which the least Hessian eigenvalue of -eps V at the minimum of V
// reaches -2.
double avoidance_threshold(Perturbation kind);

// Least epsilon for which a single suite step at the starting point already
// proves non-existence (trace: herman point, sineq1 only; lambda: least-lambda
// point, full suite). Found by bisection.
double immediate_threshold(StartKind kind, long dp = 30);

}  // namespace converse
