#pragma once

// Double-precision mirror of the rigorous prism test: same fatteners, same
// suite, ordinary floating point and no error ledgers. Used to screen prisms
// before the validated run, and to choose cut axes.

#include <Eigen/Dense>

#include "cone.hpp"
#include "prism.hpp"

namespace converse {

using Mat7 = Eigen::Matrix<double, 7, 7>;

struct FastPrism {
    Vec7 c{};
    Mat7 p = Mat7::Zero();
};

FastPrism to_fast(const Prism& s);

struct FastCones {
    double tr_min, tr_max, lam_min, lam_max;
};
FastCones to_fast(const GlobalBounds& gb);

struct FastSuite {
    double ub_lam, ub_trace;
};

struct FastOutcome {
    bool success = false;
    int iterations = 0;  // suite steps after the one at x*
};

// Suite along the single orbit (x*, centre of s); no set bounds.
FastOutcome fast_orbit_test(const FastPrism& s, double theta_star, const FastCones& gb, int budget);
// Image-bounding test in double precision, fixed form first, then column rotor.
FastOutcome fast_prism_test(const FastPrism& s, double theta_star, const FastCones& gb, int budget,
                            double min_angle);

// Axis to halve: compares how far each parameter column and the v0, v1
// columns of the prism spread the v rows after `steps` linearised steps along
// the centre orbit. Ties prefer '0', then '1', then 'a', 'b', 'c'.
char choose_cut_axis(const FastPrism& s, int steps);

}  // namespace converse
