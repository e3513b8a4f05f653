#pragma once

// The maps under study. The 4-D engine works with
//   V_abc(y) = -a sin y0 - b sin y1 - c sin(y0 + y1)
// in radian delay coordinates (u, v) = (y_n, y_{n+1}), extended by the three
// parameters: x = (a, b, c, u0, u1, v0, v1).

#include <array>
#include <functional>
#include <utility>

#include "dec.hpp"
#include "interval.hpp"
#include "matrix.hpp"
#include "special.hpp"

namespace converse {

// ---- 2-D standard-type maps -------------------------------------------------

// p' = p + f(x), x' = x + p' on the lift; f has period 1 and zero mean.
struct StdFamily {
    double k = 0;  // strength of the default f(x) = -(k/2pi) sin 2pi x
    std::function<double(double)> f;
    std::function<double(double)> df;

    static StdFamily standard(double k);
    bool is_standard() const { return !f; }
    double force(double x) const;
    double dforce(double x) const;
    // V with f = -dV/dx
    double potential(double x) const;
};

std::pair<double, double> std_step(double x, double p, const StdFamily& fam);
// Validated version for the default family with k given exactly.
std::pair<Dec, Dec> std_step(const Dec& x, const Dec& p, const Dec& k, const TrigConfig& cfg);

// u' = v, v' = 2v - u + f(v)
std::pair<double, double> delay_step_2d(double u, double v, const StdFamily& fam);
// dv'/dv
double beta_2d(double v, const StdFamily& fam);

// H(x, x') = (x' - x)^2 / 2 - V(x)
double action_h_2d(double x, double xp, const StdFamily& fam);

// ---- the three-parameter family ---------------------------------------------

struct AbcParams {
    Dec a_c, b_c, c_c;
    Dec da, db, dc;
};

// Normalisations making max |V| = 1 on the torus (frozen to 12 digits).
const Dec& m_trig();
const Dec& m_poly();
inline constexpr double kMTrig = 1.76017259305;
inline constexpr double kMPoly = 1.0 / 4096.0;

// a = b = 4 eps pi^2 / (2 M_trig), c = 4 eps pi^2 / M_trig over [eps_lo, eps_hi].
AbcParams abc_from_epsilon(const Dec& eps_lo, const Dec& eps_hi, long dp);
double epsilon_from_c(double c);

struct ExtPoint {
    std::array<Dec, 7> x;

    const Dec& a() const { return x[0]; }
    const Dec& b() const { return x[1]; }
    const Dec& c() const { return x[2]; }
    const Dec& u(int i) const { return x[static_cast<std::size_t>(3 + i)]; }
    const Dec& v(int i) const { return x[static_cast<std::size_t>(5 + i)]; }
};

using Vec7 = std::array<double, 7>;

// Image under G, trig good to cfg.dp places.
ExtPoint g_abc(const ExtPoint& p, const TrigConfig& cfg);
Vec7 g_abc(const Vec7& p);

// Enclosures of parameters and of the trig values entering DG over a set.
struct PhaseBounds {
    Interval a, b, c;
    Interval s0, s1, s01;  // sin v0, sin v1, sin(v0+v1)
    Interval c0, c1, c01;  // cos ...
};

PhaseBounds phase_bounds(const Interval& a, const Interval& b, const Interval& c, const Interval& v0,
                         const Interval& v1, const Interval& v01, const TrigConfig& cfg);
PhaseBounds phase_bounds(const ExtPoint& p, const TrigConfig& cfg);

// beta = [[2 - a s0 - c s01, -c s01], [-c s01, 2 - b s1 - c s01]]
IvMat beta_block(const PhaseBounds& pb);
// gamma = [[cos v0, 0, cos(v0+v1)], [0, cos v1, cos(v0+v1)]]
IvMat gamma_block(const PhaseBounds& pb);
// Point values (midpoints of the enclosures) as plain Dec matrices.
DecMat beta_at(const ExtPoint& p, const TrigConfig& cfg);
DecMat gamma_at(const ExtPoint& p, const TrigConfig& cfg);

// DG in 3+2+2 blocks: [[I,0,0],[0,0,I],[gamma,-I,beta]]
IvMat dg_abc(const PhaseBounds& pb);
DecMat dg_abc(const ExtPoint& p, const TrigConfig& cfg);
DblMat dg_abc(const Vec7& p);

struct Beta2 {
    double b00, b01, b11;
};
Beta2 beta_at(double a, double b, double c, double v0, double v1);
// Eigenvalues of a symmetric 2x2 block.
double lambda_minus(const Beta2& m);
double lambda_plus(const Beta2& m);

// ---- perturbations for the orbit laboratory ---------------------------------

enum class Perturbation { trigonometric, polynomial, fast_froschle };

// Potentials in x-coordinates (period 1).
double potential(Perturbation kind, double x0, double x1);
std::array<double, 2> potential_grad(Perturbation kind, double x0, double x1);
// d2V as (V00, V01, V11)
std::array<double, 3> potential_hess(Perturbation kind, double x0, double x1);

// H(x, x') = |x' - x|^2 / 2 - eps V(x)
double action_h(const std::array<double, 2>& x, const std::array<double, 2>& xp, Perturbation kind, double eps);
std::array<double, 2> action_h_dx(const std::array<double, 2>& x, const std::array<double, 2>& xp, Perturbation kind,
                                  double eps);
std::array<double, 2> action_h_dxp(const std::array<double, 2>& x, const std::array<double, 2>& xp);

}  // namespace converse
