#pragma once

// Periodic minimizing states of the 4-D maps generated by
//   H(x, x') = |x' - x|^2 / 2 - eps V(x),   x in R^2 (lift of the torus).
// Plain double precision; nothing here is validated.

#include <Eigen/Dense>

#include <array>
#include <cstdint>
#include <vector>

#include "map.hpp"

namespace converse {

using Pt = std::array<double, 2>;

// x_0 .. x_{q-1}; x_{j+q} = x_j + p.
struct State {
    std::array<long, 2> p{0, 0};
    long q = 1;
    std::vector<Pt> x;

    Pt at(long j) const;
};

struct Lab {
    Perturbation kind = Perturbation::trigonometric;
    double eps = 0;
};

State uniform_state(std::array<long, 2> p, long q, Pt x0);

double action(const State& s, const Lab& lab);
// dL/dx_j = (x_j - x_{j-1}) - (x_{j+1} - x_j) - eps grad V(x_j)
std::vector<Pt> el_gradient(const State& s, const Lab& lab);
// sqrt(sum |g_j|^2 / q)
double grad_size(const State& s, const Lab& lab);

// p_j = -dH/dx(x_j, x_{j+1})
std::vector<Pt> momenta(const State& s, const Lab& lab);
// (x, p) -> (x + p - eps grad V(x), p - eps grad V(x))
std::array<double, 4> phase_step(const std::array<double, 4>& z, const Lab& lab);
Eigen::Matrix4d phase_jacobian(const Pt& x, const Lab& lab);

struct OrbitQuality {
    double shadow = 0;     // max_j |(x_{j+1}, p_{j+1}) - F(x_j, p_j)|
    double grad_size = 0;  // as above
};
OrbitQuality quality(const State& s, const Lab& lab);

struct FlowControl {
    double target = 1e-6;   // stop once grad_size is below this
    double tol = 1e-10;     // relative progress (action and gradient) treated as stagnation
    long max_steps = 200000;
};

struct FlowResult {
    State state;
    bool converged = false;
    long steps = 0;
};
// Descent dx/dtau = -dL/dx, forward Euler with step doubling and halving;
// a step is kept only if the action goes down (or, once changes are at
// rounding level, if the gradient shrinks).
FlowResult gradient_flow(const State& s, const Lab& lab, const FlowControl& ctl = {});

struct NewtonResult {
    State state;
    bool converged = false;
    int iterations = 0;
};
// Newton on the EL equations with the sparse block Hessian
// (2I - eps Hess V on the diagonal, -I off it and in the corners).
// Throws Errc::singular when no damped step reduces the gradient.
NewtonResult newton_min(const State& s, const Lab& lab, double target = 1e-10, int max_iter = 60);

// Dense Hessian of L, for small q (tests, eigen checks).
Eigen::MatrixXd action_hessian(const State& s, const Lab& lab);
// Number of clearly negative Hessian eigenvalues (pivots below -1e-8 of
// the largest are taken as null directions); -1 if the factorisation fails.
long morse_index(const State& s, const Lab& lab);

// Point where -eps V is least (the maximum of V).
Pt critical_point(Perturbation kind);

struct ContinuationStep {
    double eps;
    State state;
    OrbitQuality quality;
    long morse = 0;  // morse_index of the state
};
// Starts from the uniform state at the critical point with eps = 0 and walks
// through the schedule, reusing each state as the next seed. Newton finds
// whatever critical point is near: for small q the eps = 0 family is
// degenerate and a saddle can be picked up, which `morse` shows. jitter > 0
// adds a uniform displacement of that size to every point of the seed.
std::vector<ContinuationStep> continuation(std::array<long, 2> p, long q, Perturbation kind,
                                           const std::vector<double>& schedule, double jitter = 0,
                                           std::uint64_t seed = 1, double target = 1e-10);

// Benettin: carry a frame through the Jacobians (cyclically, `cycles` times
// after `warmup` unrecorded cycles), Gram-Schmidt whenever a column norm
// passes `renorm` and at the end; exponents per step, largest first.
// Contracting directions keep about 16 - 2 log10(renorm) digits.
std::vector<double> lyapunov(const std::vector<Eigen::MatrixXd>& jacobians, int n_vectors, int cycles = 1,
                             int warmup = 0, double renorm = 1e6);
std::vector<Eigen::MatrixXd> orbit_jacobians(const State& s, const Lab& lab);
// Jacobian of the lifted standard map (x, p) -> (x + p', p'), p' = p + f(x)
Eigen::MatrixXd std_jacobian(double x, const StdFamily& fam);

struct SmoothPair {
    double lipschitz, dx;
};
// The m closest pairs of points on the torus (Delta x > 1e-12, so repeats
// of a point are skipped), with
// |Delta p| / |Delta x|; sorted by dx.
std::vector<SmoothPair> smoothness_pairs(const State& s, const Lab& lab, std::size_t m = 800);

// max_j torus distance between x_j and x_0 + (j/q) p
double deviation(const State& s);
inline constexpr double kTorusDiameter = 0.70710678118654752440;

}  // namespace converse
