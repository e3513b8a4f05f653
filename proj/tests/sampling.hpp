#pragma once

// Random prisms and a sampled containment audit for prism images.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "map.hpp"
#include "prism.hpp"

namespace sampling {

using namespace converse;

inline constexpr double kTwoPi = 6.283185307179586;

inline Eigen::Matrix<double, 7, 7> to_eigen(const DecMat& m) {
    Eigen::Matrix<double, 7, 7> e;
    for (int i = 0; i < 7; ++i)
        for (int j = 0; j < 7; ++j) e(i, j) = m(i, j).to_double();
    return e;
}

inline Vec7 to_vec(const ExtPoint& p) {
    Vec7 v;
    for (std::size_t i = 0; i < 7; ++i) v[i] = p.x[i].to_double();
    return v;
}

inline Dec rnd(std::mt19937_64& rng, double lo, double hi) {
    return truncate(Dec::from_double(std::uniform_real_distribution<double>(lo, hi)(rng)), 12);
}

// Random prism respecting the block structure: parameter rows only in the
// parameter columns; worklist-shaped (P_uu = P_vu = 0) if requested.
inline Prism random_prism(std::mt19937_64& rng, bool worklist_shape, double scale) {
    Prism s;
    s.center.x[0] = rnd(rng, 0.0, 0.4);
    s.center.x[1] = rnd(rng, 0.0, 0.4);
    s.center.x[2] = rnd(rng, 0.0, 0.8);
    for (std::size_t i = 3; i < 7; ++i) s.center.x[i] = rnd(rng, 0.0, kTwoPi);
    for (int i = 0; i < 3; ++i) s.p(i, i) = rnd(rng, 0.01 * scale, 0.1 * scale);
    for (int i = 3; i < 7; ++i)
        for (int j = 0; j < 7; ++j) {
            if (j < 3) {
                s.p(i, j) = rnd(rng, -0.1 * scale, 0.1 * scale);
                continue;
            }
            bool zero = worklist_shape && j < 5;
            if (!zero) s.p(i, j) = rnd(rng, -scale, scale);
        }
    return s;
}

// Largest |eta'| over sampled points of S mapped n times, in coordinates of
// the prism `img`.
inline double worst_eta(const std::vector<Prism>& chain, int samples, std::mt19937_64& rng) {
    const Prism& s = chain.front();
    const Prism& img = chain.back();
    int steps = static_cast<int>(chain.size()) - 1;
    auto lu = to_eigen(img.p).fullPivLu();
    Vec7 c = to_vec(s.center), ci = to_vec(img.center);
    auto P = to_eigen(s.p);
    std::uniform_real_distribution<double> u(-1, 1);
    std::bernoulli_distribution corner(0.5);
    double worst = 0;
    for (int k = 0; k < samples; ++k) {
        Eigen::Matrix<double, 7, 1> eta;
        bool at_corner = corner(rng);
        for (int j = 0; j < 7; ++j) eta(j) = at_corner ? (u(rng) < 0 ? -1.0 : 1.0) : u(rng);
        Eigen::Matrix<double, 7, 1> off = P * eta;
        Vec7 x;
        for (std::size_t j = 0; j < 7; ++j) x[j] = c[j] + off(static_cast<int>(j));
        for (int n = 0; n < steps; ++n) x = g_abc(x);
        Eigen::Matrix<double, 7, 1> d;
        for (std::size_t j = 0; j < 7; ++j) d(static_cast<int>(j)) = x[j] - ci[j];
        Eigen::Matrix<double, 7, 1> t = lu.solve(d);
        worst = std::max(worst, t.cwiseAbs().maxCoeff());
    }
    return worst;
}

}  // namespace sampling
