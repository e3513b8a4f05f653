#pragma once

// Rational approximation of rotation numbers and vectors: continued
// fractions, the Farey tree, and Farey triangles for pairs (p0/q, p1/q).

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "dec.hpp"

namespace converse {

// a_i = Int[r_i], r_{i+1} = 1/(r_i - a_i); at most n+1 quotients.
// The double version stops once r_i - a_i < tol. A Dec is an exact
// rational, so its expansion (like p/q's) ends when the remainder is 0.
std::vector<long> cfrac(double omega, int n, double tol = 1e-9);
std::vector<long> cfrac(const Dec& omega, int n);
std::vector<long> cfrac_rational(long p, long q);
// p_i / q_i for the truncations a_0 .. a_i
std::vector<std::pair<long, long>> convergents(const std::vector<long>& quotients);

struct FareyStep {
    long p, q;
    std::string address;  // choices made so far, 'l' or 'r'
};
// The mediant of the level-n interval holding omega (level 0 gives 1/2);
// one entry per level 0..levels. A target equal to a mediant goes left.
std::vector<FareyStep> farey_approx(double omega, int levels);

using Triple = std::array<long, 3>;  // (p0, p1, q)

struct FareyTriangle {
    // a, b: ends of the hypotenuse; c: the opposite corner
    Triple a, b, c;
};

struct TriangleStep {
    Triple mediant;
    std::string address;
    FareyTriangle parent;  // the triangle that was split
};
// Starting from the triangle (0,1,1), (1,0,1), (1,1,1) (targets with
// w0 + w1 >= 1; others go through w -> 1 - w), split at the hypotenuse mediant
// and keep the daughter holding the target. The daughter that keeps the first
// hypotenuse end is 'r'. Targets on the splitting line go to 'l'.
std::vector<TriangleStep> farey_triangle_approx(double w0, double w1, int levels);

// tau with tau^3 = tau + 1, and (tau^-2, tau^-1), to dp places
Dec plastic_number(long dp);
std::pair<Dec, Dec> spiral_mean(long dp = 40);

}  // namespace converse
