#pragma once

// Closed intervals with Dec endpoints. Sums and products are exact, so
// containment needs no outward rounding here.

#include <vector>

#include "dec.hpp"

namespace converse {

struct Interval {
    Dec lb, ub;

    Interval() = default;
    Interval(const Dec& x) : lb(x), ub(x) {}  // NOLINT(google-explicit-constructor)
    Interval(Dec lo, Dec hi);

    static Interval around(const Dec& center, const Dec& radius);

    bool contains(const Dec& x) const { return lb <= x && x <= ub; }
    bool contains(const Interval& o) const { return lb <= o.lb && o.ub <= ub; }
    Dec width() const { return ub - lb; }
    // max |x| over the interval
    Dec mag() const;
    // min |x| over the interval
    Dec mig() const;
    Interval widened(const Dec& eps) const { return {lb - eps, ub + eps}; }

    Interval operator-() const { return {-ub, -lb}; }
    friend Interval operator+(const Interval& x, const Interval& y) { return {x.lb + y.lb, x.ub + y.ub}; }
    friend Interval operator-(const Interval& x, const Interval& y) { return {x.lb - y.ub, x.ub - y.lb}; }
    friend Interval operator*(const Interval& x, const Interval& y);
    friend bool operator==(const Interval& x, const Interval& y) = default;
};

Interval sqr(const Interval& x);
Interval hull(const Interval& x, const Interval& y);

// coef * product of factors
struct BoundedTerm {
    Dec coef{1};
    std::vector<Interval> factors;
    Interval bound;

    const Interval& eval();
};

// constant + sum of terms
struct BoundedExpr {
    Dec constant{0};
    std::vector<BoundedTerm> terms;
    Interval bound;

    BoundedExpr& add(const Dec& coef, std::vector<Interval> factors);
    const Interval& eval();
};

}  // namespace converse
