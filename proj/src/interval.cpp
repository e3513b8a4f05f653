#include "interval.hpp"

#include "errors.hpp"

namespace converse {

Interval::Interval(Dec lo, Dec hi) : lb(std::move(lo)), ub(std::move(hi)) {
    if (ub < lb) throw Error(Errc::invalid_argument, "interval with lb > ub");
}

Interval Interval::around(const Dec& center, const Dec& radius) {
    Dec r = radius.abs();
    return {center - r, center + r};
}

Dec Interval::mag() const { return max(lb.abs(), ub.abs()); }

Dec Interval::mig() const {
    if (lb.sign() <= 0 && ub.sign() >= 0) return Dec(0);
    return min(lb.abs(), ub.abs());
}

Interval operator*(const Interval& x, const Interval& y) {
    if (x.lb == x.ub && y.lb == y.ub) return Interval(x.lb * y.lb);
    if (x.lb.sign() >= 0 && y.lb.sign() >= 0) return {x.lb * y.lb, x.ub * y.ub};
    Dec p[4] = {x.lb * y.lb, x.lb * y.ub, x.ub * y.lb, x.ub * y.ub};
    Dec lo = p[0], hi = p[0];
    for (int i = 1; i < 4; ++i) {
        if (p[i] < lo) lo = p[i];
        if (hi < p[i]) hi = p[i];
    }
    return {lo, hi};
}

Interval sqr(const Interval& x) {
    Dec lo = x.mig(), hi = x.mag();
    return {lo * lo, hi * hi};
}

Interval hull(const Interval& x, const Interval& y) { return {min(x.lb, y.lb), max(x.ub, y.ub)}; }

const Interval& BoundedTerm::eval() {
    Interval acc(coef);
    for (const auto& f : factors) acc = acc * f;
    bound = acc;
    return bound;
}

BoundedExpr& BoundedExpr::add(const Dec& coef, std::vector<Interval> factors) {
    terms.push_back(BoundedTerm{coef, std::move(factors), {}});
    return *this;
}

const Interval& BoundedExpr::eval() {
    Interval acc(constant);
    for (auto& t : terms) acc = acc + t.eval();
    bound = acc;
    return bound;
}

}  // namespace converse
