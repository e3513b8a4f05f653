#include "cone.hpp"

#include <algorithm>
#include <cmath>

#include "errors.hpp"

namespace converse {

namespace {

constexpr double kTwoPi = 6.283185307179586;
const Dec kHalf = Dec::parse("0.5");

}  // namespace

// ---- 2-D ----------------------------------------------------------------------

FluxResult flux_test(const StdFamily& fam) {
    auto trapezoid = [&](int n) {
        double s = 0;
        for (int i = 0; i < n; ++i) s += fam.force(static_cast<double>(i) / n);
        return s / n;
    };
    double coarse = trapezoid(1024), fine = trapezoid(2048);
    FluxResult r;
    r.mean = fine;
    r.error = std::fabs(fine - coarse) + 1e-14;
    r.verdict = std::fabs(fine) > 10 * r.error ? Verdict::no_circles : Verdict::inconclusive;
    return r;
}

Criterion1Result criterion1_standard(const Dec& k, const TrigConfig& cfg) {
    // min over v of 2 - k cos 2pi v: cover the circle by cells, take the
    // smallest enclosure
    const int cells = 64;
    const Dec two_pi = Dec(2) * stored_pi();
    const Interval ki(k);
    Dec lo(0), hi(0);
    bool first = true;
    for (int i = 0; i < cells; ++i) {
        Interval theta(divide_down(two_pi * Dec(i), Dec(cells), cfg.dp), divide_up(two_pi * Dec(i + 1), Dec(cells), cfg.dp));
        Interval cosv = bd_cos(theta, cfg);
        Interval beta = Interval(Dec(2)) - ki * cosv;
        if (first || beta.lb < lo) lo = beta.lb;
        // the minimum is at most the value at any single point
        Interval at_point = Interval(Dec(2)) - ki * bd_cos(Interval(theta.lb), cfg);
        if (first || at_point.ub < hi) hi = at_point.ub;
        first = false;
    }
    Criterion1Result r;
    r.min_beta = Interval(lo, hi);
    r.verdict = hi < Dec(0) ? Verdict::no_circles : Verdict::inconclusive;
    // beta = 2 + k g with min g = -1 (attained at v = 0)
    r.k_threshold = Dec(2);
    return r;
}

Criterion1Result criterion1(const StdFamily& fam) {
    const int n = 100000;
    double lo = 1e300;
    for (int i = 0; i < n; ++i) lo = std::min(lo, beta_2d(static_cast<double>(i) / n, fam));
    Criterion1Result r;
    Dec m = Dec::from_double(lo);
    r.min_beta = Interval(m, m);
    r.verdict = lo < 0 ? Verdict::no_circles : Verdict::inconclusive;
    // beta is affine in the strength for the scaled family
    double g = (lo - 2);
    r.k_threshold = g < 0 ? Dec::from_double(2 * fam.k / -g) : Dec(0);
    return r;
}

Cone2 uniform_cone_2d(const Dec& big_m, long dp) {
    if (big_m < Dec(2)) throw Error(Errc::domain, "uniform cone needs M >= 2");
    Interval root = bd_sqrt(big_m * big_m - Dec(4), dp);
    return {(big_m - root.ub) * kHalf, (big_m + root.ub) * kHalf};
}

Criterion2Result criterion2(const Dec& m, const Dec& big_m, long dp) {
    Criterion2Result r;
    r.cone = uniform_cone_2d(big_m, dp);
    Dec rhs = m - divide_down(Dec(1), r.cone.hi, dp);
    r.verdict = r.cone.lo > rhs ? Verdict::no_circles : Verdict::inconclusive;
    return r;
}

DRecursion d_recursion_2d(const std::vector<Interval>& betas, const Dec& big_m, long dp, std::optional<Dec> d_start) {
    Cone2 cone = uniform_cone_2d(big_m, dp);
    Dec d = d_start ? *d_start : cone.hi;
    DRecursion r;
    for (const auto& beta : betas) {
        d = beta.ub - divide_down(Dec(1), d, dp);
        r.ub.push_back(d);
        ++r.steps;
        if (d < cone.lo) {
            r.verdict = Verdict::no_circles;
            break;
        }
    }
    return r;
}

// ---- 4-D global bounds ------------------------------------------------------------

namespace {

struct Abc {
    double a, b, c;
};

double trace_at(const Abc& p, double v0, double v1) {
    return 4 - p.a * std::sin(v0) - p.b * std::sin(v1) - 2 * p.c * std::sin(v0 + v1);
}

double lam_plus_at(const Abc& p, double v0, double v1) { return lambda_plus(beta_at(p.a, p.b, p.c, v0, v1)); }
double lam_minus_at(const Abc& p, double v0, double v1) { return lambda_minus(beta_at(p.a, p.b, p.c, v0, v1)); }

std::array<double, 2> trace_grad(const Abc& p, double v0, double v1) {
    double c01 = std::cos(v0 + v1);
    return {-p.a * std::cos(v0) - 2 * p.c * c01, -p.b * std::cos(v1) - 2 * p.c * c01};
}

// d lambda_+ = e^T d(beta) e with e the top unit eigenvector
std::array<double, 2> lam_plus_grad(const Abc& p, double v0, double v1) {
    Beta2 m = beta_at(p.a, p.b, p.c, v0, v1);
    double lp = lambda_plus(m);
    double e0 = m.b01, e1 = lp - m.b00;
    if (std::fabs(e0) + std::fabs(e1) < 1e-300) {
        e0 = lp - m.b11;
        e1 = m.b01;
    }
    if (std::fabs(e0) + std::fabs(e1) < 1e-300) {
        // beta is a multiple of the identity; pick the larger diagonal direction
        e0 = 1;
        e1 = 0;
    }
    double n = std::hypot(e0, e1);
    e0 /= n;
    e1 /= n;
    double c0 = std::cos(v0), c1 = std::cos(v1), c01 = std::cos(v0 + v1);
    auto quad = [&](double d00, double d01, double d11) { return e0 * e0 * d00 + 2 * e0 * e1 * d01 + e1 * e1 * d11; };
    return {quad(-p.a * c0 - p.c * c01, -p.c * c01, -p.c * c01), quad(-p.c * c01, -p.c * c01, -p.b * c1 - p.c * c01)};
}

template <class F, class G>
std::array<double, 2> maximise(F f, G grad, double tol) {
    // coarse grid seed, then Newton on the gradient with a numerical Hessian
    const int n = 64;
    double best = -1e300, v0 = 0, v1 = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double x = kTwoPi * i / n, y = kTwoPi * j / n, val = f(x, y);
            if (val > best) {
                best = val;
                v0 = x;
                v1 = y;
            }
        }
    const double h = 1e-6;
    for (int it = 0; it < 100; ++it) {
        auto g = grad(v0, v1);
        if (std::hypot(g[0], g[1]) <= tol) break;
        auto gx = grad(v0 + h, v1), gy = grad(v0, v1 + h);
        double h00 = (gx[0] - g[0]) / h, h01 = (gy[0] - g[0]) / h, h10 = (gx[1] - g[1]) / h, h11 = (gy[1] - g[1]) / h;
        double det = h00 * h11 - h01 * h10;
        double s0, s1;
        if (det > 0 && h00 < 0) {
            s0 = -(h11 * g[0] - h01 * g[1]) / det;
            s1 = -(-h10 * g[0] + h00 * g[1]) / det;
        } else {
            // not locally concave: gradient ascent step
            s0 = 1e-2 * g[0];
            s1 = 1e-2 * g[1];
        }
        double step = std::hypot(s0, s1);
        if (step > 0.1) {
            s0 *= 0.1 / step;
            s1 *= 0.1 / step;
        }
        v0 += s0;
        v1 += s1;
    }
    return {v0, v1};
}

Abc centre(const AbcParams& p) { return {p.a_c.to_double(), p.b_c.to_double(), p.c_c.to_double()}; }

// (x -+ sqrt(x^2 - 4 k^2)) / 2, outward
std::pair<Dec, Dec> cone_roots(const Dec& x, const Dec& k, long dp) {
    Dec disc = x * x - Dec(4) * k * k;
    if (disc < Dec(0)) throw Error(Errc::domain, "cone constants undefined: discriminant below zero");
    Interval r = bd_sqrt(disc, dp);
    return {(x - r.ub) * kHalf, (x + r.ub) * kHalf};
}

}  // namespace

GlobalBounds global_bounds_4d(const AbcParams& p, long dp) {
    Abc c = centre(p);
    double tol = (std::fabs(c.a) + std::fabs(c.b) + std::fabs(c.c)) * 1e-9;
    GlobalBounds gb;
    auto xt = maximise([&](double x, double y) { return trace_at(c, x, y); },
                       [&](double x, double y) { return trace_grad(c, x, y); }, tol);
    auto xb = maximise([&](double x, double y) { return lam_plus_at(c, x, y); },
                       [&](double x, double y) { return lam_plus_grad(c, x, y); }, tol);
    gb.x_trace[0] = xt[0];
    gb.x_trace[1] = xt[1];
    gb.x_lam[0] = xb[0];
    gb.x_lam[1] = xb[1];

    Dec margin = (p.a_c.abs() + p.b_c.abs() + Dec(2) * p.c_c.abs()) * Dec::pow10(-6) + p.da + p.db + Dec(2) * p.dc;
    gb.big_t = truncate(Dec::from_double(trace_at(c, xt[0], xt[1])), 15) + Dec::pow10(-15) + margin;
    gb.big_b = truncate(Dec::from_double(lam_plus_at(c, xb[0], xb[1])), 15) + Dec::pow10(-15) + margin;
    // V(-x) = -V(x) mirrors the extrema: beta(-v) = 4I - beta(v)
    gb.t = Dec(8) - gb.big_t;
    gb.b = Dec(4) - gb.big_b;
    auto tr = cone_roots(gb.big_t, Dec(2), dp);
    auto lam = cone_roots(gb.big_b, Dec(1), dp);
    gb.tr_min = tr.first;
    gb.tr_max = tr.second;
    gb.lam_min = lam.first;
    gb.lam_max = lam.second;
    return gb;
}

Dec starting_angle(const AbcParams& p, StartKind kind) {
    Abc c = centre(p);
    auto f = [&](double t) { return kind == StartKind::herman ? trace_at(c, t, t) : lam_minus_at(c, t, t); };
    const int n = 3600;
    int best = 0;
    double fb = f(0);
    for (int i = 1; i < n; ++i) {
        double v = f(kTwoPi * i / n);
        if (v < fb) {
            fb = v;
            best = i;
        }
    }
    // golden-section refinement within the neighbouring cells
    double lo = kTwoPi * (best - 1) / n, hi = kTwoPi * (best + 1) / n;
    const double g = 0.5 * (std::sqrt(5.0) - 1);
    double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo), f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < 80; ++it) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = f(x2);
        }
    }
    double t = 0.5 * (lo + hi);
    if (t < 0) t += kTwoPi;
    return truncate(Dec::from_double(t), 15);
}

// ---- the suite ----------------------------------------------------------------

BetaBounds beta_bounds(const PhaseBounds& pb, long dp) {
    Interval cs = pb.c * pb.s01;
    Interval as = pb.a * pb.s0, bs = pb.b * pb.s1;
    Interval tr = Interval(Dec(4)) - as - bs - cs - cs;
    // eigenvalues of beta: (Tr -+ sqrt((beta00 - beta11)^2 + 4 beta01^2)) / 2
    Interval diff = bs - as;
    Interval discrim = sqr(diff) + Interval(Dec(4)) * sqr(cs);
    Dec root_lo = bd_sqrt(discrim.lb, dp).lb;
    Dec root_hi = bd_sqrt(discrim.ub, dp).ub;
    BetaBounds bb;
    bb.ub_trace = tr.ub;
    bb.ub_lam_minus = (tr.ub - root_lo) * kHalf;
    bb.ub_lam_plus = (tr.ub + root_hi) * kHalf;
    return bb;
}

DiagStats initial_stats(const GlobalBounds& gb) { return {gb.lam_max, gb.tr_max}; }

SuiteStep eigen_suite_step(const BetaBounds& bb, const DiagStats& prev, const GlobalBounds& gb, long dp) {
    SuiteStep s;
    if (prev.ub_lam <= Dec(0) || prev.ub_trace <= Dec(0)) throw Error(Errc::domain, "suite needs positive bounds on d");
    Dec tr_next = bb.ub_trace - divide_down(Dec(4), prev.ub_trace, dp);
    Dec cand[3];
    bool have[3] = {true, true, false};
    cand[0] = tr_next * kHalf;
    cand[1] = bb.ub_lam_plus - divide_down(Dec(1), prev.ub_lam, dp);
    Dec den = prev.ub_trace - gb.lam_min;
    if (den > Dec(0)) {
        cand[2] = bb.ub_lam_minus - divide_down(Dec(1), den, dp);
        have[2] = true;
    }
    Dec best = gb.lam_max;
    for (int i = 0; i < 3; ++i)
        if (have[i] && cand[i] < best) {
            best = cand[i];
            s.winner = i + 1;
        }
    s.next.ub_lam = best;
    s.next.ub_trace = min(tr_next, gb.tr_max);
    s.vacuous = s.winner == 0 && tr_next >= gb.tr_max;
    s.success = s.next.ub_lam < gb.lam_min || s.next.ub_trace < gb.tr_min;
    return s;
}

// ---- analytic thresholds ------------------------------------------------------------

double avoidance_threshold(Perturbation kind) {
    // locate the minimum of V by a grid and Newton on the gradient
    const int n = 200;
    double best = 1e300, x0 = 0, x1 = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double a = (i + 0.5) / n, b = (j + 0.5) / n, v = potential(kind, a, b);
            if (v < best) {
                best = v;
                x0 = a;
                x1 = b;
            }
        }
    for (int it = 0; it < 50; ++it) {
        auto g = potential_grad(kind, x0, x1);
        auto h = potential_hess(kind, x0, x1);
        double det = h[0] * h[2] - h[1] * h[1];
        if (det <= 0 || std::hypot(g[0], g[1]) < 1e-14) break;
        x0 -= (h[2] * g[0] - h[1] * g[1]) / det;
        x1 -= (-h[1] * g[0] + h[0] * g[1]) / det;
    }
    auto h = potential_hess(kind, x0, x1);
    // Hess(-eps V) = -eps Hess V; its least eigenvalue is -eps lambda_max(Hess V)
    double d = h[0] - h[2];
    double top = 0.5 * (h[0] + h[2] + std::sqrt(d * d + 4 * h[1] * h[1]));
    return 2 / top;
}

double immediate_threshold(StartKind kind, long dp) {
    auto proves = [&](double eps) {
        Dec e = Dec::from_double(eps);
        AbcParams p = abc_from_epsilon(e, e, dp);
        GlobalBounds gb = global_bounds_4d(p, dp);
        Dec theta = starting_angle(p, kind);
        TrigConfig cfg = set_trig_dp(dp);
        Interval th(theta);
        PhaseBounds pb = phase_bounds(Interval(p.a_c), Interval(p.b_c), Interval(p.c_c), th, th,
                                      Interval(theta + theta), cfg);
        SuiteStep s = eigen_suite_step(beta_bounds(pb, dp), initial_stats(gb), gb, dp);
        if (kind == StartKind::herman) return s.next.ub_trace < gb.tr_min;
        return s.success;
    };
    double lo = 0.001, hi = 0.2;
    if (!proves(hi)) throw Error(Errc::domain, "no immediate bound below epsilon = 0.2");
    for (int it = 0; it < 40; ++it) {
        double mid = 0.5 * (lo + hi);
        (proves(mid) ? hi : lo) = mid;
    }
    return hi;
}

}  // namespace converse
