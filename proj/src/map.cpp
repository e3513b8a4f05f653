#include "map.hpp"

#include <cmath>

#include "errors.hpp"

namespace converse {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

StdFamily StdFamily::standard(double k) {
    StdFamily fam;
    fam.k = k;
    return fam;
}

double StdFamily::force(double x) const { return f ? f(x) : -(k / kTwoPi) * std::sin(kTwoPi * x); }

double StdFamily::dforce(double x) const { return df ? df(x) : -k * std::cos(kTwoPi * x); }

double StdFamily::potential(double x) const {
    if (f) throw Error(Errc::invalid_argument, "potential is only closed-form for the default family");
    return -(k / (kTwoPi * kTwoPi)) * std::cos(kTwoPi * x);
}

std::pair<double, double> std_step(double x, double p, const StdFamily& fam) {
    double pp = p + fam.force(x);
    return {x + pp, pp};
}

std::pair<Dec, Dec> std_step(const Dec& x, const Dec& p, const Dec& k, const TrigConfig& cfg) {
    // f(x) = -(k / 2pi) sin(2 pi x)
    const Dec two_pi = stored_pi() * Dec(2);
    Dec s = rig_sin(truncate(two_pi * x, cfg.trig_dp), cfg);
    Dec pp = p - divide(k * s, two_pi, cfg.trig_dp);
    return {x + pp, pp};
}

std::pair<double, double> delay_step_2d(double u, double v, const StdFamily& fam) {
    return {v, 2 * v - u + fam.force(v)};
}

double beta_2d(double v, const StdFamily& fam) { return 2 + fam.dforce(v); }

double action_h_2d(double x, double xp, const StdFamily& fam) {
    double d = xp - x;
    return 0.5 * d * d - fam.potential(x);
}

const Dec& m_trig() {
    static const Dec m = Dec::from_double(kMTrig);
    return m;
}

const Dec& m_poly() {
    static const Dec m = Dec::parse("0.000244140625");
    return m;
}

AbcParams abc_from_epsilon(const Dec& eps_lo, const Dec& eps_hi, long dp) {
    const Dec four_pi2 = Dec(4) * stored_pi() * stored_pi();
    Dec c_lo = divide(four_pi2 * eps_lo, m_trig(), dp);
    Dec c_hi = divide(four_pi2 * eps_hi, m_trig(), dp);
    Dec half = Dec::parse("0.5");
    AbcParams p;
    p.c_c = half * (c_lo + c_hi);
    p.dc = half * (c_hi - c_lo);
    p.a_c = half * p.c_c;
    p.b_c = p.a_c;
    p.da = half * p.dc;
    p.db = p.da;
    return p;
}

double epsilon_from_c(double c) { return c * kMTrig / (kTwoPi * kTwoPi); }

ExtPoint g_abc(const ExtPoint& p, const TrigConfig& cfg) {
    Dec c0 = rig_cos(p.v(0), cfg);
    Dec c1 = rig_cos(p.v(1), cfg);
    Dec c01 = rig_cos(p.v(0) + p.v(1), cfg);
    ExtPoint q;
    q.x[0] = p.a();
    q.x[1] = p.b();
    q.x[2] = p.c();
    q.x[3] = p.v(0);
    q.x[4] = p.v(1);
    q.x[5] = Dec(2) * p.v(0) - p.u(0) + p.a() * c0 + p.c() * c01;
    q.x[6] = Dec(2) * p.v(1) - p.u(1) + p.b() * c1 + p.c() * c01;
    return q;
}

Vec7 g_abc(const Vec7& p) {
    double c01 = std::cos(p[5] + p[6]);
    Vec7 q = p;
    q[3] = p[5];
    q[4] = p[6];
    q[5] = 2 * p[5] - p[3] + p[0] * std::cos(p[5]) + p[2] * c01;
    q[6] = 2 * p[6] - p[4] + p[1] * std::cos(p[6]) + p[2] * c01;
    return q;
}

PhaseBounds phase_bounds(const Interval& a, const Interval& b, const Interval& c, const Interval& v0,
                         const Interval& v1, const Interval& v01, const TrigConfig& cfg) {
    PhaseBounds pb;
    pb.a = a;
    pb.b = b;
    pb.c = c;
    pb.s0 = bd_sin(v0, cfg);
    pb.s1 = bd_sin(v1, cfg);
    pb.s01 = bd_sin(v01, cfg);
    pb.c0 = bd_cos(v0, cfg);
    pb.c1 = bd_cos(v1, cfg);
    pb.c01 = bd_cos(v01, cfg);
    return pb;
}

PhaseBounds phase_bounds(const ExtPoint& p, const TrigConfig& cfg) {
    return phase_bounds(Interval(p.a()), Interval(p.b()), Interval(p.c()), Interval(p.v(0)), Interval(p.v(1)),
                        Interval(p.v(0) + p.v(1)), cfg);
}

IvMat beta_block(const PhaseBounds& pb) {
    const Interval two(Dec(2));
    Interval cs = pb.c * pb.s01;
    IvMat m(2, 2);
    m(0, 0) = two - pb.a * pb.s0 - cs;
    m(0, 1) = -cs;
    m(1, 0) = -cs;
    m(1, 1) = two - pb.b * pb.s1 - cs;
    return m;
}

IvMat gamma_block(const PhaseBounds& pb) {
    IvMat m(2, 3, Interval(Dec(0)));
    m(0, 0) = pb.c0;
    m(0, 2) = pb.c01;
    m(1, 1) = pb.c1;
    m(1, 2) = pb.c01;
    return m;
}

DecMat beta_at(const ExtPoint& p, const TrigConfig& cfg) {
    Dec s0 = rig_sin(p.v(0), cfg), s1 = rig_sin(p.v(1), cfg), s01 = rig_sin(p.v(0) + p.v(1), cfg);
    Dec cs = p.c() * s01;
    DecMat m(2, 2);
    m(0, 0) = truncate(Dec(2) - p.a() * s0 - cs, cfg.dp);
    m(0, 1) = truncate(-cs, cfg.dp);
    m(1, 0) = m(0, 1);
    m(1, 1) = truncate(Dec(2) - p.b() * s1 - cs, cfg.dp);
    return m;
}

DecMat gamma_at(const ExtPoint& p, const TrigConfig& cfg) {
    DecMat m(2, 3, Dec(0));
    Dec c01 = truncate(rig_cos(p.v(0) + p.v(1), cfg), cfg.dp);
    m(0, 0) = truncate(rig_cos(p.v(0), cfg), cfg.dp);
    m(0, 2) = c01;
    m(1, 1) = truncate(rig_cos(p.v(1), cfg), cfg.dp);
    m(1, 2) = c01;
    return m;
}

namespace {

template <class T, class M>
M assemble_dg(const M& beta, const M& gamma) {
    M dg(7, 7, T(Dec(0)));
    for (int i = 0; i < 3; ++i) dg(i, i) = T(Dec(1));
    dg(3, 5) = T(Dec(1));
    dg(4, 6) = T(Dec(1));
    dg(5, 3) = T(Dec(-1));
    dg(6, 4) = T(Dec(-1));
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 3; ++j) dg(5 + i, j) = gamma(i, j);
        for (int j = 0; j < 2; ++j) dg(5 + i, 5 + j) = beta(i, j);
    }
    return dg;
}

}  // namespace

IvMat dg_abc(const PhaseBounds& pb) { return assemble_dg<Interval>(beta_block(pb), gamma_block(pb)); }

DecMat dg_abc(const ExtPoint& p, const TrigConfig& cfg) {
    return assemble_dg<Dec>(beta_at(p, cfg), gamma_at(p, cfg));
}

DblMat dg_abc(const Vec7& p) {
    DblMat dg(7, 7, 0.0);
    for (int i = 0; i < 3; ++i) dg(i, i) = 1;
    dg(3, 5) = 1;
    dg(4, 6) = 1;
    dg(5, 3) = -1;
    dg(6, 4) = -1;
    double c01 = std::cos(p[5] + p[6]), s01 = std::sin(p[5] + p[6]);
    dg(5, 0) = std::cos(p[5]);
    dg(5, 2) = c01;
    dg(6, 1) = std::cos(p[6]);
    dg(6, 2) = c01;
    dg(5, 5) = 2 - p[0] * std::sin(p[5]) - p[2] * s01;
    dg(5, 6) = -p[2] * s01;
    dg(6, 5) = -p[2] * s01;
    dg(6, 6) = 2 - p[1] * std::sin(p[6]) - p[2] * s01;
    return dg;
}

Beta2 beta_at(double a, double b, double c, double v0, double v1) {
    double s01 = std::sin(v0 + v1);
    return {2 - a * std::sin(v0) - c * s01, -c * s01, 2 - b * std::sin(v1) - c * s01};
}

double lambda_minus(const Beta2& m) {
    double d = m.b00 - m.b11;
    return 0.5 * (m.b00 + m.b11 - std::sqrt(d * d + 4 * m.b01 * m.b01));
}

double lambda_plus(const Beta2& m) {
    double d = m.b00 - m.b11;
    return 0.5 * (m.b00 + m.b11 + std::sqrt(d * d + 4 * m.b01 * m.b01));
}

// ---- laboratory potentials --------------------------------------------------

namespace {

double mod1(double x) { return x - std::floor(x); }

// polynomial pieces in s = x(1-x): g = s^3 - 3/16 s^2, h = s^2
struct Poly {
    double g, dg, ddg, h, dh, ddh;
};

Poly poly_parts(double x0, double x1) {
    double t0 = mod1(x0), t1 = mod1(x1);
    double s0 = t0 * (1 - t0), ds0 = 1 - 2 * t0;
    double s1 = t1 * (1 - t1), ds1 = 1 - 2 * t1;
    double gp = 3 * s0 * s0 - 0.375 * s0;  // dg/ds
    Poly p;
    p.g = s0 * s0 * s0 - 0.1875 * s0 * s0;
    p.dg = gp * ds0;
    p.ddg = (6 * s0 - 0.375) * ds0 * ds0 - 2 * gp;
    p.h = s1 * s1;
    p.dh = 2 * s1 * ds1;
    p.ddh = 2 * ds1 * ds1 - 4 * s1;
    return p;
}

struct Cubic {
    double c, dc, ddc;
};

Cubic ff_cubic(double x) {
    double t = mod1(x);
    if (t <= 0.5) return {1 - 24 * t * t + 32 * t * t * t, -48 * t + 96 * t * t, -48 + 192 * t};
    return {9 - 48 * t + 72 * t * t - 32 * t * t * t, -48 + 144 * t - 96 * t * t, 144 - 192 * t};
}

}  // namespace

double potential(Perturbation kind, double x0, double x1) {
    switch (kind) {
        case Perturbation::trigonometric:
            return -(0.5 * (std::sin(kTwoPi * x0) + std::sin(kTwoPi * x1)) + std::sin(kTwoPi * (x0 + x1))) / kMTrig;
        case Perturbation::polynomial: {
            Poly p = poly_parts(x0, x1);
            return -p.g * p.h / kMPoly;
        }
        case Perturbation::fast_froschle:
            return -0.5 * (0.5 * (ff_cubic(x0).c + ff_cubic(x1).c) + ff_cubic(x0 + x1).c);
    }
    return 0;
}

std::array<double, 2> potential_grad(Perturbation kind, double x0, double x1) {
    switch (kind) {
        case Perturbation::trigonometric: {
            double c01 = std::cos(kTwoPi * (x0 + x1));
            double k = -kTwoPi / kMTrig;
            return {k * (0.5 * std::cos(kTwoPi * x0) + c01), k * (0.5 * std::cos(kTwoPi * x1) + c01)};
        }
        case Perturbation::polynomial: {
            Poly p = poly_parts(x0, x1);
            return {-p.dg * p.h / kMPoly, -p.g * p.dh / kMPoly};
        }
        case Perturbation::fast_froschle: {
            double d01 = ff_cubic(x0 + x1).dc;
            return {-0.5 * (0.5 * ff_cubic(x0).dc + d01), -0.5 * (0.5 * ff_cubic(x1).dc + d01)};
        }
    }
    return {0, 0};
}

std::array<double, 3> potential_hess(Perturbation kind, double x0, double x1) {
    switch (kind) {
        case Perturbation::trigonometric: {
            double s01 = std::sin(kTwoPi * (x0 + x1));
            double k = kTwoPi * kTwoPi / kMTrig;
            return {k * (0.5 * std::sin(kTwoPi * x0) + s01), k * s01, k * (0.5 * std::sin(kTwoPi * x1) + s01)};
        }
        case Perturbation::polynomial: {
            Poly p = poly_parts(x0, x1);
            return {-p.ddg * p.h / kMPoly, -p.dg * p.dh / kMPoly, -p.g * p.ddh / kMPoly};
        }
        case Perturbation::fast_froschle: {
            double d01 = ff_cubic(x0 + x1).ddc;
            return {-0.5 * (0.5 * ff_cubic(x0).ddc + d01), -0.5 * d01, -0.5 * (0.5 * ff_cubic(x1).ddc + d01)};
        }
    }
    return {0, 0, 0};
}

double action_h(const std::array<double, 2>& x, const std::array<double, 2>& xp, Perturbation kind, double eps) {
    double d0 = xp[0] - x[0], d1 = xp[1] - x[1];
    return 0.5 * (d0 * d0 + d1 * d1) - eps * potential(kind, x[0], x[1]);
}

std::array<double, 2> action_h_dx(const std::array<double, 2>& x, const std::array<double, 2>& xp, Perturbation kind,
                                  double eps) {
    auto g = potential_grad(kind, x[0], x[1]);
    return {-(xp[0] - x[0]) - eps * g[0], -(xp[1] - x[1]) - eps * g[1]};
}

std::array<double, 2> action_h_dxp(const std::array<double, 2>& x, const std::array<double, 2>& xp) {
    return {xp[0] - x[0], xp[1] - x[1]};
}

}  // namespace converse
