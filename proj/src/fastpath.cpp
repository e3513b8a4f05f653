#include "fastpath.hpp"

#include <algorithm>
#include <cmath>

namespace converse {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Rng {
    double lo = 0, hi = 0;
};

Rng operator+(Rng x, Rng y) { return {x.lo + y.lo, x.hi + y.hi}; }
Rng operator-(Rng x, Rng y) { return {x.lo - y.hi, x.hi - y.lo}; }
Rng operator*(Rng x, Rng y) {
    double p[4] = {x.lo * y.lo, x.lo * y.hi, x.hi * y.lo, x.hi * y.hi};
    return {*std::min_element(p, p + 4), *std::max_element(p, p + 4)};
}
Rng square(Rng x) {
    Rng r = x * x;
    if (x.lo <= 0 && x.hi >= 0) r.lo = 0;
    return r;
}
double mag(Rng x) { return std::max(std::fabs(x.lo), std::fabs(x.hi)); }

// does phase + 2 pi n lie in x for some integer n
bool hits(Rng x, double phase) {
    double n = std::ceil((x.lo - phase) / (2 * kPi));
    return phase + 2 * kPi * n <= x.hi;
}

Rng sin_range(Rng x) {
    if (x.hi - x.lo >= 2 * kPi) return {-1, 1};
    double a = std::sin(x.lo), b = std::sin(x.hi);
    Rng r{std::min(a, b), std::max(a, b)};
    if (hits(x, kPi / 2)) r.hi = 1;
    if (hits(x, 3 * kPi / 2)) r.lo = -1;
    return r;
}
Rng cos_range(Rng x) { return sin_range({x.lo + kPi / 2, x.hi + kPi / 2}); }

struct FastSet {
    Rng a, b, c, s0, s1, s01, c0, c1, c01;
};

FastSet fast_set(const FastPrism& s) {
    auto coord = [&](int i) {
        double r = s.p.row(i).cwiseAbs().sum();
        return Rng{s.c[static_cast<std::size_t>(i)] - r, s.c[static_cast<std::size_t>(i)] + r};
    };
    double r01 = (s.p.row(5) + s.p.row(6)).cwiseAbs().sum();
    Rng v01{s.c[5] + s.c[6] - r01, s.c[5] + s.c[6] + r01};
    Rng v0 = coord(5), v1 = coord(6);
    return {coord(0), coord(1), coord(2), sin_range(v0), sin_range(v1), sin_range(v01),
            cos_range(v0), cos_range(v1), cos_range(v01)};
}

struct FastBeta {
    double ub_trace, ub_lam_minus, ub_lam_plus;
};

FastBeta fast_beta(const FastSet& f) {
    Rng cs = f.c * f.s01, as = f.a * f.s0, bs = f.b * f.s1;
    Rng tr = Rng{4, 4} - as - bs - cs - cs;
    Rng disc = square(bs - as) + Rng{4, 4} * square(cs);
    double r_lo = std::sqrt(std::max(0.0, disc.lo)), r_hi = std::sqrt(std::max(0.0, disc.hi));
    return {tr.hi, 0.5 * (tr.hi - r_lo), 0.5 * (tr.hi + r_hi)};
}

FastBeta point_beta(double a, double b, double c, double v0, double v1) {
    Beta2 m = beta_at(a, b, c, v0, v1);
    return {m.b00 + m.b11, lambda_minus(m), lambda_plus(m)};
}

struct StepResult {
    FastSuite next;
    bool success, vacuous;
};

StepResult suite_step(const FastBeta& bb, const FastSuite& prev, const FastCones& gb) {
    double tr_next = bb.ub_trace - 4 / prev.ub_trace;
    double best = gb.lam_max;
    bool improved = false;
    double cand[3] = {0.5 * tr_next, bb.ub_lam_plus - 1 / prev.ub_lam, 1e300};
    double den = prev.ub_trace - gb.lam_min;
    if (den > 0) cand[2] = bb.ub_lam_minus - 1 / den;
    for (double v : cand)
        if (v < best) {
            best = v;
            improved = true;
        }
    StepResult r;
    r.next = {best, std::min(tr_next, gb.tr_max)};
    r.success = r.next.ub_lam < gb.lam_min || r.next.ub_trace < gb.tr_min;
    r.vacuous = !improved && tr_next >= gb.tr_max;
    return r;
}

Mat7 dg_at(const Vec7& x) {
    DblMat d = dg_abc(x);
    Mat7 m;
    for (int i = 0; i < 7; ++i)
        for (int j = 0; j < 7; ++j) m(i, j) = d(i, j);
    return m;
}

double rowsum(const Eigen::MatrixXd& m, int i) { return m.row(i).cwiseAbs().sum(); }
double matsum(const Eigen::MatrixXd& m) { return m.cwiseAbs().sum(); }

// Interval-valued beta and gamma over the set, as ranges
struct Blocks {
    Rng beta[2][2], gamma[2][3];
};

Blocks blocks(const FastSet& f) {
    Blocks b;
    Rng cs = f.c * f.s01;
    b.beta[0][0] = Rng{2, 2} - f.a * f.s0 - cs;
    b.beta[0][1] = b.beta[1][0] = Rng{0, 0} - cs;
    b.beta[1][1] = Rng{2, 2} - f.b * f.s1 - cs;
    b.gamma[0][0] = f.c0;
    b.gamma[0][1] = {0, 0};
    b.gamma[0][2] = f.c01;
    b.gamma[1][0] = {0, 0};
    b.gamma[1][1] = f.c1;
    b.gamma[1][2] = f.c01;
    return b;
}

// sum of |range - point| bounds over a block
template <int R, int C>
double diff_sum(const Rng (&r)[R][C], const Eigen::MatrixXd& pt) {
    double s = 0;
    for (int i = 0; i < R; ++i)
        for (int j = 0; j < C; ++j) s += std::max(std::fabs(r[i][j].lo - pt(i, j)), std::fabs(r[i][j].hi - pt(i, j)));
    return s;
}

FastPrism fast_image(const FastPrism& s, const FastSet& set, bool fixed_form, double min_angle) {
    const Mat7& P = s.p;
    Mat7 dgc = dg_at(s.c);
    Eigen::MatrixXd beta_c = dgc.block(5, 5, 2, 2), gamma_c = dgc.block(5, 0, 2, 3);
    Blocks bl = blocks(set);
    double ms_g = diff_sum(bl.gamma, gamma_c), ms_b = diff_sum(bl.beta, beta_c);
    double ms_beta = 0;
    for (auto& row : bl.beta)
        for (auto& e : row) ms_beta += mag(e);
    Eigen::MatrixXd Ppp = P.block(0, 0, 3, 3), Pup = P.block(3, 0, 2, 3), Pvp = P.block(5, 0, 2, 3);
    Eigen::MatrixXd Puu = P.block(3, 3, 2, 2), Puv = P.block(3, 5, 2, 2), Pvu = P.block(5, 3, 2, 2),
                    Pvv = P.block(5, 5, 2, 2);
    Mat7 A = Mat7::Zero();
    A.block(0, 0, 3, 3) = Ppp;
    A.block(3, 0, 2, 3) = Pvp;
    A.block(5, 0, 2, 3) = gamma_c * Ppp - Pup + beta_c * Pvp;
    std::array<double, 7> w{1, 1, 1, 1, 1, 1, 1};
    if (fixed_form) {
        Eigen::MatrixXd Auv = Pvu + Pvv;
        A.block(3, 5, 2, 2) = Auv;
        A.block(5, 3, 2, 2) = beta_c * Auv;
        A.block(5, 5, 2, 2) = beta_c * Pvv - Puv;
        Eigen::MatrixXd inv_vu = Eigen::MatrixXd(A.block(5, 3, 2, 2)).inverse();
        double bracket = ms_g * matsum(Ppp) + ms_beta * matsum(Pvu) + ms_b * (matsum(Pvp) + matsum(Pvv));
        for (int j = 0; j < 2; ++j) w[static_cast<std::size_t>(3 + j)] = rowsum(inv_vu, j) * bracket;
    } else {
        A.block(3, 3, 2, 2) = Pvu;
        A.block(3, 5, 2, 2) = Pvv;
        A.block(5, 3, 2, 2) = beta_c * Pvu - Puu;
        A.block(5, 5, 2, 2) = beta_c * Pvv - Puv;
        ColumnBlock col;
        for (std::size_t j = 0; j < 4; ++j)
            for (std::size_t i = 0; i < 4; ++i) col[j][i] = A(3 + static_cast<int>(i), 3 + static_cast<int>(j));
        std::array<bool, 4> changed{};
        separate_columns(col, min_angle, changed);
        for (std::size_t j = 0; j < 4; ++j)
            for (std::size_t i = 0; i < 4; ++i) A(3 + static_cast<int>(i), 3 + static_cast<int>(j)) = col[j][i];
        Eigen::Matrix4d B = Eigen::Matrix4d(A.block(3, 3, 4, 4)).inverse();
        // X: rows u of DG P are P_v, rows v are beta P_v - P_u (phase columns)
        Rng X[4][4];
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                X[i][j] = {Pvu(i, j), Pvu(i, j)};
                X[i][2 + j] = {Pvv(i, j), Pvv(i, j)};
                Rng su{0, 0}, sv{0, 0};
                for (int k = 0; k < 2; ++k) {
                    su = su + bl.beta[i][k] * Rng{Pvu(k, j), Pvu(k, j)};
                    sv = sv + bl.beta[i][k] * Rng{Pvv(k, j), Pvv(k, j)};
                }
                X[2 + i][j] = su - Rng{Puu(i, j), Puu(i, j)};
                X[2 + i][2 + j] = sv - Rng{Puv(i, j), Puv(i, j)};
            }
        double param = ms_g * matsum(Ppp) + ms_b * matsum(Pvp);
        for (int j = 0; j < 4; ++j) {
            double row = 0;
            for (int l = 0; l < 4; ++l) {
                Rng acc{0, 0};
                for (int k = 0; k < 4; ++k) acc = acc + Rng{B(j, k), B(j, k)} * X[k][l];
                row += mag(acc);
            }
            w[static_cast<std::size_t>(3 + j)] = (std::fabs(B(j, 2)) + std::fabs(B(j, 3))) * param + row;
        }
    }
    FastPrism out;
    out.c = g_abc(s.c);
    for (int j = 0; j < 7; ++j) out.p.col(j) = A.col(j) * w[static_cast<std::size_t>(j)];
    return out;
}

FastSuite start(const FastCones& gb) { return {gb.lam_max, gb.tr_max}; }

}  // namespace

FastPrism to_fast(const Prism& s) {
    FastPrism f;
    for (std::size_t i = 0; i < 7; ++i) f.c[i] = s.center.x[i].to_double();
    for (int i = 0; i < 7; ++i)
        for (int j = 0; j < 7; ++j) f.p(i, j) = s.p(i, j).to_double();
    return f;
}

FastCones to_fast(const GlobalBounds& gb) {
    return {gb.tr_min.to_double(), gb.tr_max.to_double(), gb.lam_min.to_double(), gb.lam_max.to_double()};
}

FastOutcome fast_orbit_test(const FastPrism& s, double theta_star, const FastCones& gb, int budget) {
    FastOutcome out;
    Vec7 x = s.c;
    x[3] = x[4] = theta_star;
    StepResult r = suite_step(point_beta(x[0], x[1], x[2], theta_star, theta_star), start(gb), gb);
    if (r.success) {
        out.success = true;
        return out;
    }
    FastSuite st = r.next;
    for (int k = 0; k < budget; ++k) {
        r = suite_step(point_beta(x[0], x[1], x[2], x[5], x[6]), st, gb);
        out.iterations = k + 1;
        if (r.success) {
            out.success = true;
            return out;
        }
        st = r.next;
        x = g_abc(x);
    }
    return out;
}

FastOutcome fast_prism_test(const FastPrism& s0, double theta_star, const FastCones& gb, int budget,
                            double min_angle) {
    FastOutcome out;
    // step 0: beta at x* over the parameter box
    FastPrism at_star = s0;
    at_star.c[5] = at_star.c[6] = theta_star;
    at_star.p.row(5).setZero();
    at_star.p.row(6).setZero();
    StepResult r = suite_step(fast_beta(fast_set(at_star)), start(gb), gb);
    if (r.success) {
        out.success = true;
        return out;
    }
    FastSuite st = r.next;
    FastPrism s = s0;
    for (int k = 0; k < budget; ++k) {
        FastSet set = fast_set(s);
        r = suite_step(fast_beta(set), st, gb);
        out.iterations = k + 1;
        if (r.success) {
            out.success = true;
            return out;
        }
        if (r.vacuous || !std::isfinite(r.next.ub_lam)) return out;
        st = r.next;
        s = fast_image(s, set, k == 0, min_angle);
        if (!s.p.allFinite()) return out;
    }
    return out;
}

char choose_cut_axis(const FastPrism& s, int steps) {
    Mat7 m = s.p;
    Vec7 x = s.c;
    for (int k = 0; k < steps; ++k) {
        m = dg_at(x) * m;
        x = g_abc(x);
    }
    auto spread = [&](int col) { return std::fabs(m(5, col)) + std::fabs(m(6, col)); };
    const char axes[5] = {'0', '1', 'a', 'b', 'c'};
    const int cols[5] = {5, 6, 0, 1, 2};
    int best = 0;
    for (int k = 1; k < 5; ++k)
        if (spread(cols[k]) > spread(cols[best])) best = k;
    return axes[best];
}

}  // namespace converse
