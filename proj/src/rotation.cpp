#include "rotation.hpp"

#include <cmath>
#include <limits>

#include "errors.hpp"

namespace converse {

std::vector<long> cfrac(double omega, int n, double tol) {
    std::vector<long> out;
    double r = omega;
    for (int i = 0; i <= n; ++i) {
        double a = std::floor(r);
        out.push_back(static_cast<long>(a));
        double frac = r - a;
        if (frac < tol) break;
        r = 1 / frac;
    }
    return out;
}

namespace {

std::vector<long> euclid(mpz_class p, mpz_class q, int n) {
    std::vector<long> out;
    while (q != 0 && static_cast<int>(out.size()) <= n) {
        mpz_class a;
        mpz_fdiv_q(a.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
        if (!a.fits_slong_p()) throw Error(Errc::domain, "partial quotient does not fit a long");
        out.push_back(a.get_si());
        mpz_class r = p - a * q;
        p = q;
        q = r;
    }
    return out;
}

}  // namespace

std::vector<long> cfrac(const Dec& omega, int n) {
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, static_cast<unsigned long>(omega.scale()));
    return euclid(omega.mantissa(), den, n);
}

std::vector<long> cfrac_rational(long p, long q) {
    if (q <= 0) throw Error(Errc::invalid_argument, "denominator must be positive");
    return euclid(p, q, std::numeric_limits<int>::max() - 1);
}

std::vector<std::pair<long, long>> convergents(const std::vector<long>& a) {
    std::vector<std::pair<long, long>> out;
    long p0 = 1, q0 = 0, p1 = 0, q1 = 1;  // p_{-1}/q_{-1}, p_{-2}/q_{-2}
    for (long ai : a) {
        long p = ai * p0 + p1, q = ai * q0 + q1;
        out.emplace_back(p, q);
        p1 = p0;
        q1 = q0;
        p0 = p;
        q0 = q;
    }
    return out;
}

std::vector<FareyStep> farey_approx(double omega, int levels) {
    if (!(omega > 0 && omega < 1)) throw Error(Errc::domain, "Farey approximation needs 0 < omega < 1");
    long lp = 0, lq = 1, rp = 1, rq = 1;
    std::string addr;
    std::vector<FareyStep> out;
    for (int lev = 0; lev <= levels; ++lev) {
        long mp = lp + rp, mq = lq + rq;
        out.push_back({mp, mq, addr});
        if (omega * static_cast<double>(mq) <= static_cast<double>(mp)) {
            rp = mp;
            rq = mq;
            addr.push_back('l');
        } else {
            lp = mp;
            lq = mq;
            addr.push_back('r');
        }
    }
    return out;
}

namespace {

Triple add(const Triple& x, const Triple& y) { return {x[0] + y[0], x[1] + y[1], x[2] + y[2]}; }

// sign of the cross product (m - c) x (t - c) in the plane of p/q points
double side(const Triple& c, const Triple& m, double t0, double t1) {
    long double cx = static_cast<long double>(c[0]) / c[2], cy = static_cast<long double>(c[1]) / c[2];
    long double mx = static_cast<long double>(m[0]) / m[2], my = static_cast<long double>(m[1]) / m[2];
    return static_cast<double>((mx - cx) * (t1 - cy) - (my - cy) * (t0 - cx));
}

double side(const Triple& c, const Triple& m, const Triple& t) {
    return side(c, m, static_cast<double>(t[0]) / static_cast<double>(t[2]),
                static_cast<double>(t[1]) / static_cast<double>(t[2]));
}

}  // namespace

std::vector<TriangleStep> farey_triangle_approx(double w0, double w1, int levels) {
    if (!(w0 >= 0 && w0 <= 1 && w1 >= 0 && w1 <= 1)) throw Error(Errc::domain, "target must lie in the unit square");
    bool flipped = w0 + w1 < 1;
    if (flipped) {
        w0 = 1 - w0;
        w1 = 1 - w1;
    }
    FareyTriangle t{{0, 1, 1}, {1, 0, 1}, {1, 1, 1}};
    std::string addr;
    std::vector<TriangleStep> out;
    for (int lev = 0; lev <= levels; ++lev) {
        Triple m = add(t.a, t.b);
        Triple shown = flipped ? Triple{m[2] - m[0], m[2] - m[1], m[2]} : m;
        out.push_back({shown, addr, t});
        double s_t = side(t.c, m, w0, w1), s_a = side(t.c, m, t.a);
        bool keeps_a = s_t != 0 && (s_t > 0) == (s_a > 0);
        if (keeps_a) {
            t = {t.c, t.a, m};
            addr.push_back('r');
        } else {
            t = {t.c, t.b, m};
            addr.push_back('l');
        }
    }
    return out;
}

Dec plastic_number(long dp) {
    const long w = dp + 10;
    Dec tau = Dec::from_double(1.324717957244746);
    for (int it = 0; it < 20; ++it) {
        Dec f = tau * tau * tau - tau - Dec(1);
        Dec df = Dec(3) * tau * tau - Dec(1);
        Dec next = truncate(tau - divide(f, df, w), w);
        if (next == tau) break;
        tau = next;
    }
    return truncate(tau, dp);
}

std::pair<Dec, Dec> spiral_mean(long dp) {
    Dec tau = plastic_number(dp + 5);
    Dec inv = divide(Dec(1), tau, dp + 5);
    return {truncate(inv * inv, dp), truncate(inv, dp)};
}

}  // namespace converse
