#include <doctest.h>

#include <cmath>
#include <random>

#include "errors.hpp"
#include "oracles.hpp"
#include "special.hpp"

using namespace converse;

namespace {

Dec fact(long n) {
    Dec f(1);
    for (long k = 2; k <= n; ++k) f *= Dec(k);
    return f;
}

Dec random_angle(std::mt19937_64& rng, double lo, double hi) {
    std::uniform_real_distribution<double> u(lo, hi);
    std::uniform_int_distribution<long> tail(0, 999999999);
    // a double plus extra random digits, so arguments carry ~30 places
    return Dec::from_double(u(rng)) + Dec(tail(rng)).shifted(-30);
}

}  // namespace

TEST_CASE("stored pi agrees with Machin") {
    Dec pi = oracle::machin_pi(110);
    CHECK((stored_pi() - pi).abs() < Dec::pow10(-kPiDigits));
}

TEST_CASE("set_trig_dp picks the least order") {
    TrigConfig c35 = set_trig_dp(35);
    CHECK(fact(2 * c35.terms + 3) > Dec::pow10(37));
    CHECK(fact(2 * c35.terms + 1) <= Dec::pow10(37));
    CHECK(set_trig_dp(1).terms == 2);
    for (long dp = 1; dp <= 60; ++dp) {
        TrigConfig c = set_trig_dp(dp);
        CHECK(Dec(1) < fact(2 * c.terms + 3) * Dec::pow10(-(dp + 2)));
        CHECK(Dec(c.terms) * Dec::pow10(-c.trig_dp) <= Dec::pow10(-(dp + 2)));
    }
    CHECK_THROWS_AS(set_trig_dp(0), Error);
}

TEST_CASE("reduced sine and cosine") {
    TrigConfig cfg = set_trig_dp(35);
    CHECK(reduced_sin(Dec(0), cfg).is_zero());
    CHECK((reduced_cos(Dec(0), cfg) - Dec(1)).abs() <= Dec::pow10(-35));
    Dec pi6 = divide(stored_pi(), Dec(6), 60);
    CHECK((reduced_sin(pi6, cfg) - Dec::parse("0.5")).abs() <= Dec::pow10(-35));
    CHECK_THROWS_AS(reduced_sin(Dec(1), cfg), Error);
    CHECK_THROWS_AS(reduced_sin(Dec(-1), cfg), Error);
    std::mt19937_64 rng(31);
    Dec quarter = divide(stored_pi(), Dec(4), 60);
    for (int i = 0; i < 100; ++i) {
        Dec t = truncate(random_angle(rng, 0, 0.785), cfg.trig_dp);
        if (quarter < t) continue;
        CHECK((reduced_sin(t, cfg) - oracle::series_trig(t, false, 55)).abs() <= Dec::pow10(-35));
        CHECK((reduced_cos(t, cfg) - oracle::series_trig(t, true, 55)).abs() <= Dec::pow10(-35));
    }
}

TEST_CASE("rig_sin / rig_cos") {
    TrigConfig cfg = set_trig_dp(35);
    CHECK(rig_sin(stored_pi(), cfg).abs() <= Dec::pow10(-35));
    std::mt19937_64 rng(37);
    for (int i = 0; i < 200; ++i) {
        Dec t = random_angle(rng, -10, 10);
        CHECK(rig_cos(-t, cfg) == rig_cos(t, cfg));
        Dec s = rig_sin(t, cfg), c = rig_cos(t, cfg);
        CHECK((s * s + c * c - Dec(1)).abs() <= Dec(4) * Dec::pow10(-35));
    }
    // angles just either side of an odd multiple of pi/4, where the nearest quadrant is a tie
    for (long m : {1L, 3L, 5L, 7L, 637L, -1273L}) {
        Dec odd_quarter = divide(stored_pi() * Dec(m), Dec(4), 60);
        for (const char* off : {"1e-4", "-1e-4", "1e-20", "-1e-20"}) {
            Dec t = odd_quarter + Dec::parse(off);
            CHECK((rig_sin(t, cfg) - oracle::series_trig(t, false, 60)).abs() <= Dec::pow10(-35));
        }
    }
    // far beyond what the stored pi supports
    CHECK_THROWS_AS(rig_sin(Dec::pow10(80), cfg), Error);
    try {
        rig_sin(Dec::pow10(80), cfg);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::precision_loss);
    }
}

TEST_CASE("rig_sqrt") {
    CHECK((rig_sqrt(Dec(4), 35) - Dec(2)).abs() <= Dec::pow10(-35));
    CHECK(rig_sqrt(Dec(0), 35).is_zero());
    CHECK_THROWS_AS(rig_sqrt(Dec(-1), 35), Error);
    Dec ref = Dec::parse(oracle::digit_sqrt(2, 40));
    CHECK((rig_sqrt(Dec(2), 35) - ref).abs() <= Dec::pow10(-35));
    CHECK(truncate(rig_sqrt(Dec(2), 35), 35) == truncate(ref, 35));
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> u(0, 100);
    for (int i = 0; i < 100; ++i) {
        Dec x = Dec::from_double(u(rng));
        Dec r = rig_sqrt(x, 30);
        Dec slack = Dec(3) * Dec::pow10(-30) * (Dec(1) + r);
        CHECK(x - slack <= r * r);
        CHECK(r * r <= x + slack);
        Interval b = bd_sqrt(x, 30);
        CHECK(b.lb * b.lb <= x);
        CHECK(x <= b.ub * b.ub);
    }
    CHECK(rig_sqrt(Dec::parse("1e-80"), 35).is_zero());
}

TEST_CASE("bd_sin and bd_cos contain the range") {
    TrigConfig cfg = set_trig_dp(35);
    Interval r = bd_sin(Interval(Dec(0), stored_pi()), cfg);
    CHECK(r.ub == Dec(1));
    CHECK(r.lb <= Dec(0));
    CHECK(Dec(0) - r.lb <= Dec::pow10(-35) * Dec(2));
    Dec t = Dec::parse("0.7");
    Interval pt = bd_sin(Interval(t), cfg);
    CHECK(pt.width() <= Dec(2) * Dec::pow10(-35));
    Dec q = divide(stored_pi(), Dec(4), 50);
    Interval mid = bd_sin(Interval(q, Dec(3) * q), cfg);
    CHECK(mid.ub == Dec(1));
    CHECK(mid.contains(Dec::parse("0.70710678118654752440084436210484903928")));

    std::mt19937_64 rng(43);
    std::uniform_real_distribution<double> u(-20, 20), w(0, 4), s(0, 1);
    for (int i = 0; i < 300; ++i) {
        double lo = u(rng), hi = lo + w(rng);
        Interval x(Dec::from_double(lo), Dec::from_double(hi));
        Interval bs = bd_sin(x, cfg), bc = bd_cos(x, cfg);
        double bsl = bs.lb.to_double(), bsu = bs.ub.to_double();
        double bcl = bc.lb.to_double(), bcu = bc.ub.to_double();
        // endpoints are the shortest decimals of lo/hi, within half an ulp (< 2e-15)
        const double tol = 1e-14;
        bool ok = true;
        for (int k = 0; k <= 200; ++k) {
            double th = lo + (hi - lo) * k / 200.0;
            ok = ok && std::sin(th) >= bsl - tol && std::sin(th) <= bsu + tol;
            ok = ok && std::cos(th) >= bcl - tol && std::cos(th) <= bcu + tol;
        }
        CHECK(ok);
        // monotone under widening
        Interval wider = x.widened(Dec::parse("0.3"));
        CHECK(bd_sin(wider, cfg).contains(bs));
        CHECK(bd_cos(wider, cfg).contains(bc));
    }
}
