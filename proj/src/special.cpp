#include "special.hpp"

#include <algorithm>
#include <map>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace converse {

namespace {

const char* const kPiText =
    "3.1415926535897932384626433832795028841971693993751058209749445923078164062862089986280348253421170679"
    "8214808651328230664709384460955058223172535940812848111745028410270193852110555964462294895493038196";

// n! as a Dec
Dec factorial(long n) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
    return Dec::parse(f.get_str());
}

// (hi)! / (lo)! for lo <= hi
Dec falling(long hi, long lo) {
    mpz_class f = 1;
    for (long k = lo + 1; k <= hi; ++k) f *= k;
    return Dec::parse(f.get_str());
}

// Signed Horner coefficients (-1)^(n-j) (top)!/(top-2j)! for j = 1..n, and top!.
struct Horner {
    std::vector<Dec> coef;
    Dec top_fact;
};

const Horner& horner_table(long n, bool odd) {
    thread_local std::map<std::pair<long, bool>, Horner> cache;
    auto key = std::make_pair(n, odd);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    Horner h;
    long top = odd ? 2 * n + 1 : 2 * n;
    h.coef.resize(static_cast<std::size_t>(n) + 1);
    for (long j = 1; j <= n; ++j) {
        Dec c = falling(top, top - 2 * j);
        h.coef[static_cast<std::size_t>(j)] = ((n - j) % 2) ? -c : c;
    }
    h.top_fact = factorial(top);
    return cache.emplace(key, std::move(h)).first->second;
}

struct Reduced {
    Dec r;      // |r| <= pi/4 (+ round-off)
    long quad;  // theta = r + quad*pi/2, quad in 0..3
};

Reduced reduce(const Dec& theta, const TrigConfig& cfg) {
    const Dec& hp = stored_half_pi();
    Dec t = truncate(theta, cfg.trig_dp);
    Dec q = divide(t, hp, cfg.trig_dp);
    // round to nearest integer
    Dec k = floor(q + Dec::parse("0.5"));
    if (k.int_digits() > kPiDigits - cfg.dp - 5)
        throw Error(Errc::precision_loss, "angle too large for the stored pi: " + theta.sci(6));
    Dec r = truncate(t - k * hp, cfg.trig_dp);
    Dec k4 = k - Dec(4) * floor(divide(k, Dec(4), 3));
    long quad = static_cast<long>(k4.to_double() + 0.5) % 4;
    return {r, quad};
}

void check_reduced(const Dec& theta, const TrigConfig& cfg) {
    // reduction leaves r within a few units of 10^-trig_dp of the quarter
    static const Dec quarter_pi = divide(stored_pi(), Dec(4), 60);
    if (theta.sign() < 0 || quarter_pi + Dec::pow10(-std::min(30L, cfg.trig_dp - 1)) < theta)
        throw Error(Errc::domain, "reduced argument outside [0, pi/4]: " + theta.sci(6));
}

}  // namespace

const Dec& stored_pi() {
    static const Dec pi = truncate(Dec::parse(kPiText), kPiDigits);
    return pi;
}

const Dec& stored_half_pi() {
    static const Dec hp = divide(stored_pi(), Dec(2), kPiDigits + 1);
    return hp;
}

TrigConfig set_trig_dp(long dp) {
    if (dp < 1) throw Error(Errc::invalid_argument, "trig dp must be >= 1");
    TrigConfig cfg;
    cfg.dp = dp;
    Dec bound = Dec::pow10(dp + 2);
    long n = 0;
    while (factorial(2 * n + 3) <= bound) ++n;
    cfg.terms = n;
    long digits_n = 1;
    for (long t = n; t >= 10; t /= 10) ++digits_n;
    // N * 10^-trig_dp <= 10^-(dp+2), one spare digit for the reduction step
    cfg.trig_dp = dp + 2 + digits_n + 1;
    return cfg;
}

// sin t = t * S_N / (2N+1)!,  S_0 = (-1)^N,
// S_j = [t^2 S_{j-1} + (-1)^(N-j) (2N+1)!/(2(N-j)+1)!]_trig_dp
Dec reduced_sin(const Dec& theta, const TrigConfig& cfg) {
    check_reduced(theta, cfg);
    if (theta.is_zero()) return Dec(0);
    const long n = cfg.terms;
    Dec t2 = truncate(theta * theta, cfg.trig_dp);
    const Horner& h = horner_table(n, true);
    Dec s = (n % 2 == 0) ? Dec(1) : Dec(-1);
    for (long j = 1; j <= n; ++j) s = truncate(t2 * s + h.coef[static_cast<std::size_t>(j)], cfg.trig_dp);
    return divide(theta * s, h.top_fact, cfg.trig_dp);
}

// Cosine mirrors the sine ledger; the series starts at the constant term 1,
// so the recursion runs over even factorials and there is no leading t.
Dec reduced_cos(const Dec& theta, const TrigConfig& cfg) {
    check_reduced(theta, cfg);
    const long n = cfg.terms + 1;
    Dec t2 = truncate(theta * theta, cfg.trig_dp);
    const Horner& h = horner_table(n, false);
    Dec s = (n % 2 == 0) ? Dec(1) : Dec(-1);
    for (long j = 1; j <= n; ++j) s = truncate(t2 * s + h.coef[static_cast<std::size_t>(j)], cfg.trig_dp);
    return divide(s, h.top_fact, cfg.trig_dp);
}

namespace {

Dec signed_sin(const Dec& r, const TrigConfig& cfg) {
    return r.sign() < 0 ? -reduced_sin(-r, cfg) : reduced_sin(r, cfg);
}

Dec abs_cos(const Dec& r, const TrigConfig& cfg) { return reduced_cos(r.abs(), cfg); }

}  // namespace

Dec rig_sin(const Dec& theta, const TrigConfig& cfg) {
    Reduced red = reduce(theta, cfg);
    switch (red.quad) {
        case 0: return signed_sin(red.r, cfg);
        case 1: return abs_cos(red.r, cfg);
        case 2: return -signed_sin(red.r, cfg);
        default: return -abs_cos(red.r, cfg);
    }
}

Dec rig_cos(const Dec& theta, const TrigConfig& cfg) {
    Reduced red = reduce(theta, cfg);
    switch (red.quad) {
        case 0: return abs_cos(red.r, cfg);
        case 1: return -signed_sin(red.r, cfg);
        case 2: return -abs_cos(red.r, cfg);
        default: return signed_sin(red.r, cfg);
    }
}

// Newton from y_0 = x, every step truncated to dp+2 places; stop once the
// decrease drops below 10^-(dp+1). The first step from x < 1 moves up, so
// the stopping test waits for the descending phase.
Dec rig_sqrt(const Dec& x, long dp) {
    if (x.sign() < 0) throw Error(Errc::domain, "square root of a negative number");
    if (x.is_zero()) return Dec(0);
    if (x < Dec::pow10(-2 * dp)) return Dec(0);  // sqrt(x) < 10^-dp
    const long w = dp + 2;
    const Dec half = Dec::parse("0.5");
    const Dec stop = Dec::pow10(-(dp + 1));
    Dec y = x;
    for (int it = 0; it < 10000; ++it) {
        Dec next = truncate(half * (y + divide(x, y, w)), w);
        if (it >= 1 && next <= y && y - next < stop) return next;
        y = next;
    }
    throw Error(Errc::domain, "square root iteration did not settle");
}

Interval bd_sqrt(const Dec& x, long dp) {
    Dec r = rig_sqrt(x, dp);
    if (r * r == x) return {r, r};
    Dec e = Dec::pow10(-dp);
    Dec lo = r - e;
    if (lo.sign() < 0) lo = Dec(0);
    return {lo, r + e};
}

namespace {

// n*pi/2 might lie in x (pi known to +-10^-kPiDigits).
bool may_contain_multiple(const Interval& x, long n) {
    Dec err = Dec::pow10(-kPiDigits + 1) * Dec(n < 0 ? -n : n);
    Dec point = stored_half_pi() * Dec(n);
    return point - err <= x.ub && x.lb <= point + err;
}

// Critical points of sin are odd multiples of pi/2, of cos even ones.
Interval bd_trig(const Interval& x, const TrigConfig& cfg, bool cosine) {
    const Dec one(1);
    const Interval full(-one, one);
    if (Dec(6) < x.width()) return full;  // wider than 2*pi minus a bit: be blunt
    Dec lo_v = cosine ? rig_cos(x.lb, cfg) : rig_sin(x.lb, cfg);
    Dec hi_v = cosine ? rig_cos(x.ub, cfg) : rig_sin(x.ub, cfg);
    Dec e = Dec::pow10(-cfg.dp);
    Dec lo = min(lo_v, hi_v) - e;
    Dec hi = max(lo_v, hi_v) + e;
    const Dec& hp = stored_half_pi();
    long n0 = static_cast<long>(floor(divide(x.lb, hp, 3)).to_double()) - 1;
    long n1 = static_cast<long>(ceil(divide(x.ub, hp, 3)).to_double()) + 1;
    for (long n = n0; n <= n1; ++n) {
        long m = ((n % 4) + 4) % 4;
        bool is_max = cosine ? m == 0 : m == 1;
        bool is_min = cosine ? m == 2 : m == 3;
        if (!is_max && !is_min) continue;
        if (!may_contain_multiple(x, n)) continue;
        if (is_max) hi = one;
        if (is_min) lo = -one;
    }
    if (lo < -one) lo = -one;
    if (one < hi) hi = one;
    return {lo, hi};
}

}  // namespace

Interval bd_sin(const Interval& x, const TrigConfig& cfg) { return bd_trig(x, cfg, false); }
Interval bd_cos(const Interval& x, const TrigConfig& cfg) { return bd_trig(x, cfg, true); }

}  // namespace converse
