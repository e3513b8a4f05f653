#include "dec.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <vector>

#include "errors.hpp"

namespace converse {

namespace {

constexpr long kCachedPowers = 1024;

const std::vector<mpz_class>& power_table() {
    static const std::vector<mpz_class> table = [] {
        std::vector<mpz_class> t(kCachedPowers);
        t[0] = 1;
        for (long i = 1; i < kCachedPowers; ++i) t[i] = t[i - 1] * 10;
        return t;
    }();
    return table;
}

}  // namespace

const mpz_class& Dec::ten_to(long e) {
    const auto& table = power_table();
    if (e < kCachedPowers) return table[e];
    thread_local mpz_class big;
    mpz_ui_pow_ui(big.get_mpz_t(), 10, static_cast<unsigned long>(e));
    return big;
}

void Dec::normalize() {
    if (sgn(mant_) == 0) {
        scale_ = 0;
        return;
    }
    while (mpz_divisible_ui_p(mant_.get_mpz_t(), 10)) {
        mpz_divexact_ui(mant_.get_mpz_t(), mant_.get_mpz_t(), 10);
        --scale_;
    }
}

Dec Dec::parse(std::string_view text) {
    auto fail = [&] { return Error(Errc::parse, "not a decimal number: '" + std::string(text) + "'"); };
    std::size_t i = 0;
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t end = text.size();
    while (end > i && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
    bool neg = false;
    if (i < end && (text[i] == '+' || text[i] == '-')) neg = text[i++] == '-';
    std::string digits;
    long frac = 0;
    bool seen_point = false, any_digit = false;
    for (; i < end; ++i) {
        char ch = text[i];
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            digits.push_back(ch);
            any_digit = true;
            if (seen_point) ++frac;
        } else if (ch == '.' && !seen_point) {
            seen_point = true;
        } else {
            break;
        }
    }
    if (!any_digit) throw fail();
    long exponent = 0;
    if (i < end && (text[i] == 'e' || text[i] == 'E')) {
        ++i;
        bool eneg = false;
        if (i < end && (text[i] == '+' || text[i] == '-')) eneg = text[i++] == '-';
        if (i >= end) throw fail();
        for (; i < end; ++i) {
            if (!std::isdigit(static_cast<unsigned char>(text[i]))) throw fail();
            exponent = exponent * 10 + (text[i] - '0');
            if (exponent > 100000) throw fail();
        }
        if (eneg) exponent = -exponent;
    }
    if (i != end) throw fail();
    Dec r(mpz_class(digits, 10), frac - exponent);
    if (neg) r.mant_ = -r.mant_;
    r.normalize();
    return r;
}

Dec Dec::from_double(double v) {
    if (!std::isfinite(v)) throw Error(Errc::domain, "non-finite double");
    char buf[64];
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*e", prec - 1, v);
        if (std::strtod(buf, nullptr) == v) break;
    }
    return parse(buf);
}

Dec Dec::pow10(long e) {
    Dec r(1, -e);
    return r;
}

std::string Dec::str() const {
    std::string digits = abs().mant_.get_str();
    std::string out = sign() < 0 ? "-" : "";
    if (scale_ <= 0) {
        out += digits;
        if (sign() != 0) out.append(static_cast<std::size_t>(-scale_), '0');
        return out;
    }
    auto s = static_cast<std::size_t>(scale_);
    if (digits.size() <= s) {
        out += "0.";
        out.append(s - digits.size(), '0');
        out += digits;
    } else {
        out += digits.substr(0, digits.size() - s);
        out += '.';
        out += digits.substr(digits.size() - s);
    }
    return out;
}

std::string Dec::sci(int digits) const {
    // Rounded to nearest, ties away from zero, like printf's %e on exact input.
    if (is_zero()) {
        std::string z = "0." + std::string(static_cast<std::size_t>(digits), '0') + "e+00";
        return z;
    }
    mpz_class m = ::abs(mant_);
    long ndig = static_cast<long>(mpz_sizeinbase(m.get_mpz_t(), 10));
    if (m < ten_to(ndig - 1)) --ndig;  // sizeinbase may overshoot by one
    long exp10 = ndig - 1 - scale_;
    long keep = digits + 1;
    mpz_class kept;
    if (ndig > keep) {
        mpz_class q, r;
        const mpz_class& div = ten_to(ndig - keep);
        mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), m.get_mpz_t(), div.get_mpz_t());
        if (2 * r >= div) q += 1;
        kept = q;
        if (kept >= ten_to(keep)) {
            kept /= 10;
            ++exp10;
        }
    } else {
        kept = m * ten_to(keep - ndig);
    }
    std::string s = kept.get_str();
    std::string out = sign() < 0 ? "-" : "";
    out += s.substr(0, 1);
    if (digits > 0) out += "." + s.substr(1);
    char ebuf[32];
    std::snprintf(ebuf, sizeof ebuf, "e%c%02ld", exp10 < 0 ? '-' : '+', exp10 < 0 ? -exp10 : exp10);
    return out + ebuf;
}

double Dec::to_double() const { return std::strtod(sci(20).c_str(), nullptr); }

Dec Dec::abs() const {
    Dec r = *this;
    if (sgn(r.mant_) < 0) r.mant_ = -r.mant_;
    return r;
}

Dec Dec::operator-() const {
    Dec r = *this;
    r.mant_ = -r.mant_;
    return r;
}

long Dec::frac_digits() const { return scale_ > 0 ? scale_ : 0; }

long Dec::int_digits() const {
    Dec t = truncate(abs(), 0);
    if (t.is_zero()) return 0;
    return static_cast<long>(t.str().size());
}

Dec Dec::shifted(long e) const {
    Dec r = *this;
    r.scale_ -= e;
    if (r.is_zero()) r.scale_ = 0;
    return r;
}

Dec operator+(const Dec& x, const Dec& y) {
    Dec r;
    if (x.scale_ == y.scale_) {
        r = Dec(x.mant_ + y.mant_, x.scale_);
    } else if (x.scale_ > y.scale_) {
        r = Dec(x.mant_ + y.mant_ * Dec::ten_to(x.scale_ - y.scale_), x.scale_);
    } else {
        r = Dec(x.mant_ * Dec::ten_to(y.scale_ - x.scale_) + y.mant_, y.scale_);
    }
    r.normalize();
    return r;
}

Dec operator-(const Dec& x, const Dec& y) { return x + (-y); }

Dec operator*(const Dec& x, const Dec& y) {
    Dec r(x.mant_ * y.mant_, x.scale_ + y.scale_);
    r.normalize();
    return r;
}

std::strong_ordering operator<=>(const Dec& x, const Dec& y) {
    int c;
    if (x.scale_ == y.scale_) {
        c = cmp(x.mant_, y.mant_);
    } else if (x.scale_ > y.scale_) {
        c = cmp(x.mant_, y.mant_ * Dec::ten_to(x.scale_ - y.scale_));
    } else {
        c = cmp(x.mant_ * Dec::ten_to(y.scale_ - x.scale_), y.mant_);
    }
    return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

Dec truncate(const Dec& x, long dp) {
    if (x.scale_ <= dp) return x;
    mpz_class q;
    const mpz_class& d = Dec::ten_to(x.scale_ - dp);
    mpz_tdiv_q(q.get_mpz_t(), x.mant_.get_mpz_t(), d.get_mpz_t());
    Dec r(std::move(q), dp);
    r.normalize();
    return r;
}

Dec divide(const Dec& x, const Dec& y, long dp) {
    if (y.is_zero()) throw Error(Errc::division_by_zero, "division by zero");
    long e = y.scale_ - x.scale_ + dp;
    mpz_class num = x.mant_, den = y.mant_, q;
    if (e >= 0)
        num *= Dec::ten_to(e);
    else
        den *= Dec::ten_to(-e);
    mpz_tdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    Dec r(std::move(q), dp);
    r.normalize();
    return r;
}

Dec floor(const Dec& x) {
    Dec t = truncate(x, 0);
    if (x.sign() < 0 && t != x) t = t - Dec(1);
    return t;
}

Dec ceil(const Dec& x) {
    Dec t = truncate(x, 0);
    if (x.sign() > 0 && t != x) t = t + Dec(1);
    return t;
}

Dec divide_up(const Dec& x, const Dec& y, long dp) {
    Dec q = divide(x, y, dp);
    if (q * y != x) {
        bool positive = (x.sign() > 0) == (y.sign() > 0);
        if (positive) q = q + Dec::pow10(-dp);
    }
    return q;
}

Dec divide_down(const Dec& x, const Dec& y, long dp) {
    Dec q = divide(x, y, dp);
    if (q * y != x) {
        bool positive = (x.sign() > 0) == (y.sign() > 0);
        if (!positive) q = q - Dec::pow10(-dp);
    }
    return q;
}

}  // namespace converse
