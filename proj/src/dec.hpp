#pragma once

// Exact decimal numbers: an integer mantissa times 10^-scale.
// Addition, subtraction and multiplication never round; only divide()
// and truncate() drop digits, and both say how many they keep.

#include <gmpxx.h>

#include <compare>
#include <string>
#include <string_view>

namespace converse {

class Dec {
public:
    Dec() = default;
    Dec(long v) : mant_(v) {}  // NOLINT(google-explicit-constructor)

    static Dec parse(std::string_view text);
    // Shortest decimal that round-trips the double (17 significant digits max).
    static Dec from_double(double v);
    // 10^e, e may be negative.
    static Dec pow10(long e);

    std::string str() const;             // plain notation, canonical
    std::string sci(int digits) const;   // d.ddddde+XX, truncated toward zero
    double to_double() const;

    int sign() const { return sgn(mant_); }
    bool is_zero() const { return sgn(mant_) == 0; }
    Dec abs() const;
    Dec operator-() const;
    // Digits after the radix point in canonical form (0 for integers).
    long frac_digits() const;
    // Number of decimal digits of the integer part of |x| (0 when |x| < 1).
    long int_digits() const;

    // Multiply by 10^e exactly.
    Dec shifted(long e) const;

    friend Dec operator+(const Dec& x, const Dec& y);
    friend Dec operator-(const Dec& x, const Dec& y);
    friend Dec operator*(const Dec& x, const Dec& y);
    Dec& operator+=(const Dec& y) { return *this = *this + y; }
    Dec& operator-=(const Dec& y) { return *this = *this - y; }
    Dec& operator*=(const Dec& y) { return *this = *this * y; }

    friend std::strong_ordering operator<=>(const Dec& x, const Dec& y);
    friend bool operator==(const Dec& x, const Dec& y) { return (x <=> y) == 0; }

    // Toward zero, keeping dp fractional digits.
    friend Dec truncate(const Dec& x, long dp);
    // trunc(x/y) at dp places: |r - x/y| < 10^-dp.
    friend Dec divide(const Dec& x, const Dec& y, long dp);
    // floor and ceiling to integers.
    friend Dec floor(const Dec& x);
    friend Dec ceil(const Dec& x);

    const mpz_class& mantissa() const { return mant_; }
    long scale() const { return scale_; }

private:
    Dec(mpz_class m, long s) : mant_(std::move(m)), scale_(s) {}
    void normalize();
    static const mpz_class& ten_to(long e);

    mpz_class mant_{0};
    long scale_ = 0;
};

Dec truncate(const Dec& x, long dp);
Dec divide(const Dec& x, const Dec& y, long dp);
Dec floor(const Dec& x);
Dec ceil(const Dec& x);

inline const Dec& min(const Dec& x, const Dec& y) { return y < x ? y : x; }
inline const Dec& max(const Dec& x, const Dec& y) { return x < y ? y : x; }

// Upper and lower bounds for a quotient at dp places.
Dec divide_up(const Dec& x, const Dec& y, long dp);
Dec divide_down(const Dec& x, const Dec& y, long dp);

}  // namespace converse
