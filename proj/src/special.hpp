#pragma once

// Validated sine, cosine and square root on Dec, each correct to a stated
// number of decimal places, plus interval versions.

#include "dec.hpp"
#include "interval.hpp"

namespace converse {

// Digits of the stored pi; |pi - stored| < 10^-kPiDigits.
inline constexpr long kPiDigits = 100;
const Dec& stored_pi();
const Dec& stored_half_pi();

struct TrigConfig {
    long dp = 0;       // answers good to 10^-dp
    long terms = 0;    // Taylor order N
    long trig_dp = 0;  // working precision of the Horner recursion
};

TrigConfig set_trig_dp(long dp);

// Arguments must lie in [0, pi/4] (a hair of slack for reduction round-off).
Dec reduced_sin(const Dec& theta, const TrigConfig& cfg);
Dec reduced_cos(const Dec& theta, const TrigConfig& cfg);

Dec rig_sin(const Dec& theta, const TrigConfig& cfg);
Dec rig_cos(const Dec& theta, const TrigConfig& cfg);

// |result - sqrt(x)| <= 10^-dp
Dec rig_sqrt(const Dec& x, long dp);
// Enclosure of sqrt(x) built from rig_sqrt.
Interval bd_sqrt(const Dec& x, long dp);

Interval bd_sin(const Interval& x, const TrigConfig& cfg);
Interval bd_cos(const Interval& x, const TrigConfig& cfg);

}  // namespace converse
