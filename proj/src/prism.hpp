#pragma once

// Prisms {center + P eta : |eta_j| <= 1} in the 7-D extended phase space and
// the lemma that bounds their images: if w_j bounds row j of
// A^-1 (DG_x P) over the prism (plus the centre's error), then
// G(S) lies in (G(x_c), A W).

#include <array>
#include <string>
#include <vector>

#include "map.hpp"
#include "matrix.hpp"

namespace converse {

enum class PrismStatus { no_tori, untried, maybe, active, symmetric };

const char* status_name(PrismStatus s);
PrismStatus status_from_name(const std::string& s);

// One halving: axis 'a', 'b', 'c' (a parameter column) or '0', '1' (v0 or
// v1); side -1 keeps the lower half, +1 the upper.
struct Cut {
    char axis = '0';
    int side = -1;
    friend bool operator==(const Cut&, const Cut&) = default;
};

struct Prism {
    ExtPoint center;
    DecMat p = DecMat(7, 7, Dec(0));
    PrismStatus status = PrismStatus::untried;
    int n_cuts = 0;
    std::vector<Cut> history;

    // v-coordinate ranges: centre +- row sum
    Interval coord(int row) const;
    Interval coord_sum(int row_a, int row_b) const;
};

struct EngineConfig {
    long dp = 35;
    long safety_dp = 5;
    long precision = 40;
    Dec max_error;
    TrigConfig trig;
    double min_angle = 27.0 * 3.14159265358979323846 / 180.0;
};

EngineConfig make_engine_config(long dp, double min_angle_degrees = 27.0);

// Enclosures over a prism of everything the bounding lemma and the
// eigenvalue suite need.
struct SetBounds {
    PhaseBounds pb;
    IvMat beta;   // 2x2
    IvMat gamma;  // 2x3
};

SetBounds set_bounds(const Prism& s, const TrigConfig& cfg);

struct InverseWithError {
    DecMat inv;
    Dec delta;  // entrywise |inv - M^-1| <= delta
    long inv_dp = 0;
};

// One Gauss-Jordan pass at inv_dp places; throws Errc::singular when a
// pivot cannot be separated from zero.
InverseWithError rgauss_at(const DecMat& m, long inv_dp);
// Retries at precision+10, then twice doubled, until both delta and
// n delta max|M| are <= 10^-precision.
InverseWithError rgauss(const DecMat& m, long precision);

enum class Fattener { fixed_form, column_rotor };

struct ImageResult {
    Prism image;
    std::vector<Dec> w;  // 7 entries
    DecMat a;            // the fattened matrix
};

// Fixed-form choice of A (prisms with P_uu = P_vu = 0) and its w.
ImageResult fixed_form_image(const Prism& s, const SetBounds& sb, const EngineConfig& cfg);
// Rotate the shorter of any pair of columns 4..7 (rows 4..7) that subtend
// less than min_angle, within the plane the pair spans.
DecMat column_rotor_fatten(const DecMat& a, double min_angle);
// The same on four 4-vectors in double precision (shared with the fast path).
using ColumnBlock = std::array<std::array<double, 4>, 4>;
void separate_columns(ColumnBlock& cols, double min_angle, std::array<bool, 4>& changed);
ImageResult column_rotor_image(const Prism& s, const SetBounds& sb, const EngineConfig& cfg);

Prism bound_image(const Prism& s, Fattener f, const EngineConfig& cfg);
ImageResult bound_image(const Prism& s, const SetBounds& sb, Fattener f, const EngineConfig& cfg);

// The lemma in one dimension, for the lift x + omega + (eps/2pi) sin 2pi x
// of a circle map: an interval holding the image of center +- radius.
Interval circle_lift_image(const Dec& center, const Dec& radius, const Dec& omega, const Dec& eps,
                           const EngineConfig& cfg);

Prism truncate_prism(const Prism& s, long precision);

// Line-oriented text form, tagged with a version line.
std::string serialize(const Prism& s);
// Reads one prism starting at lines[pos]; advances pos. Errors name the line.
Prism deserialize(const std::vector<std::string>& lines, std::size_t& pos);

}  // namespace converse
