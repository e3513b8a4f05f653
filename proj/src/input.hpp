#pragma once

// The run description file:
//   a_c  da
//   b_c  db
//   c_c  dc
//   <blank>
//   th0  dth0     angles in units of pi, so 1.0 1.0 spans [0, 2 pi]
//   th1  dth1
//   free comment lines...
// Extra words after the two numbers on a data line are ignored.

#include <string>
#include <vector>

#include "map.hpp"

namespace converse {

struct InputSpec {
    AbcParams params;
    Dec angle_c[2], angle_w[2];  // radians
    std::vector<std::string> comments;
    std::string text;  // the file as read, kept for backups
};

InputSpec parse_input(const std::string& text);

}  // namespace converse
