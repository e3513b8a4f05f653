#include "input.hpp"

#include <sstream>

#include "errors.hpp"

namespace converse {

namespace {

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(line);
    }
    return lines;
}

bool blank(const std::string& s) { return s.find_first_not_of(" \t") == std::string::npos; }

}  // namespace

InputSpec parse_input(const std::string& text) {
    auto lines = split_lines(text);
    auto fail = [](std::size_t line, const std::string& why) {
        return Error(Errc::parse, "line " + std::to_string(line + 1) + ": " + why);
    };
    auto pair = [&](std::size_t i, Dec& c, Dec& w) {
        if (i >= lines.size()) throw fail(i, "missing line, expected 'center half-width'");
        std::istringstream is(lines[i]);
        std::string t0, t1;
        if (!(is >> t0 >> t1)) throw fail(i, "expected 'center half-width'");
        try {
            c = Dec::parse(t0);
            w = Dec::parse(t1);
        } catch (const Error&) {
            throw fail(i, "not a number in '" + lines[i] + "'");
        }
        if (w.sign() < 0) throw fail(i, "negative half-width");
    };
    InputSpec in;
    in.text = text;
    pair(0, in.params.a_c, in.params.da);
    pair(1, in.params.b_c, in.params.db);
    pair(2, in.params.c_c, in.params.dc);
    if (lines.size() < 4 || !blank(lines[3])) throw fail(3, "expected a blank line after the parameters");
    for (int j = 0; j < 2; ++j) {
        Dec c, w;
        pair(4 + static_cast<std::size_t>(j), c, w);
        in.angle_c[j] = c * stored_pi();
        in.angle_w[j] = w * stored_pi();
    }
    for (std::size_t i = 6; i < lines.size(); ++i) in.comments.push_back(lines[i]);
    return in;
}

}  // namespace converse
