#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "engine.hpp"
#include "errors.hpp"
#include "fastpath.hpp"

using namespace converse;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream f(path);
    REQUIRE(f.good());
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::string data(const char* name) { return slurp(std::string(CONVERSE_TEST_DATA) + "/" + name); }

std::string tmp_path(const char* name) { return std::string(CONVERSE_TEST_TMP) + "/" + name; }

const char* kTrig274 =
    "0.3085  0.00125\n0.3085  0.00125\n0.617   0.0025\n\n1.0\t1.0\n1.0\t1.0\n\n0.0274 < epsilon < 0.0276\n";

bool covered(const std::vector<Tile>& tiles, double x, double y) {
    for (const Tile& t : tiles)
        if (t.status == PrismStatus::no_tori && t.v0_lo <= x && x <= t.v0_hi && t.v1_lo <= y && y <= t.v1_hi)
            return true;
    return false;
}

}  // namespace

TEST_CASE("input file") {
    InputSpec in = parse_input(kTrig274);
    CHECK(in.params.a_c == Dec::parse("0.3085"));
    CHECK(in.params.db == Dec::parse("0.00125"));
    CHECK(in.params.dc == Dec::parse("0.0025"));
    CHECK(in.angle_c[0] == stored_pi());
    CHECK(in.angle_w[1] == stored_pi());
    REQUIRE(in.comments.size() == 2);
    CHECK(in.comments[0].empty());
    CHECK(in.comments[1] == "0.0274 < epsilon < 0.0276");

    InputSpec bare = parse_input("0.1 0.01\n0.1 0.01\n0.2 0.02\n\n1 1\n1 1\n");
    CHECK(bare.comments.empty());

    auto error_line = [](const std::string& text) {
        try {
            parse_input(text);
        } catch (const Error& e) {
            return std::string(e.what()).substr(0, 7);
        }
        return std::string("no error");
    };
    CHECK(error_line("0.1 0.01\n0.1 0.01\n0.2 x\n\n1 1\n1 1\n") == "line 3:");
    CHECK(error_line("0.1 0.01\n0.1 0.01\n0.2 0.02\nhello\n1 1\n1 1\n") == "line 4:");
    CHECK(error_line("0.1 0.01\n0.1 0.01\n0.2 0.02\n\n1 1\n") == "line 6:");
    CHECK(error_line("0.1 -0.01\n0.1 0.01\n0.2 0.02\n\n1 1\n1 1\n") == "line 1:");
}

TEST_CASE("refine halves one column and covers the parent") {
    InputSpec in = parse_input(kTrig274);
    Prism s = initial_prism(in, Dec::parse("1.5"), 40);
    auto [lo, hi] = refine_prism(s, '0');
    CHECK(lo.p(5, 5) * Dec(2) == s.p(5, 5));
    CHECK(lo.p(6, 6) == s.p(6, 6));
    CHECK(lo.p(0, 0) == s.p(0, 0));
    CHECK(lo.n_cuts == 1);
    CHECK(hi.history.back() == Cut{'0', 1});
    // vertices of the parent lie in one of the halves, interiors meet only on the cut
    Interval p5 = s.coord(5), l5 = lo.coord(5), h5 = hi.coord(5);
    CHECK(l5.lb == p5.lb);
    CHECK(h5.ub == p5.ub);
    CHECK(l5.ub == h5.lb);

    auto [alo, ahi] = refine_prism(s, 'a');
    CHECK(alo.coord(0).lb == s.coord(0).lb);
    CHECK(ahi.coord(0).ub == s.coord(0).ub);
    CHECK(alo.coord(1) == s.coord(1));
    CHECK_THROWS_AS(refine_prism(s, 'e'), Error);
}

TEST_CASE("symmetry") {
    InputSpec in = parse_input(kTrig274);
    ProofConfig cfg;
    ProofRun run(in, cfg);
    Prism s = run.pending().front();
    CHECK_FALSE(run.is_symmetric(s));  // straddles the diagonal
    auto [left, right] = refine_prism(s, '0');
    auto [ll, lu] = refine_prism(left, '1');
    auto [rl, ru] = refine_prism(right, '1');
    CHECK(run.is_symmetric(lu));  // v0 < pi < v1
    CHECK_FALSE(run.is_symmetric(rl));
    CHECK_FALSE(run.is_symmetric(ll));
    CHECK_FALSE(run.is_symmetric(ru));
    // once a and b differ nothing is mirrored
    auto [alo, ahi] = refine_prism(lu, 'a');
    CHECK_FALSE(run.is_symmetric(alo));
}

TEST_CASE("centre-orbit screen") {
    InputSpec in = parse_input("0 0\n0 0\n0 0\n\n1 1\n1 1\n");
    ProofConfig cfg;
    ProofRun run(in, cfg);
    const Prism& s = run.pending().front();
    int steps = 0;
    CHECK_FALSE(run.quick_try(s, run.bounds_for(s), steps));
    CHECK_FALSE(run.rtry_prism(s, run.bounds_for(s)).success);

    // far above threshold, near the maximum of V: succeeds quickly
    InputSpec big = parse_input("0.62 0.001\n0.62 0.001\n1.24 0.002\n\n0.5 0.01\n0.5 0.01\n");
    ProofRun run2(big, cfg);
    const Prism& t = run2.pending().front();
    CHECK(run2.quick_try(t, run2.bounds_for(t), steps));
    CHECK(steps <= 3);
}

TEST_CASE("headline proof, coverage and determinism") {
    InputSpec in = parse_input(data("trig274.in"));
    ProofConfig cfg;
    cfg.max_depth = 30;
    ProofReport a = ProofRun(in, cfg).run();
    REQUIRE(a.outcome == Outcome::proven);
    CHECK(a.text.find("I find no invariant tori for the range of parameters :\n0.307250 < a < 0.309750\n"
                      "0.307250 < b < 0.309750\n0.614500 < c < 0.619500\n") != std::string::npos);
    CHECK(a.text.find("a : 3.08500000000000e-01 \t 1.25000000000000e-03") != std::string::npos);
    CHECK(a.text.find("v[0] : 3.14159265358979e+00 \t 3.14159265358979e+00") != std::string::npos);
    CHECK(a.stats.deepest <= 30);
    CHECK(a.stats.successes == a.stats.by_lambda + a.stats.by_trace);
    CHECK(a.stats.rigorous >= a.stats.successes);
    CHECK(a.stats.quick >= a.stats.semi);
    CHECK(a.stats.semi >= a.stats.rigorous);

    // kept tiles plus the mirror images of the skipped ones cover the square
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0, 6.283185307179586);
    int holes = 0;
    for (int i = 0; i < 20000; ++i) {
        double x = u(rng), y = u(rng);
        if (y > x) std::swap(x, y);
        if (!covered(a.tiles, x, y)) ++holes;
    }
    CHECK(holes == 0);

    // a second run is identical apart from timing
    ProofReport b = ProofRun(in, cfg).run();
    CHECK(strip_timing(a.text) == strip_timing(b.text));
}

TEST_CASE("backup and restore") {
    InputSpec in = parse_input(data("trig274.in"));
    ProofConfig cfg;
    ProofReport full = ProofRun(in, cfg).run();

    std::string path = tmp_path("engine_backup.txt");
    ProofConfig part = cfg;
    part.backup = path;
    part.halt_after = 57;
    ProofReport first = ProofRun(in, part).run();
    CHECK(first.outcome == Outcome::halted);

    ProofRun resumed = ProofRun::restore(path, ProofConfig{});
    CHECK(resumed.backup_text() == slurp(path));
    ProofReport second = resumed.run();
    CHECK(second.outcome == Outcome::proven);
    CHECK(strip_timing(second.text) == strip_timing(full.text));

    // a finished run leaves an empty worklist, which round-trips too
    ProofConfig done = cfg;
    done.backup = path;
    ProofRun(in, done).run();
    ProofRun empty = ProofRun::restore(path, ProofConfig{});
    CHECK(empty.pending().empty());
    CHECK(strip_timing(empty.run().text) == strip_timing(full.text));

    // corrupt one prism line
    part.halt_after = 20;
    ProofRun(in, part).run();
    std::string text = slurp(path);
    auto at = text.find("row ");
    REQUIRE(at != std::string::npos);
    text.replace(at + 4, 1, "#");
    std::size_t line = 1;
    for (std::size_t i = 0; i < at; ++i) line += text[i] == '\n';
    {
        std::ofstream f(path);
        f << text;
    }
    try {
        ProofRun::restore(path, ProofConfig{});
        FAIL("corrupt backup accepted");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::parse);
        CHECK(std::string(e.what()).find("line " + std::to_string(line) + ":") != std::string::npos);
    }
    std::remove(path.c_str());
}

TEST_CASE("depth exceeded gives a partial report") {
    InputSpec in = parse_input(data("eps00200.in"));
    ProofConfig cfg;
    cfg.max_depth = 6;
    ProofReport r = ProofRun(in, cfg).run();
    CHECK(r.outcome == Outcome::depth_exceeded);
    CHECK(r.failing_history.size() == 6);
    CHECK(r.text.find("Cut history of the failing prism :") != std::string::npos);
    CHECK(r.stats.deepest == 6);

    cfg.stubborn = true;
    ProofReport s = ProofRun(in, cfg).run();
    CHECK(s.outcome == Outcome::depth_exceeded);
    long maybes = 0;
    for (const Tile& t : s.tiles) maybes += t.status == PrismStatus::maybe;
    CHECK(maybes > 0);
    CHECK(s.stats.quick > r.stats.quick);
}

TEST_CASE("success survives doubled precision") {
    InputSpec in = parse_input(data("eps00276.in"));
    ProofConfig cfg;
    cfg.halt_after = 40;
    ProofRun run(in, cfg);
    run.run();
    ProofConfig fine = cfg;
    fine.dp = 70;
    ProofRun run70(in, fine);
    int checked = 0;
    for (const Prism& s : run.pending()) {
        GlobalBounds gb = run.bounds_for(s);
        if (!run.rtry_prism(s, gb).success) continue;
        CHECK(run70.rtry_prism(s, run70.bounds_for(s)).success);
        ++checked;
    }
    CHECK(checked > 0);
}

TEST_CASE("pictures") {
    std::string empty = svg_picture({}, 0, 1, 0, 1);
    CHECK(empty.find("<svg") != std::string::npos);
    CHECK(empty.find("</svg>") != std::string::npos);
    std::vector<Tile> two = {{0.5, 1, 0, 0.5, PrismStatus::no_tori}, {0, 0.5, 0.5, 1, PrismStatus::symmetric}};
    std::string svg = svg_picture(two, 0, 1, 0, 1);
    CHECK(svg.find("fill=\"#404040\"") != std::string::npos);
    CHECK(svg.find("fill=\"#c8c8c8\"") != std::string::npos);
    std::string ps = ps_picture(two, 0, 1, 0, 1);
    CHECK(ps.rfind("%!PS", 0) == 0);
    CHECK(ps.find("0.25 setgray fill") != std::string::npos);
    CHECK(ps.find("0.78 setgray fill") != std::string::npos);
}
