#pragma once

// The proof driver. A deque of untested prisms starts with
// {parameter box} x {x*} x {angle rectangle}; each prism is screened along its
// centre orbit, then by the floating-point image test, then rigorously.
// Failures are halved and pushed back on the front.

#include <deque>
#include <string>
#include <vector>

#include "cone.hpp"
#include "input.hpp"
#include "prism.hpp"

namespace converse {

struct ProofConfig {
    long dp = 35;
    long safety_dp = 5;
    int max_depth = 30;
    bool stubborn = false;
    int verbose = 0;            // -t: report each success
    std::string graphics;       // empty or "off": none
    std::string backup;         // empty: none
    int budget = 25;            // steps per prism
    double min_angle_deg = 27;  // column rotor
    StartKind start = StartKind::least_lambda;
    int backup_every = 20;  // prisms between backup writes
    long halt_after = -1;   // stop after this many prisms (testing); <0 never
};

struct ProofStats {
    long quick = 0, semi = 0, rigorous = 0;
    long successes = 0, symmetric = 0;
    int deepest = 0;
    int longest_semi = 0, longest_success = 0;
    long by_trace = 0, by_lambda = 0;
    long winner[4] = {0, 0, 0, 0};  // cap, sineq1 (trace), sineq2 (maxBlam), sineq3 (minBlam)
};

// A finished prism's angle rectangle, for pictures and the coverage audit.
struct Tile {
    double v0_lo, v0_hi, v1_lo, v1_hi;
    PrismStatus status;
};

enum class Outcome { proven, depth_exceeded, halted };

struct ProofReport {
    Outcome outcome = Outcome::halted;
    ProofStats stats;
    std::vector<Cut> failing_history;  // when depth was exceeded
    std::vector<Tile> tiles;
    double seconds = 0;
    std::string text;  // the full report
};

struct TryResult {
    bool success = false;
    int iterations = 0;
    bool by_trace = false;
    int winner = 0;
};

class ProofRun {
public:
    ProofRun(const InputSpec& in, const ProofConfig& cfg);
    // Resume from a backup; cfg supplies only the paths (backup, graphics)
    // and halt_after, everything else comes from the file.
    static ProofRun restore(const std::string& path, const ProofConfig& paths);

    ProofReport run();

    const ProofConfig& config() const { return cfg_; }
    const std::deque<Prism>& pending() const { return work_; }
    const Dec& theta_star() const { return theta_star_; }

    std::string backup_text() const;
    void write_backup(const std::string& path) const;

    // Stages, exposed for tests.
    GlobalBounds bounds_for(const Prism& s) const;
    bool quick_try(const Prism& s, const GlobalBounds& gb, int& steps) const;
    TryResult try_prism(const Prism& s, const GlobalBounds& gb) const;
    TryResult rtry_prism(const Prism& s, const GlobalBounds& gb) const;
    bool is_symmetric(const Prism& s) const;

private:
    ProofRun() = default;
    void setup();
    std::string report_text(const ProofReport& r) const;

    InputSpec in_;
    ProofConfig cfg_;
    EngineConfig ec_;
    Dec theta_star_;
    std::deque<Prism> work_;
    ProofStats stats_;
    std::vector<Tile> tiles_;
    double elapsed_before_ = 0;
};

Prism initial_prism(const InputSpec& in, const Dec& theta_star, long precision);
// The two halves along `axis`, lower first.
std::pair<Prism, Prism> refine_prism(const Prism& s, char axis);
Tile tile_of(const Prism& s);

// SVG unless the path ends in .ps or .eps.
void write_graphics(const std::string& path, const std::vector<Tile>& tiles, const InputSpec& in);
std::string svg_picture(const std::vector<Tile>& tiles, double v0_lo, double v0_hi, double v1_lo, double v1_hi);
std::string ps_picture(const std::vector<Tile>& tiles, double v0_lo, double v0_hi, double v1_lo, double v1_hi);

// The report without its timing line (for comparing runs).
std::string strip_timing(const std::string& report);

}  // namespace converse
