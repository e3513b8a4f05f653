#include "engine.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "errors.hpp"
#include "fastpath.hpp"

namespace converse {

namespace {

std::string fmt(const char* f, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, x);
    return buf;
}

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) lines.push_back(line);
    return lines;
}

AbcParams params_of(const Prism& s) {
    return {s.center.x[0], s.center.x[1], s.center.x[2], s.p(0, 0).abs(), s.p(1, 1).abs(), s.p(2, 2).abs()};
}

const Dec& half() {
    static const Dec h = Dec::parse("0.5");
    return h;
}

}  // namespace

Prism initial_prism(const InputSpec& in, const Dec& theta_star, long precision) {
    Prism s;
    const AbcParams& p = in.params;
    s.center.x = {p.a_c, p.b_c, p.c_c, theta_star, theta_star, in.angle_c[0], in.angle_c[1]};
    for (auto& x : s.center.x) x = truncate(x, precision);
    s.p(0, 0) = p.da;
    s.p(1, 1) = p.db;
    s.p(2, 2) = p.dc;
    s.p(5, 5) = in.angle_w[0];
    s.p(6, 6) = in.angle_w[1];
    // widths rounded up so the prism still holds the requested box
    for (int i = 0; i < 7; ++i) {
        Dec t = truncate(s.p(i, i), precision);
        if (t != s.p(i, i)) t += Dec::pow10(-precision);
        s.p(i, i) = t;
    }
    s.status = PrismStatus::untried;
    return s;
}

std::pair<Prism, Prism> refine_prism(const Prism& s, char axis) {
    int col = 0;
    switch (axis) {
        case 'a': col = 0; break;
        case 'b': col = 1; break;
        case 'c': col = 2; break;
        case '0': col = 5; break;
        case '1': col = 6; break;
        default: throw Error(Errc::invalid_argument, std::string("unknown cut axis '") + axis + "'");
    }
    Prism lo = s, hi = s;
    for (int i = 0; i < 7; ++i) {
        Dec h = s.p(i, col) * half();
        lo.p(i, col) = h;
        hi.p(i, col) = h;
        lo.center.x[static_cast<std::size_t>(i)] -= h;
        hi.center.x[static_cast<std::size_t>(i)] += h;
    }
    for (Prism* q : {&lo, &hi}) {
        q->n_cuts = s.n_cuts + 1;
        q->status = PrismStatus::untried;
    }
    lo.history.push_back({axis, -1});
    hi.history.push_back({axis, 1});
    return {lo, hi};
}

Tile tile_of(const Prism& s) {
    Interval v0 = s.coord(5), v1 = s.coord(6);
    return {v0.lb.to_double(), v0.ub.to_double(), v1.lb.to_double(), v1.ub.to_double(), s.status};
}

// ---- the run ------------------------------------------------------------------

ProofRun::ProofRun(const InputSpec& in, const ProofConfig& cfg) : in_(in), cfg_(cfg) {
    setup();
    work_.push_back(initial_prism(in_, theta_star_, ec_.precision));
}

void ProofRun::setup() {
    if (cfg_.max_depth < 0) throw Error(Errc::invalid_argument, "depth must be >= 0");
    if (cfg_.budget < 1) throw Error(Errc::invalid_argument, "step budget must be >= 1");
    ec_ = make_engine_config(cfg_.dp, cfg_.min_angle_deg);
    ec_.safety_dp = cfg_.safety_dp;
    ec_.precision = cfg_.dp + cfg_.safety_dp;
    theta_star_ = starting_angle(in_.params, cfg_.start);
}

GlobalBounds ProofRun::bounds_for(const Prism& s) const { return global_bounds_4d(params_of(s), ec_.precision); }

bool ProofRun::is_symmetric(const Prism& s) const {
    // the reflection v0 <-> v1 (with a <-> b) maps the prism into the part of
    // the rectangle that is kept
    if (s.center.x[0] != s.center.x[1] || s.p(0, 0).abs() != s.p(1, 1).abs()) return false;
    for (int j = 0; j < 7; ++j)
        for (int i : {0, 1})
            if (i != j && !s.p(i, j).is_zero()) return false;
    return s.coord(5).ub <= s.coord(6).lb;
}

bool ProofRun::quick_try(const Prism& s, const GlobalBounds& gb, int& steps) const {
    FastOutcome r = fast_orbit_test(to_fast(s), theta_star_.to_double(), to_fast(gb), cfg_.budget);
    steps = r.iterations;
    return r.success;
}

TryResult ProofRun::try_prism(const Prism& s, const GlobalBounds& gb) const {
    FastOutcome r = fast_prism_test(to_fast(s), theta_star_.to_double(), to_fast(gb), cfg_.budget, ec_.min_angle);
    TryResult t;
    t.success = r.success;
    t.iterations = r.iterations;
    return t;
}

TryResult ProofRun::rtry_prism(const Prism& s0, const GlobalBounds& gb) const {
    TryResult t;
    const long prec = ec_.precision;
    auto finish = [&](const SuiteStep& st, int k) {
        t.success = true;
        t.iterations = k;
        t.winner = st.winner;
        t.by_trace = !(st.next.ub_lam < gb.lam_min);
        return t;
    };
    try {
        // d_0 from beta at x*, over the parameter box
        PhaseBounds pb0 = phase_bounds(s0.coord(0), s0.coord(1), s0.coord(2), Interval(theta_star_),
                                       Interval(theta_star_), Interval(theta_star_ + theta_star_), ec_.trig);
        SuiteStep st = eigen_suite_step(beta_bounds(pb0, prec), initial_stats(gb), gb, prec);
        if (st.success) return finish(st, 0);
        Prism s = truncate_prism(s0, prec);
        for (int k = 0; k < cfg_.budget; ++k) {
            SetBounds sb = set_bounds(s, ec_.trig);
            st = eigen_suite_step(beta_bounds(sb.pb, prec), st.next, gb, prec);
            t.iterations = k + 1;
            if (st.success) return finish(st, k + 1);
            if (st.vacuous) return t;
            if (k + 1 == cfg_.budget) break;
            s = bound_image(s, sb, k == 0 ? Fattener::fixed_form : Fattener::column_rotor, ec_).image;
        }
    } catch (const Error&) {
        t.success = false;
    }
    return t;
}

ProofReport ProofRun::run() {
    auto t0 = std::chrono::steady_clock::now();
    ProofReport rep;
    long processed = 0;
    auto elapsed = [&] {
        return elapsed_before_ + std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    };
    auto save = [&] {
        if (cfg_.backup.empty()) return;
        ProofRun snap = *this;
        snap.elapsed_before_ = elapsed();
        snap.write_backup(cfg_.backup);
    };
    rep.outcome = Outcome::proven;
    while (!work_.empty()) {
        if (cfg_.halt_after >= 0 && processed >= cfg_.halt_after) {
            rep.outcome = Outcome::halted;
            break;
        }
        if (processed > 0 && cfg_.backup_every > 0 && processed % cfg_.backup_every == 0) save();
        ++processed;
        Prism s = work_.front();
        work_.pop_front();
        stats_.deepest = std::max(stats_.deepest, s.n_cuts);
        if (is_symmetric(s)) {
            s.status = PrismStatus::symmetric;
            ++stats_.symmetric;
            tiles_.push_back(tile_of(s));
            continue;
        }
        int fail_steps = 0;
        bool ok = false;
        GlobalBounds gb;
        try {
            gb = bounds_for(s);
        } catch (const Error&) {
            gb = GlobalBounds{};
            gb.lam_min = gb.tr_min = Dec(0);
            gb.lam_max = gb.tr_max = Dec(0);
        }
        ++stats_.quick;
        int qsteps = 0;
        if (quick_try(s, gb, qsteps)) {
            ++stats_.semi;
            TryResult fr = try_prism(s, gb);
            stats_.longest_semi = std::max(stats_.longest_semi, fr.iterations);
            if (fr.success) {
                ++stats_.rigorous;
                TryResult rr = rtry_prism(s, gb);
                if (rr.success) {
                    ok = true;
                    ++stats_.successes;
                    stats_.longest_success = std::max(stats_.longest_success, rr.iterations);
                    ++(rr.by_trace ? stats_.by_trace : stats_.by_lambda);
                    ++stats_.winner[rr.winner];
                    s.status = PrismStatus::no_tori;
                    tiles_.push_back(tile_of(s));
                    if (cfg_.verbose > 0) {
                        Tile t = tile_of(s);
                        std::cerr << "success after " << rr.iterations << " steps: v0 in [" << t.v0_lo << ", "
                                  << t.v0_hi << "], v1 in [" << t.v1_lo << ", " << t.v1_hi << "], cuts " << s.n_cuts
                                  << "\n";
                    }
                } else {
                    fail_steps = rr.iterations;
                }
            } else {
                fail_steps = fr.iterations;
            }
        }
        if (ok) continue;
        if (s.n_cuts >= cfg_.max_depth) {
            if (cfg_.stubborn) {
                s.status = PrismStatus::maybe;
                tiles_.push_back(tile_of(s));
                continue;
            }
            rep.outcome = Outcome::depth_exceeded;
            rep.failing_history = s.history;
            s.status = PrismStatus::maybe;
            work_.push_front(s);
            break;
        }
        auto [lo, hi] = refine_prism(s, choose_cut_axis(to_fast(s), fail_steps));
        work_.push_front(hi);
        work_.push_front(lo);
    }
    if (rep.outcome == Outcome::proven) {
        for (const Tile& t : tiles_)
            if (t.status == PrismStatus::maybe) rep.outcome = Outcome::depth_exceeded;
    }
    rep.seconds = elapsed();
    rep.stats = stats_;
    rep.tiles = tiles_;
    {
        ProofRun snap = *this;
        snap.elapsed_before_ = rep.seconds;
        if (!cfg_.backup.empty()) snap.write_backup(cfg_.backup);
    }
    rep.text = report_text(rep);
    if (!cfg_.graphics.empty() && cfg_.graphics != "off") write_graphics(cfg_.graphics, tiles_, in_);
    return rep;
}

// ---- report -----------------------------------------------------------------

std::string ProofRun::report_text(const ProofReport& r) const {
    std::ostringstream os;
    const AbcParams& p = in_.params;
    os << "Parameters :\n";
    os << "a : " << p.a_c.sci(14) << " \t " << p.da.sci(14) << "\n";
    os << "b : " << p.b_c.sci(14) << " \t " << p.db.sci(14) << "\n";
    os << "c : " << p.c_c.sci(14) << " \t " << p.dc.sci(14) << "\n\n";
    os << "Initial region :\n";
    for (int j = 0; j < 2; ++j)
        os << "v[" << j << "] : " << in_.angle_c[j].sci(14) << " \t " << in_.angle_w[j].sci(14) << "\n";
    os << "\nComments :\n";
    for (const auto& c : in_.comments) os << c << "\n";
    os << "\n++++++++++++++++++++++++++++++++++++++++++++++++\n";
    auto range = [&](const char* name, const Dec& c, const Dec& w) {
        os << fmt("%.6f", (c - w).to_double()) << " < " << name << " < " << fmt("%.6f", (c + w).to_double()) << "\n";
    };
    const ProofStats& s = r.stats;
    switch (r.outcome) {
        case Outcome::proven: os << "I find no invariant tori for the range of parameters :\n"; break;
        case Outcome::depth_exceeded:
            if (cfg_.stubborn) {
                os << "Some prisms could not be resolved at depth " << cfg_.max_depth
                   << "; no verdict for the range of parameters :\n";
            } else {
                os << "I failed on a prism cut " << cfg_.max_depth << " times; no verdict for the range of parameters :\n";
            }
            break;
        case Outcome::halted:
            os << "Computation halted with " << work_.size() << " prisms pending; no verdict yet for the range of parameters :\n";
            break;
    }
    range("a", p.a_c, p.da);
    range("b", p.b_c, p.db);
    range("c", p.c_c, p.dc);
    if (r.outcome == Outcome::depth_exceeded && !r.failing_history.empty()) {
        os << "Cut history of the failing prism :";
        for (const Cut& c : r.failing_history) os << ' ' << c.axis << (c.side < 0 ? '-' : '+');
        os << "\n";
    }
    os << "\n";
    os << "Did " << s.quick << " quick checks, " << s.semi << " semi-rigorous bounding tries,\n";
    os << "and " << s.rigorous << " rigorous bounding tries.\n";
    os << "The most deeply refined prism was cut " << s.deepest << " times.\n";
    os << "The longest semi-rigorous orbit ran for " << s.longest_semi << " iterations,\n";
    os << "the longest successful orbit, " << s.longest_success << " iterations.\n";
    os << s.symmetric << " prisms were skipped as mirror images of others.\n";
    os << "Of the " << s.successes << " successful prisms, " << s.by_trace << " fell to the trace criterion,\n";
    os << s.by_lambda << " to the least eigenvalue test.\n";
    double total = static_cast<double>(s.winner[0] + s.winner[1] + s.winner[2] + s.winner[3]);
    auto pct = [&](long n) { return fmt("%.1f", total > 0 ? 100.0 * static_cast<double>(n) / total : 0.0); };
    os << "The best upper bound on the least eigenvalue came from\n";
    os << "the maxBlam criterion " << pct(s.winner[2]) << "% of the time,\n";
    os << "the minBlam criterion " << pct(s.winner[3]) << "% of the time,\n";
    os << "and from the trace criterion " << pct(s.winner[1]) << "% of the time.\n";
    os << "\nThis investigation took " << fmt("%.2f", r.seconds) << " seconds.\n";
    return os.str();
}

std::string strip_timing(const std::string& report) {
    std::ostringstream os;
    for (const auto& line : split_lines(report))
        if (line.rfind("This investigation took", 0) != 0) os << line << "\n";
    return os.str();
}

// ---- backup -------------------------------------------------------------------

std::string ProofRun::backup_text() const {
    std::ostringstream os;
    auto lines = split_lines(in_.text);
    os << "converse backup v1\n";
    os << "input " << lines.size() << "\n";
    for (const auto& l : lines) os << l << "\n";
    os << "config " << cfg_.dp << ' ' << cfg_.safety_dp << ' ' << cfg_.max_depth << ' ' << (cfg_.stubborn ? 1 : 0)
       << ' ' << cfg_.verbose << ' ' << cfg_.budget << ' ' << fmt("%.17g", cfg_.min_angle_deg) << ' '
       << (cfg_.start == StartKind::herman ? "herman" : "least_lambda") << ' ' << cfg_.backup_every << "\n";
    const ProofStats& s = stats_;
    os << "stats " << s.quick << ' ' << s.semi << ' ' << s.rigorous << ' ' << s.successes << ' ' << s.symmetric << ' '
       << s.deepest << ' ' << s.longest_semi << ' ' << s.longest_success << ' ' << s.by_trace << ' ' << s.by_lambda;
    for (long w : s.winner) os << ' ' << w;
    os << "\n";
    os << "elapsed " << fmt("%.17g", elapsed_before_) << "\n";
    os << "tiles " << tiles_.size() << "\n";
    for (const Tile& t : tiles_)
        os << "tile " << fmt("%.17g", t.v0_lo) << ' ' << fmt("%.17g", t.v0_hi) << ' ' << fmt("%.17g", t.v1_lo) << ' '
           << fmt("%.17g", t.v1_hi) << ' ' << status_name(t.status) << "\n";
    os << "pending " << work_.size() << "\n";
    for (const Prism& p : work_) os << serialize(p);
    os << "end\n";
    return os.str();
}

void ProofRun::write_backup(const std::string& path) const {
    std::string tmp = path + ".tmp";
    {
        std::ofstream f(tmp);
        if (!f) throw Error(Errc::io, "cannot write backup file " + tmp);
        f << backup_text();
        if (!f) throw Error(Errc::io, "error writing backup file " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) throw Error(Errc::io, "cannot replace backup file " + path);
}

ProofRun ProofRun::restore(const std::string& path, const ProofConfig& paths) {
    std::ifstream f(path);
    if (!f) throw Error(Errc::io, "cannot read backup file " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    auto lines = split_lines(ss.str());
    std::size_t pos = 0;
    auto fail = [&](const std::string& why) {
        return Error(Errc::parse, path + ": line " + std::to_string(pos + 1) + ": " + why);
    };
    auto keyed = [&](const std::string& key) {
        if (pos >= lines.size()) throw fail("unexpected end of file, wanted '" + key + "'");
        std::istringstream is(lines[pos]);
        std::string k;
        is >> k;
        if (k != key) throw fail("expected '" + key + "' line");
        std::vector<std::string> rest;
        std::string w;
        while (is >> w) rest.push_back(w);
        return rest;
    };
    auto to_long = [&](const std::string& t) {
        std::size_t used = 0;
        long v = 0;
        try {
            v = std::stol(t, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != t.size() || t.empty()) throw fail("bad integer '" + t + "'");
        return v;
    };
    auto to_double = [&](const std::string& t) {
        std::size_t used = 0;
        double v = 0;
        try {
            v = std::stod(t, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != t.size() || t.empty()) throw fail("bad number '" + t + "'");
        return v;
    };

    if (pos >= lines.size() || lines[pos] != "converse backup v1") throw fail("not a backup file (bad header)");
    ++pos;
    auto in_head = keyed("input");
    if (in_head.size() != 1) throw fail("'input' needs a line count");
    long n_in = to_long(in_head[0]);
    ++pos;
    if (n_in < 0 || pos + static_cast<std::size_t>(n_in) > lines.size()) throw fail("input block runs past the end");
    std::string text;
    for (long i = 0; i < n_in; ++i) text += lines[pos++] + "\n";

    ProofRun r;
    try {
        r.in_ = parse_input(text);
    } catch (const Error& e) {
        throw Error(Errc::parse, path + ": in the stored input: " + e.what());
    }
    auto c = keyed("config");
    if (c.size() != 9) throw fail("'config' needs 9 fields");
    ProofConfig cfg = paths;
    cfg.dp = to_long(c[0]);
    cfg.safety_dp = to_long(c[1]);
    cfg.max_depth = static_cast<int>(to_long(c[2]));
    cfg.stubborn = to_long(c[3]) != 0;
    cfg.verbose = static_cast<int>(to_long(c[4]));
    cfg.budget = static_cast<int>(to_long(c[5]));
    cfg.min_angle_deg = to_double(c[6]);
    if (c[7] == "herman") cfg.start = StartKind::herman;
    else if (c[7] == "least_lambda") cfg.start = StartKind::least_lambda;
    else throw fail("unknown start kind '" + c[7] + "'");
    cfg.backup_every = static_cast<int>(to_long(c[8]));
    ++pos;
    auto st = keyed("stats");
    if (st.size() != 14) throw fail("'stats' needs 14 fields");
    ProofStats& s = r.stats_;
    long v[14];
    for (int i = 0; i < 14; ++i) v[i] = to_long(st[static_cast<std::size_t>(i)]);
    s.quick = v[0];
    s.semi = v[1];
    s.rigorous = v[2];
    s.successes = v[3];
    s.symmetric = v[4];
    s.deepest = static_cast<int>(v[5]);
    s.longest_semi = static_cast<int>(v[6]);
    s.longest_success = static_cast<int>(v[7]);
    s.by_trace = v[8];
    s.by_lambda = v[9];
    for (int i = 0; i < 4; ++i) s.winner[i] = v[10 + i];
    ++pos;
    auto el = keyed("elapsed");
    if (el.size() != 1) throw fail("'elapsed' needs one number");
    r.elapsed_before_ = to_double(el[0]);
    ++pos;
    auto th = keyed("tiles");
    if (th.size() != 1) throw fail("'tiles' needs a count");
    long n_tiles = to_long(th[0]);
    ++pos;
    for (long i = 0; i < n_tiles; ++i) {
        auto t = keyed("tile");
        if (t.size() != 5) throw fail("'tile' needs 4 numbers and a status");
        Tile tile{to_double(t[0]), to_double(t[1]), to_double(t[2]), to_double(t[3]), PrismStatus::untried};
        try {
            tile.status = status_from_name(t[4]);
        } catch (const Error&) {
            throw fail("unknown status '" + t[4] + "'");
        }
        r.tiles_.push_back(tile);
        ++pos;
    }
    auto ph = keyed("pending");
    if (ph.size() != 1) throw fail("'pending' needs a count");
    long n_pending = to_long(ph[0]);
    ++pos;
    for (long i = 0; i < n_pending; ++i) {
        try {
            r.work_.push_back(deserialize(lines, pos));
        } catch (const Error& e) {
            throw Error(Errc::parse, path + ": " + e.what());
        }
    }
    if (pos >= lines.size() || lines[pos] != "end") throw fail("expected 'end'");
    r.cfg_ = cfg;
    r.setup();
    return r;
}

// ---- pictures -----------------------------------------------------------------

namespace {

struct Frame {
    double x0, x1, y0, y1, size = 500, pad = 20;
    double sx(double x) const { return pad + (x - x0) / (x1 - x0) * size; }
    double sy(double y) const { return pad + (y1 - y) / (y1 - y0) * size; }  // v1 up
};

}  // namespace

std::string svg_picture(const std::vector<Tile>& tiles, double v0_lo, double v0_hi, double v1_lo, double v1_hi) {
    Frame f{v0_lo, v0_hi, v1_lo, v1_hi};
    std::ostringstream os;
    double full = f.size + 2 * f.pad;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << full << "\" height=\"" << full << "\" viewBox=\"0 0 "
       << full << ' ' << full << "\">\n";
    os << "<rect x=\"" << f.pad << "\" y=\"" << f.pad << "\" width=\"" << f.size << "\" height=\"" << f.size
       << "\" fill=\"white\" stroke=\"black\" stroke-width=\"1\"/>\n";
    for (const Tile& t : tiles) {
        const char* fill = "none";
        if (t.status == PrismStatus::no_tori) fill = "#404040";
        else if (t.status == PrismStatus::symmetric) fill = "#c8c8c8";
        os << "<rect x=\"" << fmt("%.3f", f.sx(t.v0_lo)) << "\" y=\"" << fmt("%.3f", f.sy(t.v1_hi)) << "\" width=\""
           << fmt("%.3f", f.sx(t.v0_hi) - f.sx(t.v0_lo)) << "\" height=\"" << fmt("%.3f", f.sy(t.v1_lo) - f.sy(t.v1_hi))
           << "\" fill=\"" << fill << "\" stroke=\"black\" stroke-width=\"0.3\" class=\"" << status_name(t.status)
           << "\"/>\n";
    }
    os << "</svg>\n";
    return os.str();
}

std::string ps_picture(const std::vector<Tile>& tiles, double v0_lo, double v0_hi, double v1_lo, double v1_hi) {
    Frame f{v0_lo, v0_hi, v1_lo, v1_hi};
    double full = f.size + 2 * f.pad;
    // PostScript has y up, so use pad + (y - y0) scaled
    auto py = [&](double y) { return f.pad + (y - f.y0) / (f.y1 - f.y0) * f.size; };
    std::ostringstream os;
    os << "%!PS-Adobe-3.0 EPSF-3.0\n%%BoundingBox: 0 0 " << static_cast<int>(full) << ' ' << static_cast<int>(full)
       << "\n";
    os << "/box { 4 dict begin /h exch def /w exch def /y exch def /x exch def newpath x y moveto w 0 rlineto 0 h "
          "rlineto w neg 0 rlineto closepath end } def\n";
    os << "0.3 setlinewidth\n";
    os << f.pad << ' ' << f.pad << ' ' << f.size << ' ' << f.size << " box 1 setlinewidth stroke 0.3 setlinewidth\n";
    for (const Tile& t : tiles) {
        std::string b = fmt("%.3f", f.sx(t.v0_lo)) + " " + fmt("%.3f", py(t.v1_lo)) + " " +
                        fmt("%.3f", f.sx(t.v0_hi) - f.sx(t.v0_lo)) + " " + fmt("%.3f", py(t.v1_hi) - py(t.v1_lo)) +
                        " box";
        if (t.status == PrismStatus::no_tori) os << "gsave " << b << " 0.25 setgray fill grestore\n";
        else if (t.status == PrismStatus::symmetric) os << "gsave " << b << " 0.78 setgray fill grestore\n";
        os << b << " 0 setgray stroke\n";
    }
    os << "showpage\n%%EOF\n";
    return os.str();
}

void write_graphics(const std::string& path, const std::vector<Tile>& tiles, const InputSpec& in) {
    double v0_lo = (in.angle_c[0] - in.angle_w[0]).to_double(), v0_hi = (in.angle_c[0] + in.angle_w[0]).to_double();
    double v1_lo = (in.angle_c[1] - in.angle_w[1]).to_double(), v1_hi = (in.angle_c[1] + in.angle_w[1]).to_double();
    auto ends = [&](const std::string& suf) {
        return path.size() >= suf.size() && path.compare(path.size() - suf.size(), suf.size(), suf) == 0;
    };
    bool ps = ends(".ps") || ends(".eps");
    std::ofstream f(path);
    if (!f) throw Error(Errc::io, "cannot write graphics file " + path);
    f << (ps ? ps_picture(tiles, v0_lo, v0_hi, v1_lo, v1_hi) : svg_picture(tiles, v0_lo, v0_hi, v1_lo, v1_hi));
    if (!f) throw Error(Errc::io, "error writing graphics file " + path);
}

}  // namespace converse
