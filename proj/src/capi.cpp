#include "converse/converse.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <memory>
#include <new>
#include <optional>
#include <sstream>
#include <string>

#include "birkhoff.hpp"
#include "engine.hpp"
#include "errors.hpp"
#include "rotation.hpp"

struct cv_proof {
    converse::ProofRun run;
    std::optional<converse::ProofReport> report;
    std::string history;
};

struct cv_path {
    converse::Perturbation kind;
    std::vector<converse::ContinuationStep> steps;
};

namespace {

thread_local std::string last_error;

cv_status fail(cv_status s, const std::string& msg) {
    last_error = msg;
    return s;
}

cv_status from_errc(converse::Errc c) {
    switch (c) {
        case converse::Errc::division_by_zero: return CV_ERR_DIVISION_BY_ZERO;
        case converse::Errc::domain: return CV_ERR_DOMAIN;
        case converse::Errc::precision_loss: return CV_ERR_PRECISION_LOSS;
        case converse::Errc::singular: return CV_ERR_SINGULAR;
        case converse::Errc::parse: return CV_ERR_PARSE;
        case converse::Errc::io: return CV_ERR_IO;
        case converse::Errc::invalid_argument: return CV_ERR_INVALID_ARGUMENT;
    }
    return CV_ERR_INTERNAL;
}

template <class F>
cv_status guarded(F&& f) {
    try {
        last_error.clear();
        return f();
    } catch (const converse::Error& e) {
        return fail(from_errc(e.code()), e.what());
    } catch (const std::bad_alloc&) {
        return fail(CV_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(CV_ERR_INTERNAL, e.what());
    }
}

#define CV_REQUIRE(ptr)                                                 \
    do {                                                                \
        if (!(ptr)) return fail(CV_ERR_NULL_POINTER, #ptr " is null"); \
    } while (0)

char* dup(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

converse::ProofConfig to_config(const cv_proof_config& c) {
    converse::ProofConfig cfg;
    cfg.dp = c.dp;
    cfg.safety_dp = c.safety_dp;
    cfg.max_depth = c.max_depth;
    cfg.stubborn = c.stubborn != 0;
    cfg.verbose = c.verbose;
    cfg.budget = c.budget;
    cfg.min_angle_deg = c.min_angle_deg;
    cfg.start = c.start == CV_START_HERMAN ? converse::StartKind::herman : converse::StartKind::least_lambda;
    cfg.backup_every = c.backup_every;
    cfg.halt_after = c.halt_after;
    cfg.graphics = c.graphics ? c.graphics : "";
    cfg.backup = c.backup ? c.backup : "";
    if (cfg.dp < 1 || cfg.safety_dp < 0 || cfg.max_depth < 1 || cfg.budget < 1 || cfg.backup_every < 1)
        throw converse::Error(converse::Errc::invalid_argument, "configuration values out of range");
    return cfg;
}

const converse::ContinuationStep* step_at(const cv_path* path, size_t i) {
    if (i >= path->steps.size()) throw converse::Error(converse::Errc::invalid_argument, "step index out of range");
    return &path->steps[i];
}

}  // namespace

extern "C" {

const char* cv_status_name(cv_status s) {
    switch (s) {
        case CV_OK: return "ok";
        case CV_ERR_DIVISION_BY_ZERO: return "division by zero";
        case CV_ERR_DOMAIN: return "domain error";
        case CV_ERR_PRECISION_LOSS: return "precision loss";
        case CV_ERR_SINGULAR: return "singular matrix";
        case CV_ERR_PARSE: return "parse error";
        case CV_ERR_IO: return "i/o error";
        case CV_ERR_INVALID_ARGUMENT: return "invalid argument";
        case CV_ERR_NULL_POINTER: return "null pointer";
        case CV_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

const char* cv_last_error(void) { return last_error.c_str(); }

const char* cv_version(void) { return "1.0.0"; }

void cv_free_string(char* s) { std::free(s); }

void cv_proof_config_default(cv_proof_config* cfg) {
    if (!cfg) return;
    converse::ProofConfig d;
    cfg->dp = d.dp;
    cfg->safety_dp = d.safety_dp;
    cfg->max_depth = d.max_depth;
    cfg->stubborn = d.stubborn;
    cfg->verbose = d.verbose;
    cfg->budget = d.budget;
    cfg->min_angle_deg = d.min_angle_deg;
    cfg->start = d.start == converse::StartKind::herman ? CV_START_HERMAN : CV_START_LEAST_LAMBDA;
    cfg->backup_every = d.backup_every;
    cfg->halt_after = d.halt_after;
    cfg->graphics = nullptr;
    cfg->backup = nullptr;
}

cv_status cv_proof_create(const char* input_text, const cv_proof_config* cfg, cv_proof** out) {
    CV_REQUIRE(input_text);
    CV_REQUIRE(out);
    *out = nullptr;
    return guarded([&] {
        cv_proof_config c;
        cv_proof_config_default(&c);
        if (cfg) c = *cfg;
        converse::InputSpec in = converse::parse_input(input_text);
        *out = new cv_proof{converse::ProofRun(in, to_config(c)), std::nullopt, {}};
        return CV_OK;
    });
}

cv_status cv_proof_restore(const char* backup_path, const char* new_backup, const char* graphics, long halt_after,
                           cv_proof** out) {
    CV_REQUIRE(backup_path);
    CV_REQUIRE(out);
    *out = nullptr;
    return guarded([&] {
        converse::ProofConfig paths;
        paths.backup = new_backup ? new_backup : "";
        paths.graphics = graphics ? graphics : "";
        paths.halt_after = halt_after;
        *out = new cv_proof{converse::ProofRun::restore(backup_path, paths), std::nullopt, {}};
        return CV_OK;
    });
}

cv_status cv_proof_run(cv_proof* p, cv_outcome* outcome) {
    CV_REQUIRE(p);
    return guarded([&] {
        p->report = p->run.run();
        std::ostringstream h;
        for (const converse::Cut& c : p->report->failing_history) h << c.axis << ':' << c.side << ' ';
        p->history = h.str();
        if (outcome) {
            switch (p->report->outcome) {
                case converse::Outcome::proven: *outcome = CV_PROVEN; break;
                case converse::Outcome::depth_exceeded: *outcome = CV_DEPTH_EXCEEDED; break;
                case converse::Outcome::halted: *outcome = CV_HALTED; break;
            }
        }
        return CV_OK;
    });
}

static cv_status need_report(const cv_proof* p) {
    if (!p->report) return fail(CV_ERR_INVALID_ARGUMENT, "the proof has not been run");
    return CV_OK;
}

cv_status cv_proof_report(const cv_proof* p, const char** text) {
    CV_REQUIRE(p);
    CV_REQUIRE(text);
    if (cv_status s = need_report(p)) return s;
    *text = p->report->text.c_str();
    return CV_OK;
}

cv_status cv_proof_get_stats(const cv_proof* p, cv_proof_stats* stats) {
    CV_REQUIRE(p);
    CV_REQUIRE(stats);
    if (cv_status s = need_report(p)) return s;
    const converse::ProofStats& st = p->report->stats;
    stats->quick = st.quick;
    stats->semi = st.semi;
    stats->rigorous = st.rigorous;
    stats->successes = st.successes;
    stats->symmetric = st.symmetric;
    stats->deepest = st.deepest;
    stats->longest_semi = st.longest_semi;
    stats->longest_success = st.longest_success;
    stats->by_trace = st.by_trace;
    stats->by_lambda = st.by_lambda;
    for (int i = 0; i < 4; ++i) stats->winner[i] = st.winner[i];
    stats->seconds = p->report->seconds;
    return CV_OK;
}

cv_status cv_proof_tile_count(const cv_proof* p, size_t* n) {
    CV_REQUIRE(p);
    CV_REQUIRE(n);
    if (cv_status s = need_report(p)) return s;
    *n = p->report->tiles.size();
    return CV_OK;
}

cv_status cv_proof_tile(const cv_proof* p, size_t i, cv_tile* tile) {
    CV_REQUIRE(p);
    CV_REQUIRE(tile);
    if (cv_status s = need_report(p)) return s;
    if (i >= p->report->tiles.size()) return fail(CV_ERR_INVALID_ARGUMENT, "tile index out of range");
    const converse::Tile& t = p->report->tiles[i];
    *tile = {t.v0_lo, t.v0_hi, t.v1_lo, t.v1_hi,
             t.status == converse::PrismStatus::no_tori     ? CV_TILE_NO_TORI
             : t.status == converse::PrismStatus::symmetric ? CV_TILE_SYMMETRIC
                                                            : CV_TILE_MAYBE};
    return CV_OK;
}

cv_status cv_proof_failing_history(const cv_proof* p, const char** text) {
    CV_REQUIRE(p);
    CV_REQUIRE(text);
    if (cv_status s = need_report(p)) return s;
    *text = p->history.c_str();
    return CV_OK;
}

cv_status cv_proof_pending(const cv_proof* p, size_t* n) {
    CV_REQUIRE(p);
    CV_REQUIRE(n);
    *n = p->run.pending().size();
    return CV_OK;
}

void cv_proof_destroy(cv_proof* p) { delete p; }

cv_status cv_strip_timing(const char* report, char** out) {
    CV_REQUIRE(report);
    CV_REQUIRE(out);
    return guarded([&] {
        *out = dup(converse::strip_timing(report));
        return CV_OK;
    });
}

cv_status cv_perturbation_from_name(const char* name, cv_perturbation* out) {
    CV_REQUIRE(name);
    CV_REQUIRE(out);
    std::string n = name;
    if (n == "trig" || n == "trigonometric") *out = CV_TRIGONOMETRIC;
    else if (n == "poly" || n == "polynomial") *out = CV_POLYNOMIAL;
    else if (n == "ff" || n == "fast_froschle" || n == "froschle") *out = CV_FAST_FROSCHLE;
    else return fail(CV_ERR_INVALID_ARGUMENT, "unknown perturbation '" + n + "' (trig, poly, ff)");
    return CV_OK;
}

cv_status cv_continuation(long p0, long p1, long q, cv_perturbation kind, const double* schedule, size_t n_schedule,
                          double jitter, uint64_t seed, double target, cv_path** out) {
    CV_REQUIRE(out);
    if (n_schedule > 0) CV_REQUIRE(schedule);
    *out = nullptr;
    return guarded([&] {
        if (q < 1) return fail(CV_ERR_INVALID_ARGUMENT, "period must be positive");
        if (kind < CV_TRIGONOMETRIC || kind > CV_FAST_FROSCHLE)
            return fail(CV_ERR_INVALID_ARGUMENT, "unknown perturbation");
        if (!(target > 0)) return fail(CV_ERR_INVALID_ARGUMENT, "target must be positive");
        auto k = static_cast<converse::Perturbation>(kind);
        std::vector<double> sched(schedule, schedule + n_schedule);
        auto path = std::make_unique<cv_path>();
        path->kind = k;
        path->steps = converse::continuation({p0, p1}, q, k, sched, jitter, seed, target);
        *out = path.release();
        return CV_OK;
    });
}

cv_status cv_path_size(const cv_path* path, size_t* n) {
    CV_REQUIRE(path);
    CV_REQUIRE(n);
    *n = path->steps.size();
    return CV_OK;
}

cv_status cv_path_period(const cv_path* path, long* q) {
    CV_REQUIRE(path);
    CV_REQUIRE(q);
    *q = path->steps.front().state.q;
    return CV_OK;
}

cv_status cv_path_step(const cv_path* path, size_t i, cv_step_info* info) {
    CV_REQUIRE(path);
    CV_REQUIRE(info);
    return guarded([&] {
        const auto* st = step_at(path, i);
        converse::Lab lab{path->kind, st->eps};
        *info = {st->eps, st->quality.shadow, st->quality.grad_size, converse::action(st->state, lab),
                 converse::deviation(st->state), st->morse};
        return CV_OK;
    });
}

cv_status cv_path_points(const cv_path* path, size_t i, double* x, double* p) {
    CV_REQUIRE(path);
    return guarded([&] {
        const auto* st = step_at(path, i);
        if (x)
            for (size_t j = 0; j < st->state.x.size(); ++j) {
                x[2 * j] = st->state.x[j][0];
                x[2 * j + 1] = st->state.x[j][1];
            }
        if (p) {
            auto m = converse::momenta(st->state, {path->kind, st->eps});
            for (size_t j = 0; j < m.size(); ++j) {
                p[2 * j] = m[j][0];
                p[2 * j + 1] = m[j][1];
            }
        }
        return CV_OK;
    });
}

cv_status cv_path_lyapunov(const cv_path* path, size_t i, int n_vectors, int cycles, int warmup, double* out) {
    CV_REQUIRE(path);
    CV_REQUIRE(out);
    return guarded([&] {
        const auto* st = step_at(path, i);
        if (cycles < 1 || warmup < 0) return fail(CV_ERR_INVALID_ARGUMENT, "cycles must be >= 1, warmup >= 0");
        auto ex = converse::lyapunov(converse::orbit_jacobians(st->state, {path->kind, st->eps}), n_vectors, cycles,
                                     warmup);
        std::copy(ex.begin(), ex.end(), out);
        return CV_OK;
    });
}

cv_status cv_path_smoothness(const cv_path* path, size_t i, size_t m, double* lipschitz, double* dx, size_t* count) {
    CV_REQUIRE(path);
    CV_REQUIRE(count);
    if (m > 0) {
        CV_REQUIRE(lipschitz);
        CV_REQUIRE(dx);
    }
    return guarded([&] {
        const auto* st = step_at(path, i);
        auto pairs = converse::smoothness_pairs(st->state, {path->kind, st->eps}, m);
        for (size_t k = 0; k < pairs.size(); ++k) {
            lipschitz[k] = pairs[k].lipschitz;
            dx[k] = pairs[k].dx;
        }
        *count = pairs.size();
        return CV_OK;
    });
}

void cv_path_destroy(cv_path* path) { delete path; }

cv_status cv_std_fixed_point_lyapunov(double k, double x, int steps, int warmup, double out[2]) {
    CV_REQUIRE(out);
    return guarded([&] {
        if (steps < 1 || warmup < 0) return fail(CV_ERR_INVALID_ARGUMENT, "steps must be positive, warmup >= 0");
        auto ex = converse::lyapunov({converse::std_jacobian(x, converse::StdFamily::standard(k))}, 2, steps, warmup);
        out[0] = ex[0];
        out[1] = ex[1];
        return CV_OK;
    });
}

cv_status cv_cfrac(double omega, int n, long* out, size_t cap, size_t* count) {
    CV_REQUIRE(count);
    return guarded([&] {
        if (n < 0) return fail(CV_ERR_INVALID_ARGUMENT, "n must be >= 0");
        auto a = converse::cfrac(omega, n);
        *count = a.size();
        if (a.size() > cap) return fail(CV_ERR_INVALID_ARGUMENT, "output buffer too small");
        CV_REQUIRE(out);
        std::copy(a.begin(), a.end(), out);
        return CV_OK;
    });
}

cv_status cv_farey_text(double omega, int levels, char** text) {
    CV_REQUIRE(text);
    return guarded([&] {
        std::ostringstream s;
        for (const auto& st : converse::farey_approx(omega, levels))
            s << st.p << ' ' << st.q << ' ' << (st.address.empty() ? "-" : st.address) << '\n';
        *text = dup(s.str());
        return CV_OK;
    });
}

cv_status cv_farey_triangle_text(double w0, double w1, int levels, char** text) {
    CV_REQUIRE(text);
    return guarded([&] {
        std::ostringstream s;
        for (const auto& st : converse::farey_triangle_approx(w0, w1, levels))
            s << st.mediant[0] << ' ' << st.mediant[1] << ' ' << st.mediant[2] << ' '
              << (st.address.empty() ? "-" : st.address) << '\n';
        *text = dup(s.str());
        return CV_OK;
    });
}

cv_status cv_spiral_mean(long dp, char** w0, char** w1) {
    CV_REQUIRE(w0);
    CV_REQUIRE(w1);
    return guarded([&] {
        if (dp < 1) return fail(CV_ERR_INVALID_ARGUMENT, "dp must be positive");
        auto [a, b] = converse::spiral_mean(dp);
        *w0 = dup(a.str());
        *w1 = dup(b.str());
        return CV_OK;
    });
}

}  // extern "C"
