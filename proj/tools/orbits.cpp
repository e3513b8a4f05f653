// orbits: periodic minimizing states and rotation-vector approximants.
//   orbits continue  --p 1432,1897 --q 2513 --eps 0.0075 --step 0.0005 [outputs]
//   orbits farey     --omega 0.618 --levels 10
//   orbits triangle  --spiral --levels 24   (or --w0 --w1)
//   orbits cfrac     --omega 0.618 -n 20
//   orbits spiral    --dp 40
// Exit status 0 on success, 1 on error.

#include <converse/converse.h>

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <memory>
#include <string>
#include <vector>

namespace {

int report_error(cv_status s) {
    std::fprintf(stderr, "orbits: %s: %s\n", cv_status_name(s), cv_last_error());
    return 1;
}

struct File {
    std::FILE* f = nullptr;
    explicit File(const std::string& path) : f(std::fopen(path.c_str(), "w")) {}
    ~File() {
        if (f) std::fclose(f);
    }
};

#define TRY(call)                                  \
    do {                                           \
        cv_status s_ = (call);                     \
        if (s_ != CV_OK) return report_error(s_); \
    } while (0)

struct ContinueArgs {
    std::vector<long> p{1432, 1897};
    long q = 2513;
    std::string kind = "trig";
    double eps = 0, step = 0.0005;
    std::vector<double> schedule;
    double jitter = 0, target = 1e-10;
    unsigned long seed = 1;
    std::string orbit_csv, lyap_csv, smooth_csv, dev_csv;
    int cycles = 200, warmup = 20;
    std::size_t pairs = 800;
};

int run_continue(const ContinueArgs& a) {
    if (a.p.size() != 2) {
        std::fprintf(stderr, "orbits: --p takes two integers\n");
        return 1;
    }
    cv_perturbation kind;
    TRY(cv_perturbation_from_name(a.kind.c_str(), &kind));
    std::vector<double> sched = a.schedule;
    if (sched.empty() && a.eps > 0) {
        if (!(a.step > 0)) {
            std::fprintf(stderr, "orbits: --step must be positive\n");
            return 1;
        }
        long n = std::lround(std::ceil(a.eps / a.step - 1e-9));
        for (long i = 1; i <= n; ++i) sched.push_back(std::min(a.eps, static_cast<double>(i) * a.step));
    }
    cv_path* path = nullptr;
    TRY(cv_continuation(a.p[0], a.p[1], a.q, kind, sched.data(), sched.size(), a.jitter, a.seed, a.target, &path));
    std::unique_ptr<cv_path, void (*)(cv_path*)> hold(path, cv_path_destroy);
    size_t n = 0;
    cv_path_size(path, &n);
    long q = 0;
    cv_path_period(path, &q);

    std::printf("# rotation eps shadow grad_size deviation morse\n");
    std::vector<cv_step_info> info(n);
    for (size_t i = 0; i < n; ++i) {
        TRY(cv_path_step(path, i, &info[i]));
        std::printf("(%ld,%ld)/%ld %.6g %.3e %.3e %.6f %ld\n", a.p[0], a.p[1], a.q, info[i].eps, info[i].shadow,
                    info[i].grad_size, info[i].deviation, info[i].morse);
    }
    if (!a.dev_csv.empty()) {
        File f(a.dev_csv);
        if (!f.f) return report_error(CV_ERR_IO);
        std::fprintf(f.f, "eps,deviation\n");
        for (const auto& s : info) std::fprintf(f.f, "%.17g,%.17g\n", s.eps, s.deviation);
    }
    if (!a.orbit_csv.empty()) {
        std::vector<double> x(2 * static_cast<size_t>(q)), p(2 * static_cast<size_t>(q));
        TRY(cv_path_points(path, n - 1, x.data(), p.data()));
        File f(a.orbit_csv);
        if (!f.f) return report_error(CV_ERR_IO);
        std::fprintf(f.f, "j,x0,x1,theta0,theta1,p0,p1\n");
        for (long j = 0; j < q; ++j) {
            double x0 = x[2 * j], x1 = x[2 * j + 1];
            std::fprintf(f.f, "%ld,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", j, x0, x1, x0 - std::floor(x0),
                         x1 - std::floor(x1), p[2 * j], p[2 * j + 1]);
        }
    }
    if (!a.lyap_csv.empty()) {
        File f(a.lyap_csv);
        if (!f.f) return report_error(CV_ERR_IO);
        std::fprintf(f.f, "eps,l1,l2,l3,l4\n");
        for (size_t i = 0; i < n; ++i) {
            double ex[4];
            TRY(cv_path_lyapunov(path, i, 4, a.cycles, a.warmup, ex));
            std::fprintf(f.f, "%.17g,%.17g,%.17g,%.17g,%.17g\n", info[i].eps, ex[0], ex[1], ex[2], ex[3]);
        }
    }
    if (!a.smooth_csv.empty()) {
        std::vector<double> lip(a.pairs), dx(a.pairs);
        size_t count = 0;
        TRY(cv_path_smoothness(path, n - 1, a.pairs, lip.data(), dx.data(), &count));
        File f(a.smooth_csv);
        if (!f.f) return report_error(CV_ERR_IO);
        std::fprintf(f.f, "lipschitz,dx\n");
        for (size_t k = 0; k < count; ++k) std::fprintf(f.f, "%.17g,%.17g\n", lip[k], dx[k]);
    }
    return 0;
}

int print_owned(char* text) {
    std::fputs(text, stdout);
    cv_free_string(text);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Periodic orbits of the 4-D maps and rational approximants of rotation vectors"};
    app.require_subcommand(1);

    ContinueArgs ca;
    auto* cont = app.add_subcommand("continue", "minimizing states along an eps schedule");
    cont->add_option("--p", ca.p, "winding numbers p0,p1")->delimiter(',')->expected(2)->capture_default_str();
    cont->add_option("--q", ca.q, "period")->capture_default_str();
    cont->add_option("--kind", ca.kind, "perturbation: trig, poly or ff")->capture_default_str();
    cont->add_option("--eps", ca.eps, "final eps (steps of --step from 0)");
    cont->add_option("--step", ca.step, "eps increment")->capture_default_str();
    cont->add_option("--schedule", ca.schedule, "explicit eps values, comma separated")->delimiter(',');
    cont->add_option("--jitter", ca.jitter, "random displacement of the seed points");
    cont->add_option("--seed", ca.seed, "seed for the jitter");
    cont->add_option("--target", ca.target, "gradient size to stop at")->capture_default_str();
    cont->add_option("--orbit-csv", ca.orbit_csv, "points and momenta of the last state");
    cont->add_option("--lyapunov-csv", ca.lyap_csv, "Lyapunov exponents per eps");
    cont->add_option("--cycles", ca.cycles, "orbit periods to average Lyapunov exponents over")->capture_default_str();
    cont->add_option("--warmup", ca.warmup, "unrecorded periods first")->capture_default_str();
    cont->add_option("--smooth-csv", ca.smooth_csv, "smoothness pairs of the last state");
    cont->add_option("--pairs", ca.pairs, "number of smoothness pairs")->capture_default_str();
    cont->add_option("--deviation-csv", ca.dev_csv, "largest displacement from the unperturbed state, per eps");

    double omega = 0.5;
    int levels = 10, n_quot = 20;
    auto* farey = app.add_subcommand("farey", "Farey-tree approximants: lines 'p q address'");
    farey->add_option("--omega", omega, "target in (0, 1)")->required();
    farey->add_option("--levels", levels)->capture_default_str();

    double w0 = -1, w1 = -1;
    bool spiral_target = false;
    auto* tri = app.add_subcommand("triangle", "Farey-triangle approximants: lines 'p0 p1 q address'");
    tri->add_option("--w0", w0, "first component");
    tri->add_option("--w1", w1, "second component");
    tri->add_flag("--spiral", spiral_target, "use the spiral mean (tau^-2, tau^-1)");
    tri->add_option("--levels", levels)->capture_default_str();

    auto* cf = app.add_subcommand("cfrac", "partial quotients");
    cf->add_option("--omega", omega)->required();
    cf->add_option("-n", n_quot, "index of the last quotient")->capture_default_str();

    long dp = 40;
    auto* sp = app.add_subcommand("spiral", "the spiral mean to dp places");
    sp->add_option("--dp", dp)->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    if (*cont) return run_continue(ca);
    if (*farey) {
        char* text = nullptr;
        TRY(cv_farey_text(omega, levels, &text));
        return print_owned(text);
    }
    if (*tri) {
        if (spiral_target) {
            char *a = nullptr, *b = nullptr;
            TRY(cv_spiral_mean(30, &a, &b));
            w0 = std::strtod(a, nullptr);
            w1 = std::strtod(b, nullptr);
            cv_free_string(a);
            cv_free_string(b);
        } else if (w0 < 0 || w1 < 0) {
            std::fprintf(stderr, "orbits: triangle needs --spiral or both --w0 and --w1\n");
            return 1;
        }
        char* text = nullptr;
        TRY(cv_farey_triangle_text(w0, w1, levels, &text));
        return print_owned(text);
    }
    if (*cf) {
        std::vector<long> a(static_cast<size_t>(std::max(n_quot, 0)) + 1);
        size_t count = 0;
        TRY(cv_cfrac(omega, n_quot, a.data(), a.size(), &count));
        for (size_t i = 0; i < count; ++i) std::printf(i ? " %ld" : "%ld", a[i]);
        std::printf("\n");
        return 0;
    }
    if (*sp) {
        char *a = nullptr, *b = nullptr;
        TRY(cv_spiral_mean(dp, &a, &b));
        std::printf("%s %s\n", a, b);
        cv_free_string(a);
        cv_free_string(b);
        return 0;
    }
    return 1;
}
