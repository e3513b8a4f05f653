#include <doctest.h>

#include <converse/converse.h>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

std::string slurp(const std::string& path) {
    std::ifstream f(path);
    REQUIRE(f.good());
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::string stripped(const char* report) {
    char* s = nullptr;
    REQUIRE(cv_strip_timing(report, &s) == CV_OK);
    std::string out = s;
    cv_free_string(s);
    return out;
}

}  // namespace

TEST_CASE("errors and null pointers") {
    CHECK(cv_proof_create(nullptr, nullptr, nullptr) == CV_ERR_NULL_POINTER);
    CHECK(std::strlen(cv_last_error()) > 0);
    cv_proof* p = nullptr;
    CHECK(cv_proof_create("0.1 0.01\n0.1 0.01\n0.2 x\n\n1 1\n1 1\n", nullptr, &p) == CV_ERR_PARSE);
    CHECK(p == nullptr);
    CHECK(std::string(cv_last_error()).rfind("line 3:", 0) == 0);
    CHECK(std::string(cv_status_name(CV_ERR_PARSE)) == "parse error");

    cv_proof_config cfg;
    cv_proof_config_default(&cfg);
    CHECK(cfg.dp == 35);
    CHECK(cfg.max_depth == 30);
    cfg.dp = 0;
    CHECK(cv_proof_create(slurp(std::string(CONVERSE_TEST_DATA) + "/trig274.in").c_str(), &cfg, &p) ==
          CV_ERR_INVALID_ARGUMENT);
    CHECK(cv_proof_restore("/nonexistent/backup", nullptr, nullptr, -1, &p) == CV_ERR_IO);

    cv_perturbation k;
    CHECK(cv_perturbation_from_name("poly", &k) == CV_OK);
    CHECK(k == CV_POLYNOMIAL);
    CHECK(cv_perturbation_from_name("quartic", &k) == CV_ERR_INVALID_ARGUMENT);
    cv_proof_destroy(nullptr);
    cv_path_destroy(nullptr);
}

TEST_CASE("proof through the C interface") {
    std::string input = slurp(std::string(CONVERSE_TEST_DATA) + "/trig274.in");
    cv_proof* p = nullptr;
    REQUIRE(cv_proof_create(input.c_str(), nullptr, &p) == CV_OK);
    const char* text = nullptr;
    CHECK(cv_proof_report(p, &text) == CV_ERR_INVALID_ARGUMENT);  // not run yet
    cv_outcome out;
    REQUIRE(cv_proof_run(p, &out) == CV_OK);
    CHECK(out == CV_PROVEN);
    REQUIRE(cv_proof_report(p, &text) == CV_OK);
    CHECK(std::string(text).find("I find no invariant tori") != std::string::npos);
    std::string full = stripped(text);
    cv_proof_stats st;
    REQUIRE(cv_proof_get_stats(p, &st) == CV_OK);
    CHECK(st.deepest <= 30);
    CHECK(st.successes > 0);
    size_t n = 0;
    REQUIRE(cv_proof_tile_count(p, &n) == CV_OK);
    CHECK(n == size_t(st.successes + st.symmetric));
    cv_tile t;
    CHECK(cv_proof_tile(p, 0, &t) == CV_OK);
    CHECK(t.v0_lo <= t.v0_hi);
    CHECK(cv_proof_tile(p, n, &t) == CV_ERR_INVALID_ARGUMENT);
    size_t pending = 99;
    CHECK(cv_proof_pending(p, &pending) == CV_OK);
    CHECK(pending == 0);
    cv_proof_destroy(p);

    // interrupted run, then resume
    std::string backup = std::string(CONVERSE_TEST_TMP) + "/capi_backup.txt";
    cv_proof_config cfg;
    cv_proof_config_default(&cfg);
    cfg.backup = backup.c_str();
    cfg.halt_after = 33;
    REQUIRE(cv_proof_create(input.c_str(), &cfg, &p) == CV_OK);
    REQUIRE(cv_proof_run(p, &out) == CV_OK);
    CHECK(out == CV_HALTED);
    cv_proof_destroy(p);
    REQUIRE(cv_proof_restore(backup.c_str(), nullptr, nullptr, -1, &p) == CV_OK);
    REQUIRE(cv_proof_run(p, &out) == CV_OK);
    CHECK(out == CV_PROVEN);
    cv_proof_report(p, &text);
    CHECK(stripped(text) == full);
    cv_proof_destroy(p);
    std::remove(backup.c_str());
}

TEST_CASE("depth exceeded through the C interface") {
    std::string input = slurp(std::string(CONVERSE_TEST_DATA) + "/eps00200.in");
    cv_proof_config cfg;
    cv_proof_config_default(&cfg);
    cfg.max_depth = 5;
    cv_proof* p = nullptr;
    REQUIRE(cv_proof_create(input.c_str(), &cfg, &p) == CV_OK);
    cv_outcome out;
    REQUIRE(cv_proof_run(p, &out) == CV_OK);
    CHECK(out == CV_DEPTH_EXCEEDED);
    const char* hist = nullptr;
    REQUIRE(cv_proof_failing_history(p, &hist) == CV_OK);
    int pairs = 0;
    for (const char* c = hist; *c; ++c) pairs += *c == ':';
    CHECK(pairs == 5);
    cv_proof_destroy(p);
}

TEST_CASE("orbits through the C interface") {
    double sched[] = {0.01, 0.02};
    cv_path* path = nullptr;
    REQUIRE(cv_continuation(3, 5, 8, CV_TRIGONOMETRIC, sched, 2, 0, 1, 1e-10, &path) == CV_OK);
    size_t n = 0;
    cv_path_size(path, &n);
    REQUIRE(n == 3);
    long q = 0;
    cv_path_period(path, &q);
    CHECK(q == 8);
    cv_step_info info;
    REQUIRE(cv_path_step(path, 0, &info) == CV_OK);
    CHECK(info.eps == 0);
    CHECK(info.grad_size < 1e-14);
    CHECK(info.action == doctest::Approx(0.5 * (9 + 25) / 8.0));
    REQUIRE(cv_path_step(path, 2, &info) == CV_OK);
    CHECK(info.eps == 0.02);
    CHECK(info.grad_size <= 1e-10);
    CHECK(cv_path_step(path, 3, &info) == CV_ERR_INVALID_ARGUMENT);

    std::vector<double> x(16), p(16);
    REQUIRE(cv_path_points(path, 0, x.data(), p.data()) == CV_OK);
    CHECK(x[2] - x[0] == doctest::Approx(3 / 8.0));
    CHECK(p[1] == doctest::Approx(5 / 8.0));

    double ex[4];
    REQUIRE(cv_path_lyapunov(path, 2, 4, 100, 5, ex) == CV_OK);
    CHECK(std::abs(ex[0] + ex[3]) <= 1e-5);
    CHECK(cv_path_lyapunov(path, 2, 5, 100, 5, ex) == CV_ERR_INVALID_ARGUMENT);

    std::vector<double> lip(100), dx(100);
    size_t count = 0;
    REQUIRE(cv_path_smoothness(path, 2, 100, lip.data(), dx.data(), &count) == CV_OK);
    CHECK(count == 28);
    cv_path_destroy(path);

    CHECK(cv_continuation(1, 1, 0, CV_TRIGONOMETRIC, nullptr, 0, 0, 1, 1e-10, &path) == CV_ERR_INVALID_ARGUMENT);

    double two[2];
    REQUIRE(cv_std_fixed_point_lyapunov(5, 0.5, 200, 5, two) == CV_OK);
    CHECK(std::abs(two[0] - std::log((7 + std::sqrt(45.0)) / 2)) <= 1e-8);
}

TEST_CASE("rational approximation through the C interface") {
    long a[32];
    size_t count = 0;
    REQUIRE(cv_cfrac((std::sqrt(5.0) - 1) / 2, 20, a, 32, &count) == CV_OK);
    CHECK(count == 21);
    for (size_t i = 1; i < count; ++i) CHECK(a[i] == 1);
    CHECK(cv_cfrac(0.3, 20, a, 2, &count) == CV_ERR_INVALID_ARGUMENT);

    char* text = nullptr;
    REQUIRE(cv_farey_text(0.3, 2, &text) == CV_OK);
    CHECK(std::string(text) == "1 2 -\n1 3 l\n1 4 ll\n");
    cv_free_string(text);

    char *w0 = nullptr, *w1 = nullptr;
    REQUIRE(cv_spiral_mean(30, &w0, &w1) == CV_OK);
    CHECK(std::string(w1).rfind("0.754877666246692760049508896358", 0) == 0);
    REQUIRE(cv_farey_triangle_text(std::strtod(w0, nullptr), std::strtod(w1, nullptr), 30, &text) == CV_OK);
    CHECK(std::string(text).find("\n1432 1897 2513 rrrrrrrrrrrrrrrrrrrrrrrrrr\n") != std::string::npos);
    cv_free_string(text);
    cv_free_string(w0);
    cv_free_string(w1);
    CHECK(cv_farey_triangle_text(2, 0.5, 3, &text) == CV_ERR_DOMAIN);
}
