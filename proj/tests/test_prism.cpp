#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "errors.hpp"
#include "oracles.hpp"
#include "prism.hpp"
#include "sampling.hpp"

using namespace converse;
using namespace sampling;

namespace {

double line_angle(const DecMat& a, int j, int k) {
    double dot = 0, nj = 0, nk = 0;
    for (int i = 3; i < 7; ++i) {
        double x = a(i, j).to_double(), y = a(i, k).to_double();
        dot += x * y;
        nj += x * x;
        nk += y * y;
    }
    return std::acos(std::min(1.0, std::fabs(dot) / std::sqrt(nj * nk)));
}

}  // namespace

TEST_CASE("rgauss: small exact cases") {
    DecMat id = DecMat::identity(3);
    auto r = rgauss_at(id, 20);
    CHECK(r.inv == id);
    CHECK(r.delta <= Dec::pow10(-19));

    DecMat m(2, 2, Dec(0));
    m(0, 0) = Dec(2);
    m(0, 1) = Dec(1);
    m(1, 0) = Dec(1);
    m(1, 1) = Dec(1);
    auto q = rgauss(m, 30);
    Dec want[2][2] = {{Dec(1), Dec(-1)}, {Dec(-1), Dec(2)}};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) CHECK((q.inv(i, j) - want[i][j]).abs() <= q.delta);

    DecMat sing(2, 2, Dec(1));
    CHECK_THROWS_AS(rgauss(sing, 30), Error);
}

TEST_CASE("rgauss: exact residual on 50 random 4x4 matrices") {
    std::mt19937_64 rng(7);
    const long precision = 40;
    const Dec target = Dec::pow10(-precision);
    for (int t = 0; t < 50; ++t) {
        DecMat m(4, 4, Dec(0));
        Dec mx(0);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                m(i, j) = rnd(rng, -1, 1) + (i == j ? Dec(3) : Dec(0));
                mx = max(mx, m(i, j).abs());
            }
        auto r = rgauss(m, precision);
        DecMat prod = m * r.inv;
        Dec bound = Dec(4) * r.delta * mx;
        CHECK(bound <= target);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) CHECK((prod(i, j) - Dec(i == j ? 1 : 0)).abs() <= bound);
    }
}

TEST_CASE("column rotor: orthogonal columns untouched, parallel ones pulled apart") {
    DecMat a(7, 7, Dec(0));
    for (int i = 0; i < 7; ++i) a(i, i) = Dec(i + 1);
    CHECK(column_rotor_fatten(a, 27.0 * M_PI / 180) == a);

    DecMat b = a;
    b(3, 4) = Dec(2);  // column 4 parallel to column 3, and shorter
    b(4, 4) = Dec(0);
    b(3, 3) = Dec(5);
    DecMat out = column_rotor_fatten(b, 27.0 * M_PI / 180);
    for (int j = 3; j < 7; ++j)
        for (int k = j + 1; k < 7; ++k) CHECK(line_angle(out, j, k) >= 27.0 * M_PI / 180 - 1e-12);
    // the longer column and the parameter columns stay put
    for (int i = 0; i < 7; ++i) {
        CHECK(out(i, 3) == b(i, 3));
        for (int j = 0; j < 3; ++j) CHECK(out(i, j) == b(i, j));
    }
    // rotation keeps length
    double len = 0;
    for (int i = 3; i < 7; ++i) len += std::pow(out(i, 4).to_double(), 2);
    CHECK(std::sqrt(len) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("fixed form: w_p is one and constant derivative leaves only the beta term") {
    auto cfg = make_engine_config(20);
    std::mt19937_64 rng(11);
    Prism s = random_prism(rng, true, 1e-3);
    for (int i = 0; i < 3; ++i) {
        s.center.x[static_cast<std::size_t>(i)] = Dec(0);
        s.p(i, i) = Dec(0);
    }
    SetBounds sb = set_bounds(s, cfg.trig);
    auto r = fixed_form_image(s, sb, cfg);
    for (int j = 0; j < 3; ++j) CHECK(r.w[static_cast<std::size_t>(j)] == Dec(1));
    // P_vu = 0, beta - beta_c = 0 and gamma multiplies P_pp = 0: only slack remains
    for (int j = 3; j < 5; ++j) CHECK(r.w[static_cast<std::size_t>(j)] < Dec::pow10(-10));
    CHECK_THROWS_AS(fixed_form_image(random_prism(rng, false, 1e-3), sb, cfg), Error);
}

TEST_CASE("integrable case: image is the affine image plus centre slack only") {
    // a = b = c = 0 and a box; 20 degrees keeps the rotor idle (the u and v
    // columns of DG P meet at atan(1/2) = 26.6 degrees)
    auto cfg = make_engine_config(20, 20.0);
    Prism s;
    for (std::size_t i = 3; i < 7; ++i) s.center.x[i] = Dec::parse("0.5");
    for (int i = 3; i < 7; ++i) s.p(i, i) = Dec::parse("0.001");
    Prism flat = s;  // worklist shape: no u width
    flat.p(3, 3) = flat.p(4, 4) = Dec(0);
    DecMat exact = dg_abc(s.center, cfg.trig) * s.p;
    for (Fattener f : {Fattener::column_rotor, Fattener::fixed_form}) {
        const Prism& src = f == Fattener::fixed_form ? flat : s;
        auto r = bound_image(src, set_bounds(src, cfg.trig), f, cfg);
        if (f == Fattener::column_rotor) CHECK(r.a == exact);
        DecMat a_inv = rgauss(r.a.block(3, 3, 4, 4), 60).inv;
        for (int j = 3; j < 7; ++j) {
            // fixed form: A^-1 DG P has zero u rows when P_vu = 0
            Dec base = f == Fattener::fixed_form && j < 5 ? Dec(0) : Dec(1);
            Dec slack = r.w[static_cast<std::size_t>(j)] - base;
            CHECK(slack >= Dec(0));
            CHECK(slack <= Dec(2) * row_sum(a_inv, j - 3) * cfg.max_error);
        }
    }
}

TEST_CASE("bounding soundness: Monte Carlo containment, both fatteners") {
    auto cfg = make_engine_config(30);
    std::mt19937_64 rng(2024);
    long total = 0;
    double worst = 0;
    for (int t = 0; t < 20; ++t) {
        double scale = t % 2 ? 1e-3 : 1e-2;
        Prism s = random_prism(rng, true, scale);
        // one fixed-form step, then column-rotor steps on the general image
        std::vector<Prism> chain{s};
        chain.push_back(bound_image(s, Fattener::fixed_form, cfg));
        double w1 = worst_eta(chain, 2000, rng);
        CHECK(w1 <= 1 + 1e-9);
        for (int n = 0; n < 4; ++n) chain.push_back(bound_image(chain.back(), Fattener::column_rotor, cfg));
        double w5 = worst_eta(chain, 2000, rng);
        CHECK(w5 <= 1 + 1e-9);

        Prism g = random_prism(rng, false, scale);
        std::vector<Prism> gen{g, bound_image(g, Fattener::column_rotor, cfg)};
        double w2 = worst_eta(gen, 1500, rng);
        CHECK(w2 <= 1 + 1e-9);
        worst = std::max({worst, w1, w5, w2});
        total += 5500;
    }
    CHECK(total >= 100000);
    MESSAGE("containment samples " << total << ", worst |eta| " << worst);
}

TEST_CASE("truncation keeps containment") {
    auto cfg = make_engine_config(12);  // coarse, so truncation actually bites
    std::mt19937_64 rng(5);
    for (int t = 0; t < 5; ++t) {
        Prism s = random_prism(rng, false, 1e-3);
        Prism img = bound_image(s, Fattener::column_rotor, cfg);
        CHECK(truncate_prism(img, cfg.precision).p == img.p);
        CHECK(worst_eta({s, img}, 2000, rng) <= 1 + 1e-9);
    }
}

TEST_CASE("circle-map lift: interval image contains sampled images") {
    auto cfg = make_engine_config(30);
    Dec omega = Dec::parse("0.3"), eps = Dec::parse("0.8");
    for (const char* c : {"0.1", "0.25", "0.6", "0.93"}) {
        Dec center = Dec::parse(c), radius = Dec::parse("0.05");
        Interval img = circle_lift_image(center, radius, omega, eps, cfg);
        double lo = img.lb.to_double(), hi = img.ub.to_double();
        for (int k = 0; k <= 10000; ++k) {
            double x = center.to_double() - 0.05 + 0.1 * k / 10000.0;
            double y = x + 0.3 + 0.8 / kTwoPi * std::sin(kTwoPi * x);
            CHECK((lo <= y && y <= hi));
        }
    }
}

TEST_CASE("serialization round trip and line-numbered errors") {
    std::mt19937_64 rng(3);
    Prism s = random_prism(rng, false, 1e-2);
    s.status = PrismStatus::maybe;
    s.n_cuts = 2;
    s.history = {{'a', -1}, {'1', 1}};
    std::string text = serialize(s);
    std::vector<std::string> lines;
    std::size_t start = 0;
    for (std::size_t i; (i = text.find('\n', start)) != std::string::npos; start = i + 1)
        lines.push_back(text.substr(start, i - start));
    std::size_t pos = 0;
    Prism back = deserialize(lines, pos);
    CHECK(pos == lines.size());
    CHECK(back.p == s.p);
    CHECK(back.status == s.status);
    CHECK(back.history == s.history);
    for (std::size_t i = 0; i < 7; ++i) CHECK(back.center.x[i] == s.center.x[i]);

    lines[4] = "row 1 2 x 4 5 6 7";
    pos = 0;
    try {
        deserialize(lines, pos);
        FAIL("expected a parse error");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::parse);
        CHECK(std::string(e.what()).find("line 5") != std::string::npos);
    }
}
