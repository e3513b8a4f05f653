#include <doctest.h>

#include <Eigen/Eigenvalues>

#include <cmath>
#include <random>

#include "birkhoff.hpp"
#include "errors.hpp"

using namespace converse;

namespace {

State random_state(std::array<long, 2> p, long q, std::uint64_t seed, double spread) {
    State s = uniform_state(p, q, {0.1, 0.7});
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-spread, spread);
    for (auto& x : s.x) {
        x[0] += u(rng);
        x[1] += u(rng);
    }
    return s;
}

double max_coord_diff(const State& a, const State& b) {
    double d = 0;
    for (std::size_t j = 0; j < a.x.size(); ++j)
        for (int k = 0; k < 2; ++k) d = std::max(d, std::abs(a.x[j][k] - b.x[j][k]));
    return d;
}

}  // namespace

TEST_CASE("unperturbed states") {
    State s = uniform_state({2, 3}, 7, {0.25, 0.5});
    Lab lab{Perturbation::trigonometric, 0};
    CHECK(s.at(7)[0] == doctest::Approx(s.x[0][0] + 2));
    CHECK(s.at(-1)[1] == doctest::Approx(s.x[6][1] - 3));
    for (const Pt& g : el_gradient(s, lab)) {
        CHECK(std::abs(g[0]) < 1e-14);
        CHECK(std::abs(g[1]) < 1e-14);
    }
    CHECK(action(s, lab) == doctest::Approx(0.5 * (4 + 9) / 7.0).epsilon(1e-14));
    for (const Pt& m : momenta(s, lab)) {
        CHECK(m[0] == doctest::Approx(2 / 7.0));
        CHECK(m[1] == doctest::Approx(3 / 7.0));
    }
    OrbitQuality oq = quality(s, lab);
    CHECK(oq.shadow < 1e-14);
    CHECK(oq.grad_size < 1e-14);
    CHECK(deviation(s) < 1e-14);

    // empty schedule: one unperturbed state
    auto path = continuation({1, 2}, 5, Perturbation::trigonometric, {});
    REQUIRE(path.size() == 1);
    CHECK(path[0].eps == 0);
    CHECK(path[0].quality.grad_size < 1e-14);
}

TEST_CASE("gradient against finite differences") {
    for (Perturbation kind : {Perturbation::trigonometric, Perturbation::polynomial, Perturbation::fast_froschle}) {
        Lab lab{kind, 0.07};
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            State s = random_state({1, 2}, 6, seed, 0.2);
            auto g = el_gradient(s, lab);
            double worst = 0;
            const double h = 1e-6;
            for (std::size_t j = 0; j < s.x.size(); ++j)
                for (int k = 0; k < 2; ++k) {
                    State up = s, dn = s;
                    up.x[j][k] += h;
                    dn.x[j][k] -= h;
                    double fd = (action(up, lab) - action(dn, lab)) / (2 * h);
                    worst = std::max(worst, std::abs(fd - g[j][k]));
                }
            CHECK(worst <= 1e-6);
        }
    }
}

TEST_CASE("shadow is the largest gradient") {
    // x-components of F(x_j, p_j) match by the choice of momenta, so the
    // mismatch is p_{j+1} - p_j + eps grad V(x_{j+1}) = -g_{j+1}
    Lab lab{Perturbation::trigonometric, 0.05};
    State s = random_state({2, 1}, 9, 4, 0.05);
    double worst = 0;
    for (const Pt& g : el_gradient(s, lab)) worst = std::max(worst, std::hypot(g[0], g[1]));
    CHECK(quality(s, lab).shadow == doctest::Approx(worst).epsilon(1e-12));
}

TEST_CASE("Newton and gradient flow") {
    Lab flat{Perturbation::trigonometric, 0};
    State s = random_state({1, 1}, 5, 2, 0.1);
    NewtonResult one = newton_min(s, flat);
    CHECK(one.converged);
    CHECK(one.iterations <= 1);
    CHECK(grad_size(one.state, flat) < 1e-12);

    // already at a minimizer
    FlowResult still = gradient_flow(one.state, flat);
    CHECK(still.converged);
    CHECK(still.steps == 0);

    // Newton finds the nearest critical point; from the symmetric seed that is a saddle
    Lab lab{Perturbation::trigonometric, 0.02};
    State sym = uniform_state({1, 2}, 5, critical_point(Perturbation::trigonometric));
    NewtonResult saddle = newton_min(sym, lab, 1e-12);
    REQUIRE(saddle.converged);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es0(action_hessian(saddle.state, lab));
    CHECK(es0.eigenvalues().minCoeff() < 0);

    // from a common seed in the minimizer's basin both methods agree
    FlowControl rough;
    rough.target = 1e-4;
    State seed = gradient_flow(random_state({1, 2}, 5, 8, 0.05), lab, rough).state;
    NewtonResult nr = newton_min(seed, lab, 1e-12);
    REQUIRE(nr.converged);
    FlowControl ctl;
    ctl.target = 1e-11;
    FlowResult fr = gradient_flow(seed, lab, ctl);
    REQUIRE(fr.converged);
    CHECK(max_coord_diff(nr.state, fr.state) <= 1e-8);
    CHECK(action(fr.state, lab) <= action(seed, lab));
    CHECK(action(fr.state, lab) < action(saddle.state, lab));

    // minimizer: the Hessian is positive semidefinite
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(action_hessian(nr.state, lab));
    CHECK(es.eigenvalues().minCoeff() >= -1e-10);
    CHECK(morse_index(nr.state, lab) == 0);
    CHECK(morse_index(saddle.state, lab) == (es0.eigenvalues().array() < 0).count());

    // small eps from the unperturbed state
    Lab small{Perturbation::polynomial, 0.01};
    FlowControl loose;
    loose.target = 1e-6;
    FlowResult sf = gradient_flow(uniform_state({1, 0}, 4, {0.3, 0.2}), small, loose);
    CHECK(sf.converged);
    CHECK(grad_size(sf.state, small) <= 1e-6);
}

TEST_CASE("Hessian structure") {
    Lab lab{Perturbation::trigonometric, 0.03};
    State s = random_state({1, 1}, 4, 9, 0.1);
    Eigen::MatrixXd h = action_hessian(s, lab);
    REQUIRE(h.rows() == 8);
    CHECK((h - h.transpose()).norm() < 1e-14);
    // -I coupling to neighbours, including the wrap-around corners
    CHECK(h(0, 2) == -1);
    CHECK(h(0, 6) == -1);
    CHECK(h(0, 4) == 0);
    // finite-difference check of one column
    const double d = 1e-6;
    State up = s, dn = s;
    up.x[1][0] += d;
    dn.x[1][0] -= d;
    auto gu = el_gradient(up, lab), gd = el_gradient(dn, lab);
    for (int r = 0; r < 8; ++r) {
        double fd = (gu[std::size_t(r / 2)][r % 2] - gd[std::size_t(r / 2)][r % 2]) / (2 * d);
        CHECK(std::abs(fd - h(r, 2)) < 1e-6);
    }
}

TEST_CASE("continuation and the Hedlund check") {
    std::vector<double> sched = {0.005, 0.01, 0.015, 0.02};
    auto once = continuation({2, 3}, 5, Perturbation::trigonometric, sched);
    REQUIRE(once.size() == 5);
    for (const auto& st : once) CHECK(st.quality.grad_size <= 1e-6);
    double a1 = action(once.back().state, {Perturbation::trigonometric, 0.02});
    for (const auto& st : once) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(action_hessian(st.state, {Perturbation::trigonometric, st.eps}));
        CHECK(st.morse == (es.eigenvalues().array() < -1e-12).count());
    }
    for (long n : {2, 3}) {
        auto many = continuation({2 * n, 3 * n}, 5 * n, Perturbation::trigonometric, sched, 1e-3, 7);
        const State& st = many.back().state;
        CHECK(many.back().quality.grad_size <= 1e-6);
        CHECK(action(st, {Perturbation::trigonometric, 0.02}) <= double(n) * a1 + 1e-8);
    }
}

TEST_CASE("Lyapunov exponents") {
    State s = uniform_state({1, 2}, 7, {0.3, 0.1});
    auto flat = lyapunov(orbit_jacobians(s, {Perturbation::trigonometric, 0}), 4, 50);
    for (double e : flat) CHECK(std::abs(e) <= 1e-8);

    auto path = continuation({3, 5}, 8, Perturbation::trigonometric, {0.02, 0.04, 0.06});
    Lab lab{Perturbation::trigonometric, 0.06};
    auto jac = orbit_jacobians(path.back().state, lab);
    for (const auto& j : jac) CHECK(j.determinant() == doctest::Approx(1).epsilon(1e-10));
    auto ex = lyapunov(jac, 4, 400, 20);
    REQUIRE(ex.size() == 4);
    CHECK(ex[0] >= ex[1]);
    CHECK(ex[1] >= ex[2]);
    CHECK(ex[2] >= ex[3]);
    CHECK(std::abs(ex[0] + ex[3]) <= 1e-5);
    CHECK(std::abs(ex[1] + ex[2]) <= 1e-5);

    // standard map, k = 5, fixed point x = 1/2: DT = [[6, 1], [5, 1]]
    StdFamily fam = StdFamily::standard(5);
    auto j = std_jacobian(0.5, fam);
    CHECK(j(0, 0) == doctest::Approx(6));
    CHECK(j(1, 0) == doctest::Approx(5));
    auto two = lyapunov({j}, 2, 200, 5);
    double top = std::log((7 + std::sqrt(45.0)) / 2);
    CHECK(std::abs(two[0] - top) <= 1e-8);
    // the contracting one needs more frequent renormalisation
    CHECK(std::abs(two[1] + top) > 1e-8);
    auto tight = lyapunov({j}, 2, 200, 5, 1e2);
    CHECK(std::abs(tight[0] - top) <= 1e-8);
    CHECK(std::abs(tight[1] + top) <= 1e-8);

    CHECK_THROWS_AS(lyapunov({}, 1), Error);
    CHECK_THROWS_AS(lyapunov({j}, 3), Error);
}

TEST_CASE("smoothness pairs and deviation") {
    State flat = uniform_state({1, 2}, 13, {0.2, 0.4});
    Lab zero{Perturbation::trigonometric, 0};
    auto pairs = smoothness_pairs(flat, zero);
    CHECK(pairs.size() == 13 * 12 / 2);
    for (const auto& pr : pairs) {
        CHECK(pr.dx > 0);
        CHECK(pr.lipschitz < 1e-12);
    }
    for (std::size_t i = 1; i < pairs.size(); ++i) CHECK(pairs[i - 1].dx <= pairs[i].dx);

    State big = uniform_state({21, 34}, 55, {0, 0});
    CHECK(smoothness_pairs(big, zero).size() == 800);
    CHECK(smoothness_pairs(big, zero, 10).size() == 10);

    // repeated points (a 2-fold state) are skipped
    State doubled = uniform_state({2, 4}, 6, {0.1, 0.1});
    CHECK(smoothness_pairs(doubled, zero).size() == 15 - 3);

    // deviation against a direct recomputation
    State s = random_state({1, 3}, 11, 5, 0.3);
    double brute = 0;
    for (long j = 0; j < s.q; ++j) {
        double best = 1e9;
        for (int m0 = -3; m0 <= 3; ++m0)
            for (int m1 = -3; m1 <= 3; ++m1) {
                double a = s.x[std::size_t(j)][0] - s.x[0][0] - double(j) / 11.0 + m0;
                double b = s.x[std::size_t(j)][1] - s.x[0][1] - 3.0 * double(j) / 11.0 + m1;
                best = std::min(best, std::hypot(a, b));
            }
        brute = std::max(brute, best);
    }
    CHECK(deviation(s) == doctest::Approx(brute).epsilon(1e-12));
    CHECK(deviation(s) <= kTorusDiameter);
}
