#include "birkhoff.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <random>

#include "errors.hpp"

namespace converse {

namespace {

double wrap(double d) { return d - std::round(d); }

long floor_div(long j, long q) { return j >= 0 ? j / q : -((-j + q - 1) / q); }

}  // namespace

Pt State::at(long j) const {
    long k = floor_div(j, q);
    const Pt& b = x[static_cast<std::size_t>(j - k * q)];
    return {b[0] + static_cast<double>(k * p[0]), b[1] + static_cast<double>(k * p[1])};
}

State uniform_state(std::array<long, 2> p, long q, Pt x0) {
    if (q < 1) throw Error(Errc::invalid_argument, "period must be >= 1");
    State s;
    s.p = p;
    s.q = q;
    s.x.resize(static_cast<std::size_t>(q));
    for (long j = 0; j < q; ++j) {
        double t = static_cast<double>(j) / static_cast<double>(q);
        s.x[static_cast<std::size_t>(j)] = {x0[0] + t * static_cast<double>(p[0]), x0[1] + t * static_cast<double>(p[1])};
    }
    return s;
}

double action(const State& s, const Lab& lab) {
    double sum = 0;
    for (long j = 0; j < s.q; ++j) sum += action_h(s.at(j), s.at(j + 1), lab.kind, lab.eps);
    return sum;
}

std::vector<Pt> el_gradient(const State& s, const Lab& lab) {
    std::vector<Pt> g(static_cast<std::size_t>(s.q));
    for (long j = 0; j < s.q; ++j) {
        Pt a = s.at(j - 1), b = s.at(j), c = s.at(j + 1);
        auto dv = potential_grad(lab.kind, b[0], b[1]);
        for (int i = 0; i < 2; ++i)
            g[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] =
                2 * b[static_cast<std::size_t>(i)] - a[static_cast<std::size_t>(i)] - c[static_cast<std::size_t>(i)] -
                lab.eps * dv[static_cast<std::size_t>(i)];
    }
    return g;
}

double grad_size(const State& s, const Lab& lab) {
    double sum = 0;
    for (const Pt& g : el_gradient(s, lab)) sum += g[0] * g[0] + g[1] * g[1];
    return std::sqrt(sum / static_cast<double>(s.q));
}

std::vector<Pt> momenta(const State& s, const Lab& lab) {
    std::vector<Pt> m(static_cast<std::size_t>(s.q));
    for (long j = 0; j < s.q; ++j) {
        auto d = action_h_dx(s.at(j), s.at(j + 1), lab.kind, lab.eps);
        m[static_cast<std::size_t>(j)] = {-d[0], -d[1]};
    }
    return m;
}

std::array<double, 4> phase_step(const std::array<double, 4>& z, const Lab& lab) {
    auto g = potential_grad(lab.kind, z[0], z[1]);
    double p0 = z[2] - lab.eps * g[0], p1 = z[3] - lab.eps * g[1];
    return {z[0] + p0, z[1] + p1, p0, p1};
}

Eigen::Matrix4d phase_jacobian(const Pt& x, const Lab& lab) {
    auto h = potential_hess(lab.kind, x[0], x[1]);
    Eigen::Matrix2d eh;
    eh << lab.eps * h[0], lab.eps * h[1], lab.eps * h[1], lab.eps * h[2];
    Eigen::Matrix4d j;
    j.topLeftCorner<2, 2>() = Eigen::Matrix2d::Identity() - eh;
    j.topRightCorner<2, 2>() = Eigen::Matrix2d::Identity();
    j.bottomLeftCorner<2, 2>() = -eh;
    j.bottomRightCorner<2, 2>() = Eigen::Matrix2d::Identity();
    return j;
}

OrbitQuality quality(const State& s, const Lab& lab) {
    auto m = momenta(s, lab);
    OrbitQuality out;
    for (long j = 0; j < s.q; ++j) {
        Pt x = s.at(j), xn = s.at(j + 1);
        const Pt& p = m[static_cast<std::size_t>(j)];
        const Pt& pn = m[static_cast<std::size_t>((j + 1) % s.q)];
        auto f = phase_step({x[0], x[1], p[0], p[1]}, lab);
        double d = 0;
        d += (xn[0] - f[0]) * (xn[0] - f[0]) + (xn[1] - f[1]) * (xn[1] - f[1]);
        d += (pn[0] - f[2]) * (pn[0] - f[2]) + (pn[1] - f[3]) * (pn[1] - f[3]);
        out.shadow = std::max(out.shadow, std::sqrt(d));
    }
    out.grad_size = grad_size(s, lab);
    return out;
}

FlowResult gradient_flow(const State& s0, const Lab& lab, const FlowControl& ctl) {
    FlowResult r;
    r.state = s0;
    double h = 0.1;
    double a = action(r.state, lab);
    int stalls = 0;
    for (r.steps = 0; r.steps < ctl.max_steps; ++r.steps) {
        auto g = el_gradient(r.state, lab);
        double gs = 0;
        for (const Pt& v : g) gs += v[0] * v[0] + v[1] * v[1];
        if (std::sqrt(gs / static_cast<double>(r.state.q)) < ctl.target) {
            r.converged = true;
            return r;
        }
        for (;;) {
            State t = r.state;
            for (std::size_t j = 0; j < t.x.size(); ++j) {
                t.x[j][0] -= h * g[j][0];
                t.x[j][1] -= h * g[j][1];
            }
            double at = action(t, lab);
            double gt = grad_size(t, lab), g0 = std::sqrt(gs / static_cast<double>(r.state.q));
            // below rounding the action cannot rank states; the gradient still can
            bool level = std::fabs(at - a) <= 1e-14 * std::max(1.0, std::fabs(a)) && gt < g0;
            if (at < a || level) {
                bool slow = (a - at) <= ctl.tol * std::max(1.0, std::fabs(a)) && (g0 - gt) <= ctl.tol * g0;
                stalls = slow ? stalls + 1 : 0;
                r.state = std::move(t);
                a = std::min(a, at);
                h = std::min(h * 1.25, 0.5);
                break;
            }
            h *= 0.5;
            if (h < 1e-12) return r;  // step control failed; last state kept
        }
        if (stalls > 1000) return r;
    }
    return r;
}

namespace {

Eigen::SparseMatrix<double> sparse_hessian(const State& s, const Lab& lab, double shift) {
    const long q = s.q;
    const int n = static_cast<int>(2 * q);
    std::vector<Eigen::Triplet<double>> t;
    t.reserve(static_cast<std::size_t>(12 * q));
    for (long j = 0; j < q; ++j) {
        const Pt& x = s.x[static_cast<std::size_t>(j)];
        auto h = potential_hess(lab.kind, x[0], x[1]);
        int b = static_cast<int>(2 * j);
        t.emplace_back(b, b, 2 - lab.eps * h[0] + shift);
        t.emplace_back(b, b + 1, -lab.eps * h[1]);
        t.emplace_back(b + 1, b, -lab.eps * h[1]);
        t.emplace_back(b + 1, b + 1, 2 - lab.eps * h[2] + shift);
        int nb = static_cast<int>(2 * ((j + 1) % q));
        for (int i = 0; i < 2; ++i) {
            t.emplace_back(b + i, nb + i, -1.0);
            t.emplace_back(nb + i, b + i, -1.0);
        }
    }
    Eigen::SparseMatrix<double> m(n, n);
    m.setFromTriplets(t.begin(), t.end());
    return m;
}

}  // namespace

Eigen::MatrixXd action_hessian(const State& s, const Lab& lab) { return Eigen::MatrixXd(sparse_hessian(s, lab, 0)); }

long morse_index(const State& s, const Lab& lab) {
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(sparse_hessian(s, lab, 0));
    if (ldlt.info() != Eigen::Success) return -1;
    // Sylvester: the pivots of a congruent diagonal have the eigenvalue signs;
    // pivots at rounding level belong to (near-)null directions and don't count
    const Eigen::VectorXd& d = ldlt.vectorD();
    double tiny = 1e-8 * d.cwiseAbs().maxCoeff();
    return static_cast<long>((d.array() < -tiny).count());
}

NewtonResult newton_min(const State& s0, const Lab& lab, double target, int max_iter) {
    NewtonResult r;
    r.state = s0;
    double gs = grad_size(r.state, lab);
    // a tiny Levenberg shift keeps the near-null phase mode of long,
    // weakly pinned orbits from producing huge steps
    double shift = 1e-12;
    for (r.iterations = 0; r.iterations < max_iter; ++r.iterations) {
        if (gs < target) {
            r.converged = true;
            return r;
        }
        auto g = el_gradient(r.state, lab);
        Eigen::VectorXd rhs(2 * r.state.q);
        for (long j = 0; j < r.state.q; ++j) {
            rhs(2 * j) = -g[static_cast<std::size_t>(j)][0];
            rhs(2 * j + 1) = -g[static_cast<std::size_t>(j)][1];
        }
        bool improved = false;
        for (int attempt = 0; attempt < 12 && !improved; ++attempt, shift *= 100) {
            Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
            lu.compute(sparse_hessian(r.state, lab, shift));
            if (lu.info() != Eigen::Success) continue;
            Eigen::VectorXd d = lu.solve(rhs);
            if (lu.info() != Eigen::Success || !d.allFinite()) continue;
            State t = r.state;
            for (long j = 0; j < t.q; ++j) {
                t.x[static_cast<std::size_t>(j)][0] += d(2 * j);
                t.x[static_cast<std::size_t>(j)][1] += d(2 * j + 1);
            }
            double gt = grad_size(t, lab);
            if (gt < gs) {
                r.state = std::move(t);
                gs = gt;
                improved = true;
            }
        }
        shift = std::max(1e-12, shift * 1e-4);
        if (!improved) {
            if (gs < target) break;
            throw Error(Errc::singular,
                        "Newton step does not reduce the gradient (Hessian near singular); try the gradient flow");
        }
    }
    r.converged = gs < target;
    return r;
}

Pt critical_point(Perturbation kind) {
    Pt best{0, 0};
    double vmax = -1e300;
    const int n = 200;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double x0 = (i + 0.5) / n, x1 = (j + 0.5) / n;
            double v = potential(kind, x0, x1);
            if (v > vmax) {
                vmax = v;
                best = {x0, x1};
            }
        }
    for (int it = 0; it < 50; ++it) {
        auto g = potential_grad(kind, best[0], best[1]);
        auto h = potential_hess(kind, best[0], best[1]);
        double det = h[0] * h[2] - h[1] * h[1];
        if (det == 0) break;
        double d0 = (h[2] * g[0] - h[1] * g[1]) / det, d1 = (h[0] * g[1] - h[1] * g[0]) / det;
        best = {best[0] - d0, best[1] - d1};
        if (std::fabs(d0) + std::fabs(d1) < 1e-15) break;
    }
    return {best[0] - std::floor(best[0]), best[1] - std::floor(best[1])};
}

std::vector<ContinuationStep> continuation(std::array<long, 2> p, long q, Perturbation kind,
                                           const std::vector<double>& schedule, double jitter, std::uint64_t seed,
                                           double target) {
    std::vector<ContinuationStep> out;
    State s = uniform_state(p, q, critical_point(kind));
    if (jitter > 0) {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> u(-jitter, jitter);
        for (auto& x : s.x) {
            x[0] += u(rng);
            x[1] += u(rng);
        }
    }
    // a short descent first, so Newton more often starts in a minimizer's basin
    auto settle = [&](const State& seed_state, const Lab& lab) {
        FlowControl rough;
        rough.target = 1e-4;
        State start = gradient_flow(seed_state, lab, rough).state;
        try {
            NewtonResult nr = newton_min(start, lab, target);
            if (nr.converged) return nr.state;
            FlowControl ctl;
            ctl.target = std::sqrt(target);
            return newton_min(gradient_flow(nr.state, lab, ctl).state, lab, target).state;
        } catch (const Error&) {
            FlowControl ctl;
            ctl.target = target;
            return gradient_flow(start, lab, ctl).state;
        }
    };
    Lab lab{kind, 0};
    if (jitter > 0) s = settle(s, lab);
    out.push_back({0, s, quality(s, lab), morse_index(s, lab)});
    for (double e : schedule) {
        if (e == 0 && !out.empty() && out.back().eps == 0) continue;
        lab.eps = e;
        s = settle(s, lab);
        out.push_back({e, s, quality(s, lab), morse_index(s, lab)});
    }
    return out;
}

std::vector<double> lyapunov(const std::vector<Eigen::MatrixXd>& jac, int n_vectors, int cycles, int warmup,
                             double renorm) {
    if (jac.empty()) throw Error(Errc::invalid_argument, "no Jacobians");
    const int dim = static_cast<int>(jac.front().rows());
    if (n_vectors < 1 || n_vectors > dim) throw Error(Errc::invalid_argument, "bad number of tangent vectors");
    Eigen::MatrixXd frame = Eigen::MatrixXd::Identity(dim, n_vectors);
    std::vector<double> sums(static_cast<std::size_t>(n_vectors), 0.0);
    auto orthonormalise = [&](bool record) {
        for (int k = 0; k < n_vectors; ++k) {
            for (int i = 0; i < k; ++i) frame.col(k) -= frame.col(i).dot(frame.col(k)) * frame.col(i);
            double nk = frame.col(k).norm();
            if (record) sums[static_cast<std::size_t>(k)] += std::log(nk);
            frame.col(k) /= nk;
        }
    };
    long steps = 0;
    for (int c = 0; c < warmup + cycles; ++c) {
        bool record = c >= warmup;
        for (const auto& j : jac) {
            frame = j * frame;
            if (record) ++steps;
            if (frame.colwise().norm().maxCoeff() > renorm) orthonormalise(record);
        }
        if (c + 1 == warmup) orthonormalise(false);
    }
    orthonormalise(true);
    for (auto& s : sums) s /= static_cast<double>(steps);
    return sums;
}

std::vector<Eigen::MatrixXd> orbit_jacobians(const State& s, const Lab& lab) {
    std::vector<Eigen::MatrixXd> out;
    out.reserve(s.x.size());
    for (const Pt& x : s.x) out.emplace_back(phase_jacobian(x, lab));
    return out;
}

Eigen::MatrixXd std_jacobian(double x, const StdFamily& fam) {
    double d = fam.dforce(x);
    Eigen::MatrixXd j(2, 2);
    j << 1 + d, 1, d, 1;
    return j;
}

std::vector<SmoothPair> smoothness_pairs(const State& s, const Lab& lab, std::size_t m) {
    auto mom = momenta(s, lab);
    struct Cand {
        double dx;
        std::size_t i, j;
    };
    std::vector<Cand> all;
    const std::size_t n = s.x.size();
    all.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            double a = wrap(s.x[i][0] - s.x[j][0]), b = wrap(s.x[i][1] - s.x[j][1]);
            double dx = std::sqrt(a * a + b * b);
            if (dx > 1e-12) all.push_back({dx, i, j});
        }
    std::size_t k = std::min(m, all.size());
    auto by_dx = [](const Cand& u, const Cand& v) {
        return u.dx < v.dx || (u.dx == v.dx && (u.i < v.i || (u.i == v.i && u.j < v.j)));
    };
    std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(k), all.end(), by_dx);
    std::vector<SmoothPair> out;
    out.reserve(k);
    for (std::size_t t = 0; t < k; ++t) {
        const Cand& c = all[t];
        double a = mom[c.i][0] - mom[c.j][0], b = mom[c.i][1] - mom[c.j][1];
        out.push_back({std::sqrt(a * a + b * b) / c.dx, c.dx});
    }
    return out;
}

double deviation(const State& s) {
    double worst = 0;
    const Pt& x0 = s.x.front();
    for (long j = 0; j < s.q; ++j) {
        double t = static_cast<double>(j) / static_cast<double>(s.q);
        const Pt& x = s.x[static_cast<std::size_t>(j)];
        double a = wrap(x[0] - x0[0] - t * static_cast<double>(s.p[0]));
        double b = wrap(x[1] - x0[1] - t * static_cast<double>(s.p[1]));
        worst = std::max(worst, std::sqrt(a * a + b * b));
    }
    return worst;
}

}  // namespace converse
