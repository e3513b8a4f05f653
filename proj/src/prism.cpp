#include "prism.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "errors.hpp"

namespace converse {

const char* status_name(PrismStatus s) {
    switch (s) {
        case PrismStatus::no_tori: return "NO_TORI";
        case PrismStatus::untried: return "UNTRIED";
        case PrismStatus::maybe: return "MAYBE";
        case PrismStatus::active: return "ACTIVE";
        case PrismStatus::symmetric: return "SYMMTRC";
    }
    return "?";
}

PrismStatus status_from_name(const std::string& s) {
    for (auto st : {PrismStatus::no_tori, PrismStatus::untried, PrismStatus::maybe, PrismStatus::active,
                    PrismStatus::symmetric})
        if (s == status_name(st)) return st;
    throw Error(Errc::parse, "unknown prism status '" + s + "'");
}

Interval Prism::coord(int row) const { return Interval::around(center.x[static_cast<std::size_t>(row)], row_sum(p, row)); }

Interval Prism::coord_sum(int row_a, int row_b) const {
    Dec r(0);
    for (int j = 0; j < 7; ++j) r += (p(row_a, j) + p(row_b, j)).abs();
    return Interval::around(center.x[static_cast<std::size_t>(row_a)] + center.x[static_cast<std::size_t>(row_b)], r);
}

EngineConfig make_engine_config(long dp, double min_angle_degrees) {
    if (dp < 5) throw Error(Errc::invalid_argument, "engine dp must be at least 5");
    EngineConfig cfg;
    cfg.dp = dp;
    cfg.safety_dp = 5;
    cfg.precision = dp + cfg.safety_dp;
    cfg.max_error = Dec::pow10(-dp);
    cfg.trig = set_trig_dp(cfg.precision + 2);
    cfg.min_angle = min_angle_degrees * 3.14159265358979323846 / 180.0;
    return cfg;
}

SetBounds set_bounds(const Prism& s, const TrigConfig& cfg) {
    SetBounds sb;
    sb.pb = phase_bounds(s.coord(0), s.coord(1), s.coord(2), s.coord(5), s.coord(6), s.coord_sum(5, 6), cfg);
    sb.beta = beta_block(sb.pb);
    sb.gamma = gamma_block(sb.pb);
    return sb;
}

// ---- inversion ----------------------------------------------------------------

InverseWithError rgauss_at(const DecMat& m, long w) {
    const int n = m.rows();
    if (n != m.cols()) throw Error(Errc::invalid_argument, "rgauss needs a square matrix");
    DecMat g(n, 2 * n, Dec(0));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) g(i, j) = m(i, j);
        g(i, n + i) = Dec(1);
    }
    const Dec eps = Dec::pow10(-w);
    Dec d(0);  // entrywise error of the working array so far
    std::vector<bool> row_done(static_cast<std::size_t>(n)), col_done(static_cast<std::size_t>(n));
    std::vector<std::pair<int, int>> pivots;
    for (int step = 0; step < n; ++step) {
        int p = -1, q = -1;
        Dec best(-1);
        for (int i = 0; i < n; ++i) {
            if (row_done[static_cast<std::size_t>(i)]) continue;
            for (int j = 0; j < n; ++j) {
                if (col_done[static_cast<std::size_t>(j)]) continue;
                Dec a = g(i, j).abs();
                if (best < a) {
                    best = a;
                    p = i;
                    q = j;
                }
            }
        }
        const Dec piv = g(p, q);
        const Dec apiv = piv.abs();
        if (piv.is_zero() || apiv <= Dec(2) * d) throw Error(Errc::singular, "pivot indistinguishable from zero");
        row_done[static_cast<std::size_t>(p)] = true;
        col_done[static_cast<std::size_t>(q)] = true;
        pivots.emplace_back(p, q);

        // (i) error of the reciprocal pivot
        // eps is charged only where a truncation actually dropped digits
        auto slop = [&](bool exact) { return exact ? Dec(0) : eps; };
        Dec piv_inv = divide(Dec(1), piv, w);
        Dec d_piv = (d.is_zero() ? Dec(0) : divide_up(d, apiv * (apiv - d), w)) + slop(piv_inv * piv == Dec(1));

        // (ii) normalise the pivot row
        Dec row_max(0);
        for (int k = 0; k < 2 * n; ++k)
            if (k != q) row_max = max(row_max, g(p, k).abs());
        bool exact = true;
        for (int k = 0; k < 2 * n; ++k) {
            Dec full = g(p, k) * piv_inv;
            g(p, k) = truncate(full, w);
            exact = exact && g(p, k) == full;
        }
        g(p, q) = Dec(1);
        Dec d_r = d * piv_inv.abs() + d_piv * row_max + d * d_piv + slop(exact);

        // (iii) eliminate the pivot column from the other rows
        Dec norm_row_max(0), col_max(0);
        for (int k = 0; k < 2 * n; ++k)
            if (k != q) norm_row_max = max(norm_row_max, g(p, k).abs());
        exact = true;
        for (int l = 0; l < n; ++l) {
            if (l == p) continue;
            Dec f = g(l, q);
            col_max = max(col_max, f.abs());
            if (f.is_zero()) continue;
            for (int k = 0; k < 2 * n; ++k) {
                if (g(p, k).is_zero()) continue;
                Dec full = g(l, k) - f * g(p, k);
                g(l, k) = truncate(g(l, k) - truncate(f * g(p, k), w), w);
                exact = exact && g(l, k) == full;
            }
            g(l, q) = Dec(0);
        }
        Dec d_m = d + d * norm_row_max + d_r * col_max + d * d_r + slop(exact) + slop(exact);

        // (iv) round the bound up to w places
        Dec d_next = max(d_m, d_r);
        d = truncate(d_next, w);
        if (d != d_next) d += eps;
    }
    InverseWithError out;
    out.inv = DecMat(n, n, Dec(0));
    for (auto [p, q] : pivots)
        for (int j = 0; j < n; ++j) out.inv(q, j) = g(p, n + j);
    out.delta = d;
    out.inv_dp = w;
    return out;
}

InverseWithError rgauss(const DecMat& m, long precision) {
    const Dec target = Dec::pow10(-precision);
    Dec max_m(0);
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) max_m = max(max_m, m(i, j).abs());
    long w = precision + 10;
    std::string why = "matrix is singular";
    for (int attempt = 0; attempt < 3; ++attempt, w *= 2) {
        try {
            InverseWithError r = rgauss_at(m, w);
            if (r.delta <= target && Dec(m.rows()) * r.delta * max_m <= target) return r;
            why = "inverse error bound above 10^-precision";
        } catch (const Error& e) {
            if (e.code() != Errc::singular) throw;
        }
    }
    throw Error(Errc::singular, "rgauss: " + why);
}

// ---- fatteners ----------------------------------------------------------------

namespace {

bool is_zero_block(const DecMat& m) {
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            if (!m(i, j).is_zero()) return false;
    return true;
}

ExtPoint image_center(const Prism& s, const EngineConfig& cfg) {
    ExtPoint c = g_abc(s.center, cfg.trig);
    for (auto& x : c.x) x = truncate(x, cfg.precision);
    return c;
}

DecMat truncated(const DecMat& m, long dp) {
    DecMat r = m;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) r(i, j) = truncate(m(i, j), dp);
    return r;
}

Prism assemble(const Prism& s, const ExtPoint& center, const DecMat& a, const std::vector<Dec>& w) {
    Prism out;
    out.center = center;
    out.p = DecMat(7, 7, Dec(0));
    for (int i = 0; i < 7; ++i)
        for (int j = 0; j < 7; ++j) out.p(i, j) = a(i, j) * w[static_cast<std::size_t>(j)];
    out.status = s.status;
    out.n_cuts = s.n_cuts;
    out.history = s.history;
    return out;
}

}  // namespace

ImageResult fixed_form_image(const Prism& s, const SetBounds& sb, const EngineConfig& cfg) {
    const DecMat& P = s.p;
    DecMat Ppp = P.block(0, 0, 3, 3), Pup = P.block(3, 0, 2, 3), Pvp = P.block(5, 0, 2, 3);
    DecMat Puu = P.block(3, 3, 2, 2), Puv = P.block(3, 5, 2, 2), Pvu = P.block(5, 3, 2, 2), Pvv = P.block(5, 5, 2, 2);
    if (!is_zero_block(Puu) || !is_zero_block(Pvu))
        throw Error(Errc::invalid_argument, "fixed-form fattener needs P_uu = P_vu = 0");

    DecMat beta_c = truncated(beta_at(s.center, cfg.trig), cfg.precision);
    DecMat gamma_c = truncated(gamma_at(s.center, cfg.trig), cfg.precision);

    DecMat A(7, 7, Dec(0));
    A.set_block(0, 0, Ppp);
    A.set_block(3, 0, Pvp);
    A.set_block(5, 0, gamma_c * Ppp - Pup + beta_c * Pvp);
    DecMat Auv = Pvu + Pvv;
    DecMat Avu = beta_c * Auv;
    DecMat Avv = beta_c * Pvv - Puv;
    A.set_block(3, 5, Auv);
    A.set_block(5, 3, Avu);
    A.set_block(5, 5, Avv);

    Dec det_uv = Auv(0, 0) * Auv(1, 1) - Auv(0, 1) * Auv(1, 0);
    if (det_uv.is_zero()) throw Error(Errc::singular, "fixed-form fattener: A_uv is singular");
    InverseWithError inv_vu = rgauss(Avu, cfg.precision);

    Dec bracket = mat_sum_ub(sb.gamma - to_interval(gamma_c)) * mat_sum(Ppp) +
                  mat_sum_ub(sb.beta) * mat_sum(Pvu) +
                  mat_sum_ub(sb.beta - to_interval(beta_c)) * (mat_sum(Pvp) + mat_sum(Pvv));

    // |A_uv^-1| = |adj| / |det|
    Dec adet = det_uv.abs();
    Dec inv_uv_rows[2] = {divide_up(Auv(1, 1).abs() + Auv(0, 1).abs(), adet, cfg.precision),
                          divide_up(Auv(1, 0).abs() + Auv(0, 0).abs(), adet, cfg.precision)};
    DecMat adj(2, 2, Dec(0));
    adj(0, 0) = Auv(1, 1);
    adj(0, 1) = -Auv(0, 1);
    adj(1, 0) = -Auv(1, 0);
    adj(1, 1) = Auv(0, 0);
    DecMat vv_adj = Avv * adj;
    DecMat corner = inv_vu.inv * vv_adj;  // det * A_vu^-1 A_vv A_uv^-1, up to the inverse error
    Dec corner_err = inv_vu.delta * mat_sum(vv_adj);

    std::vector<Dec> w(7, Dec(1));
    for (int j = 0; j < 2; ++j) {
        Dec rs = row_sum(inv_vu.inv, j) + Dec(2) * inv_vu.delta;
        // centre error through rows u of A^-1: [-A_vu^-1 A_vv A_uv^-1, A_vu^-1]
        Dec slack = (rs + divide_up(row_sum(corner, j) + corner_err, adet, cfg.precision)) * cfg.max_error;
        w[static_cast<std::size_t>(3 + j)] = rs * bracket + slack;
        // rows v of A^-1 DG P are exactly [0, 0, I]; A^-1 rows v are [A_uv^-1, 0]
        w[static_cast<std::size_t>(5 + j)] = Dec(1) + inv_uv_rows[j] * cfg.max_error;
    }
    ImageResult r;
    r.a = A;
    r.w = w;
    r.image = truncate_prism(assemble(s, image_center(s, cfg), A, w), cfg.precision);
    return r;
}

void separate_columns(ColumnBlock& col, double min_angle, std::array<bool, 4>& changed) {
    auto dot = [](const std::array<double, 4>& x, const std::array<double, 4>& y) {
        double s = 0;
        for (int i = 0; i < 4; ++i) s += x[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(i)];
        return s;
    };
    changed.fill(false);
    for (int pass = 0; pass < 3; ++pass) {
        bool any = false;
        for (std::size_t j = 0; j < 4; ++j)
            for (std::size_t k = j + 1; k < 4; ++k) {
                double nj = std::sqrt(dot(col[j], col[j])), nk = std::sqrt(dot(col[k], col[k]));
                if (nj == 0 || nk == 0) continue;
                double c = std::fabs(dot(col[j], col[k])) / (nj * nk);
                double angle = std::acos(std::min(1.0, c));
                if (angle >= min_angle * (1 - 1e-12)) continue;
                std::size_t lo = nj < nk ? j : k, hi = lo == j ? k : j;
                double nl = std::min(nj, nk), nh = std::max(nj, nk);
                std::array<double, 4> e{}, perp{};
                for (std::size_t i = 0; i < 4; ++i) e[i] = col[hi][i] / nh;
                double along = dot(col[lo], e);
                for (std::size_t i = 0; i < 4; ++i) perp[i] = col[lo][i] - along * e[i];
                double np = std::sqrt(dot(perp, perp));
                if (np < 1e-14 * nl) {
                    // exactly parallel: use the coordinate direction least aligned with e
                    std::size_t best = 0;
                    for (std::size_t i = 1; i < 4; ++i)
                        if (std::fabs(e[i]) < std::fabs(e[best])) best = i;
                    for (std::size_t i = 0; i < 4; ++i) perp[i] = (i == best ? 1.0 : 0.0) - e[best] * e[i];
                    np = std::sqrt(dot(perp, perp));
                }
                double sgn = along < 0 ? -1.0 : 1.0;
                for (std::size_t i = 0; i < 4; ++i)
                    col[lo][i] = nl * (sgn * std::cos(min_angle) * e[i] + std::sin(min_angle) * perp[i] / np);
                changed[lo] = true;
                any = true;
            }
        if (!any) break;
    }
}

DecMat column_rotor_fatten(const DecMat& a, double min_angle) {
    DecMat out = a;
    ColumnBlock col;
    for (int j = 0; j < 4; ++j)
        for (int i = 0; i < 4; ++i) col[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = a(3 + i, 3 + j).to_double();
    std::array<bool, 4> changed{};
    separate_columns(col, min_angle, changed);
    for (int j = 0; j < 4; ++j)
        if (changed[static_cast<std::size_t>(j)])
            for (int i = 0; i < 4; ++i)
                out(3 + i, 3 + j) = Dec::from_double(col[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]);
    return out;
}

ImageResult column_rotor_image(const Prism& s, const SetBounds& sb, const EngineConfig& cfg) {
    const DecMat& P = s.p;
    DecMat Ppp = P.block(0, 0, 3, 3), Pup = P.block(3, 0, 2, 3), Pvp = P.block(5, 0, 2, 3);
    DecMat Puu = P.block(3, 3, 2, 2), Puv = P.block(3, 5, 2, 2), Pvu = P.block(5, 3, 2, 2), Pvv = P.block(5, 5, 2, 2);

    DecMat beta_c = truncated(beta_at(s.center, cfg.trig), cfg.precision);
    DecMat gamma_c = truncated(gamma_at(s.center, cfg.trig), cfg.precision);

    // A = DG_c P with the phase columns rotated apart; the parameter columns
    // stay exactly DG_c P so that their contribution reduces to (DG - DG_c) P.
    DecMat A(7, 7, Dec(0));
    A.set_block(0, 0, Ppp);
    A.set_block(3, 0, Pvp);
    A.set_block(5, 0, gamma_c * Ppp - Pup + beta_c * Pvp);
    A.set_block(3, 3, Pvu);
    A.set_block(3, 5, Pvv);
    A.set_block(5, 3, beta_c * Pvu - Puu);
    A.set_block(5, 5, beta_c * Pvv - Puv);
    A = column_rotor_fatten(A, cfg.min_angle);

    InverseWithError inv = rgauss(A.block(3, 3, 4, 4), cfg.precision);
    const DecMat& B = inv.inv;

    // rows 4..7 of DG P in the phase columns
    IvMat X(4, 4, Interval(Dec(0)));
    X.set_block(0, 0, to_interval(Pvu));
    X.set_block(0, 2, to_interval(Pvv));
    X.set_block(2, 0, mul(sb.beta, Pvu) - to_interval(Puu));
    X.set_block(2, 2, mul(sb.beta, Pvv) - to_interval(Puv));
    IvMat BX = mul(B, X);
    Dec x_sum = mat_sum_ub(X);

    Dec param_bracket = mat_sum_ub(sb.gamma - to_interval(gamma_c)) * mat_sum(Ppp) +
                        mat_sum_ub(sb.beta - to_interval(beta_c)) * mat_sum(Pvp);

    std::vector<Dec> w(7, Dec(1));
    for (int j = 0; j < 4; ++j) {
        Dec rs_v = B(j, 2).abs() + B(j, 3).abs() + Dec(2) * inv.delta;
        Dec rs = row_sum(B, j) + Dec(4) * inv.delta;
        w[static_cast<std::size_t>(3 + j)] =
            rs_v * param_bracket + row_sum_ub(BX, j) + inv.delta * x_sum + rs * cfg.max_error;
    }
    ImageResult r;
    r.a = A;
    r.w = w;
    r.image = truncate_prism(assemble(s, image_center(s, cfg), A, w), cfg.precision);
    return r;
}

ImageResult bound_image(const Prism& s, const SetBounds& sb, Fattener f, const EngineConfig& cfg) {
    return f == Fattener::fixed_form ? fixed_form_image(s, sb, cfg) : column_rotor_image(s, sb, cfg);
}

Prism bound_image(const Prism& s, Fattener f, const EngineConfig& cfg) {
    return bound_image(s, set_bounds(s, cfg.trig), f, cfg).image;
}

Interval circle_lift_image(const Dec& center, const Dec& radius, const Dec& omega, const Dec& eps,
                           const EngineConfig& cfg) {
    const Dec two_pi = Dec(2) * stored_pi();
    const long p = cfg.precision;
    // phi(c), with the trig and division errors folded into max_error
    Dec phi_c = center + omega + divide(eps * rig_sin(two_pi * center, cfg.trig), two_pi, p);
    // |phi'| = |1 + eps cos 2pi x| over the interval
    Interval theta = Interval::around(two_pi * center, two_pi * radius);
    Interval deriv = Interval(Dec(1)) + Interval(eps) * bd_cos(theta, cfg.trig);
    Dec half = radius * deriv.mag() + cfg.max_error;
    return Interval::around(truncate(phi_c, p), half);
}

Prism truncate_prism(const Prism& s, long precision) {
    Prism r = s;
    r.p = truncated(s.p, precision);
    return r;
}

// ---- text form ----------------------------------------------------------------

std::string serialize(const Prism& s) {
    std::ostringstream os;
    os << "prism v1\n";
    os << "status " << status_name(s.status) << "\n";
    os << "cuts " << s.n_cuts;
    for (const auto& c : s.history) os << ' ' << c.axis << (c.side < 0 ? '-' : '+');
    os << "\ncenter";
    for (const auto& x : s.center.x) os << ' ' << x.str();
    os << "\n";
    for (int i = 0; i < 7; ++i) {
        os << "row";
        for (int j = 0; j < 7; ++j) os << ' ' << s.p(i, j).str();
        os << "\n";
    }
    os << "end\n";
    return os.str();
}

namespace {

std::vector<std::string> words(const std::string& line) {
    std::istringstream is(line);
    std::vector<std::string> out;
    std::string w;
    while (is >> w) out.push_back(w);
    return out;
}

}  // namespace

Prism deserialize(const std::vector<std::string>& lines, std::size_t& pos) {
    auto fail = [&](const std::string& why) {
        return Error(Errc::parse, "line " + std::to_string(pos + 1) + ": " + why);
    };
    auto next = [&](const char* key, std::size_t min_words) {
        if (pos >= lines.size()) throw fail(std::string("unexpected end of file, wanted '") + key + "'");
        auto w = words(lines[pos]);
        if (w.empty() || w[0] != key || w.size() < min_words) throw fail(std::string("expected '") + key + "' line");
        return w;
    };
    auto number = [&](const std::string& t) {
        try {
            return Dec::parse(t);
        } catch (const Error&) {
            throw fail("bad number '" + t + "'");
        }
    };
    Prism s;
    auto head = next("prism", 2);
    if (head[1] != "v1") throw fail("unsupported prism version '" + head[1] + "'");
    ++pos;
    auto st = next("status", 2);
    try {
        s.status = status_from_name(st[1]);
    } catch (const Error&) {
        throw fail("unknown status '" + st[1] + "'");
    }
    ++pos;
    auto cuts = next("cuts", 2);
    try {
        s.n_cuts = std::stoi(cuts[1]);
    } catch (const std::exception&) {
        throw fail("bad cut count");
    }
    for (std::size_t i = 2; i < cuts.size(); ++i) {
        const auto& c = cuts[i];
        if (c.size() != 2 || std::string("abc01").find(c[0]) == std::string::npos || (c[1] != '-' && c[1] != '+'))
            throw fail("bad cut '" + c + "'");
        s.history.push_back({c[0], c[1] == '-' ? -1 : 1});
    }
    ++pos;
    auto ctr = next("center", 8);
    if (ctr.size() != 8) throw fail("center needs 7 numbers");
    for (std::size_t i = 0; i < 7; ++i) s.center.x[i] = number(ctr[i + 1]);
    ++pos;
    for (int i = 0; i < 7; ++i) {
        auto row = next("row", 8);
        if (row.size() != 8) throw fail("row needs 7 numbers");
        for (int j = 0; j < 7; ++j) s.p(i, j) = number(row[static_cast<std::size_t>(j + 1)]);
        ++pos;
    }
    next("end", 1);
    ++pos;
    return s;
}

}  // namespace converse
