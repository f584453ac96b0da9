#include "hive/tension.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hive/matrix.hpp"
#include "hive/octahedron.hpp"
#include "hive/threads.hpp"

namespace hive {

namespace {

// Locate the small triangle of the barycentric lattice containing s_hat and
// return up to three (node, weight) pairs.
int barycentric_weights(int m, const SVector& s_hat, std::pair<int, int> nodes[3], double w[3]) {
    double u0 = s_hat.s0 * m;
    double u1 = s_hat.s1 * m;
    u0 = std::clamp(u0, 0.0, static_cast<double>(m));
    u1 = std::clamp(u1, 0.0, static_cast<double>(m) - u0);
    int a = std::min(static_cast<int>(u0), m - 1);
    int b = std::min(static_cast<int>(u1), m - 1);
    if (a + b > m - 1) b = m - 1 - a;
    const double f0 = u0 - a, f1 = u1 - b;
    if (f0 + f1 <= 1.0) {
        nodes[0] = {a, b};
        nodes[1] = {a + 1, b};
        nodes[2] = {a, b + 1};
        w[0] = 1.0 - f0 - f1;
        w[1] = f0;
        w[2] = f1;
    } else {
        nodes[0] = {a + 1, b};
        nodes[1] = {a, b + 1};
        nodes[2] = {a + 1, b + 1};
        w[0] = 1.0 - f1;
        w[1] = 1.0 - f0;
        w[2] = f0 + f1 - 1.0;
    }
    return 3;
}

} // namespace

double SigmaGrid::interpolate(const SVector& s_hat) const {
    std::pair<int, int> nd[3];
    double w[3];
    barycentric_weights(m, s_hat, nd, w);
    double acc = 0.0;
    for (int k = 0; k < 3; ++k) acc += w[k] * node(nd[k].first, nd[k].second);
    return acc;
}

double evaluate_sigma(const SigmaGrid& grid, const SVector& s) {
    const double t = s.l1();
    if (!(t > 0.0)) throw std::domain_error("evaluate_sigma: |s|_1 must be positive");
    SVector s_hat{s.s0 / t, s.s1 / t, s.s2 / t};
    return grid.interpolate(s_hat) - std::log(t);
}

Hive basis_hive(BasisKind kind, int n) {
    const auto B = lambda_cl_n(n).partial_sums();
    Hive h(n);
    for (int i = 0; i <= n; ++i) {
        for (int j = i; j <= n; ++j) {
            switch (kind) {
                case BasisKind::k011: h.at(i, j) = B[static_cast<size_t>(i)]; break;
                case BasisKind::k101: h.at(i, j) = B[static_cast<size_t>(j)]; break;
                case BasisKind::k110: h.at(i, j) = B[static_cast<size_t>(j - i)]; break;
            }
        }
    }
    return h;
}

Hive interpolant_hive(double sl, double sm, double sn, int n) {
    const double c1 = 0.5 * (-sl + sm + sn);
    const double c2 = 0.5 * (sl - sm + sn);
    const double c3 = 0.5 * (sl + sm - sn);
    const double tol = -1e-12 * std::max({1.0, sl, sm, sn});
    if (c1 < tol || c2 < tol || c3 < tol) {
        throw std::domain_error("interpolant_hive: triangle inequality violated");
    }
    const Hive h1 = basis_hive(BasisKind::k011, n);
    const Hive h2 = basis_hive(BasisKind::k101, n);
    const Hive h3 = basis_hive(BasisKind::k110, n);
    Hive h(n);
    for (size_t k = 0; k < h.v.size(); ++k) {
        h.v[k] = c1 * h1.v[k] + c2 * h2.v[k] + c3 * h3.v[k];
    }
    return h;
}

HessianSample local_slacks(const Hive& h, int i, int j) {
    double s[3];
    local_slack_triple(h, i, j, s);
    return {{s[0], s[1], s[2]}, 0.0};
}

std::vector<HessianSample> collect_samples(const Hive& h, double floor_rel, long* dropped,
                                           int step) {
    const int n = h.n;
    std::vector<HessianSample> out;
    const int b = std::max(1, step);
    if (n < 3 * b) return out;
    const double inv_b2 = 1.0 / (static_cast<double>(b) * b);
    std::vector<double> norms;
    for (int i = 0; i + b <= n - 2 * b; ++i) {
        for (int j = i + b; j <= n - 2 * b; ++j) {
            HessianSample smp;
            smp.s.s0 = (h(i + b, j + b) + h(i, j + b) - h(i, j) - h(i + b, j + 2 * b)) * inv_b2;
            smp.s.s1 = (h(i + b, j + b) + h(i, j) - h(i + b, j) - h(i, j + b)) * inv_b2;
            smp.s.s2 = (h(i + b, j) + h(i + b, j + b) - h(i, j) - h(i + 2 * b, j + b)) * inv_b2;
            out.push_back(smp);
            norms.push_back(smp.s.l1());
        }
    }
    const double w = out.empty() ? 0.0 : 1.0 / static_cast<double>(out.size());
    for (auto& smp : out) smp.weight = w;
    std::vector<double> sorted_norms = norms;
    std::nth_element(sorted_norms.begin(), sorted_norms.begin() + sorted_norms.size() / 2,
                     sorted_norms.end());
    const double median = sorted_norms.empty() ? 0.0 : sorted_norms[sorted_norms.size() / 2];
    const double floor = floor_rel * median;
    long ndrop = 0;
    std::vector<HessianSample> kept;
    kept.reserve(out.size());
    for (const auto& smp : out) {
        if (smp.s.l1() <= floor || !(smp.s.l1() > 0.0)) {
            ++ndrop;
            continue;
        }
        kept.push_back(smp);
    }
    if (dropped) *dropped += ndrop;
    return kept;
}

double rhs_entropy(double sl, double sm, double sn) {
    return min_surface_tension_integral(sl, sm, sn);
}

namespace {

void add_row_impl(SigmaSystem& sys, const std::vector<HessianSample>& samples, double rhs_value,
                  bool planted, const std::function<double(const SVector&)>* target) {
    if (samples.empty()) return;
    std::vector<double> coeffs(static_cast<size_t>(sys.m + 1) * (sys.m + 2) / 2, 0.0);
    SigmaGrid probe(sys.m);  // only for node indexing
    double b = rhs_value;
    for (const auto& smp : samples) {
        const double t = smp.s.l1();
        const double p0 = smp.s.s0 / t, p1 = smp.s.s1 / t, p2 = smp.s.s2 / t;
        // the surface tension is invariant under relabeling the three slack
        // directions (triangle rotations/reflections permute the rhombus
        // types), so each sample contributes through its whole orbit
        const double perms[6][3] = {{p0, p1, p2}, {p0, p2, p1}, {p1, p0, p2},
                                    {p1, p2, p0}, {p2, p0, p1}, {p2, p1, p0}};
        for (const auto& pp : perms) {
            std::pair<int, int> nd[3];
            double w[3];
            barycentric_weights(sys.m, SVector{pp[0], pp[1], pp[2]}, nd, w);
            for (int k = 0; k < 3; ++k) {
                coeffs[probe.idx(nd[k].first, nd[k].second)] += smp.weight * w[k] / 6.0;
            }
        }
        if (planted) {
            b += smp.weight * ((*target)(smp.s) + std::log(t));
        } else {
            b += smp.weight * std::log(t);
        }
    }
    std::vector<std::pair<int, double>> row;
    for (size_t c = 0; c < coeffs.size(); ++c) {
        if (coeffs[c] != 0.0) row.emplace_back(static_cast<int>(c), coeffs[c]);
    }
    sys.rows.push_back(std::move(row));
    sys.b.push_back(b);
}

} // namespace

void add_hive_row(SigmaSystem& sys, const Hive& h, double sl, double sm, double sn,
                  double floor_rel, long* dropped, int step) {
    const auto samples = collect_samples(h, floor_rel, dropped, step);
    add_row_impl(sys, samples, rhs_entropy(sl, sm, sn), false, nullptr);
}

void add_planted_row(SigmaSystem& sys, const Hive& h,
                     const std::function<double(const SVector&)>& target, double floor_rel) {
    const auto samples = collect_samples(h, floor_rel, nullptr);
    add_row_impl(sys, samples, 0.0, true, &target);
}

SolveResult solve_sigma(const SigmaSystem& sys, const SolveOptions& opts) {
    const int m = sys.m;
    const int N = (m + 1) * (m + 2) / 2;
    SolveResult res;
    res.grid = SigmaGrid(m);
    res.rows = sys.row_count();

    Eigen::MatrixXd AtA = Eigen::MatrixXd::Zero(N, N);
    Eigen::VectorXd Atb = Eigen::VectorXd::Zero(N);
    for (size_t r = 0; r < sys.rows.size(); ++r) {
        for (const auto& [ci, cv] : sys.rows[r]) {
            Atb(ci) += cv * sys.b[r];
            for (const auto& [cj, cw] : sys.rows[r]) AtA(ci, cj) += cv * cw;
        }
    }

    // Second-difference rows along the three lattice directions.
    struct CRow { int a, b, c; };  // +1, -2, +1
    std::vector<CRow> C;
    SigmaGrid ix(m);
    auto nid = [&ix](int k0, int k1) { return static_cast<int>(ix.idx(k0, k1)); };
    for (int k0 = 0; k0 <= m; ++k0) {
        for (int k1 = 0; k0 + k1 <= m; ++k1) {
            if (k0 >= 1 && k0 + 1 + k1 <= m)
                C.push_back({nid(k0 - 1, k1), nid(k0, k1), nid(k0 + 1, k1)});
            if (k1 >= 1 && k0 + k1 + 1 <= m)
                C.push_back({nid(k0, k1 - 1), nid(k0, k1), nid(k0, k1 + 1)});
            if (k0 >= 1 && k1 >= 1)
                C.push_back({nid(k0 - 1, k1 + 1), nid(k0, k1), nid(k0 + 1, k1 - 1)});
        }
    }

    Eigen::VectorXd prior = Eigen::VectorXd::Zero(N);
    if (!opts.prior.empty()) {
        if (static_cast<int>(opts.prior.size()) != N) {
            throw std::invalid_argument("solve_sigma: prior size mismatch");
        }
        for (int c = 0; c < N; ++c) prior(c) = opts.prior[static_cast<size_t>(c)];
    }
    Eigen::VectorXd x = Eigen::VectorXd::Zero(N);
    if (!opts.convexity) {
        const double eps = opts.ridge * std::max(1.0, AtA.trace());
        Eigen::MatrixXd M = 2.0 * AtA + eps * Eigen::MatrixXd::Identity(N, N);
        x = M.ldlt().solve(2.0 * Atb + eps * prior);
    } else {
        const long nc = static_cast<long>(C.size());
        Eigen::MatrixXd CtC = Eigen::MatrixXd::Zero(N, N);
        for (const auto& row : C) {
            const int id[3] = {row.a, row.b, row.c};
            const double cv[3] = {1.0, -2.0, 1.0};
            for (int p = 0; p < 3; ++p)
                for (int q = 0; q < 3; ++q) CtC(id[p], id[q]) += cv[p] * cv[q];
        }
        const double rho = opts.rho * std::max(1e-12, AtA.trace()) / std::max(1e-12, CtC.trace());
        const double eps = opts.ridge * std::max(1.0, AtA.trace());
        Eigen::MatrixXd M = 2.0 * AtA + rho * CtC + eps * Eigen::MatrixXd::Identity(N, N);
        Eigen::LDLT<Eigen::MatrixXd> fac(M);
        Eigen::VectorXd z = Eigen::VectorXd::Zero(nc), u = Eigen::VectorXd::Zero(nc);
        Eigen::VectorXd v(nc);
        for (int it = 0; it < opts.admm_iterations; ++it) {
            Eigen::VectorXd rhs = 2.0 * Atb + eps * prior;
            for (long r = 0; r < nc; ++r) {
                const double t = rho * (z(r) - u(r));
                rhs(C[static_cast<size_t>(r)].a) += t;
                rhs(C[static_cast<size_t>(r)].c) += t;
                rhs(C[static_cast<size_t>(r)].b) += -2.0 * t;
            }
            x = fac.solve(rhs);
            for (long r = 0; r < nc; ++r) {
                const auto& cr = C[static_cast<size_t>(r)];
                v(r) = x(cr.a) + x(cr.c) - 2.0 * x(cr.b);
            }
            z = (v + u).cwiseMax(0.0);
            u += v - z;
        }
        // Final feasibility polish: relaxed exact projections onto violated
        // rows, alternated with the pointwise floor when one is configured.
        const bool has_floor = !opts.floor_values.empty();
        if (has_floor && static_cast<int>(opts.floor_values.size()) != N) {
            throw std::invalid_argument("solve_sigma: floor size mismatch");
        }
        const double target = -0.5 * opts.convexity_slack;
        for (int sweep = 0; sweep < opts.polish_sweeps; ++sweep) {
            if (has_floor) {
                for (int c = 0; c < N; ++c)
                    x(c) = std::max(x(c), opts.floor_values[static_cast<size_t>(c)]);
            }
            double worst = 0.0;
            for (const auto& cr : C) {
                const double s = x(cr.a) + x(cr.c) - 2.0 * x(cr.b);
                if (s >= 0.0) continue;
                worst = std::min(worst, s);
                const double step = 1.5 * (-s) / 6.0;  // ||(1,-2,1)||^2 = 6
                x(cr.a) += step;
                x(cr.c) += step;
                x(cr.b) -= 2.0 * step;
            }
            bool floor_ok = true;
            if (has_floor && worst >= target) {
                for (int c = 0; c < N && floor_ok; ++c)
                    floor_ok = x(c) >= opts.floor_values[static_cast<size_t>(c)] - 1e-12;
            }
            if (worst >= target && floor_ok) break;
        }
    }

    for (int c = 0; c < N; ++c) res.grid.values[static_cast<size_t>(c)] = x(c);

    double ss = 0.0;
    for (size_t r = 0; r < sys.rows.size(); ++r) {
        double ax = 0.0;
        for (const auto& [ci, cv] : sys.rows[r]) ax += cv * x(ci);
        ss += (ax - sys.b[r]) * (ax - sys.b[r]);
    }
    res.residual = sys.rows.empty() ? 0.0 : std::sqrt(ss / static_cast<double>(sys.rows.size()));
    double mins = 0.0;
    for (const auto& cr : C) mins = std::min(mins, x(cr.a) + x(cr.c) - 2.0 * x(cr.b));
    res.min_convexity_slack = mins;
    return res;
}

EstimateResult estimate_sigma(const EstimatorConfig& cfg, RandomSource rng) {
    struct HiveRow {
        std::vector<HessianSample> samples;
        double rhs = 0.0;
    };
    std::vector<HiveRow> rows(static_cast<size_t>(cfg.hives));
    std::vector<long> drops(static_cast<size_t>(cfg.hives), 0);

    parallel_for(cfg.hives, [&](int k) {
        RandomSource r = rng.split(static_cast<std::uint64_t>(k) + 1001);
        const double lg_lo = std::log(cfg.sigma_min), lg_hi = std::log(cfg.sigma_max);
        const double sl = std::exp(lg_lo + (lg_hi - lg_lo) * r.uniform01());
        const double sm = std::exp(lg_lo + (lg_hi - lg_lo) * r.uniform01());
        const double sn = std::hypot(sl, sm);
        Hive h;
        if (cfg.biased_interpolant) {
            h = interpolant_hive(sl, sm, sn, cfg.n);
        } else {
            HiveSamplerConfig sc;
            sc.kind = HiveSamplerConfig::Kind::gue;
            sc.n = cfg.n;
            sc.sd_x = sl * std::sqrt(static_cast<double>(cfg.n));
            sc.sd_y = sm * std::sqrt(static_cast<double>(cfg.n));
            sc.threads = 1;
            h = pqr_hive(sample_excavated(sc, r));
        }
        const int step = cfg.coarse_step > 0 ? cfg.coarse_step
                                             : std::clamp(cfg.n / 20, 2, std::max(2, cfg.n / 8));
        rows[static_cast<size_t>(k)].samples =
            collect_samples(h, cfg.floor_rel, &drops[static_cast<size_t>(k)], step);
        rows[static_cast<size_t>(k)].rhs = rhs_entropy(sl, sm, sn);
    }, cfg.threads);

    SigmaSystem sys(cfg.m);
    long dropped = 0;
    for (int k = 0; k < cfg.hives; ++k) {
        dropped += drops[static_cast<size_t>(k)];
        add_row_impl(sys, rows[static_cast<size_t>(k)].samples, rows[static_cast<size_t>(k)].rhs,
                     false, nullptr);
    }

    SolveOptions solve_opts = cfg.solve;
    if (solve_opts.prior.empty()) {
        // anchor unreached nodes at the proved lower-bound profile and keep
        // every node above it (exact bound at interior nodes; edge nodes,
        // where the bound diverges, use a half-cell inset proxy)
        SigmaGrid ix(cfg.m);
        solve_opts.prior.assign(ix.node_count(), 0.0);
        solve_opts.floor_values.assign(ix.node_count(), 0.0);
        for (int k0 = 0; k0 <= cfg.m; ++k0) {
            for (int k1 = 0; k0 + k1 <= cfg.m; ++k1) {
                const int k2 = cfg.m - k0 - k1;
                const double mm = cfg.m;
                const double inset = 0.3;
                const SVector s{std::max(static_cast<double>(k0), inset) / mm,
                                std::max(static_cast<double>(k1), inset) / mm,
                                std::max(static_cast<double>(k2), inset) / mm};
                const double lb = sigma_lower_bound(s);
                solve_opts.prior[ix.idx(k0, k1)] = lb;
                solve_opts.floor_values[ix.idx(k0, k1)] = lb;
            }
        }
    }
    const SolveResult sol = solve_sigma(sys, solve_opts);
    EstimateResult out;
    out.grid = sol.grid;
    out.residual = sol.residual;
    out.rows = sol.rows;
    out.dropped_samples = dropped;
    out.min_convexity_slack = sol.min_convexity_slack;
    return out;
}

SigmaSystem planted_g_system(int m, int rows, RandomSource rng) {
    SigmaSystem sys(m);
    const int n = 12;
    for (int k = 0; k < rows; ++k) {
        RandomSource r = rng.split(static_cast<std::uint64_t>(k) + 31);
        // jittered interior node of the simplex grid
        const int k0 = 1 + static_cast<int>(r.uniform01() * (m - 2));
        const int k1 = 1 + static_cast<int>(r.uniform01() * (m - 1 - k0));
        double a = (k0 + 0.1 * (r.uniform01() - 0.5)) / m;
        double b = (k1 + 0.1 * (r.uniform01() - 0.5)) / m;
        a = std::max(a, 1e-3);
        b = std::max(b, 1e-3);
        if (a + b > 1.0 - 1e-3) continue;
        const double t = std::exp(std::log(0.25) + std::log(16.0) * r.uniform01());
        const SVector s{t * a, t * b, t * (1.0 - a - b)};
        // constant-Hessian hive with local slack triple exactly s
        Hive q(n);
        const double hxy = s.s1, hyy = -(s.s0 + s.s1), hxx = -(s.s1 + s.s2);
        for (int i = 0; i <= n; ++i)
            for (int j = i; j <= n; ++j)
                q.at(i, j) = 0.5 * (hxx * i * i + 2.0 * hxy * i * j + hyy * j * j);
        add_planted_row(sys, q, [](const SVector& v) { return g_candidate(v); });
    }
    return sys;
}

ComparisonReport comparison_report(const SigmaGrid& grid, int concavity_trials, std::uint64_t seed) {
    ComparisonReport rep;
    static const double table_pts[8][3] = {
        {0.1, 0.1, 0.8}, {0.1, 0.2, 0.7}, {0.1, 0.3, 0.6}, {0.1, 0.4, 0.5},
        {0.2, 0.2, 0.6}, {0.2, 0.3, 0.5}, {0.2, 0.4, 0.4}, {0.3, 0.3, 0.4}};
    for (const auto& p : table_pts) {
        TableRow row;
        row.s = {p[0], p[1], p[2]};
        row.exp_sigma_num = std::exp(-evaluate_sigma(grid, row.s));
        row.exp_g = std::exp(-g_candidate(row.s));
        rep.max_table_gap = std::max(rep.max_table_gap, std::fabs(row.exp_sigma_num - row.exp_g));
        rep.table.push_back(row);
    }

    const int m = grid.m;
    for (int k0 = 1; k0 < m; ++k0) {
        for (int k1 = 1; k0 + k1 < m; ++k1) {
            const int k2 = m - k0 - k1;
            const SVector s{static_cast<double>(k0) / m, static_cast<double>(k1) / m,
                            static_cast<double>(k2) / m};
            const double sig = grid.node(k0, k1);
            rep.node_minus_g.push_back(sig - g_candidate(s));
            const double lb = sigma_lower_bound(s);
            rep.max_lower_bound_violation = std::max(rep.max_lower_bound_violation, lb - sig);
        }
    }

    RandomSource rng(seed);
    long viol = 0;
    for (int t = 0; t < concavity_trials; ++t) {
        auto draw = [&]() {
            double a = rng.uniform01(), b = rng.uniform01();
            if (a + b > 1.0) { a = 1.0 - a; b = 1.0 - b; }
            const double eps = 0.02;
            a = eps + a * (1.0 - 3.0 * eps);
            b = eps + b * (1.0 - 3.0 * eps);
            return SVector{a, b, 1.0 - a - b};
        };
        const SVector p = draw(), q = draw();
        // pairs inside one interpolation facet only probe the piecewise-linear
        // kink, not the function; keep them separated
        const double sep = std::fabs(p.s0 - q.s0) + std::fabs(p.s1 - q.s1) + std::fabs(p.s2 - q.s2);
        if (sep < 3.0 / grid.m) continue;
        const SVector mid{0.5 * (p.s0 + q.s0), 0.5 * (p.s1 + q.s1), 0.5 * (p.s2 + q.s2)};
        const double em = std::exp(-grid.interpolate(mid));
        const double ep = std::exp(-grid.interpolate(p));
        const double eq = std::exp(-grid.interpolate(q));
        if (em < 0.5 * (ep + eq) - 1e-3) ++viol;
    }
    rep.concavity_violation_fraction = static_cast<double>(viol) / std::max(1, concavity_trials);

    for (double u : {0.30, 0.25, 0.20, 0.15, 0.10, 0.05}) {
        const SVector s{u, u, 1.0 - 2.0 * u};
        rep.f_gap_ray.push_back(evaluate_sigma(grid, s) - f_limit(s));
    }
    return rep;
}

} // namespace hive
