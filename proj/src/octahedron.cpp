#include "hive/octahedron.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "hive/threads.hpp"

namespace hive {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
} // namespace

TetrahedronField::TetrahedronField(int n) : n_(n) {
    if (n < 1) throw std::invalid_argument("TetrahedronField: n must be positive");
    x_offset_.resize(static_cast<size_t>(n) + 2, 0);
    size_t acc = 0;
    for (int x = 0; x <= n; ++x) {
        x_offset_[static_cast<size_t>(x)] = acc;
        const size_t m = static_cast<size_t>(n - x);
        acc += (m + 1) * (m + 2) / 2;
    }
    x_offset_[static_cast<size_t>(n) + 1] = acc;
    values_.assign(acc, kNaN);
    bits_.assign(acc, 0);
}

double TetrahedronField::value_scale() const {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (double v : values_) {
        if (std::isnan(v)) continue;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    return hi > lo ? hi - lo : 0.0;
}

TetrahedronField init_top_panels(const DoubleHive& d) {
    if (d.glue != DoubleHive::Glue::main) {
        throw std::invalid_argument("init_top_panels: expected a main-glued double hive");
    }
    const int n = d.n;
    TetrahedronField t(n);
    const double tol = 1e-9 * std::max(1.0, d.value_scale());
    // x = 0 panel: (0, j-i, n-j, i) <- upper triangle value at (i, j)
    for (int i = 0; i <= n; ++i) {
        for (int j = i; j <= n; ++j) {
            t.at(0, j - i, n - j, i) = d(i, j);
        }
    }
    // y = 0 panel: (i-j, 0, n-i, j) <- lower triangle value at (i, j)
    for (int j = 0; j <= n; ++j) {
        for (int i = j; i <= n; ++i) {
            double& slot = t.at(i - j, 0, n - i, j);
            if (i == j && !std::isnan(slot)) {
                if (std::fabs(slot - d(i, j)) > tol) {
                    throw std::runtime_error("init_top_panels: panel gluing mismatch");
                }
                continue;
            }
            slot = d(i, j);
        }
    }
    return t;
}

void excavate(TetrahedronField& t, int threads) {
    const int n = t.n();
    std::atomic<bool> bad{false};
    for (int s = 2; s <= n; ++s) {
        const int xmax = s - 1;  // x = 1..s-1, y = s-x >= 1
        parallel_for(xmax, [&](int xi) {
            const int x = xi + 1;
            const int y = s - x;
            for (int z = 0; z <= n - s; ++z) {
                const int w = n - s - z;
                const double f = t(x - 1, y - 1, z + 1, w + 1);
                const double a = t(x, y - 1, z + 1, w);
                const double b = t(x, y - 1, z, w + 1);
                const double c = t(x - 1, y, z, w + 1);
                const double d = t(x - 1, y, z + 1, w);
                const double ac = a + c, bd = b + d;
                if (std::isnan(f) || std::isnan(ac) || std::isnan(bd)) {
                    bad.store(true, std::memory_order_relaxed);
                    continue;
                }
                t.at(x, y, z, w) = std::max(ac, bd) - f;
                t.bit_at(x, y, z, w) = ac >= bd ? 0 : 1;
            }
        }, threads);
        if (bad.load()) throw std::runtime_error("excavate: uninitialized stencil access");
    }
    t.mark_excavated();
}

double octahedron_audit(const TetrahedronField& t) {
    const int n = t.n();
    double worst = 0.0;
    for (int x = 0; x <= n - 2; ++x) {
        for (int y = 0; x + y <= n - 2; ++y) {
            for (int z = 0; x + y + z <= n - 2; ++z) {
                const int w = n - 2 - x - y - z;
                const double a = t(x + 1, y, z + 1, w);
                const double b = t(x + 1, y, z, w + 1);
                const double c = t(x, y + 1, z, w + 1);
                const double d = t(x, y + 1, z + 1, w);
                const double e = t(x + 1, y + 1, z, w);
                const double f = t(x, y, z + 1, w + 1);
                worst = std::max(worst, std::fabs(std::max(a + c, b + d) - e - f));
            }
        }
    }
    return worst;
}

DoubleHive bottom_panels(const TetrahedronField& t) {
    if (!t.excavated() && t.n() > 1) {
        throw std::invalid_argument("bottom_panels: field not excavated");
    }
    const int n = t.n();
    DoubleHive d(n, DoubleHive::Glue::anti);
    for (int i = 0; i <= n; ++i) {
        for (int j = 0; j <= n; ++j) {
            if (i + j <= n) {
                d.at(i, j) = t(i, j, n - i - j, 0);
            } else {
                d.at(i, j) = t(n - j, n - i, 0, i + j - n);
            }
        }
    }
    return d;
}

Hive pqr_hive(const TetrahedronField& t) {
    if (!t.excavated() && t.n() > 1) {
        throw std::invalid_argument("pqr_hive: field not excavated");
    }
    const int n = t.n();
    Hive h(n);
    for (int a = 0; a <= n; ++a)
        for (int b = a; b <= n; ++b) h.at(a, b) = t(a, b - a, n - b, 0);
    return h;
}

namespace {

// Iterative feasibility pass for the hive interior: relaxed projections onto
// the violated rhombus half-spaces, boundary held fixed. Deterministic sweep
// order; stops once every slack clears -tol.
void complete_hive_interior(Hive& h, int max_sweeps, double rel_tol) {
    const int n = h.n;
    if (n < 3) return;
    auto interior = [n](int i, int j) { return i >= 1 && j <= n - 1 && i < j; };
    const double omega = 1.7;
    const double tol = rel_tol * std::max(1.0, h.value_scale());

    struct C { int ai, aj, bi, bj, ci, cj, di, dj; };
    std::vector<C> cs;
    for (int j = 1; j <= n - 1; ++j)
        for (int i = 0; i + 1 <= j; ++i)
            cs.push_back({i, j, i + 1, j, i + 2, j + 1, i + 1, j + 1});
    for (int j = 0; j <= n - 2; ++j)
        for (int i = 0; i <= j; ++i)
            cs.push_back({i, j, i + 1, j + 1, i + 1, j + 2, i, j + 1});
    for (int j = 2; j <= n; ++j)
        for (int i = 0; i <= j - 2; ++i)
            cs.push_back({i, j, i, j - 1, i + 1, j - 1, i + 1, j});

    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double worst = 0.0;
        for (const C& c : cs) {
            const double slack = h(c.bi, c.bj) + h(c.di, c.dj) - h(c.ai, c.aj) - h(c.ci, c.cj);
            if (slack >= 0.0) continue;
            worst = std::max(worst, -slack);
            int nf = 0;
            const bool fa = interior(c.ai, c.aj), fb = interior(c.bi, c.bj);
            const bool fc = interior(c.ci, c.cj), fd = interior(c.di, c.dj);
            nf = fa + fb + fc + fd;
            if (nf == 0) continue;  // pure boundary constraint, nothing movable
            const double step = omega * (-slack) / nf;
            if (fb) h.at(c.bi, c.bj) += step;
            if (fd) h.at(c.di, c.dj) += step;
            if (fa) h.at(c.ai, c.aj) -= step;
            if (fc) h.at(c.ci, c.cj) -= step;
        }
        if (worst <= tol) break;
    }
}

} // namespace

AugmentedHive sample_augmented_hive(const HermitianMatrix& X, const HermitianMatrix& Y,
                                    const AugmentedSampleOptions& opts) {
    if (X.n != Y.n) throw std::invalid_argument("sample_augmented_hive: size mismatch");
    const int n = X.n;
    const double xbar = X.trace() / n;
    const double ybar = Y.trace() / n;
    HermitianMatrix X0 = X, Y0 = Y;
    for (int i = 0; i < n; ++i) {
        X0.at(i, i) -= xbar;
        Y0.at(i, i) -= ybar;
    }

    GTPattern gx, gy;
    try {
        gx = minor_spectra(X0, opts.threads);
        gy = minor_spectra(Y0, opts.threads);
    } catch (const std::exception& e) {
        throw std::runtime_error(std::string("sample_augmented_hive[minors]: ") + e.what());
    }
    const Spectrum Lambda = make_large_gaps(gx, gy, opts.margin);
    const DoubleHive dh = build_double_hive(gx, gy, Lambda);
    TetrahedronField t = init_top_panels(dh);
    excavate(t, opts.threads);

    AugmentedHive A(n);
    // Diagonal and the Gelfand-Tsetlin region from the z = 0 face, each
    // antidiagonal line rebased against its w = const start so the bottom
    // row is exactly zero.
    for (int i = 0; i <= n; ++i) {
        for (int j = 0; j <= i; ++j) {
            A.at(i, j) = t(n - i, j, 0, i - j) - t(n - i + j, 0, 0, i - j);
        }
    }
    Spectrum nu = diag_differences(A);
    if (!nu.is_nonincreasing(1e-9 * std::max(1.0, A.value_scale()))) {
        throw std::runtime_error("sample_augmented_hive: sampled spectrum not nonincreasing");
    }

    // Hive boundary above the diagonal, then a feasible interior.
    const auto lp = Spectrum(gx.top()).partial_sums();
    const auto mp = Spectrum(gy.top()).partial_sums();
    Hive up(n);
    for (int i = 0; i <= n; ++i) {
        for (int j = i; j <= n; ++j) {
            up.at(i, j) = kNaN;
        }
    }
    for (int i = 0; i <= n; ++i) {
        up.at(0, i) = lp[static_cast<size_t>(i)];
        up.at(i, n) = lp.back() + mp[static_cast<size_t>(i)];
        up.at(i, i) = A(i, i);
    }
    const auto np = [&A](int i) { return A(i, i); };
    for (int i = 1; i <= n - 1; ++i) {
        for (int j = i + 1; j <= n - 1; ++j) {
            // blend of the two boundary interpolations used as the start point
            const double g1 = lp[static_cast<size_t>(j)] - lp[static_cast<size_t>(i)] + np(i);
            const double frac = static_cast<double>(j - i) / (n - i);
            const double g2 = np(i) + frac * (lp.back() + mp[static_cast<size_t>(i)] - np(i));
            up.at(i, j) = 0.5 * (g1 + g2);
        }
    }
    complete_hive_interior(up, opts.completion_sweeps, opts.completion_rel_tol);
    for (int i = 0; i <= n; ++i)
        for (int j = i; j <= n; ++j) A.at(i, j) = up(i, j);

    // Restore the traces: affine on each triangle, zero on the bottom row.
    for (int i = 0; i <= n; ++i) {
        for (int j = 0; j <= n; ++j) {
            A.at(i, j) += (i <= j) ? xbar * j + ybar * i : (xbar + ybar) * j;
        }
    }
    return A;
}

bool Tiling::exact_cover() const {
    const int cells = n * n;
    std::vector<char> used(static_cast<size_t>(cells), 0);
    auto up_id = [this](int i, int j) { return i + j * n - j * (j - 1) / 2; };
    // up cells enumerated first (i+j <= n-1), then down cells (i+j <= n-2)
    const int ups = n * (n + 1) / 2;
    auto down_id = [this, ups](int i, int j) { return ups + i + j * (n - 1) - j * (j - 1) / 2; };
    auto claim = [&used](int id) {
        if (id < 0 || id >= static_cast<int>(used.size()) || used[static_cast<size_t>(id)]) return false;
        used[static_cast<size_t>(id)] = 1;
        return true;
    };
    for (const auto& l : lozenges) {
        if (!claim(down_id(l.i, l.j))) return false;
        const int ui = l.o == 0 ? l.i + 1 : l.i;
        const int uj = l.o == 1 ? l.j + 1 : l.j;
        if (!claim(up_id(ui, uj))) return false;
    }
    for (const auto& tt : triangles) {
        if (!claim(tt.up ? up_id(tt.i, tt.j) : down_id(tt.i, tt.j))) return false;
    }
    for (char c : used)
        if (!c) return false;
    return true;
}

Tiling extract_tiling(const TetrahedronField& t, int target_i, int target_j) {
    const int n = t.n();
    Tiling til;
    til.n = n;
    if (n == 0) return til;

    // Which down cells participate: all of them, or only those in the
    // dependency cone of the chosen bottom vertex.
    std::vector<char> active(static_cast<size_t>(n) * n, 0);
    auto mark = [&](int i, int j) {
        if (i >= 0 && j >= 0 && i + j <= n - 2) active[static_cast<size_t>(i) * n + j] = 1;
    };
    if (target_i < 0 || target_j < 0) {
        for (int i = 0; i <= n - 2; ++i)
            for (int j = 0; i + j <= n - 2; ++j) mark(i, j);
    } else {
        if (target_i + target_j > n) throw std::invalid_argument("extract_tiling: target outside panel");
        std::vector<std::array<int, 4>> stack;
        std::vector<char> seen(t.size(), 0);
        stack.push_back({target_i, target_j, n - target_i - target_j, 0});
        while (!stack.empty()) {
            auto [x, y, z, w] = stack.back();
            stack.pop_back();
            if (x < 1 || y < 1) continue;
            const size_t id = t.idx(x, y, z);
            if (seen[id]) continue;
            seen[id] = 1;
            mark(x - 1, y - 1);
            const int b = t.bit(x, y, z, w);
            stack.push_back({x - 1, y - 1, z + 1, w + 1});  // f
            if (b == 0) {
                stack.push_back({x, y - 1, z + 1, w});      // a
                stack.push_back({x - 1, y, z, w + 1});      // c
            } else {
                stack.push_back({x, y - 1, z, w + 1});      // b
                stack.push_back({x - 1, y, z + 1, w});      // d
            }
        }
    }

    // Pair each active down cell with a free adjacent up cell; the argmax
    // bit of the top octahedron over the cell picks the preferred direction.
    std::vector<char> up_used(static_cast<size_t>(n) * n, 0);
    std::vector<char> down_used(static_cast<size_t>(n) * n, 0);
    auto up_free = [&](int i, int j) {
        return i >= 0 && j >= 0 && i + j <= n - 1 && !up_used[static_cast<size_t>(i) * n + j];
    };
    for (int j = 0; j <= n - 2; ++j) {
        for (int i = 0; i + j <= n - 2; ++i) {
            if (!active[static_cast<size_t>(i) * n + j]) continue;
            const int b = t.bit(i + 1, j + 1, n - 2 - i - j, 0);
            const int cand_o[3] = {b == 0 ? 0 : 1, 2, b == 0 ? 1 : 0};
            for (int c = 0; c < 3; ++c) {
                const int o = cand_o[c];
                const int ui = o == 0 ? i + 1 : i;
                const int uj = o == 1 ? j + 1 : j;
                if (!up_free(ui, uj)) continue;
                up_used[static_cast<size_t>(ui) * n + uj] = 1;
                down_used[static_cast<size_t>(i) * n + j] = 1;
                til.lozenges.push_back({o, i, j});
                break;
            }
        }
    }
    for (int j = 0; j <= n - 1; ++j)
        for (int i = 0; i + j <= n - 1; ++i)
            if (!up_used[static_cast<size_t>(i) * n + j]) til.triangles.push_back({1, i, j});
    for (int j = 0; j <= n - 2; ++j)
        for (int i = 0; i + j <= n - 2; ++i)
            if (!down_used[static_cast<size_t>(i) * n + j]) til.triangles.push_back({0, i, j});

    if (!til.exact_cover()) {
        throw std::runtime_error("extract_tiling: tiling extraction inconsistency");
    }
    return til;
}

std::string render_svg(const Tiling& t) {
    const double sq3h = 0.8660254037844386;  // sqrt(3)/2
    const int n = t.n;
    auto px = [&](double i, double j) { return i + 0.5 * j; };
    auto py = [&](double /*i*/, double j) { return (n - j) * sq3h; };
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(4);
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"-0.5 -0.5 "
       << (n + 1.0) << " " << (n * sq3h + 1.0) << "\">\n";
    static const char* fill[4] = {"#d95f02", "#1b9e77", "#7570b3", "#e7e7e7"};
    auto poly = [&](std::initializer_list<std::pair<double, double>> pts, const char* color) {
        os << "<polygon points=\"";
        bool first = true;
        for (auto [i, j] : pts) {
            if (!first) os << " ";
            first = false;
            os << px(i, j) << "," << py(i, j);
        }
        os << "\" fill=\"" << color << "\" stroke=\"#333333\" stroke-width=\"0.02\"/>\n";
    };
    for (const auto& l : t.lozenges) {
        const double i = l.i, j = l.j;
        if (l.o == 0) {
            poly({{i, j + 1}, {i + 1, j}, {i + 2, j}, {i + 1, j + 1}}, fill[0]);
        } else if (l.o == 1) {
            poly({{i + 1, j}, {i + 1, j + 1}, {i, j + 2}, {i, j + 1}}, fill[1]);
        } else {
            poly({{i, j}, {i + 1, j}, {i + 1, j + 1}, {i, j + 1}}, fill[2]);
        }
    }
    for (const auto& tr : t.triangles) {
        const double i = tr.i, j = tr.j;
        if (tr.up) {
            poly({{i, j}, {i + 1, j}, {i, j + 1}}, fill[3]);
        } else {
            poly({{i + 1, j}, {i, j + 1}, {i + 1, j + 1}}, fill[3]);
        }
    }
    os << "</svg>\n";
    return os.str();
}

HermitianMatrix draw_input(const HiveSamplerConfig& cfg, int which, RandomSource& rng) {
    switch (cfg.kind) {
        case HiveSamplerConfig::Kind::gue:
            return sample_gue(cfg.n, which == 0 ? cfg.sd_x : cfg.sd_y, rng);
        case HiveSamplerConfig::Kind::fixed_spectra:
            return conjugate_diag(which == 0 ? cfg.lambda_fixed : cfg.mu_fixed,
                                  haar_unitary(cfg.n, rng));
        case HiveSamplerConfig::Kind::projection:
            return random_projection(cfg.n, cfg.rank, rng);
    }
    throw std::logic_error("draw_input: bad kind");
}

TetrahedronField sample_excavated(const HiveSamplerConfig& cfg, RandomSource& rng) {
    RandomSource ra = rng.split(1), rb = rng.split(2);
    const HermitianMatrix X = draw_input(cfg, 0, ra);
    const HermitianMatrix Y = draw_input(cfg, 1, rb);
    const GTPattern gx = minor_spectra(X, cfg.threads);
    const GTPattern gy = minor_spectra(Y, cfg.threads);
    const Spectrum Lambda = make_large_gaps(gx, gy, cfg.margin);
    TetrahedronField t = init_top_panels(build_double_hive(gx, gy, Lambda));
    excavate(t, cfg.threads);
    return t;
}

BottomStats hive_stats(const HiveSamplerConfig& cfg, int M, RandomSource rng) {
    if (M < 2) throw std::invalid_argument("hive_stats: need at least two samples");
    BottomStats st;
    st.n = cfg.n;
    const size_t cells = static_cast<size_t>(cfg.n + 1) * (cfg.n + 1);
    st.mean.assign(cells, 0.0);
    st.variance.assign(cells, 0.0);
    std::vector<double> m2(cells, 0.0);
    for (int k = 1; k <= M; ++k) {
        RandomSource r = rng.split(static_cast<std::uint64_t>(k));
        const DoubleHive b = bottom_panels(sample_excavated(cfg, r));
        for (size_t c = 0; c < cells; ++c) {
            const double x = b.v[c];
            const double d = x - st.mean[c];
            st.mean[c] += d / k;
            m2[c] += d * (x - st.mean[c]);
        }
    }
    for (size_t c = 0; c < cells; ++c) st.variance[c] = m2[c] / (M - 1);
    return st;
}

} // namespace hive
