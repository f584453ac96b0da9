#include "hive/volume.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "hive/closed_forms.hpp"
#include "hive/matrix.hpp"

namespace hive {

namespace {

constexpr double kBig = 1e300;

// 16-point Gauss-Legendre (positive half) for the short nu integrals.
const double kGlx[8] = {0.0950125098376374, 0.2816035507792589, 0.4580167776572274,
                        0.6178762444026438, 0.7554044083550030, 0.8656312023878318,
                        0.9445750230732326, 0.9894009349916499};
const double kGlw[8] = {0.1894506104550685, 0.1826034150449236, 0.1691565193950025,
                        0.1495959888165767, 0.1246289712555339, 0.0951585116824928,
                        0.0622535239386479, 0.0271524594117541};

template <class F>
double gl16(const F& f, double a, double b, int panels = 4) {
    double total = 0.0;
    const double dp = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        const double lo = a + p * dp;
        const double c = lo + 0.5 * dp, h = 0.5 * dp;
        double s = 0.0;
        for (int k = 0; k < 8; ++k) s += kGlw[k] * (f(c + h * kGlx[k]) + f(c - h * kGlx[k]));
        total += s * h;
    }
    return total;
}

} // namespace

HivePolytopeSpec build_polytope(const BoundaryTriple& t) {
    HivePolytopeSpec spec;
    spec.n = t.n();
    spec.boundary = t;
    const int n = spec.n;
    for (int i = 1; i <= n - 1; ++i)
        for (int j = i + 1; j <= n - 1; ++j) spec.vars.emplace_back(i, j);

    Hive base = hive_boundary(t);
    auto eval_slacks = [&](const Hive& h) {
        std::vector<double> out;
        for (const auto& rs : rhombus_slacks(h)) out.push_back(rs.slack);
        return out;
    };
    spec.offset = eval_slacks(base);
    spec.coef.assign(spec.offset.size(), std::vector<double>(spec.vars.size(), 0.0));
    for (size_t v = 0; v < spec.vars.size(); ++v) {
        Hive h = base;
        h.at(spec.vars[v].first, spec.vars[v].second) = 1.0;
        const auto s1 = eval_slacks(h);
        for (size_t r = 0; r < s1.size(); ++r) {
            const double c = s1[r] - spec.offset[r];
            if (c != 0.0) spec.coef[r][v] = c;
        }
    }
    return spec;
}

std::vector<std::pair<double, double>> bounding_box(const HivePolytopeSpec& spec) {
    const int d = spec.dim();
    std::vector<std::pair<double, double>> box(static_cast<size_t>(d), {-kBig, kBig});
    for (int sweep = 0; sweep < 8 * (d + 1); ++sweep) {
        bool changed = false;
        for (size_t r = 0; r < spec.offset.size(); ++r) {
            for (int v = 0; v < d; ++v) {
                const double cv = spec.coef[r][static_cast<size_t>(v)];
                if (cv == 0.0) continue;
                // cv * x_v >= -offset - sum_{u != v} c_u x_u  (worst case over the box)
                double rest = spec.offset[r];
                bool bounded = true;
                for (int u = 0; u < d && bounded; ++u) {
                    if (u == v) continue;
                    const double cu = spec.coef[r][static_cast<size_t>(u)];
                    if (cu == 0.0) continue;
                    const double worst = cu > 0.0 ? box[static_cast<size_t>(u)].second
                                                  : box[static_cast<size_t>(u)].first;
                    if (std::fabs(worst) >= kBig) { bounded = false; break; }
                    rest += cu * worst;
                }
                if (!bounded) continue;
                if (cv > 0.0) {
                    const double lo = -rest / cv;
                    if (lo > box[static_cast<size_t>(v)].first + 1e-14) {
                        box[static_cast<size_t>(v)].first = lo;
                        changed = true;
                    }
                } else {
                    const double hi = -rest / cv;
                    if (hi < box[static_cast<size_t>(v)].second - 1e-14) {
                        box[static_cast<size_t>(v)].second = hi;
                        changed = true;
                    }
                }
            }
        }
        if (!changed) break;
    }
    for (const auto& [lo, hi] : box) {
        if (lo <= -kBig || hi >= kBig) {
            throw std::runtime_error("bounding_box: interval propagation failed to close");
        }
    }
    return box;
}

double exact_volume_n3(const BoundaryTriple& t) {
    if (t.n() != 3) throw std::invalid_argument("exact_volume_n3: n must be 3");
    const HivePolytopeSpec spec = build_polytope(t);
    double lo = -kBig, hi = kBig;
    for (size_t r = 0; r < spec.offset.size(); ++r) {
        const double c = spec.coef[r][0];
        if (c == 0.0) {
            if (spec.offset[r] < 0.0) return 0.0;  // infeasible boundary constraint
        } else if (c > 0.0) {
            lo = std::max(lo, -spec.offset[r] / c);
        } else {
            hi = std::min(hi, -spec.offset[r] / c);
        }
    }
    return std::max(0.0, hi - lo);
}

VolumeEstimate mc_volume(const HivePolytopeSpec& spec, long samples, RandomSource& rng) {
    if (spec.n > 6) throw std::invalid_argument("mc_volume: n <= 6 only");
    VolumeEstimate out;
    out.total = samples;
    const int d = spec.dim();
    if (d == 0) {
        // Zero-dimensional polytope: nonempty iff every offset is nonnegative.
        bool ok = true;
        for (double o : spec.offset) ok = ok && o >= 0.0;
        out.estimate = ok ? 1.0 : 0.0;
        out.box_volume = 1.0;
        out.accepted = ok ? samples : 0;
        return out;
    }
    const auto box = bounding_box(spec);
    out.box_volume = 1.0;
    for (const auto& [lo, hi] : box) out.box_volume *= std::max(0.0, hi - lo);
    if (out.box_volume <= 0.0) {
        return out;  // empty box, zero volume
    }
    std::vector<double> x(static_cast<size_t>(d));
    for (long s = 0; s < samples; ++s) {
        for (int v = 0; v < d; ++v) {
            const auto& [lo, hi] = box[static_cast<size_t>(v)];
            x[static_cast<size_t>(v)] = lo + (hi - lo) * rng.uniform01();
        }
        bool ok = true;
        for (size_t r = 0; r < spec.offset.size() && ok; ++r) {
            double slack = spec.offset[r];
            for (int v = 0; v < d; ++v) slack += spec.coef[r][static_cast<size_t>(v)] * x[static_cast<size_t>(v)];
            ok = slack >= 0.0;
        }
        if (ok) ++out.accepted;
    }
    const double p = static_cast<double>(out.accepted) / static_cast<double>(samples);
    out.estimate = out.box_volume * p;
    out.std_error = out.box_volume * std::sqrt(std::max(0.0, p * (1.0 - p)) / static_cast<double>(samples));
    return out;
}

double cz_density(const BoundaryTriple& t, double volume) {
    const int n = t.n();
    if (n == 1) return volume;  // point mass at nu = lambda + mu
    return std::exp(log_vandermonde(t.nu) + log_vandermonde(tau(n))
                  - log_vandermonde(t.lambda) - log_vandermonde(t.mu)) * volume;
}

CzReport cz_empirical_check(const Spectrum& lambda, const Spectrum& mu,
                            long trials, int bins, RandomSource& rng) {
    const int n = lambda.n();
    if (n != 2 && n != 3) throw std::invalid_argument("cz_empirical_check: n in {2, 3}");
    CzReport rep;
    rep.n = n;
    rep.trials = trials;
    rep.bins = bins;

    const double lo = lambda.values.back() + mu.values.back();
    const double hi = lambda.values.front() + mu.values.front();
    const double width = (hi - lo) / bins;

    auto predicted = [&](const Spectrum& nu) {
        BoundaryTriple t{lambda, mu, nu};
        if (n == 2) {
            // |H_2| is an indicator; feasibility == all boundary rhombi hold
            const HivePolytopeSpec spec = build_polytope(t);
            for (double o : spec.offset)
                if (o < 0.0) return 0.0;
            return cz_density(t, 1.0);
        }
        const double vol = exact_volume_n3(t);
        return vol > 0.0 ? cz_density(t, vol) : 0.0;
    };

    if (n == 2) {
        std::vector<long> counts(static_cast<size_t>(bins), 0);
        const double total = lambda.sum() + mu.sum();
        for (long s = 0; s < trials; ++s) {
            const auto X = conjugate_diag(lambda, haar_unitary(2, rng));
            const auto Y = conjugate_diag(mu, haar_unitary(2, rng));
            const Spectrum nu = eigh_values(X + Y);
            const int b = static_cast<int>((nu[0] - lo) / width);
            if (b >= 0 && b < bins) ++counts[static_cast<size_t>(b)];
        }
        double integral = 0.0;
        for (int b = 0; b < bins; ++b) {
            const double center = lo + (b + 0.5) * width;
            Spectrum nu(std::vector<double>{center, total - center});
            double dens = center >= total - center ? predicted(nu) : 0.0;
            integral += dens * width;
            const double expected = dens * width * static_cast<double>(trials);
            const long c = counts[static_cast<size_t>(b)];
            if (c >= rep.bulk_threshold && expected > 0.0) {
                rep.max_rel_error_bulk = std::max(rep.max_rel_error_bulk,
                                                  std::fabs(c - expected) / expected);
                ++rep.bulk_bins;
            }
        }
        rep.density_integral = integral;
        return rep;
    }

    // n = 3: joint histogram of (nu1, nu2)
    std::vector<long> counts(static_cast<size_t>(bins) * bins, 0);
    const double total = lambda.sum() + mu.sum();
    for (long s = 0; s < trials; ++s) {
        const auto X = conjugate_diag(lambda, haar_unitary(3, rng));
        const auto Y = conjugate_diag(mu, haar_unitary(3, rng));
        const Spectrum nu = eigh_values(X + Y);
        const int b1 = static_cast<int>((nu[0] - lo) / width);
        const int b2 = static_cast<int>((nu[1] - lo) / width);
        if (b1 >= 0 && b1 < bins && b2 >= 0 && b2 < bins)
            ++counts[static_cast<size_t>(b1) * bins + b2];
    }
    double integral = 0.0;
    for (int b1 = 0; b1 < bins; ++b1) {
        for (int b2 = 0; b2 < bins; ++b2) {
            const double v1 = lo + (b1 + 0.5) * width;
            const double v2 = lo + (b2 + 0.5) * width;
            const double v3 = total - v1 - v2;
            double dens = 0.0;
            if (v1 >= v2 && v2 >= v3) {
                Spectrum nu(std::vector<double>{v1, v2, v3});
                dens = predicted(nu);
            }
            integral += dens * width * width;
            const double expected = dens * width * width * static_cast<double>(trials);
            const long c = counts[static_cast<size_t>(b1) * bins + b2];
            if (c >= rep.bulk_threshold && expected > 0.0) {
                rep.max_rel_error_bulk = std::max(rep.max_rel_error_bulk,
                                                  std::fabs(c - expected) / expected);
                ++rep.bulk_bins;
            }
        }
    }
    rep.density_integral = integral;
    return rep;
}

namespace {

// nu integral for n = 2: \int V(nu) exp(-|nu|^2/(2 c2)) over the feasible
// interval of nu1, nu2 = total - nu1.
double nu_integral_n2(const Spectrum& lambda, const Spectrum& mu, double c2) {
    const double total = lambda.sum() + mu.sum();
    const double lo = std::max(lambda[0] + mu[1], lambda[1] + mu[0]);
    const double hi = lambda[0] + mu[0];
    if (hi <= lo) return 0.0;
    return gl16([&](double v1) {
        const double v2 = total - v1;
        if (v1 < v2) return 0.0;
        return (v1 - v2) * std::exp(-(v1 * v1 + v2 * v2) / (2.0 * c2));
    }, std::max(lo, 0.5 * total), hi);
}

// nu integral for n = 3 over the trace plane with the exact interval volume.
double nu_integral_n3(const Spectrum& lambda, const Spectrum& mu, double c2, int grid) {
    const double total = lambda.sum() + mu.sum();
    const double lo = lambda[2] + mu[2];
    const double hi = lambda[0] + mu[0];
    const double h = (hi - lo) / grid;
    double acc = 0.0;
    for (int i = 0; i < grid; ++i) {
        const double v1 = lo + (i + 0.5) * h;
        for (int j = 0; j < grid; ++j) {
            const double v2 = lo + (j + 0.5) * h;
            const double v3 = total - v1 - v2;
            if (!(v1 >= v2 && v2 >= v3)) continue;
            BoundaryTriple t{lambda, mu, Spectrum(std::vector<double>{v1, v2, v3})};
            const double vol = exact_volume_n3(t);
            if (vol <= 0.0) continue;
            double vn = 1.0;
            const double vals[3] = {v1, v2, v3};
            for (int a = 0; a < 3; ++a)
                for (int b = a + 1; b < 3; ++b) vn *= vals[a] - vals[b];
            acc += vn * vol * std::exp(-(v1 * v1 + v2 * v2 + v3 * v3) / (2.0 * c2)) * h * h;
        }
    }
    return acc;
}

} // namespace

GaussianCheck gaussian_integral_check(int n, double a2, double b2, double c2,
                                      long trials, RandomSource& rng) {
    if (n < 1 || n > 3) throw std::invalid_argument("gaussian_integral_check: n in {1,2,3}");
    GaussianCheck out;
    out.trials = trials;
    out.reference = std::exp(log_gaussian_integral(n, a2, b2, c2));
    const double sa = std::sqrt(a2), sb = std::sqrt(b2);

    double sum = 0.0, sum2 = 0.0;
    const double log_vtau = log_vandermonde(tau(std::max(2, n)));
    for (long s = 0; s < trials; ++s) {
        std::vector<double> lv(static_cast<size_t>(n)), mv(static_cast<size_t>(n));
        for (auto& x : lv) x = sa * rng.normal();
        for (auto& x : mv) x = sb * rng.normal();
        std::sort(lv.begin(), lv.end(), std::greater<double>());
        std::sort(mv.begin(), mv.end(), std::greater<double>());
        const Spectrum lambda(lv), mu(mv);

        double w = 0.0;
        if (n == 1) {
            const double v = lv[0] + mv[0];
            w = std::exp(-v * v / (2.0 * c2));
        } else if (n == 2) {
            w = std::exp(log_vandermonde(lambda) + log_vandermonde(mu) - log_vtau)
              * nu_integral_n2(lambda, mu, c2);
        } else {
            w = std::exp(log_vandermonde(lambda) + log_vandermonde(mu)
                         - log_vandermonde(tau(3)))
              * nu_integral_n3(lambda, mu, c2, 48);
        }
        // divide by the sorted-Gaussian proposal density; the Gaussian factors
        // cancel, leaving (2 pi)^n (ab)^n / (n!)^2
        const double fact = n == 1 ? 1.0 : (n == 2 ? 2.0 : 6.0);
        const double norm = std::pow(2.0 * 3.14159265358979323846, n) * std::pow(sa * sb, n);
        w *= norm / (fact * fact);
        sum += w;
        sum2 += w * w;
    }
    const double mean = sum / static_cast<double>(trials);
    const double var = std::max(0.0, sum2 / static_cast<double>(trials) - mean * mean);
    out.mc_estimate = mean;
    out.std_error = std::sqrt(var / static_cast<double>(trials));
    out.rel_error = std::fabs(out.mc_estimate - out.reference) / out.reference;
    return out;
}

} // namespace hive
