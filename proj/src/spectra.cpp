#include "hive/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace hive {

namespace {
constexpr double kPi = 3.14159265358979323846;

// 16-point Gauss-Legendre nodes/weights on [-1, 1] (positive half, mirrored).
const double kGlx[8] = {0.0950125098376374, 0.2816035507792589, 0.4580167776572274,
                        0.6178762444026438, 0.7554044083550030, 0.8656312023878318,
                        0.9445750230732326, 0.9894009349916499};
const double kGlw[8] = {0.1894506104550685, 0.1826034150449236, 0.1691565193950025,
                        0.1495959888165767, 0.1246289712555339, 0.0951585116824928,
                        0.0622535239386479, 0.0271524594117541};

template <class F>
double gl16(const F& f, double a, double b) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double s = 0.0;
    for (int k = 0; k < 8; ++k) {
        s += kGlw[k] * (f(c + h * kGlx[k]) + f(c - h * kGlx[k]));
    }
    return s * h;
}

// \int_a^b ln|u| du, a <= b, interval may contain 0.
double int_log_abs(double a, double b) {
    auto prim = [](double u) { return u == 0.0 ? 0.0 : u * std::log(std::fabs(u)) - u; };
    return prim(b) - prim(a);
}
} // namespace

double Spectrum::sum() const {
    return std::accumulate(values.begin(), values.end(), 0.0);
}

double Spectrum::norm2() const {
    double s = 0.0;
    for (double v : values) s += v * v;
    return std::sqrt(s);
}

bool Spectrum::is_nonincreasing(double tol) const {
    for (size_t i = 1; i < values.size(); ++i) {
        if (values[i] > values[i - 1] + tol) return false;
    }
    return true;
}

void Spectrum::validate() const {
    if (values.empty()) throw std::invalid_argument("empty spectrum");
    if (!is_nonincreasing(0.0)) throw std::invalid_argument("spectrum not nonincreasing");
    if (trace_zero) {
        double mx = 1.0;
        for (double v : values) mx = std::max(mx, std::fabs(v));
        if (std::fabs(sum()) > 1e-9 * static_cast<double>(n()) * mx) {
            throw std::invalid_argument("trace-zero spectrum has nonzero sum");
        }
    }
}

std::vector<double> Spectrum::partial_sums() const {
    std::vector<double> p(values.size() + 1, 0.0);
    for (size_t i = 0; i < values.size(); ++i) p[i + 1] = p[i] + values[i];
    return p;
}

bool BoundaryTriple::trace_consistent(double rel_tol) const {
    const double a = lambda.sum(), b = mu.sum(), c = nu.sum();
    const double scale = std::max({1.0, std::fabs(a), std::fabs(b), std::fabs(c)});
    return std::fabs(a + b - c) <= rel_tol * scale * static_cast<double>(n());
}

void BoundaryTriple::validate() const {
    if (lambda.n() != mu.n() || lambda.n() != nu.n()) {
        throw std::invalid_argument("boundary triple length mismatch");
    }
    if (!trace_consistent()) throw std::invalid_argument("boundary trace mismatch");
}

Spectrum tau(int n) {
    if (n < 1) throw std::invalid_argument("tau: n must be positive");
    Spectrum s;
    s.trace_zero = true;
    s.values.resize(static_cast<size_t>(n));
    for (int i = 1; i <= n; ++i) {
        s.values[static_cast<size_t>(i - 1)] = 0.5 * (n + 1) - i;
    }
    return s;
}

double log_vandermonde(const Spectrum& s) {
    const int n = s.n();
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double d = s[i] - s[j];
            if (d <= 0.0) throw std::invalid_argument("degenerate spectrum");
            acc += std::log(d);
        }
    }
    return acc;
}

double seminorm_I(const std::vector<double>& v) {
    if (v.empty()) throw std::invalid_argument("seminorm_I: empty input");
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    std::vector<double> w(v);
    for (double& x : w) x -= mean;
    std::sort(w.begin(), w.end(), std::greater<double>());
    double best = 0.0, run = 0.0;
    for (double x : w) {
        run += x;
        best = std::max(best, run);
    }
    return best;
}

Spectrum discretize_boundary(const std::function<double(double)>& f, int n) {
    if (n < 1) throw std::invalid_argument("discretize_boundary: n must be positive");
    Spectrum s;
    s.values.resize(static_cast<size_t>(n));
    const double n2 = static_cast<double>(n) * n;
    for (int i = 1; i <= n; ++i) {
        s.values[static_cast<size_t>(i - 1)] =
            n2 * (f(static_cast<double>(i) / n) - f(static_cast<double>(i - 1) / n));
    }
    return s;
}

double semicircle_cdf(double t) {
    if (t < -1.0 - 1e-12 || t > 1.0 + 1e-12) {
        throw std::invalid_argument("semicircle_cdf: t outside [-1, 1]");
    }
    t = std::clamp(t, -1.0, 1.0);
    return 0.5 + (t * std::sqrt(1.0 - t * t) + std::asin(t)) / kPi;
}

double semicircle_quantile(double p) {
    if (p < -1e-12 || p > 1.0 + 1e-12) {
        throw std::invalid_argument("semicircle_quantile: p outside [0, 1]");
    }
    p = std::clamp(p, 0.0, 1.0);
    if (p == 0.0) return -1.0;
    if (p == 1.0) return 1.0;
    double lo = -1.0, hi = 1.0;
    double t = 2.0 * p - 1.0;  // crude start
    for (int it = 0; it < 200; ++it) {
        const double g = semicircle_cdf(t) - p;
        if (std::fabs(g) <= 1e-13) break;
        if (g > 0.0) hi = t; else lo = t;
        const double dens = (2.0 / kPi) * std::sqrt(std::max(0.0, 1.0 - t * t));
        double step = dens > 1e-14 ? t - g / dens : 0.5 * (lo + hi);
        if (!(step > lo && step < hi)) step = 0.5 * (lo + hi);  // safeguard
        t = step;
    }
    return t;
}

double lambda_cl(double x) {
    if (x < -1e-12 || x > 1.0 + 1e-12) {
        throw std::invalid_argument("lambda_cl: x outside [0, 1]");
    }
    return 2.0 * semicircle_quantile(1.0 - std::clamp(x, 0.0, 1.0));
}

Spectrum lambda_cl_n(int n) {
    if (n < 1) throw std::invalid_argument("lambda_cl_n: n must be positive");
    // \int_p^q Gamma^{-1}(x) dx = (2/3pi) [ (1-a^2)^{3/2} - (1-b^2)^{3/2} ],
    // a = Gamma^{-1}(p), b = Gamma^{-1}(q).
    auto quantile_integral = [](double p, double q) {
        const double a = semicircle_quantile(p);
        const double b = semicircle_quantile(q);
        const double fa = std::pow(std::max(0.0, 1.0 - a * a), 1.5);
        const double fb = std::pow(std::max(0.0, 1.0 - b * b), 1.5);
        return (2.0 / (3.0 * kPi)) * (fa - fb);
    };
    Spectrum s;
    s.trace_zero = true;
    s.values.resize(static_cast<size_t>(n));
    const double n2 = static_cast<double>(n) * n;
    for (int i = 1; i <= n; ++i) {
        const double p = 1.0 - static_cast<double>(i) / n;
        const double q = 1.0 - static_cast<double>(i - 1) / n;
        s.values[static_cast<size_t>(i - 1)] = 2.0 * n2 * quantile_integral(p, q);
    }
    return s;
}

Spectrum expected_gue_locations(int n, bool with_correction) {
    if (n < 2) throw std::invalid_argument("expected_gue_locations: n must be >= 2");
    Spectrum s;
    s.values.resize(static_cast<size_t>(n));
    const double sqn = std::sqrt(static_cast<double>(n));
    for (int i = 1; i <= n; ++i) {
        const double frac = (static_cast<double>(i) - 0.5) / n;
        const double g = 2.0 * semicircle_quantile(1.0 - frac);  // on [-2, 2] scale
        double loc = g;
        if (with_correction) {
            // Mean-shift term; the semicircle density is floored near the
            // edges to keep the bulk formula from blowing up there.
            const double fr = std::clamp(frac, 0.02, 0.98);
            const double ge = 2.0 * semicircle_quantile(1.0 - fr);
            const double rho = std::sqrt(std::max(1e-12, 4.0 - ge * ge)) / (2.0 * kPi);
            loc += (-1.0 / (2.0 * rho)) / static_cast<double>(n);
        }
        s.values[static_cast<size_t>(i - 1)] = sqn * loc;
    }
    return s;
}

bool ky_fan_check(const Spectrum& x, const Spectrum& y, const Spectrum& z) {
    if (x.n() != y.n() || x.n() != z.n()) {
        throw std::invalid_argument("ky_fan_check: length mismatch");
    }
    double sx = 0.0, sy = 0.0, sz = 0.0;
    for (int k = 0; k < x.n(); ++k) {
        sx += x[k];
        sy += y[k];
        sz += z[k];
        const double scale = std::max({1.0, std::fabs(sx), std::fabs(sy), std::fabs(sz)});
        if (sz > sx + sy + 1e-8 * scale) return false;
    }
    return true;
}

namespace {

// One panel of \int 4 cos^2(theta) ln|2 sin(theta) - 2 sin(phi)| dtheta with
// the value at phi subtracted off and the ln|theta - phi| part integrated in
// closed form. Valid whether or not phi lies inside [lo, hi].
double semicircle_panel(double lo, double hi, double phi) {
    auto h = [](double th) { const double c = std::cos(th); return 4.0 * c * c; };
    if (hi - lo < 1e-15) return 0.0;
    const double hp = h(phi);
    double acc = gl16([&](double th) {
        const double d = 2.0 * std::sin(th) - 2.0 * std::sin(phi);
        if (std::fabs(d) < 1e-300) return 0.0;
        return (h(th) - hp) * std::log(std::fabs(d));
    }, lo, hi);
    // ln|2 sin th - 2 sin phi| = ln 4 + ln|cos((th+phi)/2)| + ln|sin((th-phi)/2)|
    // and ln|sin u| = ln|u| + ln(|sin u|/|u|) with u = (th - phi)/2.
    acc += hp * (hi - lo) * std::log(4.0);
    acc += hp * gl16([&](double th) {
        const double c = std::fabs(std::cos(0.5 * (th + phi)));
        return c < 1e-300 ? 0.0 : std::log(c);
    }, lo, hi);
    acc += hp * gl16([&](double th) {
        const double u = 0.5 * (th - phi);
        if (std::fabs(u) < 1e-300) return 0.0;
        return std::log(std::fabs(std::sin(u))) - std::log(std::fabs(u));
    }, lo, hi);
    acc += hp * (int_log_abs(lo - phi, hi - phi) + (hi - lo) * std::log(0.5));
    return acc;
}

double semicircle_inner(double phi, int panels) {
    const double a = -0.5 * kPi, b = 0.5 * kPi;
    const double dp = (b - a) / panels;
    const int kphi = std::clamp(static_cast<int>((phi - a) / dp), 0, panels - 1);
    double total = 0.0;
    for (int k = 0; k < panels; ++k) {
        const double p = a + k * dp, q = (k + 1 == panels) ? b : p + dp;
        if (std::abs(k - kphi) <= 1) {
            // subtraction form near the singularity, split at phi when inside
            if (phi > p && phi < q) {
                total += semicircle_panel(p, phi, phi);
                total += semicircle_panel(phi, q, phi);
            } else {
                total += semicircle_panel(p, q, phi);
            }
        } else {
            total += gl16([&](double th) {
                const double c = std::cos(th);
                return 4.0 * c * c *
                       std::log(std::fabs(2.0 * std::sin(th) - 2.0 * std::sin(phi)));
            }, p, q);
        }
    }
    return total;
}

} // namespace

double semicircle_log_energy(int panels) {
    // Outer integral over x = 2 sin(phi), weight 4 cos^2(phi).
    const double a = -0.5 * kPi, b = 0.5 * kPi;
    const int outer = std::max(64, panels / 8);
    const double dp = (b - a) / outer;
    double total = 0.0;
    for (int k = 0; k < outer; ++k) {
        total += gl16([&](double phi) {
            const double c = std::cos(phi);
            return 4.0 * c * c * semicircle_inner(phi, std::max(16, panels / 16));
        }, a + k * dp, a + (k + 1) * dp);
    }
    return total / (4.0 * kPi * kPi);
}

double unit_square_log_kernel(int panels) {
    // Inner integral is analytic: \int_0^1 ln|x-y| dy = (1-x)ln(1-x) + x ln x - 1.
    auto inner = [](double x) {
        double v = -1.0;
        if (x > 0.0) v += x * std::log(x);
        if (x < 1.0) v += (1.0 - x) * std::log(1.0 - x);
        return v;
    };
    const double dp = 1.0 / panels;
    double total = 0.0;
    for (int k = 0; k < panels; ++k) {
        total += gl16(inner, k * dp, (k + 1) * dp);
    }
    return total;
}

} // namespace hive
